//! The generic relation verifier.
//!
//! A relation passes iff `lhs − rhs` evaluates to the structurally zero
//! vector on every basis state of the truncated module (energy ≤ D, |β_i| ≤
//! B). A configurable cap on the basis size guards against runaway
//! enumeration; exceeding it is an explicit outcome, never a silent pass.
//! State evaluation is embarrassingly parallel; reports are deterministic
//! because the counterexample reported is the minimal failing state in the
//! canonical state order, independent of thread scheduling.

use crate::fock::{enumerate_states, FockState, FockVector};
use crate::relcheck::expr::{EvalCtx, RelationSpec};
use crate::vertex::Backend;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOptions {
    pub degree_bound: u32,
    pub beta_bound: i32,
    /// maximum admissible basis size
    pub budget_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            degree_bound: 2,
            beta_bound: 1,
            budget_cap: 2_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub state: String,
    pub residual_leading_state: String,
    pub residual_leading_coeff: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub relation: String,
    pub tag: String,
    pub params: BTreeMap<String, String>,
    pub basis_size: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub budget_exceeded: bool,
    pub millis: u128,
}

impl VerifyReport {
    pub fn one_line(&self) -> String {
        let status = if self.budget_exceeded {
            "budget exceeded".to_string()
        } else if self.pass {
            "pass".to_string()
        } else {
            format!(
                "FAIL at {}",
                self.counterexample
                    .as_ref()
                    .map(|c| c.state.as_str())
                    .unwrap_or("?")
            )
        };
        format!("{:<40} {} ({} states, {} ms)", self.relation, status, self.basis_size, self.millis)
    }
}

/// Verify one relation on every state of the truncated basis.
pub fn verify_relation(
    b: &Backend,
    ctx: &EvalCtx,
    spec: &RelationSpec,
    opts: &VerifyOptions,
) -> VerifyReport {
    let states = enumerate_states(&b.ad, b.nfold, opts.degree_bound, opts.beta_bound);
    verify_relation_on(b, ctx, spec, &states, opts.budget_cap)
}

/// Verify one relation on a caller-provided state list (must be sorted for
/// deterministic counterexamples).
pub fn verify_relation_on(
    b: &Backend,
    ctx: &EvalCtx,
    spec: &RelationSpec,
    states: &[FockState],
    budget_cap: usize,
) -> VerifyReport {
    let start = Instant::now();
    let mut report = VerifyReport {
        relation: spec.id.clone(),
        tag: spec.tag.clone(),
        params: spec.params.clone(),
        basis_size: states.len(),
        pass: false,
        counterexample: None,
        budget_exceeded: false,
        millis: 0,
    };
    if states.len() > budget_cap {
        report.budget_exceeded = true;
        report.millis = start.elapsed().as_millis();
        return report;
    }
    // find the minimal failing state; parallel map + sequential min keeps the
    // result independent of scheduling
    let failing: Option<(usize, FockVector)> = states
        .par_iter()
        .enumerate()
        .filter_map(|(idx, state)| {
            let v = FockVector::from_state(state.clone());
            let residual = spec.lhs.eval(b, ctx, &v).sub(&spec.rhs.eval(b, ctx, &v));
            if residual.is_zero() {
                None
            } else {
                Some((idx, residual))
            }
        })
        .min_by_key(|(idx, _)| *idx);
    match failing {
        None => report.pass = true,
        Some((idx, residual)) => {
            let (lead_state, lead_coeff) = residual.first_term().unwrap();
            report.counterexample = Some(Counterexample {
                state: states[idx].to_string(),
                residual_leading_state: lead_state.to_string(),
                residual_leading_coeff: lead_coeff.to_q_string(),
            });
        }
    }
    report.millis = start.elapsed().as_millis();
    report
}

/// Verify a whole catalog; reports come back in catalog order.
pub fn verify_catalog(
    b: &Backend,
    ctx: &EvalCtx,
    specs: &[RelationSpec],
    opts: &VerifyOptions,
) -> Vec<VerifyReport> {
    let states = enumerate_states(&b.ad, b.nfold, opts.degree_bound, opts.beta_bound);
    specs
        .iter()
        .map(|spec| verify_relation_on(b, ctx, spec, &states, opts.budget_cap))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcheck::expr::{bracket, heis, RelationSpec};
    use crate::rootdata::{affinize, cartan, Family};
    use crate::scalar::Scalar;
    use crate::relcheck::expr::OperatorExpr;

    fn backend() -> Backend {
        Backend::new(affinize(&cartan(Family::A, 2).unwrap()), 2)
    }

    fn heisenberg_spec() -> RelationSpec {
        // [a_1(1), a_1(−1)] = [2]·[1] · Id
        RelationSpec::new(
            "test-heis",
            &[],
            bracket(&heis(1, 1, 1), &heis(1, 1, -1)),
            OperatorExpr::Id.scaled(Scalar::qint(2, 1)),
        )
    }

    #[test]
    fn passing_relation_passes() {
        let b = backend();
        let ctx = EvalCtx::new();
        let report = verify_relation(&b, &ctx, &heisenberg_spec(), &VerifyOptions::default());
        assert!(report.pass);
        assert!(report.counterexample.is_none());
    }

    #[test]
    fn mutated_relation_fails_with_counterexample() {
        let b = backend();
        let ctx = EvalCtx::new();
        let report = verify_relation(
            &b,
            &ctx,
            &heisenberg_spec().mutated(),
            &VerifyOptions::default(),
        );
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn budget_guard_is_explicit() {
        let b = backend();
        let ctx = EvalCtx::new();
        let opts = VerifyOptions {
            budget_cap: 1,
            ..VerifyOptions::default()
        };
        let report = verify_relation(&b, &ctx, &heisenberg_spec(), &opts);
        assert!(report.budget_exceeded);
        assert!(!report.pass);
    }
}
