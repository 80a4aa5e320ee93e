//! Operator expression trees over the Fock backend.
//!
//! An [`OperatorExpr`] is a formal sum/product/scalar-multiple tree over the
//! primitive operators (vertex modes, Heisenberg modes, φ/ψ modes, K_i, q^d).
//! Products compose right-to-left: `Prod([A, B])` applied to v is A(B(v)),
//! matching the written order of operator words. Evaluation of a primitive on
//! a single basis state is memoized across an entire verification run.

use crate::fock::{heis_action, k_action, qd_action, Dir, FockState, FockVector, Node};
use crate::scalar::Scalar;
use crate::vertex::{multi_vertex_mode, phi_mode, psi_mode, vertex_mode, Backend};
use dashmap::DashMap;
use std::collections::BTreeMap;
use std::fmt;

/// A primitive operator: the memoization unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Prim {
    /// coefficient of z^{−k} in Y_{i,s}^{sign}(z)
    VertexMode { i: Node, s: Dir, sign: i8, k: i64 },
    /// coefficient of z̲^{−k̲} in Y_i^{sign}(z̲)
    MultiMode { i: Node, sign: i8, kvec: Vec<i64> },
    /// φ_i^{(s)}(m), m ≥ 0
    Phi { i: Node, s: Dir, m: u32 },
    /// ψ_i^{(s)}(−m), m ≥ 0
    Psi { i: Node, s: Dir, m: u32 },
    /// a_i^{(s)}(l), l ≠ 0
    Heis { i: Node, s: Dir, l: i64 },
    /// K_i^e
    K { i: Node, e: i64 },
    /// (q^d)^e
    Qd { e: i64 },
}

impl Prim {
    fn apply(&self, b: &Backend, v: &FockVector) -> FockVector {
        match self {
            Prim::VertexMode { i, s, sign, k } => vertex_mode(b, *i, *s, *sign, *k, v),
            Prim::MultiMode { i, sign, kvec } => multi_vertex_mode(b, *i, *sign, kvec, v),
            Prim::Phi { i, s, m } => phi_mode(b, *i, *s, *m, v),
            Prim::Psi { i, s, m } => psi_mode(b, *i, *s, *m, v),
            Prim::Heis { i, s, l } => heis_action(&b.ad, *i, *s, *l, v),
            Prim::K { i, e } => k_action(&b.ad, *i, *e, v),
            Prim::Qd { e } => qd_action(*e, v),
        }
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn sgn(sign: i8) -> char {
            if sign > 0 {
                '+'
            } else {
                '-'
            }
        }
        match self {
            Prim::VertexMode { i, s, sign, k } => write!(f, "x[{i},{s}]{}({k})", sgn(*sign)),
            Prim::MultiMode { i, sign, kvec } => {
                write!(f, "x[{i}]{}({:?})", sgn(*sign), kvec)
            }
            Prim::Phi { i, s, m } => write!(f, "phi[{i},{s}]({m})"),
            Prim::Psi { i, s, m } => write!(f, "psi[{i},{s}](-{m})"),
            Prim::Heis { i, s, l } => write!(f, "a[{i},{s}]({l})"),
            Prim::K { i, e } => write!(f, "K[{i}]^{e}"),
            Prim::Qd { e } => write!(f, "qd^{e}"),
        }
    }
}

/// A formal operator expression.
#[derive(Clone, PartialEq, Debug)]
pub enum OperatorExpr {
    Id,
    Prim(Prim),
    Scale(Scalar, Box<OperatorExpr>),
    Sum(Vec<OperatorExpr>),
    /// right-to-left composition: written operator word order
    Prod(Vec<OperatorExpr>),
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Id => write!(f, "1"),
            OperatorExpr::Prim(p) => write!(f, "{p}"),
            OperatorExpr::Scale(c, e) => write!(f, "({c})·({e})"),
            OperatorExpr::Sum(ts) => {
                for (n, t) in ts.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            OperatorExpr::Prod(fs) => {
                for (n, t) in fs.iter().enumerate() {
                    if n > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Shared memoization context for a verification run. Thread-safe; the same
/// primitive applied to the same basis state is computed once.
#[derive(Default)]
pub struct EvalCtx {
    memo: DashMap<(Prim, FockState), FockVector>,
}

impl EvalCtx {
    pub fn new() -> EvalCtx {
        EvalCtx::default()
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    fn apply_prim(&self, b: &Backend, p: &Prim, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (state, coeff) in v.terms() {
            let key = (p.clone(), state.clone());
            let cached = if let Some(hit) = self.memo.get(&key) {
                hit.clone()
            } else {
                let single = FockVector::from_state(state.clone());
                let res = p.apply(b, &single);
                self.memo.insert(key, res.clone());
                res
            };
            out = out.add(&cached.scale(coeff));
        }
        out
    }
}

impl OperatorExpr {
    pub fn eval(&self, b: &Backend, ctx: &EvalCtx, v: &FockVector) -> FockVector {
        match self {
            OperatorExpr::Id => v.clone(),
            OperatorExpr::Prim(p) => ctx.apply_prim(b, p, v),
            OperatorExpr::Scale(c, e) => e.eval(b, ctx, v).scale(c),
            OperatorExpr::Sum(ts) => {
                let mut out = FockVector::zero();
                for t in ts {
                    out = out.add(&t.eval(b, ctx, v));
                }
                out
            }
            OperatorExpr::Prod(fs) => {
                let mut cur = v.clone();
                for t in fs.iter().rev() {
                    if cur.is_zero() {
                        return cur;
                    }
                    cur = t.eval(b, ctx, &cur);
                }
                cur
            }
        }
    }

    pub fn scaled(self, c: Scalar) -> OperatorExpr {
        OperatorExpr::Scale(c, Box::new(self))
    }

    pub fn then_after(self, right: OperatorExpr) -> OperatorExpr {
        OperatorExpr::Prod(vec![self, right])
    }

    pub fn zero() -> OperatorExpr {
        OperatorExpr::Sum(vec![])
    }
}

// Constructors for the generator symbols.

/// x_i^{sign}(k e_s): coefficient of z^{−k} in Y_{i,s}^{sign}(z).
pub fn xs(i: Node, s: Dir, sign: i8, k: i64) -> OperatorExpr {
    OperatorExpr::Prim(Prim::VertexMode { i, s, sign, k })
}

/// x_i^{sign}(k̲): coefficient of z̲^{−k̲} in Y_i^{sign}(z̲).
pub fn xm(i: Node, sign: i8, kvec: Vec<i64>) -> OperatorExpr {
    OperatorExpr::Prim(Prim::MultiMode { i, sign, kvec })
}

pub fn phi(i: Node, s: Dir, m: u32) -> OperatorExpr {
    OperatorExpr::Prim(Prim::Phi { i, s, m })
}

pub fn psi(i: Node, s: Dir, m: u32) -> OperatorExpr {
    OperatorExpr::Prim(Prim::Psi { i, s, m })
}

/// φ_i^{(s)}(m) for any integer m: zero unless m ≥ 0.
pub fn phi_of(i: Node, s: Dir, m: i64) -> OperatorExpr {
    if m >= 0 {
        phi(i, s, m as u32)
    } else {
        OperatorExpr::zero()
    }
}

/// ψ_i^{(s)}(m) for any integer m: zero unless m ≤ 0.
pub fn psi_of(i: Node, s: Dir, m: i64) -> OperatorExpr {
    if m <= 0 {
        psi(i, s, (-m) as u32)
    } else {
        OperatorExpr::zero()
    }
}

pub fn heis(i: Node, s: Dir, l: i64) -> OperatorExpr {
    OperatorExpr::Prim(Prim::Heis { i, s, l })
}

pub fn kpow(i: Node, e: i64) -> OperatorExpr {
    OperatorExpr::Prim(Prim::K { i, e })
}

pub fn qd(e: i64) -> OperatorExpr {
    OperatorExpr::Prim(Prim::Qd { e })
}

/// [a, b]_u = ab − u·ba.
pub fn q_bracket(a: &OperatorExpr, b: &OperatorExpr, u: &Scalar) -> OperatorExpr {
    OperatorExpr::Sum(vec![
        OperatorExpr::Prod(vec![a.clone(), b.clone()]),
        OperatorExpr::Prod(vec![b.clone(), a.clone()]).scaled(-u),
    ])
}

/// Ordinary commutator [a, b].
pub fn bracket(a: &OperatorExpr, b: &OperatorExpr) -> OperatorExpr {
    q_bracket(a, b, &Scalar::one())
}

/// Nested quantum q-bracket [a_1, …, a_s]_{(v_1, …, v_{s-1})}, folded
/// right-to-left: [a_1, [a_2, …]_{…}]_{v_{s-1}} with v_1 innermost.
pub fn nested_q_bracket(items: &[OperatorExpr], params: &[Scalar]) -> OperatorExpr {
    assert_eq!(items.len(), params.len() + 1);
    let mut acc = items.last().unwrap().clone();
    for (idx, u) in params.iter().enumerate() {
        let a = &items[items.len() - 2 - idx];
        acc = q_bracket(a, &acc, u);
    }
    acc
}

/// A relation instance: `lhs − rhs` must vanish on every basis state.
#[derive(Clone, Debug)]
pub struct RelationSpec {
    /// unique instance id, e.g. "6.10[i=1,j=2,s=1,e=+,k=0,l=1]"
    pub id: String,
    /// catalog tag of the relation family, e.g. "6.10"
    pub tag: String,
    /// index/mode bindings, serialized in reports
    pub params: BTreeMap<String, String>,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl RelationSpec {
    pub fn new(
        tag: &str,
        params: &[(&str, String)],
        lhs: OperatorExpr,
        rhs: OperatorExpr,
    ) -> RelationSpec {
        let params: BTreeMap<String, String> = params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let mut id = String::from(tag);
        id.push('[');
        for (n, (k, v)) in params.iter().enumerate() {
            if n > 0 {
                id.push(',');
            }
            id.push_str(&format!("{k}={v}"));
        }
        id.push(']');
        RelationSpec {
            id,
            tag: tag.to_string(),
            params,
            lhs,
            rhs,
        }
    }

    /// Mutation for soundness tests: adds the first addend of the lhs once
    /// more, i.e. perturbs its coefficient by +1. Any true relation whose
    /// first term acts nontrivially must then fail.
    pub fn mutated(&self) -> RelationSpec {
        let first = match &self.lhs {
            OperatorExpr::Sum(ts) if !ts.is_empty() => ts[0].clone(),
            other => other.clone(),
        };
        let mut out = self.clone();
        out.id = format!("{}!mutated", self.id);
        out.tag = format!("{}!mutated", self.tag);
        out.lhs = OperatorExpr::Sum(vec![self.lhs.clone(), first]);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::enumerate_states;
    use crate::rootdata::{affinize, cartan, Family};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn backend() -> Backend {
        Backend::new(affinize(&cartan(Family::A, 2).unwrap()), 3)
    }

    #[test]
    fn prod_order_is_right_to_left() {
        let b = backend();
        let ctx = EvalCtx::new();
        let vac = b.vacuum();
        // a(1)a(−1) on vacuum is nonzero; a(−1)a(1) is zero
        let e1 = OperatorExpr::Prod(vec![heis(1, 1, 1), heis(1, 1, -1)]);
        let e2 = OperatorExpr::Prod(vec![heis(1, 1, -1), heis(1, 1, 1)]);
        assert!(!e1.eval(&b, &ctx, &vac).is_zero());
        assert!(e2.eval(&b, &ctx, &vac).is_zero());
    }

    #[test]
    fn memoized_eval_matches_direct() {
        let b = backend();
        let ctx = EvalCtx::new();
        let expr = bracket(&xs(1, 1, 1, 0), &xs(1, 1, -1, 0));
        for state in enumerate_states(&b.ad, 3, 1, 1).into_iter().step_by(17) {
            let v = FockVector::from_state(state);
            let once = expr.eval(&b, &ctx, &v);
            let twice = expr.eval(&b, &ctx, &v);
            assert_eq!(once, twice);
        }
        assert!(ctx.memo_size() > 0);
    }

    /// The quantum q-bracket identities
    /// [a,[b,c]_u]_v = [[a,b]_q, c]_{uv/q} + q·[b,[a,c]_{v/q}]_{u/q} and
    /// [[a,b]_u,c]_v = [a,[b,c]_q]_{uv/q} + q·[[a,c]_{v/q},b]_{u/q}
    /// hold for arbitrary operators; checked on randomized triples.
    #[test]
    fn q_bracket_identities() {
        let b = backend();
        let ctx = EvalCtx::new();
        let q = Scalar::q_pow(1);
        let qinv = Scalar::q_pow(-1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool: Vec<OperatorExpr> = vec![
            heis(0, 1, 1),
            heis(1, 1, -1),
            heis(2, 2, 1),
            heis(1, 2, -2),
            xs(0, 1, 1, 0),
            xs(1, 1, -1, 1),
            xs(2, 2, 1, -1),
            kpow(1, 1),
            phi(1, 1, 1),
        ];
        let us = [
            Scalar::one(),
            Scalar::q_pow(1),
            Scalar::q_pow(-2),
            Scalar::v_pow(1),
        ];
        let states = enumerate_states(&b.ad, 3, 1, 1);
        for trial in 0..50 {
            let a = pool.choose(&mut rng).unwrap();
            let bb = pool.choose(&mut rng).unwrap();
            let c = pool.choose(&mut rng).unwrap();
            let u = us.choose(&mut rng).unwrap();
            let v = us.choose(&mut rng).unwrap();
            let uv_q = &(u * v) * &qinv;
            let v_q = v * &qinv;
            let u_q = u * &qinv;
            let lhs1 = q_bracket(a, &q_bracket(bb, c, u), v);
            let rhs1 = OperatorExpr::Sum(vec![
                q_bracket(&q_bracket(a, bb, &q), c, &uv_q),
                q_bracket(bb, &q_bracket(a, c, &v_q), &u_q).scaled(q.clone()),
            ]);
            let lhs2 = q_bracket(&q_bracket(a, bb, u), c, v);
            let rhs2 = OperatorExpr::Sum(vec![
                q_bracket(a, &q_bracket(bb, c, &q), &uv_q),
                q_bracket(&q_bracket(a, c, &v_q), bb, &u_q).scaled(q.clone()),
            ]);
            let state = states.choose(&mut rng).unwrap();
            let w = FockVector::from_state(state.clone());
            assert_eq!(
                lhs1.eval(&b, &ctx, &w),
                rhs1.eval(&b, &ctx, &w),
                "identity (1) failed on trial {trial}"
            );
            assert_eq!(
                lhs2.eval(&b, &ctx, &w),
                rhs2.eval(&b, &ctx, &w),
                "identity (2) failed on trial {trial}"
            );
        }
    }

    #[test]
    fn nested_bracket_folds_right_to_left() {
        let a = heis(0, 1, 1);
        let b = heis(1, 1, 1);
        let c = heis(2, 1, 1);
        let v1 = Scalar::q_pow(1);
        let v2 = Scalar::q_pow(-1);
        let nested = nested_q_bracket(&[a.clone(), b.clone(), c.clone()], &[v1.clone(), v2.clone()]);
        let manual = q_bracket(&a, &q_bracket(&b, &c, &v1), &v2);
        assert_eq!(format!("{nested}"), format!("{manual}"));
    }
}
