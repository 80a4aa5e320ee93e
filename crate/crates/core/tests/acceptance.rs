//! The acceptance gate: nine end-to-end criteria, each printing a single
//! pass/fail line (run with `--nocapture` to see the lines for passing
//! criteria; a failing criterion fails its test with the same line).
//!
//! 1. GIM atlas: axioms + symmetrizer + transcribed diagrams, 9 families × N ∈ {2,3}.
//! 2. Heisenberg oracle: commutators match the closed form on every state, A₂ N=3.
//! 3. OPE suite: contraction series equal their closed forms to order 8.
//! 4. Toroidal catalog: every relation passes exactly, A₂ N=3 and A₁ N=2.
//! 5. GIM quotient: (M1)–(M7) and the (3.39)/(3.40) ideal relations pass, A₂ N=3.
//! 6. Tower: three-way agreement of the recursions plus side identities, A₁ N=2.
//! 7. Central element: γ₀ = K₀·K_θ acts as the identity on sample states.
//! 8. Mutation soundness: seeded perturbations of 2/4/5 are detected.
//! 9. Determinism: reports are identical across thread counts.

use ntoroidal::fock::{enumerate_states, heis_action, k_action, FockVector};
use ntoroidal::gim::{check_gim_axioms, dynkin_diagram, nfold_gim, DynkinGraph};
use ntoroidal::relcheck::catalog::{catalog_simplified, catalog_toroidal};
use ntoroidal::relcheck::expr::{EvalCtx, RelationSpec};
use ntoroidal::relcheck::gimcat::catalog_gim;
use ntoroidal::relcheck::tower::tower_specs;
use ntoroidal::relcheck::verify::{verify_catalog, verify_relation, VerifyOptions};
use ntoroidal::rootdata::{affinize, atlas_families, cartan, AffineDatum, Family};
use ntoroidal::scalar::Scalar;
use ntoroidal::vertex::{contraction, Backend, SeriesInW};
use std::time::Instant;

fn ad(f: Family, rank: usize) -> AffineDatum {
    affinize(&cartan(f, rank).unwrap())
}

fn report(n: u32, name: &str, pass: bool, detail: String) {
    let line = format!(
        "criterion {n} ({name}): {} — {detail}",
        if pass { "pass" } else { "FAIL" }
    );
    println!("{line}");
    assert!(pass, "{line}");
}

fn run_catalog(b: &Backend, specs: &[RelationSpec], opts: &VerifyOptions) -> (usize, Vec<String>) {
    let ctx = EvalCtx::new();
    let reports = verify_catalog(b, &ctx, specs, opts);
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass || r.budget_exceeded)
        .map(|r| r.one_line())
        .collect();
    (reports.len(), failures)
}

#[test]
fn criterion_1_gim_atlas() {
    let t = Instant::now();
    let mut problems = Vec::new();
    for (family, rank) in atlas_families() {
        let datum = ad(family, rank);
        for nfold in [2usize, 3] {
            let m = nfold_gim(&datum, nfold).unwrap();
            let rep = check_gim_axioms(&m);
            if !rep.violations.is_empty() {
                problems.push(format!("{family}{rank} N={nfold}: {:?}", rep.violations));
                continue;
            }
            // D_M = diag(d₀·1_N, D₀)
            let mut expect_sym = vec![datum.d0; nfold];
            expect_sym.extend(datum.base.d.iter().copied());
            if m.symmetrizer != expect_sym {
                problems.push(format!("{family}{rank} N={nfold}: symmetrizer {:?}", m.symmetrizer));
            }
            let mut got = dynkin_diagram(&m).unwrap();
            got.edges.sort_by_key(|e| (e.a, e.b));
            let path = format!(
                "{}/tests/fixtures/gim/{family}{rank}_n{nfold}.json",
                env!("CARGO_MANIFEST_DIR")
            );
            let fixture: DynkinGraph =
                serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
            if got != fixture {
                problems.push(format!("{family}{rank} N={nfold}: diagram mismatch"));
            }
        }
    }
    let ok = problems.is_empty() && t.elapsed().as_secs() < 1;
    report(
        1,
        "GIM atlas",
        ok,
        format!("9 families × N∈{{2,3}} in {:?}; problems: {problems:?}", t.elapsed()),
    );
}

#[test]
fn criterion_2_heisenberg_oracle() {
    let t = Instant::now();
    let datum = ad(Family::A, 2);
    let n = datum.size();
    // the commutator is diagonal in β, so the oscillator part (β = 0) is the
    // whole content of the check
    let states = enumerate_states(&datum, 3, 4, 0);
    let mut checked = 0usize;
    let mut bad = None;
    'outer: for state in &states {
        let v = FockVector::from_state(state.clone());
        for i in 0..n {
            for j in 0..n {
                for s in 1..3usize {
                    for sp in 1..3usize {
                        for m in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
                            for l in [-4i64, -3, -2, -1, 1, 2, 3, 4] {
                                let lhs = heis_action(&datum, i, s, m, &heis_action(&datum, j, sp, l, &v))
                                    .add(&heis_action(&datum, j, sp, l, &heis_action(&datum, i, s, m, &v))
                                        .scale(&-&Scalar::one()));
                                // (6.15) at level one (γ_s = q):
                                // δ_{ss'} δ_{m+l,0} [m·a_ij]/m · (q^m − q^{−m})/(q − q^{−1})
                                let rhs = if s == sp && m + l == 0 {
                                    let w = &(&Scalar::qint(m * datum.a(i, j), 1)
                                        * &Scalar::qint(m, 1))
                                        / &Scalar::from_int(m);
                                    v.scale(&w)
                                } else {
                                    FockVector::zero()
                                };
                                checked += 1;
                                if lhs != rhs {
                                    bad = Some(format!(
                                        "[a_{i}^({s})({m}), a_{j}^({sp})({l})] on {state}"
                                    ));
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let ok = bad.is_none() && t.elapsed().as_secs() < 30;
    report(
        2,
        "Heisenberg oracle",
        ok,
        format!(
            "{checked} commutators on {} states in {:?}{}",
            states.len(),
            t.elapsed(),
            bad.map(|b| format!("; first failure {b}")).unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_3_ope_suite() {
    let t = Instant::now();
    let w = 8usize;
    let b2 = Backend::new(ad(Family::A, 2), 3);
    let b3 = Backend::new(ad(Family::A, 3), 2);
    let mut problems = Vec::new();
    let mut check = |label: &str, got: (i64, SeriesInW), zpow: i64, coeffs: &dyn Fn(usize) -> Scalar| {
        if got.0 != zpow {
            problems.push(format!("{label}: zpow {} ≠ {zpow}", got.0));
            return;
        }
        for (k, c) in got.1.coeffs.iter().enumerate() {
            let expect = coeffs(k);
            if c != &expect {
                problems.push(format!("{label}: order {k}"));
                return;
            }
        }
    };
    // a_ij = 2 (6.16/6.17): (±,±) ↦ (1−x)(1−q^{∓2}x); (±,∓) ↦ Σ [k+1] x^k
    for e in [1i8, -1] {
        let lab = format!("a=2 ({e},{e})");
        check(&lab, contraction(&b2, 1, 1, 1, 1, e, e, w), 2, &|k| match k {
            0 => Scalar::one(),
            1 => -&(&Scalar::one() + &Scalar::q_pow(-2 * e as i64)),
            2 => Scalar::q_pow(-2 * e as i64),
            _ => Scalar::zero(),
        });
        let lab = format!("a=2 ({e},{})", -e);
        check(&lab, contraction(&b2, 1, 1, 1, 1, e, -e, w), -2, &|k| {
            Scalar::qint(k as i64 + 1, 1)
        });
    }
    // a_ij = −1 (6.18): (ε,ε) ↦ Σ q^{−εk} x^k (inverse linear factor); (ε,−ε) ↦ 1 − x
    for e in [1i8, -1] {
        let lab = format!("a=-1 ({e},{e})");
        check(&lab, contraction(&b2, 1, 2, 1, 1, e, e, w), -1, &|k| {
            Scalar::q_pow(-(e as i64) * k as i64)
        });
        let lab = format!("a=-1 ({e},{})", -e);
        check(&lab, contraction(&b2, 1, 2, 1, 1, e, -e, w), 1, &|k| match k {
            0 => Scalar::one(),
            1 => Scalar::from_int(-1),
            _ => Scalar::zero(),
        });
    }
    // a_ij = 0 and cross-direction (6.19): unit series
    for e in [1i8, -1] {
        for e2 in [1i8, -1] {
            let lab = format!("a=0 ({e},{e2})");
            check(&lab, contraction(&b3, 1, 3, 1, 1, e, e2, w), 0, &|k| {
                if k == 0 { Scalar::one() } else { Scalar::zero() }
            });
            let lab = format!("cross ({e},{e2})");
            check(
                &lab,
                contraction(&b2, 1, 1, 1, 2, e, e2, w),
                2 * (e as i64) * (e2 as i64),
                &|k| if k == 0 { Scalar::one() } else { Scalar::zero() },
            );
        }
    }
    let ok = problems.is_empty() && t.elapsed().as_secs() < 5;
    report(
        3,
        "OPE suite",
        ok,
        format!("order {w} in {:?}; problems: {problems:?}", t.elapsed()),
    );
}

#[test]
fn criterion_4_toroidal_catalog() {
    let t = Instant::now();
    let opts = VerifyOptions::default();
    let mut total = 0usize;
    let mut failures = Vec::new();
    for (f, rank, nfold) in [(Family::A, 2usize, 3usize), (Family::A, 1, 2)] {
        let datum = ad(f, rank);
        let specs = catalog_toroidal(&datum, nfold, (-2, 2)).unwrap();
        let b = Backend::new(datum, nfold);
        let (n, mut fails) = run_catalog(&b, &specs, &opts);
        total += n;
        failures.append(&mut fails);
    }
    let ok = failures.is_empty() && t.elapsed().as_secs() < 600;
    report(
        4,
        "toroidal catalog",
        ok,
        format!(
            "{total} relations (A₂ N=3, A₁ N=2) in {:?}; failures: {:?}",
            t.elapsed(),
            &failures[..failures.len().min(5)]
        ),
    );
}

#[test]
fn criterion_5_gim_quotient() {
    let t = Instant::now();
    let datum = ad(Family::A, 2);
    let specs = catalog_gim(&datum, 3).unwrap();
    let b = Backend::new(datum, 3);
    let (total, failures) = run_catalog(&b, &specs, &VerifyOptions::default());
    let ok = failures.is_empty() && t.elapsed().as_secs() < 300;
    report(
        5,
        "GIM quotient",
        ok,
        format!(
            "{total} relations (A₂ N=3) in {:?}; failures: {:?}",
            t.elapsed(),
            &failures[..failures.len().min(5)]
        ),
    );
}

#[test]
fn criterion_6_tower() {
    let t = Instant::now();
    let datum = ad(Family::A, 1);
    let specs = tower_specs(&datum, 2, 3).unwrap();
    let b = Backend::new(datum, 2);
    let (total, failures) = run_catalog(&b, &specs, &VerifyOptions::default());
    let ok = failures.is_empty() && t.elapsed().as_secs() < 120;
    report(
        6,
        "simplified tower",
        ok,
        format!(
            "{total} identities (A₁ N=2, k ≤ 3) in {:?}; failures: {:?}",
            t.elapsed(),
            &failures[..failures.len().min(5)]
        ),
    );
}

#[test]
fn criterion_7_central_element() {
    let t = Instant::now();
    let mut checked = 0usize;
    let mut ok = true;
    for (f, rank) in [(Family::A, 2usize), (Family::D, 4)] {
        let datum = ad(f, rank);
        for state in enumerate_states(&datum, 2, 1, 1).into_iter().take(50) {
            let v = FockVector::from_state(state);
            // γ₀ = K₀ · Π_i K_i^{c_i} with θ = Σ c_i ᾱ_i
            let mut w = k_action(&datum, 0, 1, &v);
            for (i, &ci) in datum.theta_coeffs.clone().iter().enumerate() {
                w = k_action(&datum, i + 1, ci, &w);
            }
            checked += 1;
            if w != v {
                ok = false;
            }
        }
    }
    report(
        7,
        "central element γ₀ = K₀K_θ",
        ok && checked == 100,
        format!("{checked} states (A₂, D₄) in {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_8_mutation_soundness() {
    let t = Instant::now();
    let opts = VerifyOptions {
        degree_bound: 1,
        beta_bound: 1,
        ..VerifyOptions::default()
    };
    let ctx = EvalCtx::new();
    let mut problems = Vec::new();

    // criterion 2's oracle: perturb the commutator weight by q
    {
        let datum = ad(Family::A, 2);
        let v = FockVector::from_state(enumerate_states(&datum, 3, 2, 0)[1].clone());
        let lhs = heis_action(&datum, 0, 1, 1, &heis_action(&datum, 0, 1, -1, &v))
            .add(&heis_action(&datum, 0, 1, -1, &heis_action(&datum, 0, 1, 1, &v))
                .scale(&-&Scalar::one()));
        let wrong = &(&(&Scalar::qint(2, 1) * &Scalar::qint(1, 1)) / &Scalar::from_int(1))
            * &Scalar::q_pow(1);
        if lhs == v.scale(&wrong) {
            problems.push("heisenberg perturbation undetected".to_string());
        }
    }
    // criteria 4 and 5: mutate one representative spec from each catalog
    {
        let datum = ad(Family::A, 2);
        let b = Backend::new(datum.clone(), 3);
        let toroidal = catalog_toroidal(&datum, 3, (-2, 2)).unwrap();
        let gim = catalog_gim(&datum, 3).unwrap();
        for (label, specs, tag) in [
            ("toroidal", &toroidal, "n:Dr8"),
            ("gim", &gim, "M4"),
        ] {
            let spec = specs
                .iter()
                .find(|s| s.tag == tag)
                .unwrap_or_else(|| panic!("{label}: no {tag} spec"))
                .mutated();
            let rep = verify_relation(&b, &ctx, &spec, &opts);
            if rep.pass {
                problems.push(format!("{label}: mutated {} passed", spec.id));
            }
        }
    }
    let ok = problems.is_empty();
    report(
        8,
        "mutation soundness",
        ok,
        format!("in {:?}; problems: {problems:?}", t.elapsed()),
    );
}

#[test]
fn criterion_9_determinism() {
    let t = Instant::now();
    let datum = ad(Family::A, 1);
    let specs = catalog_toroidal(&datum, 2, (-2, 2)).unwrap();
    let b = Backend::new(datum, 2);
    let opts = VerifyOptions::default();
    let mut runs = Vec::new();
    for threads in [1usize, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let reports = pool.install(|| {
            let ctx = EvalCtx::new();
            verify_catalog(&b, &ctx, &specs, &opts)
        });
        // wall-clock timings are scheduling noise; everything else must agree
        // byte for byte
        let mut reports = reports;
        for r in &mut reports {
            r.millis = 0;
        }
        runs.push(serde_json::to_vec(&reports).unwrap());
    }
    let ok = runs[0] == runs[1];
    report(
        9,
        "determinism across thread counts",
        ok,
        format!(
            "{} relations × {{1, 8}} threads in {:?}; identical: {ok}",
            specs.len(),
            t.elapsed()
        ),
    );
}
