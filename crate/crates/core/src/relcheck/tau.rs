//! The direction-inversion symmetry τ_s, checked purely symbolically.
//!
//! τ_s inverts γ_s, so no level-one Fock module can realize it; instead the
//! check is done on symbols: each relation of the simplified presentation is
//! encoded with the γ_{s'} kept formal, the τ_s substitution is applied to
//! its generators, both sides are put in a normal form (group-like factors
//! q^d, K_i moved to the left, like terms combined), and the image is matched
//! against the catalog up to an invertible unit — a scalar times a
//! γ-monomial times a group-like prefix. A symmetry that permutes the
//! defining relations in this sense is an algebra automorphism claim stated
//! without any representation.

use crate::rootdata::AffineDatum;
use crate::scalar::Scalar;
use serde::Serialize;
use std::collections::BTreeMap;

/// A symbolic generator. `X` kvecs are restricted to 0̲ and −sign·e_{s'},
/// the degree patterns appearing in the simplified presentation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum SGen {
    X { i: usize, sign: i8, kvec: Vec<i64> },
    K { i: usize, e: i64 },
    Qd { e: i64 },
}

/// One summand: coeff · Π γ_{s'}^{gamma[s'−1]/2} · factors (left to right).
#[derive(Clone, Debug)]
struct SWord {
    coeff: Scalar,
    /// γ exponents in half-units, index s−1
    gamma: Vec<i64>,
    factors: Vec<SGen>,
}

type SExpr = Vec<SWord>;

fn word(factors: Vec<SGen>, dims: usize) -> SExpr {
    vec![SWord {
        coeff: Scalar::one(),
        gamma: vec![0; dims],
        factors,
    }]
}

fn scale(e: &SExpr, c: &Scalar, gamma: &[i64]) -> SExpr {
    e.iter()
        .map(|w| SWord {
            coeff: &w.coeff * c,
            gamma: w.gamma.iter().zip(gamma).map(|(a, b)| a + b).collect(),
            factors: w.factors.clone(),
        })
        .collect()
}

fn add(a: &SExpr, b: &SExpr) -> SExpr {
    let mut out = a.clone();
    out.extend(b.iter().cloned());
    out
}

fn mul(a: &SExpr, b: &SExpr) -> SExpr {
    let mut out = Vec::new();
    for wa in a {
        for wb in b {
            out.push(SWord {
                coeff: &wa.coeff * &wb.coeff,
                gamma: wa.gamma.iter().zip(&wb.gamma).map(|(x, y)| x + y).collect(),
                factors: wa
                    .factors
                    .iter()
                    .chain(wb.factors.iter())
                    .cloned()
                    .collect(),
            });
        }
    }
    out
}

/// [a, b]_u with a formal unit u = c·γ^{gamma/2}.
fn qbr(a: &SExpr, b: &SExpr, c: &Scalar, gamma: &[i64], dims: usize) -> SExpr {
    let _ = dims;
    let neg = -c;
    add(&mul(a, b), &scale(&mul(b, a), &neg, gamma))
}

/// A word in normal form: group-like prefix (q^d power, K multidegree), then
/// the X factors in order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct NKey {
    qd: i64,
    kdeg: BTreeMap<usize, i64>,
    xs: Vec<(usize, i8, Vec<i64>)>,
    gamma: Vec<i64>,
}

/// Normalize a sum of words: move q^d and K_i left across the X factors
/// using their exact conjugation eigenvalues, then combine like terms.
fn normalize(e: &SExpr, ad: &AffineDatum) -> BTreeMap<NKey, Scalar> {
    let mut out: BTreeMap<NKey, Scalar> = BTreeMap::new();
    for w in e {
        let mut coeff = w.coeff.clone();
        let mut qd = 0i64;
        let mut kdeg: BTreeMap<usize, i64> = BTreeMap::new();
        let mut xs: Vec<(usize, i8, Vec<i64>)> = Vec::new();
        for g in &w.factors {
            match g {
                SGen::X { i, sign, kvec } => xs.push((*i, *sign, kvec.clone())),
                SGen::Qd { e } => {
                    // moving Qd^e left across each X_i^σ already collected
                    // costs q^{−e·σ·δ_{i0}} per factor
                    for (i, sign, _) in &xs {
                        if *i == 0 {
                            coeff = &coeff * &Scalar::q_pow(-e * (*sign as i64));
                        }
                    }
                    qd += e;
                }
                SGen::K { i, e } => {
                    for (j, sign, _) in &xs {
                        let exp = -e * (*sign as i64) * ad.d(*i) * ad.a(*i, *j);
                        coeff = &coeff * &Scalar::q_pow(exp);
                    }
                    *kdeg.entry(*i).or_insert(0) += e;
                }
            }
        }
        kdeg.retain(|_, v| *v != 0);
        let key = NKey {
            qd,
            kdeg,
            xs,
            gamma: w.gamma.clone(),
        };
        let entry = out.entry(key).or_insert_with(Scalar::zero);
        *entry = &*entry + &coeff;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Apply τ_s to a single generator; the result is a short word.
fn tau_gen(g: &SGen, s: usize, d0: i64, dims: usize) -> SExpr {
    match g {
        SGen::X { i, sign, kvec } => {
            if *i != 0 {
                return word(vec![g.clone()], dims);
            }
            let eps = *sign as i64;
            let zero = vec![0i64; dims];
            if kvec == &zero {
                // τ_s(x₀^ε(0̲)) = (q^d)^{(ε+1)d₀} x₀^ε(−εe_s) (q^d)^{(ε−1)d₀}
                let mut kv = zero;
                kv[s - 1] = -eps;
                word(
                    vec![
                        SGen::Qd { e: (eps + 1) * d0 },
                        SGen::X {
                            i: 0,
                            sign: *sign,
                            kvec: kv,
                        },
                        SGen::Qd { e: (eps - 1) * d0 },
                    ],
                    dims,
                )
            } else {
                // kvec = −ε·e_{s'}
                let sp = kvec.iter().position(|&k| k != 0).unwrap() + 1;
                debug_assert_eq!(kvec[sp - 1], -eps);
                if sp != s {
                    word(vec![g.clone()], dims)
                } else {
                    // τ_s(x₀^ε(−εe_s)) = (q^d)^{(−1−ε)d₀} x₀^ε(0̲) (q^d)^{(1−ε)d₀}
                    word(
                        vec![
                            SGen::Qd { e: (-1 - eps) * d0 },
                            SGen::X {
                                i: 0,
                                sign: *sign,
                                kvec: vec![0; dims],
                            },
                            SGen::Qd { e: (1 - eps) * d0 },
                        ],
                        dims,
                    )
                }
            }
        }
        SGen::K { i, e } => {
            if *i == 0 {
                // τ_s(K₀^e) = γ_s^{−e} K₀^e
                let mut gamma = vec![0; dims];
                gamma[s - 1] = -2 * e;
                scale(&word(vec![g.clone()], dims), &Scalar::one(), &gamma)
            } else {
                word(vec![g.clone()], dims)
            }
        }
        SGen::Qd { .. } => word(vec![g.clone()], dims),
    }
}

/// Apply τ_s to a sum of words: substitute each generator and transform the
/// γ-monomial (γ_s ↦ γ_s^{−1}, γ_{s'} ↦ γ_{s'}γ_s^{−1} for s' ≠ s).
fn tau_expr(e: &SExpr, s: usize, d0: i64, dims: usize) -> SExpr {
    let mut out = Vec::new();
    for w in e {
        let mut gamma = w.gamma.clone();
        let total: i64 = gamma.iter().sum();
        gamma[s - 1] = -total;
        let mut acc = vec![SWord {
            coeff: w.coeff.clone(),
            gamma,
            factors: vec![],
        }];
        for g in &w.factors {
            acc = mul(&acc, &tau_gen(g, s, d0, dims));
        }
        out.extend(acc);
    }
    out
}

/// Does `a` equal `unit · b` for an invertible unit (scalar × γ-monomial ×
/// group-like prefix)?
fn eq_up_to_unit(a: &BTreeMap<NKey, Scalar>, b: &BTreeMap<NKey, Scalar>) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    if a.len() != b.len() {
        return false;
    }
    let (ka, ca) = a.iter().next().unwrap();
    // candidate units: align the first a-term with every b-term whose X part
    // matches
    'cand: for (kb, cb) in b {
        if ka.xs != kb.xs {
            continue;
        }
        let dqd = ka.qd - kb.qd;
        let mut dk: BTreeMap<usize, i64> = kb.kdeg.clone();
        for (i, e) in &ka.kdeg {
            *dk.entry(*i).or_insert(0) -= *e;
        }
        // unit prefix must commute into every term identically, which for
        // group-likes means: same qd/K offset on all terms
        let dgamma: Vec<i64> = ka
            .gamma
            .iter()
            .zip(&kb.gamma)
            .map(|(x, y)| x - y)
            .collect();
        let ratio = match cb.inverse() {
            Ok(inv) => &inv * ca,
            Err(_) => continue,
        };
        for (k2, c2) in a {
            // the b-term this a-term must correspond to
            let mut kdeg = k2.kdeg.clone();
            for (i, e) in &dk {
                let entry = kdeg.entry(*i).or_insert(0);
                *entry += *e;
                if *entry == 0 {
                    kdeg.remove(i);
                }
            }
            let want = NKey {
                qd: k2.qd - dqd,
                kdeg,
                xs: k2.xs.clone(),
                gamma: k2.gamma.iter().zip(&dgamma).map(|(x, y)| x - y).collect(),
            };
            match b.get(&want) {
                Some(cw) if (&(cw * &ratio) - c2).is_zero() => {}
                _ => continue 'cand,
            }
        }
        return true;
    }
    false
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TauReport {
    pub s: usize,
    pub total: usize,
    pub matched: usize,
    pub unmatched: Vec<String>,
    pub involution_ok: bool,
}

impl TauReport {
    pub fn pass(&self) -> bool {
        self.unmatched.is_empty() && self.involution_ok
    }
}

/// The simplified presentation with γ kept formal, as named symbolic
/// expressions (each must vanish).
fn sym_catalog(ad: &AffineDatum, nfold: usize) -> Vec<(String, SExpr)> {
    let n = ad.size();
    let dims = nfold - 1;
    let zero = vec![0i64; dims];
    let x0 = |i: usize, sign: i8| {
        word(
            vec![SGen::X {
                i,
                sign,
                kvec: zero.clone(),
            }],
            dims,
        )
    };
    let xneg = |sign: i8, s: usize| {
        let mut kv = zero.clone();
        kv[s - 1] = -(sign as i64);
        word(vec![SGen::X { i: 0, sign, kvec: kv }], dims)
    };
    let kk = |i: usize, e: i64| word(vec![SGen::K { i, e }], dims);
    let one = word(vec![], dims);
    let no_g = vec![0i64; dims];
    let gdir = |s: usize, half: i64| {
        let mut g = no_g.clone();
        g[s - 1] = half;
        g
    };
    let d0 = ad.d(0);
    let qq0 = &Scalar::q_pow(d0) - &Scalar::q_pow(-d0);
    let mut out: Vec<(String, SExpr)> = Vec::new();

    for i in 0..n {
        let di = ad.d(i);
        // n:comm4 diagonal: [x_i⁺(0̲), x_i⁻(0̲)] − (K_i − K_i^{−1})/(q_i−q_i^{−1})
        let qqi = (&Scalar::q_pow(di) - &Scalar::q_pow(-di)).inverse().unwrap();
        let lhs = qbr(&x0(i, 1), &x0(i, -1), &Scalar::one(), &no_g, dims);
        let rhs = add(
            &scale(&kk(i, 1), &qqi, &no_g),
            &scale(&kk(i, -1), &(-&qqi), &no_g),
        );
        out.push((
            format!("n:comm4[i={i},j={i}]"),
            add(&lhs, &scale(&rhs, &Scalar::from_int(-1), &no_g)),
        ));
        for j in 0..n {
            if i == j {
                continue;
            }
            // n:comm4 off-diagonal: [x_i⁺(0̲), x_j⁻(0̲)] = 0
            out.push((
                format!("n:comm4[i={i},j={j}]"),
                qbr(&x0(i, 1), &x0(j, -1), &Scalar::one(), &no_g, dims),
            ));
            // n:comm2: K_i x_j^± K_i^{−1} − q_i^{±a_ij} x_j^± (as words:
            // K_i x_j^± − q_i^{±a_ij} x_j^± K_i)
            for sign in [1i8, -1] {
                let e = sign as i64 * ad.d(i) * ad.a(i, j);
                out.push((
                    format!("n:comm2[i={i},j={j},e={sign}]"),
                    add(
                        &mul(&kk(i, 1), &x0(j, sign)),
                        &scale(
                            &mul(&x0(j, sign), &kk(i, 1)),
                            &(-&Scalar::q_pow(e)),
                            &no_g,
                        ),
                    ),
                ));
            }
        }
    }
    for s in 1..nfold {
        // n:comm4 degree part:
        // [x₀⁺(−e_s), x₀⁻(e_s)] − (γ_s^{−1}K₀ − γ_sK₀^{−1})/(q₀−q₀^{−1})
        let qinv = qq0.inverse().unwrap();
        let lhs = qbr(&xneg(1, s), &xneg(-1, s), &Scalar::one(), &no_g, dims);
        let rhs = add(
            &scale(&kk(0, 1), &qinv, &gdir(s, -2)),
            &scale(&kk(0, -1), &(-&qinv), &gdir(s, 2)),
        );
        out.push((
            format!("n:comm4[s={s}]"),
            add(&lhs, &scale(&rhs, &Scalar::from_int(-1), &no_g)),
        ));
        for eps in [1i8, -1] {
            // n:comm6 part 1: [x₀^{−ε}(εe_s), x₀^{−ε}(0̲)]_{q₀^{−2}}
            out.push((
                format!("n:comm6[s={s},eps={eps},part=1]"),
                qbr(
                    &xneg(-eps, s),
                    &x0(0, -eps),
                    &Scalar::q_pow(-2 * d0),
                    &no_g,
                    dims,
                ),
            ));
            for sp in 1..nfold {
                if sp == s {
                    continue;
                }
                out.push((
                    format!("n:comm6[s={s},s'={sp},eps={eps},part=2]"),
                    qbr(&xneg(-eps, s), &xneg(-eps, sp), &Scalar::one(), &no_g, dims),
                ));
            }
            // n:comm3: [x_i^ε(0̲), x₀^{−ε}(εe_s)] for i ≥ 1
            for i in 1..n {
                out.push((
                    format!("n:comm3[i={i},s={s},eps={eps}]"),
                    qbr(&x0(i, eps), &xneg(-eps, s), &Scalar::one(), &no_g, dims),
                ));
            }
        }
    }
    // Σ_t (−1)^t [ℓ t]_d x^{ℓ−t} y x^t
    let serre = |x: &SExpr, y: &SExpr, ell: i64, d: i64| {
        let mut expr: SExpr = Vec::new();
        for t in 0..=ell {
            let mut w = one.clone();
            for _ in 0..(ell - t) {
                w = mul(&w, x);
            }
            w = mul(&w, y);
            for _ in 0..t {
                w = mul(&w, x);
            }
            let c = Scalar::qbinom(ell, t, d as u32).unwrap();
            let c = if t % 2 == 1 { -&c } else { c };
            expr = add(&expr, &scale(&w, &c, &no_g));
        }
        expr
    };
    // n:comm7: plain Serre among x_i^±(0̲) for adjacent pairs
    for i in 0..n {
        for j in 0..n {
            if i == j || ad.a(i, j) >= 0 {
                continue;
            }
            let ell = 1 - ad.a(i, j);
            for sign in [1i8, -1] {
                out.push((
                    format!("n:comm7[i={i},j={j},e={sign}]"),
                    serre(&x0(i, sign), &x0(j, sign), ell, ad.d(i)),
                ));
            }
        }
    }
    // n:comm8/n:comm9: the same Serre patterns with the degree generators,
    // needed for closure under τ (τ_s swaps them with the node-0 instances
    // of n:comm7).
    for j in 1..n {
        if ad.a(0, j) >= 0 {
            continue;
        }
        for s in 1..nfold {
            for eps in [1i8, -1] {
                out.push((
                    format!("n:comm8[j={j},s={s},eps={eps}]"),
                    serre(&x0(j, eps), &xneg(eps, s), 1 - ad.a(j, 0), ad.d(j)),
                ));
                out.push((
                    format!("n:comm9[j={j},s={s},eps={eps}]"),
                    serre(&xneg(eps, s), &x0(j, eps), 1 - ad.a(0, j), ad.d(0)),
                ));
            }
        }
    }
    out
}

/// Check that τ_s permutes the symbolic relation catalog up to units, and
/// that τ_s ∘ τ_s is the identity on the degree-zero generators.
pub fn tau_symmetry(ad: &AffineDatum, nfold: usize, s: usize) -> TauReport {
    assert!(nfold >= 2 && (1..nfold).contains(&s));
    let dims = nfold - 1;
    let d0 = ad.d0;
    let catalog = sym_catalog(ad, nfold);
    let normalized: Vec<(String, BTreeMap<NKey, Scalar>)> = catalog
        .iter()
        .map(|(name, e)| (name.clone(), normalize(e, ad)))
        .collect();
    let mut matched = 0;
    let mut unmatched = Vec::new();
    for (name, e) in &catalog {
        let image = normalize(&tau_expr(e, s, d0, dims), ad);
        if normalized.iter().any(|(_, nb)| eq_up_to_unit(&image, nb)) {
            matched += 1;
        } else {
            unmatched.push(name.clone());
        }
    }
    // involution on {K_i, x_i^±(0̲)}
    let mut involution_ok = true;
    let mut gens: Vec<SGen> = Vec::new();
    for i in 0..ad.size() {
        gens.push(SGen::K { i, e: 1 });
        gens.push(SGen::X {
            i,
            sign: 1,
            kvec: vec![0; dims],
        });
        gens.push(SGen::X {
            i,
            sign: -1,
            kvec: vec![0; dims],
        });
    }
    for g in &gens {
        let once = tau_expr(&word(vec![g.clone()], dims), s, d0, dims);
        let twice = tau_expr(&once, s, d0, dims);
        // τ² must be the identity up to nothing at all: exact equality
        let a = normalize(&twice, ad);
        let b = normalize(&word(vec![g.clone()], dims), ad);
        if a.len() != b.len()
            || !a
                .iter()
                .zip(b.iter())
                .all(|((ka, ca), (kb, cb))| ka == kb && (ca - cb).is_zero())
        {
            involution_ok = false;
        }
    }
    TauReport {
        s,
        total: catalog.len(),
        matched,
        unmatched,
        involution_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{affinize, cartan, Family};

    #[test]
    fn tau_permutes_catalog_a2_n3() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        for s in 1..3 {
            let report = tau_symmetry(&ad, 3, s);
            assert!(
                report.pass(),
                "τ_{s} failed: unmatched {:?}, involution {}",
                report.unmatched,
                report.involution_ok
            );
            assert_eq!(report.matched, report.total);
        }
    }

    #[test]
    fn tau_fixes_finite_generators() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        let dims = 2;
        let g = SGen::X {
            i: 1,
            sign: 1,
            kvec: vec![0; dims],
        };
        let img = tau_expr(&word(vec![g.clone()], dims), 1, ad.d0, dims);
        assert_eq!(img.len(), 1);
        assert_eq!(img[0].factors, vec![g]);
        assert!(img[0].gamma.iter().all(|&e| e == 0));
    }
}
