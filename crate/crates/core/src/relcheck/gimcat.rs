//! The quantized GIM-algebra relations, composed with the generator
//! dictionary into the Fock backend.
//!
//! The dictionary realizes the GIM generators inside the toroidal algebra:
//! for the finite indices and the distinguished affine copy,
//! E_i = x_i⁺(0̲), F_i = x_i⁻(0̲), K_i = K_i; for the remaining affine copies
//! (negative indices −s),
//! E_{−s} = (q^d)^{2d₀} x₀⁺(−e_s), F_{−s} = x₀⁻(e_s) (q^d)^{−2d₀} and
//! K_{−s} = γ_s^{−1} K₀. All specs returned here are GIM relations written in
//! those images, so verifying them verifies the dictionary.
//!
//! The quartic Serre relations (3.40) only apply to finite nodes i with
//! m_{i0} = −2 (type A₁); their second line is reconstructed from the first
//! by the bar rule E ↦ F, u ↦ u⁻¹ on the q-bracket parameters.

use crate::gim::{nfold_gim, GimMatrix};
use crate::relcheck::catalog::{serre_sym, CatalogError};
use crate::relcheck::expr::*;
use crate::rootdata::AffineDatum;
use crate::scalar::Scalar;

/// The images of the GIM generators under the dictionary. Indices are GIM
/// labels: −(N−1) … −1, 0, 1 … n.
pub struct GimDictionary {
    pub d0: i64,
    nfold: usize,
}

impl GimDictionary {
    pub fn new(ad: &AffineDatum, nfold: usize) -> GimDictionary {
        GimDictionary { d0: ad.d0, nfold }
    }

    fn zero_kvec(&self) -> Vec<i64> {
        vec![0; self.nfold - 1]
    }

    fn unit(&self, s: usize, e: i64) -> Vec<i64> {
        let mut k = self.zero_kvec();
        k[s - 1] = e;
        k
    }

    pub fn e(&self, idx: i64) -> OperatorExpr {
        if idx >= 0 {
            xm(idx as usize, 1, self.zero_kvec())
        } else {
            let s = (-idx) as usize;
            OperatorExpr::Prod(vec![qd(2 * self.d0), xm(0, 1, self.unit(s, -1))])
        }
    }

    pub fn f(&self, idx: i64) -> OperatorExpr {
        if idx >= 0 {
            xm(idx as usize, -1, self.zero_kvec())
        } else {
            let s = (-idx) as usize;
            OperatorExpr::Prod(vec![xm(0, -1, self.unit(s, 1)), qd(-2 * self.d0)])
        }
    }

    /// K_idx^e for e = ±1.
    pub fn k(&self, idx: i64, e: i64) -> OperatorExpr {
        if idx >= 0 {
            kpow(idx as usize, e)
        } else {
            // K_{−s} = γ_s^{−1} K₀ with γ_s = q
            kpow(0, e).scaled(Scalar::v_pow(-2 * e))
        }
    }
}

/// Σ_s (−1)^s [ℓ s]_d x^{ℓ−s} y x^s.
fn gim_serre(x: &OperatorExpr, y: &OperatorExpr, ell: i64, d: i64) -> OperatorExpr {
    let mut terms = Vec::new();
    for s in 0..=ell {
        let mut word = Vec::new();
        for _ in 0..(ell - s) {
            word.push(x.clone());
        }
        word.push(y.clone());
        for _ in 0..s {
            word.push(x.clone());
        }
        let c = Scalar::qbinom(ell, s, d as u32).unwrap();
        let c = if s % 2 == 1 { -&c } else { c };
        terms.push(OperatorExpr::Prod(word).scaled(c));
    }
    OperatorExpr::Sum(terms)
}

/// The GIM relations (M1)–(M7) plus the extra Serre relations (3.39)/(3.40),
/// all through the dictionary.
pub fn catalog_gim(ad: &AffineDatum, nfold: usize) -> Result<Vec<RelationSpec>, CatalogError> {
    if !ad.base.family.is_simply_laced() {
        return Err(CatalogError::NotSimplyLaced(ad.base.family.to_string()));
    }
    let gim: GimMatrix = nfold_gim(ad, nfold).expect("valid nfold");
    let dict = GimDictionary::new(ad, nfold);
    let idxs = gim.index_set.clone();
    let pos = |l: i64| idxs.iter().position(|&x| x == l).unwrap();
    let m = |a: i64, b: i64| gim.entries[pos(a)][pos(b)];
    let dsym = |a: i64| gim.symmetrizer[pos(a)];
    let q0 = |e: i64| Scalar::q_pow(ad.d0 * e);
    let mut specs: Vec<RelationSpec> = Vec::new();

    for &i in &idxs {
        // (M1)
        specs.push(RelationSpec::new(
            "M1",
            &[("i", i.to_string())],
            OperatorExpr::Sum(vec![
                OperatorExpr::Prod(vec![dict.k(i, 1), dict.k(i, -1)]),
                bracket(&dict.k(i, 1), &qd(1)),
            ]),
            OperatorExpr::Id,
        ));
        // (M2)
        let (ee, fe) = if i <= 0 { (1i64, -1i64) } else { (0, 0) };
        specs.push(RelationSpec::new(
            "M2",
            &[("i", i.to_string()), ("gen", "E".into())],
            OperatorExpr::Prod(vec![qd(1), dict.e(i), qd(-1)]),
            dict.e(i).scaled(Scalar::q_pow(ee)),
        ));
        specs.push(RelationSpec::new(
            "M2",
            &[("i", i.to_string()), ("gen", "F".into())],
            OperatorExpr::Prod(vec![qd(1), dict.f(i), qd(-1)]),
            dict.f(i).scaled(Scalar::q_pow(fe)),
        ));
        // (M4): [E_i, F_i] = (K_i − K_i^{−1})/(q_i − q_i^{−1}). Like the
        // diagonal commutator of the simplified presentation, this descends
        // from the one-variable commutator, so the generators are realized in
        // single-direction modes (one instance per direction for i ≥ 0; the
        // direction of i < 0 is −i).
        let c = (&Scalar::q_pow(dsym(i)) - &Scalar::q_pow(-dsym(i)))
            .inverse()
            .unwrap();
        let rhs = OperatorExpr::Sum(vec![
            dict.k(i, 1).scaled(c.clone()),
            dict.k(i, -1).scaled(-&c),
        ]);
        if i >= 0 {
            for s in 1..nfold {
                specs.push(RelationSpec::new(
                    "M4",
                    &[("i", i.to_string()), ("s", s.to_string())],
                    bracket(&xs(i as usize, s, 1, 0), &xs(i as usize, s, -1, 0)),
                    rhs.clone(),
                ));
            }
        } else {
            let s = (-i) as usize;
            let e_ax = OperatorExpr::Prod(vec![qd(2 * dict.d0), xs(0, s, 1, -1)]);
            let f_ax = OperatorExpr::Prod(vec![xs(0, s, -1, 1), qd(-2 * dict.d0)]);
            specs.push(RelationSpec::new(
                "M4",
                &[("i", i.to_string())],
                bracket(&e_ax, &f_ax),
                rhs,
            ));
        }
        for &j in &idxs {
            // (M3): K_j E_i K_j^{−1} = q_i^{m_ij} E_i
            let exp = dsym(i) * m(i, j);
            specs.push(RelationSpec::new(
                "M3",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "E".into())],
                OperatorExpr::Prod(vec![dict.k(j, 1), dict.e(i), dict.k(j, -1)]),
                dict.e(i).scaled(Scalar::q_pow(exp)),
            ));
            specs.push(RelationSpec::new(
                "M3",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "F".into())],
                OperatorExpr::Prod(vec![dict.k(j, 1), dict.f(i), dict.k(j, -1)]),
                dict.f(i).scaled(Scalar::q_pow(-exp)),
            ));
            if i == j {
                continue;
            }
            let mij = m(i, j);
            if mij < 0 {
                // (M5)
                specs.push(RelationSpec::new(
                    "M5",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "EF".into())],
                    bracket(&dict.e(i), &dict.f(j)),
                    OperatorExpr::zero(),
                ));
                specs.push(RelationSpec::new(
                    "M5",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "E".into())],
                    gim_serre(&dict.e(i), &dict.e(j), 1 - mij, dsym(i)),
                    OperatorExpr::zero(),
                ));
                specs.push(RelationSpec::new(
                    "M5",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "F".into())],
                    gim_serre(&dict.f(i), &dict.f(j), 1 - mij, dsym(i)),
                    OperatorExpr::zero(),
                ));
            } else if mij > 0 {
                // (M6)
                specs.push(RelationSpec::new(
                    "M6",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "EE".into())],
                    OperatorExpr::Sum(vec![
                        bracket(&dict.e(i), &dict.e(j)),
                        bracket(&dict.f(i), &dict.f(j)),
                    ]),
                    OperatorExpr::zero(),
                ));
                specs.push(RelationSpec::new(
                    "M6",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "EF".into())],
                    gim_serre(&dict.e(i), &dict.f(j), 1 + mij, dsym(i)),
                    OperatorExpr::zero(),
                ));
                specs.push(RelationSpec::new(
                    "M6",
                    &[("i", i.to_string()), ("j", j.to_string()), ("part", "FE".into())],
                    gim_serre(&dict.f(i), &dict.e(j), 1 + mij, dsym(i)),
                    OperatorExpr::zero(),
                ));
            } else {
                // (M7)
                specs.push(RelationSpec::new(
                    "M7",
                    &[("i", i.to_string()), ("j", j.to_string())],
                    OperatorExpr::Sum(vec![
                        bracket(&dict.e(i), &dict.e(j)),
                        bracket(&dict.e(i), &dict.f(j)),
                        bracket(&dict.f(i), &dict.f(j)),
                    ]),
                    OperatorExpr::zero(),
                ));
            }
        }
    }

    // (3.39): for finite i with m_{i0} = −1 and every negative copy −j:
    // [E_{−j},[E_0,E_i]_{q_0}]_{q_0} + [E_0,[E_{−j},E_i]_{q_0}]_{q_0^{−3}} = 0,
    // [F_{−j},[F_0,F_i]_{q_0^{−1}}]_{q_0^3} + [F_0,[F_{−j},F_i]_{q_0^{−1}}]_{q_0^{−1}} = 0.
    for i in 1..=ad.base.rank as i64 {
        if m(i, 0) != -1 {
            continue;
        }
        for j in 1..nfold as i64 {
            let (em, e0, ei) = (dict.e(-j), dict.e(0), dict.e(i));
            let lhs = OperatorExpr::Sum(vec![
                nested_q_bracket(&[em.clone(), e0.clone(), ei.clone()], &[q0(1), q0(1)]),
                nested_q_bracket(&[e0.clone(), em.clone(), ei.clone()], &[q0(1), q0(-3)]),
            ]);
            specs.push(RelationSpec::new(
                "3.39",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "E".into())],
                lhs,
                OperatorExpr::zero(),
            ));
            let (fm, f0, fi) = (dict.f(-j), dict.f(0), dict.f(i));
            let lhs = OperatorExpr::Sum(vec![
                nested_q_bracket(&[fm.clone(), f0.clone(), fi.clone()], &[q0(-1), q0(3)]),
                nested_q_bracket(&[f0.clone(), fm.clone(), fi.clone()], &[q0(-1), q0(-1)]),
            ]);
            specs.push(RelationSpec::new(
                "3.39",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "F".into())],
                lhs,
                OperatorExpr::zero(),
            ));
        }
    }

    // (3.40): for finite i with m_{i0} = −2 (type A₁) and every copy −j.
    for i in 1..=ad.base.rank as i64 {
        if m(i, 0) != -2 {
            continue;
        }
        for j in 1..nfold as i64 {
            // The printed nested-bracket display is corrupted; its content is
            // the symmetrized mixed Serre of order 1 − m_{i0} = 3 over the
            // E_0 mode multiset {0̲, 0̲, −e_j}, written here through the
            // dictionary (qd^{−2d₀}·E_{−j} and F_{−j}·qd^{2d₀} are the bare
            // ±e_j modes of the copy generators).
            let e_copy = OperatorExpr::Prod(vec![qd(-2 * dict.d0), dict.e(-j)]);
            let f_copy = OperatorExpr::Prod(vec![dict.f(-j), qd(2 * dict.d0)]);
            let ms = [0i64, 0, 1];
            let e0 = dict.e(0);
            let f0 = dict.f(0);
            let exfac = |m: i64| if m == 0 { e0.clone() } else { e_copy.clone() };
            let fxfac = |m: i64| if m == 0 { f0.clone() } else { f_copy.clone() };
            specs.push(RelationSpec::new(
                "3.40",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "E".into())],
                serre_sym(&exfac, &dict.e(i), &ms, ad.d(0)),
                OperatorExpr::zero(),
            ));
            specs.push(RelationSpec::new(
                "3.40",
                &[("i", i.to_string()), ("j", j.to_string()), ("gen", "F".into())],
                serre_sym(&fxfac, &dict.f(i), &ms, ad.d(0)),
                OperatorExpr::zero(),
            ));
        }
    }

    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{affinize, cartan, Family};

    #[test]
    fn gim_catalog_shape() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        let specs = catalog_gim(&ad, 3).unwrap();
        for tag in ["M1", "M2", "M3", "M4", "M5", "M6", "3.39"] {
            assert!(specs.iter().any(|s| s.tag == tag), "missing {tag}");
        }
        // A₂'s affine matrix has no zero entries, so no (M7) instances; A₃'s
        // does (nodes 1 and 3).
        assert!(!specs.iter().any(|s| s.tag == "M7"));
        let ad3 = affinize(&cartan(Family::A, 3).unwrap());
        let specs3 = catalog_gim(&ad3, 2).unwrap();
        assert!(specs3.iter().any(|s| s.tag == "M7"));
        // A₂ has no node with m_{i0} = −2
        assert!(!specs.iter().any(|s| s.tag == "3.40"));
        // A₁ does
        let ad1 = affinize(&cartan(Family::A, 1).unwrap());
        let specs1 = catalog_gim(&ad1, 2).unwrap();
        assert!(specs1.iter().any(|s| s.tag == "3.40"));
        // but A₁ has no (3.39) instances
        assert!(!specs1.iter().any(|s| s.tag == "3.39"));
    }

    #[test]
    fn dictionary_images() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        let dict = GimDictionary::new(&ad, 3);
        assert_eq!(format!("{}", dict.e(1)), "x[1]+([0, 0])");
        assert_eq!(format!("{}", dict.e(-2)), "qd^2 x[0]+([0, -1])");
        assert_eq!(format!("{}", dict.f(-1)), "x[0]-([1, 0]) qd^-2");
    }
}
