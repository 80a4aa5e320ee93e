//! The level-one Fock module ℱ = S(ĥ⁻) ⊗ 𝕂[Q].
//!
//! A basis state is a monomial in the creation generators a_i^{(s)}(−k)
//! (i a node of the affine diagram, s one of the N−1 toroidal directions,
//! k ≥ 1) tensored with a lattice exponential e^β, β in the affine root
//! lattice. The module carries:
//!
//! * the Heisenberg action — a_i^{(s)}(−l) multiplies, a_i^{(s)}(l) acts as a
//!   weighted derivation (the level-one central value γ_s = q is baked into
//!   the weights);
//! * the cocycle-twisted lattice shifts e^α;
//! * zero modes a_i(0), their exponentials K_i = q^{a_i(0)}, and the degree
//!   operator q^d reading off the α₀-coefficient of β.

use crate::rootdata::AffineDatum;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Node index in I = {0, …, n}.
pub type Node = usize;
/// Toroidal direction in J = {1, …, N−1}.
pub type Dir = usize;

/// One creation generator a_i^{(s)}(−k), k ≥ 1.
pub type PartKey = (Node, Dir, u32);

/// A Fock basis state: sorted multiset of creation generators plus a lattice
/// point. The sorted-vector representation is the canonical key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FockState {
    /// sorted by key; multiplicities strictly positive
    parts: Vec<(PartKey, u32)>,
    /// β in simple-root coordinates (α₀ first), length n+1
    beta: Vec<i32>,
}

impl FockState {
    pub fn vacuum(rank_plus_one: usize) -> FockState {
        FockState {
            parts: Vec::new(),
            beta: vec![0; rank_plus_one],
        }
    }

    pub fn parts(&self) -> &[(PartKey, u32)] {
        &self.parts
    }

    pub fn beta(&self) -> &[i32] {
        &self.beta
    }

    pub fn beta_i64(&self) -> Vec<i64> {
        self.beta.iter().map(|&b| b as i64).collect()
    }

    pub fn multiplicity(&self, key: PartKey) -> u32 {
        match self.parts.binary_search_by_key(&key, |&(k, _)| k) {
            Ok(idx) => self.parts[idx].1,
            Err(_) => 0,
        }
    }

    /// Total Heisenberg degree Σ k·mult.
    pub fn energy(&self) -> u32 {
        self.parts.iter().map(|&((_, _, k), m)| k * m).sum()
    }

    /// Degree in direction s only.
    pub fn energy_dir(&self, s: Dir) -> u32 {
        self.parts
            .iter()
            .filter(|&&((_, ps, _), _)| ps == s)
            .map(|&((_, _, k), m)| k * m)
            .sum()
    }

    /// New state with the multiplicity of `key` changed by `delta`.
    pub fn with_part(&self, key: PartKey, delta: i64) -> FockState {
        let mut parts = self.parts.clone();
        match parts.binary_search_by_key(&key, |&(k, _)| k) {
            Ok(idx) => {
                let m = parts[idx].1 as i64 + delta;
                assert!(m >= 0, "negative multiplicity");
                if m == 0 {
                    parts.remove(idx);
                } else {
                    parts[idx].1 = m as u32;
                }
            }
            Err(idx) => {
                assert!(delta > 0, "removing absent part");
                parts.insert(idx, (key, delta as u32));
            }
        }
        FockState {
            parts,
            beta: self.beta.clone(),
        }
    }

    pub fn with_beta_shift(&self, alpha: &[i64]) -> FockState {
        let beta = self
            .beta
            .iter()
            .zip(alpha)
            .map(|(&b, &a)| b + a as i32)
            .collect();
        FockState {
            parts: self.parts.clone(),
            beta,
        }
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &((i, s, k), m) in &self.parts {
            write!(f, "a[{i},{s}](-{k})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
            write!(f, " ")?;
        }
        write!(f, "e^(")?;
        for (idx, b) in self.beta.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// A finite 𝕂-linear combination of basis states; zero coefficients are never
/// stored, so `is_zero` is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FockVector {
    terms: BTreeMap<FockState, Scalar>,
}

impl FockVector {
    pub fn zero() -> FockVector {
        FockVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_state(state: FockState) -> FockVector {
        let mut terms = BTreeMap::new();
        terms.insert(state, Scalar::one());
        FockVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, state: FockState, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(state) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (state, coeff) in &other.terms {
            out.add_term(state.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (state, coeff) in &other.terms {
            out.add_term(state.clone(), -coeff);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(s, x)| (s.clone(), x * c))
                .collect(),
        }
    }

    /// First term in canonical order, for counterexample reports.
    pub fn first_term(&self) -> Option<(&FockState, &Scalar)> {
        self.terms.iter().next()
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (state, coeff)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {}", coeff, state)?;
        }
        Ok(())
    }
}

/// Commutator weight of the level-one Heisenberg algebra:
/// [a_i^{(s)}(l), a_j^{(s)}(−l)] = ([l·a_ij]/l)·(q^l − q^{−l})/(q − q^{−1})
/// = [l·a_ij]·[l]/l for l > 0.
pub fn heisenberg_weight(ad: &AffineDatum, i: Node, j: Node, l: u32) -> Scalar {
    let aij = ad.a(i, j);
    let num = &Scalar::qint(l as i64 * aij, 1) * &Scalar::qint(l as i64, 1);
    &num / &Scalar::from_int(l as i64)
}

/// The Heisenberg action: l < 0 creates a part a_i^{(s)}(l); l > 0 is the
/// weighted derivation over all nodes j coupled to i.
pub fn heis_action(ad: &AffineDatum, i: Node, s: Dir, l: i64, v: &FockVector) -> FockVector {
    assert!(l != 0, "Heisenberg mode 0 is the zero mode, not here");
    let mut out = FockVector::zero();
    if l < 0 {
        let key = (i, s, (-l) as u32);
        for (state, coeff) in v.terms() {
            out.add_term(state.with_part(key, 1), coeff.clone());
        }
        return out;
    }
    let k = l as u32;
    let n = ad.size();
    let weights: Vec<Scalar> = (0..n).map(|j| heisenberg_weight(ad, i, j, k)).collect();
    for (state, coeff) in v.terms() {
        for &((j, ps, pk), m) in state.parts() {
            if ps != s || pk != k {
                continue;
            }
            let w = &weights[j];
            if w.is_zero() {
                continue;
            }
            let c = &(coeff * w) * &Scalar::from_int(m as i64);
            out.add_term(state.with_part((j, ps, pk), -1), c);
        }
    }
    out
}

/// The 2-cocycle ε on the affine root lattice: on basis vectors
/// ε(α_i, α_j) = 1 for i ≤ j and (−1)^{(α_i|α_j)} for i > j, extended
/// bimultiplicatively.
#[derive(Clone, Debug)]
pub struct Cocycle {
    gram: Vec<Vec<i64>>,
}

impl Cocycle {
    pub fn new(ad: &AffineDatum) -> Cocycle {
        let n = ad.size();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| ad.gram(i, j)).collect())
            .collect();
        Cocycle { gram }
    }

    pub fn eval(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut exponent = 0i64;
        for (i, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.iter().enumerate() {
                if j < i && b != 0 {
                    exponent += a * b * self.gram[i][j];
                }
            }
        }
        if exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// e^α(v ⊗ e^β) = ε(α, β) v ⊗ e^{α+β}.
pub fn lattice_shift(c: &Cocycle, alpha: &[i64], v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (state, coeff) in v.terms() {
        let sign = c.eval(alpha, &state.beta_i64());
        let coeff = if sign < 0 { -coeff } else { coeff.clone() };
        out.add_term(state.with_beta_shift(alpha), coeff);
    }
    out
}

/// a_i(0)(v ⊗ e^β) = (α_i | β) v ⊗ e^β.
pub fn zero_mode(ad: &AffineDatum, i: Node, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (state, coeff) in v.terms() {
        let pairing = alpha_pairing(ad, i, state.beta());
        out.add_term(state.clone(), coeff * &Scalar::from_int(pairing));
    }
    out
}

/// (α_i | β) for β in simple-root coordinates.
pub fn alpha_pairing(ad: &AffineDatum, i: Node, beta: &[i32]) -> i64 {
    beta.iter()
        .enumerate()
        .map(|(j, &b)| ad.gram(i, j) * b as i64)
        .sum()
}

/// K_i^e = q^{e·a_i(0)}.
pub fn k_action(ad: &AffineDatum, i: Node, e: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (state, coeff) in v.terms() {
        let pairing = alpha_pairing(ad, i, state.beta());
        out.add_term(state.clone(), coeff * &Scalar::q_pow(e * pairing));
    }
    out
}

/// (q^d)^e scales by q^{e·m₀} where m₀ is the α₀-coefficient of β.
pub fn qd_action(e: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (state, coeff) in v.terms() {
        let m0 = state.beta()[0] as i64;
        out.add_term(state.clone(), coeff * &Scalar::q_pow(e * m0));
    }
    out
}

/// Deterministic enumeration of all basis states with energy ≤ `degree_bound`
/// and |β_i| ≤ `beta_bound`. `nfold` is N (so directions are 1..N−1); for
/// N = 1 there are no Heisenberg directions and only lattice points appear.
pub fn enumerate_states(
    ad: &AffineDatum,
    nfold: usize,
    degree_bound: u32,
    beta_bound: i32,
) -> Vec<FockState> {
    let n = ad.size();
    // all part kinds in a fixed order
    let mut kinds: Vec<PartKey> = Vec::new();
    for i in 0..n {
        for s in 1..nfold {
            for k in 1..=degree_bound {
                kinds.push((i, s, k));
            }
        }
    }
    kinds.sort();
    let mut part_choices: Vec<Vec<(PartKey, u32)>> = Vec::new();
    let mut stack: Vec<(PartKey, u32)> = Vec::new();
    fn rec(
        kinds: &[PartKey],
        idx: usize,
        budget: u32,
        stack: &mut Vec<(PartKey, u32)>,
        out: &mut Vec<Vec<(PartKey, u32)>>,
    ) {
        if idx == kinds.len() {
            out.push(stack.clone());
            return;
        }
        let (i, s, k) = kinds[idx];
        let max_m = budget / k;
        for m in 0..=max_m {
            if m > 0 {
                stack.push(((i, s, k), m));
            }
            rec(kinds, idx + 1, budget - m * k, stack, out);
            if m > 0 {
                stack.pop();
            }
        }
    }
    rec(&kinds, 0, degree_bound, &mut stack, &mut part_choices);
    part_choices.sort();

    let mut betas: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for b in &betas {
            for x in -beta_bound..=beta_bound {
                let mut nb = b.clone();
                nb.push(x);
                next.push(nb);
            }
        }
        betas = next;
    }

    let mut states = Vec::with_capacity(part_choices.len() * betas.len());
    for parts in &part_choices {
        for beta in &betas {
            states.push(FockState {
                parts: parts.clone(),
                beta: beta.clone(),
            });
        }
    }
    states.sort();
    states
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{affinize, cartan, Family};

    fn a2() -> AffineDatum {
        affinize(&cartan(Family::A, 2).unwrap())
    }

    fn vac(ad: &AffineDatum) -> FockVector {
        FockVector::from_state(FockState::vacuum(ad.size()))
    }

    #[test]
    fn annihilation_kills_vacuum() {
        let ad = a2();
        for l in 1..=3 {
            assert!(heis_action(&ad, 1, 1, l, &vac(&ad)).is_zero());
        }
    }

    #[test]
    fn creation_then_annihilation_gives_weight() {
        // [a_i(1), a_i(−1)] on vacuum = [2]·[1] = q + q⁻¹ (a_ii = 2, γ = q)
        let ad = a2();
        let created = heis_action(&ad, 1, 1, -1, &vac(&ad));
        let back = heis_action(&ad, 1, 1, 1, &created);
        let expect = vac(&ad).scale(&Scalar::qint(2, 1));
        assert_eq!(back, expect);
    }

    #[test]
    fn creation_example() {
        let ad = a2();
        let v = heis_action(&ad, 1, 1, -2, &vac(&ad));
        let (state, coeff) = v.first_term().unwrap();
        assert!(coeff.is_one());
        assert_eq!(state.parts(), &[((1, 1, 2), 1)]);
        assert_eq!(state.energy(), 2);
        assert_eq!(state.energy_dir(1), 2);
        assert_eq!(state.energy_dir(2), 0);
    }

    #[test]
    fn different_directions_commute() {
        let ad = a2();
        let v = heis_action(&ad, 1, 2, -1, &vac(&ad));
        assert!(heis_action(&ad, 1, 1, 1, &v).is_zero());
    }

    #[test]
    fn cocycle_properties() {
        let ad = a2();
        let c = Cocycle::new(&ad);
        // adjacent simply-laced nodes anticommute
        let a1 = [0i64, 1, 0];
        let a2v = [0i64, 0, 1];
        assert_eq!(c.eval(&a1, &a2v) * c.eval(&a2v, &a1), -1);
        // ε(α, 0) = 1
        assert_eq!(c.eval(&a1, &[0, 0, 0]), 1);
        // diagonal consistency: (α_i|α_i) = 2 even
        assert_eq!(c.eval(&a1, &a1) * c.eval(&a1, &a1), 1);
        // antisymmetry rule ε(α,β) = (−1)^{(α|β)} ε(β,α) on random-ish vectors
        let xs = [
            [1i64, -1, 2],
            [0, 2, 1],
            [-1, 1, 1],
            [2, 0, -1],
            [1, 1, 1],
        ];
        for a in &xs {
            for b in &xs {
                let pairing = crate::rootdata::bilinear(&ad, a, b).unwrap();
                let sign = if pairing % 2 == 0 { 1 } else { -1 };
                assert_eq!(c.eval(a, b), sign * c.eval(b, a));
            }
        }
    }

    #[test]
    fn cocycle_identity() {
        let ad = a2();
        let c = Cocycle::new(&ad);
        let xs = [[1i64, -1, 2], [0, 2, 1], [-1, 1, 1], [2, 0, -1]];
        for a in &xs {
            for b in &xs {
                for g in &xs {
                    let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let bg: Vec<i64> = b.iter().zip(g).map(|(x, y)| x + y).collect();
                    assert_eq!(
                        c.eval(a, b) * c.eval(&ab, g),
                        c.eval(b, g) * c.eval(a, &bg)
                    );
                }
            }
        }
    }

    #[test]
    fn lattice_shift_examples() {
        let ad = a2();
        let c = Cocycle::new(&ad);
        let e1 = lattice_shift(&c, &[0, 1, 0], &vac(&ad));
        let (s, x) = e1.first_term().unwrap();
        assert!(x.is_one());
        assert_eq!(s.beta(), &[0, 1, 0]);
        // e^{α₁} e^{α₂} = −e^{α₂} e^{α₁} up to the cocycle signs
        let e12 = lattice_shift(&c, &[0, 1, 0], &lattice_shift(&c, &[0, 0, 1], &vac(&ad)));
        let e21 = lattice_shift(&c, &[0, 0, 1], &lattice_shift(&c, &[0, 1, 0], &vac(&ad)));
        assert_eq!(e12, e21.scale(&Scalar::from_int(-1)));
        // shift by zero is the identity
        assert_eq!(lattice_shift(&c, &[0, 0, 0], &e1), e1);
    }

    #[test]
    fn zero_mode_and_k_action() {
        let ad = a2();
        let c = Cocycle::new(&ad);
        assert!(zero_mode(&ad, 1, &vac(&ad)).is_zero());
        let e1 = lattice_shift(&c, &[0, 1, 0], &vac(&ad));
        assert_eq!(zero_mode(&ad, 1, &e1), e1.scale(&Scalar::from_int(2)));
        let e2 = lattice_shift(&c, &[0, 0, 1], &vac(&ad));
        assert_eq!(zero_mode(&ad, 1, &e2), e2.scale(&Scalar::from_int(-1)));
        assert_eq!(k_action(&ad, 1, 1, &e1), e1.scale(&Scalar::q_pow(2)));
        assert_eq!(k_action(&ad, 1, 1, &vac(&ad)), vac(&ad));
        let e0 = lattice_shift(&c, &[1, 0, 0], &vac(&ad));
        assert_eq!(qd_action(1, &e0), e0.scale(&Scalar::q_pow(1)));
    }

    #[test]
    fn gamma0_acts_trivially() {
        // K₀ ∘ Π K_i^{c_i} is the identity because (δ|β) = 0
        for (f, n) in [(Family::A, 2), (Family::D, 4)] {
            let ad = affinize(&cartan(f, n).unwrap());
            for state in enumerate_states(&ad, 2, 1, 1) {
                let v = FockVector::from_state(state);
                let mut w = k_action(&ad, 0, 1, &v);
                for (i, &ci) in ad.theta_coeffs.clone().iter().enumerate() {
                    w = k_action(&ad, i + 1, ci, &w);
                }
                assert_eq!(w, v);
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_bounded() {
        let ad = a2();
        let states = enumerate_states(&ad, 3, 2, 1);
        let again = enumerate_states(&ad, 3, 2, 1);
        assert_eq!(states, again);
        // 34 part-multisets (energy ≤ 2 over 3 nodes × 2 directions) × 27 betas
        assert_eq!(states.len(), 34 * 27);
        assert!(states.iter().all(|s| s.energy() <= 2));
        assert!(states
            .iter()
            .all(|s| s.beta().iter().all(|b| b.abs() <= 1)));
        let mut sorted = states.clone();
        sorted.sort();
        assert_eq!(states, sorted);
    }
}
