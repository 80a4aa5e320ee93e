//! Finite and affine Cartan data for types A–G.
//!
//! Matrices use Bourbaki node numbering with the convention
//! a_ij = 2(α_i|α_j)/(α_i|α_i), symmetrized by the minimal d_i
//! (so (α_i|α_j) = d_i·a_ij). Affinization adjoins node 0 with
//! α₀ = δ − θ, where θ is the highest root; θ coefficients are stored
//! per family and validated by the δ-radical invariant.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl std::str::FromStr for Family {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            other => Err(RootDataError::BadFamily(other.to_string())),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown family {0:?} (expected one of A,B,C,D,E,F,G)")]
    BadFamily(String),
    #[error("rank {rank} is not valid for family {family}")]
    BadRank { family: Family, rank: usize },
    #[error("lattice vector has length {got}, expected {want}")]
    Dimension { got: usize, want: usize },
}

/// A finite Cartan matrix with its minimal symmetrizer.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CartanDatum {
    pub family: Family,
    pub rank: usize,
    /// rows indexed 1..=n internally stored 0-based
    pub matrix: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

/// The affinization: index set I = {0, 1, …, n}, α₀ = δ − θ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AffineDatum {
    pub base: CartanDatum,
    /// (n+1)×(n+1), row/column 0 first
    pub affine_matrix: Vec<Vec<i64>>,
    /// θ = Σ c_i α_i over the finite simple roots, index i−1
    pub theta_coeffs: Vec<i64>,
    /// symmetrizer of the affine node, = (θ|θ)/2
    pub d0: i64,
}

/// Builds the Bourbaki-numbered Cartan matrix for a family and rank.
pub fn cartan(family: Family, rank: usize) -> Result<CartanDatum, RootDataError> {
    let bad = || RootDataError::BadRank { family, rank };
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let mut d = vec![1i64; n];
    match family {
        Family::A => {
            if n < 1 {
                return Err(bad());
            }
            for i in 0..n.saturating_sub(1) {
                chain(&mut a, i, i + 1);
            }
        }
        Family::B => {
            // α_n short: a_{n-1,n} = −1, a_{n,n-1} = −2, d = (2,…,2,1)
            if n < 2 {
                return Err(bad());
            }
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2;
            for di in d.iter_mut().take(n - 1) {
                *di = 2;
            }
        }
        Family::C => {
            // α_n long: a_{n-1,n} = −2, a_{n,n-1} = −1, d = (1,…,1,2)
            if n < 2 {
                return Err(bad());
            }
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        Family::D => {
            if n < 4 {
                return Err(bad());
            }
            for i in 0..n - 2 {
                chain(&mut a, i, i + 1);
            }
            chain(&mut a, n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: node 2 hangs off node 4 of the chain 1−3−4−5−…
            if !(6..=8).contains(&n) {
                return Err(bad());
            }
            chain(&mut a, 0, 2);
            chain(&mut a, 1, 3);
            for i in 2..n - 1 {
                chain(&mut a, i, i + 1);
            }
        }
        Family::F => {
            // 1−2 ⇒ 3−4 with α₁, α₂ long
            if n != 4 {
                return Err(bad());
            }
            chain(&mut a, 0, 1);
            chain(&mut a, 2, 3);
            a[1][2] = -1;
            a[2][1] = -2;
            d[0] = 2;
            d[1] = 2;
        }
        Family::G => {
            // α₁ long: a₁₂ = −1, a₂₁ = −3, d = (3,1)
            if n != 2 {
                return Err(bad());
            }
            a[0][1] = -1;
            a[1][0] = -3;
            d[0] = 3;
        }
    }
    Ok(CartanDatum {
        family,
        rank: n,
        matrix: a,
        d,
    })
}

/// Highest-root coefficients θ = Σ c_i α_i (Bourbaki numbering).
fn theta_coeffs(family: Family, n: usize) -> Vec<i64> {
    match family {
        Family::A => vec![1; n],
        Family::B => {
            let mut c = vec![2; n];
            c[0] = 1;
            c
        }
        Family::C => {
            let mut c = vec![2; n];
            c[n - 1] = 1;
            c
        }
        Family::D => {
            let mut c = vec![2; n];
            c[0] = 1;
            c[n - 2] = 1;
            c[n - 1] = 1;
            c
        }
        Family::E => match n {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            8 => vec![2, 3, 4, 6, 5, 4, 3, 2],
            _ => unreachable!(),
        },
        Family::F => vec![2, 3, 4, 2],
        Family::G => vec![2, 3],
    }
}

/// Adjoins the affine node 0 via α₀ = δ − θ.
pub fn affinize(c: &CartanDatum) -> AffineDatum {
    let n = c.rank;
    let theta = theta_coeffs(c.family, n);
    // (θ|α_j) = Σ_i c_i d_i a_ij
    let theta_pairing: Vec<i64> = (0..n)
        .map(|j| (0..n).map(|i| theta[i] * c.d[i] * c.matrix[i][j]).sum())
        .collect();
    // (θ|θ) = Σ_j c_j (θ|α_j); d₀ = (θ|θ)/2
    let theta_norm: i64 = (0..n).map(|j| theta[j] * theta_pairing[j]).sum();
    assert!(theta_norm > 0 && theta_norm % 2 == 0);
    let d0 = theta_norm / 2;
    let mut m = vec![vec![0i64; n + 1]; n + 1];
    m[0][0] = 2;
    for j in 0..n {
        // a_{0j} = 2(α₀|α_j)/(α₀|α₀) = −(θ|α_j)/d₀ and a_{j0} = −(θ|α_j)/d_j
        debug_assert_eq!(theta_pairing[j] % d0, 0);
        debug_assert_eq!(theta_pairing[j] % c.d[j], 0);
        m[0][j + 1] = -theta_pairing[j] / d0;
        m[j + 1][0] = -theta_pairing[j] / c.d[j];
        for k in 0..n {
            m[j + 1][k + 1] = c.matrix[j][k];
        }
    }
    AffineDatum {
        base: c.clone(),
        affine_matrix: m,
        theta_coeffs: theta,
        d0,
    }
}

impl AffineDatum {
    pub fn size(&self) -> usize {
        self.base.rank + 1
    }

    /// Symmetrizer over I = {0,…,n}.
    pub fn d(&self, i: usize) -> i64 {
        if i == 0 {
            self.d0
        } else {
            self.base.d[i - 1]
        }
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.affine_matrix[i][j]
    }

    /// Gram entry (α_i|α_j) = d_i a_ij.
    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.d(i) * self.a(i, j)
    }

    /// δ = α₀ + θ in simple-root coordinates (α₀ first).
    pub fn delta(&self) -> Vec<i64> {
        let mut v = vec![1i64];
        v.extend(self.theta_coeffs.iter());
        v
    }
}

/// Symmetric bilinear form on the affine root lattice, coordinates in
/// (α₀, α₁, …, α_n).
pub fn bilinear(ad: &AffineDatum, alpha: &[i64], beta: &[i64]) -> Result<i64, RootDataError> {
    let n = ad.size();
    if alpha.len() != n {
        return Err(RootDataError::Dimension {
            got: alpha.len(),
            want: n,
        });
    }
    if beta.len() != n {
        return Err(RootDataError::Dimension {
            got: beta.len(),
            want: n,
        });
    }
    let mut acc = 0i64;
    for i in 0..n {
        if alpha[i] == 0 {
            continue;
        }
        for j in 0..n {
            acc += alpha[i] * beta[j] * ad.gram(i, j);
        }
    }
    Ok(acc)
}

/// All (family, rank) pairs exercised by fixtures and atlas tests.
pub fn atlas_families() -> Vec<(Family, usize)> {
    vec![
        (Family::A, 2),
        (Family::B, 3),
        (Family::C, 2),
        (Family::D, 4),
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
        (Family::F, 4),
        (Family::G, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_examples() {
        let a2 = cartan(Family::A, 2).unwrap();
        assert_eq!(a2.matrix, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.d, vec![1, 1]);
        let g2 = cartan(Family::G, 2).unwrap();
        assert_eq!(g2.matrix, vec![vec![2, -1], vec![-3, 2]]);
        let a1 = cartan(Family::A, 1).unwrap();
        assert_eq!(a1.matrix, vec![vec![2]]);
        assert!(cartan(Family::D, 3).is_err());
        assert!(cartan(Family::F, 5).is_err());
    }

    #[test]
    fn symmetrizer_is_minimal_and_symmetrizes() {
        for (f, n) in atlas_families() {
            let c = cartan(f, n).unwrap();
            let g = num_integer::gcd(
                c.d.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x)),
                0,
            );
            assert_eq!(g, 1, "{f}{n}: symmetrizer not gcd-normalized");
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        c.d[i] * c.matrix[i][j],
                        c.d[j] * c.matrix[j][i],
                        "{f}{n} at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn affinize_examples() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        assert_eq!(ad.a(0, 1), -1);
        assert_eq!(ad.a(0, 2), -1);
        assert_eq!(ad.a(1, 0), -1);
        assert_eq!(ad.a(2, 0), -1);
        assert_eq!(ad.d0, 1);

        let ad = affinize(&cartan(Family::A, 1).unwrap());
        assert_eq!(ad.a(0, 1), -2);
        assert_eq!(ad.a(1, 0), -2);

        let ad = affinize(&cartan(Family::C, 2).unwrap());
        assert_eq!(ad.a(0, 1), -1);
        assert_eq!(ad.a(1, 0), -2);
        assert_eq!(ad.d0, 2);
    }

    #[test]
    fn affine_matrix_is_symmetrizable() {
        for (f, n) in atlas_families() {
            let ad = affinize(&cartan(f, n).unwrap());
            for i in 0..=n {
                for j in 0..=n {
                    assert_eq!(ad.gram(i, j), ad.gram(j, i), "{f}{n} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn delta_lies_in_radical() {
        for (f, n) in atlas_families() {
            let ad = affinize(&cartan(f, n).unwrap());
            let delta = ad.delta();
            for i in 0..=n {
                let mut alpha = vec![0i64; n + 1];
                alpha[i] = 1;
                assert_eq!(bilinear(&ad, &delta, &alpha).unwrap(), 0, "{f}{n} α_{i}");
            }
            assert_eq!(bilinear(&ad, &delta, &delta).unwrap(), 0, "{f}{n} (δ|δ)");
        }
    }

    #[test]
    fn bilinear_examples() {
        let ad = affinize(&cartan(Family::A, 2).unwrap());
        assert_eq!(bilinear(&ad, &[0, 1, 0], &[0, 1, 0]).unwrap(), 2);
        assert_eq!(bilinear(&ad, &[0, 1, 0], &[0, 0, 1]).unwrap(), -1);
        assert!(bilinear(&ad, &[1, 0], &[0, 0, 1]).is_err());
    }
}
