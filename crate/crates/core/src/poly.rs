//! Dense univariate polynomials over ℤ, the building block for the field ℚ(v).
//!
//! Coefficients are exact `BigInt`s stored little-endian (index = exponent)
//! with no trailing zeros, so two equal polynomials have identical
//! representations. Rational content lives in [`crate::scalar::Scalar`], not
//! here: keeping the polynomial layer fraction-free avoids a gcd
//! normalization inside every coefficient operation, which profiling shows
//! would otherwise dominate entire verification runs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in one variable over ℤ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    /// Coefficient of x^i at index i; the last entry, if any, is nonzero.
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(n: i64) -> Self {
        QPoly::constant(BigInt::from(n))
    }

    /// c · x^k.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// True if the polynomial is c·x^k for a single k; returns (k, c).
    pub fn as_monomial(&self) -> Option<(usize, &BigInt)> {
        let deg = self.degree()?;
        if self.coeffs[..deg].iter().all(|c| c.is_zero()) {
            Some((deg, &self.coeffs[deg]))
        } else {
            None
        }
    }

    /// Lowest exponent with a nonzero coefficient (valuation at 0).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Divide by x^k; every coefficient below x^k must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        debug_assert!(self.coeffs[..k].iter().all(|c| c.is_zero()));
        QPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// gcd of all coefficients, with the sign of the leading coefficient
    /// (so `self / content` has a positive leading coefficient); zero for the
    /// zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    break;
                }
            }
        }
        if self.leading().map_or(false, |l| l.is_negative()) {
            g = -g;
        }
        g
    }

    /// Divide every coefficient by `d` (must divide exactly).
    pub fn div_content(&self, d: &BigInt) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(d);
                    debug_assert!(r.is_zero(), "non-exact content division");
                    q
                })
                .collect(),
        }
    }

    /// (primitive part with positive leading coefficient, content).
    pub fn primitive_part(&self) -> (QPoly, BigInt) {
        if self.is_zero() {
            return (QPoly::zero(), BigInt::zero());
        }
        let c = self.content();
        (self.div_content(&c), c)
    }

    /// Pseudo-remainder: the remainder of lead(b)^(deg a − deg b + 1) · a
    /// divided by b, which is integer-exact for any integer divisor.
    fn pseudo_rem(&self, b: &QPoly) -> QPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lead = b.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < db {
                break;
            }
            let factor = rem.leading().unwrap().clone();
            let shift = rd - db;
            // rem = lead·rem − factor·x^shift·b
            let mut coeffs: Vec<BigInt> =
                rem.coeffs.iter().map(|c| c * &lead).collect();
            for (i, c) in b.coeffs.iter().enumerate() {
                let idx = i + shift;
                let val = &coeffs[idx] - &(c * &factor);
                coeffs[idx] = val;
            }
            rem = QPoly::from_coeffs(coeffs);
            debug_assert!(rem.degree().map_or(true, |d| d < rd));
        }
        rem
    }

    /// Exact polynomial division; panics if the division is not exact over ℚ
    /// or the quotient is not an integer polynomial. By Gauss's lemma the
    /// quotient of a primitive polynomial by a primitive divisor is again
    /// integral whenever the division is exact, which covers every use here.
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        let deg = self.degree().unwrap();
        assert!(deg >= dd, "non-exact polynomial division");
        let mut quo = vec![BigInt::zero(); deg - dd + 1];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let (factor, r) = rem.leading().unwrap().div_rem(lead);
            assert!(r.is_zero(), "non-integral polynomial quotient");
            let shift = rd - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = i + shift;
                let val = &rem.coeffs[idx] - &(c * &factor);
                rem.coeffs[idx] = val;
            }
            rem.trim();
            quo[shift] = factor;
        }
        assert!(rem.is_zero(), "non-exact polynomial division");
        QPoly::from_coeffs(quo)
    }

    /// Primitive gcd (positive leading coefficient) via the primitive
    /// pseudo-remainder sequence; gcd(0,0) = 0. Stripping the content of each
    /// pseudo-remainder keeps coefficient growth polynomial.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.primitive_part().0;
        let mut b = other.primitive_part().0;
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b).primitive_part().0;
            a = b;
            b = r;
        }
        a
    }

    /// Substitute x ↦ x⁻¹ and clear denominators: returns (p~, k) with
    /// p(x⁻¹) = p~(x) · x^(−k), where p~ has nonzero constant term.
    pub fn reverse(&self) -> (QPoly, usize) {
        if self.is_zero() {
            return (QPoly::zero(), 0);
        }
        let deg = self.degree().unwrap();
        let coeffs: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        (QPoly::from_coeffs(coeffs), deg)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let val = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = val;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*x^{}", c, i)?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> QPoly {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn div_exact_roundtrip() {
        let b = p(&[2, 1, 1]);
        let q = p(&[1, 0, -3, 2, 5]);
        let a = &b * &q;
        assert_eq!(a.div_exact(&b), q);
    }

    #[test]
    fn gcd_of_common_factor() {
        let common = p(&[1, 1]);
        let a = &common * &p(&[-1, 1]);
        let b = &common * &p(&[3, 0, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), QPoly::one());
    }

    #[test]
    fn gcd_strips_content_and_sign() {
        let a = p(&[-2, -2]).scale(&BigInt::from(3)); // −6(x+1)
        let b = p(&[4, 4]); // 4(x+1)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn primitive_part_normalizes() {
        let a = p(&[2, 4]).scale(&BigInt::from(3));
        let (prim, content) = a.primitive_part();
        assert_eq!(prim, p(&[1, 2]));
        assert_eq!(content, BigInt::from(6));
        assert_eq!(prim.scale(&content), a);
        let neg = p(&[2, -4]);
        let (prim2, content2) = neg.primitive_part();
        assert_eq!(prim2, p(&[-1, 2]));
        assert_eq!(content2, BigInt::from(-2));
    }

    #[test]
    fn reverse_tracks_valuation() {
        let a = p(&[3, 0, 1]); // 3 + x^2
        let (rev, k) = a.reverse();
        assert_eq!(rev, p(&[1, 0, 3]));
        assert_eq!(k, 2);
    }
}
