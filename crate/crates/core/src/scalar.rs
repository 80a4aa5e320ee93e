//! The exact coefficient field ℚ(v) with q = v².
//!
//! Every coefficient in the library lives here. A [`Scalar`] is kept in a
//! unique canonical form, so equality and in particular the zero test used by
//! all relation checks are syntactic. Working in v rather than q makes q^{1/2}
//! (needed by the level-one specialization γ_s^{±1/2} ↦ q^{±1/2}) an honest
//! element of the field.
//!
//! The rational content of a value is held in a single `BigRational` factor
//! while the polynomial part stays over ℤ: polynomial products of primitive
//! polynomials are again primitive (Gauss), so the hot multiply path runs on
//! integer convolutions with no gcd normalization at all.

use crate::poly::QPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An element of ℚ(v), stored as `c · num/den` where
///
/// * `c` is a reduced rational carrying all content and sign (zero iff the
///   value is zero, in which case `num = den = 1`),
/// * `num` and `den` are coprime primitive integer polynomials with positive
///   leading coefficients.
///
/// This form is unique, so `PartialEq`/`Hash` agree with field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    c: BigRational,
    num: QPoly,
    den: QPoly,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("q-factorial requires a nonnegative argument, got {0}")]
    NegativeFactorial(i64),
    #[error("q-binomial requires 0 <= n <= m, got m={m}, n={n}")]
    BinomialRange { m: i64, n: i64 },
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

impl Scalar {
    fn make(c: BigRational, num: QPoly, den: QPoly) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        if c.is_zero() || num.is_zero() {
            return Scalar::zero();
        }
        let (num, cn) = num.primitive_part();
        let (den, cd) = den.primitive_part();
        let c = c * BigRational::new(cn, cd);
        if den.is_one() {
            return Scalar { c, num, den };
        }
        // A monomial on either side reduces by a valuation shift instead of a
        // Euclidean gcd; this covers the overwhelming majority of fractions
        // produced by mode arithmetic (units v^m and rational multiples).
        if let Some((k, _)) = den.as_monomial() {
            let m = num.valuation().unwrap().min(k);
            return Scalar {
                c,
                num: num.shift_down(m),
                den: QPoly::monomial(k - m, BigInt::one()),
            };
        }
        if let Some((k, _)) = num.as_monomial() {
            let m = den.valuation().unwrap().min(k);
            return Scalar {
                c,
                num: QPoly::monomial(k - m, BigInt::one()),
                den: den.shift_down(m),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        Scalar { c, num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            c: BigRational::zero(),
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            c: BigRational::one(),
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            c: r,
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    /// v^k for any integer k (negative exponents become denominators).
    pub fn v_pow(k: i64) -> Scalar {
        if k >= 0 {
            Scalar {
                c: BigRational::one(),
                num: QPoly::monomial(k as usize, BigInt::one()),
                den: QPoly::one(),
            }
        } else {
            Scalar {
                c: BigRational::one(),
                num: QPoly::one(),
                den: QPoly::monomial((-k) as usize, BigInt::one()),
            }
        }
    }

    /// q^k = v^{2k}.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::v_pow(2 * k)
    }

    /// Σ c_j · v^{e_j} from (exponent, coefficient) pairs.
    pub fn laurent(terms: &[(i64, i64)]) -> Scalar {
        let mut acc = Scalar::zero();
        for &(e, c) in terms {
            acc = &acc + &(&Scalar::from_int(c) * &Scalar::v_pow(e));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar {
            c: self.c.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, k: i64) -> Scalar {
        if k == 0 {
            return Scalar::one();
        }
        let base = if k < 0 {
            self.inverse().expect("pow of zero with negative exponent")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// The bar involution v ↦ v⁻¹.
    pub fn bar(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let (num_rev, kn) = self.num.reverse();
        let (den_rev, kd) = self.den.reverse();
        // num(v⁻¹)/den(v⁻¹) = num~ · v^{kd−kn} / den~
        let shift = kd as i64 - kn as i64;
        let base = Scalar::make(self.c.clone(), num_rev, den_rev);
        &base * &Scalar::v_pow(shift)
    }

    /// The symmetric q-integer [m] at q_i = q^d:
    /// (q_i^m − q_i^{−m})/(q_i − q_i^{−1}).
    pub fn qint(m: i64, d: u32) -> Scalar {
        let a = m.unsigned_abs() as i64;
        let d = d as i64;
        let mut terms = Vec::new();
        for j in 0..a {
            terms.push((2 * d * (a - 1 - 2 * j), 1));
        }
        let val = Scalar::laurent(&terms);
        if m < 0 {
            -&val
        } else {
            val
        }
    }

    /// [m]! at q_i = q^d.
    pub fn qfact(m: i64, d: u32) -> Result<Scalar, ScalarError> {
        if m < 0 {
            return Err(ScalarError::NegativeFactorial(m));
        }
        let mut acc = Scalar::one();
        for k in 1..=m {
            acc = &acc * &Scalar::qint(k, d);
        }
        Ok(acc)
    }

    /// Gaussian binomial [m over n] at q_i = q^d.
    pub fn qbinom(m: i64, n: i64, d: u32) -> Result<Scalar, ScalarError> {
        if n < 0 || n > m {
            return Err(ScalarError::BinomialRange { m, n });
        }
        let num = Scalar::qfact(m, d)?;
        let den = &Scalar::qfact(n, d)? * &Scalar::qfact(m - n, d)?;
        Ok(&num / &den)
    }

    /// q − q⁻¹, the ubiquitous denominator.
    pub fn q_minus_qinv() -> Scalar {
        Scalar::laurent(&[(2, 1), (-2, -1)])
    }

    /// Laurent view: Some(list of (v-exponent, coefficient), descending) when
    /// the denominator is a monomial in v; None for a genuine fraction.
    fn laurent_terms(&self) -> Option<Vec<(i64, BigRational)>> {
        let (k, _) = self.den.as_monomial()?;
        let mut out = Vec::new();
        for (i, coeff) in self.num.coeffs().iter().enumerate().rev() {
            if !coeff.is_zero() {
                out.push((i as i64 - k as i64, &self.c * coeff));
            }
        }
        Some(out)
    }

    /// Canonical string in the variable v.
    pub fn to_v_string(&self) -> String {
        self.render(false)
    }

    /// Canonical string in q (= v²); odd powers of v stay as v.
    pub fn to_q_string(&self) -> String {
        self.render(true)
    }

    fn render(&self, in_q: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        match self.laurent_terms() {
            Some(terms) => render_terms(&terms, in_q),
            None => {
                let num = Scalar {
                    c: self.c.clone(),
                    num: self.num.clone(),
                    den: QPoly::one(),
                };
                let den = Scalar {
                    c: BigRational::one(),
                    num: self.den.clone(),
                    den: QPoly::one(),
                };
                format!("({}) / ({})", num.render(in_q), den.render(in_q))
            }
        }
    }

    pub fn parse(s: &str) -> Result<Scalar, ScalarError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            // "(poly) / (poly)"
            let close = matching_paren(rest)
                .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            let num_str = &rest[..close];
            let tail = rest[close + 1..].trim_start();
            let tail = tail
                .strip_prefix('/')
                .ok_or_else(|| ScalarError::Parse(s.to_string()))?
                .trim_start();
            let tail = tail
                .strip_prefix('(')
                .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            let close2 = matching_paren(tail)
                .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            if !tail[close2 + 1..].trim().is_empty() {
                return Err(ScalarError::Parse(s.to_string()));
            }
            let num = parse_laurent(num_str)?;
            let den = parse_laurent(&tail[..close2])?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(&num / &den)
        } else {
            parse_laurent(s)
        }
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn render_terms(terms: &[(i64, BigRational)], in_q: bool) -> String {
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let var = if *e == 0 {
            None
        } else if in_q && e % 2 == 0 {
            Some(match e / 2 {
                1 => "q".to_string(),
                k => format!("q^{}", k),
            })
        } else {
            Some(match e {
                1 => "v".to_string(),
                k => format!("v^{}", k),
            })
        };
        match var {
            None => out.push_str(&mag.to_string()),
            Some(v) => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&v);
            }
        }
    }
    out
}

fn parse_laurent(s: &str) -> Result<Scalar, ScalarError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    // Split into signed terms; '-'/'+' after '^' belong to an exponent.
    let bytes = compact.as_bytes();
    let mut splits = vec![0usize];
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            splits.push(i);
        }
    }
    splits.push(bytes.len());
    let mut acc = Scalar::zero();
    for w in splits.windows(2) {
        let term = &compact[w[0]..w[1]];
        if term.is_empty() || term == "+" || term == "-" {
            return Err(ScalarError::Parse(s.to_string()));
        }
        acc = &acc + &parse_term(term).map_err(|_| ScalarError::Parse(s.to_string()))?;
    }
    Ok(acc)
}

fn parse_term(term: &str) -> Result<Scalar, ()> {
    let (sign, rest) = match term.strip_prefix('-') {
        Some(r) => (-1i64, r),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    // [rational][*][var[^int]]
    let var_pos = rest.find(|c| c == 'q' || c == 'v');
    let (coeff_str, var_str) = match var_pos {
        Some(p) => (&rest[..p], &rest[p..]),
        None => (rest, ""),
    };
    let coeff_str = coeff_str.strip_suffix('*').unwrap_or(coeff_str);
    let coeff = if coeff_str.is_empty() {
        BigRational::one()
    } else {
        BigRational::from_str(coeff_str).map_err(|_| ())?
    };
    let mut v_exp = 0i64;
    if !var_str.is_empty() {
        let (var, exp_str) = var_str.split_at(1);
        let exp: i64 = if exp_str.is_empty() {
            1
        } else {
            exp_str.strip_prefix('^').ok_or(())?.parse().map_err(|_| ())?
        };
        v_exp = match var {
            "q" => 2 * exp,
            "v" => exp,
            _ => return Err(()),
        };
    }
    let mut out = &Scalar::from_rational(coeff) * &Scalar::v_pow(v_exp);
    if sign < 0 {
        out = -&out;
    }
    Ok(out)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // c₁·n₁/d₁ + c₂·n₂/d₂ with cᵢ = aᵢ/bᵢ over the common denominator
        // b₁b₂·d₁d₂; the integer prefactors keep the combination fraction-free.
        let a1b2 = self.c.numer() * rhs.c.denom();
        let a2b1 = rhs.c.numer() * self.c.denom();
        let b1b2 = BigRational::new(BigInt::one(), self.c.denom() * rhs.c.denom());
        if self.den == rhs.den {
            let num = &self.num.scale(&a1b2) + &rhs.num.scale(&a2b1);
            return Scalar::make(b1b2, num, self.den.clone());
        }
        let num =
            &(&self.num * &rhs.den).scale(&a1b2) + &(&rhs.num * &self.den).scale(&a2b1);
        let den = &self.den * &rhs.den;
        Scalar::make(b1b2, num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let c = &self.c * &rhs.c;
        // Products of primitive polynomials are primitive (Gauss), so when no
        // denominators are involved the result is already canonical.
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                c,
                num: &self.num * &rhs.num,
                den: QPoly::one(),
            };
        }
        Scalar::make(c, &self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        if self.is_zero() {
            return Scalar::zero();
        }
        Scalar::make(
            &self.c / &rhs.c,
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c: -&self.c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_q_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_v_string())
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_q_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Scalar::parse(&s).map_err(serde::de::Error::custom)
    }
}
