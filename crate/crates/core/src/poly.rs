//! Dense univariate polynomials with machine-integer coefficients.
//!
//! Every polynomial handled here (semigroup polynomials, cyclotomic
//! polynomials, products of binomials `1 - x^b`) has small coefficients, so
//! `i64` with checked arithmetic is used. Overflow panics instead of wrapping.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Coefficients in ascending degree order, normalized with no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<i64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `1 - x^k`.
    pub fn one_minus_x_pow(k: usize) -> Self {
        if k == 0 {
            return Poly::zero();
        }
        let mut c = vec![0; k + 1];
        c[0] = 1;
        c[k] = -1;
        Poly { coeffs: c }
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        -Poly::one_minus_x_pow(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |a, &c| a.checked_add(c).expect("coefficient overflow"))
    }

    /// Substitute `x -> x^k`.
    pub fn compose_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &v) in self.coeffs.iter().enumerate() {
            c[i * k] = v;
        }
        Poly { coeffs: c }
    }

    /// `x^deg f(1/x)`: the coefficient list reversed.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    pub fn is_self_reciprocal(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder by a divisor with leading coefficient `±1`.
    pub fn div_rem_monic(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        assert!(lead == 1 || lead == -1, "divisor must be monic up to sign");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lead;
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (i, &dv) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(c.checked_mul(dv).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient, `None` if the remainder is non-zero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn to_bigint_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Product `prod (1 - x^b)^m` over `(b, m)` pairs with `m >= 0`.
    pub fn product_of_binomials<I: IntoIterator<Item = (usize, u32)>>(factors: I) -> Poly {
        factors
            .into_iter()
            .fold(Poly::one(), |acc, (b, m)| &acc * &Poly::one_minus_x_pow(b).pow(m))
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                c[i + j] = c[i + j]
                    .checked_add(a.checked_mul(b).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        Poly::new(c)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).checked_add(rhs.coeff(k)).expect("coefficient overflow"))
                .collect(),
        )
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs.clone())
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Human-readable form, highest degree first (`x^5 - x^4 + x^3 - x + 1`).
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{}x", a)?,
                (_, 1) => write!(f, "x^{}", k)?,
                _ => write!(f, "{}x^{}", a, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_conventional_form() {
        let p = Poly::new(vec![1, -1, 0, 1, -1, 1]);
        assert_eq!(p.to_string(), "x^5 - x^4 + x^3 - x + 1");
        assert_eq!(Poly::one_minus_x_pow(3).to_string(), "-x^3 + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division_round_trip() {
        let a = Poly::new(vec![1, 2, 3, 4]);
        let b = Poly::new(vec![1, -1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let (q, r) = (&prod + &Poly::one()).div_rem_monic(&b);
        assert_eq!(q, a);
        assert_eq!(r, Poly::one());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(Poly::new(vec![1, 0, 0]).degree(), Some(0));
        assert!(Poly::new(vec![0, 0]).is_zero());
    }

    #[test]
    fn compose_and_reciprocal() {
        let p = Poly::new(vec![1, -1, 1]);
        assert_eq!(p.compose_power(2).coeffs(), &[1, 0, -1, 0, 1]);
        assert!(p.is_self_reciprocal());
        assert!(!Poly::new(vec![1, -1, 0, 1, -1, 1]).is_self_reciprocal());
    }
}
