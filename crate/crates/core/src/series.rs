//! Truncated integer power series.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::neg_power_coefficient;
use crate::poly::Poly;

/// The coefficients of a formal power series up to and including degree
/// `bound()`. Index equals degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPrefix {
    coeffs: Vec<BigInt>,
}

impl SeriesPrefix {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series prefix keeps at least the constant term");
        SeriesPrefix { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `p` truncated (or zero-padded) to degree `bound`.
    pub fn from_poly(p: &Poly, bound: usize) -> Self {
        Self::new((0..=bound).map(|k| BigInt::from(p.coeff(k))).collect())
    }

    /// The constant series 1 truncated at `bound`.
    pub fn one(bound: usize) -> Self {
        let mut c = vec![BigInt::zero(); bound + 1];
        c[0] = BigInt::one();
        Self::new(c)
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn truncate(&self, bound: usize) -> SeriesPrefix {
        assert!(bound <= self.bound());
        Self::new(self.coeffs[..=bound].to_vec())
    }

    /// Product modulo `x^(bound+1)`, with `bound` the smaller of the two.
    pub fn mul(&self, other: &SeriesPrefix) -> SeriesPrefix {
        let n = self.bound().min(other.bound());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiply in place by `(1 - x^b)^e` for any integer `e`, via the
    /// binomial series of `(1 - x^b)^(-(-e))`.
    pub fn mul_binomial_power(&mut self, b: usize, e: &BigInt) {
        assert!(b >= 1);
        if e.is_zero() {
            return;
        }
        let n = self.bound();
        let neg = -e;
        let weights: Vec<BigInt> = (0..=n / b).map(|j| neg_power_coefficient(&neg, j)).collect();
        let src = std::mem::take(&mut self.coeffs);
        let mut out = vec![BigInt::zero(); n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, w) in weights.iter().enumerate().take(k / b + 1) {
                let c = &src[k - j * b];
                if !c.is_zero() && !w.is_zero() {
                    acc += c * w;
                }
            }
            *slot = acc;
        }
        self.coeffs = out;
    }
}

impl Serialize for SeriesPrefix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_power_inverts() {
        let mut s = SeriesPrefix::one(12);
        s.mul_binomial_power(3, &BigInt::from(2));
        s.mul_binomial_power(3, &BigInt::from(-2));
        assert_eq!(s, SeriesPrefix::one(12));
    }

    #[test]
    fn geometric_series() {
        let mut s = SeriesPrefix::one(6);
        s.mul_binomial_power(2, &BigInt::from(-1));
        assert_eq!(s, SeriesPrefix::from_i64(&[1, 0, 1, 0, 1, 0, 1]));
    }
}
