//! Expansion of integer power series as `prod_k (1 - x^k)^{e_k}`.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{divisors, mobius};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::semigroup::NumericalSemigroup;
use crate::series::SeriesPrefix;

/// The exponents `e_1..e_N` of `f = prod (1 - x^k)^{e_k} mod x^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSequence {
    entries: Vec<BigInt>,
}

impl ExponentSequence {
    pub fn new(entries: Vec<BigInt>) -> Self {
        ExponentSequence { entries }
    }

    pub fn bound(&self) -> usize {
        self.entries.len()
    }

    /// `e_1..e_N`; position 0 holds `e_1`.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `e_k` for `1 <= k <= bound`.
    pub fn get(&self, k: usize) -> &BigInt {
        assert!(k >= 1 && k <= self.bound(), "index {} outside 1..={}", k, self.bound());
        &self.entries[k - 1]
    }

    /// Indices `k` with `e_k != 0`, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.bound()).filter(|&k| !self.get(k).is_zero()).collect()
    }

    pub fn truncate(&self, bound: usize) -> ExponentSequence {
        ExponentSequence::new(self.entries[..bound.min(self.bound())].to_vec())
    }

    /// `prod_{k <= N} (1 - x^k)^{e_k}` modulo `x^{N+1}`.
    pub fn reconstruct(&self) -> SeriesPrefix {
        let mut acc = SeriesPrefix::one(self.bound());
        for (i, e) in self.entries.iter().enumerate() {
            acc.mul_binomial_power(i + 1, e);
        }
        acc
    }
}

/// Comma-separated with a space, e.g. `1, 0, -1`.
impl fmt::Display for ExponentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", e)?;
        }
        Ok(())
    }
}

/// An array of decimal strings.
impl Serialize for ExponentSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.entries.iter().map(|e| e.to_string()))
    }
}

/// Power sums `s_f(1..=N)` of the reciprocal roots of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums {
    values: Vec<BigInt>,
}

impl PowerSums {
    /// `s_f(1)..s_f(N)`; position 0 holds `s_f(1)`.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &BigInt {
        &self.values[k - 1]
    }
}

/// Successive elimination: peel off `(1 - x^m)^{e_m}` for `m = 1, 2, ...`,
/// each time reading `e_m` from the lowest surviving non-constant term.
pub fn witt_expand_iterative(f: &SeriesPrefix, bound: usize) -> Result<ExponentSequence> {
    if !f.coeff(0).is_one() {
        return Err(Error::BadConstantTerm);
    }
    if bound > f.bound() {
        return Err(Error::PrefixTooShort { requested: bound, available: f.bound() });
    }
    let mut g = f.truncate(bound);
    let mut entries = Vec::with_capacity(bound);
    for m in 1..=bound {
        let e = -g.coeff(m).clone();
        if !e.is_zero() {
            g.mul_binomial_power(m, &-&e);
        }
        debug_assert!(g.coeff(m).is_zero());
        entries.push(e);
    }
    Ok(ExponentSequence::new(entries))
}

/// Newton's recursion `s(k) + a_1 s(k-1) + ... + a_{k-1} s(1) + k a_k = 0`,
/// with `a_k = 0` past the degree of `f`.
pub fn power_sums(f: &Poly, bound: usize) -> Result<PowerSums> {
    if f.coeff(0) != 1 {
        return Err(Error::BadConstantTerm);
    }
    let a: Vec<BigInt> = f.to_bigint_coeffs();
    let deg = a.len() - 1;
    let mut s: Vec<BigInt> = Vec::with_capacity(bound);
    for k in 1..=bound {
        let mut acc = if k <= deg { -(&a[k] * BigInt::from(k)) } else { BigInt::zero() };
        for i in 1..k.min(deg + 1) {
            if !a[i].is_zero() {
                acc -= &a[i] * &s[k - i - 1];
            }
        }
        s.push(acc);
    }
    Ok(PowerSums { values: s })
}

/// `e_f(k) = (1/k) sum_{j | k} mu(k/j) s_f(j)`. Every division must be exact.
pub fn witt_expand_moebius(f: &Poly, bound: usize) -> Result<ExponentSequence> {
    let s = power_sums(f, bound)?;
    let mut entries = Vec::with_capacity(bound);
    for k in 1..=bound {
        let mut acc = BigInt::zero();
        for j in divisors(k) {
            match mobius(k / j) {
                1 => acc += s.get(j),
                -1 => acc -= s.get(j),
                _ => {}
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::IntegralityViolation { index: k });
        }
        entries.push(q);
    }
    Ok(ExponentSequence::new(entries))
}

/// The cyclotomic exponent sequence of `S`, truncated at `bound`
/// (default `F(S) + 2 max(A) + 1`).
pub fn exponent_sequence(s: &NumericalSemigroup, bound: Option<usize>) -> ExponentSequence {
    let n = bound.unwrap_or_else(|| s.default_bound());
    witt_expand_moebius(&s.semigroup_polynomial(), n).expect("power sums of an integer polynomial invert exactly")
}

/// `M(alpha, k) = (1/k) sum_{j | k} mu(k/j) alpha^j`.
pub fn necklace_coefficient(alpha: &BigInt, k: usize) -> Result<BigInt> {
    assert!(k >= 1);
    let mut acc = BigInt::zero();
    for j in divisors(k) {
        let term = num_traits::pow(alpha.clone(), j);
        match mobius(k / j) {
            1 => acc += term,
            -1 => acc -= term,
            _ => {}
        }
    }
    let (q, r) = acc.div_rem(&BigInt::from(k));
    if !r.is_zero() {
        return Err(Error::IntegralityViolation { index: k });
    }
    Ok(q)
}

/// Separation tolerance for the two smallest root moduli.
pub const ROOT_SEPARATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthCheck {
    pub k: usize,
    pub exponent: String,
    pub main_term: f64,
    pub deviation: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// Smallest root modulus `|alpha_1|`.
    pub alpha1: f64,
    /// Second smallest root modulus, absent for linear `f`.
    pub alpha2: Option<f64>,
    pub checks: Vec<GrowthCheck>,
}

impl GrowthReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks `|e_f(k) - alpha_1^{-k}/k| <= (d(k)/k) (|alpha_1|^{-k/2} + deg f |alpha_2|^{-k})`
/// for `k` in `ks`, with `alpha_1, alpha_2` the roots of `f` of smallest
/// modulus. The exponents are computed from `f`.
pub fn growth_envelope_check(f: &Poly, ks: RangeInclusive<usize>) -> Result<GrowthReport> {
    let e = witt_expand_moebius(f, *ks.end())?;
    growth_envelope_check_against(f, ks, |k| e.get(k).clone())
}

/// As [`growth_envelope_check`], with the exponents supplied by the caller.
pub fn growth_envelope_check_against<E>(f: &Poly, ks: RangeInclusive<usize>, exponent: E) -> Result<GrowthReport>
where
    E: Fn(usize) -> BigInt,
{
    if f.coeff(0) != 1 {
        return Err(Error::BadConstantTerm);
    }
    let deg = f.degree().unwrap_or(0);
    let mut checks = Vec::new();
    if deg == 0 {
        return Ok(GrowthReport { alpha1: f64::INFINITY, alpha2: None, checks });
    }
    let mut roots = polynomial_roots(f);
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let a1 = roots[0];
    let a2 = roots.get(1).copied();
    if let Some(a2) = a2 {
        let gap = a2.norm() - a1.norm();
        if gap <= ROOT_SEPARATION_TOLERANCE {
            return Err(Error::RootSeparationUnverifiable(gap));
        }
    }
    // A root of strictly smallest modulus is real: its conjugate is a root of
    // the same modulus.
    let alpha1 = a1.re;
    for k in ks {
        if k == 0 {
            continue;
        }
        let kf = k as f64;
        let main = alpha1.powi(-(k as i32)) / kf;
        let ek = exponent(k);
        let ekf = ek.to_f64().unwrap_or(if ek.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
        let deviation = (ekf - main).abs();
        let dk = divisors(k).len() as f64;
        let mut bound = a1.norm().powf(-kf / 2.0);
        if let Some(a2) = a2 {
            bound += deg as f64 * a2.norm().powf(-kf);
        }
        bound *= dk / kf;
        // Slack covers rounding of the floating-point root moduli only.
        let pass = deviation <= bound * (1.0 + 1e-9) + 1e-12;
        checks.push(GrowthCheck { k, exponent: ek.to_string(), main_term: main, deviation, bound, pass });
    }
    Ok(GrowthReport { alpha1: a1.norm(), alpha2: a2.map(|r| r.norm()), checks })
}

/// All complex roots of `f` by Aberth iteration followed by Newton polishing.
fn polynomial_roots(f: &Poly) -> Vec<Complex64> {
    let c: Vec<f64> = f.coeffs().iter().map(|&v| v as f64).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v / lead, 0.0)).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // Cauchy bound for initial radius.
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..5 {
            let (p, dp) = eval(*r);
            if dp.norm() == 0.0 {
                break;
            }
            *r -= p / dp;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn iterative_examples() {
        let e = witt_expand_iterative(&SeriesPrefix::from_i64(&[1, -1, 0, 0, 0, 0]), 5).unwrap();
        assert_eq!(e.entries(), big(&[1, 0, 0, 0, 0]).as_slice());
        let e = witt_expand_iterative(&SeriesPrefix::from_i64(&[1, -2, 0, 0, 0]), 4).unwrap();
        assert_eq!(e.entries(), big(&[2, 1, 2, 3]).as_slice());
        let e = witt_expand_iterative(&SeriesPrefix::from_i64(&[1, -1, 1, 0, 0, 0, 0]), 6).unwrap();
        assert_eq!(e.entries(), big(&[1, -1, -1, 0, 0, 1]).as_slice());
    }

    #[test]
    fn iterative_errors() {
        assert_eq!(witt_expand_iterative(&SeriesPrefix::from_i64(&[2, 1]), 1), Err(Error::BadConstantTerm));
        assert_eq!(
            witt_expand_iterative(&SeriesPrefix::from_i64(&[1, 1]), 3),
            Err(Error::PrefixTooShort { requested: 3, available: 1 })
        );
    }

    #[test]
    fn power_sum_examples() {
        let s = power_sums(&Poly::new(vec![1, -1]), 6).unwrap();
        assert_eq!(s.values(), big(&[1; 6]).as_slice());
        let s = power_sums(&Poly::new(vec![1, -1, -1]), 5).unwrap();
        assert_eq!(s.values(), big(&[1, 3, 4, 7, 11]).as_slice());
        let s = power_sums(&Poly::new(vec![1, -1, 1]), 12).unwrap();
        assert_eq!(s.values(), big(&[1, -1, -2, -1, 1, 2, 1, -1, -2, -1, 1, 2]).as_slice());
        assert_eq!(power_sums(&Poly::new(vec![0, 1]), 3), Err(Error::BadConstantTerm));
    }

    #[test]
    fn moebius_examples() {
        let e = witt_expand_moebius(&Poly::new(vec![1, -2]), 4).unwrap();
        assert_eq!(e.entries(), big(&[2, 1, 2, 3]).as_slice());
        let e = witt_expand_moebius(&Poly::new(vec![1, -1]), 7).unwrap();
        assert_eq!(e.entries(), big(&[1, 0, 0, 0, 0, 0, 0]).as_slice());
    }

    #[test]
    fn semigroup_sequences() {
        let s = NumericalSemigroup::new(&[4, 6, 9]).unwrap();
        let e = exponent_sequence(&s, Some(18));
        assert_eq!(e.entries(), big(&[1, 0, 0, -1, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1]).as_slice());
        let e = exponent_sequence(&NumericalSemigroup::natural(), Some(10));
        assert!(e.support().is_empty());
        assert_eq!(exponent_sequence(&s, None).bound(), 11 + 18 + 1);
    }

    #[test]
    fn display_and_json() {
        let e = ExponentSequence::new(big(&[1, 0, -1]));
        assert_eq!(e.to_string(), "1, 0, -1");
        assert_eq!(serde_json::to_string(&e).unwrap(), r#"["1","0","-1"]"#);
    }

    #[test]
    fn reconstruct_round_trip() {
        let f = SeriesPrefix::from_i64(&[1, 3, -2, 7, 0, 5, 1, -1]);
        let e = witt_expand_iterative(&f, 7).unwrap();
        assert_eq!(e.reconstruct(), f);
    }

    #[test]
    fn necklaces() {
        let two = BigInt::from(2);
        assert_eq!(necklace_coefficient(&two, 1).unwrap(), BigInt::from(2));
        assert_eq!(necklace_coefficient(&two, 4).unwrap(), BigInt::from(3));
        for k in 2..10 {
            assert!(necklace_coefficient(&BigInt::one(), k).unwrap().is_zero());
        }
        for p in [2usize, 3, 5, 7, 11, 13] {
            for a in -5i64..=5 {
                let a = BigInt::from(a);
                let lhs = num_traits::pow(a.clone(), p) - &a;
                assert!((lhs % BigInt::from(p)).is_zero());
                assert!(necklace_coefficient(&a, p).is_ok());
            }
        }
    }

    #[test]
    fn growth_linear() {
        let r = growth_envelope_check(&Poly::new(vec![1, -2]), 1..=20).unwrap();
        assert_eq!(r.checks.len(), 20);
        assert!(r.all_pass());
        assert!(r.alpha2.is_none());
        let r = growth_envelope_check(&Poly::new(vec![1, -1]), 1..=20).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn growth_separation_failure() {
        // 1 + x^2 has roots +-i of equal modulus.
        assert!(matches!(
            growth_envelope_check(&Poly::new(vec![1, 0, 1]), 1..=5),
            Err(Error::RootSeparationUnverifiable(_))
        ));
    }
}
