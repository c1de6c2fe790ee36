//! Cyclotomic polynomials and cyclotomic factorizations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{divisors, mobius, totient_table};
use crate::poly::Poly;
use crate::semigroup::NumericalSemigroup;
use crate::witt::ExponentSequence;

fn cache() -> &'static Mutex<HashMap<usize, Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial.
///
/// Built prime by prime from `Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x)` for `p ∤ m`,
/// then `Φ_n(x) = Φ_{rad n}(x^{n / rad n})`. Results are cached.
pub fn cyclotomic_polynomial(n: usize) -> Poly {
    assert!(n >= 1);
    if let Some(p) = cache().lock().expect("cache poisoned").get(&n) {
        return p.clone();
    }
    let primes = prime_factors(n);
    let rad: usize = primes.iter().product();
    let mut phi = Poly::x_pow_minus_one(1);
    for &p in &primes {
        phi = phi.compose_power(p).div_exact(&phi).expect("cyclotomic division is exact");
    }
    if rad != n {
        phi = phi.compose_power(n / rad);
    }
    cache().lock().expect("cache poisoned").insert(n, phi.clone());
    phi
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `f = prod Φ_d^{h_d} · remainder`, where `complete` means the remainder is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactorization {
    pub factors: BTreeMap<usize, u32>,
    pub complete: bool,
}

impl CyclotomicFactorization {
    /// `prod Φ_d^{h_d}`.
    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (&d, &h)| &acc * &cyclotomic_polynomial(d).pow(h))
    }

    /// Exponents `e_1..e_N` of `prod Φ_d^{h_d}`, using
    /// `Φ_d = prod_{j | d} (1 - x^j)^{mu(d/j)}` for `d >= 2`.
    pub fn exponents(&self, bound: usize) -> ExponentSequence {
        let mut e = vec![0i64; bound];
        for (&d, &h) in &self.factors {
            for j in divisors(d) {
                if j <= bound {
                    e[j - 1] += h as i64 * mobius(d / j) as i64;
                }
            }
        }
        ExponentSequence::new(e.into_iter().map(BigInt::from).collect())
    }
}

/// Largest `d` that can satisfy `φ(d) <= deg`.
///
/// `φ(d) >= sqrt(d/2)` gives `d <= 2 deg^2`. Inside that range the
/// Rosser–Schoenfeld bound `φ(d) > d / (e^γ ln ln d + 2.50637 / ln ln d)`
/// (valid for `d >= 3`, with increasing denominator for `d >= 27`) cuts the
/// range to `d <= deg · h(2 deg^2)`.
fn search_limit(deg: usize) -> usize {
    let naive = 2 * deg * deg;
    if naive < 27 {
        return naive.max(2);
    }
    let ll = (naive as f64).ln().ln();
    let h = 1.781_072_417_990_198 * ll + 2.50637 / ll;
    let tight = (deg as f64 * h).ceil() as usize + 1;
    naive.min(tight.max(26))
}

/// Divides out every cyclotomic factor of `f` (with `f(0) = 1`, leading
/// coefficient `±1`), smallest index first. `Φ_1` is never tried.
pub fn factor_into_cyclotomics(f: &Poly) -> CyclotomicFactorization {
    assert_eq!(f.coeff(0), 1, "constant term must be 1");
    let deg = f.degree().unwrap_or(0);
    let mut factors = BTreeMap::new();
    let mut rest = f.clone();
    if deg > 0 {
        let limit = search_limit(deg);
        let phi = totient_table(limit);
        for (d, &phi_d) in phi.iter().enumerate().take(limit + 1).skip(2) {
            let remaining = rest.degree().unwrap_or(0);
            if remaining == 0 {
                break;
            }
            if phi_d > remaining {
                continue;
            }
            let cyc = cyclotomic_polynomial(d);
            while let Some(q) = rest.div_exact(&cyc) {
                *factors.entry(d).or_insert(0) += 1;
                rest = q;
            }
        }
    }
    let complete = rest == Poly::one();
    CyclotomicFactorization { factors, complete }
}

/// Whether `P_S` is a product of cyclotomic polynomials. Non-symmetric
/// semigroups are rejected without factoring, since such a product with
/// `f(0) = 1` is self-reciprocal.
pub fn is_cyclotomic(s: &NumericalSemigroup) -> bool {
    if s.is_natural() {
        return true;
    }
    let p = s.semigroup_polynomial();
    if !p.is_self_reciprocal() {
        return false;
    }
    factor_into_cyclotomics(&p).complete
}
