//! Small number-theoretic helpers shared by the series and poset code.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_all(values: &[usize]) -> usize {
    values.iter().fold(0u64, |g, &v| gcd(g, v as u64)) as usize
}

/// Möbius function.
pub fn mobius(mut n: usize) -> i32 {
    assert!(n >= 1, "mobius of 0");
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient for every integer in `0..=limit`.
pub fn totient_table(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for p in 2..=limit {
        if phi[p] == p {
            let mut k = p;
            while k <= limit {
                phi[k] -= phi[k] / p;
                k += p;
            }
        }
    }
    phi
}

pub fn totient(n: usize) -> usize {
    totient_table(n)[n]
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Coefficient of `x^(j*b)` in `(1 - x^b)^(-e)`, i.e. `C(e + j - 1, j)`.
pub fn neg_power_coefficient(e: &BigInt, j: usize) -> BigInt {
    if j == 0 {
        return BigInt::one();
    }
    if e.is_zero() {
        return BigInt::zero();
    }
    binomial(&(e + BigInt::from(j) - 1), j)
}
