//! Exact q-analogue counting: q-integers, q-factorials, q-binomials and
//! total subspace counts. Everything is arbitrary precision; no floating
//! point appears anywhere in this module.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;

/// [n]_q = 1 + q + ... + q^(n-1), computed by the sum form so that q = 1
/// gives exactly n.
pub fn q_int(n: u64, q: u64) -> BigUint {
    assert!(q >= 1, "q_int requires q >= 1");
    let q = BigUint::from(q);
    let mut acc = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..n {
        acc += &power;
        power *= &q;
    }
    acc
}

/// [n]_q! = [1]_q [2]_q ... [n]_q.
pub fn q_factorial(n: u64, q: u64) -> BigUint {
    assert!(q >= 2, "q_factorial requires q >= 2");
    let mut acc = BigUint::one();
    for i in 1..=n {
        acc *= q_int(i, q);
    }
    acc
}

/// The Gaussian binomial coefficient [n]_q! / ([k]_q! [n-k]_q!).
///
/// The division is always exact; this is checked.
pub fn q_binomial(n: u64, k: u64, q: u64) -> Result<BigUint, Error> {
    assert!(q >= 2, "q_binomial requires q >= 2");
    if k > n {
        return Err(Error::OutOfRange { n, k });
    }
    let numerator = q_factorial(n, q);
    let denominator = q_factorial(k, q) * q_factorial(n - k, q);
    let (quotient, remainder) = numerator.div_rem(&denominator);
    assert!(remainder.is_zero(), "q-binomial division must be exact");
    Ok(quotient)
}

/// Number of subspaces of F_q^n of every dimension combined.
pub fn subspace_count(n: u64, q: u64) -> BigUint {
    (0..=n).map(|k| q_binomial(n, k, q).unwrap()).sum()
}
