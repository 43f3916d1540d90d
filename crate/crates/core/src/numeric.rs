//! Exact rational arithmetic helpers: Bernoulli numbers, binomial
//! coefficients and power sums.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Memo table for `B_0, B_1, ...`, grown on demand.
static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> =
    LazyLock::new(|| RwLock::new(vec![Rational::one()]));

/// The `n`-th Bernoulli number with `B_1 = -1/2`.
///
/// Values come from the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        if m >= 3 && m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(m as u64 + 1, k as i64)) * b;
            }
        }
        let next = -acc / Rational::from_integer(BigInt::from(m + 1));
        table.push(next);
    }
    table[n].clone()
}

/// `C(n, k)`, zero when `k` falls outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `F_p(n) = 1^p + 2^p + ... + n^p` via Faulhaber's closed form.
pub fn faulhaber_sum(p: u32, n: u64) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let n = Rational::from_integer(BigInt::from(n));
    if p == 0 {
        return n;
    }
    let p1 = p as u64 + 1;
    let inv = Rational::new(BigInt::one(), BigInt::from(p1));
    let mut total = num_traits::pow(n.clone(), p as usize + 1) * &inv
        + num_traits::pow(n.clone(), p as usize) / int(2);
    // the power-zero term is absent: F_p(0) = 0
    let mut tail = Rational::zero();
    for i in 1..p as usize {
        let b = bernoulli(p as usize + 1 - i);
        if b.is_zero() {
            continue;
        }
        tail += Rational::from_integer(binomial(p1, i as i64)) * b * num_traits::pow(n.clone(), i);
    }
    total += tail * inv;
    total
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the absolute values (0 when all are zero).
pub fn integer_gcd<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()))
}
