//! Closed-form and recursive counts of `|Lambda_d(k)|`.

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{bernoulli, binomial, int, Rational};

/// `|Lambda_d(k)| = sum_i a_{d,i} (k+1)^{d-2i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPolynomial {
    dimension: usize,
    coefficients: Vec<Rational>,
}

impl CountPolynomial {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// `a_{d,0}, a_{d,1}, ...`; entry `i` multiplies `(k+1)^{d-2i}`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn exponent(&self, i: usize) -> usize {
        self.dimension - 2 * i
    }

    pub fn evaluate(&self, k: u64) -> Rational {
        let base = Rational::from_integer(BigInt::from(k + 1));
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, a)| a * num_traits::pow(base.clone(), self.exponent(i)))
            .sum()
    }
}

/// `|Lambda_d(k)|` from `|Lambda_1(k)| = k + 1` and
/// `|Lambda_{d+1}(k)| = |Lambda_d(k)| + 2 sum_{j<k} |Lambda_d(j)|`.
pub fn lambda_size_recursive(d: usize, k: u64) -> BigUint {
    assert!(d >= 1, "dimension must be positive");
    static MEMO: LazyLock<Mutex<HashMap<(usize, u64), BigUint>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    if let Some(v) = MEMO.lock().unwrap().get(&(d, k)) {
        return v.clone();
    }
    // one row per dimension, computed bottom-up over j = 0..=k
    let mut row: Vec<BigUint> = (0..=k).map(|j| BigUint::from(j + 1)).collect();
    for _ in 1..d {
        let mut next = Vec::with_capacity(row.len());
        let mut prefix = BigUint::zero();
        for v in &row {
            next.push(v + &prefix * 2u32);
            prefix += v;
        }
        row = next;
    }
    let value = row.pop().expect("k + 1 entries");
    MEMO.lock().unwrap().insert((d, k), value.clone());
    value
}

/// Coefficients `a_{d,i}` for `0 <= i < ceil(d/2)` from `a_{1,0} = 1` and
/// `a_{d,i} = 2 sum_{l<=i} a_{d-1,l}/(d-2l) C(d-2l, 2(i-l)) B_{2(i-l)}`.
pub fn lambda_coefficients(d: usize) -> CountPolynomial {
    assert!(d >= 1, "dimension must be positive");
    static MEMO: LazyLock<Mutex<Vec<Vec<Rational>>>> =
        LazyLock::new(|| Mutex::new(vec![vec![Rational::one()]]));
    let mut table = MEMO.lock().unwrap();
    while table.len() < d {
        let dim = table.len() + 1;
        let prev = &table[dim - 2];
        let len = dim.div_ceil(2);
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = Rational::zero();
            for (l, a) in prev.iter().enumerate().take(i + 1) {
                let top = (dim - 2 * l) as u64;
                let gap = 2 * (i - l);
                let b = bernoulli(gap);
                if b.is_zero() {
                    continue;
                }
                acc += a / int(top as i64) * Rational::from_integer(binomial(top, gap as i64)) * b;
            }
            coeffs.push(acc * int(2));
        }
        table.push(coeffs);
    }
    let coefficients = table[d - 1].clone();
    debug_assert_eq!(coefficients.len(), d.div_ceil(2));
    CountPolynomial {
        dimension: d,
        coefficients,
    }
}

/// Evaluates the coefficient polynomial at `k`; a non-integral or negative
/// value signals an internal inconsistency.
pub fn lambda_size_polynomial(d: usize, k: u64) -> Result<BigUint> {
    let value = lambda_coefficients(d).evaluate(k);
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NonIntegral(value.to_string()));
    }
    Ok(value
        .to_integer()
        .to_biguint()
        .expect("checked nonnegative"))
}

/// `a_{d,0} = 2^{d-1}/d!`.
pub fn leading_coefficient_closed_form(d: usize) -> Rational {
    Rational::new(BigInt::one() << (d - 1), factorial(d))
}

/// `a_{d,1} = 2^{d-3}/(3 (d-3)!)` for `d >= 3`.
pub fn second_coefficient_closed_form(d: usize) -> Option<Rational> {
    (d >= 3).then(|| Rational::new(BigInt::one() << (d - 3), factorial(d - 3) * 3))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate_lambda;
    use crate::numeric::frac;

    #[test]
    fn recursive_examples() {
        assert_eq!(lambda_size_recursive(2, 2), BigUint::from(9u32));
        assert_eq!(lambda_size_recursive(3, 2), BigUint::from(19u32));
        assert_eq!(lambda_size_recursive(4, 1), BigUint::from(8u32));
        assert_eq!(lambda_size_recursive(1, 0), BigUint::from(1u32));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(lambda_coefficients(1).coefficients(), &[int(1)]);
        assert_eq!(lambda_coefficients(2).coefficients(), &[int(1)]);
        assert_eq!(lambda_coefficients(3).coefficients(), &[frac(2, 3), frac(1, 3)]);
        assert_eq!(
            lambda_coefficients(7).coefficients(),
            &[frac(4, 315), frac(2, 9), frac(28, 45), frac(1, 7)]
        );
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(lambda_size_polynomial(2, 3).unwrap(), BigUint::from(16u32));
        assert_eq!(lambda_size_polynomial(6, 0).unwrap(), BigUint::from(1u32));
        // oracle: brute-force enumeration
        assert_eq!(generate_lambda(5, 4).len(), 501);
        assert_eq!(lambda_size_polynomial(5, 4).unwrap(), BigUint::from(501u32));
    }

    #[test]
    fn coefficient_lengths_and_closed_forms() {
        for d in 1..=12 {
            let poly = lambda_coefficients(d);
            assert_eq!(poly.coefficients().len(), d.div_ceil(2));
            assert_eq!(poly.coefficients()[0], leading_coefficient_closed_form(d), "d={d}");
            if let Some(a1) = second_coefficient_closed_form(d) {
                assert_eq!(poly.coefficients()[1], a1, "d={d}");
            }
        }
        assert!(second_coefficient_closed_form(2).is_none());
    }

    #[test]
    fn three_paths_agree() {
        for d in 1..=5 {
            for k in 0..=8u32 {
                let direct = BigUint::from(generate_lambda(d, k).len());
                assert_eq!(lambda_size_recursive(d, k as u64), direct, "d={d} k={k}");
                assert_eq!(lambda_size_polynomial(d, k as u64).unwrap(), direct, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn polynomial_positive_integer_up_to_twelve() {
        for d in 1..=12 {
            for k in 0..=30 {
                let v = lambda_size_polynomial(d, k).unwrap();
                assert!(v > BigUint::zero());
                assert_eq!(v, lambda_size_recursive(d, k), "d={d} k={k}");
            }
        }
    }
}
