//! Bernoulli numbers (exact rational generation, cached as `f64`) and
//! Bernoulli polynomials, including their periodized form.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Number of cached Bernoulli numbers `B_0 ..= B_{CAPACITY-1}`.
pub const BERNOULLI_CAPACITY: usize = 128;

/// Immutable table of Bernoulli numbers with the `B_1 = -1/2` convention.
#[derive(Debug)]
pub struct BernoulliCache {
    numbers: Vec<f64>,
}

impl BernoulliCache {
    /// Generates `B_0 .. B_{n-1}` with the Akiyama–Tanigawa algorithm in exact
    /// rational arithmetic, then rounds each to the nearest double.
    pub fn build(n: usize) -> Self {
        let mut numbers = Vec::with_capacity(n);
        let mut work: Vec<BigRational> = Vec::with_capacity(n);
        for m in 0..n {
            work.push(BigRational::new(BigInt::from(1), BigInt::from(m as u64 + 1)));
            for j in (1..=m).rev() {
                let diff = &work[j - 1] - &work[j];
                work[j - 1] = diff * BigRational::from_integer(BigInt::from(j as u64));
            }
            let b = &work[0];
            let v = if m == 1 {
                -0.5
            } else if b.is_zero() {
                0.0
            } else {
                b.to_f64().unwrap_or(f64::NAN)
            };
            numbers.push(v);
        }
        BernoulliCache { numbers }
    }

    /// Process-wide cache, built on first use and shared read-only afterwards.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(|| BernoulliCache::build(BERNOULLI_CAPACITY))
    }

    pub fn capacity(&self) -> usize {
        self.numbers.len()
    }

    pub fn get(&self, n: usize) -> Result<f64> {
        self.numbers.get(n).copied().ok_or(Error::Capacity {
            requested: n,
            capacity: self.numbers.len(),
        })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.numbers
    }
}

/// `B_n` with `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> Result<f64> {
    BernoulliCache::global().get(n)
}

/// `B_2k` without the range check, for internal loops that stay far below capacity.
pub(crate) fn b2k(k: usize) -> f64 {
    BernoulliCache::global().as_slice()[2 * k]
}

/// Bernoulli polynomial `B_n(x) = Σ_k C(n,k) B_k x^{n-k}`, evaluated by Horner's rule.
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64> {
    let cache = BernoulliCache::global();
    if n >= cache.capacity() {
        return Err(Error::Capacity {
            requested: n,
            capacity: cache.capacity(),
        });
    }
    let b = cache.as_slice();
    // Coefficient of x^j is C(n, j) B_{n-j}; accumulate from the top degree down.
    let mut binom = 1.0;
    let mut acc = 0.0;
    for j in (0..=n).rev() {
        let c = binom * b[n - j];
        acc = acc * x + c;
        binom = binom * j as f64 / (n - j + 1) as f64;
    }
    Ok(acc)
}

/// Periodized Bernoulli function `P_n(x) = B_n(x - floor(x))`.
pub fn periodized_bernoulli(n: usize, x: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("periodized Bernoulli functions start at n = 1".into()));
    }
    bernoulli_poly(n, x - x.floor())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        assert_eq!(bernoulli_number(0).unwrap(), 1.0);
        assert_eq!(bernoulli_number(1).unwrap(), -0.5);
        assert_eq!(bernoulli_number(2).unwrap(), 1.0 / 6.0);
        assert_eq!(bernoulli_number(3).unwrap(), 0.0);
        assert_eq!(bernoulli_number(12).unwrap(), -691.0 / 2730.0);
    }

    #[test]
    fn odd_numbers_vanish() {
        for k in 1..60 {
            assert_eq!(bernoulli_number(2 * k + 1).unwrap(), 0.0);
        }
    }

    #[test]
    fn capacity_is_enforced() {
        assert!(matches!(
            bernoulli_number(BERNOULLI_CAPACITY),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn polynomial_low_degree() {
        for &x in &[-1.3, 0.0, 0.25, 0.7, 2.0] {
            assert!((bernoulli_poly(1, x).unwrap() - (x - 0.5)).abs() < 1e-15);
            assert!((bernoulli_poly(2, x).unwrap() - (x * x - x + 1.0 / 6.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn periodized_examples() {
        assert!((periodized_bernoulli(1, 0.25).unwrap() + 0.25).abs() < 1e-16);
        let x = 0.37;
        assert!(
            (periodized_bernoulli(1, x + 1.0).unwrap() - periodized_bernoulli(1, x).unwrap()).abs()
                < 1e-15
        );
        assert!((periodized_bernoulli(2, -0.25).unwrap() - bernoulli_poly(2, 0.75).unwrap()).abs() < 1e-15);
    }
}
