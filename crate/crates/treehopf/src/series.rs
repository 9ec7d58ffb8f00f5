//! Truncated formal power series with exact integer coefficients, and
//! the product-form identity for the tree counting series.

use num::traits::{One, Zero};
use num::BigInt;

use crate::enumeration::{binomial, cayley_counts};

/// A power series truncated at a fixed order: `coeffs[i]` is the
/// coefficient of `z^i`, kept exactly modulo `z^(order+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> &BigInt {
        &self.coeffs[power]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The monomial z.
    pub fn z(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigInt::one();
        }
        s
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

/// `(1 - z^n)^(-r)` truncated: the coefficient of `z^(nk)` is
/// `C(r + k - 1, k)`, via `C(r+k-1, k) = (-1)^k C(-r, k)`.
pub fn reciprocal_power(n: usize, r: &BigInt, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let mut k = 0;
    while n * k <= order {
        let c = if k == 0 {
            BigInt::one()
        } else {
            binomial(&(r + BigInt::from(k) - BigInt::one()), k)
        };
        s.coeffs[n * k] = c;
        k += 1;
    }
    s
}

/// Outcome of comparing the counting series with its product form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesCheck {
    pub ok: bool,
    /// `(power, lhs, rhs)` of the first differing coefficient.
    pub first_mismatch: Option<(usize, BigInt, BigInt)>,
}

/// Compare `T(z) = Σ t_n z^n` (from the counting recurrence, with
/// `t_n` the number of M-labeled rooted trees with n nodes) against
/// `z · Π_{n=1}^{N} (1 - z^n)^(-M t_n)` modulo `z^(N+1)`.
pub fn cayley_series_report(m: u32, order: usize) -> SeriesCheck {
    assert!(order >= 1);
    let counts = cayley_counts(m, order);
    // t_n = counts[n-1] (degree-indexed table).
    let mut lhs = TruncatedSeries::zero(order);
    lhs.coeffs[1..=order].clone_from_slice(&counts[..order]);
    let mut rhs = TruncatedSeries::z(order);
    for n in 1..=order {
        let exponent = BigInt::from(m) * &counts[n - 1];
        rhs = rhs.mul(&reciprocal_power(n, &exponent, order));
    }
    for power in 0..=order {
        if lhs.coeff(power) != rhs.coeff(power) {
            return SeriesCheck {
                ok: false,
                first_mismatch: Some((power, lhs.coeff(power).clone(), rhs.coeff(power).clone())),
            };
        }
    }
    SeriesCheck {
        ok: true,
        first_mismatch: None,
    }
}

pub fn cayley_series_check(m: u32, order: usize) -> bool {
    cayley_series_report(m, order).ok
}
