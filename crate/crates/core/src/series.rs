//! Truncated complex Taylor series.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients of `z^0 .. z^N`.
//! Binary operations on series of different orders truncate to the smaller
//! order, so every result is exact modulo `z^(N+1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<Complex64>,
}

impl TruncSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients beyond `order`.
    pub fn new(coeffs: impl IntoIterator<Item = Complex64>, order: usize) -> Self {
        let mut coeffs: Vec<Complex64> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, ZERO);
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new([], order)
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        Self::new([c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// The identity function `z`.
    pub fn z(order: usize) -> Self {
        Self::new([ZERO, ONE], order)
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().copied(), order)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// Coefficientwise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b),
            order,
        )
    }

    /// Multiplication by `z`; the top coefficient falls off.
    pub fn shift_up(&self) -> Self {
        Self::new(
            std::iter::once(ZERO).chain(self.coeffs.iter().copied()),
            self.order(),
        )
    }

    /// Division by `z`. The constant term must vanish; the new top
    /// coefficient is unknown and set to zero, so callers needing exactness
    /// at order `N` must work at order `N + 1`.
    pub fn shift_down(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 != ZERO {
            return Err(Error::NonVanishingInner(c0.norm()));
        }
        Ok(Self::new(self.coeffs[1..].iter().copied(), self.order()))
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| {
            (0..=k)
                .map(|i| self.coeffs[i] * other.coeffs[k - i])
                .sum::<Complex64>()
        });
        Self::new(coeffs, order)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.div_with(other, &Tolerances::default())
    }

    pub fn div_with(&self, other: &Self, tol: &Tolerances) -> Result<Self> {
        let lead = other.coeffs[0];
        if lead.norm() <= tol.unit {
            return Err(Error::DivisionByNonUnit(lead.norm()));
        }
        let order = self.order().min(other.order());
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let acc = (1..=k).fold(self.coeffs[k], |acc, i| acc - other.coeffs[i] * out[k - i]);
            out.push(acc / lead);
        }
        Ok(Self { coeffs: out })
    }

    /// `outer(inner(z))` by Horner evaluation over series; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if c0 != ZERO {
            return Err(Error::NonVanishingInner(c0.norm()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        let mut acc = Self::constant(self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Term-by-term derivative, re-padded to the same order.
    pub fn derivative(&self) -> Self {
        let order = self.order();
        Self::new(
            (1..=order).map(|k| self.coeffs[k] * k as f64),
            order,
        )
    }

    /// Evaluates the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Largest coefficientwise distance to `other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, rhs: Self) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b), order)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, rhs: Self) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b), order)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        self.scale_real(-1.0)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, rhs: Self) -> TruncSeries {
        TruncSeries::mul(self, rhs)
    }
}
