//! Quadrature-indexed value pairs.
//!
//! Every second-moment quantity in the protocol (variances, gains,
//! covariances, information rates) comes in an amplitude/phase pair.
//! `QuadPair` carries the two components and the elementwise algebra
//! they share. Variances are dimensionless multiples of the shot noise:
//! a vacuum mode has variance 1 in both quadratures.

use std::fmt;
use std::ops::{Add, Mul, Sub};

/// An (amplitude, phase) pair of real values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadPair {
    /// Amplitude-quadrature component.
    pub plus: f64,
    /// Phase-quadrature component.
    pub minus: f64,
}

impl QuadPair {
    pub const fn new(plus: f64, minus: f64) -> Self {
        Self { plus, minus }
    }

    /// Same value in both quadratures.
    pub const fn symmetric(value: f64) -> Self {
        Self {
            plus: value,
            minus: value,
        }
    }

    pub const ZERO: Self = Self::symmetric(0.0);

    /// Shot-noise variance of a vacuum mode.
    pub const VACUUM: Self = Self::symmetric(1.0);

    pub fn is_finite(&self) -> bool {
        self.plus.is_finite() && self.minus.is_finite()
    }

    /// Both components strictly positive (a valid variance pair).
    pub fn is_positive(&self) -> bool {
        self.plus > 0.0 && self.minus > 0.0
    }

    pub fn is_non_negative(&self) -> bool {
        self.plus >= 0.0 && self.minus >= 0.0
    }

    /// plus * minus, the uncertainty product for variance pairs.
    pub fn product(&self) -> f64 {
        self.plus * self.minus
    }

    /// Swap the quadrature roles (used for conjugate-quadrature pairings).
    pub fn swapped(self) -> Self {
        Self {
            plus: self.minus,
            minus: self.plus,
        }
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            plus: f(self.plus),
            minus: f(self.minus),
        }
    }

    pub fn zip(self, other: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            plus: f(self.plus, other.plus),
            minus: f(self.minus, other.minus),
        }
    }
}

impl Add for QuadPair {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.plus + rhs.plus, self.minus + rhs.minus)
    }
}

impl Sub for QuadPair {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.plus - rhs.plus, self.minus - rhs.minus)
    }
}

impl Mul<f64> for QuadPair {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.plus * rhs, self.minus * rhs)
    }
}

impl fmt::Display for QuadPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(+: {}, -: {})", self.plus, self.minus)
    }
}
