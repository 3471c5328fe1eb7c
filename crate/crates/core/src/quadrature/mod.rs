//! Deterministic numerical integration.
//!
//! [`integrate_unit_interval`] is a level-doubling tanh-sinh rule on `(0, 1)`
//! that tolerates algebraic endpoint singularities at both ends. Integrands
//! that lose accuracy near `x = 1` can use
//! [`integrate_unit_interval_complement`], which also receives `1 − x`
//! computed without rounding.
//!
//! [`integrate_disc`] integrates against `μ_{α,β}` on the unit disc,
//! allowing a `1/|w − z|` singularity at one interior point.

mod disc;
mod tanh_sinh;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use disc::{integrate_disc, local_disc_radius};
pub use tanh_sinh::{integrate_interval, integrate_unit_interval, integrate_unit_interval_complement};

/// Tolerances and refinement cap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of step halvings, starting from step 1.
    pub max_level: u32,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_level: u32) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_level,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(self.rel_tol) || !in_unit(self.abs_tol) {
            return Err(Error::domain(
                "QuadratureSpec",
                format!("tolerances ({}, {}) must lie in (0, 1)", self.rel_tol, self.abs_tol),
            ));
        }
        if self.max_level < 3 {
            return Err(Error::domain(
                "QuadratureSpec",
                format!("max_level = {} must be at least 3", self.max_level),
            ));
        }
        Ok(())
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            max_level: self.max_level,
        }
    }

    pub(crate) fn accepts(&self, error_est: f64, magnitude: f64) -> bool {
        error_est <= self.abs_tol.max(self.rel_tol * magnitude)
    }
}

impl Default for QuadratureSpec {
    /// Tight enough for the 1-D radial integrals behind every singular value.
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            max_level: 10,
        }
    }
}

/// Value, error estimate and cost of one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralResult<T = f64> {
    pub value: T,
    pub error_est: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T> IntegralResult<T> {
    /// Turns a non-converged result into [`Error::NotConverged`].
    pub fn require_converged(self, what: &'static str) -> Result<Self>
    where
        T: QuadValue,
    {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                what,
                value: self.value.magnitude(),
                error_est: self.error_est,
            })
        }
    }
}

/// Scalars the integrators can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
