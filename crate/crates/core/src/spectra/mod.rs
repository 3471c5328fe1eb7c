//! Singular values of `T = C·P` and `R = P·C·P`.
//!
//! For `n ≥ 1`
//!
//! ```text
//! s_n(T)² = Γ(α+β+2+n) / (Γ(α+1) Γ(β+1+n)) · (B(α+1, β+n) − 2 I_n + J_n)
//! s_n(R)  = Γ(α+β+2+n) / (Γ(α+1) Γ(β+1+n)) · sqrt((α+β+2+n)/(β+1+n))
//!           · (B(α+1, β+n+1) − I_{n+1})
//! ```
//!
//! and `s_0(T)² = J_0 / B(α+1, β+1)`; the `R` formula holds at `n = 0` too.
//! Both are evaluated with `I_n`, `J_n` from quadrature or from series, and
//! cross-checked against the Mellin-transform forms
//!
//! ```text
//! s_{n+1}(T)² = n (α+β+2)_{n+1} / (3 h₁³ (β+1)_{n+1}) · M_{u₃}(n)
//! s_n(R)      = n / (2 h₁²) · sqrt((α+β+2)_n (α+β+2)_{n+1} / ((β+1)_n (β+1)_{n+1})) · M_{u₂}(n)
//! ```
//!
//! Both sequences decay like `c / n^{α+1}`; see [`asymptotic_constants`].

mod integrals;
mod singular;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quadrature::QuadratureSpec;
use crate::specfun::DEFAULT_SERIES_TOL;

pub use integrals::{
    compute_i_n, compute_i_n_with, compute_j_n, compute_j_n_with, h_total, mellin_u_p, mellin_u_p_with, Route,
};
pub use singular::{
    asymptotic_constants, d_n_coefficient, norm_phi_q, schatten_partial_sum, singular_value_r,
    singular_value_r_formula, singular_value_r_with, singular_value_t, singular_value_t_formula,
    singular_value_t_with, Formula,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    T,
    R,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::T => "T",
            Operator::R => "R",
        })
    }
}

impl FromStr for Operator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "T" | "t" => Ok(Operator::T),
            "R" | "r" => Ok(Operator::R),
            _ => Err(format!("unknown operator '{s}' (expected T or R)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadrature,
    Hypergeometric,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Quadrature, Method::Hypergeometric, Method::Asymptotic];

    pub fn name(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Hypergeometric => "hypergeometric",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method '{s}' (expected quadrature, hypergeometric or asymptotic)"))
    }
}

/// One singular value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularValueRecord {
    pub operator: Operator,
    pub n: u64,
    pub value: f64,
    pub method: Method,
    pub error_est: f64,
    /// `error_est ≤ rel_tol · value` for the requested `rel_tol`.
    pub converged: bool,
}

/// Limits of `n^{α+1} s_n` for both operators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    pub c_t: f64,
    pub c_r: f64,
}

impl AsymptoticConstants {
    pub fn get(&self, operator: Operator) -> f64 {
        match operator {
            Operator::T => self.c_t,
            Operator::R => self.c_r,
        }
    }
}

/// Numerical knobs shared by every computation in this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub quadrature: QuadratureSpec,
    /// Absolute tolerance for normalized series (values of order one).
    pub series_tol: f64,
    /// Relative accuracy a singular value must reach to count as converged.
    pub rel_tol: f64,
}

impl Settings {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            series_tol: DEFAULT_SERIES_TOL,
            rel_tol: 1e-8,
        }
    }
}
