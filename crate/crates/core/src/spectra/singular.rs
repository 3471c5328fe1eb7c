use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integrals::{
    compute_i_n_with, compute_j_n_with, complement_moment_quad, complement_moment_series, h_total, mellin_u_p_with,
};
use super::{AsymptoticConstants, Method, Operator, Route, Settings, SingularValueRecord};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::quadrature::IntegralResult;
use crate::specfun::series::KahanSum;
use crate::specfun::{beta_fn, ln_beta, log_gamma, pochhammer_ratio};

/// Above this `n` the difference formulas are never attempted.
const LARGE_N: u64 = 200;
/// Relative size of the bracket `B − 2I + J` (or `B − I`) below which the
/// difference formula is abandoned for a cancellation-free one: at most
/// three of the sixteen digits are given up to the subtraction.
const CANCELLATION: f64 = 1e-3;

/// Which closed form produces a singular value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// The bracket `B − 2I + J` (for `R`: `B − I`) with `I`, `J` from the
    /// given route.
    Difference(Route),
    /// The Mellin transform `M_{u₃}` (for `R`: `M_{u₂}`) by quadrature.
    Mellin,
    /// `(h₁ − h)²` (for `R`: `h₁ − h`) integrated against
    /// `r^{β+n−1}(1−r)^α` directly, by quadrature or by series.
    Complement(Route),
}

/// `(α+β+2)_n / (β+1)_n`.
fn pochhammer_weight(n: u64, params: &Params) -> Result<f64> {
    let (alpha, beta) = (params.alpha(), params.beta());
    pochhammer_ratio(alpha + beta + 2.0, beta + 1.0, n)
}

fn sqrt_result(operator: &'static str, n: u64, square: IntegralResult) -> Result<IntegralResult> {
    if !(square.value > 0.0) {
        return Err(Error::NegativeRadicand {
            operator,
            n,
            value: square.value,
        });
    }
    let value = square.value.sqrt();
    Ok(IntegralResult {
        value,
        error_est: square.error_est / (2.0 * value),
        ..square
    })
}

fn scaled(r: IntegralResult, factor: f64) -> IntegralResult {
    IntegralResult {
        value: r.value * factor,
        error_est: r.error_est * factor.abs(),
        ..r
    }
}

/// `s_n(T)²` by the difference formula, with the size of the bracket
/// relative to `B(α+1, β+n)`.
fn t_squared_difference(n: u64, params: &Params, route: Route, settings: &Settings) -> Result<(IntegralResult, f64)> {
    let h1 = h_total(params);
    let j = compute_j_n_with(n, params, route, settings)?;
    if n == 0 {
        return Ok((scaled(j, 1.0 / h1), 1.0));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let b = beta_fn(alpha + 1.0, beta + n as f64)?;
    let i = compute_i_n_with(n, params, route, settings)?;
    let bracket = b - 2.0 * i.value + j.value;
    let err = 2.0 * i.error_est + j.error_est + 4.0 * f64::EPSILON * b;
    let factor = pochhammer_weight(n, params)? / h1;
    let square = IntegralResult {
        value: bracket * factor,
        error_est: err * factor,
        evaluations: i.evaluations + j.evaluations,
        converged: i.converged && j.converged,
    };
    Ok((square, bracket.abs() / b))
}

fn t_squared(n: u64, params: &Params, formula: Formula, settings: &Settings) -> Result<IntegralResult> {
    let h1 = h_total(params);
    match formula {
        Formula::Difference(route) => Ok(t_squared_difference(n, params, route, settings)?.0),
        Formula::Mellin => {
            if n < 2 {
                return Err(Error::Unsupported(format!(
                    "the Mellin form of s_n(T) starts at n = 2 (got n = {n})"
                )));
            }
            let m = mellin_u_p_with((n - 1) as f64, 3.0, params, settings)?;
            let factor = (n - 1) as f64 * pochhammer_weight(n, params)? / (3.0 * h1.powi(3));
            Ok(scaled(m, factor))
        }
        Formula::Complement(route) => {
            if n == 0 {
                return Ok(t_squared_difference(0, params, route, settings)?.0);
            }
            let x = match route {
                Route::Quadrature => complement_moment_quad(2, n, params, settings)?,
                Route::Series => complement_moment_series(2, n, params, settings.series_tol)?,
            };
            Ok(scaled(x, pochhammer_weight(n, params)? / h1.powi(3)))
        }
    }
}

/// `s_n(T)` by an explicitly chosen formula, without any route switching.
pub fn singular_value_t_formula(n: u64, params: &Params, formula: Formula, settings: &Settings) -> Result<IntegralResult> {
    sqrt_result("T", n, t_squared(n, params, formula, settings)?)
}

/// `sqrt((α+β+2+n)/(β+1+n)) (α+β+2)_n / ((β+1)_n h₁)`, the prefactor of
/// `B − I_{n+1}` in `s_n(R)`.
fn r_factor(n: u64, params: &Params) -> Result<f64> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let nf = n as f64;
    Ok(((alpha + beta + 2.0 + nf) / (beta + 1.0 + nf)).sqrt() * pochhammer_weight(n, params)? / h_total(params))
}

fn r_difference(n: u64, params: &Params, route: Route, settings: &Settings) -> Result<(IntegralResult, f64)> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let b = beta_fn(alpha + 1.0, beta + n as f64 + 1.0)?;
    let i = compute_i_n_with(n + 1, params, route, settings)?;
    let bracket = b - i.value;
    let factor = r_factor(n, params)?;
    let value = IntegralResult {
        value: bracket * factor,
        error_est: (i.error_est + 2.0 * f64::EPSILON * b) * factor,
        ..i
    };
    Ok((value, bracket.abs() / b))
}

/// `s_n(R)` by an explicitly chosen formula, without any route switching.
pub fn singular_value_r_formula(n: u64, params: &Params, formula: Formula, settings: &Settings) -> Result<IntegralResult> {
    let h1 = h_total(params);
    let r = match formula {
        Formula::Difference(route) => r_difference(n, params, route, settings)?.0,
        Formula::Mellin => {
            if n == 0 {
                return Err(Error::Unsupported("the Mellin form of s_n(R) starts at n = 1".into()));
            }
            let m = mellin_u_p_with(n as f64, 2.0, params, settings)?;
            let weights = pochhammer_weight(n, params)? * pochhammer_weight(n + 1, params)?;
            scaled(m, n as f64 / (2.0 * h1 * h1) * weights.sqrt())
        }
        Formula::Complement(route) => {
            let x = match route {
                Route::Quadrature => complement_moment_quad(1, n + 1, params, settings)?,
                Route::Series => complement_moment_series(1, n + 1, params, settings.series_tol)?,
            };
            scaled(x, r_factor(n, params)? / h1)
        }
    };
    if !(r.value > 0.0) {
        return Err(Error::NegativeRadicand {
            operator: "R",
            n,
            value: r.value,
        });
    }
    Ok(r)
}

fn record(operator: Operator, n: u64, method: Method, r: IntegralResult, settings: &Settings) -> SingularValueRecord {
    SingularValueRecord {
        operator,
        n,
        value: r.value,
        method,
        error_est: r.error_est,
        // An inner series may stop short of its own (much tighter) target
        // and still certify the requested accuracy.
        converged: r.error_est <= settings.rel_tol * r.value,
    }
}

fn asymptotic_record(operator: Operator, n: u64, params: &Params) -> Result<SingularValueRecord> {
    if n == 0 {
        return Err(Error::domain("asymptotic approximant", "n = 0 has no approximant c / n^(alpha+1)"));
    }
    let c = asymptotic_constants(params)?.get(operator);
    let value = c * (-(params.alpha() + 1.0) * (n as f64).ln()).exp();
    Ok(SingularValueRecord {
        operator,
        n,
        value,
        method: Method::Asymptotic,
        error_est: 4.0 * f64::EPSILON * value,
        converged: true,
    })
}

/// `s_n(T)` with default settings.
pub fn singular_value_t(n: u64, params: &Params, method: Method) -> Result<SingularValueRecord> {
    singular_value_t_with(n, params, method, &Settings::default())
}

/// `s_n(T)` by `method`. The difference formula is used unless `n` is large
/// or the bracket `B − 2I + J` has cancelled below [`CANCELLATION`]; then
/// quadrature falls back to the Mellin form and series to the complement
/// expansion.
pub fn singular_value_t_with(n: u64, params: &Params, method: Method, settings: &Settings) -> Result<SingularValueRecord> {
    let (route, fallback) = match method {
        Method::Asymptotic => return asymptotic_record(Operator::T, n, params),
        Method::Quadrature => (Route::Quadrature, Formula::Mellin),
        Method::Hypergeometric => (Route::Series, Formula::Complement(Route::Series)),
    };
    let r = if n > LARGE_N {
        singular_value_t_formula(n, params, fallback, settings)?
    } else {
        let (square, ratio) = t_squared_difference(n, params, route, settings)?;
        if n >= 2 && ratio < CANCELLATION {
            singular_value_t_formula(n, params, fallback, settings)?
        } else {
            sqrt_result("T", n, square)?
        }
    };
    Ok(record(Operator::T, n, method, r, settings))
}

/// `s_n(R)` with default settings.
pub fn singular_value_r(n: u64, params: &Params, method: Method) -> Result<SingularValueRecord> {
    singular_value_r_with(n, params, method, &Settings::default())
}

/// `s_n(R)` by `method`, switching formulas as in [`singular_value_t_with`].
pub fn singular_value_r_with(n: u64, params: &Params, method: Method, settings: &Settings) -> Result<SingularValueRecord> {
    let (route, fallback) = match method {
        Method::Asymptotic => return asymptotic_record(Operator::R, n, params),
        Method::Quadrature => (Route::Quadrature, Formula::Mellin),
        Method::Hypergeometric => (Route::Series, Formula::Complement(Route::Series)),
    };
    let r = if n > LARGE_N {
        singular_value_r_formula(n, params, fallback, settings)?
    } else {
        let (value, ratio) = r_difference(n, params, route, settings)?;
        if n >= 1 && ratio < CANCELLATION {
            singular_value_r_formula(n, params, fallback, settings)?
        } else if !(value.value > 0.0) {
            return Err(Error::NegativeRadicand {
                operator: "R",
                n,
                value: value.value,
            });
        } else {
            value
        }
    };
    Ok(record(Operator::R, n, method, r, settings))
}

/// `d_n = s_n(T) / sqrt((α+β+2)_n / (β+1)_n)`, computed from its defining
/// integral by quadrature.
pub fn d_n_coefficient(n: u64, params: &Params) -> Result<f64> {
    let settings = Settings::default();
    let h1 = h_total(params);
    let integral = if n == 0 {
        scaled(compute_j_n_with(0, params, Route::Quadrature, &settings)?, h1 * h1)
    } else {
        complement_moment_quad(2, n, params, &settings)?
    };
    let integral = integral.require_converged("d_n_coefficient")?;
    Ok((integral.value / h1.powi(3)).sqrt())
}

/// `c_T` and `c_R`, evaluated in log space.
pub fn asymptotic_constants(params: &Params) -> Result<AsymptoticConstants> {
    let a = params.alpha();
    let ln_b = ln_beta(a + 1.0, params.beta() + 1.0)?;
    let ln_c_t = 0.5 * (log_gamma(3.0 * a + 3.0)? - log_gamma(a + 1.0)?) - (a + 1.0).ln() - ln_b;
    let ln_c_r = log_gamma(2.0 * a + 2.0)? - log_gamma(a + 2.0)? - ln_b;
    Ok(AsymptoticConstants {
        c_t: ln_c_t.exp(),
        c_r: ln_c_r.exp(),
    })
}

/// `Σ_{n ∈ range} s_n^p`, with the singular values from the series routes
/// evaluated in parallel and summed in index order.
pub fn schatten_partial_sum(p: f64, range: RangeInclusive<u64>, operator: Operator, params: &Params) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::domain("schatten_partial_sum", format!("p = {p} must be positive")));
    }
    if range.is_empty() {
        return Err(Error::domain("schatten_partial_sum", "empty index range"));
    }
    let settings = Settings::default();
    let values: Vec<f64> = range
        .into_par_iter()
        .map(|n| {
            let rec = match operator {
                Operator::T => singular_value_t_with(n, params, Method::Hypergeometric, &settings)?,
                Operator::R => singular_value_r_with(n, params, Method::Hypergeometric, &settings)?,
            };
            if !rec.converged {
                return Err(Error::NotConverged {
                    what: "schatten_partial_sum",
                    value: rec.value,
                    error_est: rec.error_est,
                });
            }
            Ok(rec.value.powf(p))
        })
        .collect::<Result<_>>()?;
    let mut sum = KahanSum::default();
    for v in values {
        sum.add(v);
    }
    Ok(sum.value())
}

/// `‖φ‖_q` for `φ(ξ) = 1/ξ`:
/// `(∫ |ξ|^{−q} dμ(ξ))^{1/q} = (B(α+1, β+1−q/2) / B(α+1, β+1))^{1/q}`,
/// finite exactly when `q < 2(β+1)`. Arguments below `1e-6` are rejected.
pub fn norm_phi_q(q: f64, params: &Params) -> Result<f64> {
    let (alpha, beta) = (params.alpha(), params.beta());
    if !(q >= 1e-6 && q < 2.0 * (beta + 1.0)) {
        return Err(Error::domain(
            "norm_phi_q",
            format!("q = {q} outside [1e-6, 2(beta+1)) = [1e-6, {})", 2.0 * (beta + 1.0)),
        ));
    }
    let ln_ratio = ln_beta(alpha + 1.0, beta + 1.0 - q / 2.0)? - ln_beta(alpha + 1.0, beta + 1.0)?;
    Ok((ln_ratio / q).exp())
}
