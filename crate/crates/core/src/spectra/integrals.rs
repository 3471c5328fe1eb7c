//! The radial integrals behind both singular-value formulas.
//!
//! With `h(r) = ∫₀ʳ t^β(1−t)^α dt` and `h₁ = h(1)`:
//!
//! * `I_n = ∫₀¹ (h/h₁) r^{β+n−1}(1−r)^α dr`
//! * `J_n = ∫₀¹ (h/h₁)² r^{β+n−1}(1−r)^α dr`
//! * `M_{u_p}(η) = ∫₀¹ (h₁ − h)^p r^{η−1} dr`
//!
//! The series routes rest on the moment
//! `A(m) = ∫₀¹ h(r) r^{m−1}(1−r)^α dr
//!       = B(α+1, m+β+1)/(β+1) · ₃F₂(−α, β+1, m+β+1; β+2, m+α+β+2; 1)`,
//! so that `I_n = A(β+n)/h₁`. Expanding `(1−t)^α` inside `h` gives
//! `J_n = h₁⁻² Σ_k (−α)_k / (k! (β+1+k)) · A(2β+n+k+1)`, and the successive
//! moments obey `(m+α+1) A(m+1) = m A(m) + B(m+β+1, 2α+2)`.

use serde::{Deserialize, Serialize};

use super::Settings;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::quadrature::{integrate_unit_interval_complement, IntegralResult};
use crate::specfun::series::AlgebraicTail;
use crate::specfun::{beta_fn, hyp_3f2_unit, IncompleteBetaH, SeriesEval};

const MAX_OUTER_TERMS: usize = 1 << 22;

/// How `I_n` and `J_n` are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Quadrature,
    Series,
}

/// `h(1) = B(β+1, α+1)`.
pub fn h_total(params: &Params) -> f64 {
    IncompleteBetaH::new(params)
        .expect("valid Params give positive beta arguments")
        .total()
}

fn from_series(s: SeriesEval<f64>, scale: f64) -> IntegralResult {
    IntegralResult {
        value: s.value * scale,
        error_est: s.abs_error_est * scale.abs(),
        evaluations: s.terms_used,
        converged: s.converged,
    }
}

/// `ln r` from the pair `(r, 1 − r)`. Near `r = 1` the rounded `r` would
/// cost `n·ε` in `r^n`; the exact complement does not.
#[inline]
fn ln_r(r: f64, rc: f64) -> f64 {
    if r < 0.5 {
        r.ln()
    } else {
        (-rc).ln_1p()
    }
}

/// `∫₀¹ (h/h₁)^power r^{β+n−1}(1−r)^α dr` by tanh-sinh.
fn power_moment_quad(power: i32, n: u64, params: &Params, settings: &Settings) -> Result<IntegralResult> {
    let h = IncompleteBetaH::new(params)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let exponent = beta + n as f64 - 1.0;
    integrate_unit_interval_complement(
        |r, rc| {
            let ratio = h.value_with_complement(r, rc).map_or(f64::NAN, |v| v / h.total());
            if ratio == 0.0 {
                return 0.0;
            }
            // Combined in log space: near r = 0 the factors r^{β+n−1} and
            // ratio^power ~ r^{power(β+1)} overflow and underflow separately.
            (power as f64 * ratio.ln() + exponent * ln_r(r, rc) + alpha * rc.ln()).exp()
        },
        &settings.quadrature,
    )
}

fn check_i_n(n: u64, params: &Params) -> Result<()> {
    if 2.0 * params.beta() + n as f64 + 1.0 <= 0.0 {
        return Err(Error::domain(
            "compute_I_n",
            format!("n = {n} needs 2 beta + n + 1 > 0 for an integrable integrand"),
        ));
    }
    Ok(())
}

/// `A(m)` through its ₃F₂ representation.
fn moment_hyp(m: f64, params: &Params, tol: f64) -> Result<IntegralResult> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let prefactor = beta_fn(alpha + 1.0, m + beta + 1.0)? / (beta + 1.0);
    let f = hyp_3f2_unit(-alpha, beta + 1.0, m + beta + 1.0, beta + 2.0, m + alpha + beta + 2.0, tol)?;
    Ok(from_series(f, prefactor))
}

/// `I_n`.
pub fn compute_i_n(n: u64, params: &Params, route: Route) -> Result<IntegralResult> {
    compute_i_n_with(n, params, route, &Settings::default())
}

pub fn compute_i_n_with(n: u64, params: &Params, route: Route, settings: &Settings) -> Result<IntegralResult> {
    check_i_n(n, params)?;
    match route {
        Route::Quadrature => power_moment_quad(1, n, params, settings),
        Route::Series => {
            let a = moment_hyp(params.beta() + n as f64, params, settings.series_tol)?;
            let h1 = h_total(params);
            Ok(IntegralResult {
                value: a.value / h1,
                error_est: a.error_est / h1,
                ..a
            })
        }
    }
}

/// `J_n`.
pub fn compute_j_n(n: u64, params: &Params, route: Route) -> Result<IntegralResult> {
    compute_j_n_with(n, params, route, &Settings::default())
}

pub fn compute_j_n_with(n: u64, params: &Params, route: Route, settings: &Settings) -> Result<IntegralResult> {
    if n == 0 {
        params.check_j0()?;
    }
    match route {
        Route::Quadrature => power_moment_quad(2, n, params, settings),
        Route::Series => j_n_series(n, params, settings),
    }
}

const J_SERIES_REL_FLOOR: f64 = 1e-13;

fn j_n_series(n: u64, params: &Params, settings: &Settings) -> Result<IntegralResult> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let h1 = h_total(params);
    let m0 = 2.0 * beta + n as f64 + 1.0;
    let first = moment_hyp(m0, params, settings.series_tol * 0.1)?;
    // B(m+β+1, 2α+2) for the moment recurrence, advanced by
    // B(x+1, y) = B(x, y) x / (x+y).
    let y = 2.0 * alpha + 2.0;
    let mut b = beta_fn(m0 + beta + 1.0, y)?;
    let mut moment = first.value;
    let mut coeff = 1.0 / (beta + 1.0);
    let mut k = 0u64;

    let terms = std::iter::from_fn(|| {
        let kf = k as f64;
        let term = coeff * moment;
        let m = m0 + kf;
        moment = (m * moment + b) / (m + alpha + 1.0);
        let x = m + beta + 1.0;
        b *= x / (x + y);
        coeff *= (kf - alpha) / (kf + 1.0) * (beta + 1.0 + kf) / (beta + 2.0 + kf);
        k += 1;
        Some(term)
    });
    let engine = AlgebraicTail {
        families: vec![2.0 * alpha + 2.0, 3.0 * alpha + 3.0],
        first_checkpoint: 32 + 4 * (m0.abs() + alpha.abs()).ceil() as usize,
        max_terms: MAX_OUTER_TERMS,
        // Relative to the leading term, which sets the scale of J_n. The
        // extrapolated tail cannot resolve much below 1e-13 of it.
        tol: settings.series_tol.max(J_SERIES_REL_FLOOR) * (first.value / (beta + 1.0)).abs(),
    };
    let outer = engine.sum(terms);
    // The first moment's error propagates through the recurrence with
    // factors m/(m+α+1) < 1 and enters each term with weight |coeff|.
    let propagated = first.error_est * 2.0 / (beta + 1.0);
    let scale = 1.0 / (h1 * h1);
    Ok(IntegralResult {
        value: outer.value * scale,
        error_est: (outer.abs_error_est + propagated) * scale,
        evaluations: outer.terms_used + first.evaluations,
        converged: outer.converged && first.converged,
    })
}

/// `M_{u_p}(η) = ∫₀¹ (h(1) − h(r))^p r^{η−1} dr`.
pub fn mellin_u_p(eta: f64, p: f64, params: &Params) -> Result<IntegralResult> {
    mellin_u_p_with(eta, p, params, &Settings::default())
}

pub fn mellin_u_p_with(eta: f64, p: f64, params: &Params, settings: &Settings) -> Result<IntegralResult> {
    if !(eta > 0.0) || !(p > 0.0) {
        return Err(Error::domain("mellin_u_p", format!("eta = {eta} and p = {p} must be positive")));
    }
    let h = IncompleteBetaH::new(params)?;
    integrate_unit_interval_complement(
        |r, rc| h.complement_with(r, rc).map_or(f64::NAN, |u| u.powf(p)) * ((eta - 1.0) * ln_r(r, rc)).exp(),
        &settings.quadrature,
    )
}

/// `∫₀¹ (h₁ − h)^power r^{β+n−1}(1−r)^α dr` by quadrature, free of the
/// cancellation in `B − 2I + J`.
pub(crate) fn complement_moment_quad(power: i32, n: u64, params: &Params, settings: &Settings) -> Result<IntegralResult> {
    let h = IncompleteBetaH::new(params)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let exponent = beta + n as f64 - 1.0;
    integrate_unit_interval_complement(
        |r, rc| {
            h.complement_with(r, rc).map_or(f64::NAN, |u| u.powi(power)) * (exponent * ln_r(r, rc) + alpha * rc.ln()).exp()
        },
        &settings.quadrature,
    )
}

/// `∫₀¹ (h₁ − h)^power r^{β+n−1}(1−r)^α dr` for `power ∈ {1, 2}` by
/// expanding `h₁ − h(r) = Σ_k a_k (1−r)^{α+1+k}`, `a_k = (−β)_k/(k!(α+1+k))`.
/// All terms are non-negative.
pub(crate) fn complement_moment_series(power: u32, n: u64, params: &Params, tol_rel: f64) -> Result<IntegralResult> {
    let (alpha, beta) = (params.alpha(), params.beta());
    assert!(power == 1 || power == 2, "complement_moment_series: power must be 1 or 2");
    let x = beta + n as f64;
    if !(x > 0.0) {
        return Err(Error::domain("complement_moment_series", format!("beta + n = {x} must be positive")));
    }
    // Coefficients a_k are generated lazily; the Cauchy square needs all of
    // them up to the current index.
    let mut a: Vec<f64> = Vec::new();
    let mut poch = 1.0; // (−β)_k / k!
    let mut next_a = |a: &mut Vec<f64>| {
        let k = a.len() as f64;
        a.push(poch / (alpha + 1.0 + k));
        poch *= (k - beta) / (k + 1.0);
    };
    let y0 = power as f64 * (alpha + 1.0) + alpha + 1.0;
    let mut b = beta_fn(x, y0)?;
    let mut m = 0usize;
    let leading = {
        next_a(&mut a);
        if power == 1 {
            a[0]
        } else {
            a[0] * a[0]
        }
    } * b;
    let tol = tol_rel * leading;
    let terms = std::iter::from_fn(|| {
        while a.len() <= m {
            next_a(&mut a);
        }
        let coeff = if power == 1 {
            a[m]
        } else {
            (0..=m).map(|j| a[j] * a[m - j]).sum()
        };
        let term = coeff * b;
        let y = y0 + m as f64;
        b *= y / (x + y);
        m += 1;
        Some(term)
    });
    // a_k ~ k^{−β−2} and B(x, y0+k) ~ k^{−x}; the Cauchy square adds a
    // k^{−2β−3} component.
    let families = if power == 1 {
        vec![x + beta + 1.0]
    } else {
        vec![x + beta + 1.0, x + 2.0 * beta + 2.0]
    };
    let engine = AlgebraicTail {
        families,
        first_checkpoint: 16,
        max_terms: if power == 1 { MAX_OUTER_TERMS } else { 1 << 14 },
        tol,
    };
    Ok(from_series(engine.sum(terms), 1.0))
}
