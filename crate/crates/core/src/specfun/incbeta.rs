//! The incomplete beta integral `h(r) = ∫₀ʳ t^β (1−t)^α dt`.

use super::gamma::{beta_fn, ln_beta};
use crate::error::{Error, Result};
use crate::params::Params;

const CF_MAX_ITER: usize = 500;
const CF_EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
/// Below this argument the power series is used instead of the continued fraction.
const SERIES_CUTOFF: f64 = 0.1;

/// `I_x(a, b)` and `1 − I_x(a, b)`, given both `x` and `xc = 1 − x` so that
/// the complement can be formed without cancellation near `x = 1`.
///
/// Whichever of the pair is computed directly carries full relative
/// accuracy; the other one is obtained by subtraction from 1.
fn regularized_pair(a: f64, b: f64, x: f64, xc: f64, ln_beta_ab: f64) -> Result<(f64, f64)> {
    if x <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if xc <= 0.0 {
        return Ok((1.0, 0.0));
    }
    if x < (a + 1.0) / (a + b + 2.0) {
        let p = lower_tail(a, b, x, xc, ln_beta_ab)?;
        Ok((p, 1.0 - p))
    } else {
        let q = lower_tail(b, a, xc, x, ln_beta_ab)?;
        Ok((1.0 - q, q))
    }
}

/// `I_x(a, b)` for `x` below the mean of the beta distribution.
fn lower_tail(a: f64, b: f64, x: f64, xc: f64, ln_beta_ab: f64) -> Result<f64> {
    let ln_front = a * x.ln() + b * xc.ln() - ln_beta_ab;
    if x <= SERIES_CUTOFF {
        // x^a (1−x)^b/(a B) · (1−x)^{-b} Σ (1−b)_k x^k/k! · a/(a+k)
        let ln_front0 = a * x.ln() - ln_beta_ab;
        let mut term = 1.0;
        let mut sum = 1.0 / a;
        for k in 0..CF_MAX_ITER {
            let kf = k as f64;
            term *= (kf + 1.0 - b) * x / (kf + 1.0);
            let add = term / (a + kf + 1.0);
            sum += add;
            if add.abs() <= CF_EPS * sum.abs() {
                return Ok(ln_front0.exp() * sum);
            }
        }
        return Err(Error::NotConverged {
            what: "incomplete beta series",
            value: ln_front0.exp() * sum,
            error_est: f64::INFINITY,
        });
    }
    Ok(ln_front.exp() * continued_fraction(a, b, x)? / a)
}

/// Modified Lentz evaluation of the standard incomplete-beta continued fraction.
fn continued_fraction(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::NotConverged {
        what: "incomplete beta continued fraction",
        value: h,
        error_est: f64::INFINITY,
    })
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(
            "regularized_incomplete_beta",
            format!("a = {a}, b = {b} must be positive"),
        ));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("regularized_incomplete_beta", format!("x = {x} outside [0, 1]")));
    }
    Ok(regularized_pair(a, b, x, 1.0 - x, ln_beta(a, b)?)?.0)
}

/// Precomputed `h` for one parameter pair. `h(r) = B(β+1, α+1) I_r(β+1, α+1)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct IncompleteBetaH {
    a: f64,
    b: f64,
    ln_total: f64,
    total: f64,
}

impl IncompleteBetaH {
    pub fn new(params: &Params) -> Result<Self> {
        let a = params.beta() + 1.0;
        let b = params.alpha() + 1.0;
        Ok(Self {
            a,
            b,
            ln_total: ln_beta(a, b)?,
            total: beta_fn(a, b)?,
        })
    }

    /// `h(1) = B(β+1, α+1)`.
    #[inline]
    pub fn total(&self) -> f64 {
        self.total
    }

    /// `h(r)` for `r ∈ [0, 1]`, with `rc = 1 − r` supplied by the caller.
    pub fn value_with_complement(&self, r: f64, rc: f64) -> Result<f64> {
        Ok(self.total * regularized_pair(self.a, self.b, r, rc, self.ln_total)?.0)
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        self.value_with_complement(r, 1.0 - r)
    }

    /// `h(1) − h(r)` as a function of `rc = 1 − r`.
    pub fn complement(&self, rc: f64) -> Result<f64> {
        self.complement_with(1.0 - rc, rc)
    }

    pub fn complement_with(&self, r: f64, rc: f64) -> Result<f64> {
        Ok(self.total * regularized_pair(self.a, self.b, r, rc, self.ln_total)?.1)
    }
}

fn check_unit(function: &'static str, r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(function, format!("argument {r} outside [0, 1]")));
    }
    Ok(())
}

/// `h(r) = ∫₀ʳ t^β (1−t)^α dt`, `r ∈ [0, 1]`.
pub fn incomplete_beta_h(r: f64, params: &Params) -> Result<f64> {
    check_unit("incomplete_beta_h", r)?;
    IncompleteBetaH::new(params)?.value(r)
}

/// `h(1) − h(1 − rc) = ∫_{1−rc}^1 t^β (1−t)^α dt`, accurate for small `rc`.
pub fn incomplete_beta_h_complement(rc: f64, params: &Params) -> Result<f64> {
    check_unit("incomplete_beta_h_complement", rc)?;
    IncompleteBetaH::new(params)?.complement(rc)
}
