//! Integration against `μ_{α,β}` on the unit disc.
//!
//! The disc is split into a small disc `D(z, ρ)` around the interior
//! singular point `z` and its complement. The complement is integrated in
//! polar coordinates about the origin: radial tanh-sinh panels broken at
//! `|z| ± ρ` (which also absorbs `|w|^{2β}` and `(1−|w|²)^α`), and angular
//! averages that are trapezoidal on full circles or tanh-sinh on the arcs
//! that skirt `D(z, ρ)`. Inside `D(z, ρ)` local polar coordinates
//! `w = z + s e^{iφ}` put a factor `s` in the Jacobian which cancels a
//! `1/|w − z|` singularity.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::{integrate_interval, IntegralResult, QuadValue, QuadratureSpec};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::specfun::beta_fn;

const MIN_TRAPEZOID: usize = 16;
const MAX_TRAPEZOID: usize = 1 << 14;
/// Inner radius of the local polar patch, relative to its outer radius.
/// The omitted core contributes `O(S_FLOOR)` for a `1/|w − z|` integrand.
const S_FLOOR: f64 = 1e-12;

/// Radius of the local patch around `z`:
/// `min(0.1, |z|/2, (1 − |z|)/2)`.
pub fn local_disc_radius(z: Complex64) -> f64 {
    let m = z.norm();
    0.1_f64.min(0.5 * m).min(0.5 * (1.0 - m))
}

struct Tracker {
    evaluations: usize,
    /// Error of the most recent angular mean.
    last_error: f64,
    inner_converged: bool,
}

/// A radial integrand value carried together with the angular error at the
/// same node, so that the error is integrated against the same density.
/// Convergence of the radial rule is judged on `value` alone.
#[derive(Debug, Clone, Copy)]
struct Weighted {
    value: Complex64,
    err: f64,
}

impl Add for Weighted {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { value: self.value + o.value, err: self.err + o.err }
    }
}

impl Sub for Weighted {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { value: self.value - o.value, err: self.err - o.err }
    }
}

impl Mul<f64> for Weighted {
    type Output = Self;
    fn mul(self, w: f64) -> Self {
        Self { value: self.value * w, err: self.err * w }
    }
}

impl QuadValue for Weighted {
    fn zero() -> Self {
        Self { value: Complex64::zero(), err: 0.0 }
    }
    fn magnitude(self) -> f64 {
        self.value.norm()
    }
    fn is_finite_value(self) -> bool {
        self.value.is_finite_value() && self.err.is_finite()
    }
}

/// Mean of `f(θ)` over `[0, 2π)` by the trapezoidal rule with doubling.
fn circle_mean<F>(mut f: F, spec: &QuadratureSpec, tracker: &mut Tracker) -> Result<Complex64>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    // Tolerances are relative to the mean of |f|, so that cancelling
    // integrands (mean near zero) still terminate.
    let mut m = MIN_TRAPEZOID;
    let mut sum = Complex64::zero();
    let mut abs_sum = 0.0;
    for k in 0..m {
        let y = f(2.0 * PI * k as f64 / m as f64)?;
        sum += y;
        abs_sum += y.norm();
    }
    tracker.evaluations += m;
    let mut mean = sum / m as f64;
    let mut err = f64::MAX;
    while m < MAX_TRAPEZOID {
        let mut fresh = Complex64::zero();
        for k in 0..m {
            let y = f(2.0 * PI * (2 * k + 1) as f64 / (2 * m) as f64)?;
            fresh += y;
            abs_sum += y.norm();
        }
        tracker.evaluations += m;
        sum += fresh;
        m *= 2;
        let next = sum / m as f64;
        err = (next - mean).norm();
        mean = next;
        if spec.accepts(err, abs_sum / m as f64) {
            tracker.last_error = err;
            return Ok(mean);
        }
    }
    tracker.inner_converged = false;
    tracker.last_error = err;
    Ok(mean)
}

/// `∫_D g dμ_{α,β}` where `dμ = |w|^{2β}(1−|w|²)^α dA/B(α+1, β+1)` and
/// `dA = dx dy / π`.
///
/// `g` may be singular at the origin and, like `1/|w − z|`, at one interior
/// point listed in `singular_at` (the origin may be listed too, it is
/// always handled).
pub fn integrate_disc<G>(
    mut g: G,
    singular_at: &[Complex64],
    params: &Params,
    spec: &QuadratureSpec,
) -> Result<IntegralResult<Complex64>>
where
    G: FnMut(Complex64) -> Complex64,
{
    spec.validate()?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let norm = 1.0 / beta_fn(alpha + 1.0, beta + 1.0)?;

    let mut interior: Option<Complex64> = None;
    for &p in singular_at {
        if !(p.norm() < 1.0) {
            return Err(Error::domain("integrate_disc", format!("singular point {p} outside the disc")));
        }
        if p == Complex64::zero() {
            continue;
        }
        if let Some(q) = interior {
            let radius = local_disc_radius(q).min(local_disc_radius(p));
            if (p - q).norm() < 2.0 * radius {
                return Err(Error::OverlappingSingularities {
                    first: q.to_string(),
                    second: p.to_string(),
                    radius,
                });
            }
            return Err(Error::Unsupported(
                "integrate_disc handles at most one singular point besides the origin".into(),
            ));
        }
        interior = Some(p);
    }

    let inner_spec = spec.scaled(0.1);
    let mut tracker = Tracker {
        evaluations: 0,
        last_error: 0.0,
        inner_converged: true,
    };
    let mut checked_g = |w: Complex64| -> Result<Complex64> {
        let y = g(w);
        if y.is_finite_value() {
            Ok(y)
        } else {
            Err(Error::NonFinite { x: w.norm() })
        }
    };

    // Radial density of μ after averaging over the angle: 2ρ^{2β+1}(1−ρ²)^α / B.
    let radial_density = |rho: f64, to_one: f64| -> f64 {
        2.0 * norm * rho.powf(2.0 * beta + 1.0) * (to_one * (1.0 + rho)).powf(alpha)
    };

    let mut total = Complex64::zero();
    let mut outer_error = 0.0;
    let mut inner_error = 0.0;
    let mut converged = true;
    let mut failure: Option<Error> = None;

    let breaks: Vec<f64> = match interior {
        None => vec![0.0, 1.0],
        Some(z) => {
            let rho = local_disc_radius(z);
            vec![0.0, z.norm() - rho, z.norm() + rho, 1.0]
        }
    };

    for pair in breaks.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let r = integrate_interval(
            |rho, _, to_hi| {
                if failure.is_some() {
                    return Weighted::zero();
                }
                let to_one = if hi == 1.0 { to_hi } else { 1.0 - rho };
                let density = radial_density(rho, to_one);
                let mean = match interior {
                    Some(z) if rho > lo && rho < hi && lo > 0.0 && hi < 1.0 => {
                        arc_mean(&mut checked_g, z, rho, &inner_spec, &mut tracker)
                    }
                    _ => circle_mean(
                        |theta| checked_g(Complex64::from_polar(rho, theta)),
                        &inner_spec,
                        &mut tracker,
                    ),
                };
                match mean {
                    Ok(m) => Weighted { value: m, err: tracker.last_error } * density,
                    Err(e) => {
                        failure = Some(e);
                        Weighted::zero()
                    }
                }
            },
            lo,
            hi,
            spec,
        )?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        total += r.value.value;
        inner_error += r.value.err;
        outer_error += r.error_est;
        converged &= r.converged;
    }

    if let Some(z) = interior {
        let rho = local_disc_radius(z);
        let weight = |w: Complex64| {
            let m2 = w.norm_sqr();
            m2.powf(beta) * (1.0 - m2).powf(alpha)
        };
        let r = integrate_interval(
            |s, _, _| {
                if failure.is_some() {
                    return Weighted::zero();
                }
                let mean = circle_mean(
                    |phi| {
                        let w = z + Complex64::from_polar(s, phi);
                        Ok(checked_g(w)? * weight(w))
                    },
                    &inner_spec,
                    &mut tracker,
                );
                match mean {
                    Ok(m) => Weighted { value: m, err: tracker.last_error } * (2.0 * s * norm),
                    Err(e) => {
                        failure = Some(e);
                        Weighted::zero()
                    }
                }
            },
            S_FLOOR * rho,
            rho,
            spec,
        )?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        total += r.value.value;
        inner_error += r.value.err;
        outer_error += r.error_est;
        converged &= r.converged;
    }

    let error_est = outer_error + inner_error;
    Ok(IntegralResult {
        value: total,
        error_est,
        evaluations: tracker.evaluations,
        converged: converged && tracker.inner_converged && spec.accepts(error_est, total.norm()),
    })
}

/// Mean of `g` over the part of the circle `|w| = ρ` outside `D(z, r_z)`,
/// normalized by the full circumference.
fn arc_mean<F>(g: &mut F, z: Complex64, rho: f64, spec: &QuadratureSpec, tracker: &mut Tracker) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let rz = local_disc_radius(z);
    let m = z.norm();
    let cos_half = ((rho * rho + m * m - rz * rz) / (2.0 * rho * m)).clamp(-1.0, 1.0);
    let half = cos_half.acos();
    let center = z.arg();
    let mut failure: Option<Error> = None;
    let r = integrate_interval(
        |theta, _, _| {
            if failure.is_some() {
                return Complex64::zero();
            }
            match g(Complex64::from_polar(rho, theta)) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    Complex64::zero()
                }
            }
        },
        center + half,
        center + 2.0 * PI - half,
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    tracker.evaluations += r.evaluations;
    tracker.last_error = r.error_est / (2.0 * PI);
    tracker.inner_converged &= r.converged;
    Ok(r.value / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_unit_interval;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(1e-9, 1e-12, 8).unwrap()
    }

    #[test]
    fn probability_measure() {
        for (a, b) in [(0.0, 0.0), (0.5, -0.25), (1.7, -0.4)] {
            let params = Params::new(a, b).unwrap();
            let r = integrate_disc(|_| Complex64::new(1.0, 0.0), &[], &params, &spec()).unwrap();
            assert!(r.converged);
            assert!((r.value - 1.0).norm() < 1e-9, "{a} {b}: {:?}", r.value);
        }
    }

    #[test]
    fn odd_moments_vanish() {
        let params = Params::new(0.5, -0.25).unwrap();
        let r = integrate_disc(|w| w, &[], &params, &spec()).unwrap();
        assert!(r.value.norm() < 1e-12);
        let r = integrate_disc(|w| Complex64::from_polar(1.0 / w.norm(), -w.arg()), &[Complex64::zero()], &params, &spec()).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn radial_integrand_matches_1d() {
        // ∫ |w|^2 e^{|w|²} dμ with r = |w|²: ∫ r e^r r^β(1−r)^α dr / B.
        let params = Params::new(0.5, -0.25).unwrap();
        let norm = beta_fn(1.5, 0.75).unwrap();
        let one_d = integrate_unit_interval(
            |r| r * r.exp() * r.powf(-0.25) * (1.0 - r).powf(0.5) / norm,
            &QuadratureSpec::default(),
        )
        .unwrap();
        let z = Complex64::new(0.3, 0.4);
        for singular in [&[][..], &[z][..]] {
            let two_d = integrate_disc(
                |w| Complex64::new(w.norm_sqr() * w.norm_sqr().exp(), 0.0),
                singular,
                &params,
                &QuadratureSpec::new(1e-12, 1e-14, 9).unwrap(),
            )
            .unwrap();
            assert!(
                (two_d.value.re - one_d.value).abs() <= 1e-10 * one_d.value,
                "{:?} vs {}",
                two_d.value,
                one_d.value
            );
        }
    }

    #[test]
    fn cauchy_transform_of_area_measure() {
        // −∫ dA(w)/(w − z) over the disc equals conj(z).
        let params = Params::new(0.0, 0.0).unwrap();
        let z = Complex64::new(0.35, -0.2);
        let r = integrate_disc(|w| -1.0 / (w - z), &[z], &params, &spec()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - z.conj()).norm() < 1e-7, "{:?}", r.value);
    }

    #[test]
    fn layout_errors() {
        let params = Params::new(0.0, 0.0).unwrap();
        let a = Complex64::new(0.5, 0.0);
        let b = Complex64::new(0.52, 0.0);
        let err = integrate_disc(|_| Complex64::zero(), &[a, b], &params, &spec()).unwrap_err();
        assert!(matches!(err, Error::OverlappingSingularities { .. }));
        let c = Complex64::new(-0.5, 0.0);
        let err = integrate_disc(|_| Complex64::zero(), &[a, c], &params, &spec()).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
        let err = integrate_disc(|_| Complex64::zero(), &[Complex64::new(1.0, 0.0)], &params, &spec()).unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }
}
