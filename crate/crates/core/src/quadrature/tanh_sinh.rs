use std::f64::consts::PI;

use super::{IntegralResult, QuadValue, QuadratureSpec};
use crate::error::{Error, Result};

/// Abscissae stop once the distance to the nearer endpoint drops below
/// `exp(-MAX_EXPONENT)`.
const MAX_EXPONENT: f64 = 690.0;
const MIN_LEVEL: u32 = 3;

/// Node at parameter `t ≥ 0`: the distance `small` from the nearer endpoint
/// and the weight `π cosh t · x (1 − x)`.
#[inline]
fn node(t: f64) -> Option<(f64, f64)> {
    let u = PI * t.sinh();
    if u > MAX_EXPONENT {
        return None;
    }
    let e = (-u).exp();
    let small = e / (1.0 + e);
    let weight = PI * t.cosh() * small * (1.0 - small);
    Some((small, weight))
}

#[inline]
fn checked<V: QuadValue>(y: V, x: f64) -> Result<V> {
    if y.is_finite_value() {
        Ok(y)
    } else {
        Err(Error::NonFinite { x })
    }
}

/// Sum of `w f` over the nodes `t = k h`, `k = offset, offset + stride, ...`
/// (mirrored to negative `t`).
fn level_sum<V, F>(f: &mut F, h: f64, stride: usize, offset: usize, evaluations: &mut usize) -> Result<V>
where
    V: QuadValue,
    F: FnMut(f64, f64) -> V,
{
    let mut acc = V::zero();
    let mut k = offset;
    loop {
        let t = k as f64 * h;
        if k == 0 {
            acc = acc + checked(f(0.5, 0.5), 0.5)? * (PI / 4.0);
            *evaluations += 1;
        } else {
            let Some((small, w)) = node(t) else { break };
            let left = checked(f(small, 1.0 - small), small)?;
            let right = checked(f(1.0 - small, small), 1.0 - small)?;
            *evaluations += 2;
            acc = acc + (left + right) * w;
        }
        k += stride;
    }
    Ok(acc)
}

/// Tanh-sinh rule on `(0, 1)`. The integrand receives `(x, 1 − x)`.
fn tanh_sinh<V, F>(mut f: F, spec: &QuadratureSpec) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    F: FnMut(f64, f64) -> V,
{
    spec.validate()?;
    let mut evaluations = 0usize;
    let mut h = 1.0;
    let mut estimate = level_sum(&mut f, h, 1, 0, &mut evaluations)? * h;
    let mut error_est = f64::INFINITY;
    for level in 1..=spec.max_level {
        h *= 0.5;
        let fresh: V = level_sum(&mut f, h, 2, 1, &mut evaluations)?;
        let next = estimate * 0.5 + fresh * h;
        error_est = (next - estimate).magnitude();
        estimate = next;
        if level >= MIN_LEVEL && spec.accepts(error_est, estimate.magnitude()) {
            return Ok(IntegralResult {
                value: estimate,
                error_est,
                evaluations,
                converged: true,
            });
        }
    }
    Ok(IntegralResult {
        value: estimate,
        error_est,
        evaluations,
        converged: false,
    })
}

/// `∫₀¹ f(x) dx`.
///
/// `f` may have integrable algebraic singularities (exponent `> −1`) at
/// either endpoint; it is never evaluated at 0 or 1 exactly.
pub fn integrate_unit_interval<F>(mut f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: FnMut(f64) -> f64,
{
    tanh_sinh(|x, _| f(x), spec)
}

/// `∫₀¹ f(x, 1 − x) dx` where the second argument is the exact distance to 1.
pub fn integrate_unit_interval_complement<F>(f: F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: FnMut(f64, f64) -> f64,
{
    tanh_sinh(f, spec)
}

/// `∫_a^b f dx` for real or complex integrands. `f` receives
/// `(x, x − a, b − x)`, the last two without cancellation.
pub fn integrate_interval<V, F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<IntegralResult<V>>
where
    V: QuadValue,
    F: FnMut(f64, f64, f64) -> V,
{
    let len = b - a;
    let r = tanh_sinh(
        |u, uc| {
            let from_a = len * u;
            let to_b = len * uc;
            let x = if u <= 0.5 { a + from_a } else { b - to_b };
            f(x, from_a, to_b)
        },
        spec,
    )?;
    Ok(IntegralResult {
        value: r.value * len,
        error_est: r.error_est * len.abs(),
        evaluations: r.evaluations,
        converged: r.converged,
    })
}
