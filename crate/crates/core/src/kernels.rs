//! Pointwise kernels and bases of `A²(D, μ_{α,β})`.
//!
//! * reproducing kernel `K(ξ) = ₂F₁(1, α+β+2; β+1; ξ)`, so that
//!   `K(z w̄)` reproduces holomorphic functions;
//! * `e_n(z) = sqrt((α+β+2)_n / (β+1)_n) zⁿ`, the orthonormal basis;
//! * `ψ_n`, the orthonormal system carrying the singular vectors of `T`;
//! * the kernel `τ(z, ξ) = 1/z + (h(|z|²)/h₁ − 1) K(z ξ̄)/z` of `T`, and its
//!   defining integral `−∫ K(w ξ̄)/(w − z) dμ(w)` evaluated on the disc as an
//!   independent check.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::quadrature::{integrate_disc, integrate_unit_interval_complement, IntegralResult, QuadratureSpec};
use crate::specfun::{gauss_2f1, pochhammer_ratio, IncompleteBetaH, DEFAULT_SERIES_TOL};
use crate::spectra::{singular_value_t_with, Method, Settings};

/// Largest `|ξ|` at which the kernel series is evaluated.
pub const KERNEL_RADIUS: f64 = 0.95;

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.norm() < 1.0) {
            return Err(Error::domain("DiscPoint", format!("|{value}| must be below 1")));
        }
        Ok(Self(value))
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Closed-form `τ(z, ξ)` against its defining disc integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCheckReport {
    pub z: DiscPoint,
    pub xi: DiscPoint,
    pub closed_form: Complex64,
    pub numeric: Complex64,
    pub abs_gap: f64,
    /// Error estimate of `numeric`.
    pub error_est: f64,
    pub converged: bool,
}

/// `K(ξ) = ₂F₁(1, α+β+2; β+1; ξ)` for `|ξ| ≤ 0.95`.
pub fn reproducing_kernel(xi: Complex64, params: &Params) -> Result<Complex64> {
    if !(xi.norm() <= KERNEL_RADIUS) {
        return Err(Error::RadiusViolation {
            modulus: xi.norm(),
            limit: KERNEL_RADIUS,
        });
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let s = gauss_2f1(1.0, alpha + beta + 2.0, beta + 1.0, xi, DEFAULT_SERIES_TOL)?;
    if !s.converged {
        return Err(Error::NotConverged {
            what: "reproducing_kernel",
            value: s.value.norm(),
            error_est: s.abs_error_est,
        });
    }
    Ok(s.value)
}

/// `e_n(z) = sqrt((α+β+2)_n / (β+1)_n) zⁿ`.
pub fn basis_e_n(n: u64, z: DiscPoint, params: &Params) -> Result<Complex64> {
    let weight = pochhammer_ratio(params.alpha() + params.beta() + 2.0, params.beta() + 1.0, n)?;
    Ok(z.value().powu(n as u32) * weight.sqrt())
}

/// `‖e_n‖²` in `L²(μ)`, reduced to `(α+β+2)_n/(β+1)_n · ∫ rⁿ r^β(1−r)^α dr / B(α+1, β+1)`
/// and integrated numerically.
pub fn basis_norm_squared(n: u64, params: &Params, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let h = IncompleteBetaH::new(params)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let weight = pochhammer_ratio(alpha + beta + 2.0, beta + 1.0, n)?;
    let exponent = n as f64 + beta;
    let r = integrate_unit_interval_complement(|r, rc| r.powf(exponent) * rc.powf(alpha), spec)?;
    let scale = weight / h.total();
    Ok(IntegralResult {
        value: r.value * scale,
        error_est: r.error_est * scale,
        ..r
    })
}

/// The orthonormal functions
/// `ψ₀(z) = h(|z|²)/(z h₁ d₀)` and `ψ_n(z) = (h(|z|²)/h₁ − 1) z^{n−1} / d_n`.
///
/// The normalizers `d_n = s_n(T) sqrt((β+1)_n/(α+β+2)_n)` are computed once
/// from the series route.
#[derive(Debug, Clone)]
pub struct PsiBasis {
    h: IncompleteBetaH,
    d: Vec<f64>,
}

impl PsiBasis {
    pub fn new(params: &Params, n_max: u64) -> Result<Self> {
        let settings = Settings::default();
        let (alpha, beta) = (params.alpha(), params.beta());
        let d = (0..=n_max)
            .map(|n| {
                let s = singular_value_t_with(n, params, Method::Hypergeometric, &settings)?;
                Ok(s.value / pochhammer_ratio(alpha + beta + 2.0, beta + 1.0, n)?.sqrt())
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            h: IncompleteBetaH::new(params)?,
            d,
        })
    }

    pub fn n_max(&self) -> u64 {
        self.d.len() as u64 - 1
    }

    pub fn d_n(&self, n: u64) -> f64 {
        self.d[n as usize]
    }

    pub fn eval(&self, n: u64, z: DiscPoint) -> Result<Complex64> {
        let z = z.value();
        if n == 0 && z == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole("psi_0"));
        }
        let r = z.norm_sqr();
        let modulus = self.eval_radial(n, r, 1.0 - r)?;
        // ψ_n(z) = ψ_n(|z|) e^{i(n−1)θ}.
        let phase = if n == 0 { z.conj() / z.norm() } else { (z / z.norm()).powu((n - 1) as u32) };
        Ok(if z.norm() == 0.0 { Complex64::new(modulus, 0.0) } else { phase * modulus })
    }

    /// `ψ_n(√r)` from `r` and `rc = 1 − r`; the complement keeps the factor
    /// `h(r)/h₁ − 1` accurate near the boundary.
    pub fn eval_radial(&self, n: u64, r: f64, rc: f64) -> Result<f64> {
        if n > self.n_max() {
            return Err(Error::domain("PsiBasis::eval", format!("n = {n} exceeds {}", self.n_max())));
        }
        let total = self.h.total();
        if n == 0 {
            if r == 0.0 {
                return Err(Error::Pole("psi_0"));
            }
            return Ok(self.h.value_with_complement(r, rc)? / (total * r.sqrt() * self.d[0]));
        }
        let ratio_minus_one = -self.h.complement_with(r, rc)? / total;
        Ok(r.sqrt().powi((n - 1) as i32) * ratio_minus_one / self.d[n as usize])
    }
}

/// `ψ_n(z)`; builds the normalizers up to `n` on every call.
pub fn psi_n(n: u64, z: DiscPoint, params: &Params) -> Result<Complex64> {
    PsiBasis::new(params, n)?.eval(n, z)
}

/// `τ(z, ξ) = 1/z + (h(|z|²)/h₁ − 1) K(z ξ̄)/z`.
pub fn tau_closed(z: DiscPoint, xi: DiscPoint, params: &Params) -> Result<Complex64> {
    let (z, xi) = (z.value(), xi.value());
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("tau_closed"));
    }
    let h = IncompleteBetaH::new(params)?;
    let ratio_minus_one = -h.complement(1.0 - z.norm_sqr())? / h.total();
    let k = reproducing_kernel(z * xi.conj(), params)?;
    Ok((Complex64::new(1.0, 0.0) + k * ratio_minus_one) / z)
}

/// `−∫ K(w ξ̄)/(w − z) dμ(w)` on the disc, compared with [`tau_closed`].
/// Requires `|z|, |ξ| ≤ 0.8`.
pub fn tau_numeric(z: DiscPoint, xi: DiscPoint, params: &Params, spec: &QuadratureSpec) -> Result<KernelCheckReport> {
    for p in [z, xi] {
        if p.value().norm() > 0.8 {
            return Err(Error::domain("tau_numeric", format!("|{}| exceeds 0.8", p.value())));
        }
    }
    let closed_form = tau_closed(z, xi, params)?;
    let (zv, xv) = (z.value(), xi.value().conj());
    let (alpha, beta) = (params.alpha(), params.beta());
    let integral = integrate_disc(
        |w| {
            // |w ξ̄| < 0.8 stays inside the series radius.
            match gauss_2f1(1.0, alpha + beta + 2.0, beta + 1.0, w * xv, DEFAULT_SERIES_TOL) {
                Ok(k) => -k.value / (w - zv),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        },
        &[Complex64::new(0.0, 0.0), zv],
        params,
        spec,
    )?;
    Ok(KernelCheckReport {
        z,
        xi,
        closed_form,
        numeric: integral.value,
        abs_gap: (closed_form - integral.value).norm(),
        error_est: integral.error_est,
        converged: integral.converged,
    })
}

/// Gram matrix `⟨ψ_m, ψ_k⟩` for `0 ≤ m, k ≤ n_max`. Distinct indices carry
/// distinct angular frequencies, so the off-diagonal entries are exactly
/// zero; each diagonal entry is the radial integral
/// `∫₀¹ |ψ_n(√r)|² r^β (1−r)^α dr / B(α+1, β+1)`, with `ψ_n` evaluated
/// pointwise.
pub fn gram_psi(n_max: u64, params: &Params, spec: &QuadratureSpec) -> Result<Vec<Vec<f64>>> {
    if n_max == 0 || n_max > 32 {
        return Err(Error::domain("gram_psi", format!("n_max = {n_max} must lie in 1..=32")));
    }
    let basis = PsiBasis::new(params, n_max)?;
    let (alpha, beta) = (params.alpha(), params.beta());
    let total = basis.h.total();
    let size = n_max as usize + 1;
    let mut gram = vec![vec![0.0; size]; size];
    for n in 0..=n_max {
        let r = integrate_unit_interval_complement(
            |r, rc| basis.eval_radial(n, r, rc).map_or(f64::NAN, |v| v * v) * r.powf(beta) * rc.powf(alpha),
            spec,
        )?
        .require_converged("gram_psi")?;
        gram[n as usize][n as usize] = r.value / total;
    }
    Ok(gram)
}

/// `count` reproducible pairs `(z, ξ)` with `0.1 ≤ |z| ≤ max_modulus` and
/// `|ξ| ≤ max_modulus`, uniform in area.
pub fn sample_pairs(count: usize, seed: u64, max_modulus: f64) -> Result<Vec<(DiscPoint, DiscPoint)>> {
    if !(max_modulus > 0.1 && max_modulus < 1.0) {
        return Err(Error::domain("sample_pairs", format!("max_modulus = {max_modulus} must lie in (0.1, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = |min: f64| {
        let u: f64 = rng.gen_range(min * min / (max_modulus * max_modulus)..1.0);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        DiscPoint::new(Complex64::from_polar(max_modulus * u.sqrt(), theta))
    };
    (0..count).map(|_| Ok((point(0.1)?, point(0.0)?))).collect()
}
