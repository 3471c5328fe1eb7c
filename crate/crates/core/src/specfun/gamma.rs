use crate::error::{Error, Result};

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("x = {x} must be positive")));
    }
    Ok(libm::lgamma(x))
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
/// Below this argument the Stirling correction is not used directly.
const STIRLING_MIN: f64 = 10.0;

/// `ln Γ(x) − ((x − 1/2) ln x − x + ln √(2π))` for `x ≥ 10`.
fn stirling_correction(x: f64) -> f64 {
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let r = 1.0 / (x * x);
    C.iter().rev().fold(0.0, |acc, &c| acc * r + c) / x
}

/// `ln Γ(x) − ln Γ(y)` without the cancellation of two large log-gammas.
pub(crate) fn ln_gamma_ratio(x: f64, y: f64) -> f64 {
    let low = x.min(y);
    if low < STIRLING_MIN {
        if x.max(y) < 2.0 * STIRLING_MIN {
            return libm::lgamma(x) - libm::lgamma(y);
        }
        // ln Γ(x) = ln Γ(x + k) − ln((x)_k).
        let k = (STIRLING_MIN - low).ceil() as u32;
        let (mut px, mut py) = (1.0, 1.0);
        for j in 0..k {
            px *= x + j as f64;
            py *= y + j as f64;
        }
        return ln_gamma_ratio(x + k as f64, y + k as f64) - (px / py).ln();
    }
    let d = x - y;
    (y - 0.5) * (d / y).ln_1p() + d * x.ln() - d + stirling_correction(x) - stirling_correction(y)
}

/// `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("ln_beta", format!("a = {a}, b = {b} must be positive")));
    }
    let (p, q) = (a.min(b), a.max(b));
    if p >= STIRLING_MIN {
        let corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(p + q);
        let frac = p / (p + q);
        return Ok(-0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * frac.ln() + q * (-frac).ln_1p());
    }
    Ok(libm::lgamma(p) - ln_gamma_ratio(p + q, q))
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("beta_fn", format!("a = {a}, b = {b} must be positive")));
    }
    // Exact products keep the small cases (B(1,1), B(1.5,0.5), ...) at
    // full precision; the log route covers the rest.
    if a + b < 20.0 {
        Ok(libm::tgamma(a) * libm::tgamma(b) / libm::tgamma(a + b))
    } else {
        ln_beta(a, b).map(f64::exp)
    }
}

/// `ln (a)_n` for `a > 0`, where `(a)_n = a(a+1)···(a+n−1)`.
pub fn log_pochhammer(a: f64, n: u64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain("log_pochhammer", format!("a = {a} must be positive")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if n <= 32 {
        let prod: f64 = (0..n).map(|k| a + k as f64).product();
        return Ok(prod.ln());
    }
    Ok(ln_gamma_ratio(a + n as f64, a))
}

/// `(a)_n / (b)_n` for `a, b > 0`, evaluated in log space.
pub fn pochhammer_ratio(a: f64, b: f64, n: u64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("pochhammer_ratio", format!("a = {a}, b = {b} must be positive")));
    }
    if n <= 32 {
        return Ok((0..n).map(|k| (a + k as f64) / (b + k as f64)).product());
    }
    let nf = n as f64;
    Ok((ln_gamma_ratio(a + nf, b + nf) - ln_gamma_ratio(a, b)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.5 * PI.ln(), max_relative = 1e-14);
        // Γ(4.5) = 3.5·2.5·1.5·0.5·√π
        let g45 = 3.5 * 2.5 * 1.5 * 0.5 * PI.sqrt();
        assert_relative_eq!(log_gamma(4.5).unwrap(), g45.ln(), max_relative = 1e-14);
        assert_relative_eq!(g45, 11.6317283966, max_relative = 1e-10);
    }

    #[test]
    fn log_gamma_domain() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn beta_values() {
        assert_relative_eq!(beta_fn(1.0, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(beta_fn(1.5, 0.5).unwrap(), PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(beta_fn(2.0, 30.0).unwrap(), 1.0 / (30.0 * 31.0), max_relative = 1e-13);
        assert!(beta_fn(0.0, 1.0).is_err());
        assert!(beta_fn(1.0, -0.5).is_err());
    }

    #[test]
    fn large_argument_accuracy() {
        // 30-digit references.
        assert_relative_eq!(beta_fn(1.0, 152.0).unwrap(), 1.0 / 152.0, max_relative = 2e-15);
        assert_relative_eq!(beta_fn(1.5, 8190.75).unwrap(), 1.19547239539142397e-6, max_relative = 4e-15);
        assert_relative_eq!(beta_fn(250.5, 1000.25).unwrap(), 1.66830344335525740e-273, max_relative = 1e-13);
        assert_relative_eq!(pochhammer_ratio(2.0, 0.75, 5000).unwrap(), 51533.6963315151582, max_relative = 4e-15);
        assert_relative_eq!(ln_gamma_ratio(1e5 + 0.3, 1e5), 3.45387658952387555, max_relative = 4e-15);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(log_pochhammer(2.3, 0).unwrap(), 0.0);
        assert_relative_eq!(log_pochhammer(1.0, 5).unwrap(), 120f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(log_pochhammer(0.5, 3).unwrap(), 1.875f64.ln(), max_relative = 1e-14);
        // (1)_40 = 40!, crossing into the lgamma branch.
        let fact40: f64 = (1..=40).map(|k| k as f64).product();
        assert_relative_eq!(log_pochhammer(1.0, 40).unwrap(), fact40.ln(), max_relative = 1e-14);
        assert!(log_pochhammer(0.0, 3).is_err());
    }

    #[test]
    fn pochhammer_ratio_large_n_is_finite() {
        // (2)_n/(1)_n = n+1 exactly.
        let r = pochhammer_ratio(2.0, 1.0, 100_000).unwrap();
        assert_relative_eq!(r, 100_001.0, max_relative = 1e-9);
    }

    proptest::proptest! {
        #[test]
        fn beta_symmetric(a in 0.01f64..40.0, b in 0.01f64..40.0) {
            let ab = beta_fn(a, b).unwrap();
            let ba = beta_fn(b, a).unwrap();
            proptest::prop_assert!(((ab - ba) / ab).abs() <= 1e-13);
        }

        #[test]
        fn log_gamma_recurrence(x in 0.05f64..150.0) {
            // ln Γ(x+1) = ln Γ(x) + ln x
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            proptest::prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
        }
    }
}
