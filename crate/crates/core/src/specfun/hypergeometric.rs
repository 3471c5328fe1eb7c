use num_complex::Complex64;

use super::series::{AlgebraicTail, KahanSum, SeriesEval};
use crate::error::{Error, Result};

/// Absolute tolerance used by the library's own series evaluations.
pub const DEFAULT_SERIES_TOL: f64 = 1e-14;

/// Largest `|z|` accepted by [`gauss_2f1`].
pub const GAUSS_RADIUS: f64 = 0.95;

const MAX_2F1_TERMS: usize = 20_000;
const MAX_3F2_TERMS: usize = 1 << 23;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` by its power series,
/// for real parameters and complex `|z| ≤ 0.95`.
///
/// `tol` is absolute for `|value| ≤ 1` and relative above that.
///
/// The tail after term `k` is bounded by `|t_{k+1}| / (1 − ρ)` once the term
/// ratio has settled, where `ρ = |z| · max(1, |(a+k)(b+k)/((c+k)(k+1))|)`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: Complex64, tol: f64) -> Result<SeriesEval<Complex64>> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain("gauss_2f1", format!("c = {c} is a non-positive integer")));
    }
    let modulus = z.norm();
    if !(modulus <= GAUSS_RADIUS) {
        return Err(Error::RadiusViolation {
            modulus,
            limit: GAUSS_RADIUS,
        });
    }
    let settle = 2.0 * (a.abs() + b.abs() + c.abs()) + 4.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut re = KahanSum::default();
    let mut im = KahanSum::default();
    re.add(1.0);
    let mut abs_acc = 1.0;
    for k in 0..MAX_2F1_TERMS {
        let kf = k as f64;
        if a + kf == 0.0 || b + kf == 0.0 || modulus == 0.0 {
            let value = Complex64::new(re.value(), im.value());
            let err = 2.0 * f64::EPSILON * abs_acc;
            return Ok(SeriesEval {
                value,
                abs_error_est: err,
                terms_used: k + 1,
                converged: err <= tol * value.norm().max(1.0),
            });
        }
        let coef = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        term *= z * coef;
        re.add(term.re);
        im.add(term.im);
        abs_acc += term.norm();

        if kf + 1.0 >= settle {
            let next_kf = kf + 1.0;
            let next_coef = ((a + next_kf) * (b + next_kf) / ((c + next_kf) * (next_kf + 1.0))).abs();
            let rho = modulus * next_coef.max(1.0);
            if rho < 1.0 {
                let tail = term.norm() * modulus * next_coef / (1.0 - rho);
                let err = tail + 2.0 * f64::EPSILON * abs_acc;
                let value = Complex64::new(re.value(), im.value());
                if err <= tol * value.norm().max(1.0) {
                    return Ok(SeriesEval {
                        value,
                        abs_error_est: err,
                        terms_used: k + 2,
                        converged: true,
                    });
                }
            }
        }
        if !term.re.is_finite() || !term.im.is_finite() {
            break;
        }
    }
    Ok(SeriesEval {
        value: Complex64::new(re.value(), im.value()),
        abs_error_est: f64::INFINITY,
        terms_used: MAX_2F1_TERMS,
        converged: false,
    })
}

/// Terms of `Σ_k Π(a_i)_k / (Π(b_j)_k k!)`, stopping after an exact zero.
pub(crate) struct UnitTerms<const P: usize, const Q: usize> {
    upper: [f64; P],
    lower: [f64; Q],
    term: f64,
    k: u64,
    done: bool,
}

impl<const P: usize, const Q: usize> UnitTerms<P, Q> {
    pub fn new(upper: [f64; P], lower: [f64; Q]) -> Self {
        Self {
            upper,
            lower,
            term: 1.0,
            k: 0,
            done: false,
        }
    }
}

impl<const P: usize, const Q: usize> Iterator for UnitTerms<P, Q> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.done {
            return None;
        }
        let current = self.term;
        let kf = self.k as f64;
        let mut ratio = 1.0 / (kf + 1.0);
        for a in self.upper {
            ratio *= a + kf;
        }
        for b in self.lower {
            ratio /= b + kf;
        }
        self.term *= ratio;
        self.k += 1;
        if self.term == 0.0 {
            self.done = true;
        }
        Some(current)
    }
}

/// `₃F₂(a1, a2, a3; b1, b2; 1)`.
///
/// Requires the convergence margin `s = b1 + b2 − a1 − a2 − a3 > 0` unless
/// one of the upper parameters is a non-positive integer (terminating
/// series). Non-terminating series decay like `k^{−1−s}`; they are summed
/// with the tail majorant and Richardson extrapolation on that exponent.
pub fn hyp_3f2_unit(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, tol: f64) -> Result<SeriesEval<f64>> {
    for b in [b1, b2] {
        if is_nonpositive_integer(b) {
            return Err(Error::domain("hyp_3f2_unit", format!("lower parameter {b} is a non-positive integer")));
        }
    }
    let upper = [a1, a2, a3];
    let terminating = upper.iter().any(|&a| is_nonpositive_integer(a));
    let margin = b1 + b2 - a1 - a2 - a3;
    if !terminating && !(margin > 0.0) {
        return Err(Error::Divergence {
            function: "hyp_3f2_unit",
            detail: format!("convergence margin b1+b2-a1-a2-a3 = {margin} must be positive"),
        });
    }
    let largest = upper.iter().chain([b1, b2].iter()).fold(0.0_f64, |m, x| m.max(x.abs()));
    let engine = AlgebraicTail {
        families: vec![if terminating { margin.max(1.0) } else { margin }],
        first_checkpoint: 32 + 4 * largest.ceil() as usize,
        max_terms: MAX_3F2_TERMS,
        tol,
    };
    Ok(engine.sum(UnitTerms::new(upper, [b1, b2])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gauss_at_zero_is_one() {
        let r = gauss_2f1(0.3, 2.5, 1.25, c(0.0), 1e-15).unwrap();
        assert_eq!(r.value, c(1.0));
        assert!(r.converged);
    }

    #[test]
    fn gauss_binomial_identity() {
        // ₂F₁(1, 2; 1; x) = (1 − x)^{-2}
        let r = gauss_2f1(1.0, 2.0, 1.0, c(0.5), 1e-15).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value.re, 4.0, max_relative = 1e-14);
        assert_eq!(r.value.im, 0.0);
        let z = Complex64::new(0.3, -0.6);
        let r = gauss_2f1(1.0, 2.0, 1.0, z, 1e-15).unwrap();
        let exact = (Complex64::new(1.0, 0.0) - z).powi(-2);
        assert!((r.value - exact).norm() < 1e-13 * exact.norm(), "{:?} vs {exact:?}", r);
    }

    #[test]
    fn gauss_against_brute_force() {
        // 200-term summation with every term formed from scratch as a
        // product (no ratio recurrence).
        let (a, b, cc, x) = (0.5, 0.25, 1.5, 0.3_f64);
        let mut total = 0.0;
        for n in 0..200u32 {
            let mut t = 1.0;
            for k in 0..n {
                let k = k as f64;
                t *= (a + k) * (b + k) / ((cc + k) * (k + 1.0));
            }
            total += t * x.powi(n as i32);
        }
        let r = gauss_2f1(a, b, cc, c(x), 1e-15).unwrap();
        assert_relative_eq!(r.value.re, total, max_relative = 1e-14);
    }

    #[test]
    fn gauss_terminating_matches_hand_sum() {
        // ₂F₁(−3, 2; 1.5; x) = 1 − 4x + 16/3 x²·... written out term by term.
        let x = 0.7;
        let a = -3.0;
        let b = 2.0;
        let cc = 1.5;
        let t1 = a * b / cc * x;
        let t2 = t1 * (a + 1.0) * (b + 1.0) / ((cc + 1.0) * 2.0) * x;
        let t3 = t2 * (a + 2.0) * (b + 2.0) / ((cc + 2.0) * 3.0) * x;
        let exact = 1.0 + t1 + t2 + t3;
        let r = gauss_2f1(a, b, cc, c(x), 1e-15).unwrap();
        assert!((r.value.re - exact).abs() <= 1e-13 * exact.abs());
        assert_eq!(r.terms_used, 4);
    }

    #[test]
    fn gauss_errors() {
        assert!(matches!(
            gauss_2f1(1.0, 1.0, -2.0, c(0.1), 1e-12),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            gauss_2f1(1.0, 1.0, 1.0, c(0.96), 1e-12),
            Err(Error::RadiusViolation { .. })
        ));
    }

    #[test]
    fn hyp3f2_zero_parameter() {
        let r = hyp_3f2_unit(0.0, 3.3, 1.2, 0.7, 2.0, 1e-15).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.converged);
    }

    #[test]
    fn hyp3f2_terminating() {
        // (−1, 1, 2; 2, 4; 1) = 1 + (−1·1·2)/(2·4) = 0.75
        let r = hyp_3f2_unit(-1.0, 1.0, 2.0, 2.0, 4.0, 1e-15).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 0.75, max_relative = 1e-15);
    }

    #[test]
    fn hyp3f2_divergent() {
        assert!(matches!(
            hyp_3f2_unit(0.5, 1.0, 1.0, 1.0, 1.5, 1e-12),
            Err(Error::Divergence { .. })
        ));
    }

    #[test]
    fn hyp3f2_reduces_to_gauss_sum() {
        // With a3 = b2 the series is ₂F₁(a1, a2; b1; 1) = Γ(b1)Γ(b1−a1−a2)/(Γ(b1−a1)Γ(b1−a2)).
        let (a1, a2, b1) = (0.3, 0.45, 1.9);
        let g = libm::tgamma;
        let exact = g(b1) * g(b1 - a1 - a2) / (g(b1 - a1) * g(b1 - a2));
        let r = hyp_3f2_unit(a1, a2, 2.2, b1, 2.2, 1e-13).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - exact).abs() <= 1e-12, "{} vs {exact}", r.value);
    }

    #[test]
    fn hyp3f2_small_margin() {
        // Margin 1 (the I_n parameters at α = −1/2): Saalschützian-free check
        // against the Gauss sum with a cancelled pair.
        let (a1, a2, b1) = (0.5, 0.25, 1.75);
        let g = libm::tgamma;
        let exact = g(b1) * g(b1 - a1 - a2) / (g(b1 - a1) * g(b1 - a2));
        let r = hyp_3f2_unit(a1, a2, 5.0, b1, 5.0, 1e-12).unwrap();
        assert!(r.converged, "{r:?}");
        assert!((r.value - exact).abs() <= 1e-11, "{} vs {exact}", r.value);
    }

    #[test]
    fn hyp3f2_tighter_tolerance_stays_within_error() {
        let coarse = hyp_3f2_unit(-0.5, 0.6, 2.2, 1.6, 2.7, 1e-10).unwrap();
        let fine = hyp_3f2_unit(-0.5, 0.6, 2.2, 1.6, 2.7, 1e-11).unwrap();
        assert!(coarse.converged && fine.converged);
        assert!((coarse.value - fine.value).abs() <= coarse.abs_error_est);
    }
}
