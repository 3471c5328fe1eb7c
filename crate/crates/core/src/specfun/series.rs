//! Summation of slowly convergent hypergeometric-type series.
//!
//! Series at unit argument decay only algebraically, `t_k ~ C k^{−1−s}`, so
//! the truncation error after `K` terms behaves like
//! `Σ_j c_j K^{−p_j}` with exponents `p_j` drawn from one or more families
//! `{s, s+1, s+2, ...}`. Two complementary estimates are used:
//!
//! * a majorant `|t_K| (1 + K/s)` of the tail, which settles quickly when the
//!   convergence margin `s` is large;
//! * generalized Richardson extrapolation on partial sums taken at
//!   `K_0, 2K_0, 4K_0, ...`, eliminating the `K^{−p_j}` terms one at a time.
//!
//! The smaller of the two error estimates decides convergence.

use serde::Serialize;

/// Result of summing a series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesEval<T> {
    pub value: T,
    pub abs_error_est: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl<T> SeriesEval<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SeriesEval<U> {
        SeriesEval {
            value: f(self.value),
            abs_error_est: self.abs_error_est,
            terms_used: self.terms_used,
            converged: self.converged,
        }
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone)]
pub(crate) struct AlgebraicTail {
    /// Leading exponents of each family of truncation-error terms.
    pub families: Vec<f64>,
    /// Number of leading terms summed before the first checkpoint.
    pub first_checkpoint: usize,
    pub max_terms: usize,
    pub tol: f64,
}

/// Rows of the extrapolation table kept at most.
const MAX_RICHARDSON_ORDER: usize = 10;

impl AlgebraicTail {
    fn exponents(&self, count: usize) -> Vec<f64> {
        let mut all: Vec<f64> = Vec::new();
        for &p in &self.families {
            for j in 0..count {
                all.push(p + j as f64);
            }
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        all.truncate(count);
        all
    }

    fn min_exponent(&self) -> f64 {
        self.families.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Sums `terms`. The iterator ending (or yielding an exact zero) marks a
    /// terminating series.
    pub fn sum<I: Iterator<Item = f64>>(&self, terms: I) -> SeriesEval<f64> {
        let s = self.min_exponent();
        let mut acc = KahanSum::default();
        let mut abs_acc = 0.0_f64;
        let mut checkpoints: Vec<f64> = Vec::new();
        let mut next = self.first_checkpoint.max(4);
        let mut best = SeriesEval {
            value: f64::NAN,
            abs_error_est: f64::INFINITY,
            terms_used: 0,
            converged: false,
        };
        let mut used = 0usize;
        let mut terms = terms.peekable();

        loop {
            let Some(t) = terms.next() else {
                return terminated(acc.value(), abs_acc, used);
            };
            if !t.is_finite() {
                best.terms_used = used;
                return best;
            }
            if t == 0.0 {
                return terminated(acc.value(), abs_acc, used);
            }
            acc.add(t);
            abs_acc += t.abs();
            used += 1;

            if used < next {
                continue;
            }
            let partial = acc.value();
            checkpoints.push(partial);

            let majorant = 2.0 * t.abs() * (1.0 + used as f64 / s);
            let rounding = 4.0 * f64::EPSILON * abs_acc;
            let direct_err = majorant + rounding;
            if direct_err < best.abs_error_est {
                best = SeriesEval {
                    value: partial,
                    abs_error_est: direct_err,
                    terms_used: used,
                    converged: false,
                };
            }
            if checkpoints.len() >= 3 {
                let (value, err) = self.extrapolate(&checkpoints);
                let err = err + rounding * 8.0;
                if err < best.abs_error_est {
                    best = SeriesEval {
                        value,
                        abs_error_est: err,
                        terms_used: used,
                        converged: false,
                    };
                }
            }
            // Tolerances below the rounding level of the sum are unattainable.
            if best.abs_error_est <= self.tol.max(64.0 * f64::EPSILON * abs_acc) {
                best.converged = true;
                best.terms_used = used;
                return best;
            }
            if terms.peek().is_none() {
                return terminated(acc.value(), abs_acc, used);
            }
            next = next.saturating_mul(2);
            if next > self.max_terms {
                best.terms_used = used;
                return best;
            }
        }
    }

    /// Generalized Richardson extrapolation of partial sums taken at
    /// doubling checkpoints. Returns the extrapolated value and the gap
    /// between the two most extrapolated entries.
    fn extrapolate(&self, checkpoints: &[f64]) -> (f64, f64) {
        let rows = checkpoints.len().min(MAX_RICHARDSON_ORDER + 1);
        let sums = &checkpoints[checkpoints.len() - rows..];
        let exps = self.exponents(rows - 1);
        // table[i][j]: checkpoint i with j error terms eliminated.
        let mut table = vec![vec![0.0; rows]; rows];
        for (i, &s) in sums.iter().enumerate() {
            table[i][0] = s;
        }
        for j in 1..rows {
            let factor = 2f64.powf(exps[j - 1]) - 1.0;
            for i in j..rows {
                table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
            }
        }
        let last = rows - 1;
        let value = table[last][last];
        let err = (value - table[last][last - 1])
            .abs()
            .max((value - table[last - 1][last - 1]).abs());
        (value, err)
    }
}

/// A finite sum is exact up to rounding.
fn terminated(value: f64, abs_acc: f64, used: usize) -> SeriesEval<f64> {
    let err = 2.0 * f64::EPSILON * abs_acc;
    SeriesEval {
        value,
        abs_error_est: err,
        terms_used: used,
        converged: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_terms(p: f64) -> impl Iterator<Item = f64> {
        (1..).map(move |k: u64| (k as f64).powf(-p))
    }

    #[test]
    fn zeta_two_by_extrapolation() {
        // ζ(2) = π²/6; terms k^{-2} have tail exponent 1.
        let engine = AlgebraicTail {
            families: vec![1.0],
            first_checkpoint: 16,
            max_terms: 1 << 20,
            tol: 1e-12,
        };
        let r = engine.sum(zeta_terms(2.0));
        assert!(r.converged, "{r:?}");
        let exact = std::f64::consts::PI.powi(2) / 6.0;
        assert!((r.value - exact).abs() < 1e-12, "{r:?}");
        assert!((r.value - exact).abs() <= r.abs_error_est.max(1e-15));
        assert!(r.terms_used < 100_000);
    }

    #[test]
    fn two_family_tail() {
        // Σ (k^{-1.5} + k^{-2}) = ζ(1.5) + ζ(2): tail families 0.5 and 1.
        let engine = AlgebraicTail {
            families: vec![0.5, 1.0],
            first_checkpoint: 32,
            max_terms: 1 << 22,
            tol: 1e-10,
        };
        let r = engine.sum((1..).map(|k: u64| {
            let k = k as f64;
            k.powf(-1.5) + k.powf(-2.0)
        }));
        let exact = 2.612_375_348_685_488 + std::f64::consts::PI.powi(2) / 6.0;
        assert!(r.converged, "{r:?}");
        assert!((r.value - exact).abs() < 1e-10, "{r:?} vs {exact}");
    }

    #[test]
    fn finite_series_is_exact() {
        let engine = AlgebraicTail {
            families: vec![1.0],
            first_checkpoint: 16,
            max_terms: 1 << 10,
            tol: 1e-14,
        };
        let r = engine.sum([1.0, 0.5, 0.25, 0.0, 7.0].into_iter());
        assert!(r.converged);
        assert_eq!(r.value, 1.75);
        assert_eq!(r.terms_used, 3);
    }

    #[test]
    fn reports_non_convergence() {
        let engine = AlgebraicTail {
            families: vec![0.01],
            first_checkpoint: 16,
            max_terms: 1 << 8,
            tol: 1e-14,
        };
        let r = engine.sum((1..).map(|k: u64| (k as f64).powf(-1.01) * (1.0 + (k as f64).ln().sin())));
        assert!(!r.converged);
        assert!(r.abs_error_est > 1e-14);
    }

    #[test]
    fn neumaier_sum() {
        let mut s = KahanSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
