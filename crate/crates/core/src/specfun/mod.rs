//! Scalar special functions.
//!
//! Everything works in `f64`. Products of gamma functions are formed in log
//! space and exponentiated once, so Pochhammer ratios stay finite for the
//! indices (`n ≈ 10⁵`) used by the asymptotic sweeps.

mod gamma;
mod hypergeometric;
mod incbeta;
pub(crate) mod series;

pub use gamma::{beta_fn, ln_beta, log_gamma, log_pochhammer, pochhammer_ratio};
pub use hypergeometric::{gauss_2f1, hyp_3f2_unit, DEFAULT_SERIES_TOL};
pub(crate) use incbeta::IncompleteBetaH;
pub use incbeta::{incomplete_beta_h, incomplete_beta_h_complement, regularized_incomplete_beta};
pub use series::SeriesEval;
