//! Singular values of the Cauchy-transform operators `T = C·P` and
//! `R = P·C·P` on the weighted Bergman spaces `A²(D, μ_{α,β})` of the unit
//! disc.
//!
//! Every quantity is available through at least two numerically independent
//! routes (adaptive double-exponential quadrature and hypergeometric series),
//! so that each result can be cross-checked against another:
//!
//! * [`specfun`]: log-gamma, beta, Pochhammer symbols, ₂F₁, ₃F₂ at unit
//!   argument and the incomplete beta integral `h`.
//! * [`quadrature`]: tanh-sinh integration on `(0, 1)` and a 2-D integrator
//!   on the disc for integrands with a Cauchy-type point singularity.
//! * [`spectra`]: the moment integrals `I_n`, `J_n`, Mellin transforms,
//!   `s_n(T)`, `s_n(R)`, asymptotic constants and Schatten partial sums.
//! * [`kernels`]: reproducing kernel, operator kernel `τ`, the bases `e_n`
//!   and `ψ_n` and their numerical verification.
//! * [`verify`]: the cross-check suites driven by the command-line tool.

pub mod error;
pub mod kernels;
pub mod params;
pub mod quadrature;
pub mod specfun;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use params::Params;
