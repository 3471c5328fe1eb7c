use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents `(α, β)` of the measure
/// `dμ_{α,β}(z) = |z|^{2β} (1 − |z|²)^α dA(z) / B(α+1, β+1)`.
///
/// In strict mode (the default) the pair must satisfy `α > −1` and
/// `−1/2 < β ≤ 0`, the range on which `T` and `R` are known to be compact.
/// Exploratory mode relaxes the lower bound to `β > −1`; the formulas stay
/// finite there for `n ≥ 1` but carry no operator-theoretic meaning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    alpha: f64,
    beta: f64,
    strict: bool,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_mode(alpha, beta, true)
    }

    /// Parameters for `−1 < β ≤ −1/2` (and everything `new` accepts).
    pub fn exploratory(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_mode(alpha, beta, false)
    }

    pub fn with_mode(alpha: f64, beta: f64, strict: bool) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha = {alpha}, beta = {beta} must be finite"
            )));
        }
        if alpha <= -1.0 {
            return Err(Error::InvalidParams(format!(
                "alpha = {alpha} must exceed -1"
            )));
        }
        if beta > 0.0 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} must satisfy beta <= 0"
            )));
        }
        if strict && beta <= -0.5 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} violates the compactness hypothesis -1/2 < beta <= 0; \
                 use exploratory mode to evaluate the formulas anyway"
            )));
        }
        if beta <= -1.0 {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} must exceed -1"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            strict,
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `n = 0` quantities built on `J_0` need `∫ r^{3β+1} dr < ∞`.
    pub(crate) fn check_j0(&self) -> Result<()> {
        if 3.0 * self.beta + 1.0 <= -1.0 {
            return Err(Error::domain(
                "J_0",
                format!("3*beta + 1 = {} must exceed -1", 3.0 * self.beta + 1.0),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_gate() {
        assert!(Params::new(0.5, -0.5).is_err());
        assert!(Params::new(0.5, -0.49).is_ok());
        assert!(Params::new(0.0, 0.0).is_ok());
        assert!(Params::new(-1.0, 0.0).is_err());
        assert!(Params::new(0.0, 0.1).is_err());
        assert!(Params::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn exploratory_gate() {
        let p = Params::exploratory(0.5, -0.7).unwrap();
        assert!(!p.is_strict());
        assert!(Params::exploratory(0.5, -1.0).is_err());
        assert!(p.check_j0().is_err());
        assert!(Params::exploratory(0.5, -0.6).unwrap().check_j0().is_ok());
        assert!(Params::exploratory(0.5, -0.9).unwrap().check_j0().is_err());
    }

    #[test]
    fn strict_message_mentions_hypothesis() {
        let err = Params::new(0.5, -0.7).unwrap_err().to_string();
        assert!(err.contains("-1/2 < beta <= 0"), "{err}");
    }
}
