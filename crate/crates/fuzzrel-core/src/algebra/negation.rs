use super::bijection::MonotoneBijection;
use super::unit::clamp_unit;
use crate::error::{FuzzError, Result};

/// A strict fuzzy negation (continuous, strictly decreasing, N(0)=1, N(1)=0).
#[derive(Debug, Clone, PartialEq)]
pub enum Negation {
    /// `N(x) = 1 - x`.
    Standard,
    /// `N_φ(x) = φ⁻¹(1 - φ(x))`; involutive.
    Phi(MonotoneBijection),
    /// `N(x) = 1 - x^p`; not involutive unless `p = 1`.
    PowerComplement(f64),
}

impl Negation {
    pub fn phi(phi: MonotoneBijection) -> Negation {
        if phi.is_identity() {
            Negation::Standard
        } else {
            Negation::Phi(phi)
        }
    }

    pub fn power_complement(p: f64) -> Result<Negation> {
        if !(p.is_finite() && p > 0.0) {
            return Err(FuzzError::InvalidSpec(format!(
                "power-complement negation needs a finite exponent > 0, got {p}"
            )));
        }
        Ok(if p == 1.0 {
            Negation::Standard
        } else {
            Negation::PowerComplement(p)
        })
    }

    pub fn name(&self) -> String {
        match self {
            Negation::Standard => "standard".into(),
            Negation::Phi(phi) => format!("phi:{}", phi.name()),
            Negation::PowerComplement(p) => format!("power-complement:{p}"),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Negation::Standard => 1.0 - x,
            Negation::Phi(phi) => phi.inverse(1.0 - phi.forward(x)),
            Negation::PowerComplement(p) => 1.0 - x.powf(*p),
        }
    }

    /// `N⁻¹`; every variant is a bijection of `[0, 1]`.
    #[inline]
    pub fn inverse(&self, y: f64) -> f64 {
        let y = clamp_unit(y);
        match self {
            Negation::Standard => 1.0 - y,
            Negation::Phi(phi) => phi.inverse(1.0 - phi.forward(y)),
            Negation::PowerComplement(p) => (1.0 - y).powf(1.0 / *p),
        }
    }

    /// The bijection `φ` when the negation is `N_φ`.
    pub fn phi_of(&self) -> Option<MonotoneBijection> {
        match self {
            Negation::Standard => Some(MonotoneBijection::Identity),
            Negation::Phi(phi) => Some(phi.clone()),
            Negation::PowerComplement(_) => None,
        }
    }
}
