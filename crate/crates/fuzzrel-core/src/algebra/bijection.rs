use std::fmt;
use std::sync::Arc;

use super::unit::clamp_unit;
use crate::error::{FuzzError, Result};

pub type MapFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A strictly increasing bijection of `[0, 1]` used to transform t-norms,
/// t-conorms and negations (`T_φ(x, y) = φ⁻¹(T(φ(x), φ(y)))`).
#[derive(Clone)]
pub enum MonotoneBijection {
    Identity,
    /// `φ(x) = x^p` with `p > 0`.
    Power(f64),
    Custom {
        name: String,
        forward: MapFn,
        inverse: MapFn,
    },
}

impl MonotoneBijection {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(FuzzError::InvalidSpec(format!(
                "power bijection needs a finite exponent > 0, got {p}"
            )));
        }
        if p == 1.0 {
            return Ok(MonotoneBijection::Identity);
        }
        Ok(MonotoneBijection::Power(p))
    }

    /// Build from a closed-form pair; rejected unless the endpoints are fixed,
    /// the map is strictly increasing on a 1e-3 grid and the pair round-trips.
    pub fn custom(
        name: impl Into<String>,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let phi = MonotoneBijection::Custom {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        };
        phi.validate()?;
        Ok(phi)
    }

    pub fn validate(&self) -> Result<()> {
        const TOL: f64 = 1e-12;
        let bad = |msg: String| {
            Err(FuzzError::InvalidSpec(format!(
                "bijection {}: {msg}",
                self.name()
            )))
        };
        if self.forward(0.0).abs() > TOL || (self.forward(1.0) - 1.0).abs() > TOL {
            return bad("endpoints 0 and 1 must be fixed".into());
        }
        let mut prev = self.forward(0.0);
        for i in 1..=1000 {
            let x = i as f64 / 1000.0;
            let fx = self.forward(x);
            if fx.is_nan() || fx <= prev {
                return bad(format!("not strictly increasing near x = {x}"));
            }
            prev = fx;
            let back = self.inverse(fx);
            if (back - x).abs() > TOL {
                return bad(format!(
                    "inverse does not round-trip at x = {x} (got {back})"
                ));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        match self {
            MonotoneBijection::Identity => "identity".into(),
            MonotoneBijection::Power(p) => format!("power:{p}"),
            MonotoneBijection::Custom { name, .. } => name.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, MonotoneBijection::Identity)
    }

    #[inline]
    pub fn forward(&self, x: f64) -> f64 {
        match self {
            MonotoneBijection::Identity => x,
            MonotoneBijection::Power(p) => x.powf(*p),
            MonotoneBijection::Custom { forward, .. } => forward(x),
        }
    }

    #[inline]
    pub fn inverse(&self, y: f64) -> f64 {
        let y = clamp_unit(y);
        match self {
            MonotoneBijection::Identity => y,
            MonotoneBijection::Power(p) => y.powf(1.0 / *p),
            MonotoneBijection::Custom { inverse, .. } => inverse(y),
        }
    }
}

impl PartialEq for MonotoneBijection {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MonotoneBijection::Identity, MonotoneBijection::Identity) => true,
            (MonotoneBijection::Power(a), MonotoneBijection::Power(b)) => a == b,
            (
                MonotoneBijection::Custom {
                    forward: f1,
                    inverse: i1,
                    ..
                },
                MonotoneBijection::Custom {
                    forward: f2,
                    inverse: i2,
                    ..
                },
            ) => Arc::ptr_eq(f1, f2) && Arc::ptr_eq(i1, i2),
            _ => false,
        }
    }
}

impl fmt::Debug for MonotoneBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneBijection({})", self.name())
    }
}
