use std::fmt;
use std::sync::Arc;

use super::bijection::{MapFn, MonotoneBijection};
use super::unit::clamp_unit;
use crate::error::{FuzzError, Result};

/// Additive generator `t: [0,1] → [0,∞]` of a continuous Archimedean t-norm,
/// `T(x, y) = t⁻¹(min(t(0), t(x) + t(y)))`.
///
/// `t` is continuous and strictly decreasing with `t(1) = 0`. The t-norm is
/// strict when `t(0) = ∞` and nilpotent otherwise.
#[derive(Clone)]
pub enum AdditiveGenerator {
    /// `t(x) = -ln x`; generates the product t-norm.
    NegLog,
    /// `t(x) = 1 - x`; generates the Łukasiewicz t-norm.
    OneMinus,
    /// `t(x) = (1 - x)^p`, `p > 0` (Yager family, nilpotent).
    Yager(f64),
    /// `t(x) = (-ln x)^p`, `p > 0` (Aczél–Alsina family, strict).
    AczelAlsina(f64),
    /// `t ∘ φ` for a generator `t` and increasing bijection `φ`.
    Composed {
        base: Box<AdditiveGenerator>,
        phi: MonotoneBijection,
    },
    Custom {
        name: String,
        forward: MapFn,
        inverse: MapFn,
    },
}

impl AdditiveGenerator {
    pub fn yager(p: f64) -> Result<Self> {
        positive_exponent("yager", p)?;
        Ok(AdditiveGenerator::Yager(p))
    }

    pub fn aczel_alsina(p: f64) -> Result<Self> {
        positive_exponent("aczel-alsina", p)?;
        Ok(AdditiveGenerator::AczelAlsina(p))
    }

    pub fn composed(base: AdditiveGenerator, phi: MonotoneBijection) -> Self {
        if phi.is_identity() {
            return base;
        }
        AdditiveGenerator::Composed {
            base: Box::new(base),
            phi,
        }
    }

    /// A generator from a closed-form pair. `inverse` only needs to be valid on
    /// `[0, t(0)]`; arguments above `t(0)` are clamped before the call.
    pub fn custom(
        name: impl Into<String>,
        forward: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let t = AdditiveGenerator::Custom {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
        };
        t.validate()?;
        Ok(t)
    }

    /// `t(1) = 0`, strictly decreasing on a 1e-3 grid, and
    /// `t⁻¹(min(t(0), t(x)))` round-trips within 1e-10.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| {
            Err(FuzzError::InvalidSpec(format!(
                "generator {}: {msg}",
                self.name()
            )))
        };
        if self.eval(1.0).abs() > 1e-12 {
            return bad(format!("t(1) must be 0, got {}", self.eval(1.0)));
        }
        let mut prev = self.eval(0.0);
        if prev.is_nan() || prev < 0.0 {
            return bad("t(0) must lie in (0, +inf]".into());
        }
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            let tx = self.eval(x);
            if i > 0 && (tx.is_nan() || tx >= prev) {
                return bad(format!("not strictly decreasing near x = {x}"));
            }
            prev = tx;
            if x > 0.0 || tx.is_finite() {
                let back = self.pseudo_inverse(tx);
                if (back - x).abs() > 1e-10 {
                    return bad(format!(
                        "inverse does not round-trip at x = {x} (got {back})"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        match self {
            AdditiveGenerator::NegLog => "neglog".into(),
            AdditiveGenerator::OneMinus => "one-minus".into(),
            AdditiveGenerator::Yager(p) => format!("yager:{p}"),
            AdditiveGenerator::AczelAlsina(p) => format!("aczel-alsina:{p}"),
            AdditiveGenerator::Composed { base, phi } => format!("{}∘{}", base.name(), phi.name()),
            AdditiveGenerator::Custom { name, .. } => name.clone(),
        }
    }

    /// `t(x)`, possibly `+∞` at `x = 0`.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            AdditiveGenerator::NegLog => -x.ln(),
            AdditiveGenerator::OneMinus => 1.0 - x,
            AdditiveGenerator::Yager(p) => (1.0 - x).powf(*p),
            AdditiveGenerator::AczelAlsina(p) => (-x.ln()).powf(*p),
            AdditiveGenerator::Composed { base, phi } => base.eval(phi.forward(x)),
            AdditiveGenerator::Custom { forward, .. } => forward(x),
        }
    }

    /// `t(0)`; `+∞` for strict generators.
    pub fn zero_value(&self) -> f64 {
        self.eval(0.0)
    }

    pub fn is_strict(&self) -> bool {
        self.zero_value().is_infinite()
    }

    /// Pseudo-inverse `t⁽⁻¹⁾(v) = t⁻¹(min(t(0), v))` for `v ∈ [0, ∞]`.
    #[inline]
    pub fn pseudo_inverse(&self, v: f64) -> f64 {
        let v = if v < 0.0 {
            0.0
        } else {
            v.min(self.zero_value())
        };
        let x = match self {
            AdditiveGenerator::NegLog => (-v).exp(),
            AdditiveGenerator::OneMinus => 1.0 - v,
            AdditiveGenerator::Yager(p) => 1.0 - v.powf(1.0 / *p),
            AdditiveGenerator::AczelAlsina(p) => (-v.powf(1.0 / *p)).exp(),
            AdditiveGenerator::Composed { base, phi } => phi.inverse(base.pseudo_inverse(v)),
            AdditiveGenerator::Custom { inverse, .. } => {
                if v.is_infinite() {
                    0.0
                } else {
                    inverse(v)
                }
            }
        };
        clamp_unit(x)
    }
}

fn positive_exponent(family: &str, p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 {
        Ok(())
    } else {
        Err(FuzzError::InvalidSpec(format!(
            "{family} generator needs a finite exponent > 0, got {p}"
        )))
    }
}

impl PartialEq for AdditiveGenerator {
    fn eq(&self, other: &Self) -> bool {
        use AdditiveGenerator::*;
        match (self, other) {
            (NegLog, NegLog) | (OneMinus, OneMinus) => true,
            (Yager(a), Yager(b)) | (AczelAlsina(a), AczelAlsina(b)) => a == b,
            (Composed { base: b1, phi: p1 }, Composed { base: b2, phi: p2 }) => {
                b1 == b2 && p1 == p2
            }
            (
                Custom {
                    forward: f1,
                    inverse: i1,
                    ..
                },
                Custom {
                    forward: f2,
                    inverse: i2,
                    ..
                },
            ) => Arc::ptr_eq(f1, f2) && Arc::ptr_eq(i1, i2),
            _ => false,
        }
    }
}

impl fmt::Debug for AdditiveGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditiveGenerator({})", self.name())
    }
}
