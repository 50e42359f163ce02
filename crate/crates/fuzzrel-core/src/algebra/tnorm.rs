use super::bijection::MonotoneBijection;
use super::generator::AdditiveGenerator;
use super::unit::{clamp_unit, unit_grid, UnitValue};
use crate::error::{FuzzError, Result};

/// A triangular norm: associative, commutative, monotone, neutral element 1.
#[derive(Debug, Clone, PartialEq)]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
    /// `T_φ(x, y) = φ⁻¹(T(φ(x), φ(y)))`.
    PhiTransform {
        base: Box<TNorm>,
        phi: MonotoneBijection,
    },
    /// `T(x, y) = t⁻¹(min(t(0), t(x) + t(y)))`.
    Archimedean(AdditiveGenerator),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TNormClass {
    Strict,
    Nilpotent,
    Neither,
}

impl TNorm {
    pub fn phi_transform(base: TNorm, phi: MonotoneBijection) -> TNorm {
        if phi.is_identity() {
            return base;
        }
        TNorm::PhiTransform {
            base: Box::new(base),
            phi,
        }
    }

    pub fn archimedean(t: AdditiveGenerator) -> Result<TNorm> {
        t.validate()?;
        Ok(TNorm::Archimedean(t))
    }

    pub fn name(&self) -> String {
        match self {
            TNorm::Minimum => "minimum".into(),
            TNorm::Product => "product".into(),
            TNorm::Lukasiewicz => "lukasiewicz".into(),
            TNorm::Drastic => "drastic".into(),
            TNorm::PhiTransform { base, phi } => format!("phi:{}:{}", phi.name(), base.name()),
            TNorm::Archimedean(t) => format!("archimedean:{}", t.name()),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            TNorm::Minimum => x.min(y),
            TNorm::Product => x * y,
            TNorm::Lukasiewicz => lukasiewicz(x, y),
            TNorm::Drastic => {
                if x == 1.0 {
                    y
                } else if y == 1.0 {
                    x
                } else {
                    0.0
                }
            }
            TNorm::PhiTransform { base, phi } => {
                phi.inverse(base.eval(phi.forward(x), phi.forward(y)))
            }
            TNorm::Archimedean(t) => {
                if x == 1.0 {
                    y
                } else if y == 1.0 {
                    x
                } else {
                    t.pseudo_inverse(t.eval(x) + t.eval(y))
                }
            }
        }
    }

    pub fn apply(&self, x: UnitValue, y: UnitValue) -> UnitValue {
        UnitValue::saturating(self.eval(x.get(), y.get())).unwrap_or(UnitValue::ZERO)
    }

    /// n-ary extension by left fold, `T(T(x1, …, x_{n-1}), x_n)`.
    pub fn eval_n(&self, xs: &[f64]) -> Result<f64> {
        let (first, rest) = xs.split_first().ok_or(FuzzError::EmptyArguments)?;
        Ok(rest.iter().fold(*first, |acc, &x| self.eval(acc, x)))
    }

    pub fn classify(&self) -> TNormClass {
        match self {
            TNorm::Minimum | TNorm::Drastic => TNormClass::Neither,
            TNorm::Product => TNormClass::Strict,
            TNorm::Lukasiewicz => TNormClass::Nilpotent,
            TNorm::PhiTransform { base, .. } => base.classify(),
            TNorm::Archimedean(t) => {
                if t.is_strict() {
                    TNormClass::Strict
                } else {
                    TNormClass::Nilpotent
                }
            }
        }
    }

    pub fn is_left_continuous(&self) -> bool {
        match self {
            TNorm::Drastic => false,
            TNorm::PhiTransform { base, .. } => base.is_left_continuous(),
            _ => true,
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.is_left_continuous()
    }

    /// The additive generator when the t-norm is continuous Archimedean.
    pub fn additive_generator(&self) -> Option<AdditiveGenerator> {
        match self {
            TNorm::Product => Some(AdditiveGenerator::NegLog),
            TNorm::Lukasiewicz => Some(AdditiveGenerator::OneMinus),
            TNorm::Archimedean(t) => Some(t.clone()),
            TNorm::PhiTransform { base, phi } => base
                .additive_generator()
                .map(|t| AdditiveGenerator::composed(t, phi.clone())),
            TNorm::Minimum | TNorm::Drastic => None,
        }
    }

    /// When this is `(T_L)_φ`, the bijection `φ`.
    pub fn lukasiewicz_phi(&self) -> Option<MonotoneBijection> {
        match self {
            TNorm::Lukasiewicz => Some(MonotoneBijection::Identity),
            TNorm::PhiTransform { base, phi } if **base == TNorm::Lukasiewicz => Some(phi.clone()),
            _ => None,
        }
    }

    /// Residual implication `sup{z : T(x, z) ≤ y}` in closed form.
    /// Callers must ensure the t-norm is left-continuous.
    pub(crate) fn residuum(&self, x: f64, y: f64) -> f64 {
        if x <= y {
            return 1.0;
        }
        match self {
            TNorm::Minimum => y,
            TNorm::Product => y / x,
            TNorm::Lukasiewicz => (1.0 - x + y).min(1.0),
            TNorm::PhiTransform { base, phi } => {
                phi.inverse(base.residuum(phi.forward(x), phi.forward(y)))
            }
            TNorm::Archimedean(t) => t.pseudo_inverse((t.eval(y) - t.eval(x)).max(0.0)),
            TNorm::Drastic => {
                if x == 1.0 {
                    y
                } else {
                    1.0
                }
            }
        }
    }
}

#[inline]
pub(crate) fn lukasiewicz(x: f64, y: f64) -> f64 {
    if y == 1.0 {
        x
    } else if x == 1.0 {
        y
    } else {
        (x + y - 1.0).max(0.0)
    }
}

/// A triangular conorm: associative, commutative, monotone, neutral element 0.
#[derive(Debug, Clone, PartialEq)]
pub enum TConorm {
    Maximum,
    ProbabilisticSum,
    Lukasiewicz,
    Drastic,
    PhiTransform {
        base: Box<TConorm>,
        phi: MonotoneBijection,
    },
}

impl TConorm {
    pub fn phi_transform(base: TConorm, phi: MonotoneBijection) -> TConorm {
        if phi.is_identity() {
            return base;
        }
        TConorm::PhiTransform {
            base: Box::new(base),
            phi,
        }
    }

    pub fn name(&self) -> String {
        match self {
            TConorm::Maximum => "maximum".into(),
            TConorm::ProbabilisticSum => "probabilistic".into(),
            TConorm::Lukasiewicz => "lukasiewicz".into(),
            TConorm::Drastic => "drastic".into(),
            TConorm::PhiTransform { base, phi } => format!("phi:{}:{}", phi.name(), base.name()),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            TConorm::Maximum => x.max(y),
            TConorm::ProbabilisticSum => clamp_unit(x + y - x * y),
            TConorm::Lukasiewicz => (x + y).min(1.0),
            TConorm::Drastic => {
                if x == 0.0 {
                    y
                } else if y == 0.0 {
                    x
                } else {
                    1.0
                }
            }
            TConorm::PhiTransform { base, phi } => {
                phi.inverse(base.eval(phi.forward(x), phi.forward(y)))
            }
        }
    }

    pub fn eval_n(&self, xs: &[f64]) -> Result<f64> {
        let (first, rest) = xs.split_first().ok_or(FuzzError::EmptyArguments)?;
        Ok(rest.iter().fold(*first, |acc, &x| self.eval(acc, x)))
    }

    pub fn is_continuous(&self) -> bool {
        match self {
            TConorm::Drastic => false,
            TConorm::PhiTransform { base, .. } => base.is_continuous(),
            _ => true,
        }
    }

    /// When this is `(S_L)_φ`, the bijection `φ`.
    pub fn lukasiewicz_phi(&self) -> Option<MonotoneBijection> {
        match self {
            TConorm::Lukasiewicz => Some(MonotoneBijection::Identity),
            TConorm::PhiTransform { base, phi } if **base == TConorm::Lukasiewicz => {
                Some(phi.clone())
            }
            _ => None,
        }
    }
}

/// Which t-norm axiom failed on the grid, with the offending arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub args: Vec<f64>,
}

/// Grid falsification of commutativity, associativity, monotonicity and the
/// neutral element.
pub fn check_tnorm_axioms(t: &TNorm, step: f64, tol: f64) -> Result<Option<AxiomViolation>> {
    let g = unit_grid(step)?;
    let fail = |axiom, args: &[f64]| {
        Ok(Some(AxiomViolation {
            axiom,
            args: args.to_vec(),
        }))
    };
    for &x in &g {
        if (t.eval(x, 1.0) - x).abs() > tol || (t.eval(1.0, x) - x).abs() > tol {
            return fail("neutral element", &[x]);
        }
        for (j, &y) in g.iter().enumerate() {
            let v = t.eval(x, y);
            if (v - t.eval(y, x)).abs() > tol {
                return fail("commutativity", &[x, y]);
            }
            if let Some(&y2) = g.get(j + 1) {
                if t.eval(x, y2) + tol < v {
                    return fail("monotonicity", &[x, y, y2]);
                }
            }
            for &z in &g {
                if (t.eval(t.eval(x, y), z) - t.eval(x, t.eval(y, z))).abs() > tol {
                    return fail("associativity", &[x, y, z]);
                }
            }
        }
    }
    Ok(None)
}
