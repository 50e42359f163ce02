//! Pointwise characterisations of `I(c, r) ≥ ε` for each implication family.
//!
//! For an OP implication `I`, a relation is ε-T-transitive exactly when every
//! triple satisfies `I(T(R(x,y), R(y,z)), R(x,z)) ≥ ε`. Each family turns this
//! into an explicit upper bound on the composed value `c` in terms of the
//! direct value `r`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{
    unit_grid, AdditiveGenerator, Copula, GGenerator, Implication, MonotoneBijection, Negation,
    TNorm,
};
use crate::error::{FuzzError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionFamily {
    Sn,
    Residual,
    QlMin,
    QlProduct,
    TPower,
    G,
    Probabilistic,
    ProbabilisticS,
}

impl ConditionFamily {
    pub const ALL: [ConditionFamily; 8] = [
        ConditionFamily::Sn,
        ConditionFamily::Residual,
        ConditionFamily::QlMin,
        ConditionFamily::QlProduct,
        ConditionFamily::TPower,
        ConditionFamily::G,
        ConditionFamily::Probabilistic,
        ConditionFamily::ProbabilisticS,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ConditionFamily::Sn => "sn",
            ConditionFamily::Residual => "residual",
            ConditionFamily::QlMin => "ql-min",
            ConditionFamily::QlProduct => "ql-product",
            ConditionFamily::TPower => "t-power",
            ConditionFamily::G => "g",
            ConditionFamily::Probabilistic => "probabilistic",
            ConditionFamily::ProbabilisticS => "probabilistic-s",
        }
    }

    /// The family an implication belongs to, by construction.
    pub fn of(imp: &Implication) -> ConditionFamily {
        match imp {
            Implication::Sn { .. } => ConditionFamily::Sn,
            Implication::Residual(_) => ConditionFamily::Residual,
            Implication::Ql {
                t: TNorm::Product, ..
            } => ConditionFamily::QlProduct,
            Implication::Ql { .. } => ConditionFamily::QlMin,
            Implication::TPower(_) => ConditionFamily::TPower,
            Implication::G(_) => ConditionFamily::G,
            Implication::Probabilistic(_) => ConditionFamily::Probabilistic,
            Implication::ProbabilisticS(_) => ConditionFamily::ProbabilisticS,
        }
    }
}

impl fmt::Display for ConditionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionFamily {
    type Err = FuzzError;

    fn from_str(s: &str) -> Result<Self> {
        ConditionFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ConditionFamily::ALL.iter().map(|f| f.name()).collect();
                FuzzError::InvalidSpec(format!(
                    "unknown family '{s}'; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Sn { phi: MonotoneBijection },
    Residual { t: TNorm },
    QlMin { phi: MonotoneBijection, n: Negation },
    QlProduct,
    TPower { t: AdditiveGenerator },
    G { g: GGenerator },
    Probabilistic,
    ProbabilisticS,
}

/// The inequality equivalent to `I(c, r) ≥ ε` for one implication.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonCondition {
    family: ConditionFamily,
    epsilon: f64,
    kind: Kind,
}

fn mismatch(family: ConditionFamily, imp: &Implication, need: &str) -> FuzzError {
    FuzzError::FamilyMismatch(format!(
        "the {family} condition needs {need}; got {}",
        imp.name()
    ))
}

impl EpsilonCondition {
    /// The condition of the implication's own family.
    pub fn for_implication(imp: &Implication, epsilon: f64) -> Result<Self> {
        EpsilonCondition::new(ConditionFamily::of(imp), imp, epsilon)
    }

    pub fn new(family: ConditionFamily, imp: &Implication, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(FuzzError::OutOfUnitRange(epsilon));
        }
        if ConditionFamily::of(imp) != family {
            return Err(FuzzError::FamilyMismatch(format!(
                "implication {} belongs to the {} family, not {family}",
                imp.name(),
                ConditionFamily::of(imp)
            )));
        }
        let kind = match imp {
            Implication::Sn { s, n } => {
                let phi = s
                    .lukasiewicz_phi()
                    .filter(|phi| n.phi_of().as_ref() == Some(phi))
                    .ok_or_else(|| {
                        mismatch(family, imp, "S = (S_L)_φ with N = N_φ for the same φ")
                    })?;
                Kind::Sn { phi }
            }
            Implication::Residual(t) => Kind::Residual { t: t.clone() },
            Implication::Ql {
                n,
                t: TNorm::Minimum,
                s,
            } => {
                let phi = s
                    .lukasiewicz_phi()
                    .ok_or_else(|| mismatch(family, imp, "S = (S_L)_φ"))?;
                let n_phi = Negation::phi(phi.clone());
                let dominated = unit_grid(0.05)?
                    .into_iter()
                    .all(|x| n.eval(x) + 1e-12 >= n_phi.eval(x));
                if !dominated {
                    return Err(mismatch(family, imp, "N(x) ≥ N_φ(x)"));
                }
                Kind::QlMin { phi, n: n.clone() }
            }
            Implication::Ql { n, s, .. } => {
                let pc = Negation::power_complement(2.0)?;
                if *n != pc || *s != crate::algebra::TConorm::Lukasiewicz {
                    return Err(mismatch(family, imp, "N(x) = 1 - x^2 and S = S_L"));
                }
                Kind::QlProduct
            }
            Implication::TPower(t) => Kind::TPower { t: t.clone() },
            Implication::G(g) => Kind::G { g: *g },
            Implication::Probabilistic(c) => {
                if *c != Copula::Minimum {
                    return Err(mismatch(family, imp, "the minimum copula"));
                }
                Kind::Probabilistic
            }
            Implication::ProbabilisticS(c) => {
                if *c != Copula::Minimum {
                    return Err(mismatch(family, imp, "the minimum copula"));
                }
                Kind::ProbabilisticS
            }
        };
        Ok(EpsilonCondition {
            family,
            epsilon,
            kind,
        })
    }

    pub fn family(&self) -> ConditionFamily {
        self.family
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Largest composed value `c` with `I(c, r) ≥ ε`.
    pub fn bound(&self, r: f64) -> f64 {
        let eps = self.epsilon;
        let b = match &self.kind {
            Kind::Sn { phi } => phi.inverse((1.0 + phi.forward(r) - phi.forward(eps)).min(1.0)),
            Kind::Residual { t } => t.residuum(eps, r),
            Kind::QlMin { phi, n } => {
                let inner = phi.inverse((phi.forward(eps) - phi.forward(r)).max(0.0));
                r.max(n.inverse(inner))
            }
            Kind::QlProduct => ((r + (r * r + 4.0 * (1.0 - eps)).sqrt()) / 2.0).min(1.0),
            Kind::TPower { t } => {
                if eps == 0.0 {
                    1.0
                } else {
                    t.pseudo_inverse(eps * t.eval(r))
                }
            }
            Kind::G { g } => {
                let ge = g.eval(eps);
                if eps == 0.0 {
                    1.0
                } else if ge.is_infinite() {
                    if r == 1.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    (g.eval(r) / ge).min(1.0)
                }
            }
            Kind::Probabilistic => {
                if eps == 0.0 {
                    1.0
                } else {
                    (r / eps).min(1.0)
                }
            }
            Kind::ProbabilisticS => (1.0 - eps + r).min(1.0),
        };
        b.clamp(0.0, 1.0)
    }

    /// Smallest direct value `r` with `a ≤ bound(r)`.
    pub fn least_direct(&self, a: f64) -> f64 {
        let eps = self.epsilon;
        let r = match &self.kind {
            Kind::Sn { phi } => phi.inverse((phi.forward(a) + phi.forward(eps) - 1.0).max(0.0)),
            Kind::Residual { t } => t.eval(a, eps),
            Kind::QlMin { phi, n } => {
                let via_n = phi.inverse((phi.forward(eps) - phi.forward(n.eval(a))).max(0.0));
                a.min(via_n)
            }
            Kind::QlProduct => {
                // M(a) = max(0, a + (ε - 1) / a), taken as 0 at a = 0
                if a == 0.0 {
                    0.0
                } else {
                    (a + (eps - 1.0) / a).max(0.0)
                }
            }
            Kind::TPower { t } => {
                if eps == 0.0 {
                    0.0
                } else {
                    t.pseudo_inverse(t.eval(a) / eps)
                }
            }
            Kind::G { g } => {
                let ge = g.eval(eps);
                if eps == 0.0 || a == 0.0 {
                    0.0
                } else if ge.is_infinite() {
                    1.0
                } else {
                    g.extended_inverse(a * ge)
                }
            }
            Kind::Probabilistic => eps * a,
            Kind::ProbabilisticS => (a + eps - 1.0).max(0.0),
        };
        r.clamp(0.0, 1.0)
    }

    /// Both sides of the inequality for composed value `c` and direct value
    /// `r`; the condition holds when `lhs ≤ rhs`. The residual family is
    /// stated as `T'(ε, c) ≤ r`, the others as `c ≤ bound(r)`.
    pub fn sides(&self, c: f64, r: f64) -> (f64, f64) {
        match &self.kind {
            Kind::Residual { t } => (t.eval(self.epsilon, c), r),
            _ => (c, self.bound(r)),
        }
    }

    pub fn holds(&self, c: f64, r: f64, tol: f64) -> bool {
        let (lhs, rhs) = self.sides(c, r);
        lhs <= rhs + tol
    }
}
