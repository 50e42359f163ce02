use super::copula::Copula;
use super::generator::AdditiveGenerator;
use super::negation::Negation;
use super::tnorm::{TConorm, TNorm};
use super::unit::{clamp_unit, unit_grid, UnitValue};
use crate::error::{FuzzError, Result};

/// Default resolution and tolerance of the grid-based property checks.
pub const DEFAULT_GRID_STEP: f64 = 0.05;
pub const DEFAULT_GRID_TOL: f64 = 1e-12;

/// Generator `g: [0,1] → [0,∞]` of a g-implication, strictly increasing with
/// `g(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GGenerator {
    /// `g(x) = x^p`, `g(1) = 1`. With `p = 1` the implication is Goguen's.
    Power(f64),
    /// `g(x) = -ln(1 - x)`, `g(1) = ∞`.
    NegLogComplement,
}

impl GGenerator {
    pub fn power(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(FuzzError::InvalidSpec(format!(
                "g-generator power needs a finite exponent > 0, got {p}"
            )));
        }
        Ok(GGenerator::Power(p))
    }

    pub fn name(&self) -> String {
        match self {
            GGenerator::Power(p) => format!("power:{p}"),
            GGenerator::NegLogComplement => "neglog-complement".into(),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            GGenerator::Power(p) => x.powf(*p),
            GGenerator::NegLogComplement => -(-x).ln_1p(),
        }
    }

    pub fn at_one(&self) -> f64 {
        self.eval(1.0)
    }

    /// Extended inverse: `g⁻¹(v)` for `v ≤ g(1)`, else 1.
    #[inline]
    pub fn extended_inverse(&self, v: f64) -> f64 {
        if v > self.at_one() {
            return 1.0;
        }
        let x = match self {
            GGenerator::Power(p) => v.powf(1.0 / *p),
            GGenerator::NegLogComplement => -(-v).exp_m1(),
        };
        clamp_unit(x)
    }
}

/// A fuzzy implication from one of seven families.
#[derive(Debug, Clone, PartialEq)]
pub enum Implication {
    /// `I(x, y) = S(N(x), y)`.
    Sn { s: TConorm, n: Negation },
    /// `I_T(x, y) = sup{z : T(x, z) ≤ y}` for a left-continuous `T`.
    Residual(TNorm),
    /// `I(x, y) = S(N(x), T(x, y))` with `T ∈ {min, product}`.
    Ql { n: Negation, t: TNorm, s: TConorm },
    /// T-power implication: 1 if `x ≤ y`, else `t(x) / t(y)`.
    TPower(AdditiveGenerator),
    /// `I_g(x, y) = g⁽⁻¹⁾(g(y) / x)` with `I_g(0, y) = 1`.
    G(GGenerator),
    /// `I_C(x, y) = C(x, y) / x`, `I_C(0, y) = 1`.
    Probabilistic(Copula),
    /// `Ĩ_C(x, y) = C(x, y) - x + 1`.
    ProbabilisticS(Copula),
}

/// Result of an ordering-property check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpCheck {
    pub satisfied: bool,
    pub violation: Option<(f64, f64)>,
}

impl Implication {
    pub fn sn(s: TConorm, n: Negation) -> Result<Self> {
        Implication::Sn { s, n }.validated()
    }

    pub fn residual(t: TNorm) -> Result<Self> {
        if !t.is_left_continuous() {
            return Err(FuzzError::InvalidSpec(format!(
                "residual implication needs a left-continuous t-norm; {} is not",
                t.name()
            )));
        }
        Implication::Residual(t).validated()
    }

    pub fn ql(n: Negation, t: TNorm, s: TConorm) -> Result<Self> {
        if !matches!(t, TNorm::Minimum | TNorm::Product) {
            return Err(FuzzError::InvalidSpec(format!(
                "QL implications are restricted to T in {{minimum, product}}, got {}",
                t.name()
            )));
        }
        Implication::Ql { n, t, s }.validated()
    }

    pub fn t_power(t: AdditiveGenerator) -> Result<Self> {
        t.validate()?;
        Implication::TPower(t).validated()
    }

    pub fn g(g: GGenerator) -> Result<Self> {
        Implication::G(g).validated()
    }

    pub fn probabilistic(c: Copula) -> Result<Self> {
        Implication::Probabilistic(c).validated()
    }

    pub fn probabilistic_s(c: Copula) -> Result<Self> {
        Implication::ProbabilisticS(c).validated()
    }

    fn validated(self) -> Result<Self> {
        if let Some(v) = check_implication_axioms(&self, DEFAULT_GRID_STEP, DEFAULT_GRID_TOL)? {
            return Err(FuzzError::InvalidSpec(format!(
                "{} is not a fuzzy implication: {} fails at {:?}",
                self.name(),
                v.axiom,
                v.args
            )));
        }
        Ok(self)
    }

    pub fn name(&self) -> String {
        match self {
            Implication::Sn { s, n } => format!("sn:{}:{}", s.name(), n.name()),
            Implication::Residual(t) => format!("residual:{}", t.name()),
            Implication::Ql { n, t, s } => format!("ql:{}:{}:{}", n.name(), t.name(), s.name()),
            Implication::TPower(t) => format!("t-power:{}", t.name()),
            Implication::G(g) => format!("g:{}", g.name()),
            Implication::Probabilistic(c) => format!("probabilistic:{}", c.name()),
            Implication::ProbabilisticS(c) => format!("probabilistic-s:{}", c.name()),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Implication::Sn { s, n } => s.eval(n.eval(x), y),
            Implication::Residual(t) => t.residuum(x, y),
            Implication::Ql { n, t, s } => s.eval(n.eval(x), t.eval(x, y)),
            Implication::TPower(t) => {
                if x <= y {
                    1.0
                } else {
                    // y < x ≤ 1 so t(y) > 0; t(y) = ∞ gives 0
                    clamp_unit(t.eval(x) / t.eval(y))
                }
            }
            Implication::G(g) => {
                if x == 0.0 {
                    1.0
                } else {
                    g.extended_inverse(g.eval(y) / x)
                }
            }
            Implication::Probabilistic(c) => {
                if x == 0.0 {
                    1.0
                } else {
                    clamp_unit(c.eval(x, y) / x)
                }
            }
            Implication::ProbabilisticS(c) => clamp_unit(c.eval(x, y) - x + 1.0),
        }
    }

    pub fn apply(&self, x: UnitValue, y: UnitValue) -> UnitValue {
        UnitValue::saturating(self.eval(x.get(), y.get())).unwrap_or(UnitValue::ZERO)
    }

    /// Ordering property on the default grid.
    pub fn satisfies_op(&self) -> bool {
        check_op_property(self, DEFAULT_GRID_STEP)
            .map(|c| c.satisfied)
            .unwrap_or(false)
    }

    /// Fails with an explanation when OP does not hold on the default grid.
    pub fn require_op(&self) -> Result<()> {
        let check = check_op_property(self, DEFAULT_GRID_STEP)?;
        match check.violation {
            None => Ok(()),
            Some((x, y)) => Err(FuzzError::LacksOrderingProperty {
                name: self.name(),
                x,
                y,
                value: self.eval(x, y),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImplicationAxiomViolation {
    pub axiom: &'static str,
    pub args: Vec<f64>,
}

/// Grid falsification of I1–I5: antitone in the first argument, monotone in
/// the second, `I(0,0) = I(1,1) = 1`, `I(1,0) = 0`.
pub fn check_implication_axioms(
    imp: &Implication,
    step: f64,
    tol: f64,
) -> Result<Option<ImplicationAxiomViolation>> {
    let g = unit_grid(step)?;
    let fail = |axiom, args: &[f64]| {
        Ok(Some(ImplicationAxiomViolation {
            axiom,
            args: args.to_vec(),
        }))
    };
    if (imp.eval(0.0, 0.0) - 1.0).abs() > tol {
        return fail("I3", &[0.0, 0.0]);
    }
    if (imp.eval(1.0, 1.0) - 1.0).abs() > tol {
        return fail("I4", &[1.0, 1.0]);
    }
    if imp.eval(1.0, 0.0).abs() > tol {
        return fail("I5", &[1.0, 0.0]);
    }
    for w in g.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for &z in &g {
            if imp.eval(lo, z) + tol < imp.eval(hi, z) {
                return fail("I1", &[lo, hi, z]);
            }
            if imp.eval(z, lo) > imp.eval(z, hi) + tol {
                return fail("I2", &[z, lo, hi]);
            }
        }
    }
    Ok(None)
}

/// OP: `I(x, y) = 1` (within 1e-12) exactly when `x ≤ y`, checked on a grid
/// with `0 < step ≤ 0.1`.
pub fn check_op_property(imp: &Implication, step: f64) -> Result<OpCheck> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(FuzzError::InvalidParameter(format!(
            "OP grid step must lie in (0, 0.1], got {step}"
        )));
    }
    let g = unit_grid(step)?;
    for (i, &x) in g.iter().enumerate() {
        for (j, &y) in g.iter().enumerate() {
            let is_one = (imp.eval(x, y) - 1.0).abs() <= DEFAULT_GRID_TOL;
            if is_one != (i <= j) {
                return Ok(OpCheck {
                    satisfied: false,
                    violation: Some((x, y)),
                });
            }
        }
    }
    Ok(OpCheck {
        satisfied: true,
        violation: None,
    })
}

/// Residual adjunction `y ≤ I_T(x, z) ⟺ T(x, y) ≤ z` on a grid; returns the
/// first violating `(x, y, z)`.
pub fn check_residual_adjunction(
    t: &TNorm,
    step: f64,
    tol: f64,
) -> Result<Option<(f64, f64, f64)>> {
    let g = unit_grid(step)?;
    for &x in &g {
        for &y in &g {
            for &z in &g {
                let left = y <= t.residuum(x, z) + tol;
                let right = t.eval(x, y) <= z + tol;
                if left != right {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonotoneBijection;

    fn op_families() -> Vec<Implication> {
        let sq = MonotoneBijection::power(2.0).unwrap();
        vec![
            Implication::residual(TNorm::Product).unwrap(),
            Implication::residual(TNorm::Minimum).unwrap(),
            Implication::residual(TNorm::Lukasiewicz).unwrap(),
            Implication::residual(TNorm::phi_transform(TNorm::Lukasiewicz, sq.clone())).unwrap(),
            Implication::residual(
                TNorm::archimedean(AdditiveGenerator::yager(2.0).unwrap()).unwrap(),
            )
            .unwrap(),
            Implication::sn(TConorm::Lukasiewicz, Negation::Standard).unwrap(),
            Implication::sn(
                TConorm::phi_transform(TConorm::Lukasiewicz, sq.clone()),
                Negation::phi(sq),
            )
            .unwrap(),
            Implication::ql(Negation::Standard, TNorm::Minimum, TConorm::Lukasiewicz).unwrap(),
            Implication::ql(
                Negation::power_complement(2.0).unwrap(),
                TNorm::Product,
                TConorm::Lukasiewicz,
            )
            .unwrap(),
            Implication::t_power(AdditiveGenerator::NegLog).unwrap(),
            Implication::t_power(AdditiveGenerator::OneMinus).unwrap(),
            Implication::g(GGenerator::Power(1.0)).unwrap(),
            Implication::probabilistic(Copula::Minimum).unwrap(),
            Implication::probabilistic_s(Copula::Minimum).unwrap(),
        ]
    }

    #[test]
    fn residual_product_example() {
        let i = Implication::residual(TNorm::Product).unwrap();
        assert!((i.eval(0.6, 0.3) - 0.5).abs() < 1e-15);
        assert_eq!(i.eval(0.0, 0.0), 1.0);
        assert_eq!(i.eval(0.0, 0.7), 1.0);
    }

    #[test]
    fn sn_lukasiewicz_example() {
        let i = Implication::sn(TConorm::Lukasiewicz, Negation::Standard).unwrap();
        assert!((i.eval(0.6, 0.2) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn every_family_maps_origin_to_one() {
        for i in op_families() {
            assert_eq!(i.eval(0.0, 0.0), 1.0, "{}", i.name());
        }
    }

    #[test]
    fn op_holds_for_the_op_families() {
        for i in op_families() {
            let c = check_op_property(&i, 0.05).unwrap();
            assert!(c.satisfied, "{} fails OP at {:?}", i.name(), c.violation);
        }
    }

    #[test]
    fn probabilistic_s_op_depends_on_copula() {
        let min = Implication::probabilistic_s(Copula::Minimum).unwrap();
        assert!(check_op_property(&min, 0.01).unwrap().satisfied);

        let prod = Implication::probabilistic_s(Copula::Product).unwrap();
        let c = check_op_property(&prod, 0.05).unwrap();
        assert!(!c.satisfied);
        let (x, y) = c.violation.unwrap();
        assert!(x <= y);
        // direct evaluation at the pair quoted in the docs
        assert!((prod.eval(0.5, 0.6) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn non_op_families_are_still_implications() {
        let kd = Implication::sn(TConorm::Maximum, Negation::Standard).unwrap();
        assert!(!kd.satisfies_op());
        let reich = Implication::probabilistic(Copula::Product).unwrap();
        assert!(!reich.satisfies_op());
        let yager = Implication::g(GGenerator::NegLogComplement).unwrap();
        assert!(!yager.satisfies_op());
        assert!(matches!(
            kd.require_op(),
            Err(FuzzError::LacksOrderingProperty { .. })
        ));
    }

    #[test]
    fn w_copula_probabilistic_is_rejected() {
        // C_W(x, y) / x increases in x, breaking I1
        let err = Implication::probabilistic(Copula::Lukasiewicz).unwrap_err();
        assert!(err.to_string().contains("I1"), "{err}");
    }

    #[test]
    fn drastic_residual_is_rejected() {
        assert!(Implication::residual(TNorm::Drastic).is_err());
        assert!(
            Implication::ql(Negation::Standard, TNorm::Lukasiewicz, TConorm::Lukasiewicz).is_err()
        );
    }

    #[test]
    fn residuals_of_general_archimedean_match_closed_forms() {
        let by_gen =
            Implication::residual(TNorm::archimedean(AdditiveGenerator::NegLog).unwrap()).unwrap();
        let goguen = Implication::residual(TNorm::Product).unwrap();
        let by_gen_l =
            Implication::residual(TNorm::archimedean(AdditiveGenerator::OneMinus).unwrap())
                .unwrap();
        let luk = Implication::residual(TNorm::Lukasiewicz).unwrap();
        for x in unit_grid(0.05).unwrap() {
            for y in unit_grid(0.05).unwrap() {
                assert!((by_gen.eval(x, y) - goguen.eval(x, y)).abs() < 1e-12);
                assert!((by_gen_l.eval(x, y) - luk.eval(x, y)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn t_power_closed_form() {
        let i = Implication::t_power(AdditiveGenerator::OneMinus).unwrap();
        // (1 - 0.8) / (1 - 0.4)
        assert!((i.eval(0.8, 0.4) - 0.2 / 0.6).abs() < 1e-15);
        assert_eq!(i.eval(0.3, 0.3), 1.0);
        let strict = Implication::t_power(AdditiveGenerator::NegLog).unwrap();
        assert_eq!(strict.eval(0.5, 0.0), 0.0);
    }

    #[test]
    fn g_implication_with_identity_is_goguen() {
        let g = Implication::g(GGenerator::Power(1.0)).unwrap();
        let goguen = Implication::residual(TNorm::Product).unwrap();
        for x in unit_grid(0.05).unwrap() {
            for y in unit_grid(0.05).unwrap() {
                assert!(
                    (g.eval(x, y) - goguen.eval(x, y)).abs() < 1e-12,
                    "({x},{y})"
                );
            }
        }
    }

    #[test]
    fn adjunction_holds_for_left_continuous_families() {
        let sq = MonotoneBijection::power(2.0).unwrap();
        for t in [
            TNorm::Minimum,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::phi_transform(TNorm::Product, sq),
            TNorm::archimedean(AdditiveGenerator::aczel_alsina(2.0).unwrap()).unwrap(),
        ] {
            assert_eq!(
                check_residual_adjunction(&t, 0.05, 1e-12).unwrap(),
                None,
                "{}",
                t.name()
            );
        }
    }

    #[test]
    fn op_grid_step_is_bounded() {
        let i = Implication::residual(TNorm::Product).unwrap();
        assert!(check_op_property(&i, 0.2).is_err());
        assert!(check_op_property(&i, 0.0).is_err());
    }
}
