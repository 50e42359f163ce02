//! Scalar fuzzy-logic operators on `[0, 1]`.

mod bijection;
mod copula;
mod generator;
mod implication;
mod negation;
mod tnorm;
mod unit;

pub use bijection::{MapFn, MonotoneBijection};
pub use copula::{check_copula_axioms, Copula};
pub use generator::AdditiveGenerator;
pub use implication::{
    check_implication_axioms, check_op_property, check_residual_adjunction, GGenerator,
    Implication, ImplicationAxiomViolation, OpCheck, DEFAULT_GRID_STEP, DEFAULT_GRID_TOL,
};
pub use negation::Negation;
pub(crate) use tnorm::lukasiewicz;
pub use tnorm::{check_tnorm_axioms, AxiomViolation, TConorm, TNorm, TNormClass};
pub(crate) use unit::clamp_unit;
pub use unit::{unit_grid, UnitValue};
