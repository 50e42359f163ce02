use std::fmt;

use crate::error::{FuzzError, Result};

/// A membership degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(FuzzError::NotANumber);
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(FuzzError::OutOfUnitRange(value));
        }
        Ok(UnitValue(value))
    }

    /// Clamps into `[0, 1]`; only NaN is rejected.
    pub fn saturating(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(FuzzError::NotANumber);
        }
        Ok(UnitValue(value.clamp(0.0, 1.0)))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for UnitValue {
    type Error = FuzzError;

    fn try_from(value: f64) -> Result<Self> {
        UnitValue::new(value)
    }
}

impl From<UnitValue> for f64 {
    fn from(value: UnitValue) -> f64 {
        value.0
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Clamp rounding noise back into the unit interval.
#[inline]
pub(crate) fn clamp_unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Evenly spaced points `0, step, 2*step, ..., 1`.
///
/// The count is `round(1 / step) + 1` and points are computed as `i / m`
/// so that both endpoints are exact.
pub fn unit_grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(FuzzError::InvalidParameter(format!(
            "grid step must lie in (0, 1], got {step}"
        )));
    }
    let m = (1.0 / step).round().max(1.0) as usize;
    Ok((0..=m).map(|i| i as f64 / m as f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nan_and_out_of_range() {
        assert_eq!(UnitValue::new(f64::NAN), Err(FuzzError::NotANumber));
        assert_eq!(UnitValue::new(1.2), Err(FuzzError::OutOfUnitRange(1.2)));
        assert_eq!(UnitValue::new(-0.0).unwrap().get(), 0.0);
        assert_eq!(UnitValue::saturating(1.5).unwrap(), UnitValue::ONE);
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = unit_grid(0.05).unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 1.0);
        assert!(unit_grid(0.0).is_err());
    }
}
