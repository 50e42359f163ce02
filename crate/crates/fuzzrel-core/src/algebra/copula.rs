use super::unit::unit_grid;
use crate::error::Result;

/// The three basic copulas: `Π(x,y)=xy`, `M(x,y)=min(x,y)` and
/// `W(x,y)=max(x+y-1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Copula {
    Product,
    Minimum,
    Lukasiewicz,
}

impl Copula {
    pub fn name(&self) -> &'static str {
        match self {
            Copula::Product => "product",
            Copula::Minimum => "min",
            Copula::Lukasiewicz => "lukasiewicz",
        }
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Copula::Product => x * y,
            Copula::Minimum => x.min(y),
            Copula::Lukasiewicz => (x + y - 1.0).max(0.0),
        }
    }
}

/// Groundedness, uniform margins and the 2-increasing property on a grid.
pub fn check_copula_axioms(c: Copula, step: f64, tol: f64) -> Result<bool> {
    let g = unit_grid(step)?;
    for &x in &g {
        if c.eval(x, 0.0).abs() > tol || c.eval(0.0, x).abs() > tol {
            return Ok(false);
        }
        if (c.eval(x, 1.0) - x).abs() > tol || (c.eval(1.0, x) - x).abs() > tol {
            return Ok(false);
        }
    }
    for w in g.windows(2) {
        for v in g.windows(2) {
            let (x1, x2, y1, y2) = (w[0], w[1], v[0], v[1]);
            let vol = c.eval(x2, y2) - c.eval(x2, y1) - c.eval(x1, y2) + c.eval(x1, y1);
            if vol < -tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_three_are_copulas() {
        for c in [Copula::Product, Copula::Minimum, Copula::Lukasiewicz] {
            assert!(check_copula_axioms(c, 0.05, 1e-12).unwrap(), "{}", c.name());
        }
    }
}
