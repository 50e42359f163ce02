//! Aggregation functions, pointwise aggregation of relations, and sampled
//! checks of whether an aggregator preserves ε-T-transitivity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{clamp_unit, unit_grid, Implication, TConorm, TNorm};
use crate::conditions::EpsilonCondition;
use crate::error::{FuzzError, Result};
use crate::relation::FuzzyRelation;
use crate::transitivity::transitivity_degree;

/// Inequalities are re-checked with this slack to absorb rounding.
pub const PRESERVATION_TOL: f64 = 1e-9;

/// Generator `f` of a weighted quasi-arithmetic mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WqamMap {
    /// Weighted arithmetic mean.
    Identity,
    /// Weighted geometric mean.
    Log,
    /// Weighted power mean, `p ≠ 0`.
    Power(f64),
}

impl WqamMap {
    pub fn name(&self) -> String {
        match self {
            WqamMap::Identity => "identity".into(),
            WqamMap::Log => "log".into(),
            WqamMap::Power(p) => format!("power:{p}"),
        }
    }

    #[inline]
    fn forward(&self, x: f64) -> f64 {
        match self {
            WqamMap::Identity => x,
            WqamMap::Log => x.ln(),
            WqamMap::Power(p) => x.powf(*p),
        }
    }

    #[inline]
    fn inverse(&self, v: f64) -> f64 {
        match self {
            WqamMap::Identity => v,
            WqamMap::Log => v.exp(),
            WqamMap::Power(p) => v.powf(1.0 / *p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AggregatorKind {
    Minimum,
    Maximum,
    TNorm(TNorm),
    TConorm(TConorm),
    /// `f⁻¹(Σ ωᵢ f(xᵢ))`.
    Wqam {
        f: WqamMap,
        weights: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregatorSpec {
    kind: AggregatorKind,
    arity: usize,
}

impl AggregatorSpec {
    pub fn minimum(arity: usize) -> Result<Self> {
        AggregatorSpec::new(AggregatorKind::Minimum, arity)
    }

    pub fn maximum(arity: usize) -> Result<Self> {
        AggregatorSpec::new(AggregatorKind::Maximum, arity)
    }

    pub fn tnorm(t: TNorm, arity: usize) -> Result<Self> {
        AggregatorSpec::new(AggregatorKind::TNorm(t), arity)
    }

    pub fn tconorm(s: TConorm, arity: usize) -> Result<Self> {
        AggregatorSpec::new(AggregatorKind::TConorm(s), arity)
    }

    /// Arity is the number of weights.
    pub fn wqam(f: WqamMap, weights: Vec<f64>) -> Result<Self> {
        if let WqamMap::Power(p) = f {
            if !(p.is_finite() && p != 0.0) {
                return Err(FuzzError::InvalidSpec(format!(
                    "power mean needs a finite exponent != 0, got {p}"
                )));
            }
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(FuzzError::InvalidSpec(format!(
                "weights must be nonnegative, got {weights:?}"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(FuzzError::InvalidSpec(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        let arity = weights.len();
        AggregatorSpec::new(AggregatorKind::Wqam { f, weights }, arity)
    }

    fn new(kind: AggregatorKind, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(FuzzError::InvalidSpec(
                "aggregator arity must be at least 1".into(),
            ));
        }
        let spec = AggregatorSpec { kind, arity };
        let zero = spec.eval(&vec![0.0; arity])?;
        let one = spec.eval(&vec![1.0; arity])?;
        if zero.abs() > 1e-12 || (one - 1.0).abs() > 1e-12 {
            return Err(FuzzError::InvalidSpec(format!(
                "{} violates G(0,...,0) = 0 or G(1,...,1) = 1",
                spec.name()
            )));
        }
        Ok(spec)
    }

    pub fn kind(&self) -> &AggregatorKind {
        &self.kind
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn name(&self) -> String {
        match &self.kind {
            AggregatorKind::Minimum => "min".into(),
            AggregatorKind::Maximum => "max".into(),
            AggregatorKind::TNorm(t) => format!("tnorm:{}", t.name()),
            AggregatorKind::TConorm(s) => format!("tconorm:{}", s.name()),
            AggregatorKind::Wqam { f, weights } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                format!("wqam:{}:{}", f.name(), w.join(","))
            }
        }
    }

    pub fn eval(&self, xs: &[f64]) -> Result<f64> {
        if xs.len() != self.arity {
            return Err(FuzzError::ArityMismatch {
                expected: self.arity,
                got: xs.len(),
            });
        }
        Ok(self.eval_unchecked(xs))
    }

    #[inline]
    fn eval_unchecked(&self, xs: &[f64]) -> f64 {
        match &self.kind {
            AggregatorKind::Minimum => xs.iter().copied().fold(1.0, f64::min),
            AggregatorKind::Maximum => xs.iter().copied().fold(0.0, f64::max),
            AggregatorKind::TNorm(t) => xs[1..].iter().fold(xs[0], |acc, &x| t.eval(acc, x)),
            AggregatorKind::TConorm(s) => xs[1..].iter().fold(xs[0], |acc, &x| s.eval(acc, x)),
            AggregatorKind::Wqam { f, weights } => {
                let s: f64 = xs
                    .iter()
                    .zip(weights)
                    .filter(|(_, w)| **w > 0.0)
                    .map(|(&x, &w)| w * f.forward(x))
                    .sum();
                clamp_unit(f.inverse(s))
            }
        }
    }
}

/// Boundary conditions and coordinatewise monotonicity on a grid with
/// `(1/step + 1)^arity` points. Returns a description of the first failure.
pub fn check_aggregator_axioms(
    spec: &AggregatorSpec,
    step: f64,
    tol: f64,
) -> Result<Option<String>> {
    let grid = unit_grid(step)?;
    let n = spec.arity;
    if spec.eval(&vec![0.0; n])?.abs() > tol {
        return Ok(Some("G(0,...,0) != 0".into()));
    }
    if (spec.eval(&vec![1.0; n])? - 1.0).abs() > tol {
        return Ok(Some("G(1,...,1) != 1".into()));
    }
    let m = grid.len();
    let total = m
        .checked_pow(n as u32)
        .ok_or_else(|| FuzzError::InvalidParameter("grid too large".into()))?;
    let mut xs = vec![0.0; n];
    for code in 0..total {
        let mut c = code;
        for x in xs.iter_mut() {
            *x = grid[c % m];
            c /= m;
        }
        let base = spec.eval_unchecked(&xs);
        for i in 0..n {
            let k = grid.iter().position(|&g| g == xs[i]).unwrap_or(0);
            if k + 1 < m {
                let mut up = xs.clone();
                up[i] = grid[k + 1];
                if spec.eval_unchecked(&up) + tol < base {
                    return Ok(Some(format!("not monotone in coordinate {i} at {xs:?}")));
                }
            }
        }
    }
    Ok(None)
}

/// `R_G(x, y) = G(R_1(x, y), ..., R_n(x, y))`.
pub fn aggregate_relations(spec: &AggregatorSpec, rs: &[FuzzyRelation]) -> Result<FuzzyRelation> {
    if rs.len() != spec.arity {
        return Err(FuzzError::ArityMismatch {
            expected: spec.arity,
            got: rs.len(),
        });
    }
    let n = rs[0].n();
    for r in rs {
        rs[0].same_size(r)?;
    }
    let mut buf = vec![0.0; spec.arity];
    let data = (0..n * n)
        .map(|idx| {
            for (b, r) in buf.iter_mut().zip(rs) {
                *b = r.as_slice()[idx];
            }
            spec.eval_unchecked(&buf)
        })
        .collect();
    Ok(FuzzyRelation::from_raw(n, data).inherit_labels(&rs[0]))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sampling {
    /// Every tuple with coordinates on the grid.
    Grid { step: f64 },
    /// Uniform tuples from a seeded generator.
    Random { count: usize, seed: u64 },
    /// Caller-supplied `(a, b)` tuples.
    Tuples(Vec<(Vec<f64>, Vec<f64>)>),
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling::Grid { step: 0.05 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreservationCounterexample {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// The violated inequality is `lhs ≤ rhs`.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreservationVerdict {
    /// `true` means no counterexample was found among the samples.
    pub preserved: bool,
    pub counterexample: Option<PreservationCounterexample>,
    pub samples_tested: u64,
    pub resolution: String,
}

/// Both sides of the preservation inequality at `(a, b)`.
///
/// With `c = T(G(a), G(b))` and `d = G(r_1, ..., r_n)` where `r_i` is the
/// least direct value compatible with `T(a_i, b_i)`, the aggregate stays
/// ε-T-transitive iff `c` satisfies the family's condition against `d`.
/// For residual implications this reads `T'(ε, T(G(a), G(b))) ≤
/// G(T'(ε, T(a_1, b_1)), ...)`.
pub fn preservation_sides(
    spec: &AggregatorSpec,
    t: &TNorm,
    cond: &EpsilonCondition,
    a: &[f64],
    b: &[f64],
) -> Result<(f64, f64)> {
    let ga = spec.eval(a)?;
    let gb = spec.eval(b)?;
    let least: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&ai, &bi)| cond.least_direct(t.eval(ai, bi)))
        .collect();
    let d = spec.eval(&least)?;
    Ok(cond.sides(t.eval(ga, gb), d))
}

/// Searches sampled tuples for a violation of the preservation inequality;
/// the first violation in sampling order is returned.
pub fn preservation_check(
    spec: &AggregatorSpec,
    t: &TNorm,
    imp: &Implication,
    epsilon: f64,
    sampling: &Sampling,
) -> Result<PreservationVerdict> {
    let cond = EpsilonCondition::for_implication(imp, epsilon)?;
    let n = spec.arity;
    let test = |a: &[f64], b: &[f64]| -> Option<PreservationCounterexample> {
        let (lhs, rhs) = preservation_sides(spec, t, &cond, a, b).ok()?;
        (lhs > rhs + PRESERVATION_TOL).then(|| PreservationCounterexample {
            a: a.to_vec(),
            b: b.to_vec(),
            lhs,
            rhs,
        })
    };

    let (found, tested, resolution) = match sampling {
        Sampling::Grid { step } => {
            let grid = unit_grid(*step)?;
            let m = grid.len() as u64;
            let dims = 2 * n as u32;
            let total = m
                .checked_pow(dims)
                .filter(|t| *t <= 1 << 32)
                .ok_or_else(|| {
                    FuzzError::InvalidParameter(format!("grid of {m}^{dims} tuples is too large"))
                })?;
            let inner = total / m;
            // the first coordinate is split across threads; each thread
            // enumerates the rest in order, so the first hit is deterministic
            let found = (0..m).into_par_iter().find_map_first(|lead| {
                let mut coords = vec![0.0; 2 * n];
                for code in 0..inner {
                    coords[0] = grid[lead as usize];
                    let mut c = code;
                    for k in (1..2 * n).rev() {
                        coords[k] = grid[(c % m) as usize];
                        c /= m;
                    }
                    if let Some(ce) = test(&coords[..n], &coords[n..]) {
                        return Some(ce);
                    }
                }
                None
            });
            (found, total, format!("grid step {step}"))
        }
        Sampling::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let tuples: Vec<Vec<f64>> = (0..*count)
                .map(|_| (0..2 * n).map(|_| rng.gen::<f64>()).collect())
                .collect();
            let found = tuples.par_iter().find_map_first(|c| test(&c[..n], &c[n..]));
            (
                found,
                *count as u64,
                format!("{count} random tuples, seed {seed}"),
            )
        }
        Sampling::Tuples(list) => {
            for (a, b) in list {
                if a.len() != n || b.len() != n {
                    return Err(FuzzError::ArityMismatch {
                        expected: n,
                        got: a.len().max(b.len()),
                    });
                }
            }
            let found = list.iter().find_map(|(a, b)| test(a, b));
            (
                found,
                list.len() as u64,
                format!("{} explicit tuples", list.len()),
            )
        }
    };

    let preserved = found.is_none();
    let resolution = if preserved {
        format!("no counterexample found at resolution: {resolution}")
    } else {
        resolution
    };
    Ok(PreservationVerdict {
        preserved,
        counterexample: found,
        samples_tested: tested,
        resolution,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessFamily {
    /// One 3×3 relation per coordinate of the tuple.
    pub relations: Vec<FuzzyRelation>,
    /// Transitivity degree of each relation.
    pub alphas: Vec<f64>,
    pub all_epsilon_transitive: bool,
}

/// Builds, for each `i`, the relation on `{x, y, z}` with unit diagonal,
/// `R(x,y) = a_i`, `R(y,z) = b_i` and `R(x,z)` the least value keeping the
/// triple ε-T-transitive, all symmetric. Aggregating the family reproduces
/// the tuple's preservation inequality as a transitivity question.
pub fn preservation_witness_relations(
    a: &[f64],
    b: &[f64],
    t: &TNorm,
    imp: &Implication,
    epsilon: f64,
) -> Result<WitnessFamily> {
    if a.len() != b.len() {
        return Err(FuzzError::ArityMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let cond = EpsilonCondition::for_implication(imp, epsilon)?;
    let mut relations = Vec::with_capacity(a.len());
    let mut alphas = Vec::with_capacity(a.len());
    for (&ai, &bi) in a.iter().zip(b) {
        let xz = cond.least_direct(t.eval(ai, bi));
        let r = FuzzyRelation::new(3, vec![1.0, ai, xz, ai, 1.0, bi, xz, bi, 1.0])?;
        alphas.push(transitivity_degree(&r, t, imp)?.alpha);
        relations.push(r);
    }
    let all_epsilon_transitive = alphas.iter().all(|&al| al >= epsilon - PRESERVATION_TOL);
    Ok(WitnessFamily {
        relations,
        alphas,
        all_epsilon_transitive,
    })
}
