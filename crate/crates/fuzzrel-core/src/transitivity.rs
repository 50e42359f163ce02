//! Degree of T-transitivity, ε-transitivity checks, closures and transitive
//! approximations.

use rayon::prelude::*;

use crate::algebra::{AdditiveGenerator, Copula, Implication, TNorm};
use crate::conditions::{ConditionFamily, EpsilonCondition};
use crate::error::{FuzzError, Result};
use crate::relation::{
    collect_violations, is_t_transitive, scale_relation, self_compose_with_argmax, sup_t_compose,
    FuzzyRelation, ViolationSet,
};

/// Tolerance of the ε comparison in [`is_epsilon_transitive`] and of the
/// pointwise inequalities in [`check_table1_condition`].
pub const EPSILON_TOL: f64 = 1e-12;

/// Tolerance used when certifying constructed relations as T-transitive.
pub const WITNESS_TOL: f64 = 1e-9;

pub const MAX_SQUARINGS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TransitivityReport {
    pub alpha: f64,
    /// Lexicographically smallest `(x, y, z)` attaining the infimum.
    pub witness: (usize, usize, usize),
    pub composed: FuzzyRelation,
    pub violations: ViolationSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub triple: (usize, usize, usize),
    /// The violated inequality is `lhs ≤ rhs`.
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonVerdict {
    pub epsilon: f64,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

#[inline]
fn level(imp: &Implication, c: f64, r: f64) -> f64 {
    if c <= r {
        1.0
    } else {
        imp.eval(c, r)
    }
}

/// `α = min_{x,z} I(max_y T(R(x,y), R(y,z)), R(x,z))`.
///
/// The implication must satisfy the ordering property.
pub fn transitivity_degree(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
) -> Result<TransitivityReport> {
    imp.require_op()?;
    let n = r.n();
    let (composed, arg) = self_compose_with_argmax(r, t);

    let row_min: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|z| level(imp, composed.get(x, z), r.get(x, z)))
                .fold(1.0, f64::min)
        })
        .collect();
    let alpha = row_min.iter().copied().fold(1.0, f64::min);

    let x = row_min.iter().position(|&v| v == alpha).unwrap_or(0);
    let witness = first_triple_in_row(r, t, imp, x, alpha).unwrap_or_else(|| {
        // unreachable while the kernel and `TNorm::eval` agree bit for bit
        let z = (0..n)
            .find(|&z| level(imp, composed.get(x, z), r.get(x, z)) == alpha)
            .unwrap_or(0);
        (x, arg[x * n + z] as usize, z)
    });

    let violations = collect_violations(r, &composed, &arg, 0.0);
    Ok(TransitivityReport {
        alpha,
        witness,
        composed,
        violations,
    })
}

fn first_triple_in_row(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
    x: usize,
    alpha: f64,
) -> Option<(usize, usize, usize)> {
    let n = r.n();
    for y in 0..n {
        for z in 0..n {
            if level(imp, t.eval(r.get(x, y), r.get(y, z)), r.get(x, z)) == alpha {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// `α ≥ ε` within [`EPSILON_TOL`].
pub fn is_epsilon_transitive(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
    epsilon: f64,
) -> Result<EpsilonVerdict> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(FuzzError::OutOfUnitRange(epsilon));
    }
    let report = transitivity_degree(r, t, imp)?;
    let holds = report.alpha >= epsilon - EPSILON_TOL;
    Ok(EpsilonVerdict {
        epsilon,
        holds,
        counterexample: (!holds).then_some(Counterexample {
            triple: report.witness,
            lhs: epsilon,
            rhs: report.alpha,
        }),
    })
}

/// Evaluates the family's pointwise inequality at every triple and reports
/// the first violation in lexicographic order.
pub fn check_table1_condition(
    r: &FuzzyRelation,
    t: &TNorm,
    family: ConditionFamily,
    imp: &Implication,
    epsilon: f64,
) -> Result<EpsilonVerdict> {
    let cond = EpsilonCondition::new(family, imp, epsilon)?;
    let n = r.n();
    let counterexample = (0..n).into_par_iter().find_map_first(|x| {
        for y in 0..n {
            for z in 0..n {
                let c = t.eval(r.get(x, y), r.get(y, z));
                let d = r.get(x, z);
                if !cond.holds(c, d, EPSILON_TOL) {
                    let (lhs, rhs) = cond.sides(c, d);
                    return Some(Counterexample {
                        triple: (x, y, z),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        None
    });
    Ok(EpsilonVerdict {
        epsilon,
        holds: counterexample.is_none(),
        counterexample,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    pub relation: FuzzyRelation,
    pub squarings: usize,
    pub converged: bool,
}

/// Smallest T-transitive relation above `R`, by iterating
/// `Q ← max(Q, Q ∘ Q)` until no entry moves by more than `tol`.
pub fn transitive_closure(r: &FuzzyRelation, t: &TNorm, tol: f64) -> Result<Closure> {
    let n = r.n();
    let mut q = r.clone();
    for step in 1..=MAX_SQUARINGS {
        let c = sup_t_compose(&q, &q, t)?;
        let mut change: f64 = 0.0;
        let data: Vec<f64> = q
            .as_slice()
            .iter()
            .zip(c.as_slice())
            .map(|(&a, &b)| {
                let m = a.max(b);
                change = change.max(m - a);
                m
            })
            .collect();
        q = FuzzyRelation::from_raw(n, data).inherit_labels(r);
        if change <= tol {
            return Ok(Closure {
                relation: q,
                squarings: step,
                converged: true,
            });
        }
    }
    Ok(Closure {
        relation: q,
        squarings: MAX_SQUARINGS,
        converged: false,
    })
}

/// `S_I(R, Q) = inf min(I(R(x,y), Q(x,y)), I(Q(x,y), R(x,y)))`.
pub fn si_similarity(r: &FuzzyRelation, q: &FuzzyRelation, imp: &Implication) -> Result<f64> {
    imp.require_op()?;
    r.same_size(q)?;
    Ok(r.as_slice()
        .iter()
        .zip(q.as_slice())
        .map(|(&a, &b)| imp.eval(a, b).min(imp.eval(b, a)))
        .fold(1.0, f64::min))
}

pub const DEFAULT_SI_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct SiLowerBound {
    pub value: f64,
    /// A T-transitive relation with `S_I(R, witness) = value`.
    pub witness: FuzzyRelation,
}

/// Certified lower bound of `sup { S_I(R, R') : R' T-transitive }`.
///
/// For a level `s`, the relations `R'` with `S_I(R, R') ≥ s` form a box
/// `lo_s ≤ R' ≤ hi_s`; a T-transitive one exists iff the closure of `lo_s`
/// stays below `hi_s`. Levels are scanned on a grid of `grid_step` and then
/// refined by bisection. Every returned value is `S_I(R, W)` for an explicit
/// `W` checked to be T-transitive, and the scaled witness of
/// [`transitive_witness`] is also tried when the pair supports it.
pub fn alpha_si_lower_bound(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
    grid_step: f64,
    max_n: usize,
) -> Result<SiLowerBound> {
    imp.require_op()?;
    if r.n() > max_n {
        return Err(FuzzError::TooLarge {
            n: r.n(),
            max: max_n,
        });
    }
    if !(0.05..=1.0).contains(&grid_step) {
        return Err(FuzzError::InvalidParameter(format!(
            "grid step must lie in [0.05, 1], got {grid_step}"
        )));
    }

    let mut best: Option<SiLowerBound> = None;
    let mut offer = |cand: Option<SiLowerBound>| {
        if let Some(c) = cand {
            if best.as_ref().is_none_or(|b| c.value > b.value) {
                best = Some(c);
            }
        }
    };

    let probe = |s: f64| -> Result<Option<SiLowerBound>> { box_candidate(r, t, imp, s) };

    let m = (1.0 / grid_step).round() as usize;
    let (mut lo_k, mut hi_k) = (0usize, m + 1);
    // feasibility is monotone in s; find the last feasible grid level
    while hi_k - lo_k > 1 {
        let mid = (lo_k + hi_k) / 2;
        let s = mid as f64 / m as f64;
        match probe(s)? {
            Some(c) if c.value >= s - EPSILON_TOL => {
                lo_k = mid;
                offer(Some(c));
            }
            other => {
                hi_k = mid;
                offer(other);
            }
        }
    }
    offer(probe(0.0)?);
    if hi_k <= m {
        let (mut lo, mut hi) = (lo_k as f64 / m as f64, hi_k as f64 / m as f64);
        for _ in 0..48 {
            let s = 0.5 * (lo + hi);
            match probe(s)? {
                Some(c) if c.value >= s - EPSILON_TOL => {
                    lo = s;
                    offer(Some(c));
                }
                other => {
                    hi = s;
                    offer(other);
                }
            }
        }
    }

    let alpha = transitivity_degree(r, t, imp)?.alpha;
    offer(probe(alpha)?);
    if let Ok(w) = transitive_witness(r, t, imp) {
        let value = si_similarity(r, &w, imp)?;
        offer(Some(SiLowerBound { value, witness: w }));
    }

    best.ok_or_else(|| FuzzError::Postcondition("no T-transitive candidate was certified".into()))
}

fn box_candidate(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
    s: f64,
) -> Result<Option<SiLowerBound>> {
    let n = r.n();
    let lo: Vec<f64> = r.as_slice().iter().map(|&v| lower_end(imp, v, s)).collect();
    let closed = transitive_closure(&FuzzyRelation::from_raw(n, lo), t, 0.0)?;
    let (ok, _) = is_t_transitive(&closed.relation, t, 1e-12);
    if !ok {
        return Ok(None);
    }
    let value = si_similarity(r, &closed.relation, imp)?;
    Ok(Some(SiLowerBound {
        value,
        witness: closed.relation,
    }))
}

/// `inf { v ≤ r : I(r, v) ≥ s }`, approached from a verified point.
fn lower_end(imp: &Implication, r: f64, s: f64) -> f64 {
    if imp.eval(r, 0.0) >= s {
        return 0.0;
    }
    let (mut bad, mut good) = (0.0, r);
    for _ in 0..64 {
        let mid = 0.5 * (bad + good);
        if mid <= bad || mid >= good {
            break;
        }
        if imp.eval(r, mid) >= s {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// `T(R, α)` for the pairs where it is known to be T-transitive and to attain
/// `S_I(R, ·) ≥ α`:
///
/// * residual `I_T` with the same continuous `T`;
/// * `(S_L)_φ` with `N_φ` and `T = (T_L)_φ`;
/// * QL with `T_M`, `(S_L)_φ`, `N_φ` and `T = (T_L)_φ`;
/// * `I_g` and `I_C` (minimum copula) with `T_P`;
/// * `Ĩ_C` (minimum copula) with `T_L`.
pub fn transitive_witness(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
) -> Result<FuzzyRelation> {
    if !witness_pair_supported(t, imp) {
        return Err(FuzzError::UnsupportedWitnessPair(format!(
            "({}, {}); supported pairs: residual:T with the same continuous T; \
             sn:(S_L)_phi:N_phi with (T_L)_phi; ql:N_phi:minimum:(S_L)_phi with (T_L)_phi; \
             g:* with product; probabilistic:min with product; probabilistic-s:min with lukasiewicz",
            t.name(),
            imp.name()
        )));
    }
    let alpha = transitivity_degree(r, t, imp)?.alpha;
    let w = scale_relation(r, t, alpha);
    let (ok, v) = is_t_transitive(&w, t, WITNESS_TOL);
    if !ok {
        return Err(FuzzError::Postcondition(format!(
            "scaled relation is not {}-transitive ({} violations)",
            t.name(),
            v.len()
        )));
    }
    let si = si_similarity(r, &w, imp)?;
    if si < alpha - WITNESS_TOL {
        return Err(FuzzError::Postcondition(format!(
            "scaled relation has S_I = {si} below alpha = {alpha}"
        )));
    }
    Ok(w)
}

fn witness_pair_supported(t: &TNorm, imp: &Implication) -> bool {
    match imp {
        Implication::Residual(t2) => t2 == t && t.is_continuous(),
        Implication::Sn { s, n } => match (s.lukasiewicz_phi(), n.phi_of(), t.lukasiewicz_phi()) {
            (Some(a), Some(b), Some(c)) => a == b && b == c,
            _ => false,
        },
        Implication::Ql {
            n,
            t: TNorm::Minimum,
            s,
        } => match (s.lukasiewicz_phi(), n.phi_of(), t.lukasiewicz_phi()) {
            (Some(a), Some(b), Some(c)) => a == b && b == c,
            _ => false,
        },
        Implication::G(_) => *t == TNorm::Product,
        Implication::Probabilistic(Copula::Minimum) => *t == TNorm::Product,
        Implication::ProbabilisticS(Copula::Minimum) => *t == TNorm::Lukasiewicz,
        _ => false,
    }
}

/// `d(x, y) = t(R(x, y))`, possibly `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    /// First triple with `d(x,z) > slack + d(x,y) + d(y,z) + tol`.
    pub fn slack_triangle_violation(&self, slack: f64, tol: f64) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    let rhs = slack + self.get(x, y) + self.get(y, z);
                    if self.get(x, z) > rhs + tol {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }
}

pub fn pseudo_metric(r: &FuzzyRelation, t: &AdditiveGenerator) -> DistanceMatrix {
    DistanceMatrix {
        n: r.n(),
        data: r.as_slice().iter().map(|&v| t.eval(v).max(0.0)).collect(),
    }
}
