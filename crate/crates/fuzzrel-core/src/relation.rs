//! Square fuzzy relations over a finite universe and their primitive
//! operations.

use rayon::prelude::*;

use crate::algebra::{clamp_unit, Implication, TNorm};
use crate::error::{FuzzError, Result};

/// An `n × n` matrix of membership degrees, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyRelation {
    n: usize,
    data: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl FuzzyRelation {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(FuzzError::InvalidParameter(
                "relation needs at least one object".into(),
            ));
        }
        if data.len() != n * n {
            return Err(FuzzError::DimensionMismatch {
                left: n * n,
                right: data.len(),
            });
        }
        for (idx, &v) in data.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(FuzzError::InvalidEntry {
                    row: idx / n,
                    col: idx % n,
                    value: v,
                });
            }
        }
        Ok(FuzzyRelation {
            n,
            data,
            labels: None,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(FuzzError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        FuzzyRelation::new(n, data)
    }

    /// Crisp identity: 1 on the diagonal, 0 elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        FuzzyRelation {
            n,
            data,
            labels: None,
        }
    }

    pub fn zeros(n: usize) -> Self {
        FuzzyRelation {
            n,
            data: vec![0.0; n * n],
            labels: None,
        }
    }

    /// Entries produced by arithmetic on valid entries; clamps rounding noise.
    pub(crate) fn from_raw(n: usize, mut data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        for v in &mut data {
            *v = clamp_unit(*v);
        }
        FuzzyRelation {
            n,
            data,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(FuzzError::DimensionMismatch {
                left: self.n,
                right: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub(crate) fn inherit_labels(mut self, from: &FuzzyRelation) -> Self {
        self.labels = from.labels.clone();
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.data[x * self.n..(x + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of object `i`, or its 1-based index when unlabeled.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 1.0)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.first_asymmetry(tol).is_none()
    }

    /// First `(x, y)`, `x < y`, with `|R(x,y) - R(y,x)| > tol`.
    pub fn first_asymmetry(&self, tol: f64) -> Option<(usize, usize)> {
        for x in 0..self.n {
            for y in x + 1..self.n {
                if (self.get(x, y) - self.get(y, x)).abs() > tol {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn max_abs_diff(&self, other: &FuzzyRelation) -> Result<f64> {
        self.same_size(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `self ≥ other - tol` elementwise.
    pub fn dominates(&self, other: &FuzzyRelation, tol: f64) -> Result<bool> {
        self.same_size(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a + tol >= *b))
    }

    pub(crate) fn same_size(&self, other: &FuzzyRelation) -> Result<()> {
        if self.n != other.n {
            return Err(FuzzError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// A crisp relation, e.g. a λ-cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispRelation {
    n: usize,
    bits: Vec<bool>,
}

impl CrispRelation {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.n + y]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn neighbours(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&y| y != x && self.get(x, y))
    }

    pub fn is_equivalence(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| self.get(x, x))
            && (0..n).all(|x| (0..n).all(|y| self.get(x, y) == self.get(y, x)))
            && (0..n).all(|x| {
                (0..n).all(|y| !self.get(x, y) || (0..n).all(|z| !self.get(y, z) || self.get(x, z)))
            })
    }
}

/// One pair `(x, z)` where `sup_y T(R(x,y), R(y,z)) > R(x,z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub x: usize,
    pub z: usize,
    /// Smallest `y` attaining the supremum.
    pub via_y: usize,
    pub composed: f64,
    pub direct: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViolationSet {
    pub violations: Vec<Violation>,
}

impl ViolationSet {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.violations.iter()
    }

    /// The `k` largest gaps; ties keep row-major order.
    pub fn top(&self, k: usize) -> Vec<&Violation> {
        let mut v: Vec<&Violation> = self.violations.iter().collect();
        v.sort_by(|a, b| b.gap.total_cmp(&a.gap));
        v.truncate(k);
        v
    }
}

/// Runs `body` with the t-norm's evaluation monomorphised for the three
/// closed-form families.
macro_rules! with_tnorm_fn {
    ($t:expr, $f:ident => $body:expr) => {
        match $t {
            TNorm::Minimum => {
                let $f = |a: f64, b: f64| a.min(b);
                $body
            }
            TNorm::Product => {
                let $f = |a: f64, b: f64| a * b;
                $body
            }
            TNorm::Lukasiewicz => {
                let $f = |a: f64, b: f64| crate::algebra::lukasiewicz(a, b);
                $body
            }
            other => {
                let $f = |a: f64, b: f64| other.eval(a, b);
                $body
            }
        }
    };
}

fn compose_kernel<F>(r: &[f64], q: &[f64], n: usize, t: F) -> Vec<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let mut out = vec![0.0; n * n];
    out.par_chunks_mut(n).enumerate().for_each(|(x, row)| {
        let rx = &r[x * n..(x + 1) * n];
        for (k, &a) in rx.iter().enumerate() {
            // T(0, b) = 0 never raises the running max
            if a == 0.0 {
                continue;
            }
            let qk = &q[k * n..(k + 1) * n];
            for (o, &b) in row.iter_mut().zip(qk) {
                *o = f64::max(*o, t(a, b));
            }
        }
    });
    out
}

fn compose_argmax_kernel<F>(r: &[f64], q: &[f64], n: usize, t: F) -> (Vec<f64>, Vec<u32>)
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let mut out = vec![0.0; n * n];
    let mut arg = vec![0u32; n * n];
    out.par_chunks_mut(n)
        .zip(arg.par_chunks_mut(n))
        .enumerate()
        .for_each(|(x, (row, arow))| {
            let rx = &r[x * n..(x + 1) * n];
            for (k, &a) in rx.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let qk = &q[k * n..(k + 1) * n];
                for ((o, ai), &b) in row.iter_mut().zip(arow.iter_mut()).zip(qk) {
                    let v = t(a, b);
                    if v > *o {
                        *o = v;
                        *ai = k as u32;
                    }
                }
            }
        });
    (out, arg)
}

/// `(R ∘ Q)(x, y) = max_k T(R(x,k), Q(k,y))`.
pub fn sup_t_compose(r: &FuzzyRelation, q: &FuzzyRelation, t: &TNorm) -> Result<FuzzyRelation> {
    r.same_size(q)?;
    let n = r.n;
    let data = with_tnorm_fn!(t, f => compose_kernel(&r.data, &q.data, n, f));
    Ok(FuzzyRelation::from_raw(n, data).inherit_labels(r))
}

/// `R ∘ R` together with the smallest maximising middle index per cell.
pub(crate) fn self_compose_with_argmax(r: &FuzzyRelation, t: &TNorm) -> (FuzzyRelation, Vec<u32>) {
    let n = r.n;
    let (data, arg) = with_tnorm_fn!(t, f => compose_argmax_kernel(&r.data, &r.data, n, f));
    (FuzzyRelation::from_raw(n, data).inherit_labels(r), arg)
}

pub(crate) fn collect_violations(
    r: &FuzzyRelation,
    composed: &FuzzyRelation,
    arg: &[u32],
    tol: f64,
) -> ViolationSet {
    let n = r.n;
    let mut violations = Vec::new();
    for x in 0..n {
        for z in 0..n {
            let (c, d) = (composed.get(x, z), r.get(x, z));
            if c > d + tol {
                violations.push(Violation {
                    x,
                    z,
                    via_y: arg[x * n + z] as usize,
                    composed: c,
                    direct: d,
                    gap: c - d,
                });
            }
        }
    }
    ViolationSet { violations }
}

/// `R(x,z) ≥ T(R(x,y), R(y,z)) - tol` for all triples, with the failing pairs.
pub fn is_t_transitive(r: &FuzzyRelation, t: &TNorm, tol: f64) -> (bool, ViolationSet) {
    let (composed, arg) = self_compose_with_argmax(r, t);
    let v = collect_violations(r, &composed, &arg, tol);
    (v.is_empty(), v)
}

/// Crisp relation `R(x,y) ≥ λ`.
pub fn lambda_cut(r: &FuzzyRelation, lambda: f64) -> CrispRelation {
    CrispRelation {
        n: r.n,
        bits: r.data.iter().map(|&v| v >= lambda).collect(),
    }
}

/// Entrywise `T(R(x,y), ε)`.
pub fn scale_relation(r: &FuzzyRelation, t: &TNorm, epsilon: f64) -> FuzzyRelation {
    let data = r.data.iter().map(|&v| t.eval(v, epsilon)).collect();
    FuzzyRelation::from_raw(r.n, data).inherit_labels(r)
}

/// Frobenius distance `sqrt(Σ (R(i,j) - Q(i,j))²)`.
pub fn distortion(r: &FuzzyRelation, q: &FuzzyRelation) -> Result<f64> {
    r.same_size(q)?;
    Ok(r.data
        .iter()
        .zip(&q.data)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetryMode {
    /// `inf min(I(R(x,y), R(y,x)), I(R(y,x), R(x,y)))`.
    #[default]
    Biresidual,
    /// `inf_{x<y} I(R(x,y), R(y,x))`: upper triangle against lower.
    UpperToLower,
}

/// Degree of symmetry of `R` measured with an OP implication.
pub fn symmetry_degree(r: &FuzzyRelation, imp: &Implication, mode: SymmetryMode) -> Result<f64> {
    imp.require_op()?;
    let n = r.n;
    let mut deg: f64 = 1.0;
    for x in 0..n {
        for y in x + 1..n {
            let (a, b) = (r.get(x, y), r.get(y, x));
            let v = match mode {
                SymmetryMode::Biresidual => imp.eval(a, b).min(imp.eval(b, a)),
                SymmetryMode::UpperToLower => imp.eval(a, b),
            };
            deg = deg.min(v);
        }
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Negation, TConorm};
    use proptest::prelude::*;

    fn rel(rows: &[&[f64]]) -> FuzzyRelation {
        FuzzyRelation::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn two_point() -> FuzzyRelation {
        rel(&[&[0.2, 0.8], &[0.8, 0.2]])
    }

    fn families() -> Vec<TNorm> {
        vec![
            TNorm::Minimum,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::Drastic,
        ]
    }

    #[test]
    fn construction_validates_entries() {
        let err = FuzzyRelation::from_rows(&[vec![1.0, 1.2], vec![0.0, 1.0]]).unwrap_err();
        assert_eq!(
            err,
            FuzzError::InvalidEntry {
                row: 0,
                col: 1,
                value: 1.2
            }
        );
        assert!(matches!(
            FuzzyRelation::from_rows(&[vec![1.0, 0.5, 0.2], vec![0.0, 1.0, 0.3]]),
            Err(FuzzError::NotSquare { .. })
        ));
        assert!(FuzzyRelation::new(2, vec![0.0, f64::NAN, 0.0, 0.0]).is_err());
        assert!(FuzzyRelation::identity(2)
            .with_labels(vec!["a".into()])
            .is_err());
    }

    #[test]
    fn identity_is_neutral_under_product() {
        let r = rel(&[&[1.0, 0.3, 0.7], &[0.2, 0.9, 0.4], &[0.6, 0.5, 1.0]]);
        let id = FuzzyRelation::identity(3);
        assert_eq!(sup_t_compose(&id, &r, &TNorm::Product).unwrap(), r);
        assert_eq!(sup_t_compose(&r, &id, &TNorm::Product).unwrap(), r);
    }

    #[test]
    fn two_point_self_composition() {
        let r = two_point();
        let c = sup_t_compose(&r, &r, &TNorm::Lukasiewicz).unwrap();
        // k = 1: T_L(0.8, 0.8) = 0.6 on the diagonal; off-diagonal T_L(0.2, 0.8) = 0
        assert!((c.get(0, 0) - 0.6).abs() < 1e-12);
        assert!((c.get(1, 1) - 0.6).abs() < 1e-12);
        assert_eq!(c.get(0, 1), 0.0);
        assert_eq!(c.get(1, 0), 0.0);
    }

    #[test]
    fn zeros_compose_to_zeros() {
        let r = rel(&[&[1.0, 0.3], &[0.2, 0.9]]);
        for t in families() {
            assert_eq!(
                sup_t_compose(&FuzzyRelation::zeros(2), &r, &t).unwrap(),
                FuzzyRelation::zeros(2)
            );
        }
        assert!(sup_t_compose(&r, &FuzzyRelation::zeros(3), &TNorm::Product).is_err());
    }

    #[test]
    fn transitivity_and_violations() {
        let (ok, v) = is_t_transitive(&FuzzyRelation::identity(4), &TNorm::Product, 0.0);
        assert!(ok && v.is_empty());

        let r = rel(&[&[1.0, 0.9, 0.2], &[0.9, 1.0, 0.9], &[0.2, 0.9, 1.0]]);
        let (ok, v) = is_t_transitive(&r, &TNorm::Product, 1e-9);
        assert!(!ok);
        assert_eq!(v.len(), 2);
        let first = &v.violations[0];
        assert_eq!((first.x, first.z, first.via_y), (0, 2, 1));
        assert!((first.composed - 0.81).abs() < 1e-12);
        assert!((first.gap - 0.61).abs() < 1e-12);
    }

    #[test]
    fn reflexive_and_symmetric() {
        let r = rel(&[&[1.0, 0.3], &[0.6, 1.0]]);
        assert!(r.is_reflexive());
        assert!(!r.is_symmetric(1e-9));
        assert_eq!(r.first_asymmetry(0.0), Some((0, 1)));
        assert!(!two_point().is_reflexive());
        assert!(two_point().is_symmetric(0.0));
    }

    #[test]
    fn symmetry_degree_examples() {
        let goguen = Implication::residual(TNorm::Product).unwrap();
        let r = rel(&[&[1.0, 0.4], &[0.8, 1.0]]);
        assert!(
            (symmetry_degree(&r, &goguen, SymmetryMode::Biresidual).unwrap() - 0.5).abs() < 1e-15
        );
        let r = rel(&[&[1.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(
            symmetry_degree(&r, &goguen, SymmetryMode::Biresidual).unwrap(),
            0.0
        );
        // the stored direction alone: I(0, 1) = 1
        assert_eq!(
            symmetry_degree(&r, &goguen, SymmetryMode::UpperToLower).unwrap(),
            1.0
        );
        assert_eq!(
            symmetry_degree(&two_point(), &goguen, SymmetryMode::Biresidual).unwrap(),
            1.0
        );

        let kd = Implication::sn(TConorm::Maximum, Negation::Standard).unwrap();
        assert!(symmetry_degree(&r, &kd, SymmetryMode::Biresidual).is_err());
    }

    #[test]
    fn lambda_cut_extremes() {
        let r = rel(&[&[1.0, 0.3], &[0.6, 1.0]]);
        assert_eq!(lambda_cut(&r, 0.0).count(), 4);
        let cut = lambda_cut(&r, 1.0);
        assert!(cut.get(0, 0) && cut.get(1, 1) && !cut.get(0, 1) && !cut.get(1, 0));
        assert!(cut.is_equivalence());
    }

    #[test]
    fn scale_examples() {
        let r = two_point();
        assert_eq!(scale_relation(&r, &TNorm::Lukasiewicz, 1.0), r);
        let s = scale_relation(&r, &TNorm::Lukasiewicz, 0.7);
        let expect = [0.0, 0.5, 0.5, 0.0];
        for (a, b) in s.as_slice().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn scale_under_phi_transformed_lukasiewicz() {
        use crate::algebra::MonotoneBijection;
        let t = TNorm::phi_transform(TNorm::Lukasiewicz, MonotoneBijection::power(2.0).unwrap());
        let s = scale_relation(&two_point(), &t, 0.6);
        // φ(0.8) + φ(0.6) = 1 exactly, so the scaled entries vanish
        for v in s.as_slice() {
            assert!(v.abs() < 1e-12, "{v}");
        }
        let (ok, _) = is_t_transitive(&s, &t, 1e-12);
        assert!(ok);
    }

    #[test]
    fn distortion_examples() {
        let r = two_point();
        assert_eq!(distortion(&r, &r).unwrap(), 0.0);
        let a = FuzzyRelation::new(1, vec![0.2]).unwrap();
        let b = FuzzyRelation::new(1, vec![0.5]).unwrap();
        assert!((distortion(&a, &b).unwrap() - 0.3).abs() < 1e-15);
        assert!(distortion(&a, &r).is_err());
    }

    #[test]
    fn labels_survive_operations() {
        let r = rel(&[&[1.0, 0.3], &[0.3, 1.0]])
            .with_labels(vec!["a".into(), "b".into()])
            .unwrap();
        assert_eq!(
            sup_t_compose(&r, &r, &TNorm::Minimum).unwrap().labels(),
            r.labels()
        );
        assert_eq!(scale_relation(&r, &TNorm::Product, 0.5).label(1), "b");
        assert_eq!(FuzzyRelation::identity(2).label(1), "2");
    }

    fn relation(n: usize) -> impl Strategy<Value = FuzzyRelation> {
        prop::collection::vec(0.0..=1.0f64, n * n)
            .prop_map(move |d| FuzzyRelation::new(n, d).unwrap())
    }

    fn any_tnorm() -> impl Strategy<Value = TNorm> {
        prop_oneof![
            Just(TNorm::Minimum),
            Just(TNorm::Product),
            Just(TNorm::Lukasiewicz),
            Just(TNorm::Drastic),
        ]
    }

    proptest! {
        #[test]
        fn composition_is_monotone(r in relation(5), q in relation(5), dr in relation(5), dq in relation(5), t in any_tnorm()) {
            // r2 ≥ r and q2 ≥ q elementwise
            let up = |a: &FuzzyRelation, d: &FuzzyRelation| {
                let data = a.as_slice().iter().zip(d.as_slice()).map(|(x, y)| x.max(*y)).collect();
                FuzzyRelation::new(5, data).unwrap()
            };
            let (r2, q2) = (up(&r, &dr), up(&q, &dq));
            let lo = sup_t_compose(&r, &q, &t).unwrap();
            let hi = sup_t_compose(&r2, &q2, &t).unwrap();
            prop_assert!(hi.dominates(&lo, 0.0).unwrap());
        }

        #[test]
        fn transitivity_checks_agree(r in relation(5), t in any_tnorm(), tol in prop_oneof![Just(0.0), Just(1e-9), Just(0.05)]) {
            let (ok, v) = is_t_transitive(&r, &t, tol);
            let composed = sup_t_compose(&r, &r, &t).unwrap();
            let bounded = composed.as_slice().iter().zip(r.as_slice()).all(|(c, d)| *c <= *d + tol);
            prop_assert_eq!(ok, v.is_empty());
            prop_assert_eq!(ok, bounded);
            for viol in v.iter() {
                let y = viol.via_y;
                prop_assert_eq!(t.eval(r.get(viol.x, y), r.get(y, viol.z)), viol.composed);
            }
        }

        #[test]
        fn lambda_cut_is_antitone(r in relation(5), l1 in 0.0..=1.0f64, l2 in 0.0..=1.0f64) {
            let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
            let (a, b) = (lambda_cut(&r, lo), lambda_cut(&r, hi));
            for x in 0..5 {
                for y in 0..5 {
                    prop_assert!(!b.get(x, y) || a.get(x, y));
                }
            }
        }

        #[test]
        fn distortion_is_a_metric(a in relation(4), b in relation(4), c in relation(4)) {
            let d = |x: &FuzzyRelation, y: &FuzzyRelation| distortion(x, y).unwrap();
            prop_assert_eq!(d(&a, &a), 0.0);
            prop_assert!((d(&a, &b) - d(&b, &a)).abs() <= 1e-12);
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        }

        #[test]
        fn parallel_kernel_matches_naive(r in relation(6), q in relation(6), t in any_tnorm()) {
            let c = sup_t_compose(&r, &q, &t).unwrap();
            for x in 0..6 {
                for y in 0..6 {
                    let naive = (0..6).map(|k| t.eval(r.get(x, k), q.get(k, y))).fold(0.0, f64::max);
                    prop_assert_eq!(c.get(x, y), naive);
                }
            }
        }
    }
}
