//! Similarity relations from feature vectors, λ-cut clustering, and
//! comparison of direct clustering against clustering of the closure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::algebra::{Implication, TNorm, UnitValue};
use crate::error::{FuzzError, Result};
use crate::relation::{distortion, lambda_cut, CrispRelation, FuzzyRelation};
use crate::transitivity::{transitive_closure, transitivity_degree};

pub const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
    labels: Vec<Option<String>>,
}

impl FeatureTable {
    /// `labels` is either empty or one entry per row; `None` marks a test sample.
    pub fn new(
        names: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<Option<String>>,
    ) -> Result<Self> {
        if rows.is_empty() {
            return Err(FuzzError::InvalidFeatures("no samples".into()));
        }
        let k = names.len();
        if k == 0 {
            return Err(FuzzError::InvalidFeatures("no feature columns".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(FuzzError::InvalidFeatures(format!(
                    "row {} has {} features, expected {k}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                return Err(FuzzError::InvalidFeatures(format!(
                    "row {} has invalid feature {v}",
                    i + 1
                )));
            }
        }
        let labels = if labels.is_empty() {
            vec![None; rows.len()]
        } else {
            labels
        };
        if labels.len() != rows.len() {
            return Err(FuzzError::InvalidFeatures(format!(
                "{} labels for {} rows",
                labels.len(),
                rows.len()
            )));
        }
        Ok(FeatureTable {
            names,
            rows,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }
}

/// `R(i, j) = (1 + cos θ_ij) / 2` with unit diagonal.
pub fn similarity_from_features(f: &FeatureTable) -> Result<FuzzyRelation> {
    let norms: Vec<f64> = f
        .rows
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    if let Some(i) = norms.iter().position(|&v| v == 0.0) {
        return Err(FuzzError::InvalidFeatures(format!(
            "row {} is all zeros",
            i + 1
        )));
    }
    let n = f.len();
    let mut data = vec![1.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let dot: f64 = f.rows[i].iter().zip(&f.rows[j]).map(|(a, b)| a * b).sum();
            let cos = (dot / (norms[i] * norms[j])).clamp(-1.0, 1.0);
            let s = (1.0 + cos) / 2.0;
            data[i * n + j] = s;
            data[j * n + i] = s;
        }
    }
    FuzzyRelation::new(n, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterMode {
    /// Connected components of the cut graph; a partition.
    #[default]
    Components,
    /// Maximal cliques of the cut graph; may overlap.
    Cliques,
}

impl fmt::Display for ClusterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClusterMode::Components => "components",
            ClusterMode::Cliques => "cliques",
        })
    }
}

impl FromStr for ClusterMode {
    type Err = FuzzError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "components" => Ok(ClusterMode::Components),
            "cliques" => Ok(ClusterMode::Cliques),
            other => Err(FuzzError::InvalidSpec(format!(
                "unknown mode '{other}', expected components or cliques"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub lambda: f64,
    pub mode: ClusterMode,
    /// 0-based indices, each cluster ascending, clusters in ascending order.
    pub clusters: Vec<Vec<usize>>,
}

impl Clustering {
    /// Same clusters irrespective of λ and mode.
    pub fn same_clusters(&self, other: &Clustering) -> bool {
        self.clusters == other.clusters
    }
}

fn components(cut: &CrispRelation) -> Vec<Vec<usize>> {
    let n = cut.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for y in cut.neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn maximal_cliques(cut: &CrispRelation) -> Vec<Vec<usize>> {
    let n = cut.n();
    let adj: Vec<BTreeSet<usize>> = (0..n).map(|x| cut.neighbours(x).collect()).collect();
    let mut out = Vec::new();
    bron_kerbosch(
        &adj,
        Vec::new(),
        (0..n).collect(),
        BTreeSet::new(),
        &mut out,
    );
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = *p
        .union(&x)
        .max_by_key(|u| adj[**u].intersection(&p).count())
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

pub fn cluster_at(r: &FuzzyRelation, lambda: f64, mode: ClusterMode) -> Result<Clustering> {
    let lambda = UnitValue::new(lambda)?.get();
    if let Some((x, y)) = r.first_asymmetry(SYMMETRY_TOL) {
        return Err(FuzzError::NotSymmetric {
            x,
            y,
            forward: r.get(x, y),
            backward: r.get(y, x),
        });
    }
    let cut = lambda_cut(r, lambda);
    let clusters = match mode {
        ClusterMode::Components => components(&cut),
        ClusterMode::Cliques => maximal_cliques(&cut),
    };
    Ok(Clustering {
        lambda,
        mode,
        clusters,
    })
}

/// 0.90, 0.91, ..., 1.00.
pub fn default_lambdas() -> Vec<f64> {
    (90..=100).map(|k| k as f64 / 100.0).collect()
}

pub fn lambda_sweep(
    r: &FuzzyRelation,
    lambdas: &[f64],
    mode: ClusterMode,
) -> Result<Vec<Clustering>> {
    lambdas
        .par_iter()
        .map(|&l| cluster_at(r, l, mode))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unclassifiable {
    /// No labelled sample shares a cluster with it.
    NoLabels,
    /// The most frequent labels are tied.
    Tie(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnosis {
    Class(String),
    Unclassifiable(Unclassifiable),
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnosis::Class(c) => f.write_str(c),
            Diagnosis::Unclassifiable(Unclassifiable::NoLabels) => {
                f.write_str("unclassifiable (no labelled samples)")
            }
            Diagnosis::Unclassifiable(Unclassifiable::Tie(ls)) => {
                write!(f, "unclassifiable (tie between {})", ls.join(", "))
            }
        }
    }
}

/// Majority label among the labelled samples clustered with each unlabelled
/// one. With overlapping clusters every cluster containing the sample votes,
/// each labelled neighbour counted once.
pub fn classify_unknowns(
    clustering: &Clustering,
    labels: &[Option<String>],
) -> BTreeMap<usize, Diagnosis> {
    let mut out = BTreeMap::new();
    for (i, _) in labels.iter().enumerate().filter(|(_, l)| l.is_none()) {
        let peers: BTreeSet<usize> = clustering
            .clusters
            .iter()
            .filter(|c| c.contains(&i))
            .flat_map(|c| c.iter().copied())
            .collect();
        let mut votes: BTreeMap<&str, usize> = BTreeMap::new();
        for p in peers {
            if let Some(Some(l)) = labels.get(p) {
                *votes.entry(l.as_str()).or_default() += 1;
            }
        }
        let best = votes.values().copied().max().unwrap_or(0);
        let leaders: Vec<String> = votes
            .iter()
            .filter(|(_, &v)| v == best)
            .map(|(l, _)| l.to_string())
            .collect();
        let d = match leaders.len() {
            0 => Diagnosis::Unclassifiable(Unclassifiable::NoLabels),
            1 => Diagnosis::Class(leaders.into_iter().next().unwrap_or_default()),
            _ => Diagnosis::Unclassifiable(Unclassifiable::Tie(leaders)),
        };
        out.insert(i, d);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub alpha: f64,
    pub distortion: f64,
    pub closure: FuzzyRelation,
    pub closure_squarings: usize,
    pub direct: Vec<Clustering>,
    pub via_closure: Vec<Clustering>,
    /// `agreement[k]` is true when both methods give the same clusters at `λ_k`.
    pub agreement: Vec<bool>,
    pub direct_seconds: f64,
    pub closure_seconds: f64,
}

/// Clusters `R` directly and through its T-closure over the same λ grid.
pub fn compare_methods(
    r: &FuzzyRelation,
    t: &TNorm,
    imp: &Implication,
    lambdas: &[f64],
    mode: ClusterMode,
) -> Result<ComparisonReport> {
    let started = Instant::now();
    let alpha = transitivity_degree(r, t, imp)?.alpha;
    let direct = lambda_sweep(r, lambdas, mode)?;
    let direct_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let closure = transitive_closure(r, t, 0.0)?;
    let via_closure = lambda_sweep(&closure.relation, lambdas, mode)?;
    let closure_seconds = started.elapsed().as_secs_f64();

    let agreement = direct
        .iter()
        .zip(&via_closure)
        .map(|(a, b)| a.same_clusters(b))
        .collect();
    Ok(ComparisonReport {
        alpha,
        distortion: distortion(r, &closure.relation)?,
        closure_squarings: closure.squarings,
        closure: closure.relation,
        direct,
        via_closure,
        agreement,
        direct_seconds,
        closure_seconds,
    })
}
