use std::path::PathBuf;

use fuzzrel_core::algebra::{AdditiveGenerator, Implication, Negation, TConorm, TNorm};
use fuzzrel_core::clustering::{
    classify_unknowns, cluster_at, compare_methods, default_lambdas, lambda_sweep,
    similarity_from_features, ClusterMode, Diagnosis, FeatureTable,
};
use fuzzrel_core::relation::{distortion, FuzzyRelation};
use fuzzrel_core::transitivity::{
    is_epsilon_transitive, pseudo_metric, transitive_closure, transitivity_degree,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn matrix(name: &str) -> FuzzyRelation {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(|v| v.trim().parse().unwrap()).collect())
        .collect();
    FuzzyRelation::from_rows(&rows).unwrap()
}

fn features() -> FeatureTable {
    let text = std::fs::read_to_string(fixture("turbine_features.csv")).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let k = header.len() - 1;
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for l in lines.filter(|l| !l.trim().is_empty()) {
        let cells: Vec<&str> = l.split(',').collect();
        rows.push(cells[..k].iter().map(|v| v.parse().unwrap()).collect());
        labels.push(
            Some(cells[k].trim())
                .filter(|s| !s.is_empty())
                .map(String::from),
        );
    }
    FeatureTable::new(header[..k].to_vec(), rows, labels).unwrap()
}

fn goguen() -> Implication {
    Implication::residual(TNorm::Product).unwrap()
}

fn three_faults() -> Vec<Vec<usize>> {
    let mut c = vec![
        (1..=5).chain([16]).map(|i| i - 1).collect::<Vec<_>>(),
        (6..=10).chain([17]).map(|i| i - 1).collect(),
        (11..=15).chain([18]).map(|i| i - 1).collect(),
    ];
    c.sort();
    c
}

#[test]
fn two_point_relation_degree() {
    let r = matrix("two_point.csv");
    let imp = Implication::sn(TConorm::Lukasiewicz, Negation::Standard).unwrap();
    let rep = transitivity_degree(&r, &TNorm::Lukasiewicz, &imp).unwrap();
    assert!((rep.alpha - 0.6).abs() < 1e-12);
    assert!(
        !is_epsilon_transitive(&r, &TNorm::Lukasiewicz, &imp, 0.7)
            .unwrap()
            .holds
    );
}

#[test]
fn twelve_point_relation_degree() {
    let rep = transitivity_degree(&matrix("twelve_point.csv"), &TNorm::Product, &goguen()).unwrap();
    assert!((rep.alpha - 0.53).abs() <= 0.005, "{}", rep.alpha);
}

#[test]
fn turbine_relation_degree() {
    let rep = transitivity_degree(&matrix("turbine.csv"), &TNorm::Product, &goguen()).unwrap();
    assert!((rep.alpha - 0.8981).abs() <= 0.0005, "{}", rep.alpha);
    assert_eq!((rep.witness.0, rep.witness.2), (6, 15));
}

#[test]
fn turbine_closure_matches_reference() {
    let r = matrix("turbine.csv");
    let reference = matrix("turbine_closure.csv");
    let c = transitive_closure(&r, &TNorm::Product, 0.0).unwrap();
    assert!(c.converged);
    assert!(c.relation.max_abs_diff(&reference).unwrap() <= 0.005);
    assert!(c.relation.dominates(&r, 0.0).unwrap());
    let again = transitive_closure(&c.relation, &TNorm::Product, 0.0).unwrap();
    assert_eq!(again.relation, c.relation);
    let d = distortion(&r, &c.relation).unwrap();
    assert!((d - 0.5786).abs() <= 0.01, "{d}");
}

#[test]
fn turbine_similarity_from_features() {
    let r = similarity_from_features(&features()).unwrap();
    let reference = matrix("turbine.csv");
    assert!((r.get(0, 1) - 0.9934).abs() <= 5e-4);
    assert!(r.max_abs_diff(&reference).unwrap() <= 2e-3);
}

#[test]
fn direct_sweep_three_faults() {
    let r = matrix("turbine.csv");
    let lambdas = [0.94, 0.95, 0.96, 0.97, 0.98, 0.99];
    for c in lambda_sweep(&r, &lambdas, ClusterMode::Components).unwrap() {
        assert_eq!(c.clusters, three_faults(), "λ={}", c.lambda);
    }
    let top = cluster_at(&r, 1.0, ClusterMode::Components).unwrap();
    assert_eq!(top.clusters, (0..18).map(|i| vec![i]).collect::<Vec<_>>());
    assert_eq!(
        cluster_at(&r, 0.0, ClusterMode::Components)
            .unwrap()
            .clusters
            .len(),
        1
    );
}

#[test]
fn diagnosis_of_unlabelled_samples() {
    let f = features();
    let c = cluster_at(&matrix("turbine.csv"), 0.94, ClusterMode::Components).unwrap();
    let d = classify_unknowns(&c, f.labels());
    assert_eq!(d.len(), 3);
    assert_eq!(d[&15], Diagnosis::Class("Oil whirl".into()));
    assert_eq!(d[&16], Diagnosis::Class("Unbalance".into()));
    assert_eq!(d[&17], Diagnosis::Class("Misalignment".into()));
}

#[test]
fn closure_sweep() {
    let closure = transitive_closure(&matrix("turbine.csv"), &TNorm::Product, 0.0)
        .unwrap()
        .relation;
    let two = {
        let mut c = vec![
            (1..=5).chain([16]).map(|i| i - 1).collect::<Vec<_>>(),
            (6..=15).chain([17, 18]).map(|i| i - 1).collect(),
        ];
        c.sort();
        c
    };
    for l in [0.91, 0.92] {
        assert_eq!(
            cluster_at(&closure, l, ClusterMode::Components)
                .unwrap()
                .clusters,
            two,
            "λ={l}"
        );
    }
    for l in [0.94, 0.95, 0.96, 0.97, 0.98, 0.99] {
        assert_eq!(
            cluster_at(&closure, l, ClusterMode::Components)
                .unwrap()
                .clusters,
            three_faults(),
            "λ={l}"
        );
    }
    assert_eq!(
        cluster_at(&closure, 1.0, ClusterMode::Components)
            .unwrap()
            .clusters
            .len(),
        18
    );
}

#[test]
fn direct_and_closure_methods_compared() {
    let r = matrix("turbine.csv");
    let rep = compare_methods(
        &r,
        &TNorm::Product,
        &goguen(),
        &default_lambdas(),
        ClusterMode::Components,
    )
    .unwrap();
    assert!((rep.distortion - 0.5786).abs() <= 0.01);
    for (c, agree) in rep.direct.iter().zip(&rep.agreement) {
        if c.lambda >= 0.94 {
            assert!(agree, "λ={}", c.lambda);
        }
    }
    // the cut graph is connected the same way at 0.91 with or without closure,
    // so only the clique view sees the closure merge the last two faults
    let at_091 = rep.direct.iter().position(|c| c.lambda == 0.91).unwrap();
    assert!(rep.agreement[at_091]);
    let rep = compare_methods(
        &r,
        &TNorm::Product,
        &goguen(),
        &default_lambdas(),
        ClusterMode::Cliques,
    )
    .unwrap();
    assert!(!rep.agreement[at_091]);
    assert_eq!(rep.via_closure[at_091].clusters.len(), 2);
}

#[test]
fn slack_triangle_on_turbine_relation() {
    let r = matrix("turbine.csv");
    let alpha = transitivity_degree(&r, &TNorm::Product, &goguen())
        .unwrap()
        .alpha;
    let d = pseudo_metric(&r, &AdditiveGenerator::NegLog);
    let slack = AdditiveGenerator::NegLog.eval(alpha);
    assert_eq!(d.slack_triangle_violation(slack, 1e-12), None);
    assert_eq!(
        d.slack_triangle_violation(slack, 1e-12),
        d.slack_triangle_violation(-(0.8981f64.ln()), 1e-9)
    );
}
