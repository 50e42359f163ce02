//! Argument definitions, validated run configuration and command dispatch.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fuzzrel_core::aggregation::{aggregate_relations, preservation_check, Sampling};
use fuzzrel_core::algebra::{Implication, TNorm};
use fuzzrel_core::clustering::{
    classify_unknowns, compare_methods, lambda_sweep, similarity_from_features, ClusterMode,
    Clustering, FeatureTable,
};
use fuzzrel_core::conditions::{ConditionFamily, EpsilonCondition};
use fuzzrel_core::relation::distortion;
use fuzzrel_core::transitivity::{
    check_table1_condition, is_epsilon_transitive, transitive_closure, transitivity_degree,
};
use fuzzrel_core::FuzzError;
use serde_json::{json, Value};

use crate::grammar::{parse_aggregator, parse_implication, parse_lambdas, parse_tnorm};
use crate::ingest::{read_features, read_matrix, write_matrix};
use crate::report::{num, Format, Report};
use crate::CliError;

const GRAMMAR_HELP: &str = concat!(
    "Operator specs are colon-separated tokens:\n",
    "  t-norm:       minimum|min, product, lukasiewicz, drastic, archimedean:<generator>, phi:<bijection>:<tnorm>\n",
    "  t-conorm:     maximum|max, probabilistic, lukasiewicz, drastic, phi:<bijection>:<tconorm>\n",
    "  generator:    neglog, one-minus, yager:<p>, aczel-alsina:<p>\n",
    "  bijection:    identity, power:<p>\n",
    "  negation:     standard, phi:<bijection>, power-complement:<p>\n",
    "  copula:       product, min, lukasiewicz|w\n",
    "  implication:  residual:<tnorm>, sn:<tconorm>:<negation>, ql:<negation>:<tnorm>:<tconorm>,\n",
    "                t-power:<generator>, g:power:<p>, g:neglog-complement,\n",
    "                probabilistic:<copula>, probabilistic-s:<copula>\n",
    "  aggregator:   min, max, tnorm:<tnorm>, tconorm:<tconorm>, wqam:<identity|log|power:<p>>:<w1>,<w2>,...\n",
    "  lambda:       comma list (0.9,0.95) or start:end:step (0.90:1.00:0.01)\n",
    "Set FUZZREL_THREADS to cap the worker pool."
);

#[derive(Debug, Parser)]
#[command(name = "fuzzrel", version, about = "Degrees of transitivity, closures and λ-cut clustering of fuzzy relations", after_help = GRAMMAR_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Operators {
    /// T-norm spec.
    #[arg(long, default_value = "product")]
    pub tnorm: String,
    /// Implication spec.
    #[arg(long, default_value = "residual:product")]
    pub implication: String,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// json, csv or text.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree of T-transitivity of a relation.
    Degree {
        matrix: PathBuf,
        #[command(flatten)]
        ops: Operators,
        /// Number of largest violations to list.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Whether a relation is ε-T-transitive, by degree and by pointwise condition.
    Check {
        matrix: PathBuf,
        #[command(flatten)]
        ops: Operators,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// T-transitive closure.
    Closure {
        matrix: PathBuf,
        #[arg(long, default_value = "product")]
        tnorm: String,
        /// Stop once no entry moves by more than this.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// λ-cut clustering over a sweep of λ, with diagnosis of unlabelled samples.
    Cluster {
        /// Similarity matrix; built from --features when omitted.
        matrix: Option<PathBuf>,
        /// Feature CSV supplying class labels (and the matrix if none is given).
        #[arg(long)]
        features: Option<PathBuf>,
        #[arg(long, default_value = "0.90:1.00:0.01")]
        lambda: String,
        #[arg(long, default_value = "components")]
        mode: String,
        #[command(flatten)]
        out: Output,
    },
    /// Aggregate relations and check whether the aggregator preserves ε-T-transitivity.
    Aggregate {
        #[arg(required = true, num_args = 1..)]
        matrices: Vec<PathBuf>,
        #[arg(long)]
        aggregator: String,
        #[command(flatten)]
        ops: Operators,
        #[arg(long)]
        epsilon: f64,
        /// Grid step of the preservation search.
        #[arg(long, default_value_t = 0.05)]
        grid_step: f64,
        /// Use this many random tuples instead of the grid.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the aggregated matrix here.
        #[arg(long)]
        matrix_output: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Compare clustering of a relation with clustering of its closure.
    Compare {
        matrix: PathBuf,
        #[command(flatten)]
        ops: Operators,
        #[arg(long, default_value = "0.90:1.00:0.01")]
        lambda: String,
        #[arg(long, default_value = "components")]
        mode: String,
        /// Also write the closure here.
        #[arg(long)]
        matrix_output: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Similarity matrix (1 + cos)/2 from a feature CSV.
    Simdata {
        #[arg(long)]
        features: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Degree,
    Check,
    Closure,
    Cluster,
    Aggregate,
    Compare,
    Simdata,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Degree => "degree",
            CommandKind::Check => "check",
            CommandKind::Closure => "closure",
            CommandKind::Cluster => "cluster",
            CommandKind::Aggregate => "aggregate",
            CommandKind::Compare => "compare",
            CommandKind::Simdata => "simdata",
        }
    }
}

/// Parsed and validated arguments of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub inputs: Vec<PathBuf>,
    pub features: Option<PathBuf>,
    pub tnorm: Option<TNorm>,
    pub implication: Option<Implication>,
    pub epsilon: Option<f64>,
    pub lambdas: Vec<f64>,
    pub mode: ClusterMode,
    pub aggregator: Option<String>,
    pub sampling: Sampling,
    pub top: usize,
    pub tol: f64,
    pub matrix_output: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn existing(p: &Path) -> Result<PathBuf, CliError> {
    if p.is_file() {
        Ok(p.to_path_buf())
    } else {
        Err(CliError::Io {
            path: p.display().to_string(),
            message: "no such file".into(),
        })
    }
}

fn unit_epsilon(e: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&e) {
        Ok(e)
    } else {
        Err(CliError::Validation(format!(
            "--epsilon {e} is outside [0, 1]"
        )))
    }
}

fn mode(s: &str) -> Result<ClusterMode, CliError> {
    s.parse::<ClusterMode>()
        .map_err(|e| CliError::Validation(e.to_string()))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            command: CommandKind::Degree,
            inputs: Vec::new(),
            features: None,
            tnorm: None,
            implication: None,
            epsilon: None,
            lambdas: Vec::new(),
            mode: ClusterMode::Components,
            aggregator: None,
            sampling: Sampling::default(),
            top: 10,
            tol: 0.0,
            matrix_output: None,
            output: None,
            format: Format::Json,
        };
        let out = match &cli.command {
            Command::Degree {
                matrix,
                ops,
                top,
                out,
            } => {
                cfg.inputs = vec![existing(matrix)?];
                cfg.tnorm = Some(parse_tnorm(&ops.tnorm)?);
                cfg.implication = Some(parse_implication(&ops.implication)?);
                cfg.top = *top;
                out
            }
            Command::Check {
                matrix,
                ops,
                epsilon,
                out,
            } => {
                cfg.command = CommandKind::Check;
                cfg.inputs = vec![existing(matrix)?];
                cfg.tnorm = Some(parse_tnorm(&ops.tnorm)?);
                cfg.implication = Some(parse_implication(&ops.implication)?);
                cfg.epsilon = Some(unit_epsilon(*epsilon)?);
                out
            }
            Command::Closure {
                matrix,
                tnorm,
                tol,
                out,
            } => {
                cfg.command = CommandKind::Closure;
                cfg.inputs = vec![existing(matrix)?];
                cfg.tnorm = Some(parse_tnorm(tnorm)?);
                if !(tol.is_finite() && *tol >= 0.0) {
                    return Err(CliError::Validation(format!(
                        "--tol {tol} must be a nonnegative number"
                    )));
                }
                cfg.tol = *tol;
                cfg.format = Format::Csv;
                out
            }
            Command::Cluster {
                matrix,
                features,
                lambda,
                mode: m,
                out,
            } => {
                cfg.command = CommandKind::Cluster;
                if matrix.is_none() && features.is_none() {
                    return Err(CliError::Validation(
                        "cluster needs a matrix or --features".into(),
                    ));
                }
                cfg.inputs = matrix
                    .iter()
                    .map(|p| existing(p))
                    .collect::<Result<_, _>>()?;
                cfg.features = features.as_deref().map(existing).transpose()?;
                cfg.lambdas = parse_lambdas(lambda)?;
                cfg.mode = mode(m)?;
                out
            }
            Command::Aggregate {
                matrices,
                aggregator,
                ops,
                epsilon,
                grid_step,
                samples,
                seed,
                matrix_output,
                out,
            } => {
                cfg.command = CommandKind::Aggregate;
                cfg.inputs = matrices
                    .iter()
                    .map(|p| existing(p))
                    .collect::<Result<_, _>>()?;
                parse_aggregator(aggregator, matrices.len())?;
                cfg.aggregator = Some(aggregator.clone());
                cfg.tnorm = Some(parse_tnorm(&ops.tnorm)?);
                cfg.implication = Some(parse_implication(&ops.implication)?);
                cfg.epsilon = Some(unit_epsilon(*epsilon)?);
                cfg.sampling = match samples {
                    Some(count) => Sampling::Random {
                        count: *count,
                        seed: *seed,
                    },
                    None => Sampling::Grid { step: *grid_step },
                };
                cfg.matrix_output = matrix_output.clone();
                out
            }
            Command::Compare {
                matrix,
                ops,
                lambda,
                mode: m,
                matrix_output,
                out,
            } => {
                cfg.command = CommandKind::Compare;
                cfg.inputs = vec![existing(matrix)?];
                cfg.tnorm = Some(parse_tnorm(&ops.tnorm)?);
                cfg.implication = Some(parse_implication(&ops.implication)?);
                cfg.lambdas = parse_lambdas(lambda)?;
                cfg.mode = mode(m)?;
                cfg.matrix_output = matrix_output.clone();
                out
            }
            Command::Simdata { features, out } => {
                cfg.command = CommandKind::Simdata;
                cfg.features = Some(existing(features)?);
                cfg.format = Format::Csv;
                out
            }
        };
        if let Some(f) = &out.format {
            cfg.format = f.parse()?;
        }
        cfg.output = out.output.clone();
        Ok(cfg)
    }
}

fn ops(cfg: &RunConfig) -> Result<(&TNorm, &Implication), CliError> {
    match (&cfg.tnorm, &cfg.implication) {
        (Some(t), Some(i)) => Ok((t, i)),
        _ => Err(CliError::Internal(
            "operators missing from configuration".into(),
        )),
    }
}

fn one_based(i: usize) -> usize {
    i + 1
}

fn clusters_value(c: &Clustering) -> Value {
    Value::Array(
        c.clusters
            .iter()
            .map(|k| Value::Array(k.iter().map(|&i| Value::from(one_based(i))).collect()))
            .collect(),
    )
}

fn members(k: &[usize]) -> String {
    k.iter()
        .map(|&i| one_based(i).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn lambda_label(l: f64) -> String {
    format!("{}", crate::report::sig12(l))
}

/// Runs one validated command and returns its report.
pub fn run_command(cfg: &RunConfig) -> Result<Report, CliError> {
    let started = Instant::now();
    let mut report = match cfg.command {
        CommandKind::Degree => degree(cfg)?,
        CommandKind::Check => check(cfg)?,
        CommandKind::Closure => closure(cfg)?,
        CommandKind::Cluster => cluster(cfg)?,
        CommandKind::Aggregate => aggregate(cfg)?,
        CommandKind::Compare => compare(cfg)?,
        CommandKind::Simdata => simdata(cfg)?,
    };
    report.time("elapsed_seconds", started.elapsed().as_secs_f64());
    Ok(report)
}

fn degree(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = read_matrix(&cfg.inputs[0])?;
    let (t, imp) = ops(cfg)?;
    let rep = transitivity_degree(&r, t, imp)?;
    let (x, y, z) = rep.witness;
    let top: Vec<Value> = rep
        .violations
        .top(cfg.top)
        .into_iter()
        .map(|v| {
            json!({
                "x": one_based(v.x),
                "z": one_based(v.z),
                "via_y": one_based(v.via_y),
                "composed": num(v.composed),
                "direct": num(v.direct),
                "gap": num(v.gap),
            })
        })
        .collect();
    let mut out = Report::new("degree");
    out.field("n", r.n())
        .field("tnorm", t.name())
        .field("implication", imp.name())
        .field("alpha", num(rep.alpha))
        .field(
            "witness",
            json!({
                "x": one_based(x), "y": one_based(y), "z": one_based(z),
                "labels": [r.label(x), r.label(y), r.label(z)],
            }),
        )
        .field("violation_count", rep.violations.len())
        .field("top_violations", Value::Array(top));
    out.line(format!("tnorm: {}", t.name()))
        .line(format!("implication: {}", imp.name()))
        .line(format!("n: {}", r.n()))
        .line(format!("alpha: {}", num(rep.alpha)))
        .line(format!(
            "witness: x={} y={} z={}",
            r.label(x),
            r.label(y),
            r.label(z)
        ))
        .line(format!("violations: {}", rep.violations.len()));
    for v in rep.violations.top(cfg.top) {
        out.line(format!(
            "  ({}, {}) via {}: composed {} > direct {}",
            r.label(v.x),
            r.label(v.z),
            r.label(v.via_y),
            num(v.composed),
            num(v.direct)
        ));
    }
    Ok(out)
}

fn check(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = read_matrix(&cfg.inputs[0])?;
    let (t, imp) = ops(cfg)?;
    let eps = cfg.epsilon.unwrap_or(0.0);
    let verdict = is_epsilon_transitive(&r, t, imp, eps)?;
    let alpha = transitivity_degree(&r, t, imp)?.alpha;
    let family = ConditionFamily::of(imp);
    let (pointwise, unavailable) = match EpsilonCondition::for_implication(imp, eps) {
        Ok(_) => (Some(check_table1_condition(&r, t, family, imp, eps)?), None),
        Err(FuzzError::FamilyMismatch(reason)) => (None, Some(reason)),
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = &pointwise {
        if p.holds != verdict.holds {
            return Err(CliError::Internal(format!(
                "pointwise {} condition says holds={} but the degree {alpha} says holds={}",
                family.name(),
                p.holds,
                verdict.holds
            )));
        }
    }

    let mut out = Report::new("check");
    out.field("n", r.n())
        .field("tnorm", t.name())
        .field("implication", imp.name())
        .field("epsilon", num(eps))
        .field("alpha", num(alpha))
        .field("holds", verdict.holds);
    match &pointwise {
        Some(p) => {
            let ce = p.counterexample.as_ref().map(|c| {
                json!({
                    "x": one_based(c.triple.0), "y": one_based(c.triple.1), "z": one_based(c.triple.2),
                    "lhs": num(c.lhs), "rhs": num(c.rhs),
                })
            });
            out.field(
                "pointwise",
                json!({ "family": family.name(), "holds": p.holds, "counterexample": ce }),
            );
        }
        None => {
            out.field(
                "pointwise",
                json!({ "family": family.name(), "holds": Value::Null, "unavailable": unavailable }),
            );
        }
    }
    let name = if verdict.holds { "is" } else { "is not" };
    out.line(format!(
        "R {name} {}-{}-transitive under {} (alpha = {})",
        num(eps),
        t.name(),
        imp.name(),
        num(alpha)
    ));
    if let Some(p) = &pointwise {
        out.line(format!(
            "pointwise {} condition: holds={}",
            family.name(),
            p.holds
        ));
        if let Some(c) = &p.counterexample {
            out.line(format!(
                "  first violation at ({}, {}, {}): {} > {}",
                r.label(c.triple.0),
                r.label(c.triple.1),
                r.label(c.triple.2),
                num(c.lhs),
                num(c.rhs)
            ));
        }
    }
    Ok(out)
}

fn closure(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = read_matrix(&cfg.inputs[0])?;
    let t = cfg
        .tnorm
        .as_ref()
        .ok_or_else(|| CliError::Internal("t-norm missing".into()))?;
    let c = transitive_closure(&r, t, cfg.tol)?;
    let mut out = Report::new("closure");
    out.field("n", r.n())
        .field("tnorm", t.name())
        .field("squarings", c.squarings)
        .field("converged", c.converged)
        .field("distortion", num(distortion(&r, &c.relation)?));
    out.line(format!("tnorm: {}", t.name()))
        .line(format!(
            "squarings: {} (converged: {})",
            c.squarings, c.converged
        ))
        .line(format!("distortion: {}", num(distortion(&r, &c.relation)?)));
    out.matrix = Some(c.relation);
    Ok(out)
}

fn load_features(cfg: &RunConfig) -> Result<Option<FeatureTable>, CliError> {
    cfg.features.as_deref().map(read_features).transpose()
}

fn cluster(cfg: &RunConfig) -> Result<Report, CliError> {
    let features = load_features(cfg)?;
    let r = match (cfg.inputs.first(), &features) {
        (Some(p), _) => read_matrix(p)?,
        (None, Some(f)) => similarity_from_features(f)?,
        (None, None) => {
            return Err(CliError::Validation(
                "cluster needs a matrix or --features".into(),
            ))
        }
    };
    if let Some(f) = &features {
        if f.len() != r.n() {
            return Err(CliError::Validation(format!(
                "feature table has {} samples but the matrix has {} objects",
                f.len(),
                r.n()
            )));
        }
    }
    let sweep = lambda_sweep(&r, &cfg.lambdas, cfg.mode)?;
    let mut out = Report::new("cluster");
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    out.line(format!("mode: {}", cfg.mode));
    for c in &sweep {
        out.line(format!(
            "lambda {}: {} clusters",
            lambda_label(c.lambda),
            c.clusters.len()
        ));
        for (k, members_k) in c.clusters.iter().enumerate() {
            out.line(format!("  {}", members(members_k)));
            rows.push(vec![
                lambda_label(c.lambda),
                (k + 1).to_string(),
                members(members_k),
            ]);
        }
        let mut entry = json!({ "lambda": num(c.lambda), "clusters": clusters_value(c) });
        if let Some(f) = &features {
            let d = classify_unknowns(c, f.labels());
            if !d.is_empty() {
                out.line("  diagnosis:");
                let mut obj = serde_json::Map::new();
                for (i, diag) in &d {
                    out.line(format!("    {} -> {}", one_based(*i), diag));
                    obj.insert(one_based(*i).to_string(), Value::from(diag.to_string()));
                }
                entry["diagnosis"] = Value::Object(obj);
            }
        }
        entries.push(entry);
    }
    out.field("n", r.n())
        .field("mode", cfg.mode.to_string())
        .field("sweep", Value::Array(entries));
    out.table = Some((
        vec!["lambda".into(), "cluster".into(), "members".into()],
        rows,
    ));
    Ok(out)
}

fn aggregate(cfg: &RunConfig) -> Result<Report, CliError> {
    let rs = cfg
        .inputs
        .iter()
        .map(|p| read_matrix(p))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = parse_aggregator(cfg.aggregator.as_deref().unwrap_or_default(), rs.len())?;
    let (t, imp) = ops(cfg)?;
    let eps = cfg.epsilon.unwrap_or(0.0);
    let agg = aggregate_relations(&spec, &rs)?;
    let input_alphas = rs
        .iter()
        .map(|r| transitivity_degree(r, t, imp).map(|rep| rep.alpha))
        .collect::<Result<Vec<_>, _>>()?;
    let alpha = transitivity_degree(&agg, t, imp)?.alpha;
    let verdict = preservation_check(&spec, t, imp, eps, &cfg.sampling)?;
    if let Some(path) = &cfg.matrix_output {
        write_matrix(&agg, path)?;
    }
    let ce = verdict.counterexample.as_ref().map(|c| {
        json!({
            "a": c.a.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "b": c.b.iter().map(|&v| num(v)).collect::<Vec<_>>(),
            "lhs": num(c.lhs),
            "rhs": num(c.rhs),
        })
    });
    let mut out = Report::new("aggregate");
    out.field("aggregator", spec.name())
        .field("tnorm", t.name())
        .field("implication", imp.name())
        .field("epsilon", num(eps))
        .field(
            "input_alphas",
            input_alphas.iter().map(|&a| num(a)).collect::<Vec<_>>(),
        )
        .field("aggregate_alpha", num(alpha))
        .field(
            "preservation",
            json!({
                "preserved": verdict.preserved,
                "samples_tested": verdict.samples_tested,
                "resolution": verdict.resolution,
                "counterexample": ce,
            }),
        );
    out.line(format!("aggregator: {}", spec.name()))
        .line(format!(
            "input alphas: {}",
            input_alphas
                .iter()
                .map(|&a| num(a).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ))
        .line(format!("aggregate alpha: {}", num(alpha)))
        .line(format!(
            "preserved: {} ({})",
            verdict.preserved, verdict.resolution
        ));
    if let Some(c) = &verdict.counterexample {
        out.line(format!(
            "  counterexample a={:?} b={:?}: {} > {}",
            c.a,
            c.b,
            num(c.lhs),
            num(c.rhs)
        ));
    }
    out.matrix = Some(agg);
    Ok(out)
}

fn compare(cfg: &RunConfig) -> Result<Report, CliError> {
    let r = read_matrix(&cfg.inputs[0])?;
    let (t, imp) = ops(cfg)?;
    let rep = compare_methods(&r, t, imp, &cfg.lambdas, cfg.mode)?;
    if let Some(path) = &cfg.matrix_output {
        write_matrix(&rep.closure, path)?;
    }
    let mut out = Report::new("compare");
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    out.line(format!("alpha: {}", num(rep.alpha)))
        .line(format!("distortion: {}", num(rep.distortion)))
        .line(format!("closure squarings: {}", rep.closure_squarings));
    for ((d, c), agree) in rep.direct.iter().zip(&rep.via_closure).zip(&rep.agreement) {
        let direct: Vec<String> = d.clusters.iter().map(|k| members(k)).collect();
        let closed: Vec<String> = c.clusters.iter().map(|k| members(k)).collect();
        out.line(format!(
            "lambda {}: agree={} direct=[{}] closure=[{}]",
            lambda_label(d.lambda),
            agree,
            direct.join(" | "),
            closed.join(" | ")
        ));
        rows.push(vec![
            lambda_label(d.lambda),
            agree.to_string(),
            direct.join(" | "),
            closed.join(" | "),
        ]);
        entries.push(json!({
            "lambda": num(d.lambda),
            "agree": agree,
            "direct": clusters_value(d),
            "closure": clusters_value(c),
        }));
    }
    out.field("n", r.n())
        .field("tnorm", t.name())
        .field("implication", imp.name())
        .field("mode", cfg.mode.to_string())
        .field("alpha", num(rep.alpha))
        .field("distortion", num(rep.distortion))
        .field("closure_squarings", rep.closure_squarings)
        .field("lambdas", Value::Array(entries));
    out.table = Some((
        vec![
            "lambda".into(),
            "agree".into(),
            "direct".into(),
            "closure".into(),
        ],
        rows,
    ));
    out.time("direct_seconds", rep.direct_seconds)
        .time("closure_seconds", rep.closure_seconds);
    Ok(out)
}

fn simdata(cfg: &RunConfig) -> Result<Report, CliError> {
    let f = load_features(cfg)?
        .ok_or_else(|| CliError::Validation("simdata needs --features".into()))?;
    let r = similarity_from_features(&f)?;
    let mut out = Report::new("simdata");
    out.field("n", r.n()).field("features", f.names().to_vec());
    out.line(format!(
        "samples: {}, features: {}",
        r.n(),
        f.names().join(",")
    ));
    out.matrix = Some(r);
    Ok(out)
}

/// Validates, runs and renders; the returned text is what the binary prints
/// or writes to `--output`.
pub fn execute(cli: &Cli) -> Result<(RunConfig, String), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let report = run_command(&cfg)?;
    let text = report.render(cfg.format)?;
    Ok((cfg, text))
}
