//! Matrix and feature CSV input, matrix CSV output.
//!
//! A matrix file holds one row per line, comma separated, with optional
//! `#` comment lines. A leading `# labels: a,b,c` line names the objects.

use std::fs;
use std::io::Write;
use std::path::Path;

use fuzzrel_core::clustering::FeatureTable;
use fuzzrel_core::relation::FuzzyRelation;
use fuzzrel_core::FuzzError;

use crate::CliError;

const LABELS_PREFIX: &str = "# labels:";

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse_matrix(text: &str, source: &str) -> Result<FuzzyRelation, CliError> {
    let invalid = |msg: String| CliError::Validation(format!("{source}: {msg}"));
    let mut labels = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix(LABELS_PREFIX) {
            labels = Some(
                rest.split(',')
                    .map(|l| l.trim().to_string())
                    .collect::<Vec<_>>(),
            );
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let r = rows.len() + 1;
        let row = line
            .split(',')
            .enumerate()
            .map(|(c, cell)| {
                let cell = cell.trim();
                cell.parse::<f64>().map_err(|_| {
                    invalid(format!("row {r}, column {}: cannot parse '{cell}'", c + 1))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(invalid("no matrix rows".into()));
    }
    let n = rows.len();
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(invalid(format!(
            "non-square matrix: {n} rows but row {} has {} columns",
            r + 1,
            row.len()
        )));
    }
    let rel = FuzzyRelation::from_rows(&rows).map_err(|e| match e {
        FuzzError::InvalidEntry { row, col, value } => invalid(format!(
            "row {}, column {}: entry {value} is outside [0, 1]",
            row + 1,
            col + 1
        )),
        other => invalid(other.to_string()),
    })?;
    match labels {
        Some(l) => rel.with_labels(l).map_err(|e| invalid(e.to_string())),
        None => Ok(rel),
    }
}

pub fn read_matrix(path: &Path) -> Result<FuzzyRelation, CliError> {
    parse_matrix(&read(path)?, &path.display().to_string())
}

/// Six decimals per entry, so a round trip moves entries by at most 5e-7.
pub fn format_matrix(r: &FuzzyRelation) -> String {
    let mut out = String::new();
    if let Some(labels) = r.labels() {
        out.push_str(LABELS_PREFIX);
        out.push(' ');
        out.push_str(&labels.join(","));
        out.push('\n');
    }
    for x in 0..r.n() {
        let row: Vec<String> = r.row(x).iter().map(|v| format!("{v:.6}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_matrix(r: &FuzzyRelation, path: &Path) -> Result<(), CliError> {
    let mut f = fs::File::create(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    f.write_all(format_matrix(r).as_bytes())
        .map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
}

/// Header of feature names with an optional trailing `label` column; an
/// empty label marks a test sample.
pub fn parse_features(text: &str, source: &str) -> Result<FeatureTable, CliError> {
    let invalid = |msg: String| CliError::Validation(format!("{source}: {msg}"));
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| invalid(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    if header.iter().all(|h| h.is_empty()) {
        return Err(invalid("empty feature file".into()));
    }
    let has_labels = header
        .last()
        .is_some_and(|h| h.eq_ignore_ascii_case("label"));
    let k = if has_labels {
        header.len() - 1
    } else {
        header.len()
    };
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| invalid(e.to_string()))?;
        let r = i + 1;
        if rec.len() != header.len() {
            return Err(invalid(format!(
                "row {r} has {} fields, expected {}",
                rec.len(),
                header.len()
            )));
        }
        let row = (0..k)
            .map(|c| {
                rec[c].parse::<f64>().map_err(|_| {
                    invalid(format!(
                        "row {r}, column '{}': cannot parse '{}'",
                        header[c], &rec[c]
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.iter().all(|v| *v == 0.0) {
            return Err(invalid(format!("row {r} is all zeros")));
        }
        rows.push(row);
        labels.push(if has_labels && !rec[k].is_empty() {
            Some(rec[k].to_string())
        } else {
            None
        });
    }
    if rows.is_empty() {
        return Err(invalid("no samples".into()));
    }
    FeatureTable::new(header[..k].to_vec(), rows, labels).map_err(|e| invalid(e.to_string()))
}

pub fn read_features(path: &Path) -> Result<FeatureTable, CliError> {
    parse_features(&read(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matrix_errors_name_the_cell() {
        let err = parse_matrix("1,0.5\n1.2,1\n", "m.csv")
            .unwrap_err()
            .to_string();
        assert!(err.contains("row 2, column 1"), "{err}");
        let err = parse_matrix("1,0.5,0.1\n0.3,1,0.2\n", "m.csv")
            .unwrap_err()
            .to_string();
        assert!(err.contains("non-square"), "{err}");
        let err = parse_matrix("1,x\n0,1\n", "m.csv").unwrap_err().to_string();
        assert!(
            err.contains("row 1, column 2") && err.contains("'x'"),
            "{err}"
        );
        assert!(parse_matrix("# only a comment\n", "m.csv").is_err());
    }

    #[test]
    fn labels_header() {
        let r = parse_matrix("# labels: a, b\n1,0.5\n0.5,1\n", "m.csv").unwrap();
        assert_eq!(r.label(1), "b");
        let again = parse_matrix(&format_matrix(&r), "m.csv").unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn features_with_labels() {
        let f = parse_features("a,b,label\n1,2,x\n3,4,\n", "f.csv").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.labels(), &[Some("x".to_string()), None]);
        let err = parse_features("a,b\n1,2\n0,0\n", "f.csv")
            .unwrap_err()
            .to_string();
        assert!(err.contains("row 2"), "{err}");
        assert!(parse_features("", "f.csv").is_err());
        assert!(parse_features("a,b\n1\n", "f.csv").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_within_half_micro(v in proptest::collection::vec(0.0f64..=1.0, 16)) {
            let r = FuzzyRelation::new(4, v).unwrap();
            let back = parse_matrix(&format_matrix(&r), "p").unwrap();
            prop_assert!(back.max_abs_diff(&r).unwrap() <= 5e-7);
        }
    }
}
