//! Feature CSV and failure JSON persistence.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use leafmorph::{FEATURE_COUNT, FEATURE_NAMES};

use crate::dataset::Labels;
use crate::error::{PipelineError, Result};
use crate::extract::{FailureRecord, FeatureRow};

pub const ID_COLUMNS: [&str; 3] = ["id", "label_shape", "label_species"];

pub fn header() -> Vec<&'static str> {
    ID_COLUMNS
        .iter()
        .chain(FEATURE_NAMES.iter())
        .copied()
        .collect()
}

pub fn write_features_csv(path: &Path, rows: &[FeatureRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(PipelineError::csv(path))?;
    w.write_record(header()).map_err(PipelineError::csv(path))?;
    for row in rows {
        if let Some(i) = row.values.iter().position(|v| !v.is_finite()) {
            return Err(PipelineError::BadRow {
                path: path.to_path_buf(),
                line: 0,
                message: format!("{}: non-finite {}", row.id, FEATURE_NAMES[i]),
            });
        }
        let mut record = vec![
            row.id.clone(),
            row.labels.shape.clone().unwrap_or_default(),
            row.labels.species.clone().unwrap_or_default(),
        ];
        record.extend(row.values.iter().map(|v| v.to_string()));
        w.write_record(&record).map_err(PipelineError::csv(path))?;
    }
    w.flush().map_err(PipelineError::io(path))
}

/// Reads a table written by [`write_features_csv`]; the header must match exactly.
pub fn read_features_csv(path: &Path) -> Result<Vec<FeatureRow>> {
    let mut r = csv::Reader::from_path(path).map_err(PipelineError::csv(path))?;
    let head = r.headers().map_err(PipelineError::csv(path))?.clone();
    if head.iter().ne(header()) {
        return Err(PipelineError::BadHeader {
            path: path.to_path_buf(),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record.map_err(PipelineError::csv(path))?;
        let bad = |message: String| PipelineError::BadRow {
            path: path.to_path_buf(),
            line: i + 2,
            message,
        };
        let mut values = [0.0; FEATURE_COUNT];
        for (j, v) in values.iter_mut().enumerate() {
            let cell = &record[ID_COLUMNS.len() + j];
            *v = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    bad(format!(
                        "{}: {cell:?} is not a finite number",
                        FEATURE_NAMES[j]
                    ))
                })?;
        }
        let opt = |s: &str| Some(s.to_string()).filter(|s| !s.is_empty());
        rows.push(FeatureRow {
            id: record[0].to_string(),
            labels: Labels {
                shape: opt(&record[1]),
                species: opt(&record[2]),
            },
            values,
        });
    }
    Ok(rows)
}

pub fn write_failures_json(path: &Path, failures: &[FailureRecord]) -> Result<()> {
    let file = File::create(path).map_err(PipelineError::io(path))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, failures)?;
    writeln!(w).map_err(PipelineError::io(path))?;
    w.flush().map_err(PipelineError::io(path))
}
