//! PCA/LDA on a feature table, with scores, model and plot outputs.

use std::fs;
use std::path::{Path, PathBuf};

use leafmorph::projection::{lda_fit, pca_fit, Matrix, ProjectionKind, ProjectionModel, Scaling};
use leafmorph::FEATURE_NAMES;
use serde::Serialize;

use crate::error::{PipelineError, Result};
use crate::extract::FeatureRow;
use crate::svg::scatter_matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelColumn {
    Shape,
    Species,
}

impl LabelColumn {
    pub fn as_str(self) -> &'static str {
        match self {
            LabelColumn::Shape => "shape",
            LabelColumn::Species => "species",
        }
    }

    fn get(self, row: &FeatureRow) -> Option<&str> {
        match self {
            LabelColumn::Shape => row.labels.shape.as_deref(),
            LabelColumn::Species => row.labels.species.as_deref(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProjectRequest {
    pub kind: ProjectionKind,
    pub label: LabelColumn,
    /// `None` picks min(5, largest valid k).
    pub k: Option<usize>,
    pub scaling: Scaling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectOutputs {
    pub scores: PathBuf,
    pub model: PathBuf,
    pub plot: PathBuf,
    pub axes: usize,
    pub explained: Vec<f64>,
}

#[derive(Serialize)]
struct ModelFile<'a> {
    kind: &'static str,
    label: &'static str,
    scaling: &'static str,
    rows: usize,
    features: &'a [&'static str],
    means: &'a [f64],
    scales: &'a [f64],
    constant: &'a [bool],
    axis_names: &'a [String],
    axes: &'a [Vec<f64>],
    eigenvalues: &'a [f64],
    explained: &'a [f64],
    cumulative_explained: Vec<f64>,
}

fn axis_prefix(kind: ProjectionKind) -> &'static str {
    match kind {
        ProjectionKind::Pca => "PC",
        ProjectionKind::Lda => "LD",
    }
}

/// Fits the projection and writes `{kind}_scores.csv`, `{kind}_model.json`
/// and `{kind}_plot.svg` into `out_dir`.
pub fn project_and_plot(
    rows: &[FeatureRow],
    req: &ProjectRequest,
    out_dir: &Path,
) -> Result<ProjectOutputs> {
    let labels: Vec<String> = rows
        .iter()
        .map(|r| match (req.kind, req.label.get(r)) {
            (_, Some(l)) => Ok(l.to_string()),
            (ProjectionKind::Pca, None) => Ok("unlabeled".to_string()),
            (ProjectionKind::Lda, None) => Err(PipelineError::UnlabeledRow(r.id.clone())),
        })
        .collect::<Result<_>>()?;
    let data: Vec<Vec<f64>> = rows.iter().map(|r| r.values.to_vec()).collect();
    let x = Matrix::from_rows(&data)?;
    let max_k = match req.kind {
        ProjectionKind::Pca => rows.len().saturating_sub(1).min(FEATURE_NAMES.len()),
        ProjectionKind::Lda => labels
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            .saturating_sub(1),
    };
    let k = req.k.unwrap_or_else(|| max_k.clamp(1, 5));
    let (model, scores): (ProjectionModel<f64>, Matrix<f64>) = match req.kind {
        ProjectionKind::Pca => pca_fit(&x, k, req.scaling)?,
        ProjectionKind::Lda => lda_fit(&x, &labels, k, req.scaling)?,
    };

    fs::create_dir_all(out_dir).map_err(PipelineError::io(out_dir))?;
    let stem = model.kind.as_str();
    let axis_names: Vec<String> = (1..=k)
        .map(|i| format!("{}{i}", axis_prefix(req.kind)))
        .collect();

    let scores_path = out_dir.join(format!("{stem}_scores.csv"));
    let mut w = csv::Writer::from_path(&scores_path).map_err(PipelineError::csv(&scores_path))?;
    let mut head = vec!["id".to_string(), "label".to_string()];
    head.extend(axis_names.iter().cloned());
    w.write_record(&head)
        .map_err(PipelineError::csv(&scores_path))?;
    let score_rows: Vec<Vec<f64>> = (0..scores.rows()).map(|i| scores.row(i).to_vec()).collect();
    for ((row, label), s) in rows.iter().zip(&labels).zip(&score_rows) {
        let mut rec = vec![row.id.clone(), label.clone()];
        rec.extend(s.iter().map(|v| v.to_string()));
        w.write_record(&rec)
            .map_err(PipelineError::csv(&scores_path))?;
    }
    w.flush().map_err(PipelineError::io(&scores_path))?;

    let model_path = out_dir.join(format!("{stem}_model.json"));
    let file = ModelFile {
        kind: stem,
        label: req.label.as_str(),
        scaling: match req.scaling {
            Scaling::Standardize => "standardize",
            Scaling::CenterOnly => "center",
        },
        rows: rows.len(),
        features: &FEATURE_NAMES,
        means: &model.standardization.means,
        scales: &model.standardization.scales,
        constant: &model.standardization.constant,
        axis_names: &axis_names,
        axes: &model.axes,
        eigenvalues: &model.eigenvalues,
        explained: &model.explained,
        cumulative_explained: model.cumulative_explained(),
    };
    let mut json = serde_json::to_string_pretty(&file)?;
    json.push('\n');
    fs::write(&model_path, json).map_err(PipelineError::io(&model_path))?;

    let plot_path = out_dir.join(format!("{stem}_plot.svg"));
    let shown = k.min(5);
    let ids: Vec<String> = rows.iter().map(|r| r.id.clone()).collect();
    let plotted: Vec<Vec<f64>> = score_rows.iter().map(|r| r[..shown].to_vec()).collect();
    let title = format!("{} coloured by {}", stem.to_uppercase(), req.label.as_str());
    let svg = scatter_matrix(&title, &axis_names[..shown], &ids, &labels, &plotted);
    fs::write(&plot_path, svg).map_err(PipelineError::io(&plot_path))?;

    Ok(ProjectOutputs {
        scores: scores_path,
        model: model_path,
        plot: plot_path,
        axes: k,
        explained: model.explained.clone(),
    })
}
