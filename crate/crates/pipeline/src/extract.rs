//! Parallel per-image feature extraction with failure isolation.

use std::path::Path;

use leafmorph::imgproc::{ChannelOrder, ColorImage};
use leafmorph::{analyze_leaf, LeafOptions, FEATURE_COUNT};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::dataset::{DatasetManifest, Labels};
use crate::error::{PipelineError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub id: String,
    pub labels: Labels,
    pub values: [f64; FEATURE_COUNT],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub id: String,
    pub path: String,
    pub stage: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Extraction {
    pub rows: Vec<FeatureRow>,
    pub failures: Vec<FailureRecord>,
}

/// Decodes PNG, JPEG or BMP into an RGB image.
pub fn load_image(path: &Path) -> Result<ColorImage> {
    let img = image::open(path)
        .map_err(|source| PipelineError::Image {
            path: path.to_path_buf(),
            source,
        })?
        .to_rgb8();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let pixels = img.pixels().map(|p| p.0).collect();
    Ok(ColorImage::new(w, h, pixels, ChannelOrder::Rgb)?)
}

fn process_one(
    path: &Path,
    opts: &LeafOptions<f64>,
) -> std::result::Result<[f64; FEATURE_COUNT], (String, String)> {
    let img = load_image(path).map_err(|e| ("decode".to_string(), e.to_string()))?;
    analyze_leaf(&img, opts)
        .map(|fv| fv.values)
        .map_err(|e| (e.stage.to_string(), e.source.to_string()))
}

/// Extracts one row per image. Failed images are recorded and left out;
/// more than half failing is an error. Rows keep manifest order.
pub fn extract_features(manifest: &DatasetManifest, config: &RunConfig) -> Result<Extraction> {
    config.validate()?;
    let opts = config.leaf_options();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.workers {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| PipelineError::Config(format!("worker pool: {e}")))?;
    let results: Vec<_> = pool.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|entry| {
                log::debug!("extracting {}", entry.id);
                process_one(&entry.path, &opts)
            })
            .collect()
    });

    let mut out = Extraction::default();
    for (entry, result) in manifest.entries.iter().zip(results) {
        match result {
            Ok(values) => out.rows.push(FeatureRow {
                id: entry.id.clone(),
                labels: entry.labels.clone(),
                values,
            }),
            Err((stage, error)) => {
                log::warn!("{} failed at {stage}: {error}", entry.id);
                out.failures.push(FailureRecord {
                    id: entry.id.clone(),
                    path: entry.path.display().to_string(),
                    stage,
                    error,
                });
            }
        }
    }
    let total = manifest.entries.len();
    if 2 * out.failures.len() > total {
        return Err(PipelineError::BatchFailed {
            failed: out.failures.len(),
            total,
        });
    }
    Ok(out)
}
