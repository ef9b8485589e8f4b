//! Dataset discovery and label assignment.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::{PipelineError, Result};

pub const IMAGE_EXTENSIONS: [&str; 4] = ["png", "jpg", "jpeg", "bmp"];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labels {
    pub shape: Option<String>,
    pub species: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    /// Path relative to the dataset root, `/`-separated.
    pub id: String,
    pub labels: Labels,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetManifest {
    pub root: PathBuf,
    pub entries: Vec<ManifestEntry>,
    /// Files that were skipped, with the reason.
    pub warnings: Vec<String>,
}

fn non_empty(s: Option<&str>) -> Option<String> {
    s.map(str::trim).filter(|s| !s.is_empty()).map(String::from)
}

/// Reads `filename,shape,species` rows (species may be absent). Keys are
/// file names, stems, relative paths or directory names.
pub fn load_labels(path: &Path) -> Result<HashMap<String, Labels>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(PipelineError::csv(path))?;
    let mut out = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(PipelineError::csv(path))?;
        let Some(key) = non_empty(record.get(0)) else {
            continue;
        };
        out.insert(
            key,
            Labels {
                shape: non_empty(record.get(1)),
                species: non_empty(record.get(2)),
            },
        );
    }
    Ok(out)
}

pub fn is_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
        .unwrap_or(false)
}

fn lookup<'a>(labels: &'a HashMap<String, Labels>, rel: &Path) -> Option<&'a Labels> {
    let rel_str = rel.to_string_lossy().replace('\\', "/");
    let name = rel.file_name().map(|n| n.to_string_lossy().into_owned());
    let stem = rel.file_stem().map(|n| n.to_string_lossy().into_owned());
    let dirs = rel
        .parent()
        .into_iter()
        .flat_map(|p| p.ancestors())
        .filter_map(|a| a.file_name())
        .map(|n| n.to_string_lossy().into_owned());
    std::iter::once(rel_str)
        .chain(name)
        .chain(stem)
        .chain(dirs)
        .find_map(|k| labels.get(&k))
}

/// Walks `root` in sorted order. With a labels file every image must
/// resolve to a label row; without one, labels stay empty.
pub fn ingest_dataset(root: &Path, labels_file: Option<&Path>) -> Result<DatasetManifest> {
    if !root.is_dir() {
        return Err(PipelineError::io(root)(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            "dataset root is not a directory",
        )));
    }
    let labels = labels_file.map(load_labels).transpose()?;
    let labels_canon = labels_file.and_then(|p| p.canonicalize().ok());
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for item in WalkDir::new(root).sort_by_file_name() {
        let item = item.map_err(|e| PipelineError::io(root)(e.into()))?;
        if !item.file_type().is_file() {
            continue;
        }
        let path = item.path();
        if labels_canon.is_some() && path.canonicalize().ok() == labels_canon {
            continue;
        }
        if !is_image(path) {
            let msg = format!("skipping unsupported file {}", path.display());
            log::warn!("{msg}");
            warnings.push(msg);
            continue;
        }
        let rel = path.strip_prefix(root).unwrap_or(path);
        let labels = match &labels {
            Some(map) => lookup(map, rel)
                .cloned()
                .ok_or_else(|| PipelineError::MissingLabel(path.to_path_buf()))?,
            None => Labels::default(),
        };
        entries.push(ManifestEntry {
            path: path.to_path_buf(),
            id: rel.to_string_lossy().replace('\\', "/"),
            labels,
        });
    }
    if entries.is_empty() {
        return Err(PipelineError::EmptyDataset(root.to_path_buf()));
    }
    Ok(DatasetManifest {
        root: root.to_path_buf(),
        entries,
        warnings,
    })
}
