use std::path::PathBuf;

use leafmorph::LeafError;

pub type Result<T, E = PipelineError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no label for {}", .0.display())]
    MissingLabel(PathBuf),
    #[error("no images found under {}", .0.display())]
    EmptyDataset(PathBuf),
    #[error("{failed} of {total} images failed")]
    BatchFailed { failed: usize, total: usize },
    #[error("{path}: unexpected feature table header")]
    BadHeader { path: PathBuf },
    #[error("{path}, line {line}: {message}")]
    BadRow {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("row {0} has no value in the chosen label column")]
    UnlabeledRow(String),
    #[error(transparent)]
    Core(#[from] leafmorph::Error),
    #[error(transparent)]
    Leaf(#[from] LeafError),
}

impl PipelineError {
    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| PipelineError::Io { path, source }
    }

    pub fn csv(path: impl Into<PathBuf>) -> impl FnOnce(csv::Error) -> Self {
        let path = path.into();
        move |source| PipelineError::Csv { path, source }
    }
}
