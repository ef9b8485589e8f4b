use thiserror::Error;

/// Errors raised by the feature-extraction and projection routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("kernel size must be odd and >= 1, got {0}")]
    InvalidKernel(usize),
    #[error("target size must be non-zero, got {width}x{height}")]
    InvalidSize { width: usize, height: usize },
    #[error("image buffer of length {len} does not match {width}x{height}")]
    BufferMismatch {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("histogram has a single occupied gray level; no threshold separates it")]
    DegenerateHistogram,
    #[error("image has no foreground pixels")]
    EmptyForeground,
    #[error("no contour could be traced")]
    NoContour,
    #[error("contour is degenerate: {0}")]
    DegenerateContour(&'static str),
    #[error("convex hull is degenerate (fewer than 3 non-collinear points)")]
    DegenerateHull,
    #[error("region is degenerate (zero area or collinear pixels)")]
    DegenerateRegion,
    #[error("feature `{0}` has a zero denominator")]
    DegenerateFeature(&'static str),
    #[error("gray levels must be in [2, 256], got {0}")]
    InvalidLevels(usize),
    #[error("image too small to form any pixel pair in the requested direction")]
    InsufficientPixels,
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point coordinates must be finite")]
    DegenerateAxis,
    #[error("every vertex was classified as an outlier")]
    AllOutliers,
    #[error("need at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("requested {k} axes but at most {max} are available")]
    InvalidK { k: usize, max: usize },
    #[error("LDA needs at least two classes")]
    NeedTwoClasses,
    #[error("class `{0}` has fewer than 2 rows")]
    DegenerateClass(String),
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
