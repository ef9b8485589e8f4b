//! Scatterplot diagnostics of contour point clouds.

mod alpha;
mod bin;
mod graph;
mod measures;
mod polar;

pub use alpha::{alpha_hull, AlphaHull};
pub use bin::{normalize, normalize_and_bin, BinOptions, PointSet2D};
pub use graph::{
    bias_weight, build_mst, find_outliers, percentile, Edge, GeometricGraph, GraphKind, ScagContext,
};
pub use measures::{
    average_ranks, clumpy, monotonic, pearson, prune_outliers, scagnostic_measures, scagnostics,
    striated, stringy, Pruned, ScagOptions, ScagnosticMeasures,
};
pub use polar::{contour_correlation, polar_extreme_counts};
