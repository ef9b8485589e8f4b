//! Interpretable leaf-image features: preprocessing, contour geometry,
//! shape, texture, color and scagnostic measures, plus PCA/LDA projection.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod color;
pub mod contour;
pub mod error;
pub mod imgproc;
pub mod leaf;
pub mod projection;
pub mod scagnostics;
pub mod scalar;
pub mod shape;
pub mod texture;

pub use error::{Error, Result};
pub use leaf::{
    analyze_leaf, FeatureVector, LeafError, LeafOptions, Stage, FEATURE_COUNT, FEATURE_NAMES,
};
pub use scalar::Scalar;

pub type FeatureVector64 = leaf::FeatureVector<f64>;
pub type FeatureVector32 = leaf::FeatureVector<f32>;
pub type LeafOptions64 = leaf::LeafOptions<f64>;
pub type LeafOptions32 = leaf::LeafOptions<f32>;
pub type ShapeFeatures64 = shape::ShapeFeatures<f64>;
pub type ShapeFeatures32 = shape::ShapeFeatures<f32>;
pub type TextureFeatures64 = texture::TextureFeatures<f64>;
pub type TextureFeatures32 = texture::TextureFeatures<f32>;
pub type ColorFeatures64 = color::ColorFeatures<f64>;
pub type ColorFeatures32 = color::ColorFeatures<f32>;
pub type ScagnosticMeasures64 = scagnostics::ScagnosticMeasures<f64>;
pub type ScagnosticMeasures32 = scagnostics::ScagnosticMeasures<f32>;
pub type Matrix64 = projection::Matrix<f64>;
pub type Matrix32 = projection::Matrix<f32>;
pub type ProjectionModel64 = projection::ProjectionModel<f64>;
pub type ProjectionModel32 = projection::ProjectionModel<f32>;
pub type Point64 = contour::Point<f64>;
pub type Point32 = contour::Point<f32>;
