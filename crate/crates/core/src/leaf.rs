//! Whole-image feature extraction: preprocessing followed by every feature
//! family, flattened into one named vector.

use std::fmt;

use crate::color::{color_moments, ColorFeatures, ColorOptions};
use crate::contour::{best_contour, centroid, contour_points, to_polar, Contour, Point};
use crate::error::Error;
use crate::imgproc::{
    bgr_to_rgb, gaussian_blur, morphology, otsu_threshold, remove_stalk, to_grayscale, BinaryImage,
    ChannelOrder, ColorImage, GrayImage, MorphOp, Resize, DEFAULT_SIZE,
};
use crate::scagnostics::{
    contour_correlation, polar_extreme_counts, scagnostics, ScagOptions, ScagnosticMeasures,
};
use crate::scalar::Scalar;
use crate::shape::{shape_features, ShapeFeatures, ShapeOptions};
use crate::texture::{texture_features, TextureFeatures, TextureOptions};

pub const FEATURE_COUNT: usize = 52;

/// Column order of [`FeatureVector`]: shape, texture, color, Cartesian
/// scagnostics, polar scagnostics, then the polar extreme counts and the
/// contour correlation.
pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "diameter",
    "physiological_length",
    "physiological_width",
    "area",
    "perimeter",
    "eccentricity",
    "center_x",
    "center_y",
    "aspect_ratio",
    "roundness",
    "compactness",
    "rectangularity",
    "narrow_factor",
    "perim_ratio_diameter",
    "perim_ratio_length",
    "perim_ratio_lw",
    "perimeter_convexity",
    "area_convexity",
    "area_ratio_convexity",
    "equivalent_diameter",
    "convex_point_count",
    "contrast",
    "entropy",
    "correlation",
    "inverse_difference_moments",
    "mean_r",
    "mean_g",
    "mean_b",
    "sd_r",
    "sd_g",
    "sd_b",
    "outlying_contour",
    "skewed_contour",
    "clumpy_contour",
    "sparse_contour",
    "striated_contour",
    "convex_contour",
    "skinny_contour",
    "stringy_contour",
    "monotonic_contour",
    "outlying_polar",
    "skewed_polar",
    "clumpy_polar",
    "sparse_polar",
    "striated_polar",
    "convex_polar",
    "skinny_polar",
    "stringy_polar",
    "monotonic_polar",
    "n_max_points",
    "n_min_points",
    "contour_correlation",
];

/// Where in the per-image flow an error happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Preprocess,
    Contour,
    Shape,
    Texture,
    Color,
    Scagnostics,
    Validate,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Preprocess => "preprocess",
            Stage::Contour => "contour",
            Stage::Shape => "shape",
            Stage::Texture => "texture",
            Stage::Color => "color",
            Stage::Scagnostics => "scagnostics",
            Stage::Validate => "validate",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{stage}: {source}")]
pub struct LeafError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

trait AtStage<V> {
    fn at(self, stage: Stage) -> Result<V, LeafError>;
}

impl<V> AtStage<V> for crate::error::Result<V> {
    fn at(self, stage: Stage) -> Result<V, LeafError> {
        self.map_err(|source| LeafError { stage, source })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeafOptions<T> {
    /// Working resolution; `None` keeps the input size.
    pub resize: Option<(usize, usize)>,
    pub blur_kernel: usize,
    /// Non-positive means "derive from the kernel size".
    pub blur_sigma: f64,
    pub close_kernel: usize,
    pub remove_stalk: bool,
    pub shape: ShapeOptions,
    pub texture: TextureOptions,
    pub color: ColorOptions,
    pub scagnostics: ScagOptions<T>,
}

impl<T> Default for LeafOptions<T> {
    fn default() -> Self {
        Self {
            resize: Some(DEFAULT_SIZE),
            blur_kernel: 55,
            blur_sigma: 0.0,
            close_kernel: 5,
            remove_stalk: true,
            shape: ShapeOptions::default(),
            texture: TextureOptions::default(),
            color: ColorOptions::default(),
            scagnostics: ScagOptions::default(),
        }
    }
}

/// Every intermediate of the preprocessing chain, in order.
#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub rgb: ColorImage,
    pub gray: GrayImage,
    pub blurred: GrayImage,
    pub threshold: u8,
    pub binary: BinaryImage,
    pub stalk_removed: BinaryImage,
    pub closed: BinaryImage,
    /// Resized color image, gray image and silhouette the features read.
    pub color: ColorImage,
    pub gray_resized: GrayImage,
    pub mask: BinaryImage,
}

/// Channel fix, gray conversion, smoothing, Otsu, stalk removal, hole
/// closing and resizing.
pub fn preprocess<T: Scalar>(
    img: &ColorImage,
    opts: &LeafOptions<T>,
) -> Result<Preprocessed, LeafError> {
    let s = Stage::Preprocess;
    let rgb = match img.order() {
        ChannelOrder::Bgr => bgr_to_rgb(img),
        ChannelOrder::Rgb => img.clone(),
    };
    let gray = to_grayscale(&rgb);
    let blurred = gaussian_blur(&gray, opts.blur_kernel, opts.blur_sigma).at(s)?;
    let (otsu, binary) = otsu_threshold::<f64>(&blurred).at(s)?;
    let stalk_removed = if opts.remove_stalk {
        remove_stalk(&binary).at(s)?
    } else {
        binary.clone()
    };
    let closed = morphology(&stalk_removed, MorphOp::Close, opts.close_kernel).at(s)?;
    let (color, gray_resized, mask) = match opts.resize {
        Some((w, h)) => (
            rgb.resize(w, h).at(s)?,
            gray.resize(w, h).at(s)?,
            closed.resize(w, h).at(s)?,
        ),
        None => (rgb.clone(), gray.clone(), closed.clone()),
    };
    Ok(Preprocessed {
        rgb,
        gray,
        blurred,
        threshold: otsu.threshold,
        binary,
        stalk_removed,
        closed,
        color,
        gray_resized,
        mask,
    })
}

/// The 52 features of one leaf, in [`FEATURE_NAMES`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector<T> {
    pub values: [T; FEATURE_COUNT],
}

impl<T: Scalar> FeatureVector<T> {
    pub fn from_parts(
        shape: &ShapeFeatures<T>,
        texture: &TextureFeatures<T>,
        color: &ColorFeatures<T>,
        cartesian: &ScagnosticMeasures<T>,
        polar: &ScagnosticMeasures<T>,
        extremes: (usize, usize),
        correlation: T,
    ) -> Self {
        let mut values = [T::zero(); FEATURE_COUNT];
        let tail = [
            T::from_count(extremes.0),
            T::from_count(extremes.1),
            correlation,
        ];
        let all = shape
            .values()
            .into_iter()
            .chain(texture.values())
            .chain(color.values())
            .chain(cartesian.values())
            .chain(polar.values())
            .chain(tail);
        for (slot, v) in values.iter_mut().zip(all) {
            *slot = v;
        }
        Self { values }
    }

    pub fn get(&self, name: &str) -> Option<T> {
        FEATURE_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, T)> + '_ {
        FEATURE_NAMES
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }

    /// Name of the first non-finite entry, if any.
    pub fn first_non_finite(&self) -> Option<&'static str> {
        self.iter().find(|(_, v)| !v.is_finite()).map(|(n, _)| n)
    }
}

/// Features of an already-traced silhouette plus the images it came from.
/// Texture is measured over the grayscale window bounding the leaf region.
pub fn features_from_parts<T: Scalar>(
    contour: &Contour,
    gray: &GrayImage,
    color: &ColorImage,
    mask: &BinaryImage,
    opts: &LeafOptions<T>,
) -> Result<FeatureVector<T>, LeafError> {
    let shape = shape_features::<T>(contour, &opts.shape).at(Stage::Shape)?;
    let (x0, y0, w, h) = contour.region().bbox();
    let leaf_gray = gray
        .crop(x0 as usize, y0 as usize, w, h)
        .at(Stage::Texture)?;
    let texture = texture_features::<T>(&leaf_gray, &opts.texture).at(Stage::Texture)?;
    let colors = color_moments::<T>(color, mask, &opts.color).at(Stage::Color)?;

    let s = Stage::Scagnostics;
    let cartesian = scagnostics(&contour_points::<T>(contour), &opts.scagnostics).at(s)?;
    let polar = to_polar(contour, centroid::<T>(contour)).at(s)?;
    let polar_points: Vec<Point<T>> = polar
        .samples
        .iter()
        .map(|p| Point::new(p.theta, p.r))
        .collect();
    let polar_measures = scagnostics(&polar_points, &opts.scagnostics).at(s)?;
    let extremes = polar_extreme_counts(&polar);
    let correlation = contour_correlation::<T>(contour);

    let fv = FeatureVector::from_parts(
        &shape,
        &texture,
        &colors,
        &cartesian,
        &polar_measures,
        extremes,
        correlation,
    );
    if let Some(name) = fv.first_non_finite() {
        return Err(LeafError {
            stage: Stage::Validate,
            source: Error::DegenerateFeature(name),
        });
    }
    Ok(fv)
}

/// Runs the full chain on one color image.
pub fn analyze_leaf<T: Scalar>(
    img: &ColorImage,
    opts: &LeafOptions<T>,
) -> Result<FeatureVector<T>, LeafError> {
    let pre = preprocess(img, opts)?;
    let contour = best_contour(&pre.mask).at(Stage::Contour)?;
    features_from_parts(&contour, &pre.gray_resized, &pre.color, &pre.mask, opts)
}
