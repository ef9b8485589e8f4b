//! The 21 shape descriptors of a leaf contour.

use crate::contour::{
    centroid, contour_points, convex_hull, diameter, fit_ellipse, footprint_hull, min_area_rect,
    perimeter, Contour, ConvexHullPoly, EllipseFit,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which rectangularity formula to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rectangularity {
    /// Area over the area of the minimum bounding rectangle.
    #[default]
    AreaOverBox,
    /// Squared perimeter over area (numerically equal to compactness).
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ShapeOptions {
    pub rectangularity: Rectangularity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFeatures<T> {
    pub diameter: T,
    pub physiological_length: T,
    pub physiological_width: T,
    pub area: T,
    pub perimeter: T,
    pub eccentricity: T,
    pub center_x: T,
    pub center_y: T,
    pub aspect_ratio: T,
    pub roundness: T,
    pub compactness: T,
    pub rectangularity: T,
    pub narrow_factor: T,
    pub perim_ratio_diameter: T,
    pub perim_ratio_length: T,
    pub perim_ratio_lw: T,
    pub perimeter_convexity: T,
    pub area_convexity: T,
    pub area_ratio_convexity: T,
    pub equivalent_diameter: T,
    pub convex_point_count: T,
    /// Number of hull vertices; reported alongside but not part of the 21.
    pub hull_vertex_count: usize,
}

impl<T: Scalar> ShapeFeatures<T> {
    pub const NAMES: [&'static str; 21] = [
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
    ];

    pub fn values(&self) -> [T; 21] {
        [
            self.diameter,
            self.physiological_length,
            self.physiological_width,
            self.area,
            self.perimeter,
            self.eccentricity,
            self.center_x,
            self.center_y,
            self.aspect_ratio,
            self.roundness,
            self.compactness,
            self.rectangularity,
            self.narrow_factor,
            self.perim_ratio_diameter,
            self.perim_ratio_length,
            self.perim_ratio_lw,
            self.perimeter_convexity,
            self.area_convexity,
            self.area_ratio_convexity,
            self.equivalent_diameter,
            self.convex_point_count,
        ]
    }
}

/// `sqrt(1 - b²/a²)`.
pub fn eccentricity<T: Scalar>(e: &EllipseFit<T>) -> Result<T> {
    if e.a <= T::zero() {
        return Err(Error::DegenerateRegion);
    }
    let ratio = e.b / e.a;
    Ok((T::one() - ratio * ratio).max(T::zero()).sqrt())
}

/// Pixel count of the filled region.
pub fn region_area(c: &Contour) -> usize {
    c.region().area()
}

/// `(convex_point_count, hull_vertex_count)`: contour points within half a
/// pixel of the hull boundary, and hull vertices.
pub fn hull_point_counts<T: Scalar>(
    points: &[crate::contour::Point<T>],
    hull: &ConvexHullPoly<T>,
) -> (usize, usize) {
    let tol = T::half();
    let on_boundary = points
        .iter()
        .filter(|&&p| hull.boundary_distance(p) <= tol)
        .count();
    (on_boundary, hull.vertices.len())
}

fn ratio<T: Scalar>(num: T, den: T, name: &'static str) -> Result<T> {
    if den > T::zero() && den.is_finite() {
        Ok(num / den)
    } else {
        Err(Error::DegenerateFeature(name))
    }
}

pub fn shape_features<T: Scalar>(c: &Contour, opts: &ShapeOptions) -> Result<ShapeFeatures<T>> {
    let points = contour_points::<T>(c);
    let hull = convex_hull(&points)?;
    let cover = footprint_hull::<T>(c);
    let rect = min_area_rect::<T>(c);
    let ellipse = fit_ellipse::<T>(c)?;
    let center = centroid::<T>(c);

    let f1 = diameter(&points);
    let (f2, f3) = (rect.length, rect.width);
    let f4 = T::from_count(region_area(c));
    let f5 = perimeter::<T>(c);
    let f6 = eccentricity(&ellipse)?;
    let (convex_points, hull_vertices) = hull_point_counts(&points, &hull);
    let four = T::of(4.0);

    let compactness = ratio(f5 * f5, f4, "compactness")?;
    Ok(ShapeFeatures {
        diameter: f1,
        physiological_length: f2,
        physiological_width: f3,
        area: f4,
        perimeter: f5,
        eccentricity: f6,
        center_x: center.x,
        center_y: center.y,
        aspect_ratio: ratio(f2, f3, "aspect_ratio")?,
        roundness: ratio(four * T::pi() * f4, f5 * f5, "roundness")?,
        compactness,
        rectangularity: match opts.rectangularity {
            Rectangularity::AreaOverBox => ratio(f4, f2 * f3, "rectangularity")?,
            Rectangularity::AsPrinted => compactness,
        },
        narrow_factor: ratio(f1, f2, "narrow_factor")?,
        perim_ratio_diameter: ratio(f5, f1, "perim_ratio_diameter")?,
        perim_ratio_length: ratio(f5, f2, "perim_ratio_length")?,
        perim_ratio_lw: ratio(f5, f2 * f3, "perim_ratio_lw")?,
        perimeter_convexity: ratio(hull.perimeter, f5, "perimeter_convexity")?,
        area_convexity: ratio(cover.area - f4, f4, "area_convexity")?,
        area_ratio_convexity: ratio(f4, cover.area, "area_ratio_convexity")?,
        equivalent_diameter: (four * f4 / T::pi()).sqrt(),
        convex_point_count: T::from_count(convex_points),
        hull_vertex_count: hull_vertices,
    })
}
