//! Leaf boundary extraction and the geometric primitives built on it.

mod geometry;
mod hull;
mod point;
mod trace;

pub use geometry::{
    centroid, contour_points, fit_ellipse, footprint_hull, min_area_rect, perimeter,
    region_centroid, region_ellipse, to_polar, EllipseFit, PolarContour, PolarSample,
};
pub use hull::{
    convex_hull, diameter, min_area_rect_of_hull, min_area_rect_points, polygon_area,
    polygon_perimeter, segment_distance, ConvexHullPoly, RotatedRect,
};
pub use point::{orient, Point};
pub use trace::{best_contour, extract_contours, Contour, Pixel, Region};
