//! Centroid, polar form, perimeter, ellipse fit and the enclosing shapes of
//! a traced contour.
//!
//! Perimeter and diameter run through pixel centres. The hull area and the
//! minimum-area rectangle are measured over pixel footprints (unit squares),
//! so they always cover the pixel-count area of the region.

use std::cmp::Ordering;

use super::hull::{convex_hull, min_area_rect_of_hull, ConvexHullPoly, RotatedRect};
use super::point::Point;
use super::trace::{Contour, Region};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Contour pixel centres as points.
pub fn contour_points<T: Scalar>(c: &Contour) -> Vec<Point<T>> {
    c.points()
        .iter()
        .map(|p| Point::new(T::from_int(p.x), T::from_int(p.y)))
        .collect()
}

/// Closed-chain length: axial steps count 1, diagonal steps √2.
pub fn perimeter<T: Scalar>(c: &Contour) -> T {
    let (axial, diagonal) = c.step_counts();
    T::from_count(axial) + T::from_count(diagonal) * T::two().sqrt()
}

/// Mean pixel coordinate of a region.
pub fn region_centroid<T: Scalar>(region: &Region) -> Point<T> {
    let n = region.area() as i128;
    let (sx, sy) = region.pixels().fold((0i128, 0i128), |(sx, sy), p| {
        (sx + p.x as i128, sy + p.y as i128)
    });
    let mean =
        |s: i128| T::from_wide(s.div_euclid(n)) + T::from_wide(s.rem_euclid(n)) / T::from_wide(n);
    Point::new(mean(sx), mean(sy))
}

/// Centroid of the pixels enclosed by the contour.
pub fn centroid<T: Scalar>(c: &Contour) -> Point<T> {
    region_centroid(c.region())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarSample<T> {
    pub theta: T,
    pub r: T,
}

/// Contour in polar form around a centre, sorted by angle in `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarContour<T> {
    pub center: Point<T>,
    pub samples: Vec<PolarSample<T>>,
}

impl<T: Scalar> PolarContour<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Cartesian point of a sample.
    pub fn to_cartesian(&self, s: PolarSample<T>) -> Point<T> {
        Point::new(
            self.center.x + s.r * s.theta.cos(),
            self.center.y + s.r * s.theta.sin(),
        )
    }

    pub fn as_points(&self) -> Vec<Point<T>> {
        self.samples
            .iter()
            .map(|s| Point::new(s.theta, s.r))
            .collect()
    }
}

/// Maps contour points to `(atan2(y - cy, x - cx), distance)`. Equal angles
/// keep the larger radius.
pub fn to_polar<T: Scalar>(c: &Contour, center: Point<T>) -> Result<PolarContour<T>> {
    let pi = T::pi();
    let mut samples: Vec<PolarSample<T>> = contour_points::<T>(c)
        .into_iter()
        .map(|p| {
            let d = p - center;
            let theta = d.y.atan2(d.x);
            PolarSample {
                theta: if theta >= pi { -pi } else { theta },
                r: d.norm(),
            }
        })
        .collect();
    if samples.iter().all(|s| s.r == T::zero()) {
        return Err(Error::DegenerateContour(
            "all points coincide with the centre",
        ));
    }
    samples.sort_by(|a, b| {
        a.theta
            .partial_cmp(&b.theta)
            .unwrap_or(Ordering::Equal)
            .then(b.r.partial_cmp(&a.r).unwrap_or(Ordering::Equal))
    });
    samples.dedup_by(|later, kept| later.theta == kept.theta);
    Ok(PolarContour { center, samples })
}

/// Convex hull of the contour's pixel footprints.
pub fn footprint_hull<T: Scalar>(c: &Contour) -> ConvexHullPoly<T> {
    let h = T::half();
    let corners: Vec<Point<T>> = contour_points::<T>(c)
        .into_iter()
        .flat_map(|p| {
            [
                Point::new(p.x - h, p.y - h),
                Point::new(p.x + h, p.y - h),
                Point::new(p.x + h, p.y + h),
                Point::new(p.x - h, p.y + h),
            ]
        })
        .collect();
    convex_hull(&corners).expect("unit squares span a non-degenerate hull")
}

/// Minimum-area rectangle around the contour's pixel footprints.
pub fn min_area_rect<T: Scalar>(c: &Contour) -> RotatedRect<T> {
    min_area_rect_of_hull(&footprint_hull(c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseFit<T> {
    pub a: T,
    pub b: T,
    pub orientation: T,
}

/// Ellipse with the same second-order central moments as the filled region:
/// semi-axes `2√λ` from the covariance eigenvalues.
pub fn fit_ellipse<T: Scalar>(c: &Contour) -> Result<EllipseFit<T>> {
    region_ellipse(c.region())
}

pub fn region_ellipse<T: Scalar>(region: &Region) -> Result<EllipseFit<T>> {
    let n = region.area() as i128;
    if n == 0 {
        return Err(Error::DegenerateRegion);
    }
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0i128, 0i128, 0i128, 0i128, 0i128);
    for p in region.pixels() {
        let (x, y) = (p.x as i128, p.y as i128);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    // n² times the covariance entries, exact.
    let mxx = n * sxx - sx * sx;
    let myy = n * syy - sy * sy;
    let mxy = n * sxy - sx * sy;
    let scale = T::from_wide(n) * T::from_wide(n);
    let trace = T::from_wide(mxx + myy);
    let diff = T::from_wide(mxx - myy);
    let off = T::from_wide(mxy);
    let disc = (diff * diff + T::of(4.0) * off * off).sqrt();
    let l1 = (trace + disc) / (T::two() * scale);
    let l2 = (trace - disc) / (T::two() * scale);
    if l1 <= T::zero() || l2 <= T::zero() {
        return Err(Error::DegenerateRegion);
    }
    Ok(EllipseFit {
        a: T::two() * l1.sqrt(),
        b: T::two() * l2.sqrt(),
        orientation: (T::two() * off).atan2(diff) / T::two(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::{best_contour, Pixel};
    use crate::imgproc::BinaryImage;

    fn ellipse_img(
        w: usize,
        h: usize,
        cx: f64,
        cy: f64,
        a: f64,
        b: f64,
        angle: f64,
    ) -> BinaryImage {
        let (c, s) = (angle.cos(), angle.sin());
        BinaryImage::from_fn(w, h, |x, y| {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            let (u, v) = (dx * c + dy * s, -dx * s + dy * c);
            (u / a).powi(2) + (v / b).powi(2) <= 1.0
        })
        .unwrap()
    }

    #[test]
    fn square_centroid() {
        let img = BinaryImage::from_fn(12, 12, |x, y| x < 10 && y < 10).unwrap();
        let c = best_contour(&img).unwrap();
        assert_eq!(centroid::<f64>(&c), Point::new(4.5, 4.5));
    }

    #[test]
    fn single_pixel_region_centroid() {
        let r = Region::from_pixels(&[Pixel::new(3, 7)]).unwrap();
        assert_eq!(region_centroid::<f64>(&r), Point::new(3.0, 7.0));
    }

    #[test]
    fn blob_centroid_matches_mask_mean() {
        let img = BinaryImage::from_fn(40, 30, |x, y| {
            let (dx, dy) = (x as f64 - 15.0, y as f64 - 12.0);
            dx * dx / 100.0 + dy * dy / 49.0 <= 1.0 || (x > 20 && x < 30 && y > 8 && y < 14)
        })
        .unwrap();
        let c = best_contour(&img).unwrap();
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0.0);
        for y in 0..30 {
            for x in 0..40 {
                if img.get(x, y) {
                    sx += x as f64;
                    sy += y as f64;
                    n += 1.0;
                }
            }
        }
        let got = centroid::<f64>(&c);
        assert!((got.x - sx / n).abs() < 1e-9 && (got.y - sy / n).abs() < 1e-9);
    }

    #[test]
    fn centroid_follows_translation() {
        let base = |ox: usize, oy: usize| {
            BinaryImage::from_fn(80, 80, |x, y| {
                let (dx, dy) = (x as f64 - 20.0 - ox as f64, y as f64 - 25.0 - oy as f64);
                dx * dx / 150.0 + dy * dy / 60.0 <= 1.0
                    || (x >= 20 + ox && x < 34 + ox && y == 25 + oy)
            })
            .unwrap()
        };
        let c0 = centroid::<f64>(&best_contour(&base(0, 0)).unwrap());
        for (dx, dy) in [(3usize, 0usize), (0, 7), (17, 29)] {
            let c1 = centroid::<f64>(&best_contour(&base(dx, dy)).unwrap());
            assert!((c1.x - c0.x - dx as f64).abs() < 1e-12);
            assert!((c1.y - c0.y - dy as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_of_disk_has_constant_radius() {
        let img = ellipse_img(70, 70, 35.0, 35.0, 25.0, 25.0, 0.0);
        let c = best_contour(&img).unwrap();
        let pc = to_polar(&c, centroid::<f64>(&c)).unwrap();
        let (lo, hi) = pc.samples.iter().fold((f64::MAX, f64::MIN), |(lo, hi), s| {
            (lo.min(s.r), hi.max(s.r))
        });
        assert!(hi - lo <= 1.0);
        assert!(pc.samples.windows(2).all(|w| w[0].theta < w[1].theta));
        assert!(pc
            .samples
            .iter()
            .all(|s| s.theta >= -std::f64::consts::PI && s.theta < std::f64::consts::PI));
    }

    #[test]
    fn polar_of_square_peaks_at_corners() {
        let img = BinaryImage::from_fn(30, 30, |x, y| {
            (5..=25).contains(&x) && (5..=25).contains(&y)
        })
        .unwrap();
        let c = best_contour(&img).unwrap();
        let pc = to_polar(&c, Point::new(15.0, 15.0)).unwrap();
        let max = pc.samples.iter().map(|s| s.r).fold(0.0, f64::max);
        assert!((max - 10.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn polar_round_trip() {
        let img = ellipse_img(90, 70, 45.0, 35.0, 30.0, 18.0, 0.4);
        let c = best_contour(&img).unwrap();
        let pc = to_polar(&c, centroid::<f64>(&c)).unwrap();
        for s in &pc.samples {
            let p = pc.to_cartesian(*s);
            let nearest = c
                .points()
                .iter()
                .map(|q| ((q.x as f64 - p.x).powi(2) + (q.y as f64 - p.y).powi(2)).sqrt())
                .fold(f64::MAX, f64::min);
            assert!(nearest < 1e-6);
        }
    }

    #[test]
    fn perimeter_counts_steps() {
        let c = Contour::new(vec![
            Pixel::new(0, 0),
            Pixel::new(1, 0),
            Pixel::new(1, 1),
            Pixel::new(0, 1),
        ])
        .unwrap();
        assert_eq!(perimeter::<f64>(&c), 4.0);
        let k = 5;
        let mut stair: Vec<Pixel> = (0..=k).map(|i| Pixel::new(i, i)).collect();
        stair.extend((1..k).rev().map(|i| Pixel::new(i, i)));
        let c = Contour::new(stair).unwrap();
        assert!((perimeter::<f64>(&c) - 2.0 * k as f64 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn disk_ellipse_is_round() {
        let c = best_contour(&ellipse_img(80, 80, 40.0, 40.0, 30.0, 30.0, 0.0)).unwrap();
        let e = fit_ellipse::<f64>(&c).unwrap();
        assert!((0.98..=1.02).contains(&(e.a / e.b)));
        assert!((e.a - 30.0).abs() < 1.0);
    }

    #[test]
    fn ellipse_axes_and_rotation() {
        let e0 = fit_ellipse::<f64>(
            &best_contour(&ellipse_img(160, 160, 80.0, 80.0, 60.0, 30.0, 0.0)).unwrap(),
        )
        .unwrap();
        assert!((1.9..=2.1).contains(&(e0.a / e0.b)));
        let r = 37f64.to_radians();
        let e1 = fit_ellipse::<f64>(
            &best_contour(&ellipse_img(160, 160, 80.0, 80.0, 60.0, 30.0, r)).unwrap(),
        )
        .unwrap();
        assert!((e1.a / e0.a - 1.0).abs() < 0.02 && (e1.b / e0.b - 1.0).abs() < 0.02);
        assert!((e1.orientation - r).abs() < 0.02);
    }

    #[test]
    fn collinear_region_is_degenerate() {
        let img = BinaryImage::from_fn(10, 3, |x, y| y == 1 && x > 1 && x < 8).unwrap();
        let c = best_contour(&img).unwrap();
        assert_eq!(fit_ellipse::<f64>(&c), Err(Error::DegenerateRegion));
    }

    #[test]
    fn enclosing_shapes_cover_region() {
        for (a, b, ang) in [(20.0, 8.0, 0.3), (15.0, 15.0, 0.0), (25.0, 5.0, 1.1)] {
            let c = best_contour(&ellipse_img(70, 70, 35.0, 35.0, a, b, ang)).unwrap();
            let area = c.region().area() as f64;
            let rect = min_area_rect::<f64>(&c);
            assert!(rect.area() >= area);
            assert!(footprint_hull::<f64>(&c).area >= area);
            let hull = convex_hull(&contour_points::<f64>(&c)).unwrap();
            for p in contour_points::<f64>(&c) {
                assert!(hull.contains(p, 1e-9));
            }
        }
    }

    #[test]
    fn block_rectangle_is_pixel_extent() {
        let img = BinaryImage::from_fn(20, 20, |x, y| (2..12).contains(&x) && (3..7).contains(&y))
            .unwrap();
        let r = min_area_rect::<f64>(&best_contour(&img).unwrap());
        assert_eq!((r.length, r.width), (10.0, 4.0));
    }
}
