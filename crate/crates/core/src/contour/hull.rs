//! Convex hull, diameter and minimum-area enclosing rectangle.
//!
//! With integer-valued inputs (pixel centers) every predicate here is exact
//! in `f64`, which keeps results identical under 90° rotations of the input.

use std::cmp::Ordering;

use super::point::{orient, Point};
use crate::error::{Error, Result};
use crate::scalar::{order_free_sum, Scalar};

/// Convex polygon with positively oriented (counter-clockwise in a y-up
/// frame) vertices and no collinear vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexHullPoly<T> {
    pub vertices: Vec<Point<T>>,
    pub perimeter: T,
    pub area: T,
}

fn cmp_xy<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap_or(Ordering::Equal)
        .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
}

/// Andrew's monotone chain. Fails with [`Error::DegenerateHull`] for fewer
/// than three distinct points or a collinear set.
pub fn convex_hull<T: Scalar>(points: &[Point<T>]) -> Result<ConvexHullPoly<T>> {
    let vertices = hull_vertices(points);
    if vertices.len() < 3 {
        return Err(Error::DegenerateHull);
    }
    Ok(ConvexHullPoly::from_vertices(vertices))
}

/// Hull vertex chain; may hold fewer than three points for degenerate input.
pub(crate) fn hull_vertices<T: Scalar>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts: Vec<Point<T>> = points.to_vec();
    pts.sort_by(cmp_xy);
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2
            && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero()
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<T>> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero()
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area (positive for positive orientation).
pub fn polygon_area<T: Scalar>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    let twice: T = (0..n)
        .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
        .sum();
    twice / T::two()
}

pub fn polygon_perimeter<T: Scalar>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    order_free_sum(
        (0..n)
            .map(|i| vertices[i].dist(vertices[(i + 1) % n]))
            .collect(),
    )
}

impl<T: Scalar> ConvexHullPoly<T> {
    fn from_vertices(vertices: Vec<Point<T>>) -> Self {
        let area = polygon_area(&vertices);
        let perimeter = polygon_perimeter(&vertices);
        Self {
            vertices,
            perimeter,
            area,
        }
    }

    /// Whether `p` is inside or within `tol` of the boundary.
    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            orient(a, b, p) >= -tol * (b - a).norm()
        })
    }

    /// Euclidean distance from `p` to the nearest boundary segment.
    pub fn boundary_distance(&self, p: Point<T>) -> T {
        let n = self.vertices.len();
        (0..n)
            .map(|i| segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(T::infinity(), T::min)
    }
}

pub fn segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == T::zero() {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len_sq).max(T::zero()).min(T::one());
    p.dist(a + ab * t)
}

/// Largest pairwise distance, found with rotating calipers over the hull's
/// antipodal pairs. Degenerate (collinear) sets fall back to their extremes.
pub fn diameter<T: Scalar>(points: &[Point<T>]) -> T {
    let h = hull_vertices(points);
    let n = h.len();
    if n < 2 {
        return T::zero();
    }
    if n < 3 {
        return h[0].dist(h[1]);
    }
    let mut best = T::zero();
    let mut j = 1;
    for i in 0..n {
        let (a, b) = (h[i], h[(i + 1) % n]);
        while orient(a, b, h[(j + 1) % n]) > orient(a, b, h[j]) {
            j = (j + 1) % n;
        }
        let jn = (j + 1) % n;
        for &(p, q) in &[(a, h[j]), (b, h[j]), (a, h[jn]), (b, h[jn])] {
            best = best.max((p - q).norm_sq());
        }
    }
    best.sqrt()
}

/// Oriented rectangle. `length >= width`; `angle` is the direction of the
/// long side in `(-pi/2, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedRect<T> {
    pub center: Point<T>,
    pub length: T,
    pub width: T,
    pub angle: T,
}

impl<T: Scalar> RotatedRect<T> {
    pub fn area(&self) -> T {
        self.length * self.width
    }
}

fn normalize_half_turn<T: Scalar>(mut a: T) -> T {
    let pi = T::pi();
    let half = pi / T::two();
    while a > half {
        a -= pi;
    }
    while a <= -half {
        a += pi;
    }
    a
}

/// Minimum-area enclosing rectangle of a convex polygon by rotating
/// calipers: the optimum has a side collinear with a hull edge, so only the
/// hull edge directions are tried. Equal areas prefer the longer side.
pub fn min_area_rect_of_hull<T: Scalar>(hull: &ConvexHullPoly<T>) -> RotatedRect<T> {
    let v = &hull.vertices;
    let n = v.len();
    let at = |i: usize| v[i % n];
    let (mut j, mut k, mut l) = (1usize, 0usize, 0usize);
    let mut best: Option<(T, T, T, RotatedRect<T>)> = None;
    for i in 0..n {
        let a = at(i);
        let e = at(i + 1) - a;
        while e.dot(at(j + 1) - at(j)) > T::zero() {
            j = (j + 1) % n;
        }
        if i == 0 {
            k = j;
        }
        while e.cross(at(k + 1) - at(k)) > T::zero() {
            k = (k + 1) % n;
        }
        if i == 0 {
            l = k;
        }
        while e.dot(at(l + 1) - at(l)) < T::zero() {
            l = (l + 1) % n;
        }
        let len_sq = e.norm_sq();
        let (dmax, dmin) = (e.dot(at(j)), e.dot(at(l)));
        let height = e.cross(at(k) - a);
        let span = dmax - dmin;
        let area = span * height / len_sq;
        let norm = len_sq.sqrt();
        let (along, across) = (span / norm, height / norm);
        let long = along.max(across);
        let better = match &best {
            None => true,
            Some((ba, bl, _, _)) => area < *ba || (area == *ba && long > *bl),
        };
        if better {
            let base = (dmax + dmin) / T::two() - e.dot(a);
            let center = a + e * (base / len_sq) + e.perp() * (height / T::two() / len_sq);
            let edge_angle = e.y.atan2(e.x);
            let angle = if along >= across {
                edge_angle
            } else {
                edge_angle + T::pi() / T::two()
            };
            let rect = RotatedRect {
                center,
                length: long,
                width: along.min(across),
                angle: normalize_half_turn(angle),
            };
            best = Some((area, long, T::zero(), rect));
        }
    }
    best.expect("hull has at least three vertices").3
}

/// Minimum-area rectangle of an arbitrary point set.
pub fn min_area_rect_points<T: Scalar>(points: &[Point<T>]) -> Result<RotatedRect<T>> {
    Ok(min_area_rect_of_hull(&convex_hull(points)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    /// O(n³) oracle for points in general position: a pair is a hull edge iff
    /// every other point lies strictly to its left.
    fn brute_hull_vertices(pts: &[Point<f64>]) -> Vec<Point<f64>> {
        let mut out: Vec<Point<f64>> = Vec::new();
        for (i, &a) in pts.iter().enumerate() {
            for (j, &b) in pts.iter().enumerate() {
                if i == j {
                    continue;
                }
                let edge = pts
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| k == i || k == j || orient(a, b, c) > 0.0);
                if edge && !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out
    }

    fn sorted(mut v: Vec<Point<f64>>) -> Vec<Point<f64>> {
        v.sort_by(cmp_xy);
        v
    }

    #[test]
    fn triangle_is_its_own_hull() {
        let pts = [p(0.0, 0.0), p(4.0, 0.0), p(1.0, 3.0)];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(sorted(h.vertices.clone()), sorted(pts.to_vec()));
        assert_eq!(h.area, 6.0);
    }

    #[test]
    fn square_with_center() {
        let pts = [
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 1.0),
            p(0.0, 1.0),
            p(0.5, 0.5),
        ];
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.area, 1.0);
        assert_eq!(h.perimeter, 4.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            convex_hull(&[p(0.0, 0.0), p(1.0, 1.0)]),
            Err(Error::DegenerateHull)
        );
        assert_eq!(
            convex_hull(&[p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)]),
            Err(Error::DegenerateHull)
        );
    }

    #[test]
    fn hull_matches_cubic_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let pts: Vec<Point<f64>> = (0..50)
                .map(|_| p(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            let h = convex_hull(&pts).unwrap();
            assert_eq!(sorted(h.vertices), sorted(brute_hull_vertices(&pts)));
        }
    }

    #[test]
    fn diameter_small_cases() {
        assert_eq!(diameter(&[p(0.0, 0.0), p(3.0, 0.0), p(0.0, 4.0)]), 5.0);
        let sq = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
        assert_eq!(diameter(&sq), 2f64.sqrt());
    }

    fn brute_diameter(pts: &[Point<f64>]) -> f64 {
        let mut best = 0.0f64;
        for a in pts {
            for b in pts {
                best = best.max(a.dist(*b));
            }
        }
        best
    }

    #[test]
    fn diameter_matches_all_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let pts: Vec<Point<f64>> = (0..200)
                .map(|_| p(rng.gen_range(-50.0..50.0), rng.gen_range(-20.0..20.0)))
                .collect();
            assert!((diameter(&pts) - brute_diameter(&pts)).abs() < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn diameter_exact_on_lattice_points(coords in proptest::collection::vec((0i32..12, 0i32..12), 1..40)) {
            let pts: Vec<Point<f64>> = coords.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
            prop_assert_eq!(diameter(&pts), brute_diameter(&pts));
        }

        #[test]
        fn hull_contains_all_points(coords in proptest::collection::vec((0i32..30, 0i32..30), 3..60)) {
            let pts: Vec<Point<f64>> = coords.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
            if let Ok(h) = convex_hull(&pts) {
                for &q in &pts {
                    prop_assert!(h.contains(q, 1e-9));
                }
                prop_assert!(h.area > 0.0);
            }
        }

        #[test]
        fn min_rect_beats_every_edge_orientation(coords in proptest::collection::vec((0i32..40, 0i32..40), 3..40)) {
            let pts: Vec<Point<f64>> = coords.iter().map(|&(x, y)| p(x as f64, y as f64)).collect();
            if let Ok(h) = convex_hull(&pts) {
                let rect = min_area_rect_of_hull(&h);
                // Oracle: enumerate every hull edge direction and project all points.
                let n = h.vertices.len();
                let mut best = f64::INFINITY;
                for i in 0..n {
                    let e = h.vertices[(i + 1) % n] - h.vertices[i];
                    let u = e * (1.0 / e.norm());
                    let w = u.perp();
                    let (mut a0, mut a1, mut b0, mut b1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
                    for &q in &pts {
                        a0 = a0.min(q.dot(u)); a1 = a1.max(q.dot(u));
                        b0 = b0.min(q.dot(w)); b1 = b1.max(q.dot(w));
                    }
                    best = best.min((a1 - a0) * (b1 - b0));
                }
                prop_assert!((rect.area() - best).abs() <= 1e-9 * best.max(1.0));
                prop_assert!(rect.length >= rect.width);
                prop_assert!(rect.area() + 1e-9 >= h.area);
            }
        }
    }

    #[test]
    fn axis_aligned_rectangle() {
        let pts = [
            p(0.0, 0.0),
            p(10.0, 0.0),
            p(10.0, 4.0),
            p(0.0, 4.0),
            p(3.0, 2.0),
        ];
        let r = min_area_rect_points(&pts).unwrap();
        assert_eq!((r.length, r.width), (10.0, 4.0));
        assert!(r.angle.abs() < 1e-12);
        assert_eq!((r.center.x, r.center.y), (5.0, 2.0));
    }

    #[test]
    fn rotated_rectangle() {
        let (c, s) = (
            std::f64::consts::FRAC_PI_4.cos(),
            std::f64::consts::FRAC_PI_4.sin(),
        );
        let rot = |x: f64, y: f64| p(x * c - y * s, x * s + y * c);
        let pts = [rot(0.0, 0.0), rot(10.0, 0.0), rot(10.0, 4.0), rot(0.0, 4.0)];
        let r = min_area_rect_points(&pts).unwrap();
        assert!((r.length - 10.0).abs() < 0.5 && (r.width - 4.0).abs() < 0.5);
        assert!((r.angle - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
}
