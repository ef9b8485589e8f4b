//! Alpha hull by the empty-disk test.

use crate::contour::{orient, Point};
use crate::error::{Error, Result};
use crate::scalar::{order_free_sum, Scalar};

/// Boundary of the alpha shape. `edges` are oriented with the covered side
/// on the left; `dangling` edges have no covered side at all.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaHull<T> {
    pub edges: Vec<(usize, usize)>,
    pub dangling: Vec<(usize, usize)>,
    pub area: T,
    pub perimeter: T,
}

/// Which sides of a candidate edge are free of other points.
fn empty_sides<T: Scalar>(pts: &[Point<T>], i: usize, j: usize, alpha: T) -> Option<(bool, bool)> {
    let (p, q) = (pts[i], pts[j]);
    let d = p.dist(q);
    if d == T::zero() {
        return None;
    }
    let others = || {
        pts.iter()
            .enumerate()
            .filter(move |&(k, _)| k != i && k != j)
            .map(|(_, &r)| r)
    };
    if alpha.is_infinite() {
        // Half-planes; a point strictly inside the chord blocks the edge.
        let tol = T::of(1e-12) * d;
        let mut left = true;
        let mut right = true;
        for r in others() {
            let o = orient(p, q, r) / d;
            if o > tol {
                left = false;
            } else if o < -tol {
                right = false;
            } else {
                let t = (r - p).dot(q - p) / (d * d);
                if t > T::zero() && t < T::one() {
                    return None;
                }
            }
        }
        return Some((left, right));
    }
    let half = d / T::two();
    if half > alpha {
        return None;
    }
    let h = (alpha * alpha - half * half).max(T::zero()).sqrt();
    let mid = (p + q) * T::half();
    let normal = (q - p).perp() * (T::one() / d);
    let centers = [mid + normal * h, mid - normal * h];
    let limit = alpha * (T::one() - T::of(1e-9));
    let empty = |c: Point<T>| others().all(|r| c.dist(r) >= limit);
    Some((empty(centers[0]), empty(centers[1])))
}

/// Alpha shape of a point set for disk radius `alpha`. An infinite radius
/// yields the convex hull.
pub fn alpha_hull<T: Scalar>(points: &[Point<T>], alpha: T) -> Result<AlphaHull<T>> {
    let n = points.len();
    if n < 3 || !(alpha >= T::zero()) {
        return Err(Error::DegenerateHull);
    }
    let mut edges = Vec::new();
    let mut dangling = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match empty_sides(points, i, j, alpha) {
                Some((true, true)) => dangling.push((i, j)),
                // Empty on the left: covered side is on the right.
                Some((true, false)) => edges.push((j, i)),
                Some((false, true)) => edges.push((i, j)),
                _ => {}
            }
        }
    }
    let area = order_free_sum(
        edges
            .iter()
            .map(|&(a, b)| points[a].cross(points[b]))
            .collect(),
    ) / T::two();
    let lengths = edges
        .iter()
        .map(|&(a, b)| points[a].dist(points[b]))
        .chain(
            dangling
                .iter()
                .map(|&(a, b)| T::two() * points[a].dist(points[b])),
        )
        .collect();
    Ok(AlphaHull {
        edges,
        dangling,
        area: area.max(T::zero()),
        perimeter: order_free_sum(lengths),
    })
}
