//! Unit-square normalization and adaptive hexagonal binning.

use std::collections::BTreeMap;

use crate::contour::Point;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Binned point cloud: one representative per non-empty cell.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet2D<T> {
    pub points: Vec<Point<T>>,
    /// Raw points aggregated into each cell.
    pub weights: Vec<usize>,
}

impl<T: Scalar> PointSet2D<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Keeps the points whose index passes `keep`.
    pub fn retain_indices(&self, keep: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        Self {
            points: idx.iter().map(|&i| self.points[i]).collect(),
            weights: idx.iter().map(|&i| self.weights[i]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinOptions {
    /// Hexagons across the unit interval on the first pass.
    pub initial_bins: usize,
    /// Upper bound on non-empty cells.
    pub max_cells: usize,
}

impl Default for BinOptions {
    fn default() -> Self {
        Self {
            initial_bins: 40,
            max_cells: 250,
        }
    }
}

/// Min-max scales each axis to `[0, 1]`. An axis without extent maps to 0.
pub fn normalize<T: Scalar>(raw: &[Point<T>]) -> Result<Vec<Point<T>>> {
    if raw.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::DegenerateAxis);
    }
    let range = |f: fn(&Point<T>) -> T| {
        raw.iter()
            .map(f)
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (x0, x1) = range(|p| p.x);
    let (y0, y1) = range(|p| p.y);
    let scale = |v: T, lo: T, hi: T| {
        if hi > lo {
            (v - lo) / (hi - lo)
        } else {
            T::zero()
        }
    };
    Ok(raw
        .iter()
        .map(|p| Point::new(scale(p.x, x0, x1), scale(p.y, y0, y1)))
        .collect())
}

/// Cell of a normalized point on a hexagon lattice `bins` wide: the nearer
/// of the two offset rectangular lattices under the hexagonal metric.
fn hex_cell<T: Scalar>(p: Point<T>, bins: usize) -> (i64, i64, bool) {
    let c1 = T::from_count(bins.saturating_sub(1).max(1));
    let c2 = c1 / T::of(3.0).sqrt();
    let (sx, sy) = (c1 * p.x, c2 * p.y);
    let three = T::of(3.0);
    let near = |v: T| (v + T::half()).floor();
    let (i1, j1) = (near(sy), near(sx));
    let (dy1, dx1) = (sy - i1, sx - j1);
    let d1 = dx1 * dx1 + three * dy1 * dy1;
    let (i2, j2) = (sy.floor(), sx.floor());
    let (dy2, dx2) = (sy - i2 - T::half(), sx - j2 - T::half());
    let d2 = dx2 * dx2 + three * dy2 * dy2;
    let to_i = |v: T| v.to_i64().expect("bounded lattice index");
    if d1 <= d2 {
        (to_i(i1), to_i(j1), false)
    } else {
        (to_i(i2), to_i(j2), true)
    }
}

fn bin_at<T: Scalar>(pts: &[Point<T>], bins: usize) -> PointSet2D<T> {
    let mut cells: BTreeMap<(i64, i64, bool), (usize, T, T)> = BTreeMap::new();
    for &p in pts {
        let e = cells
            .entry(hex_cell(p, bins))
            .or_insert((0, T::zero(), T::zero()));
        e.0 += 1;
        e.1 += p.x;
        e.2 += p.y;
    }
    let mut out = PointSet2D {
        points: Vec::with_capacity(cells.len()),
        weights: Vec::with_capacity(cells.len()),
    };
    for (n, sx, sy) in cells.into_values() {
        let k = T::from_count(n);
        // Means of members stay inside the unit square.
        out.points
            .push(Point::new((sx / k).min(T::one()), (sy / k).min(T::one())));
        out.weights.push(n);
    }
    out
}

/// Normalizes, then bins on a hexagon lattice, halving the resolution until
/// at most `max_cells` cells are occupied.
pub fn normalize_and_bin<T: Scalar>(raw: &[Point<T>], opts: &BinOptions) -> Result<PointSet2D<T>> {
    if raw.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: raw.len(),
        });
    }
    let pts = normalize(raw)?;
    let mut bins = opts.initial_bins.max(2);
    loop {
        let set = bin_at(&pts, bins);
        if set.len() <= opts.max_cells || bins <= 2 {
            return Ok(set);
        }
        bins /= 2;
    }
}
