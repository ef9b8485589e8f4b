//! Extreme-radius counts on the polar contour and the Cartesian contour
//! correlation.

use super::measures::pearson;
use crate::contour::{Contour, PolarContour};
use crate::scalar::Scalar;

/// Number of separate circular runs of samples whose flag is set.
fn circular_runs(flags: &[bool]) -> usize {
    let n = flags.len();
    if flags.iter().all(|&f| f) {
        return 1;
    }
    (0..n)
        .filter(|&i| flags[i] && !flags[(i + n - 1) % n])
        .count()
}

/// Runs of `near` samples around the circle, where two runs only count as
/// separate if some sample between them is `far`.
fn separated_runs(near: &[bool], far: &[bool]) -> usize {
    let states: Vec<bool> = near
        .iter()
        .zip(far)
        .filter(|(&n, &f)| n || f)
        .map(|(&n, _)| n)
        .collect();
    circular_runs(&states)
}

/// `(n_max, n_min)`: distinct maxima and minima of the radius profile.
/// Samples within 1% of the radius range from an extreme belong to it; two
/// such stretches are distinct extremes only if the radius moves more than
/// 10% of the range away in between. A constant radius gives `(1, 1)`.
pub fn polar_extreme_counts<T: Scalar>(pc: &PolarContour<T>) -> (usize, usize) {
    let rs: Vec<T> = pc.samples.iter().map(|s| s.r).collect();
    let (lo, hi) = rs
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    if rs.is_empty() || hi <= lo {
        return (1, 1);
    }
    let eps = T::of(0.01) * (hi - lo);
    let gap = T::of(10.0) * eps;
    let flags = |f: &dyn Fn(T) -> bool| rs.iter().map(|&r| f(r)).collect::<Vec<bool>>();
    let n_max = separated_runs(&flags(&|r| r >= hi - eps), &flags(&|r| r < hi - gap));
    let n_min = separated_runs(&flags(&|r| r <= lo + eps), &flags(&|r| r > lo + gap));
    (n_max, n_min)
}

/// Pearson correlation of the contour's x and y sequences.
pub fn contour_correlation<T: Scalar>(c: &Contour) -> T {
    let xs: Vec<T> = c.points().iter().map(|p| T::from_int(p.x)).collect();
    let ys: Vec<T> = c.points().iter().map(|p| T::from_int(p.y)).collect();
    pearson(&xs, &ys)
}
