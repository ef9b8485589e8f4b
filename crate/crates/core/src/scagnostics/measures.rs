//! The nine scagnostic measures.

use super::alpha::alpha_hull;
use super::bin::{normalize_and_bin, BinOptions, PointSet2D};
use super::graph::{build_mst, find_outliers, GeometricGraph, ScagContext};
use crate::contour::{convex_hull, Point};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScagnosticMeasures<T> {
    pub outlying: T,
    pub skewed: T,
    pub clumpy: T,
    pub sparse: T,
    pub striated: T,
    pub convex: T,
    pub skinny: T,
    pub stringy: T,
    pub monotonic: T,
}

impl<T: Scalar> ScagnosticMeasures<T> {
    pub const NAMES: [&'static str; 9] = [
        "outlying",
        "skewed",
        "clumpy",
        "sparse",
        "striated",
        "convex",
        "skinny",
        "stringy",
        "monotonic",
    ];

    pub fn values(&self) -> [T; 9] {
        [
            self.outlying,
            self.skewed,
            self.clumpy,
            self.sparse,
            self.striated,
            self.convex,
            self.skinny,
            self.stringy,
            self.monotonic,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScagOptions<T> {
    pub bins: BinOptions,
    /// Alpha-hull radius; defaults to the outlier cutoff of the pruned MST.
    pub alpha: Option<T>,
}

impl<T> Default for ScagOptions<T> {
    fn default() -> Self {
        Self {
            bins: BinOptions::default(),
            alpha: None,
        }
    }
}

fn unit<T: Scalar>(v: T) -> T {
    if v.is_nan() {
        T::zero()
    } else {
        v.max(T::zero()).min(T::one())
    }
}

/// Result of outlier pruning: surviving points, their rebuilt MST and
/// context, and the outlying measure of the unpruned tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Pruned<T> {
    pub points: PointSet2D<T>,
    pub mst: GeometricGraph<T>,
    pub context: ScagContext<T>,
    pub outlying: T,
}

pub fn prune_outliers<T: Scalar>(ps: &PointSet2D<T>) -> Result<Pruned<T>> {
    let mst0 = build_mst(&ps.points)?;
    let ctx0 = ScagContext::from_mst(&mst0)?;
    let (survivors, outlying) = find_outliers(&mst0, ctx0.omega)?;
    let keep: Vec<bool> = (0..ps.len())
        .map(|i| survivors.binary_search(&i).is_ok())
        .collect();
    let points = ps.retain_indices(|i| keep[i]);
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let mst = build_mst(&points.points)?;
    let context = ScagContext::from_mst(&mst)?;
    Ok(Pruned {
        points,
        mst,
        context,
        outlying,
    })
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (big, small) = if self.size[a] >= self.size[b] {
                (a, b)
            } else {
                (b, a)
            };
            self.parent[small] = big;
            self.size[big] += self.size[small];
        }
    }
}

/// RUNT clumpiness: for each MST edge, cut every edge at least as long and
/// compare the longest edge of the smaller side against it.
pub fn clumpy<T: Scalar>(mst: &GeometricGraph<T>) -> T {
    let mut best = T::zero();
    for ej in &mst.edges {
        let mut uf = UnionFind::new(mst.vertex_count);
        let short: Vec<_> = mst.edges.iter().filter(|e| e.length < ej.length).collect();
        for e in &short {
            uf.union(e.u, e.v);
        }
        let (ru, rv) = (uf.find(ej.u), uf.find(ej.v));
        let side_max = |root: usize, uf: &mut UnionFind| {
            short
                .iter()
                .filter(|e| uf.find(e.u) == root)
                .map(|e| e.length)
                .fold(None, |m: Option<T>, l| Some(m.map_or(l, |m| m.max(l))))
        };
        let (su, sv) = (uf.size[ru], uf.size[rv]);
        let runt_max = match su.cmp(&sv) {
            std::cmp::Ordering::Less => side_max(ru, &mut uf),
            std::cmp::Ordering::Greater => side_max(rv, &mut uf),
            std::cmp::Ordering::Equal => match (side_max(ru, &mut uf), side_max(rv, &mut uf)) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
        };
        // A runt without edges carries no cluster structure.
        if let (Some(m), true) = (runt_max, ej.length > T::zero()) {
            best = best.max(T::one() - m / ej.length);
        }
    }
    best
}

/// Share of all vertices that are degree-2 with a nearly straight bend.
pub fn striated<T: Scalar>(points: &[Point<T>], mst: &GeometricGraph<T>) -> T {
    let adj = mst.adjacency();
    let straight = adj
        .iter()
        .enumerate()
        .filter(|(_, nb)| nb.len() == 2)
        .filter(|&(v, nb)| {
            let (a, b) = (points[nb[0]] - points[v], points[nb[1]] - points[v]);
            let den = a.norm() * b.norm();
            den > T::zero() && a.dot(b) / den < T::of(-0.75)
        })
        .count();
    T::from_count(straight) / T::from_count(mst.vertex_count)
}

/// Cubed share of degree-2 vertices among non-leaf vertices.
pub fn stringy<T: Scalar>(mst: &GeometricGraph<T>) -> T {
    let deg = mst.degrees();
    let ones = deg.iter().filter(|&&d| d == 1).count();
    let twos = deg.iter().filter(|&&d| d == 2).count();
    let den = mst.vertex_count - ones;
    if den == 0 {
        return T::zero();
    }
    T::from_count(twos).powi(3) / T::from_count(den).powi(3)
}

/// Ranks with ties sharing their average rank.
pub fn average_ranks<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut ranks = vec![T::zero(); v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = T::from_count(i + j) / T::two() + T::one();
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson correlation; zero when either sequence is constant.
pub fn pearson<T: Scalar>(x: &[T], y: &[T]) -> T {
    let n = T::from_count(x.len());
    let (mx, my) = (
        x.iter().copied().sum::<T>() / n,
        y.iter().copied().sum::<T>() / n,
    );
    let (mut sxy, mut sxx, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx <= T::zero() || syy <= T::zero() {
        return T::zero();
    }
    (sxy / (sxx.sqrt() * syy.sqrt()))
        .max(-T::one())
        .min(T::one())
}

/// Squared Spearman correlation.
pub fn monotonic<T: Scalar>(points: &[Point<T>]) -> T {
    let xs: Vec<T> = points.iter().map(|p| p.x).collect();
    let ys: Vec<T> = points.iter().map(|p| p.y).collect();
    let r = pearson(&average_ranks(&xs), &average_ranks(&ys));
    r * r
}

/// Measures of a pruned point set.
pub fn scagnostic_measures<T: Scalar>(
    pruned: &Pruned<T>,
    alpha: Option<T>,
) -> Result<ScagnosticMeasures<T>> {
    let pts = &pruned.points.points;
    if pts.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: pts.len(),
        });
    }
    let ctx = &pruned.context;
    let mst = &pruned.mst;
    let w = ctx.weight;
    let spread = ctx.q90 - ctx.q10;
    let q_skew = if spread > T::zero() {
        (ctx.q90 - ctx.q50) / spread
    } else {
        T::half()
    };
    let alpha_shape = alpha_hull(pts, alpha.unwrap_or(ctx.omega))?;
    let convex = match convex_hull(pts) {
        Ok(h) if h.area > T::zero() => w * alpha_shape.area / h.area,
        _ => T::zero(),
    };
    let skinny = if alpha_shape.perimeter > T::zero() {
        T::one() - (T::of(4.0) * T::pi() * alpha_shape.area).sqrt() / alpha_shape.perimeter
    } else {
        T::one()
    };
    Ok(ScagnosticMeasures {
        outlying: unit(pruned.outlying),
        skewed: unit(T::one() - w * (T::one() - q_skew)),
        clumpy: unit(clumpy(mst)),
        sparse: unit(w * ctx.q90),
        striated: unit(striated(pts, mst)),
        convex: unit(convex),
        skinny: unit(skinny),
        stringy: unit(stringy(mst)),
        monotonic: unit(monotonic(pts)),
    })
}

/// Full run on a raw point cloud: bin, prune, measure.
pub fn scagnostics<T: Scalar>(
    raw: &[Point<T>],
    opts: &ScagOptions<T>,
) -> Result<ScagnosticMeasures<T>> {
    let binned = normalize_and_bin(raw, &opts.bins)?;
    if binned.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: binned.len(),
        });
    }
    scagnostic_measures(&prune_outliers(&binned)?, opts.alpha)
}
