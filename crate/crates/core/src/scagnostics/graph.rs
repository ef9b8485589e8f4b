//! Minimum spanning tree and the outlier context derived from it.

use crate::contour::Point;
use crate::error::{Error, Result};
use crate::scalar::{order_free_sum, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub u: usize,
    pub v: usize,
    pub length: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Mst,
    Runt,
    Hull,
    AlphaHull,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricGraph<T> {
    pub vertex_count: usize,
    pub edges: Vec<Edge<T>>,
    pub kind: GraphKind,
}

impl<T: Scalar> GeometricGraph<T> {
    pub fn total_length(&self) -> T {
        order_free_sum(self.edges.iter().map(|e| e.length).collect())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Neighbour lists, each in edge order.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }
}

fn edge_key<T: Scalar>(len: T, a: usize, b: usize) -> (T, usize, usize) {
    (len, a.min(b), a.max(b))
}

fn key_less<T: Scalar>(a: (T, usize, usize), b: (T, usize, usize)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && (a.1, a.2) < (b.1, b.2))
}

/// Prim's algorithm over the complete Euclidean graph; ties resolve by
/// `(length, min index, max index)`.
pub fn build_mst<T: Scalar>(points: &[Point<T>]) -> Result<GeometricGraph<T>> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<(T, usize, usize)>> = vec![None; n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    let mut last = 0;
    for _ in 1..n {
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let key = edge_key(points[last].dist(points[v]), last, v);
            if best[v].is_none_or(|b| key_less(key, b)) {
                best[v] = Some(key);
                parent[v] = last;
            }
        }
        let next = (0..n)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| {
                let (ka, kb) = (best[a].expect("set"), best[b].expect("set"));
                if key_less(ka, kb) {
                    std::cmp::Ordering::Less
                } else if key_less(kb, ka) {
                    std::cmp::Ordering::Greater
                } else {
                    a.cmp(&b)
                }
            })
            .expect("vertices remain");
        in_tree[next] = true;
        edges.push(Edge {
            u: parent[next],
            v: next,
            length: best[next].expect("set").0,
        });
        last = next;
    }
    Ok(GeometricGraph {
        vertex_count: n,
        edges,
        kind: GraphKind::Mst,
    })
}

/// Linear-interpolation percentile of sorted data (`p` in `[0, 1]`).
pub fn percentile<T: Scalar>(sorted: &[T], p: T) -> T {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = T::from_count(n - 1) * p;
    let lo = h.floor().to_usize().expect("non-negative").min(n - 1);
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (h - T::from_count(lo)) * (sorted[hi] - sorted[lo])
}

/// `0.7 + 0.3 / (1 + t²)` with `t = n / 500`.
pub fn bias_weight<T: Scalar>(n: usize) -> T {
    let t = T::from_count(n) / T::of(500.0);
    T::of(0.7) + T::of(0.3) / (T::one() + t * t)
}

/// Edge-length percentiles, outlier cutoff and bias weight of one MST.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScagContext<T> {
    pub q10: T,
    pub q25: T,
    pub q50: T,
    pub q75: T,
    pub q90: T,
    /// Outlier cutoff `q75 + 1.5 * IQR`.
    pub omega: T,
    pub weight: T,
    pub t: T,
}

impl<T: Scalar> ScagContext<T> {
    pub fn from_mst(mst: &GeometricGraph<T>) -> Result<Self> {
        if mst.edges.is_empty() {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: mst.vertex_count,
            });
        }
        let mut lens: Vec<T> = mst.edges.iter().map(|e| e.length).collect();
        lens.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let q = |p: f64| percentile(&lens, T::of(p));
        let (q25, q75) = (q(0.25), q(0.75));
        Ok(Self {
            q10: q(0.10),
            q25,
            q50: q(0.50),
            q75,
            q90: q(0.90),
            omega: q75 + T::of(1.5) * (q75 - q25),
            weight: bias_weight(mst.vertex_count),
            t: T::from_count(mst.vertex_count) / T::of(500.0),
        })
    }
}

/// Drops vertices whose MST edges are all longer than `omega`. Returns the
/// surviving point indices and the outlying measure: the length of edges
/// touching an outlier over the total MST length.
pub fn find_outliers<T: Scalar>(mst: &GeometricGraph<T>, omega: T) -> Result<(Vec<usize>, T)> {
    let n = mst.vertex_count;
    let mut all_long = vec![true; n];
    let mut has_edge = vec![false; n];
    for e in &mst.edges {
        for w in [e.u, e.v] {
            has_edge[w] = true;
            if e.length <= omega {
                all_long[w] = false;
            }
        }
    }
    let outlier: Vec<bool> = (0..n).map(|i| has_edge[i] && all_long[i]).collect();
    let survivors: Vec<usize> = (0..n).filter(|&i| !outlier[i]).collect();
    if survivors.is_empty() {
        return Err(Error::AllOutliers);
    }
    let total = mst.total_length();
    let touching = order_free_sum(
        mst.edges
            .iter()
            .filter(|e| outlier[e.u] || outlier[e.v])
            .map(|e| e.length)
            .collect(),
    );
    let outlying = if total > T::zero() {
        touching / total
    } else {
        T::zero()
    };
    Ok((survivors, outlying))
}
