//! Exact Euclidean distance transform (separable lower-envelope method).

use super::image::{BinaryImage, Grid};
use crate::scalar::Scalar;

const FAR: f64 = 1e20;

/// One-dimensional squared-distance transform of a sampled function `f`
/// (lower envelope of parabolas rooted at each sample).
fn squared_1d(f: &[f64], out: &mut [f64], v: &mut Vec<usize>, z: &mut Vec<f64>) {
    let n = f.len();
    v.clear();
    v.resize(n, 0);
    z.clear();
    z.resize(n + 1, 0.0);
    let mut k = 0usize;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        let qf = q as f64;
        let mut s;
        loop {
            let p = v[k] as f64;
            s = ((f[q] + qf * qf) - (f[v[k]] + p * p)) / (2.0 * (qf - p));
            if s <= z[k] && k > 0 {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        let qf = q as f64;
        while z[k + 1] < qf {
            k += 1;
        }
        let p = v[k] as f64;
        *o = (qf - p) * (qf - p) + f[v[k]];
    }
}

/// Distance from every foreground pixel to the nearest background pixel;
/// background pixels get zero. With no background at all every foreground
/// pixel is at infinite distance.
pub fn distance_transform<T: Scalar>(img: &BinaryImage) -> Grid<T> {
    let (w, h) = (img.width(), img.height());
    if img.count_foreground() == w * h {
        return Grid::filled(w, h, T::infinity());
    }
    let mut sq = vec![0.0f64; w * h];
    let (mut v, mut z) = (Vec::new(), Vec::new());

    let mut col = vec![0.0; h];
    let mut col_out = vec![0.0; h];
    for x in 0..w {
        for y in 0..h {
            col[y] = if img.get(x, y) { FAR } else { 0.0 };
        }
        squared_1d(&col, &mut col_out, &mut v, &mut z);
        for y in 0..h {
            sq[y * w + x] = col_out[y];
        }
    }
    let mut row_out = vec![0.0; w];
    for y in 0..h {
        let row = &sq[y * w..(y + 1) * w];
        squared_1d(row, &mut row_out, &mut v, &mut z);
        sq[y * w..(y + 1) * w].copy_from_slice(&row_out);
    }
    Grid::new(w, h, sq.into_iter().map(|d| T::of(d).sqrt()).collect()).expect("same dimensions")
}
