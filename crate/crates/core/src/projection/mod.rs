//! Standardization, principal components and linear discriminants.

mod linalg;
mod matrix;

use std::collections::BTreeMap;
use std::fmt::Display;

pub use linalg::{back_substitute_transpose, cholesky, forward_substitute, symmetric_eigen};
pub use matrix::{dot, norm, Matrix};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-column centring and scaling parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardization<T> {
    pub means: Vec<T>,
    pub scales: Vec<T>,
    /// Columns with zero variance; their standardized values are all 0.
    pub constant: Vec<bool>,
}

impl<T: Scalar> Standardization<T> {
    pub fn apply_row(&self, row: &[T]) -> Vec<T> {
        row.iter()
            .enumerate()
            .map(|(j, &v)| {
                if self.constant[j] {
                    T::zero()
                } else {
                    (v - self.means[j]) / self.scales[j]
                }
            })
            .collect()
    }

    pub fn apply(&self, x: &Matrix<T>) -> Matrix<T> {
        let rows: Vec<Vec<T>> = (0..x.rows()).map(|i| self.apply_row(x.row(i))).collect();
        Matrix::from_rows(&rows).unwrap_or_else(|_| Matrix::zeros(0, x.cols()))
    }
}

/// How raw columns are prepared before fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Zero mean, unit sample standard deviation.
    #[default]
    Standardize,
    /// Zero mean only.
    CenterOnly,
}

/// Centres each column and divides by its sample (n − 1) standard deviation.
pub fn standardize<T: Scalar>(x: &Matrix<T>) -> Result<(Matrix<T>, Standardization<T>)> {
    fit_scaling(x, Scaling::Standardize)
}

fn fit_scaling<T: Scalar>(
    x: &Matrix<T>,
    scaling: Scaling,
) -> Result<(Matrix<T>, Standardization<T>)> {
    let n = x.rows();
    if n < 2 {
        return Err(Error::TooFewRows(n));
    }
    let nt = T::from_count(n);
    let means: Vec<T> = (0..x.cols())
        .map(|j| x.column(j).into_iter().sum::<T>() / nt)
        .collect();
    let sds: Vec<T> = (0..x.cols())
        .map(|j| {
            let ss: T = x
                .column(j)
                .into_iter()
                .map(|v| (v - means[j]) * (v - means[j]))
                .sum();
            (ss / T::from_count(n - 1)).sqrt()
        })
        .collect();
    let constant: Vec<bool> = sds
        .iter()
        .zip(&means)
        .map(|(&s, &m)| !(s > T::epsilon() * m.abs().max(T::one())))
        .collect();
    let scales = match scaling {
        Scaling::Standardize => sds
            .iter()
            .zip(&constant)
            .map(|(&s, &c)| if c { T::one() } else { s })
            .collect(),
        Scaling::CenterOnly => vec![T::one(); x.cols()],
    };
    let params = Standardization {
        means,
        scales,
        constant,
    };
    Ok((params.apply(x), params))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    Pca,
    Lda,
}

impl ProjectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProjectionKind::Pca => "pca",
            ProjectionKind::Lda => "lda",
        }
    }
}

/// Fitted projection. Axes are expressed in standardized feature space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionModel<T> {
    pub kind: ProjectionKind,
    pub standardization: Standardization<T>,
    pub axes: Vec<Vec<T>>,
    /// Eigenvalues belonging to `axes`.
    pub eigenvalues: Vec<T>,
    /// Variance share (PCA) or eigenvalue share (LDA) of each axis.
    pub explained: Vec<T>,
}

impl<T: Scalar> ProjectionModel<T> {
    pub fn cumulative_explained(&self) -> Vec<T> {
        self.explained
            .iter()
            .scan(T::zero(), |acc, &e| {
                *acc += e;
                Some(*acc)
            })
            .collect()
    }

    /// Scores of raw rows.
    pub fn transform(&self, x: &Matrix<T>) -> Matrix<T> {
        scores(&self.standardization.apply(x), &self.axes)
    }
}

fn scores<T: Scalar>(z: &Matrix<T>, axes: &[Vec<T>]) -> Matrix<T> {
    let mut out = Matrix::zeros(z.rows(), axes.len());
    for i in 0..z.rows() {
        for (k, a) in axes.iter().enumerate() {
            out[(i, k)] = dot(z.row(i), a);
        }
    }
    out
}

/// Flips an axis so its largest-magnitude coefficient is positive.
fn orient_axis<T: Scalar>(mut v: Vec<T>) -> Vec<T> {
    let lead = v.iter().copied().fold(
        T::zero(),
        |best, x| if x.abs() > best.abs() { x } else { best },
    );
    if lead < T::zero() {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

fn covariance<T: Scalar>(z: &Matrix<T>) -> Matrix<T> {
    let (n, p) = (z.rows(), z.cols());
    let mut c = Matrix::zeros(p, p);
    for i in 0..n {
        let r = z.row(i);
        for a in 0..p {
            for b in a..p {
                c[(a, b)] += r[a] * r[b];
            }
        }
    }
    let d = T::from_count(n - 1);
    for a in 0..p {
        for b in a..p {
            let v = c[(a, b)] / d;
            c[(a, b)] = v;
            c[(b, a)] = v;
        }
    }
    c
}

/// Principal components of the prepared matrix; returns the model and the
/// scores on the first `k` axes.
pub fn pca_fit<T: Scalar>(
    x: &Matrix<T>,
    k: usize,
    scaling: Scaling,
) -> Result<(ProjectionModel<T>, Matrix<T>)> {
    let (z, params) = fit_scaling(x, scaling)?;
    let max = (x.rows() - 1).min(x.cols());
    if k == 0 || k > max {
        return Err(Error::InvalidK { k, max });
    }
    let (values, vectors) = symmetric_eigen(&covariance(&z))?;
    let values: Vec<T> = values.into_iter().map(|v| v.max(T::zero())).collect();
    let total: T = values.iter().copied().sum();
    let axes: Vec<Vec<T>> = (0..k).map(|i| orient_axis(vectors.column(i))).collect();
    let explained = values[..k]
        .iter()
        .map(|&v| {
            if total > T::zero() {
                v / total
            } else {
                T::zero()
            }
        })
        .collect();
    let s = scores(&z, &axes);
    let model = ProjectionModel {
        kind: ProjectionKind::Pca,
        standardization: params,
        axes,
        eigenvalues: values[..k].to_vec(),
        explained,
    };
    Ok((model, s))
}

/// Multiclass Fisher discriminants. The within-class scatter is whitened by
/// its Cholesky factor, with a small ridge when it is close to singular.
/// Axes are scaled to unit pooled within-class variance.
pub fn lda_fit<T: Scalar, L: Ord + Clone + Display>(
    x: &Matrix<T>,
    labels: &[L],
    k: usize,
    scaling: Scaling,
) -> Result<(ProjectionModel<T>, Matrix<T>)> {
    if labels.len() != x.rows() {
        return Err(Error::DimensionMismatch(
            x.rows(),
            x.cols(),
            labels.len(),
            1,
        ));
    }
    let (z, params) = fit_scaling(x, scaling)?;
    let (n, p) = (z.rows(), z.cols());
    let mut classes: BTreeMap<&L, Vec<usize>> = BTreeMap::new();
    for (i, l) in labels.iter().enumerate() {
        classes.entry(l).or_default().push(i);
    }
    if classes.len() < 2 {
        return Err(Error::NeedTwoClasses);
    }
    if let Some((l, _)) = classes.iter().find(|(_, rows)| rows.len() < 2) {
        return Err(Error::DegenerateClass(l.to_string()));
    }
    let c = classes.len();
    if k == 0 || k > c - 1 {
        return Err(Error::InvalidK { k, max: c - 1 });
    }

    let nt = T::from_count(n);
    let grand: Vec<T> = (0..p)
        .map(|j| z.column(j).into_iter().sum::<T>() / nt)
        .collect();
    let mut sw = Matrix::zeros(p, p);
    let mut sb = Matrix::zeros(p, p);
    for rows in classes.values() {
        let m = T::from_count(rows.len());
        let mean: Vec<T> = (0..p)
            .map(|j| rows.iter().map(|&i| z[(i, j)]).sum::<T>() / m)
            .collect();
        for &i in rows {
            let d: Vec<T> = (0..p).map(|j| z[(i, j)] - mean[j]).collect();
            for a in 0..p {
                for b in 0..p {
                    sw[(a, b)] += d[a] * d[b];
                }
            }
        }
        let d: Vec<T> = (0..p).map(|j| mean[j] - grand[j]).collect();
        for a in 0..p {
            for b in 0..p {
                sb[(a, b)] += m * d[a] * d[b];
            }
        }
    }

    let (sw_vals, _) = symmetric_eigen(&sw)?;
    let top = sw_vals.first().copied().unwrap_or(T::zero());
    let bottom = sw_vals.last().copied().unwrap_or(T::zero());
    if !(bottom > T::of(1e-10) * top) {
        let ridge = T::of(1e-6) * sw.trace() / T::from_count(p);
        let ridge = if ridge > T::zero() {
            ridge
        } else {
            T::of(1e-6)
        };
        for a in 0..p {
            sw[(a, a)] += ridge;
        }
    }
    let l = cholesky(&sw)?;
    // C = L⁻¹ S_B L⁻ᵀ, built column by column.
    let mut y = Matrix::zeros(p, p);
    for j in 0..p {
        let col = forward_substitute(&l, &sb.column(j));
        for i in 0..p {
            y[(i, j)] = col[i];
        }
    }
    let mut cm = Matrix::zeros(p, p);
    for j in 0..p {
        let col = forward_substitute(&l, y.row(j));
        for i in 0..p {
            cm[(i, j)] = col[i];
        }
    }
    for a in 0..p {
        for b in (a + 1)..p {
            let v = (cm[(a, b)] + cm[(b, a)]) / T::two();
            cm[(a, b)] = v;
            cm[(b, a)] = v;
        }
    }
    let (values, vectors) = symmetric_eigen(&cm)?;
    let values: Vec<T> = values.into_iter().map(|v| v.max(T::zero())).collect();
    let total: T = values.iter().take(c - 1).copied().sum();
    let dof = T::from_count(n - c).sqrt();
    let axes: Vec<Vec<T>> = (0..k)
        .map(|i| {
            orient_axis(
                back_substitute_transpose(&l, &vectors.column(i))
                    .into_iter()
                    .map(|w| w * dof)
                    .collect(),
            )
        })
        .collect();
    let explained = values[..k]
        .iter()
        .map(|&v| {
            if total > T::zero() {
                v / total
            } else {
                T::zero()
            }
        })
        .collect();
    let s = scores(&z, &axes);
    let model = ProjectionModel {
        kind: ProjectionKind::Lda,
        standardization: params,
        axes,
        eigenvalues: values[..k].to_vec(),
        explained,
    };
    Ok((model, s))
}

#[cfg(test)]
mod tests;
