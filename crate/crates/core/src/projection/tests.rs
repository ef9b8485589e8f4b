use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Standard normal by Box-Muller.
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let (u, v): (f64, f64) = (rng.gen_range(1e-12..1.0), rng.gen());
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols)
        .map(|_| normal(&mut rng) * rng.gen_range(0.5..3.0))
        .collect();
    Matrix::new(rows, cols, data).unwrap()
}

#[test]
fn standardize_examples() {
    let x = Matrix::new(3, 2, vec![1.0, 5.0, 2.0, 5.0, 3.0, 5.0]).unwrap();
    let (z, p) = standardize(&x).unwrap();
    assert_eq!(z.column(0), vec![-1.0, 0.0, 1.0]);
    assert_eq!(z.column(1), vec![0.0, 0.0, 0.0]);
    assert_eq!(p.constant, vec![false, true]);
    assert_eq!(
        standardize(&Matrix::<f64>::zeros(1, 3)),
        Err(Error::TooFewRows(1))
    );
}

#[test]
fn standardized_columns_have_unit_moments() {
    let (z, _) = standardize(&random_matrix(40, 6, 1)).unwrap();
    for j in 0..6 {
        let c = z.column(j);
        let mean = c.iter().sum::<f64>() / 40.0;
        let sd = (c.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 39.0).sqrt();
        assert!(mean.abs() < 1e-9 && (sd - 1.0).abs() < 1e-9);
    }
}

#[test]
fn pca_isotropic_and_known_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let iso: Vec<Vec<f64>> = (0..10_000)
        .map(|_| vec![normal(&mut rng), normal(&mut rng)])
        .collect();
    let (m, _) = pca_fit(&Matrix::from_rows(&iso).unwrap(), 2, Scaling::CenterOnly).unwrap();
    assert!((m.explained[0] - 0.5).abs() < 0.02 && (m.explained[1] - 0.5).abs() < 0.02);
    let diag: Vec<Vec<f64>> = (0..10_000)
        .map(|_| vec![2.0 * normal(&mut rng), normal(&mut rng)])
        .collect();
    let (m, _) = pca_fit(&Matrix::from_rows(&diag).unwrap(), 2, Scaling::CenterOnly).unwrap();
    assert!((m.explained[0] - 0.8).abs() < 0.02 && (m.explained[1] - 0.2).abs() < 0.02);
}

#[test]
fn pca_axes_orthonormal_and_reconstruct() {
    let x = random_matrix(30, 8, 3);
    let (m, s) = pca_fit(&x, 8, Scaling::Standardize).unwrap();
    for a in 0..8 {
        assert!((norm(&m.axes[a]) - 1.0).abs() < 1e-8);
        for b in (a + 1)..8 {
            assert!(dot(&m.axes[a], &m.axes[b]).abs() < 1e-8);
        }
    }
    let z = m.standardization.apply(&x);
    for i in 0..30 {
        for j in 0..8 {
            let r: f64 = (0..8).map(|k| s[(i, k)] * m.axes[k][j]).sum();
            assert!((r - z[(i, j)]).abs() < 1e-6);
        }
    }
    let cum = m.cumulative_explained();
    assert!(cum.windows(2).all(|w| w[1] >= w[0]));
    assert!((cum[7] - 1.0).abs() < 1e-8);
    assert!(m.explained.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn pca_scores_are_uncorrelated() {
    let x = random_matrix(50, 5, 4);
    let (_, s) = pca_fit(&x, 5, Scaling::Standardize).unwrap();
    let cols: Vec<Vec<f64>> = (0..5).map(|k| s.column(k)).collect();
    for a in 0..5 {
        assert!(cols[a].iter().sum::<f64>().abs() / 50.0 < 1e-8);
        for b in (a + 1)..5 {
            let cov: f64 = cols[a]
                .iter()
                .zip(&cols[b])
                .map(|(x, y)| x * y)
                .sum::<f64>()
                / 49.0;
            let scale = (dot(&cols[a], &cols[a]) * dot(&cols[b], &cols[b])).sqrt() / 49.0;
            assert!(cov.abs() < 1e-6 * scale);
        }
    }
}

#[test]
fn pca_k_range() {
    let x = random_matrix(4, 6, 5);
    assert_eq!(
        pca_fit(&x, 4, Scaling::Standardize).map(|_| ()),
        Err(Error::InvalidK { k: 4, max: 3 })
    );
    assert!(pca_fit(&x, 0, Scaling::Standardize).is_err());
    assert!(pca_fit(&x, 3, Scaling::Standardize).is_ok());
}

fn two_classes(seed: u64, shift: f64) -> (Matrix<f64>, Vec<&'static str>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for i in 0..200 {
        let c = i % 2;
        let base = [
            normal(&mut rng),
            normal(&mut rng) * 2.0,
            normal(&mut rng) * 0.5,
        ];
        let off = if c == 0 { 0.0 } else { shift };
        rows.push(vec![
            base[0] + off,
            base[1] + 0.3 * base[0] + off * 0.5,
            base[2] - off * 0.2,
        ]);
        labels.push(if c == 0 { "a" } else { "b" });
    }
    (Matrix::from_rows(&rows).unwrap(), labels)
}

/// Gauss-Jordan solve for the oracle.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

#[test]
fn lda_two_class_matches_fisher() {
    let (x, labels) = two_classes(6, 1.5);
    let (m, _) = lda_fit(&x, &labels, 1, Scaling::Standardize).unwrap();
    let z = m.standardization.apply(&x);
    let idx = |l: &str| (0..200).filter(|&i| labels[i] == l).collect::<Vec<_>>();
    let mean = |rows: &[usize]| {
        (0..3)
            .map(|j| rows.iter().map(|&i| z[(i, j)]).sum::<f64>() / rows.len() as f64)
            .collect::<Vec<_>>()
    };
    let (ia, ib) = (idx("a"), idx("b"));
    let (ma, mb) = (mean(&ia), mean(&ib));
    let mut sw = vec![vec![0.0; 3]; 3];
    for (rows, mu) in [(&ia, &ma), (&ib, &mb)] {
        for &i in rows.iter() {
            for a in 0..3 {
                for b in 0..3 {
                    sw[a][b] += (z[(i, a)] - mu[a]) * (z[(i, b)] - mu[b]);
                }
            }
        }
    }
    let w = solve(sw, (0..3).map(|j| ma[j] - mb[j]).collect());
    let cos = dot(&w, &m.axes[0]).abs() / (norm(&w) * norm(&m.axes[0]));
    assert!(cos.min(1.0).acos() < 1e-4);
}

#[test]
fn lda_separates_distant_classes() {
    let (x, labels) = two_classes(7, 10.0);
    let (_, s) = lda_fit(&x, &labels, 1, Scaling::CenterOnly).unwrap();
    let (mut a, mut b): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    for i in 0..200 {
        if labels[i] == "a" {
            a.push(s[(i, 0)])
        } else {
            b.push(s[(i, 0)])
        }
    }
    let m = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let sd = |v: &[f64]| {
        (v.iter().map(|x| (x - m(v)).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
    };
    assert!((m(&a) - m(&b)).abs() > 5.0 * sd(&a).max(sd(&b)));
    let (lo_a, hi_a) = (
        a.iter().cloned().fold(f64::MAX, f64::min),
        a.iter().cloned().fold(f64::MIN, f64::max),
    );
    let overlap = b.iter().filter(|&&v| v >= lo_a && v <= hi_a).count();
    assert!(overlap * 100 < b.len());
}

#[test]
fn lda_errors_and_rank() {
    let x = random_matrix(12, 4, 8);
    let one = vec!["a"; 12];
    assert_eq!(
        lda_fit(&x, &one, 1, Scaling::Standardize).map(|_| ()),
        Err(Error::NeedTwoClasses)
    );
    let mut lonely = vec!["a"; 12];
    lonely[3] = "z";
    assert_eq!(
        lda_fit(&x, &lonely, 1, Scaling::Standardize).map(|_| ()),
        Err(Error::DegenerateClass("z".into()))
    );
    let three: Vec<&str> = (0..12).map(|i| ["a", "b", "c"][i % 3]).collect();
    assert!(lda_fit(&x, &three, 3, Scaling::Standardize).is_err());
    let (m, s) = lda_fit(&x, &three, 2, Scaling::Standardize).unwrap();
    assert_eq!((m.axes.len(), s.cols()), (2, 2));
}

#[test]
fn lda_handles_more_features_than_rows() {
    let x = random_matrix(10, 20, 9);
    let labels: Vec<&str> = (0..10).map(|i| if i < 5 { "p" } else { "q" }).collect();
    let (m, s) = lda_fit(&x, &labels, 1, Scaling::Standardize).unwrap();
    assert!(m.axes[0].iter().all(|v| v.is_finite()));
    assert!(s.data().iter().all(|v| v.is_finite()));
}

fn between_within_ratio(s: &Matrix<f64>, labels: &[&str]) -> f64 {
    let col = s.column(0);
    let grand = col.iter().sum::<f64>() / col.len() as f64;
    let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (v, l) in col.iter().zip(labels) {
        groups.entry(l).or_default().push(*v);
    }
    let (mut between, mut within) = (0.0, 0.0);
    for g in groups.values() {
        let m = g.iter().sum::<f64>() / g.len() as f64;
        between += g.len() as f64 * (m - grand).powi(2);
        within += g.iter().map(|v| (v - m).powi(2)).sum::<f64>();
    }
    between / within
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn lda_separation_survives_rescaling(scales in proptest::collection::vec(0.01f64..100.0, 3), seed in 0u64..1000) {
        let (x, labels) = two_classes(seed, 1.0);
        let mut y = x.clone();
        for i in 0..y.rows() {
            for j in 0..3 {
                y[(i, j)] *= scales[j];
            }
        }
        let (ma, sa) = lda_fit(&x, &labels, 1, Scaling::Standardize).unwrap();
        let (mb, sb) = lda_fit(&y, &labels, 1, Scaling::Standardize).unwrap();
        prop_assert!((between_within_ratio(&sa, &labels) - between_within_ratio(&sb, &labels)).abs() < 1e-6);
        prop_assert!((ma.eigenvalues[0] - mb.eigenvalues[0]).abs() < 1e-6 * ma.eigenvalues[0].max(1.0));
    }
}
