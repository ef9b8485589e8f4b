//! Otsu threshold selection over an 8-bit histogram.
//!
//! Every candidate `u` splits the levels into `[0, u]` and `[u + 1, 255]`;
//! the chosen threshold maximizes the between-class variance
//! `P1 * P2 * (mu1 - mu2)^2`. The variance is evaluated from integer class
//! counts and sums with a single final division, so small worked examples
//! come out exact.

use super::image::{BinaryImage, GrayImage};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Highest gray level; candidates run over `0..MAX_LEVEL`.
pub const MAX_LEVEL: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayHistogram {
    counts: [u64; 256],
    total: u64,
}

impl GrayHistogram {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn from_values(values: impl IntoIterator<Item = u8>) -> Self {
        let mut counts = [0u64; 256];
        for v in values {
            counts[v as usize] += 1;
        }
        Self::from_counts(counts)
    }

    pub fn from_image(img: &GrayImage) -> Self {
        Self::from_values(img.pixels().iter().copied())
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    /// Number of pixel locations the histogram was built from.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn occupied_levels(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Class statistics for one candidate threshold. Means of an empty class are
/// reported as zero and its variance contribution is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OtsuCandidate<T> {
    pub threshold: u8,
    pub variance: T,
    pub p1: T,
    pub p2: T,
    pub mu1: T,
    pub mu2: T,
}

impl<T: Scalar> OtsuCandidate<T> {
    pub fn both_classes_nonempty(&self) -> bool {
        self.p1 > T::zero() && self.p2 > T::zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OtsuResult<T> {
    pub threshold: u8,
    pub best_variance: T,
    pub candidates: Vec<OtsuCandidate<T>>,
}

/// Between-class statistics of `hist` split at `u`.
pub fn evaluate_candidate<T: Scalar>(hist: &GrayHistogram, u: u8) -> OtsuCandidate<T> {
    let (mut n1, mut s1, mut n2, mut s2) = (0u128, 0u128, 0u128, 0u128);
    for (level, &c) in hist.counts().iter().enumerate() {
        let c = c as u128;
        if level <= u as usize {
            n1 += c;
            s1 += c * level as u128;
        } else {
            n2 += c;
            s2 += c * level as u128;
        }
    }
    let total = n1 + n2;
    let ratio = |num: u128, den: u128| {
        if den == 0 {
            T::zero()
        } else {
            T::from_u128(num).expect("fits") / T::from_u128(den).expect("fits")
        }
    };
    let variance = if n1 == 0 || n2 == 0 {
        T::zero()
    } else {
        let a = (s1 * n2) as i128;
        let b = (s2 * n1) as i128;
        let diff = (a - b).unsigned_abs();
        ratio(diff * diff, total * total * n1 * n2)
    };
    OtsuCandidate {
        threshold: u,
        variance,
        p1: ratio(n1, total),
        p2: ratio(n2, total),
        mu1: ratio(s1, n1),
        mu2: ratio(s2, n2),
    }
}

/// Sweeps every candidate `u < 255`, keeping the first (smallest) maximizer.
pub fn otsu_from_histogram<T: Scalar>(hist: &GrayHistogram) -> Result<OtsuResult<T>> {
    let mut best = T::zero();
    let mut tau = None;
    let mut candidates = Vec::with_capacity(MAX_LEVEL);
    for u in 0..MAX_LEVEL {
        let c = evaluate_candidate::<T>(hist, u as u8);
        if c.variance > best {
            best = c.variance;
            tau = Some(u as u8);
        }
        candidates.push(c);
    }
    let threshold = tau.ok_or(Error::DegenerateHistogram)?;
    Ok(OtsuResult {
        threshold,
        best_variance: best,
        candidates,
    })
}

/// Pixels strictly above `tau` become foreground.
pub fn apply_threshold(img: &GrayImage, tau: u8) -> BinaryImage {
    BinaryImage::new(
        img.width(),
        img.height(),
        img.pixels().iter().map(|&v| v > tau).collect(),
    )
    .expect("dimensions come from a valid image")
}

/// Otsu binarization with polarity correction: if more than half the image
/// ends up foreground the mask is inverted, since leaves are photographed on
/// a lighter background.
pub fn otsu_threshold<T: Scalar>(img: &GrayImage) -> Result<(OtsuResult<T>, BinaryImage)> {
    let result = otsu_from_histogram(&GrayHistogram::from_image(img))?;
    let mut binary = apply_threshold(img, result.threshold);
    if 2 * binary.count_foreground() > img.width() * img.height() {
        binary = binary.invert();
    }
    Ok((result, binary))
}
