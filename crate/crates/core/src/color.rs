//! Per-channel color moments.

use crate::error::{Error, Result};
use crate::imgproc::{BinaryImage, ColorImage};
use crate::scalar::Scalar;

/// Reference value the deviations are taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeviationReference {
    /// Mean intensity of the channel over the pixels in scope.
    #[default]
    ChannelMean,
    /// The channel's intensity proportion `M`.
    Proportion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorOptions {
    /// Restrict statistics to foreground pixels of the mask.
    pub masked: bool,
    pub reference: DeviationReference,
}

impl Default for ColorOptions {
    fn default() -> Self {
        Self {
            masked: true,
            reference: DeviationReference::ChannelMean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorFeatures<T> {
    pub mean_r: T,
    pub mean_g: T,
    pub mean_b: T,
    pub sd_r: T,
    pub sd_g: T,
    pub sd_b: T,
}

impl<T: Scalar> ColorFeatures<T> {
    pub const NAMES: [&'static str; 6] = ["mean_r", "mean_g", "mean_b", "sd_r", "sd_g", "sd_b"];

    pub fn values(&self) -> [T; 6] {
        [
            self.mean_r,
            self.mean_g,
            self.mean_b,
            self.sd_r,
            self.sd_g,
            self.sd_b,
        ]
    }
}

/// Channel totals over the selected pixels. Integer sums keep the result
/// independent of channel order.
#[derive(Debug, Default)]
struct Sums {
    n: u64,
    s: [u64; 3],
    sq: [u64; 3],
}

/// `M` is a channel's share of the total intensity; `SD` is the root of the
/// summed squared deviations divided by the total intensity.
pub fn color_moments<T: Scalar>(
    img: &ColorImage,
    mask: &BinaryImage,
    opts: &ColorOptions,
) -> Result<ColorFeatures<T>> {
    if (img.width(), img.height()) != (mask.width(), mask.height()) {
        return Err(Error::DimensionMismatch(
            img.width(),
            img.height(),
            mask.width(),
            mask.height(),
        ));
    }
    let mut sums = Sums::default();
    for y in 0..img.height() {
        for x in 0..img.width() {
            if opts.masked && !mask.get(x, y) {
                continue;
            }
            sums.n += 1;
            for (c, v) in img.rgb(x, y).into_iter().enumerate() {
                sums.s[c] += v as u64;
                sums.sq[c] += v as u64 * v as u64;
            }
        }
    }
    if sums.n == 0 {
        return Err(Error::EmptyForeground);
    }
    let total: u64 = sums.s.iter().sum();
    if total == 0 {
        return Err(Error::DegenerateFeature("color intensity total is zero"));
    }
    let t = T::from_u64(total).expect("fits");
    let m: Vec<T> = sums
        .s
        .iter()
        .map(|&s| T::from_u64(s).expect("fits") / t)
        .collect();
    let sd: Vec<T> = (0..3)
        .map(|c| {
            let squared = match opts.reference {
                // n * sum(v - s/n)^2 = n * sum v^2 - s^2, exact in integers.
                DeviationReference::ChannelMean => {
                    let (n, s, sq) = (sums.n as i128, sums.s[c] as i128, sums.sq[c] as i128);
                    T::from_wide(n * sq - s * s) / T::from_wide(n)
                }
                DeviationReference::Proportion => {
                    let (n, s, sq) = (
                        T::from_u64(sums.n).expect("fits"),
                        T::from_u64(sums.s[c]).expect("fits"),
                        T::from_u64(sums.sq[c]).expect("fits"),
                    );
                    sq - T::two() * m[c] * s + n * m[c] * m[c]
                }
            };
            squared.max(T::zero()).sqrt() / t
        })
        .collect();
    Ok(ColorFeatures {
        mean_r: m[0],
        mean_g: m[1],
        mean_b: m[2],
        sd_r: sd[0],
        sd_g: sd[1],
        sd_b: sd[2],
    })
}
