use super::image::{BinaryImage, ColorImage, GrayImage};
use crate::error::{Error, Result};

/// Default working resolution (width, height).
pub const DEFAULT_SIZE: (usize, usize) = (1600, 1200);

/// Resampling to a fixed size. Color and gray images use bilinear
/// interpolation on pixel centers; binary images use nearest neighbor so
/// they stay two-valued.
pub trait Resize: Sized {
    fn resize(&self, width: usize, height: usize) -> Result<Self>;

    fn resize_default(&self) -> Result<Self> {
        self.resize(DEFAULT_SIZE.0, DEFAULT_SIZE.1)
    }
}

fn check(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidSize { width, height });
    }
    Ok(())
}

/// Source sample positions for bilinear interpolation along one axis.
fn linear_taps(src: usize, dst: usize) -> Vec<(usize, usize, f64)> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| {
            let s = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
            let i0 = s.floor() as usize;
            let i1 = (i0 + 1).min(src - 1);
            (i0, i1, s - i0 as f64)
        })
        .collect()
}

fn nearest(src: usize, dst: usize) -> Vec<usize> {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| (((i as f64 + 0.5) * scale).floor() as usize).min(src - 1))
        .collect()
}

fn bilinear(
    taps_x: &[(usize, usize, f64)],
    taps_y: &[(usize, usize, f64)],
    x: usize,
    y: usize,
    get: impl Fn(usize, usize) -> f64,
) -> u8 {
    let (x0, x1, fx) = taps_x[x];
    let (y0, y1, fy) = taps_y[y];
    let top = get(x0, y0) * (1.0 - fx) + get(x1, y0) * fx;
    let bottom = get(x0, y1) * (1.0 - fx) + get(x1, y1) * fx;
    (top * (1.0 - fy) + bottom * fy).round().clamp(0.0, 255.0) as u8
}

impl Resize for GrayImage {
    fn resize(&self, width: usize, height: usize) -> Result<Self> {
        check(width, height)?;
        if (width, height) == (self.width(), self.height()) {
            return Ok(self.clone());
        }
        let tx = linear_taps(self.width(), width);
        let ty = linear_taps(self.height(), height);
        GrayImage::from_fn(width, height, |x, y| {
            bilinear(&tx, &ty, x, y, |sx, sy| f64::from(self.get(sx, sy)))
        })
    }
}

impl Resize for ColorImage {
    fn resize(&self, width: usize, height: usize) -> Result<Self> {
        check(width, height)?;
        if (width, height) == (self.width(), self.height()) {
            return Ok(self.clone());
        }
        let tx = linear_taps(self.width(), width);
        let ty = linear_taps(self.height(), height);
        ColorImage::from_fn(width, height, self.order(), |x, y| {
            let ch = |c: usize| bilinear(&tx, &ty, x, y, |sx, sy| f64::from(self.get(sx, sy)[c]));
            [ch(0), ch(1), ch(2)]
        })
    }
}

impl Resize for BinaryImage {
    fn resize(&self, width: usize, height: usize) -> Result<Self> {
        check(width, height)?;
        let nx = nearest(self.width(), width);
        let ny = nearest(self.height(), height);
        BinaryImage::from_fn(width, height, |x, y| self.get(nx[x], ny[y]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgproc::ChannelOrder;

    #[test]
    fn default_size_is_noop_at_target() {
        let img = GrayImage::from_fn(1600, 1200, |x, y| ((x * 7 + y * 3) % 256) as u8).unwrap();
        assert_eq!(img.resize_default().unwrap(), img);
        let bin = BinaryImage::from_fn(1600, 1200, |x, y| (x + y) % 3 == 0).unwrap();
        assert_eq!(bin.resize_default().unwrap(), bin);
    }

    #[test]
    fn upscale_dims() {
        let img =
            ColorImage::from_fn(800, 600, ChannelOrder::Rgb, |x, y| [x as u8, y as u8, 9]).unwrap();
        let out = img.resize_default().unwrap();
        assert_eq!((out.width(), out.height()), (1600, 1200));
        assert_eq!(out.order(), ChannelOrder::Rgb);
    }

    #[test]
    fn binary_stays_binary() {
        let bin = BinaryImage::from_fn(37, 23, |x, y| (x * y) % 5 == 1).unwrap();
        let out = bin.resize(101, 57).unwrap();
        assert!(out.to_gray().pixels().iter().all(|&v| v == 0 || v == 255));
    }

    #[test]
    fn bilinear_midpoint() {
        let img = GrayImage::new(2, 1, vec![0, 100]).unwrap();
        let out = img.resize(4, 1).unwrap();
        assert_eq!(out.pixels(), &[0, 25, 75, 100]);
    }

    #[test]
    fn zero_target_rejected() {
        let img = GrayImage::new(2, 2, vec![0; 4]).unwrap();
        assert_eq!(
            img.resize(0, 5),
            Err(Error::InvalidSize {
                width: 0,
                height: 5
            })
        );
    }
}
