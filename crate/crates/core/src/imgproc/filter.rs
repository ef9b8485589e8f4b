use super::image::{ChannelOrder, ColorImage, GrayImage, Grid};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reorders a BGR image to RGB. An image already in RGB is returned as is.
pub fn bgr_to_rgb(img: &ColorImage) -> ColorImage {
    match img.order() {
        ChannelOrder::Bgr => img.swap_red_blue(),
        ChannelOrder::Rgb => img.clone(),
    }
}

/// Luma conversion `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn to_grayscale(img: &ColorImage) -> GrayImage {
    GrayImage::from_fn(img.width(), img.height(), |x, y| {
        let [r, g, b] = img.rgb(x, y);
        let v = 0.299 * f64::from(r) + 0.587 * f64::from(g) + 0.114 * f64::from(b);
        v.round().clamp(0.0, 255.0) as u8
    })
    .expect("dimensions come from a valid image")
}

/// Standard deviation used when the caller passes a non-positive sigma:
/// `0.3 * ((ksize - 1) * 0.5 - 1) + 0.8`.
pub fn sigma_for_kernel(kernel_size: usize) -> f64 {
    0.3 * ((kernel_size as f64 - 1.0) * 0.5 - 1.0) + 0.8
}

/// Normalized 1-D Gaussian taps of odd length `size`, centered on the middle tap.
pub fn gaussian_kernel<T: Scalar>(size: usize, sigma: T) -> Result<Vec<T>> {
    if size == 0 || size.is_multiple_of(2) {
        return Err(Error::InvalidKernel(size));
    }
    let sigma = if sigma > T::zero() {
        sigma
    } else {
        T::of(sigma_for_kernel(size))
    };
    let r = (size / 2) as i64;
    let denom = T::two() * sigma * sigma;
    let taps: Vec<T> = (-r..=r)
        .map(|i| {
            let d = T::from_int(i);
            (-(d * d) / denom).exp()
        })
        .collect();
    let sum: T = taps.iter().copied().sum();
    Ok(taps.into_iter().map(|t| t / sum).collect())
}

/// Mirror index without repeating the edge sample (`dcb|abcd|cba`).
pub(crate) fn reflect_index(i: i64, n: usize) -> usize {
    if n == 1 {
        return 0;
    }
    let period = 2 * (n as i64 - 1);
    let m = i.rem_euclid(period);
    (if m >= n as i64 { period - m } else { m }) as usize
}

/// Separable Gaussian convolution without rounding. `sigma_x <= 0` derives
/// sigma from the kernel size; the vertical sigma equals the horizontal one.
pub fn blur_to_grid<T: Scalar>(img: &GrayImage, kernel_size: usize, sigma_x: T) -> Result<Grid<T>> {
    let taps = gaussian_kernel(kernel_size, sigma_x)?;
    let (w, h) = (img.width(), img.height());
    let r = (kernel_size / 2) as i64;

    let mut horiz = Grid::filled(w, h, T::zero());
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (k, &t) in taps.iter().enumerate() {
                let sx = reflect_index(x as i64 + k as i64 - r, w);
                acc += t * T::from_count(img.get(sx, y) as usize);
            }
            horiz.set(x, y, acc);
        }
    }

    let mut out = Grid::filled(w, h, T::zero());
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (k, &t) in taps.iter().enumerate() {
                let sy = reflect_index(y as i64 + k as i64 - r, h);
                acc += t * horiz.get(x, sy);
            }
            out.set(x, y, acc);
        }
    }
    Ok(out)
}

/// Gaussian smoothing of an 8-bit image; results are rounded and clamped.
pub fn gaussian_blur(img: &GrayImage, kernel_size: usize, sigma_x: f64) -> Result<GrayImage> {
    let grid = blur_to_grid::<f64>(img, kernel_size, sigma_x)?;
    GrayImage::new(
        img.width(),
        img.height(),
        grid.values()
            .iter()
            .map(|v| v.round().clamp(0.0, 255.0) as u8)
            .collect(),
    )
}
