//! Petiole removal.
//!
//! The distance map of the silhouette is rescaled to 8 bits and Otsu picks a
//! cutoff on the foreground distance histogram. Pixels deeper than the
//! cutoff form the sure-foreground core; the silhouette is then rebuilt as
//! every original pixel within the cutoff radius of that core. Structures
//! thinner than twice the cutoff (the stalk) cannot reach the core and are
//! dropped, while the blade is restored up to raster error. Only the largest
//! remaining component is kept.

use super::components::largest_component;
use super::distance::distance_transform;
use super::image::BinaryImage;
use super::otsu::{otsu_from_histogram, GrayHistogram};
use crate::error::{Error, Result};

pub fn remove_stalk(img: &BinaryImage) -> Result<BinaryImage> {
    if img.count_foreground() == 0 {
        return Err(Error::EmptyForeground);
    }
    let dist = distance_transform::<f64>(img);
    let fg: Vec<usize> = (0..img.pixels().len())
        .filter(|&i| img.pixels()[i])
        .collect();
    let max = fg.iter().map(|&i| dist.values()[i]).fold(0.0, f64::max);
    if !max.is_finite() || max <= 0.0 {
        return Ok(img.clone());
    }
    let quantized: Vec<u8> = dist
        .values()
        .iter()
        .map(|&d| (d / max * 255.0).round().clamp(0.0, 255.0) as u8)
        .collect();
    let hist = GrayHistogram::from_values(fg.iter().map(|&i| quantized[i]));
    let Ok(otsu) = otsu_from_histogram::<f64>(&hist) else {
        return Ok(img.clone());
    };

    let core_mask: Vec<bool> = (0..quantized.len())
        .map(|i| img.pixels()[i] && quantized[i] > otsu.threshold)
        .collect();
    let radius = fg
        .iter()
        .filter(|&&i| core_mask[i])
        .map(|&i| dist.values()[i])
        .fold(f64::INFINITY, f64::min);
    if !radius.is_finite() {
        return Ok(img.clone());
    }

    // Distance of every pixel to the nearest core pixel.
    let not_core = BinaryImage::new(
        img.width(),
        img.height(),
        core_mask.iter().map(|c| !c).collect(),
    )?;
    let to_core = distance_transform::<f64>(&not_core);
    let rebuilt = BinaryImage::new(
        img.width(),
        img.height(),
        (0..quantized.len())
            .map(|i| img.pixels()[i] && to_core.values()[i] <= radius + 1e-9)
            .collect(),
    )?;
    Ok(largest_component(&rebuilt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(cx: f64, cy: f64, r: f64) -> impl Fn(usize, usize) -> bool {
        move |x, y| (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) <= r * r
    }

    #[test]
    fn stalk_is_cut_from_disk() {
        let d = disk(60.0, 60.0, 40.0);
        let disk_only = BinaryImage::from_fn(200, 130, &d).unwrap();
        // 3 px wide, 60 px long stalk leaving the disk to the right.
        let with_stalk = BinaryImage::from_fn(200, 130, |x, y| {
            d(x, y) || ((100..160).contains(&x) && (59..62).contains(&y))
        })
        .unwrap();
        let out = remove_stalk(&with_stalk).unwrap();
        for x in 110..160 {
            for y in 55..66 {
                assert!(!out.get(x, y), "stalk pixel ({x},{y}) survived");
            }
        }
        let kept = out.count_foreground() as f64;
        let expect = disk_only.count_foreground() as f64;
        assert!((kept - expect).abs() / expect < 0.05, "{kept} vs {expect}");
    }

    #[test]
    fn convex_blob_loses_little() {
        let img = BinaryImage::from_fn(160, 120, |x, y| {
            let (dx, dy) = ((x as f64 - 80.0) / 60.0, (y as f64 - 60.0) / 35.0);
            dx * dx + dy * dy <= 1.0
        })
        .unwrap();
        let out = remove_stalk(&img).unwrap();
        let (before, after) = (img.count_foreground() as f64, out.count_foreground() as f64);
        assert!(after <= before);
        assert!((before - after) / before < 0.15);
    }

    #[test]
    fn empty_image_errors() {
        let img = BinaryImage::empty(8, 8).unwrap();
        assert_eq!(remove_stalk(&img), Err(Error::EmptyForeground));
    }
}
