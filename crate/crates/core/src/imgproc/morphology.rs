use super::image::BinaryImage;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphOp {
    Erode,
    Dilate,
    /// Dilation followed by erosion.
    Close,
}

/// Square-window rank filter along one axis. Out-of-bounds samples are
/// neutral: they never erode and never dilate.
fn pass(img: &BinaryImage, r: usize, horizontal: bool, all: bool) -> BinaryImage {
    let (w, h) = (img.width(), img.height());
    let (outer, inner) = if horizontal { (h, w) } else { (w, h) };
    let mut out = img.clone();
    let mut prefix = vec![0usize; inner + 1];
    for o in 0..outer {
        let at = |i: usize| if horizontal { (i, o) } else { (o, i) };
        for i in 0..inner {
            let (x, y) = at(i);
            prefix[i + 1] = prefix[i] + img.get(x, y) as usize;
        }
        for i in 0..inner {
            let lo = i.saturating_sub(r);
            let hi = (i + r).min(inner - 1);
            let fg = prefix[hi + 1] - prefix[lo];
            let v = if all { fg == hi + 1 - lo } else { fg > 0 };
            let (x, y) = at(i);
            out.set(x, y, v);
        }
    }
    out
}

fn check_kernel(kernel: usize) -> Result<usize> {
    if kernel == 0 || kernel.is_multiple_of(2) {
        return Err(Error::InvalidKernel(kernel));
    }
    Ok(kernel / 2)
}

/// A pixel survives iff every in-image pixel under the `kernel`×`kernel` window is foreground.
pub fn erode(img: &BinaryImage, kernel: usize) -> Result<BinaryImage> {
    let r = check_kernel(kernel)?;
    Ok(pass(&pass(img, r, true, true), r, false, true))
}

/// A pixel becomes foreground iff any pixel under the window is foreground.
pub fn dilate(img: &BinaryImage, kernel: usize) -> Result<BinaryImage> {
    let r = check_kernel(kernel)?;
    Ok(pass(&pass(img, r, true, false), r, false, false))
}

pub fn morphology(img: &BinaryImage, op: MorphOp, kernel: usize) -> Result<BinaryImage> {
    match op {
        MorphOp::Erode => erode(img, kernel),
        MorphOp::Dilate => dilate(img, kernel),
        MorphOp::Close => erode(&dilate(img, kernel)?, kernel),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn block(w: usize, h: usize, x0: usize, y0: usize, side: usize) -> BinaryImage {
        BinaryImage::from_fn(w, h, |x, y| {
            (x0..x0 + side).contains(&x) && (y0..y0 + side).contains(&y)
        })
        .unwrap()
    }

    #[test]
    fn dilate_single_pixel() {
        let img = block(7, 7, 3, 3, 1);
        assert_eq!(
            morphology(&img, MorphOp::Dilate, 3).unwrap(),
            block(7, 7, 2, 2, 3)
        );
    }

    #[test]
    fn erode_block_to_center() {
        let img = block(7, 7, 2, 2, 3);
        assert_eq!(
            morphology(&img, MorphOp::Erode, 3).unwrap(),
            block(7, 7, 3, 3, 1)
        );
    }

    #[test]
    fn close_fills_pinhole() {
        let blob = block(15, 15, 3, 3, 9);
        let mut holed = blob.clone();
        holed.set(7, 7, false);
        assert_eq!(morphology(&holed, MorphOp::Close, 3).unwrap(), blob);
    }

    #[test]
    fn even_kernel_rejected() {
        let img = block(5, 5, 1, 1, 2);
        assert_eq!(
            morphology(&img, MorphOp::Close, 4),
            Err(Error::InvalidKernel(4))
        );
    }

    proptest! {
        #[test]
        fn opening_and_closing_bracket_input(
            bits in proptest::collection::vec(any::<bool>(), 1..=144),
            width in 1usize..=12,
            k in prop_oneof![Just(1usize), Just(3), Just(5)],
        ) {
            let height = bits.len().div_ceil(width);
            let mut px = bits.clone();
            px.resize(width * height, false);
            let x = BinaryImage::new(width, height, px).unwrap();
            let opened = dilate(&erode(&x, k).unwrap(), k).unwrap();
            let closed = erode(&dilate(&x, k).unwrap(), k).unwrap();
            for i in 0..width * height {
                prop_assert!(!opened.pixels()[i] || x.pixels()[i]);
                prop_assert!(!x.pixels()[i] || closed.pixels()[i]);
            }
        }
    }
}
