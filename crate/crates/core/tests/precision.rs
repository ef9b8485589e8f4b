//! The same leaf analysed in single and double precision.

use leafmorph::imgproc::{ChannelOrder, ColorImage};
use leafmorph::{analyze_leaf, LeafOptions32, LeafOptions64};

fn leaf() -> ColorImage {
    ColorImage::from_fn(480, 360, ChannelOrder::Rgb, |x, y| {
        let (dx, dy) = (x as f64 - 240.0, y as f64 - 180.0);
        let (u, v) = (0.8 * dx + 0.6 * dy, -0.6 * dx + 0.8 * dy);
        let th = v.atan2(u);
        let r = 1.0 + 0.2 * (3.0 * th).cos();
        if (u / 150.0).powi(2) + (v / 80.0).powi(2) <= r * r {
            [40 + (x % 7) as u8 * 5, 120 + (y % 5) as u8 * 9, 30]
        } else {
            [235, 235, 230]
        }
    })
    .unwrap()
}

#[test]
fn f32_tracks_f64() {
    let img = leaf();
    let o64 = LeafOptions64 {
        resize: Some((480, 360)),
        blur_kernel: 15,
        ..Default::default()
    };
    let o32 = LeafOptions32 {
        resize: Some((480, 360)),
        blur_kernel: 15,
        ..Default::default()
    };
    let a = analyze_leaf(&img, &o64).unwrap();
    let b = analyze_leaf(&img, &o32).unwrap();
    let mut worst = (0.0, "");
    for ((name, x), (_, y)) in a.iter().zip(b.iter()) {
        let d = (x - f64::from(y)).abs() / x.abs().max(1.0);
        if d > worst.0 {
            worst = (d, name);
        }
    }
    assert!(worst.0 < 1e-3, "{} differs by {}", worst.1, worst.0);
}
