//! Deterministic synthetic leaf corpus: five shape classes, four variants each.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{PipelineError, Result};

pub const SHAPES: [&str; 5] = ["round", "simple_round", "diamond", "needle", "heart"];
pub const VARIANTS: usize = 4;
pub const CANVAS: (u32, u32) = (400, 300);

const SCALES: [f64; VARIANTS] = [0.85, 1.0, 0.9, 1.1];
const ROTATIONS_DEG: [f64; VARIANTS] = [0.0, 25.0, -40.0, 65.0];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthEntry {
    pub file: String,
    pub shape: String,
    pub species: String,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn noise(seed: u64, x: u32, y: u32, amplitude: i32) -> i32 {
    let h = splitmix(seed ^ (u64::from(x) << 20) ^ (u64::from(y) << 40));
    (h % (2 * amplitude as u64 + 1)) as i32 - amplitude
}

/// Membership in the canonical leaf outline, in pixels, leaf tip along +y.
fn inside(shape: &str, x: f64, y: f64) -> bool {
    match shape {
        "round" => x * x + y * y <= 90.0 * 90.0,
        "simple_round" => (x / 75.0).powi(2) + (y / 110.0).powi(2) <= 1.0,
        "diamond" => x.abs() / 80.0 + y.abs() / 120.0 <= 1.0,
        "needle" => (x / 18.0).powi(2) + (y / 125.0).powi(2) <= 1.0,
        "heart" => {
            // Classic sextic heart, lobes at the stalk end.
            let (u, v) = (x / 85.0, -y / 85.0 + 0.1);
            let a = u * u + v * v - 1.0;
            a * a * a - u * u * v * v * v <= 0.0
        }
        _ => false,
    }
}

fn half_length(shape: &str) -> f64 {
    match shape {
        "round" => 90.0,
        "simple_round" => 110.0,
        "diamond" => 120.0,
        "needle" => 125.0,
        _ => 95.0,
    }
}

/// Renders variant `variant` of `shape` as an RGB image on a light background.
pub fn render(shape: &str, variant: usize) -> image::RgbImage {
    let (w, h) = CANVAS;
    let scale = SCALES[variant % VARIANTS];
    let (sin, cos) = ROTATIONS_DEG[variant % VARIANTS].to_radians().sin_cos();
    let stalk = variant % 2 == 1;
    let class = SHAPES.iter().position(|&s| s == shape).unwrap_or(0) as u64;
    let seed = splitmix(class * 16 + variant as u64);
    let base = [
        40 + 12 * class as i32,
        115 + 6 * (variant as i32),
        35 + 5 * class as i32,
    ];
    let (cx, cy) = (f64::from(w) / 2.0, f64::from(h) / 2.0);
    let reach = half_length(shape);
    image::RgbImage::from_fn(w, h, |px, py| {
        let (dx, dy) = (f64::from(px) - cx, f64::from(py) - cy);
        // Undo rotation and scale; image y points down, leaf tip points up.
        let x = (cos * dx + sin * dy) / scale;
        let y = -(-sin * dx + cos * dy) / scale;
        let leaf = inside(shape, x, y);
        let on_stalk = stalk && x.abs() <= 1.5 / scale && y < 0.0 && y > -(reach + 45.0);
        if leaf || on_stalk {
            let vein = if x.abs() < 2.0 { -18 } else { 0 };
            let lateral = if leaf && ((y - x.abs() * 0.6) / 14.0).rem_euclid(1.0) < 0.12 {
                -10
            } else {
                0
            };
            let n = noise(seed, px, py, 12);
            image::Rgb(base.map(|c| (c + vein + lateral + n).clamp(0, 255) as u8))
        } else {
            let n = noise(seed ^ 0xbac, px, py, 4);
            image::Rgb([240, 238, 232].map(|c: i32| (c + n).clamp(0, 255) as u8))
        }
    })
}

/// Writes the 20 corpus images plus `labels.csv` into `dir`.
pub fn write_corpus(dir: &Path) -> Result<Vec<SynthEntry>> {
    fs::create_dir_all(dir).map_err(PipelineError::io(dir))?;
    let mut entries = Vec::new();
    for shape in SHAPES {
        for v in 0..VARIANTS {
            let file = format!("{shape}_{v}.png");
            let path: PathBuf = dir.join(&file);
            render(shape, v)
                .save(&path)
                .map_err(|source| PipelineError::Image {
                    path: path.clone(),
                    source,
                })?;
            entries.push(SynthEntry {
                file,
                shape: shape.to_string(),
                species: format!("{shape}_{}", ["a", "b"][v % 2]),
            });
        }
    }
    let labels = dir.join("labels.csv");
    let mut w = csv::Writer::from_path(&labels).map_err(PipelineError::csv(&labels))?;
    w.write_record(["filename", "shape", "species"])
        .map_err(PipelineError::csv(&labels))?;
    for e in &entries {
        w.write_record([&e.file, &e.shape, &e.species])
            .map_err(PipelineError::csv(&labels))?;
    }
    w.flush().map_err(PipelineError::io(&labels))?;
    Ok(entries)
}
