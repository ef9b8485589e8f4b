//! Moore-neighbour border following and the filled region behind a contour.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::imgproc::{label_components, BinaryImage};

/// Integer pixel position (x to the right, y downward).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pixel {
    pub x: i64,
    pub y: i64,
}

impl Pixel {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    fn is_neighbor(self, o: Self) -> bool {
        let (dx, dy) = ((self.x - o.x).abs(), (self.y - o.y).abs());
        dx.max(dy) == 1
    }
}

/// Clockwise (on screen) from west.
const MOORE: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

fn direction_of(dx: i64, dy: i64) -> usize {
    MOORE
        .iter()
        .position(|&d| d == (dx, dy))
        .expect("unit step")
}

/// Closed boundary of one connected region: the last point connects back to
/// the first.
#[derive(Debug, Clone)]
pub struct Contour {
    points: Vec<Pixel>,
    region: OnceLock<Region>,
}

impl PartialEq for Contour {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Contour {
    /// Validates the closed-chain invariants: at least three points, each
    /// consecutive pair (including last to first) 8-adjacent.
    pub fn new(points: Vec<Pixel>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateContour("fewer than three points"));
        }
        let m = points.len();
        if (0..m).any(|i| !points[i].is_neighbor(points[(i + 1) % m])) {
            return Err(Error::DegenerateContour(
                "consecutive points are not 8-neighbours",
            ));
        }
        Ok(Self {
            points,
            region: OnceLock::new(),
        })
    }

    pub fn points(&self) -> &[Pixel] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of axis-aligned and diagonal steps around the closed chain.
    pub fn step_counts(&self) -> (usize, usize) {
        let m = self.points.len();
        let diagonal = (0..m)
            .filter(|&i| {
                let (a, b) = (self.points[i], self.points[(i + 1) % m]);
                a.x != b.x && a.y != b.y
            })
            .count();
        (m - diagonal, diagonal)
    }

    /// Pixels enclosed by the contour, the contour itself included.
    pub fn region(&self) -> &Region {
        self.region
            .get_or_init(|| Region::enclosed_by(&self.points))
    }
}

/// Filled interior of a closed pixel chain, stored as a mask over its
/// bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    x0: i64,
    y0: i64,
    width: usize,
    height: usize,
    mask: Vec<bool>,
    area: usize,
}

impl Region {
    fn enclosed_by(points: &[Pixel]) -> Self {
        let x0 = points.iter().map(|p| p.x).min().expect("non-empty") - 1;
        let y0 = points.iter().map(|p| p.y).min().expect("non-empty") - 1;
        let x1 = points.iter().map(|p| p.x).max().expect("non-empty") + 1;
        let y1 = points.iter().map(|p| p.y).max().expect("non-empty") + 1;
        let (w, h) = ((x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize);
        let mut wall = vec![false; w * h];
        for p in points {
            wall[(p.y - y0) as usize * w + (p.x - x0) as usize] = true;
        }
        // 4-connected flood of the outside; diagonal gaps in the 8-connected
        // wall cannot be crossed.
        let mut outside = vec![false; w * h];
        let mut queue = VecDeque::from([(0usize, 0usize)]);
        outside[0] = true;
        while let Some((x, y)) = queue.pop_front() {
            let candidates = [
                (x.wrapping_sub(1), y),
                (x + 1, y),
                (x, y.wrapping_sub(1)),
                (x, y + 1),
            ];
            for (nx, ny) in candidates {
                if nx < w && ny < h {
                    let i = ny * w + nx;
                    if !outside[i] && !wall[i] {
                        outside[i] = true;
                        queue.push_back((nx, ny));
                    }
                }
            }
        }
        let mask: Vec<bool> = outside.iter().map(|&o| !o).collect();
        let area = mask.iter().filter(|&&m| m).count();
        Self {
            x0,
            y0,
            width: w,
            height: h,
            mask,
            area,
        }
    }

    /// Builds a region from an explicit pixel set.
    pub fn from_pixels(pixels: &[Pixel]) -> Result<Self> {
        if pixels.is_empty() {
            return Err(Error::DegenerateRegion);
        }
        let x0 = pixels.iter().map(|p| p.x).min().expect("non-empty");
        let y0 = pixels.iter().map(|p| p.y).min().expect("non-empty");
        let w = (pixels.iter().map(|p| p.x).max().expect("non-empty") - x0 + 1) as usize;
        let h = (pixels.iter().map(|p| p.y).max().expect("non-empty") - y0 + 1) as usize;
        let mut mask = vec![false; w * h];
        for p in pixels {
            mask[(p.y - y0) as usize * w + (p.x - x0) as usize] = true;
        }
        let area = mask.iter().filter(|&&m| m).count();
        Ok(Self {
            x0,
            y0,
            width: w,
            height: h,
            mask,
            area,
        })
    }

    /// Number of pixels in the region.
    pub fn area(&self) -> usize {
        self.area
    }

    pub fn contains(&self, p: Pixel) -> bool {
        let (dx, dy) = (p.x - self.x0, p.y - self.y0);
        dx >= 0
            && dy >= 0
            && (dx as usize) < self.width
            && (dy as usize) < self.height
            && self.mask[dy as usize * self.width + dx as usize]
    }

    pub fn pixels(&self) -> impl Iterator<Item = Pixel> + '_ {
        let w = self.width;
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(i, _)| Pixel::new(self.x0 + (i % w) as i64, self.y0 + (i / w) as i64))
    }

    /// Tight bounding box as `(x0, y0, width, height)`.
    pub fn bbox(&self) -> (i64, i64, usize, usize) {
        let (mut x0, mut y0, mut x1, mut y1) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for p in self.pixels() {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        (x0, y0, (x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize)
    }
}

/// Traces the outer boundary of the component whose first raster pixel is
/// `start`. Returns the raw chain (possibly shorter than three points).
fn trace_from(img: &BinaryImage, start: Pixel) -> Vec<Pixel> {
    let fg = |p: Pixel| img.get_signed(p.x, p.y);
    let step = |c: Pixel, back: usize| -> Option<(Pixel, usize)> {
        (1..=8).find_map(|i| {
            let d = (back + i) % 8;
            let n = Pixel::new(c.x + MOORE[d].0, c.y + MOORE[d].1);
            fg(n).then(|| {
                let prev = MOORE[(d + 7) % 8];
                let b = Pixel::new(c.x + prev.0, c.y + prev.1);
                (n, direction_of(b.x - n.x, b.y - n.y))
            })
        })
    };

    let mut points = vec![start];
    // The west neighbour of the first raster pixel is always background.
    let (mut c, mut back) = (start, 0usize);
    let mut first_move = None;
    let limit = 8 * img.pixels().len() + 16;
    for _ in 0..limit {
        let Some((n, nb)) = step(c, back) else { break };
        match first_move {
            None => first_move = Some(n),
            Some(f) if c == start && n == f => {
                points.pop();
                break;
            }
            Some(_) => {}
        }
        points.push(n);
        c = n;
        back = nb;
    }
    points
}

/// Outer contours of every 8-connected component with at least three
/// boundary points, largest enclosed area first.
pub fn extract_contours(img: &BinaryImage) -> Result<Vec<Contour>> {
    let (_, comps) = label_components(img);
    if comps.is_empty() {
        return Err(Error::NoContour);
    }
    let mut contours: Vec<Contour> = comps
        .iter()
        .filter_map(|c| {
            Contour::new(trace_from(
                img,
                Pixel::new(c.start.0 as i64, c.start.1 as i64),
            ))
            .ok()
        })
        .collect();
    if contours.is_empty() {
        return Err(Error::NoContour);
    }
    // Stable sort keeps raster order among equal areas.
    contours.sort_by_key(|c| std::cmp::Reverse(c.region().area()));
    Ok(contours)
}

/// The largest contour.
pub fn best_contour(img: &BinaryImage) -> Result<Contour> {
    Ok(extract_contours(img)?.swap_remove(0))
}
