//! Gray-level co-occurrence matrices and four Haralick statistics.

use crate::error::{Error, Result};
use crate::imgproc::GrayImage;
use crate::scalar::Scalar;

/// Adjacency direction, as a pixel displacement with y pointing down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    E,
    NE,
    N,
    NW,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::E, Direction::NE, Direction::N, Direction::NW];

    pub fn offset(self) -> (i64, i64) {
        match self {
            Direction::E => (1, 0),
            Direction::NE => (1, -1),
            Direction::N => (0, -1),
            Direction::NW => (-1, -1),
        }
    }
}

/// Normalized symmetric co-occurrence matrix, row-major `h[a * levels + b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Glcm<T> {
    levels: usize,
    direction: Direction,
    h: Vec<T>,
}

/// Maps a byte to one of `levels` equal-width bins.
pub fn quantize(v: u8, levels: usize) -> usize {
    v as usize * levels / 256
}

impl<T: Scalar> Glcm<T> {
    /// Counts each adjacent pair in both orders, then normalizes.
    pub fn build(img: &GrayImage, levels: usize, direction: Direction) -> Result<Self> {
        if !(2..=256).contains(&levels) {
            return Err(Error::InvalidLevels(levels));
        }
        let (w, h) = (img.width() as i64, img.height() as i64);
        let (dx, dy) = direction.offset();
        let mut counts = vec![0u64; levels * levels];
        let mut total = 0u64;
        for y in 0..h {
            for x in 0..w {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                let a = quantize(img.get(x as usize, y as usize), levels);
                let b = quantize(img.get(nx as usize, ny as usize), levels);
                counts[a * levels + b] += 1;
                counts[b * levels + a] += 1;
                total += 2;
            }
        }
        if total == 0 {
            return Err(Error::InsufficientPixels);
        }
        let t = T::from_u64(total).expect("count fits");
        let h = counts
            .iter()
            .map(|&c| T::from_u64(c).expect("count fits") / t)
            .collect();
        Ok(Self {
            levels,
            direction,
            h,
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn get(&self, a: usize, b: usize) -> T {
        self.h[a * self.levels + b]
    }

    pub fn probabilities(&self) -> &[T] {
        &self.h
    }

    fn cells(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        let n = self.levels;
        self.h
            .iter()
            .enumerate()
            .map(move |(i, &p)| (T::from_count(i / n), T::from_count(i % n), p))
    }

    pub fn row_marginal(&self, a: usize) -> T {
        (0..self.levels).map(|b| self.get(a, b)).sum()
    }

    pub fn col_marginal(&self, b: usize) -> T {
        (0..self.levels).map(|a| self.get(a, b)).sum()
    }

    /// `(mu_x, mu_y)`.
    pub fn means(&self) -> (T, T) {
        self.cells()
            .fold((T::zero(), T::zero()), |(mx, my), (a, b, p)| {
                (mx + a * p, my + b * p)
            })
    }

    /// `(sigma_x, sigma_y)` as standard deviations.
    pub fn std_devs(&self) -> (T, T) {
        let (mx, my) = self.means();
        let (vx, vy) = self
            .cells()
            .fold((T::zero(), T::zero()), |(vx, vy), (a, b, p)| {
                (vx + (a - mx) * (a - mx) * p, vy + (b - my) * (b - my) * p)
            });
        (vx.max(T::zero()).sqrt(), vy.max(T::zero()).sqrt())
    }
}

/// Inverse-difference-moment formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InverseDifference {
    /// `sum h / (1 + (a - b)^2)`, bounded in `[0, 1]`.
    #[default]
    Homogeneity,
    /// `sum h / (a - b)^2` over off-diagonal cells only.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextureOptions {
    pub levels: usize,
    pub inverse_difference: InverseDifference,
}

impl Default for TextureOptions {
    fn default() -> Self {
        Self {
            levels: 8,
            inverse_difference: InverseDifference::Homogeneity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextureFeatures<T> {
    pub contrast: T,
    pub entropy: T,
    pub correlation: T,
    pub inverse_difference_moments: T,
}

impl<T: Scalar> TextureFeatures<T> {
    pub const NAMES: [&'static str; 4] = [
        "contrast",
        "entropy",
        "correlation",
        "inverse_difference_moments",
    ];

    pub fn values(&self) -> [T; 4] {
        [
            self.contrast,
            self.entropy,
            self.correlation,
            self.inverse_difference_moments,
        ]
    }
}

/// Statistics of one matrix.
pub fn haralick<T: Scalar>(g: &Glcm<T>, mode: InverseDifference) -> TextureFeatures<T> {
    let (mut contrast, mut entropy, mut joint, mut idm) =
        (T::zero(), T::zero(), T::zero(), T::zero());
    for (a, b, p) in g.cells() {
        let d2 = (a - b) * (a - b);
        contrast += d2 * p;
        if p > T::zero() {
            entropy -= p * p.log2();
        }
        joint += a * b * p;
        idm += match mode {
            InverseDifference::Homogeneity => p / (T::one() + d2),
            InverseDifference::AsPrinted if d2 > T::zero() => p / d2,
            InverseDifference::AsPrinted => T::zero(),
        };
    }
    let (mx, my) = g.means();
    let (sx, sy) = g.std_devs();
    let correlation = if sx > T::zero() && sy > T::zero() {
        ((joint - mx * my) / (sx * sy)).max(-T::one()).min(T::one())
    } else {
        T::zero()
    };
    TextureFeatures {
        contrast: contrast / T::from_count(g.levels() - 1),
        entropy,
        correlation,
        inverse_difference_moments: idm,
    }
}

/// Mean of the per-direction statistics over E, NE, N and NW.
pub fn texture_features<T: Scalar>(
    img: &GrayImage,
    opts: &TextureOptions,
) -> Result<TextureFeatures<T>> {
    let mut sum = [T::zero(); 4];
    for d in Direction::ALL {
        let f = haralick(
            &Glcm::<T>::build(img, opts.levels, d)?,
            opts.inverse_difference,
        );
        for (s, v) in sum.iter_mut().zip(f.values()) {
            *s += v;
        }
    }
    let k = T::of(4.0);
    Ok(TextureFeatures {
        contrast: sum[0] / k,
        entropy: sum[1] / k,
        correlation: sum[2] / k,
        inverse_difference_moments: sum[3] / k,
    })
}
