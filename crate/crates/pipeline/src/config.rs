//! Run configuration: defaults, `key = value` files, the `LEAF_WORKERS`
//! variable and conversion into extraction options.

use std::fs;
use std::path::{Path, PathBuf};

use leafmorph::color::{ColorOptions, DeviationReference};
use leafmorph::imgproc::DEFAULT_SIZE;
use leafmorph::scagnostics::{BinOptions, ScagOptions};
use leafmorph::shape::{Rectangularity, ShapeOptions};
use leafmorph::texture::{InverseDifference, TextureOptions};
use leafmorph::LeafOptions;

use crate::error::{PipelineError, Result};

pub const WORKERS_ENV: &str = "LEAF_WORKERS";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub width: usize,
    pub height: usize,
    pub kernel: usize,
    pub levels: usize,
    pub hex_bins: usize,
    pub max_cells: usize,
    pub alpha: Option<f64>,
    pub rectangularity_as_printed: bool,
    pub idm_as_printed: bool,
    pub color_unmasked: bool,
    pub no_scale: bool,
    /// `None` lets rayon pick.
    pub workers: Option<usize>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            width: DEFAULT_SIZE.0,
            height: DEFAULT_SIZE.1,
            kernel: 55,
            levels: 8,
            hex_bins: 40,
            max_cells: 250,
            alpha: None,
            rectangularity_as_printed: false,
            idm_as_printed: false,
            color_unmasked: false,
            no_scale: false,
            workers: None,
            out_dir: PathBuf::from("run"),
        }
    }
}

fn parse<V: std::str::FromStr>(key: &str, value: &str) -> Result<V> {
    value
        .parse()
        .map_err(|_| PipelineError::Config(format!("bad value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(PipelineError::Config(format!(
            "bad value {value:?} for {key}"
        ))),
    }
}

impl RunConfig {
    /// Sets one field from its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "width" => self.width = parse(key, value)?,
            "height" => self.height = parse(key, value)?,
            "kernel" => self.kernel = parse(key, value)?,
            "levels" => self.levels = parse(key, value)?,
            "hex_bins" => self.hex_bins = parse(key, value)?,
            "max_cells" => self.max_cells = parse(key, value)?,
            "alpha" => self.alpha = Some(parse(key, value)?),
            "rectangularity_as_printed" => self.rectangularity_as_printed = parse_bool(key, value)?,
            "idm_as_printed" => self.idm_as_printed = parse_bool(key, value)?,
            "color_unmasked" => self.color_unmasked = parse_bool(key, value)?,
            "no_scale" => self.no_scale = parse_bool(key, value)?,
            "workers" => self.workers = Some(parse(key, value)?),
            "out" => self.out_dir = PathBuf::from(value),
            _ => return Err(PipelineError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are ignored.
    pub fn merge_str(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                PipelineError::Config(format!("line {}: expected key = value", n + 1))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(PipelineError::io(path))?;
        self.merge_str(&text)
    }

    /// Applies the value of `LEAF_WORKERS`, if set and non-empty.
    pub fn merge_worker_env(&mut self, value: Option<&str>) -> Result<()> {
        match value.map(str::trim) {
            Some(v) if !v.is_empty() => self.set("workers", v),
            _ => Ok(()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("width", self.width),
            ("height", self.height),
            ("kernel", self.kernel),
            ("levels", self.levels),
            ("hex_bins", self.hex_bins),
            ("max_cells", self.max_cells),
            ("workers", self.workers.unwrap_or(1)),
        ];
        if let Some((key, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(PipelineError::Config(format!("{key} must be positive")));
        }
        if self.kernel.is_multiple_of(2) {
            return Err(PipelineError::Config("kernel must be odd".into()));
        }
        if self.levels < 2 || self.levels > 256 {
            return Err(PipelineError::Config("levels must lie in 2..=256".into()));
        }
        if matches!(self.alpha, Some(a) if !(a > 0.0)) {
            return Err(PipelineError::Config("alpha must be positive".into()));
        }
        Ok(())
    }

    pub fn leaf_options(&self) -> LeafOptions<f64> {
        LeafOptions {
            resize: Some((self.width, self.height)),
            blur_kernel: self.kernel,
            shape: ShapeOptions {
                rectangularity: if self.rectangularity_as_printed {
                    Rectangularity::AsPrinted
                } else {
                    Rectangularity::AreaOverBox
                },
            },
            texture: TextureOptions {
                levels: self.levels,
                inverse_difference: if self.idm_as_printed {
                    InverseDifference::AsPrinted
                } else {
                    InverseDifference::Homogeneity
                },
            },
            color: ColorOptions {
                masked: !self.color_unmasked,
                reference: DeviationReference::default(),
            },
            scagnostics: ScagOptions {
                bins: BinOptions {
                    initial_bins: self.hex_bins,
                    max_cells: self.max_cells,
                },
                alpha: self.alpha,
            },
            ..LeafOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_env_and_validation() {
        let mut c = RunConfig::default();
        c.merge_str(
            "# comment\nkernel = 7\n\nworkers=3\nalpha = 0.2 # trailing\nidm_as_printed = yes\n",
        )
        .unwrap();
        assert_eq!(
            (c.kernel, c.workers, c.alpha, c.idm_as_printed),
            (7, Some(3), Some(0.2), true)
        );
        c.merge_worker_env(Some("5")).unwrap();
        assert_eq!(c.workers, Some(5));
        c.merge_worker_env(Some("")).unwrap();
        assert_eq!(c.workers, Some(5));
        assert!(c.validate().is_ok());
        c.kernel = 8;
        assert!(c.validate().is_err());
        assert!(RunConfig::default().merge_str("bogus = 1").is_err());
        assert!(RunConfig::default().merge_str("kernel").is_err());
        assert!(RunConfig::default().merge_worker_env(Some("x")).is_err());
    }
}
