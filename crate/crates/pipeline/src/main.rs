use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leafmorph::contour::best_contour;
use leafmorph::imgproc::{BinaryImage, ColorImage, GrayImage};
use leafmorph::leaf::{features_from_parts, preprocess};
use leafmorph::projection::{ProjectionKind, Scaling};
use leafmorph_pipeline::config::WORKERS_ENV;
use leafmorph_pipeline::table::{read_features_csv, write_failures_json, write_features_csv};
use leafmorph_pipeline::{
    extract_features, ingest_dataset, load_image, project_and_plot, synth, LabelColumn,
    PipelineError, ProjectRequest, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "leafmorph",
    version,
    about = "Interpretable leaf-image features and projections"
)]
struct Cli {
    /// Optional `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run preprocessing on one image and save every intermediate stage.
    Process {
        image: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Extract features for a directory of images.
    Features {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Fit PCA or LDA on a feature table and write scores, model and plot.
    Project {
        features: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Pca)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = LabelArg::Shape)]
        label: LabelArg,
        #[arg(short)]
        k: Option<usize>,
        /// Centre columns without scaling them to unit variance.
        #[arg(long)]
        no_scale: bool,
        /// Defaults to the directory holding the feature table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the features of one image as JSON.
    Inspect {
        image: PathBuf,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Write the bundled synthetic corpus and its labels file.
    Synth {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Default)]
struct ExtractArgs {
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    /// Gaussian kernel size (odd).
    #[arg(long)]
    kernel: Option<usize>,
    /// Gray levels of the co-occurrence matrix.
    #[arg(long)]
    levels: Option<usize>,
    /// Initial hexagon count across the unit square.
    #[arg(long)]
    hex_bins: Option<usize>,
    #[arg(long)]
    max_cells: Option<usize>,
    /// Alpha-hull radius in normalized units.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    rectangularity_as_printed: bool,
    #[arg(long)]
    idm_as_printed: bool,
    #[arg(long)]
    color_unmasked: bool,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Pca,
    Lda,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelArg {
    Shape,
    Species,
}

fn resolve_config(file: Option<&Path>, args: &ExtractArgs) -> Result<RunConfig, PipelineError> {
    let mut c = RunConfig::default();
    if let Some(path) = file {
        c.merge_file(path)?;
    }
    c.merge_worker_env(std::env::var(WORKERS_ENV).ok().as_deref())?;
    let set = |slot: &mut usize, v: Option<usize>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut c.width, args.width);
    set(&mut c.height, args.height);
    set(&mut c.kernel, args.kernel);
    set(&mut c.levels, args.levels);
    set(&mut c.hex_bins, args.hex_bins);
    set(&mut c.max_cells, args.max_cells);
    c.alpha = args.alpha.or(c.alpha);
    c.workers = args.workers.or(c.workers);
    c.rectangularity_as_printed |= args.rectangularity_as_printed;
    c.idm_as_printed |= args.idm_as_printed;
    c.color_unmasked |= args.color_unmasked;
    c.validate()?;
    Ok(c)
}

fn save_gray(img: &GrayImage, path: &Path) -> Result<(), PipelineError> {
    image::GrayImage::from_raw(
        img.width() as u32,
        img.height() as u32,
        img.pixels().to_vec(),
    )
    .expect("buffer matches dimensions")
    .save(path)
    .map_err(|source| PipelineError::Image {
        path: path.to_path_buf(),
        source,
    })
}

fn save_color(img: &ColorImage, path: &Path) -> Result<(), PipelineError> {
    let raw: Vec<u8> = (0..img.height())
        .flat_map(|y| (0..img.width()).map(move |x| (x, y)))
        .flat_map(|(x, y)| img.rgb(x, y))
        .collect();
    image::RgbImage::from_raw(img.width() as u32, img.height() as u32, raw)
        .expect("buffer matches dimensions")
        .save(path)
        .map_err(|source| PipelineError::Image {
            path: path.to_path_buf(),
            source,
        })
}

fn save_binary(img: &BinaryImage, path: &Path) -> Result<(), PipelineError> {
    save_gray(&img.to_gray(), path)
}

fn run_process(image: &Path, out: &Path, config: &RunConfig) -> Result<(), PipelineError> {
    std::fs::create_dir_all(out).map_err(PipelineError::io(out))?;
    let pre = preprocess(&load_image(image)?, &config.leaf_options())?;
    save_color(&pre.rgb, &out.join("01_rgb.png"))?;
    save_gray(&pre.gray, &out.join("02_gray.png"))?;
    save_gray(&pre.blurred, &out.join("03_blurred.png"))?;
    save_binary(&pre.binary, &out.join("04_binary.png"))?;
    save_binary(&pre.stalk_removed, &out.join("05_stalk_removed.png"))?;
    save_binary(&pre.closed, &out.join("06_closed.png"))?;
    save_binary(&pre.mask, &out.join("07_resized_mask.png"))?;
    let contour = best_contour(&pre.mask)?;
    let mut overlay = image::RgbImage::from_fn(
        pre.color.width() as u32,
        pre.color.height() as u32,
        |x, y| image::Rgb(pre.color.rgb(x as usize, y as usize)),
    );
    for p in contour.points() {
        overlay.put_pixel(p.x as u32, p.y as u32, image::Rgb([255, 0, 0]));
    }
    let path = out.join("08_contour.png");
    overlay
        .save(&path)
        .map_err(|source| PipelineError::Image { path, source })?;
    println!(
        "otsu threshold {}; contour points {}",
        pre.threshold,
        contour.len()
    );
    Ok(())
}

fn run_inspect(image: &Path, config: &RunConfig) -> Result<(), PipelineError> {
    let opts = config.leaf_options();
    let pre = preprocess(&load_image(image)?, &opts)?;
    let contour = best_contour(&pre.mask)?;
    let fv = features_from_parts(&contour, &pre.gray_resized, &pre.color, &pre.mask, &opts)?;
    let mut map = serde_json::Map::new();
    for (name, v) in fv.iter() {
        map.insert(name.to_string(), serde_json::json!(v));
    }
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(&map)?
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    let file = cli.config.as_deref();
    match cli.command {
        Command::Process {
            image,
            out,
            extract,
        } => run_process(&image, &out, &resolve_config(file, &extract)?),
        Command::Inspect { image, extract } => {
            run_inspect(&image, &resolve_config(file, &extract)?)
        }
        Command::Features {
            input,
            labels,
            out,
            extract,
        } => {
            let mut config = resolve_config(file, &extract)?;
            if let Some(out) = out {
                config.out_dir = out;
            }
            let manifest = ingest_dataset(&input, labels.as_deref())?;
            let result = extract_features(&manifest, &config)?;
            let dir = &config.out_dir;
            std::fs::create_dir_all(dir).map_err(PipelineError::io(dir))?;
            write_features_csv(&dir.join("features.csv"), &result.rows)?;
            write_failures_json(&dir.join("failures.json"), &result.failures)?;
            println!(
                "{} rows written to {}; {} failures",
                result.rows.len(),
                dir.join("features.csv").display(),
                result.failures.len()
            );
            Ok(())
        }
        Command::Project {
            features,
            kind,
            label,
            k,
            no_scale,
            out,
        } => {
            let mut scale_off = no_scale;
            if let Some(path) = file {
                let mut c = RunConfig::default();
                c.merge_file(path)?;
                scale_off |= c.no_scale;
            }
            let rows = read_features_csv(&features)?;
            let req = ProjectRequest {
                kind: match kind {
                    KindArg::Pca => ProjectionKind::Pca,
                    KindArg::Lda => ProjectionKind::Lda,
                },
                label: match label {
                    LabelArg::Shape => LabelColumn::Shape,
                    LabelArg::Species => LabelColumn::Species,
                },
                k,
                scaling: if scale_off {
                    Scaling::CenterOnly
                } else {
                    Scaling::Standardize
                },
            };
            let dir =
                out.unwrap_or_else(|| features.parent().map(Path::to_path_buf).unwrap_or_default());
            let o = project_and_plot(&rows, &req, &dir)?;
            let cumulative: f64 = o.explained.iter().sum();
            println!("{} axes; cumulative share {cumulative:.4}", o.axes);
            println!(
                "{}\n{}\n{}",
                o.scores.display(),
                o.model.display(),
                o.plot.display()
            );
            Ok(())
        }
        Command::Synth { out } => {
            let entries = synth::write_corpus(&out)?;
            println!("{} images written to {}", entries.len(), out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                PipelineError::Config(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
