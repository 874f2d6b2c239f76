use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sarfuse_core::FftFamily;

mod commands;
mod config;

use config::{parse_dims, ModeSelect, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "sarfuse",
    version,
    about = "Fused Range Doppler SAR processing"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeSelect>,
    /// Scene size as RxC (azimuth lines x range samples).
    #[arg(long, global = true, value_parser = parse_dims)]
    dims: Option<(usize, usize)>,
    /// 4096x4096 with the reference geometry.
    #[arg(long, global = true)]
    full_scale: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Noise level in dB; `inf` for a noiseless scene.
    #[arg(long, global = true)]
    snr_db: Option<f64>,
    #[arg(long, global = true)]
    reps: Option<usize>,
    #[arg(long, global = true, env = "RDA_FUSE_WORKERS")]
    workers: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// FFT family: stockham-r4, stockham-r8 or ct-dif-r8.
    #[arg(long, global = true, value_parser = parse_family)]
    family: Option<FftFamily>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a point-target scene into <out>/scene.sarc.
    Simulate,
    /// Focus a scene with one or both executors.
    Process {
        /// Defaults to <out>/scene.sarc.
        #[arg(long)]
        scene: Option<PathBuf>,
    },
    /// Time every FFT family at each configured size; writes <out>/bench.csv.
    Bench {
        /// Comma-separated transform lengths.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Also time the full pipeline in both modes.
        #[arg(long)]
        pipeline: bool,
    },
    /// Compare two focused images; writes <out>/quality.json.
    Quality {
        /// Image under test.
        image: PathBuf,
        /// Reference image.
        reference: PathBuf,
        /// Expected target pixels as `r,c;r,c`. Defaults to the simulated set.
        #[arg(long)]
        targets: Option<String>,
    },
    /// Simulate, process in both modes and compare.
    Compare,
}

fn parse_family(s: &str) -> Result<FftFamily, String> {
    FftFamily::from_name(s).ok_or_else(|| format!("unknown FFT family {s:?}"))
}

fn resolve(common: &Common) -> anyhow::Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(m) = common.mode {
        cfg.mode = m;
    }
    if let Some((r, c)) = common.dims {
        cfg.rows = r;
        cfg.cols = c;
    }
    cfg.full_scale |= common.full_scale;
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    if let Some(s) = common.snr_db {
        cfg.snr_db = s;
    }
    if let Some(r) = common.reps {
        cfg.reps = r;
    }
    if common.workers.is_some() {
        cfg.workers = common.workers;
    }
    if let Some(o) = &common.out {
        cfg.out = o.clone();
    }
    if common.family.is_some() {
        cfg.family = common.family;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = resolve(&cli.common)?;
    std::fs::create_dir_all(&cfg.out)?;
    match cli.command {
        Command::Simulate => commands::simulate(&cfg).map(|_| ()),
        Command::Process { scene } => {
            let path = scene.unwrap_or_else(|| cfg.out.join(commands::SCENE_FILE));
            commands::process(&cfg, &path).map(|_| ())
        }
        Command::Bench { sizes, pipeline } => {
            if let Some(s) = sizes {
                cfg.bench_sizes = s;
            }
            commands::bench(&cfg, pipeline)
        }
        Command::Quality {
            image,
            reference,
            targets,
        } => commands::quality(&cfg, &image, &reference, targets.as_deref()).map(|_| ()),
        Command::Compare => commands::compare(&cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
