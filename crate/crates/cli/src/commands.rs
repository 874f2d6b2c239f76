use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use sarfuse_core::buffer::{read_scene, write_scene};
use sarfuse_core::quality::{QualityOptions, QualityReport};
use sarfuse_core::rda::{
    benchmark_modes, median, Pipeline, PipelineOutput, StageRecord, RANGE_COMPRESSION,
};
use sarfuse_core::sim::{default_targets, simulate_scene};
use sarfuse_core::{FftFamily, FftPlan, Layout, PipelineMode, SarGeometry, SceneMatrix};

use crate::config::RunConfig;

pub const SCENE_FILE: &str = "scene.sarc";
pub const CONFIG_FILE: &str = "config.toml";
pub const BENCH_FILE: &str = "bench.csv";
pub const BENCH_HEADER: &str = "n,family,us_per_fft,ffts_per_sec";

pub fn image_file(mode: PipelineMode) -> String {
    format!("image_{mode}.sarc")
}

pub fn ledger_file(mode: PipelineMode) -> String {
    format!("ledger_{mode}.json")
}

pub fn timings_file(mode: PipelineMode) -> String {
    format!("timings_{mode}.json")
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn expected_pixels(geom: &SarGeometry, n_a: usize, n_r: usize) -> Vec<(usize, usize)> {
    default_targets(geom, n_a, n_r)
        .iter()
        .map(|t| t.expected_pixel(geom, n_a, n_r))
        .collect()
}

fn summarise(geom: &SarGeometry, n_a: usize, n_r: usize) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scene {n_a} x {n_r}");
    let _ = writeln!(
        s,
        "B = {} MHz, f_c = {} GHz, v = {} m/s, R0 = {} km",
        geom.bandwidth_hz / 1e6,
        geom.carrier_hz / 1e9,
        geom.velocity_mps,
        geom.range0_m / 1e3
    );
    let _ = writeln!(
        s,
        "T_p = {} us ({} samples), f_s = {} MHz, PRF = {} Hz, B_a = {} Hz",
        geom.pulse_dur_s * 1e6,
        geom.pulse_samples(),
        geom.sample_rate_hz / 1e6,
        geom.prf_hz,
        geom.doppler_bandwidth_hz
    );
    let _ = write!(
        s,
        "range cell {:.4} m, azimuth cell {:.4} m",
        geom.range_cell_m(),
        geom.azimuth_cell_m()
    );
    s
}

pub fn simulate(cfg: &RunConfig) -> Result<PathBuf> {
    let (n_a, n_r) = cfg.dims();
    let geom = cfg.geometry(n_a, n_r)?;
    let targets = default_targets(&geom, n_a, n_r);
    let scene = simulate_scene(&geom, &targets, n_a, n_r, cfg.snr_db, cfg.seed)?;
    let path = cfg.out.join(SCENE_FILE);
    write_scene(&path, &scene, Layout::Interleaved)?;
    std::fs::write(cfg.out.join(CONFIG_FILE), cfg.to_toml()?)?;
    println!("{}", summarise(&geom, n_a, n_r));
    println!(
        "{} targets, snr {} dB, seed {}",
        targets.len(),
        cfg.snr_db,
        cfg.seed
    );
    println!("wrote {}", path.display());
    Ok(path)
}

#[derive(Serialize)]
struct LedgerExport<'a> {
    mode: PipelineMode,
    rows: usize,
    cols: usize,
    range_compression_transfers_per_line: f64,
    stages: Vec<StageRecord>,
    entries: &'a [sarfuse_core::rda::LedgerEntry],
}

#[derive(Serialize)]
struct TimingExport {
    mode: PipelineMode,
    total_ms: f64,
    stages: Vec<StageRecord>,
}

#[derive(Serialize)]
struct Comparison {
    l2_relative_error: f64,
    max_abs_error: f64,
    fused_total_bytes: u64,
    unfused_total_bytes: u64,
}

fn export(
    cfg: &RunConfig,
    mode: PipelineMode,
    scene: &SceneMatrix,
    out: &PipelineOutput,
) -> Result<()> {
    write_scene(
        cfg.out.join(image_file(mode)),
        &out.image,
        Layout::Interleaved,
    )?;
    // no timings here, so the ledger file is reproducible byte for byte
    let ledger = LedgerExport {
        mode,
        rows: scene.rows(),
        cols: scene.cols(),
        range_compression_transfers_per_line: out.ledger.compute_transfers(RANGE_COMPRESSION)
            as f64
            / scene.rows() as f64,
        stages: out.ledger.stage_records(&[]),
        entries: out.ledger.entries(),
    };
    write_json(&cfg.out.join(ledger_file(mode)), &ledger)?;
    let timings = TimingExport {
        mode,
        total_ms: out.total_millis(),
        stages: out.ledger.stage_records(&out.timings),
    };
    write_json(&cfg.out.join(timings_file(mode)), &timings)
}

pub fn process(cfg: &RunConfig, scene_path: &Path) -> Result<Vec<(PipelineMode, PipelineOutput)>> {
    let (scene, _) =
        read_scene(scene_path).with_context(|| format!("reading {}", scene_path.display()))?;
    let geom = cfg.geometry(scene.rows(), scene.cols())?;
    let modes = cfg.mode.modes();
    let pipeline = Pipeline::new(
        &geom,
        scene.rows(),
        scene.cols(),
        cfg.pipeline_options(modes[0]),
    )?;
    let mut outputs = Vec::new();
    for mode in modes {
        let out = pipeline.with_mode(mode).run(&scene)?;
        export(cfg, mode, &scene, &out)?;
        println!(
            "{mode:>8}: {:.1} ms, range compression {} transfers/line, {} bytes moved",
            out.total_millis(),
            out.ledger.compute_transfers(RANGE_COMPRESSION) / scene.rows() as u64,
            out.ledger.total_bytes()
        );
        for t in &out.timings {
            println!("          {:<20} {:>9.2} ms", t.stage, t.millis);
        }
        outputs.push((mode, out));
    }
    if let [(_, a), (_, b)] = outputs.as_slice() {
        let cmp = Comparison {
            l2_relative_error: sarfuse_core::quality::l2_relative_error(&a.image, &b.image)?,
            max_abs_error: sarfuse_core::quality::max_abs_error(&a.image, &b.image)?,
            fused_total_bytes: a.ledger.total_bytes(),
            unfused_total_bytes: b.ledger.total_bytes(),
        };
        println!(
            "comparison: L2 relative error {:.3e}, max abs error {:.3e}",
            cmp.l2_relative_error, cmp.max_abs_error
        );
        write_json(&cfg.out.join("comparison.json"), &cmp)?;
    }
    Ok(outputs)
}

/// Median microseconds per transform for one plan.
fn time_fft(plan: &FftPlan, reps: usize) -> Result<f64> {
    let n = plan.len();
    let batch = (1 << 18) / n + 1;
    let mut line: Vec<_> = (0..n)
        .map(|k| sarfuse_core::ComplexF32::new((k % 7) as f32 - 3.0, (k % 5) as f32 - 2.0))
        .collect();
    let mut out = line.clone();
    let mut scratch = plan.scratch();
    plan.forward_into(&line, &mut out, &mut scratch)?;
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        for _ in 0..batch {
            plan.forward_into(&line, &mut out, &mut scratch)?;
            std::mem::swap(&mut line, &mut out);
        }
        samples.push(t.elapsed().as_secs_f64() * 1e6 / batch as f64);
        // keep magnitudes bounded between reps
        let s = 1.0 / (n as f32);
        line.iter_mut().for_each(|v| *v *= s);
    }
    Ok(median(&samples))
}

pub fn bench(cfg: &RunConfig, pipeline: bool) -> Result<()> {
    if cfg.bench_sizes.is_empty() {
        bail!("no bench sizes");
    }
    let mut csv = String::from(BENCH_HEADER);
    csv.push('\n');
    for &n in &cfg.bench_sizes {
        let families = FftFamily::ALL
            .into_iter()
            .filter(|f| f.supports(n) && cfg.family.is_none_or(|g| g == *f));
        for family in families {
            let us = time_fft(&FftPlan::new(n, family)?, cfg.reps)?;
            let _ = writeln!(csv, "{n},{family},{us},{}", 1e6 / us);
        }
    }
    let path = cfg.out.join(BENCH_FILE);
    std::fs::write(&path, &csv)?;
    print!("{csv}");
    if pipeline {
        let (n_a, n_r) = cfg.dims();
        let geom = cfg.geometry(n_a, n_r)?;
        let scene = simulate_scene(
            &geom,
            &default_targets(&geom, n_a, n_r),
            n_a,
            n_r,
            cfg.snr_db,
            cfg.seed,
        )?;
        let p = Pipeline::new(&geom, n_a, n_r, cfg.pipeline_options(PipelineMode::Fused))?;
        let summaries = benchmark_modes(&p, &scene, cfg.reps)?;
        for s in &summaries {
            println!(
                "{:>8} pipeline {n_a}x{n_r}: median {:.2} ms over {} reps",
                s.mode, s.median_ms, s.reps
            );
        }
        write_json(&cfg.out.join("bench_pipeline.json"), &summaries)?;
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn parse_targets(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (r, c) = p
                .split_once(',')
                .with_context(|| format!("target {p:?} is not r,c"))?;
            Ok((r.trim().parse()?, c.trim().parse()?))
        })
        .collect()
}

pub fn quality(
    cfg: &RunConfig,
    image: &Path,
    reference: &Path,
    targets: Option<&str>,
) -> Result<QualityReport> {
    let (a, _) = read_scene(image).with_context(|| format!("reading {}", image.display()))?;
    let (b, _) =
        read_scene(reference).with_context(|| format!("reading {}", reference.display()))?;
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        bail!(
            "image is {}x{} but reference is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        );
    }
    let expected = match targets {
        Some(t) => parse_targets(t)?,
        None => expected_pixels(&cfg.geometry(a.rows(), a.cols())?, a.rows(), a.cols()),
    };
    let report = QualityReport::compare(&a, &b, &expected, &QualityOptions::default())?;
    print!("{}", report.render_table("image", "reference"));
    write_json(&cfg.out.join("quality.json"), &report)?;
    Ok(report)
}

pub fn compare(cfg: &RunConfig) -> Result<()> {
    let mut cfg = cfg.clone();
    cfg.mode = crate::config::ModeSelect::Both;
    let scene = simulate(&cfg)?;
    process(&cfg, &scene)?;
    quality(
        &cfg,
        &cfg.out.join(image_file(PipelineMode::Fused)),
        &cfg.out.join(image_file(PipelineMode::Unfused)),
        None,
    )?;
    Ok(())
}
