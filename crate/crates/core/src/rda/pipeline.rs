//! The four-stage Range Doppler pipeline and its driver.

use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::azimuth::{
    azimuth_compress_fused_in, azimuth_compress_unfused_in, azimuth_fft, azimuth_fft_in,
    AzimuthFilterBank,
};
use super::ledger::{
    StageTiming, TrafficLedger, AZIMUTH_COMPRESSION, AZIMUTH_FFT, RANGE_COMPRESSION, RCMC,
};
use super::lines::Workspace;
use super::range::{range_compress_fused, range_compress_fused_in, range_compress_unfused_in};
use super::rcmc::{
    rcmc_apply, rcmc_apply_in, RcmcParams, DEFAULT_MAX_SHIFT_CELLS, DEFAULT_RCMC_TAPS,
};
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};
use crate::fft::{FftFamily, FftPlan};
use crate::sim::{make_range_filter, MatchedFilter, SarGeometry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PipelineMode {
    Fused,
    Unfused,
}

impl PipelineMode {
    pub const BOTH: [PipelineMode; 2] = [PipelineMode::Fused, PipelineMode::Unfused];

    pub fn name(self) -> &'static str {
        match self {
            PipelineMode::Fused => "fused",
            PipelineMode::Unfused => "unfused",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::BOTH.into_iter().find(|m| m.name() == s)
    }
}

impl std::fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Which azimuth matched filter each range bin gets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AzimuthFilterMode {
    /// `K_a` evaluated at each bin's own slant range.
    #[default]
    PerRangeBin,
    /// One filter at the reference range.
    Shared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub mode: PipelineMode,
    /// `None` picks a Stockham kernel per line length.
    pub family: Option<FftFamily>,
    /// `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub rcmc_taps: usize,
    pub rcmc_max_shift_cells: f64,
    pub azimuth_filter: AzimuthFilterMode,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            mode: PipelineMode::Fused,
            family: None,
            workers: None,
            rcmc_taps: DEFAULT_RCMC_TAPS,
            rcmc_max_shift_cells: DEFAULT_MAX_SHIFT_CELLS,
            azimuth_filter: AzimuthFilterMode::PerRangeBin,
        }
    }
}

impl PipelineOptions {
    pub fn with_mode(mode: PipelineMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

/// Everything precomputed for a given scene shape: plans, filters, and a
/// workspace reused from run to run.
#[derive(Debug)]
pub struct Pipeline {
    n_a: usize,
    n_r: usize,
    range_plan: FftPlan,
    azimuth_plan: FftPlan,
    range_filter: MatchedFilter,
    bank: AzimuthFilterBank,
    rcmc: RcmcParams,
    options: PipelineOptions,
    workspace: Mutex<Option<Workspace>>,
}

impl Clone for Pipeline {
    fn clone(&self) -> Self {
        Self {
            n_a: self.n_a,
            n_r: self.n_r,
            range_plan: self.range_plan.clone(),
            azimuth_plan: self.azimuth_plan.clone(),
            range_filter: self.range_filter.clone(),
            bank: self.bank.clone(),
            rcmc: self.rcmc.clone(),
            options: self.options.clone(),
            workspace: Mutex::new(None),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub image: SceneMatrix,
    pub ledger: TrafficLedger,
    pub timings: Vec<StageTiming>,
}

impl PipelineOutput {
    pub fn total_millis(&self) -> f64 {
        self.timings.iter().map(|t| t.millis).sum()
    }
}

fn pick_family(family: Option<FftFamily>, n: usize) -> Result<FftFamily> {
    match family {
        Some(f) => Ok(f),
        None => FftFamily::stockham_for(n).ok_or(Error::UnsupportedLength {
            n,
            family: "stockham",
        }),
    }
}

impl Pipeline {
    pub fn new(
        geom: &SarGeometry,
        n_a: usize,
        n_r: usize,
        options: PipelineOptions,
    ) -> Result<Self> {
        geom.validate()?;
        if !n_a.is_power_of_two() || !n_r.is_power_of_two() {
            return Err(Error::NotPowerOfTwo {
                rows: n_a,
                cols: n_r,
            });
        }
        let range_plan = FftPlan::new(n_r, pick_family(options.family, n_r)?)?;
        let azimuth_plan = FftPlan::new(n_a, pick_family(options.family, n_a)?)?;
        let range_filter = make_range_filter(geom, n_r, &range_plan)?;
        let bank = match options.azimuth_filter {
            AzimuthFilterMode::PerRangeBin => AzimuthFilterBank::per_range_bin(geom, n_a, n_r)?,
            AzimuthFilterMode::Shared => AzimuthFilterBank::shared(geom, n_a)?,
        };
        let rcmc = RcmcParams::new(
            geom,
            n_a,
            n_r,
            options.rcmc_taps,
            options.rcmc_max_shift_cells,
        )?;
        Ok(Self {
            n_a,
            n_r,
            range_plan,
            azimuth_plan,
            range_filter,
            bank,
            rcmc,
            options,
            workspace: Mutex::new(None),
        })
    }

    pub fn options(&self) -> &PipelineOptions {
        &self.options
    }

    pub fn mode(&self) -> PipelineMode {
        self.options.mode
    }

    /// Same precomputed state, different executor.
    pub fn with_mode(&self, mode: PipelineMode) -> Self {
        let mut p = self.clone();
        p.options.mode = mode;
        p
    }

    pub fn run(&self, scene: &SceneMatrix) -> Result<PipelineOutput> {
        match self.options.workers {
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| Error::InvalidGeometry(format!("thread pool: {e}")))?;
                pool.install(|| self.run_here(scene))
            }
            None => self.run_here(scene),
        }
    }

    fn run_here(&self, scene: &SceneMatrix) -> Result<PipelineOutput> {
        if scene.rows() != self.n_a || scene.cols() != self.n_r {
            return Err(Error::DimensionMismatch(
                self.n_a,
                self.n_r,
                scene.rows(),
                scene.cols(),
            ));
        }
        let fused = self.options.mode == PipelineMode::Fused;
        // a concurrent run on the same pipeline just gets a fresh workspace
        let mut ws = self
            .workspace
            .try_lock()
            .ok()
            .and_then(|mut w| w.take())
            .unwrap_or_default();
        let mut ledger = TrafficLedger::new();
        let mut timings = Vec::with_capacity(4);
        let mut timed = |stage: &str, t: Instant| {
            timings.push(StageTiming {
                stage: stage.to_owned(),
                millis: t.elapsed().as_secs_f64() * 1e3,
            })
        };

        let t = Instant::now();
        if fused {
            range_compress_fused_in(
                scene,
                &self.range_filter,
                &self.range_plan,
                &mut ledger,
                &mut ws,
            )?;
        } else {
            range_compress_unfused_in(
                scene,
                &self.range_filter,
                &self.range_plan,
                &mut ledger,
                &mut ws,
            )?;
        }
        timed(RANGE_COMPRESSION, t);

        let t = Instant::now();
        azimuth_fft_in(&mut ws, &self.azimuth_plan, &mut ledger)?;
        timed(AZIMUTH_FFT, t);

        let t = Instant::now();
        rcmc_apply_in(&mut ws, &self.rcmc, &mut ledger)?;
        timed(RCMC, t);

        let t = Instant::now();
        if fused {
            azimuth_compress_fused_in(&mut ws, &self.bank, &self.azimuth_plan, &mut ledger)?;
        } else {
            azimuth_compress_unfused_in(&mut ws, &self.bank, &self.azimuth_plan, &mut ledger)?;
        }
        timed(AZIMUTH_COMPRESSION, t);

        let image = ws.take_current();
        if let Ok(mut w) = self.workspace.try_lock() {
            *w = Some(ws);
        }
        Ok(PipelineOutput {
            image,
            ledger,
            timings,
        })
    }

    /// Range-compressed and range-Doppler intermediates, for inspection.
    pub fn range_doppler(&self, scene: &SceneMatrix) -> Result<(SceneMatrix, SceneMatrix)> {
        let mut ledger = TrafficLedger::new();
        let rc = range_compress_fused(scene, &self.range_filter, &self.range_plan, &mut ledger)?;
        let rd = azimuth_fft(&rc, &self.azimuth_plan, &mut ledger)?;
        Ok((rc, rd))
    }

    /// Range-Doppler scene after RCMC.
    pub fn corrected(&self, scene: &SceneMatrix) -> Result<SceneMatrix> {
        let (_, rd) = self.range_doppler(scene)?;
        rcmc_apply(&rd, &self.rcmc, &mut TrafficLedger::new())
    }
}

/// Build and run in one go.
pub fn run_pipeline(
    geom: &SarGeometry,
    scene: &SceneMatrix,
    options: &PipelineOptions,
) -> Result<PipelineOutput> {
    Pipeline::new(geom, scene.rows(), scene.cols(), options.clone())?.run(scene)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub mode: PipelineMode,
    pub rows: usize,
    pub cols: usize,
    pub reps: usize,
    pub samples_ms: Vec<f64>,
    pub median_ms: f64,
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// One discarded warm-up run, then `reps` timed runs.
pub fn benchmark_pipeline(
    pipeline: &Pipeline,
    scene: &SceneMatrix,
    reps: usize,
) -> Result<BenchSummary> {
    let reps = reps.max(1);
    pipeline.run(scene)?;
    let mut samples_ms = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        let out = pipeline.run(scene)?;
        samples_ms.push(t.elapsed().as_secs_f64() * 1e3);
        drop(out);
    }
    Ok(BenchSummary {
        mode: pipeline.mode(),
        rows: scene.rows(),
        cols: scene.cols(),
        reps,
        median_ms: median(&samples_ms),
        samples_ms,
    })
}

/// Benchmark both executors on one scene, alternating runs so that drift in
/// machine load hits both alike. One discarded warm-up run each.
pub fn benchmark_modes(
    pipeline: &Pipeline,
    scene: &SceneMatrix,
    reps: usize,
) -> Result<[BenchSummary; 2]> {
    let reps = reps.max(1);
    let pipes = PipelineMode::BOTH.map(|m| pipeline.with_mode(m));
    for p in &pipes {
        p.run(scene)?;
    }
    let mut samples = [Vec::with_capacity(reps), Vec::with_capacity(reps)];
    for _ in 0..reps {
        for (p, s) in pipes.iter().zip(samples.iter_mut()) {
            let t = Instant::now();
            let out = p.run(scene)?;
            s.push(t.elapsed().as_secs_f64() * 1e3);
            drop(out);
        }
    }
    let [f, u] = samples;
    let summary = |mode, samples_ms: Vec<f64>| BenchSummary {
        mode,
        rows: scene.rows(),
        cols: scene.cols(),
        reps,
        median_ms: median(&samples_ms),
        samples_ms,
    };
    Ok([
        summary(PipelineMode::Fused, f),
        summary(PipelineMode::Unfused, u),
    ])
}
