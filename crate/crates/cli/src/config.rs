//! Run configuration: a TOML file of `key = value` pairs, overridden by
//! command-line flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use sarfuse_core::rda::{AzimuthFilterMode, DEFAULT_MAX_SHIFT_CELLS, DEFAULT_RCMC_TAPS};
use sarfuse_core::{FftFamily, PipelineMode, PipelineOptions, SarGeometry};

pub const FULL_SCALE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeSelect {
    Fused,
    Unfused,
    Both,
}

impl ModeSelect {
    pub fn modes(self) -> Vec<PipelineMode> {
        match self {
            ModeSelect::Fused => vec![PipelineMode::Fused],
            ModeSelect::Unfused => vec![PipelineMode::Unfused],
            ModeSelect::Both => PipelineMode::BOTH.to_vec(),
        }
    }
}

/// Optional overrides on top of the geometry derived from the scene size.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity_mps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range0_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pulse_dur_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_rate_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prf_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doppler_bandwidth_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub rows: usize,
    pub cols: usize,
    /// 4096 x 4096 with the reference geometry.
    pub full_scale: bool,
    pub mode: ModeSelect,
    pub seed: u64,
    pub snr_db: f64,
    pub reps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub out: PathBuf,
    /// FFT family for the pipeline; unset picks a Stockham kernel per size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FftFamily>,
    pub bench_sizes: Vec<usize>,
    pub rcmc_taps: usize,
    pub rcmc_max_shift_cells: f64,
    pub azimuth_filter: AzimuthFilterMode,
    pub geometry: GeometryOverrides,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            rows: 512,
            cols: 512,
            full_scale: false,
            mode: ModeSelect::Both,
            seed: 7,
            snr_db: 20.0,
            reps: 5,
            workers: None,
            out: PathBuf::from("out"),
            family: None,
            bench_sizes: vec![8, 64, 512, 1024, 4096],
            rcmc_taps: DEFAULT_RCMC_TAPS,
            rcmc_max_shift_cells: DEFAULT_MAX_SHIFT_CELLS,
            azimuth_filter: AzimuthFilterMode::PerRangeBin,
            geometry: GeometryOverrides::default(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).context("parsing config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.rows.is_power_of_two() || !self.cols.is_power_of_two() {
            bail!(
                "dims must be powers of two, got {}x{}",
                self.rows,
                self.cols
            );
        }
        if self.reps == 0 {
            bail!("reps must be at least 1");
        }
        if self.workers == Some(0) {
            bail!("workers must be at least 1");
        }
        if self.snr_db.is_nan() {
            bail!("snr_db must be a number or inf");
        }
        Ok(())
    }

    /// `(rows, cols)` after the full-scale switch.
    pub fn dims(&self) -> (usize, usize) {
        if self.full_scale {
            (FULL_SCALE, FULL_SCALE)
        } else {
            (self.rows, self.cols)
        }
    }

    /// Geometry for an `n_a x n_r` scene with the overrides applied.
    pub fn geometry(&self, n_a: usize, n_r: usize) -> Result<SarGeometry> {
        let mut g = if self.full_scale && (n_a, n_r) == (FULL_SCALE, FULL_SCALE) {
            SarGeometry::default()
        } else {
            SarGeometry::for_scene(n_a, n_r)
        };
        let o = &self.geometry;
        let set = |field: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *field = v;
            }
        };
        set(&mut g.bandwidth_hz, o.bandwidth_hz);
        set(&mut g.carrier_hz, o.carrier_hz);
        set(&mut g.velocity_mps, o.velocity_mps);
        set(&mut g.range0_m, o.range0_m);
        set(&mut g.pulse_dur_s, o.pulse_dur_s);
        set(&mut g.sample_rate_hz, o.sample_rate_hz);
        set(&mut g.prf_hz, o.prf_hz);
        set(&mut g.doppler_bandwidth_hz, o.doppler_bandwidth_hz);
        g.validate()?;
        Ok(g)
    }

    pub fn pipeline_options(&self, mode: PipelineMode) -> PipelineOptions {
        PipelineOptions {
            mode,
            family: self.family,
            workers: self.workers,
            rcmc_taps: self.rcmc_taps,
            rcmc_max_shift_cells: self.rcmc_max_shift_cells,
            azimuth_filter: self.azimuth_filter,
        }
    }
}

/// `RxC`, e.g. `512x512`.
pub fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected RxC, got {s:?}"))?;
    let p = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok((p(r)?, p(c)?))
}
