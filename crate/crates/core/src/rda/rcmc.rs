//! Range cell migration correction in the range-Doppler domain.
//!
//! Row `i` of the input holds azimuth-frequency bin `i` across all range
//! bins. A target at range `R` sits `dR(f_a, R)` further out at Doppler
//! `f_a`; the correction resamples each row at `j + dR(f_a, R_j) / cell`.

use std::f64::consts::PI;

use num_complex::Complex32;

use super::ledger::{TrafficLedger, TransferCategory, RCMC};
use super::lines::{stream_rows_into, Workspace};
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};
use crate::sim::SarGeometry;

pub const DEFAULT_RCMC_TAPS: usize = 8;
pub const DEFAULT_MAX_SHIFT_CELLS: f64 = 64.0;

/// Per-row shift model: `shift(i, j) = coeff[i] * range[j]`, clamped.
#[derive(Debug, Clone)]
pub struct RcmcParams {
    kernel: SincKernel,
    max_shift_cells: f64,
    coeff: Vec<f64>,
    range_m: Vec<f64>,
}

impl RcmcParams {
    pub fn new(
        geom: &SarGeometry,
        n_a: usize,
        n_r: usize,
        taps: usize,
        max_shift_cells: f64,
    ) -> Result<Self> {
        if taps < 2 || !taps.is_multiple_of(2) {
            return Err(Error::InvalidGeometry(format!(
                "rcmc taps must be even and >= 2, got {taps}"
            )));
        }
        if !(max_shift_cells.is_finite() && max_shift_cells >= 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "bad rcmc shift clamp {max_shift_cells}"
            )));
        }
        let cell = geom.range_cell_m();
        // migration_m is linear in R, so evaluate at R = 1 for the coefficient
        let coeff = (0..n_a)
            .map(|i| geom.migration_m(geom.azimuth_frequency_hz(i, n_a), 1.0) / cell)
            .collect();
        let range_m = (0..n_r).map(|j| geom.range_of_bin(j, n_r)).collect();
        Ok(Self {
            kernel: SincKernel::new(taps),
            max_shift_cells,
            coeff,
            range_m,
        })
    }

    /// The same shift of `shift_cells` for every sample, unclamped.
    pub fn uniform(n_a: usize, n_r: usize, shift_cells: f64, taps: usize) -> Result<Self> {
        if !shift_cells.is_finite() {
            return Err(Error::InvalidGeometry(format!(
                "bad rcmc shift {shift_cells}"
            )));
        }
        Ok(Self {
            kernel: SincKernel::new(taps),
            max_shift_cells: f64::INFINITY,
            coeff: vec![shift_cells; n_a],
            range_m: vec![1.0; n_r],
        })
    }

    pub fn taps(&self) -> usize {
        self.kernel.taps()
    }

    /// Shift in range cells for frequency row `row`, range bin `bin`.
    #[inline]
    pub fn shift_cells(&self, row: usize, bin: usize) -> f64 {
        (self.coeff[row] * self.range_m[bin]).min(self.max_shift_cells)
    }

    /// Largest shift over the whole scene.
    pub fn max_shift(&self) -> f64 {
        let r = self.range_m.iter().cloned().fold(0.0, f64::max);
        self.coeff
            .iter()
            .map(|c| (c * r).min(self.max_shift_cells))
            .fold(0.0, f64::max)
    }
}

/// Fractional positions are rounded to this many phases per cell.
pub const KERNEL_PHASES: usize = 1024;

/// Hann-weighted truncated sinc with `taps` taps at offsets
/// `m = -(taps/2 - 1) ..= taps/2` from `floor(x)`, tabulated per phase with
/// the weights of each phase normalised to sum to one.
#[derive(Debug, Clone)]
pub struct SincKernel {
    half: usize,
    taps: usize,
    /// `taps` weights per phase, phases `0..=KERNEL_PHASES`.
    table: Vec<f32>,
}

fn weight(d: f64, half: f64) -> f64 {
    let sinc = if d == 0.0 {
        1.0
    } else {
        (PI * d).sin() / (PI * d)
    };
    sinc * (0.5 + 0.5 * (PI * d / half).cos())
}

impl SincKernel {
    pub fn new(taps: usize) -> Self {
        let half = (taps / 2).max(1);
        let taps = 2 * half;
        let mut table = Vec::with_capacity((KERNEL_PHASES + 1) * taps);
        for p in 0..=KERNEL_PHASES {
            let frac = p as f64 / KERNEL_PHASES as f64;
            let w: Vec<f64> = (0..taps)
                .map(|t| weight((t as f64 - (half as f64 - 1.0)) - frac, half as f64))
                .collect();
            let norm: f64 = w.iter().sum();
            table.extend(w.iter().map(|v| (v / norm) as f32));
        }
        Self { half, taps, table }
    }

    pub fn taps(&self) -> usize {
        self.taps
    }

    /// Sample `row` at fractional position `x`. Taps outside the row read
    /// zero; positions within half a phase of an integer copy that sample.
    #[inline]
    pub fn sample(&self, row: &[Complex32], x: f64) -> Complex32 {
        let base = x.floor();
        let n = row.len() as i64;
        let mut i0 = base as i64;
        let mut phase = ((x - base) * KERNEL_PHASES as f64).round() as usize;
        if phase == KERNEL_PHASES {
            i0 += 1;
            phase = 0;
        }
        if phase == 0 {
            return if (0..n).contains(&i0) {
                row[i0 as usize]
            } else {
                Complex32::new(0.0, 0.0)
            };
        }
        let w = &self.table[phase * self.taps..(phase + 1) * self.taps];
        let first = i0 - (self.half as i64 - 1);
        let mut acc = Complex32::new(0.0, 0.0);
        if first >= 0 && first + self.taps as i64 <= n {
            let seg = &row[first as usize..first as usize + self.taps];
            for (v, &w) in seg.iter().zip(w) {
                acc += v * w;
            }
        } else {
            for (t, &w) in w.iter().enumerate() {
                let k = first + t as i64;
                if (0..n).contains(&k) {
                    acc += row[k as usize] * w;
                }
            }
        }
        acc
    }
}

/// Sample `row` at `x` with a fresh `taps`-tap kernel.
pub fn interpolate(row: &[Complex32], x: f64, taps: usize) -> Complex32 {
    SincKernel::new(taps).sample(row, x)
}

/// One streaming pass over the range-Doppler scene.
pub fn rcmc_apply(
    scene: &SceneMatrix,
    params: &RcmcParams,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::new();
    ws.pass_from(scene, |s, d| rcmc_pass(s, d, params, ledger))?;
    Ok(ws.into_current())
}

/// [`rcmc_apply`] on `ws`'s current scene.
pub fn rcmc_apply_in(
    ws: &mut Workspace,
    params: &RcmcParams,
    ledger: &mut TrafficLedger,
) -> Result<()> {
    ws.pass(|s, d| rcmc_pass(s, d, params, ledger))
}

fn rcmc_pass(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    params: &RcmcParams,
    ledger: &mut TrafficLedger,
) -> Result<()> {
    if params.coeff.len() != src.rows() || params.range_m.len() != src.cols() {
        return Err(Error::DimensionMismatch(
            params.coeff.len(),
            params.range_m.len(),
            src.rows(),
            src.cols(),
        ));
    }
    stream_rows_into(
        src,
        dst,
        ledger,
        RCMC,
        "interpolate",
        TransferCategory::Line,
        || (),
        |_, i, a, b| {
            for (j, d) in b.iter_mut().enumerate() {
                *d = params.kernel.sample(a, j as f64 + params.shift_cells(i, j));
            }
            Ok(())
        },
    )
}
