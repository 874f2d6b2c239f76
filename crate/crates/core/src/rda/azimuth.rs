//! Azimuth FFT and azimuth compression. Both work on columns, so each wraps
//! its row kernel in a transpose in and a transpose out.

use super::ledger::{TrafficLedger, TransferCategory, AZIMUTH_COMPRESSION, AZIMUTH_FFT};
use super::lines::{line_bytes, transpose_pass_into, Workspace};
use super::range::{fft_pass, fused_filter_pass, ifft_pass_unfused, multiply_pass};
use super::tile::TileBuffer;
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::sim::{make_azimuth_filter, MatchedFilter, SarGeometry};

/// Transpose, forward FFT each range bin's azimuth line, transpose back.
/// The output rows are azimuth-frequency bins.
pub fn azimuth_fft(
    scene: &SceneMatrix,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::from_scene(scene.clone());
    azimuth_fft_in(&mut ws, plan, ledger)?;
    Ok(ws.into_current())
}

/// [`azimuth_fft`] on `ws`'s current scene.
pub fn azimuth_fft_in(
    ws: &mut Workspace,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<()> {
    if plan.len() != ws.current().rows() {
        return Err(Error::LengthMismatch {
            expected: ws.current().rows(),
            actual: plan.len(),
        });
    }
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_FFT, "transpose_in"))?;
    ws.pass(|s, d| fft_pass(s, d, plan, ledger, AZIMUTH_FFT, "fft"))?;
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_FFT, "transpose_out"))
}

/// Azimuth matched filters, one per range bin or a single shared one.
#[derive(Debug, Clone)]
pub struct AzimuthFilterBank {
    n_a: usize,
    filters: Vec<MatchedFilter>,
}

impl AzimuthFilterBank {
    /// `H_a(f_a, R_j)` for every range bin `j`, using that bin's slant range.
    pub fn per_range_bin(geom: &SarGeometry, n_a: usize, n_r: usize) -> Result<Self> {
        let filters = (0..n_r)
            .map(|j| make_azimuth_filter(geom, n_a, geom.range_of_bin(j, n_r)))
            .collect::<Result<_>>()?;
        Ok(Self { n_a, filters })
    }

    /// One filter at `R_0` shared by every range bin.
    pub fn shared(geom: &SarGeometry, n_a: usize) -> Result<Self> {
        Ok(Self {
            n_a,
            filters: vec![make_azimuth_filter(geom, n_a, geom.range0_m)?],
        })
    }

    pub fn from_filters(n_a: usize, filters: Vec<MatchedFilter>) -> Result<Self> {
        if let Some(f) = filters.iter().find(|f| f.len() != n_a) {
            return Err(Error::LengthMismatch {
                expected: n_a,
                actual: f.len(),
            });
        }
        if filters.is_empty() {
            return Err(Error::LengthMismatch {
                expected: 1,
                actual: 0,
            });
        }
        Ok(Self { n_a, filters })
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn line_len(&self) -> usize {
        self.n_a
    }

    pub fn for_bin(&self, range_bin: usize) -> &MatchedFilter {
        if self.filters.len() == 1 {
            &self.filters[0]
        } else {
            &self.filters[range_bin]
        }
    }

    fn check(&self, scene: &SceneMatrix, plan: &FftPlan) -> Result<()> {
        if self.n_a != scene.rows() || plan.len() != scene.rows() {
            return Err(Error::LengthMismatch {
                expected: scene.rows(),
                actual: if self.n_a != scene.rows() {
                    self.n_a
                } else {
                    plan.len()
                },
            });
        }
        if self.filters.len() != 1 && self.filters.len() != scene.cols() {
            return Err(Error::LengthMismatch {
                expected: scene.cols(),
                actual: self.filters.len(),
            });
        }
        Ok(())
    }
}

/// Transpose, then per range bin a fused multiply + IFFT in the tile, then
/// transpose back. The input is already in the azimuth-frequency domain.
pub fn azimuth_compress_fused(
    scene_freq: &SceneMatrix,
    bank: &AzimuthFilterBank,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::from_scene(scene_freq.clone());
    azimuth_compress_fused_in(&mut ws, bank, plan, ledger)?;
    Ok(ws.into_current())
}

/// [`azimuth_compress_fused`] on `ws`'s current scene.
pub fn azimuth_compress_fused_in(
    ws: &mut Workspace,
    bank: &AzimuthFilterBank,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<()> {
    bank.check(ws.current(), plan)?;
    let n_a = ws.current().rows();
    TileBuffer::new(n_a)?;
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_COMPRESSION, "transpose_in"))?;
    let (reads, writes) =
        ws.pass(|s, d| fused_filter_pass(s, d, |j| bank.for_bin(j).taps(), plan, false))?;
    let lb = line_bytes(n_a);
    let lines = ws.current().rows() as u64;
    ledger.record(
        AZIMUTH_COMPRESSION,
        "fused_multiply_ifft",
        TransferCategory::Line,
        reads,
        writes,
        lb,
    );
    ledger.record(
        AZIMUTH_COMPRESSION,
        "filter",
        TransferCategory::Broadcast,
        lines,
        0,
        lb,
    );
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_COMPRESSION, "transpose_out"))
}

/// Separate multiply and IFFT passes between the transposes.
pub fn azimuth_compress_unfused(
    scene_freq: &SceneMatrix,
    bank: &AzimuthFilterBank,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::from_scene(scene_freq.clone());
    azimuth_compress_unfused_in(&mut ws, bank, plan, ledger)?;
    Ok(ws.into_current())
}

/// [`azimuth_compress_unfused`] on `ws`'s current scene.
pub fn azimuth_compress_unfused_in(
    ws: &mut Workspace,
    bank: &AzimuthFilterBank,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<()> {
    bank.check(ws.current(), plan)?;
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_COMPRESSION, "transpose_in"))?;
    multiply_pass(ws, ledger, AZIMUTH_COMPRESSION, |j| bank.for_bin(j).taps())?;
    ifft_pass_unfused(ws, plan, ledger, AZIMUTH_COMPRESSION)?;
    ws.pass(|s, d| transpose_pass_into(s, d, ledger, AZIMUTH_COMPRESSION, "transpose_out"))
}
