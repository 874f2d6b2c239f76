//! Range compression: per azimuth line, FFT -> multiply by `H_r` -> IFFT.

use num_complex::Complex32;

use super::ledger::{TrafficLedger, TransferCategory, RANGE_COMPRESSION};
use super::lines::{line_bytes, map_rows_into, stream_rows_into, Workspace};
use super::tile::TileBuffer;
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};
use crate::fft::FftPlan;
use crate::sim::MatchedFilter;

pub(crate) fn check_lengths(line_len: usize, filter_len: usize, plan: &FftPlan) -> Result<()> {
    if plan.len() != line_len {
        return Err(Error::LengthMismatch {
            expected: line_len,
            actual: plan.len(),
        });
    }
    if filter_len != line_len {
        return Err(Error::LengthMismatch {
            expected: line_len,
            actual: filter_len,
        });
    }
    Ok(())
}

/// Single pass per line: the forward FFT reads the scene line into the
/// tile, the filter is applied there, and the inverse FFT's final stage
/// stores straight to the output line.
pub fn range_compress_fused(
    scene: &SceneMatrix,
    filter: &MatchedFilter,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::new();
    range_compress_fused_in(scene, filter, plan, ledger, &mut ws)?;
    Ok(ws.into_current())
}

/// [`range_compress_fused`] leaving its output as `ws`'s current scene.
pub fn range_compress_fused_in(
    scene: &SceneMatrix,
    filter: &MatchedFilter,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
    ws: &mut Workspace,
) -> Result<()> {
    check_lengths(scene.cols(), filter.len(), plan)?;
    TileBuffer::new(scene.cols())?;
    let (reads, writes) = ws.pass_from(scene, |src, dst| {
        fused_filter_pass(src, dst, |_| filter.taps(), plan, true)
    })?;
    let lb = line_bytes(scene.cols());
    ledger.record(
        RANGE_COMPRESSION,
        "fused_line",
        TransferCategory::Line,
        reads,
        writes,
        lb,
    );
    ledger.record(
        RANGE_COMPRESSION,
        "filter",
        TransferCategory::Broadcast,
        scene.rows() as u64,
        0,
        lb,
    );
    Ok(())
}

/// Fused `[FFT ->] multiply -> IFFT` over every row of `src` into `dst`, row
/// `i` using `taps_for(i)`. Returns the tiles' read/write counts.
///
/// The product with the filter and the inverse's input conjugation are
/// folded into the forward FFT's final store (or into the tile load when
/// there is no forward transform), and the inverse runs straight out of the
/// tile. Every value goes through the same operations as in the unfused
/// passes, so the two executors agree bit for bit.
pub(crate) fn fused_filter_pass<'a>(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    taps_for: impl Fn(usize) -> &'a [Complex32] + Sync + Send,
    plan: &FftPlan,
    with_forward: bool,
) -> Result<(u64, u64)> {
    let n = src.cols();
    map_rows_into(
        src,
        dst,
        || (TileBuffer::new(n).expect("line fits tile"), plan.scratch()),
        |(tile, scratch), i, src, dst| {
            let h = taps_for(i);
            if with_forward {
                tile.load_with(src, |s, t| {
                    plan.forward_with(s, t, scratch, |k, v| (v * h[k]).conj())
                })?;
            } else {
                tile.load_with(src, |s, t| {
                    for ((t, s), h) in t.iter_mut().zip(s).zip(h) {
                        *t = (s * h).conj();
                    }
                });
            }
            tile.store_with(dst, |t, d| plan.inverse_from_conjugated(t, d, scratch))?;
            Ok(tile.take_counts())
        },
    )
}

/// Three scene-sized passes (FFT, multiply, IFFT). The IFFT is the forward
/// kernel bracketed by two standalone conjugation sweeps, with the `1/N`
/// scale applied in the second.
pub fn range_compress_unfused(
    scene: &SceneMatrix,
    filter: &MatchedFilter,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
) -> Result<SceneMatrix> {
    let mut ws = Workspace::new();
    range_compress_unfused_in(scene, filter, plan, ledger, &mut ws)?;
    Ok(ws.into_current())
}

/// [`range_compress_unfused`] leaving its output as `ws`'s current scene.
pub fn range_compress_unfused_in(
    scene: &SceneMatrix,
    filter: &MatchedFilter,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
    ws: &mut Workspace,
) -> Result<()> {
    check_lengths(scene.cols(), filter.len(), plan)?;
    ws.pass_from(scene, |src, dst| {
        fft_pass(src, dst, plan, ledger, RANGE_COMPRESSION, "fft")
    })?;
    multiply_pass(ws, ledger, RANGE_COMPRESSION, |_| filter.taps())?;
    ifft_pass_unfused(ws, plan, ledger, RANGE_COMPRESSION)
}

pub(crate) fn fft_pass(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
    stage: &str,
    pass: &str,
) -> Result<()> {
    stream_rows_into(
        src,
        dst,
        ledger,
        stage,
        pass,
        TransferCategory::Line,
        || plan.scratch(),
        |s, _, a, b| plan.forward_into(a, b, s),
    )
}

/// Multiply row `i` by `taps_for(i)`; taps are ledgered as broadcast reads.
pub(crate) fn multiply_pass<'a>(
    ws: &mut Workspace,
    ledger: &mut TrafficLedger,
    stage: &str,
    taps_for: impl Fn(usize) -> &'a [Complex32] + Sync + Send,
) -> Result<()> {
    let (rows, cols) = (ws.current().rows(), ws.current().cols());
    ws.pass(|src, dst| {
        stream_rows_into(
            src,
            dst,
            ledger,
            stage,
            "multiply",
            TransferCategory::Line,
            || (),
            |_, i, a, b| {
                for ((d, s), h) in b.iter_mut().zip(a).zip(taps_for(i)) {
                    *d = s * h;
                }
                Ok(())
            },
        )
    })?;
    ledger.record(
        stage,
        "filter",
        TransferCategory::Broadcast,
        rows as u64,
        0,
        line_bytes(cols),
    );
    Ok(())
}

/// conj sweep -> forward FFT pass -> conj-and-scale sweep.
pub(crate) fn ifft_pass_unfused(
    ws: &mut Workspace,
    plan: &FftPlan,
    ledger: &mut TrafficLedger,
    stage: &str,
) -> Result<()> {
    ws.pass(|src, dst| {
        stream_rows_into(
            src,
            dst,
            ledger,
            stage,
            "conjugate_in",
            TransferCategory::Host,
            || (),
            |_, _, a, b| {
                for (d, s) in b.iter_mut().zip(a) {
                    *d = s.conj();
                }
                Ok(())
            },
        )
    })?;
    ws.pass(|src, dst| fft_pass(src, dst, plan, ledger, stage, "ifft"))?;
    let scale = 1.0 / plan.len() as f32;
    ws.pass(|src, dst| {
        stream_rows_into(
            src,
            dst,
            ledger,
            stage,
            "conjugate_out",
            TransferCategory::Host,
            || (),
            |_, _, a, b| {
                for (d, s) in b.iter_mut().zip(a) {
                    *d = s.conj() * scale;
                }
                Ok(())
            },
        )
    })
}
