//! Row-parallel pass machinery shared by the stages.

use num_complex::Complex32;
use rayon::prelude::*;

use crate::buffer::{transpose_into, SceneMatrix, SAMPLE_BYTES};
use crate::error::Result;

use super::ledger::{TrafficLedger, TransferCategory};

/// Two scene-sized buffers that passes ping-pong between: a pass reads
/// `current`, writes the spare, and the two swap. Reusing one workspace
/// across runs keeps stage timings free of first-touch page faults.
#[derive(Debug, Clone)]
pub struct Workspace {
    current: SceneMatrix,
    spare: SceneMatrix,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new()
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self {
            current: SceneMatrix::empty(),
            spare: SceneMatrix::empty(),
        }
    }

    pub fn from_scene(scene: SceneMatrix) -> Self {
        Self {
            current: scene,
            spare: SceneMatrix::empty(),
        }
    }

    pub fn current(&self) -> &SceneMatrix {
        &self.current
    }

    /// Move the current scene out, leaving an empty buffer behind.
    pub fn take_current(&mut self) -> SceneMatrix {
        std::mem::replace(&mut self.current, SceneMatrix::empty())
    }

    pub fn into_current(self) -> SceneMatrix {
        self.current
    }

    /// `f(current, spare)`, then swap.
    pub(crate) fn pass<T>(
        &mut self,
        f: impl FnOnce(&SceneMatrix, &mut SceneMatrix) -> Result<T>,
    ) -> Result<T> {
        let t = f(&self.current, &mut self.spare)?;
        std::mem::swap(&mut self.current, &mut self.spare);
        Ok(t)
    }

    /// `f(src, spare)` for an external source, then swap.
    pub(crate) fn pass_from<T>(
        &mut self,
        src: &SceneMatrix,
        f: impl FnOnce(&SceneMatrix, &mut SceneMatrix) -> Result<T>,
    ) -> Result<T> {
        let t = f(src, &mut self.spare)?;
        std::mem::swap(&mut self.current, &mut self.spare);
        Ok(t)
    }
}

/// Run `f(state, row, src_row, dst_row)` over every row of `src` into
/// `dst`, which takes `src`'s shape. `f` returns the `(reads, writes)` it
/// performed against scene storage; the totals are returned.
pub(crate) fn map_rows_into<S, I, F>(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    init: I,
    f: F,
) -> Result<(u64, u64)>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &[Complex32], &mut [Complex32]) -> Result<(u64, u64)> + Sync + Send,
{
    let cols = src.cols();
    dst.reshape_for(src.rows(), cols);
    dst.as_mut_slice()
        .par_chunks_mut(cols)
        .enumerate()
        .map_init(init, |state, (i, d)| f(state, i, src.row(i), d))
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
}

/// A plain streaming pass: one read and one write per row.
#[allow(clippy::too_many_arguments)]
pub(crate) fn stream_rows_into<S, I, F>(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    ledger: &mut TrafficLedger,
    stage: &str,
    pass: &str,
    category: TransferCategory,
    init: I,
    f: F,
) -> Result<()>
where
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &[Complex32], &mut [Complex32]) -> Result<()> + Sync + Send,
{
    let (reads, writes) = map_rows_into(src, dst, init, |s, i, a, b| {
        f(s, i, a, b)?;
        Ok((1, 1))
    })?;
    ledger.record(stage, pass, category, reads, writes, line_bytes(src.cols()));
    Ok(())
}

pub(crate) fn line_bytes(n: usize) -> u64 {
    (n * SAMPLE_BYTES) as u64
}

/// Full-matrix transpose, ledgered as every source line read once and every
/// destination line written once.
pub(crate) fn transpose_pass_into(
    src: &SceneMatrix,
    dst: &mut SceneMatrix,
    ledger: &mut TrafficLedger,
    stage: &str,
    pass: &str,
) -> Result<()> {
    let (rows, cols) = (src.rows(), src.cols());
    dst.reshape_for(cols, rows);
    parallel_transpose(src.as_slice(), dst.as_mut_slice(), rows, cols);
    // reads are `rows` lines of `cols`, writes `cols` lines of `rows`: equal bytes
    ledger.record(
        stage,
        pass,
        TransferCategory::Line,
        rows as u64,
        0,
        line_bytes(cols),
    );
    ledger.record(
        stage,
        pass,
        TransferCategory::Line,
        0,
        cols as u64,
        line_bytes(rows),
    );
    Ok(())
}

/// Transpose split over bands of destination rows.
fn parallel_transpose(src: &[Complex32], dst: &mut [Complex32], rows: usize, cols: usize) {
    const BAND: usize = 32;
    if rows * cols < 1 << 14 {
        transpose_into(src, dst, rows, cols);
        return;
    }
    dst.par_chunks_mut(BAND * rows)
        .enumerate()
        .for_each(|(band, chunk)| {
            let c0 = band * BAND;
            let width = chunk.len() / rows;
            for rb in (0..rows).step_by(BAND) {
                for c in c0..c0 + width {
                    let out = &mut chunk[(c - c0) * rows..(c - c0 + 1) * rows];
                    for r in rb..(rb + BAND).min(rows) {
                        out[r] = src[r * cols + c];
                    }
                }
            }
        });
}
