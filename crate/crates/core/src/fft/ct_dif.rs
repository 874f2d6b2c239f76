//! In-place radix-8 Cooley-Tukey decimation-in-frequency kernel on split
//! real/imaginary storage.
//!
//! Stage strides run `n/8, n/64, ..., 1`. Within a stage of stride `S`, the
//! eight legs `x[b + j + p S]` of each butterfly are transformed and leg `q`
//! is multiplied by `W_{8S}^{j q}` before being written back in place.
//! Stages with `S > 1` process eight adjacent butterflies at once as an 8x8
//! tile through the matrix butterfly; the stride-1 stage is scalar and, when
//! run as part of a full transform, writes its results straight to their
//! digit-reversed destinations.

use num_complex::Complex32;

use super::butterfly::dft8;
use super::tile::{lane_table, tile_butterfly_8x8, Dft8Matrix, Mat8};
use super::StageDesc;
use crate::buffer::{ComplexBuffer, Layout, TwiddleTable};
use crate::error::{Error, Result};

/// Base-8 digit reversal of every index in `0..n`, `n = 8^m`.
pub fn digit_reverse_permutation(n: usize, radix: usize) -> Result<Vec<usize>> {
    let digits = match exact_log(n, radix) {
        Some(d) if radix >= 2 => d,
        _ => {
            return Err(Error::UnsupportedLength {
                n,
                family: "digit reversal",
            })
        }
    };
    Ok((0..n)
        .map(|mut k| {
            let mut r = 0;
            for _ in 0..digits {
                r = r * radix + k % radix;
                k /= radix;
            }
            r
        })
        .collect())
}

/// `Some(m)` when `n == radix^m`, `m >= 1`.
pub(crate) fn exact_log(n: usize, radix: usize) -> Option<usize> {
    if radix < 2 || n < radix {
        return None;
    }
    let mut m = 0;
    let mut v = 1usize;
    while v < n {
        v = v.checked_mul(radix)?;
        m += 1;
    }
    (v == n).then_some(m)
}

#[inline(always)]
fn twiddle_step(n: usize, stride: usize) -> usize {
    n / (8 * stride)
}

/// Scalar butterflies over one stage, in place.
fn scalar_stage(re: &mut [f32], im: &mut [f32], stride: usize, tw: &TwiddleTable) {
    let n = re.len();
    let step = twiddle_step(n, stride);
    for b in (0..n).step_by(8 * stride) {
        for j in 0..stride {
            let a: [Complex32; 8] = std::array::from_fn(|p| {
                let i = b + j + p * stride;
                Complex32::new(re[i], im[i])
            });
            let y = dft8(a);
            for (q, yq) in y.into_iter().enumerate() {
                let v = if q == 0 || j == 0 {
                    yq
                } else {
                    yq * tw.get(j * q * step)
                };
                let i = b + j + q * stride;
                re[i] = v.re;
                im[i] = v.im;
            }
        }
    }
}

/// Matrix-butterfly stage, in place. `stride` must be a multiple of 8.
fn tile_stage(re: &mut [f32], im: &mut [f32], stride: usize, tw: &TwiddleTable, dft: &Dft8Matrix) {
    let n = re.len();
    let step = twiddle_step(n, stride);
    let lanes = lane_table();
    let mut x_re: Mat8 = [[0.0; 8]; 8];
    let mut x_im: Mat8 = [[0.0; 8]; 8];
    for b in (0..n).step_by(8 * stride) {
        for j0 in (0..stride).step_by(8) {
            // row p = butterfly leg, column c = butterfly j0 + c
            for p in 0..8 {
                let base = b + j0 + p * stride;
                x_re[p].copy_from_slice(&re[base..base + 8]);
                x_im[p].copy_from_slice(&im[base..base + 8]);
            }
            let (mut y_re, mut y_im) = tile_butterfly_8x8(dft, &x_re, &x_im);
            for lane in &lanes {
                for (q, c) in lane.cells() {
                    let e = (j0 + c) * q * step;
                    if e == 0 {
                        continue;
                    }
                    let v = Complex32::new(y_re[q][c], y_im[q][c]) * tw.get(e);
                    y_re[q][c] = v.re;
                    y_im[q][c] = v.im;
                }
            }
            for q in 0..8 {
                let base = b + j0 + q * stride;
                re[base..base + 8].copy_from_slice(&y_re[q]);
                im[base..base + 8].copy_from_slice(&y_im[q]);
            }
        }
    }
}

pub(crate) fn run_stage(
    re: &mut [f32],
    im: &mut [f32],
    stage: &StageDesc,
    tw: &TwiddleTable,
    dft: &Dft8Matrix,
) {
    if stage.uses_tile_butterfly {
        tile_stage(re, im, stage.stride, tw, dft);
    } else {
        scalar_stage(re, im, stage.stride, tw);
    }
}

/// Stride-1 scalar stage fused with the digit-reversal store. No twiddles
/// are needed at stride 1.
pub(crate) fn final_stage_reversed(
    re: &[f32],
    im: &[f32],
    rev: &[usize],
    mut store: impl FnMut(usize, Complex32),
) {
    let n = re.len();
    for b in (0..n).step_by(8) {
        let a: [Complex32; 8] = std::array::from_fn(|p| Complex32::new(re[b + p], im[b + p]));
        for (q, y) in dft8(a).into_iter().enumerate() {
            store(rev[b + q], y);
        }
    }
}

/// One in-place DIF stage on a split buffer.
pub fn ct_dif_stage(
    buf: &mut ComplexBuffer,
    stage: &StageDesc,
    twiddles: &TwiddleTable,
) -> Result<()> {
    let n = buf.len();
    if stage.radix != 8 || stage.stride == 0 || !n.is_multiple_of(8 * stage.stride) || twiddles.len() != n {
        return Err(Error::StrideMismatch {
            n,
            stride: stage.stride,
        });
    }
    if stage.uses_tile_butterfly && !stage.stride.is_multiple_of(8) {
        return Err(Error::StrideMismatch {
            n,
            stride: stage.stride,
        });
    }
    let layout = buf.layout();
    let (re, im) = buf.as_split_mut().ok_or(Error::LayoutMismatch {
        expected: Layout::Split,
        actual: layout,
    })?;
    run_stage(re, im, stage, twiddles, &Dft8Matrix::new());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_small() {
        assert_eq!(
            digit_reverse_permutation(8, 8).unwrap(),
            (0..8).collect::<Vec<_>>()
        );
        let p = digit_reverse_permutation(64, 8).unwrap();
        assert_eq!(p[1], 8);
        assert_eq!(p[8], 1);
        assert_eq!(p[9], 9);
        assert_eq!(p[10], 17);
        assert!(digit_reverse_permutation(16, 8).is_err());
        assert!(digit_reverse_permutation(0, 8).is_err());
    }

    #[test]
    fn reversal_is_involution() {
        let p = digit_reverse_permutation(4096, 8).unwrap();
        assert!((0..4096).all(|k| p[p[k]] == k));
    }

    #[test]
    fn exact_log_cases() {
        assert_eq!(exact_log(4096, 8), Some(4));
        assert_eq!(exact_log(4096, 4), Some(6));
        assert_eq!(exact_log(512, 4), None);
        assert_eq!(exact_log(1, 8), None);
    }

    #[test]
    fn stage_rejects_bad_stride() {
        let tw = TwiddleTable::new(64).unwrap();
        let mut buf = ComplexBuffer::zeros(64, Layout::Split);
        let bad = StageDesc {
            radix: 8,
            stride: 16,
            uses_tile_butterfly: true,
        };
        assert!(matches!(
            ct_dif_stage(&mut buf, &bad, &tw),
            Err(Error::StrideMismatch { .. })
        ));
        let mut inter = ComplexBuffer::zeros(64, Layout::Interleaved);
        let ok = StageDesc {
            radix: 8,
            stride: 8,
            uses_tile_butterfly: true,
        };
        assert!(matches!(
            ct_dif_stage(&mut inter, &ok, &tw),
            Err(Error::LayoutMismatch { .. })
        ));
    }
}
