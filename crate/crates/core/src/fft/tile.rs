//! 8x8 matrix-form radix-8 butterfly.
//!
//! A complex 8x8 product `Y = F8 * X` is evaluated as four real matrix
//! products, one per (re, im) pairing:
//!
//! ```text
//! Y_re = F_re * X_re - F_im * X_im
//! Y_im = F_re * X_im + F_im * X_re
//! ```
//!
//! Every column of `X` is an independent 8-point signal. This is the
//! portable form of what an 8x8 hardware MMA tile computes; the lane map
//! below describes which two tile elements a 32-lane SIMD group owns, and
//! is used to drive twiddle application over a tile.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub type Mat8 = [[f32; 8]; 8];

/// The 8-point DFT matrix `F[j][k] = exp(-2 pi i jk / 8)` split into real
/// and imaginary planes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dft8Matrix {
    pub f_re: Mat8,
    pub f_im: Mat8,
}

impl Dft8Matrix {
    pub fn new() -> Self {
        let mut f_re = [[0.0; 8]; 8];
        let mut f_im = [[0.0; 8]; 8];
        for j in 0..8 {
            for k in 0..8 {
                // reduce jk mod 8 so the eight distinct roots are computed once each
                let e = (j * k) % 8;
                if e == 0 {
                    f_re[j][k] = 1.0;
                    continue;
                }
                let (s, c) = (-2.0 * PI * e as f64 / 8.0).sin_cos();
                f_re[j][k] = c as f32;
                f_im[j][k] = s as f32;
            }
        }
        Self { f_re, f_im }
    }
}

impl Default for Dft8Matrix {
    fn default() -> Self {
        Self::new()
    }
}

#[inline(always)]
fn matmul(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut out = [[0.0f32; 8]; 8];
    for (i, row) in out.iter_mut().enumerate() {
        for k in 0..8 {
            let aik = a[i][k];
            for (j, o) in row.iter_mut().enumerate() {
                *o += aik * b[k][j];
            }
        }
    }
    out
}

/// Column-wise 8-point DFT of the complex tile `(x_re, x_im)` as four real
/// matrix products plus one subtraction and one addition.
pub fn tile_butterfly_8x8(dft: &Dft8Matrix, x_re: &Mat8, x_im: &Mat8) -> (Mat8, Mat8) {
    let rr = matmul(&dft.f_re, x_re);
    let ii = matmul(&dft.f_im, x_im);
    let ri = matmul(&dft.f_re, x_im);
    let ir = matmul(&dft.f_im, x_re);
    let mut y_re = [[0.0; 8]; 8];
    let mut y_im = [[0.0; 8]; 8];
    for r in 0..8 {
        for c in 0..8 {
            y_re[r][c] = rr[r][c] - ii[r][c];
            y_im[r][c] = ri[r][c] + ir[r][c];
        }
    }
    (y_re, y_im)
}

/// Tile cells owned by one SIMD lane: `(row, col0)` and `(row, col0 + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LanePosition {
    pub lane: usize,
    pub row: usize,
    pub col0: usize,
}

impl LanePosition {
    pub fn cells(&self) -> [(usize, usize); 2] {
        [(self.row, self.col0), (self.row, self.col0 + 1)]
    }
}

pub const SIMD_LANES: usize = 32;

pub fn lane_to_position(lane: usize) -> Result<LanePosition> {
    if lane >= SIMD_LANES {
        return Err(Error::LaneOutOfRange(lane));
    }
    let row = (lane / 16) * 4 + (lane % 8) / 2;
    let col0 = ((lane / 8) % 2) * 4 + (lane % 2) * 2;
    Ok(LanePosition { lane, row, col0 })
}

/// All 32 lane positions, precomputed.
pub(crate) fn lane_table() -> [LanePosition; SIMD_LANES] {
    std::array::from_fn(|lane| lane_to_position(lane).expect("lane in range"))
}
