//! Complex sample storage.
//!
//! Two layouts are supported. [`Layout::Interleaved`] keeps `(re, im)` pairs
//! adjacent and is what the Stockham kernels and the scene matrices use.
//! [`Layout::Split`] keeps every real part in one contiguous run and every
//! imaginary part in another, which is what the matrix butterfly of the
//! Cooley-Tukey kernel consumes. Both hold exactly eight bytes per sample.

mod format;

use std::f64::consts::PI;

use num_complex::Complex32;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use format::{
    decode_scene, encode_scene, read_scene, write_scene, SCENE_HEADER_BYTES, SCENE_MAGIC,
};

/// Single-precision complex sample used throughout the pipeline.
pub type ComplexF32 = Complex32;

/// Size of the on-chip working tile a fused line pass is allowed to use.
/// A 4096-point complex float32 line fills it exactly.
pub const TILE_BYTES: usize = 32 * 1024;

/// Bytes per complex float32 sample.
pub const SAMPLE_BYTES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    Interleaved,
    Split,
}

impl Layout {
    pub fn tag(self) -> u32 {
        match self {
            Layout::Interleaved => 0,
            Layout::Split => 1,
        }
    }

    pub fn from_tag(tag: u32) -> Option<Self> {
        match tag {
            0 => Some(Layout::Interleaved),
            1 => Some(Layout::Split),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
enum Storage {
    Interleaved(Vec<Complex32>),
    Split { re: Vec<f32>, im: Vec<f32> },
}

/// A run of complex float32 samples in one of the two layouts.
#[derive(Debug, Clone)]
pub struct ComplexBuffer {
    storage: Storage,
}

impl ComplexBuffer {
    pub fn zeros(n: usize, layout: Layout) -> Self {
        let storage = match layout {
            Layout::Interleaved => Storage::Interleaved(vec![Complex32::new(0.0, 0.0); n]),
            Layout::Split => Storage::Split {
                re: vec![0.0; n],
                im: vec![0.0; n],
            },
        };
        Self { storage }
    }

    pub fn from_interleaved(data: Vec<Complex32>) -> Self {
        Self {
            storage: Storage::Interleaved(data),
        }
    }

    pub fn from_split(re: Vec<f32>, im: Vec<f32>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::LengthMismatch {
                expected: re.len(),
                actual: im.len(),
            });
        }
        Ok(Self {
            storage: Storage::Split { re, im },
        })
    }

    pub fn len(&self) -> usize {
        match &self.storage {
            Storage::Interleaved(v) => v.len(),
            Storage::Split { re, .. } => re.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn layout(&self) -> Layout {
        match self.storage {
            Storage::Interleaved(_) => Layout::Interleaved,
            Storage::Split { .. } => Layout::Split,
        }
    }

    /// Storage footprint in bytes; `8 * len` for either layout.
    pub fn byte_size(&self) -> usize {
        match &self.storage {
            Storage::Interleaved(v) => std::mem::size_of_val(v.as_slice()),
            Storage::Split { re, im } => {
                std::mem::size_of_val(re.as_slice()) + std::mem::size_of_val(im.as_slice())
            }
        }
    }

    pub fn get(&self, k: usize) -> Complex32 {
        match &self.storage {
            Storage::Interleaved(v) => v[k],
            Storage::Split { re, im } => Complex32::new(re[k], im[k]),
        }
    }

    pub fn set(&mut self, k: usize, value: Complex32) {
        match &mut self.storage {
            Storage::Interleaved(v) => v[k] = value,
            Storage::Split { re, im } => {
                re[k] = value.re;
                im[k] = value.im;
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Complex32> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    pub fn as_interleaved(&self) -> Option<&[Complex32]> {
        match &self.storage {
            Storage::Interleaved(v) => Some(v),
            Storage::Split { .. } => None,
        }
    }

    pub fn as_interleaved_mut(&mut self) -> Option<&mut [Complex32]> {
        match &mut self.storage {
            Storage::Interleaved(v) => Some(v),
            Storage::Split { .. } => None,
        }
    }

    pub fn as_split(&self) -> Option<(&[f32], &[f32])> {
        match &self.storage {
            Storage::Split { re, im } => Some((re, im)),
            Storage::Interleaved(_) => None,
        }
    }

    pub fn as_split_mut(&mut self) -> Option<(&mut [f32], &mut [f32])> {
        match &mut self.storage {
            Storage::Split { re, im } => Some((re, im)),
            Storage::Interleaved(_) => None,
        }
    }

    /// Copy of the buffer in `target` layout. Element values are moved
    /// bit-for-bit; no arithmetic is involved.
    pub fn to_layout(&self, target: Layout) -> Self {
        self.clone().into_layout(target)
    }

    pub fn into_layout(self, target: Layout) -> Self {
        match (self.storage, target) {
            (Storage::Interleaved(v), Layout::Split) => {
                let (re, im) = v.iter().map(|c| (c.re, c.im)).unzip();
                Self {
                    storage: Storage::Split { re, im },
                }
            }
            (Storage::Split { re, im }, Layout::Interleaved) => Self {
                storage: Storage::Interleaved(
                    re.into_iter()
                        .zip(im)
                        .map(|(r, i)| Complex32::new(r, i))
                        .collect(),
                ),
            },
            (storage, _) => Self { storage },
        }
    }

    /// Samples in interleaved order, whatever the storage layout.
    pub fn to_vec(&self) -> Vec<Complex32> {
        match &self.storage {
            Storage::Interleaved(v) => v.clone(),
            Storage::Split { .. } => self.iter().collect(),
        }
    }

    pub fn into_vec(self) -> Vec<Complex32> {
        match self.into_layout(Layout::Interleaved).storage {
            Storage::Interleaved(v) => v,
            Storage::Split { .. } => unreachable!(),
        }
    }

    /// Same layout, same length and every component bit-identical.
    pub fn bit_eq(&self, other: &Self) -> bool {
        self.layout() == other.layout()
            && self.len() == other.len()
            && self
                .iter()
                .zip(other.iter())
                .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits())
    }
}

/// Free-function form of [`ComplexBuffer::to_layout`].
pub fn convert_layout(buf: &ComplexBuffer, target: Layout) -> ComplexBuffer {
    buf.to_layout(target)
}

/// `rows x cols` complex scene stored row-major; one row is one azimuth
/// line of range samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex32>,
}

impl SceneMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex32>) -> Result<Self> {
        if !rows.is_power_of_two() || !cols.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Complex32::new(0.0, 0.0); rows * cols])
    }

    /// 0x0 placeholder with no storage, for buffers about to be reshaped.
    pub(crate) fn empty() -> Self {
        Self {
            rows: 0,
            cols: 0,
            data: Vec::new(),
        }
    }

    /// Reuse the allocation as a `rows x cols` matrix. Contents are
    /// unspecified afterwards, callers overwrite every sample.
    pub(crate) fn reshape_for(&mut self, rows: usize, cols: usize) {
        self.data.resize(rows * cols, Complex32::new(0.0, 0.0));
        self.rows = rows;
        self.cols = cols;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex32 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex32) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Complex32] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [Complex32] {
        &mut self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex32] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex32] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex32> {
        self.data
    }

    pub fn to_buffer(&self, layout: Layout) -> ComplexBuffer {
        ComplexBuffer::from_interleaved(self.data.clone()).into_layout(layout)
    }

    pub fn byte_size(&self) -> usize {
        self.data.len() * SAMPLE_BYTES
    }

    pub fn transpose(&self) -> SceneMatrix {
        let mut out = vec![Complex32::new(0.0, 0.0); self.data.len()];
        transpose_into(&self.data, &mut out, self.rows, self.cols);
        SceneMatrix {
            rows: self.cols,
            cols: self.rows,
            data: out,
        }
    }

    pub fn bit_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits())
    }
}

/// Free-function form of [`SceneMatrix::transpose`].
pub fn transpose(m: &SceneMatrix) -> SceneMatrix {
    m.transpose()
}

const TRANSPOSE_BLOCK: usize = 32;

/// Cache-blocked out-of-place transpose of a row-major `rows x cols` matrix.
pub fn transpose_into<T: Copy>(src: &[T], dst: &mut [T], rows: usize, cols: usize) {
    assert_eq!(src.len(), rows * cols);
    assert_eq!(dst.len(), rows * cols);
    for rb in (0..rows).step_by(TRANSPOSE_BLOCK) {
        let r_end = (rb + TRANSPOSE_BLOCK).min(rows);
        for cb in (0..cols).step_by(TRANSPOSE_BLOCK) {
            let c_end = (cb + TRANSPOSE_BLOCK).min(cols);
            for r in rb..r_end {
                for c in cb..c_end {
                    dst[c * rows + r] = src[r * cols + c];
                }
            }
        }
    }
}

/// Forward twiddle factors `exp(-2 pi i k / n)` for `k = 0..n`.
#[derive(Debug, Clone)]
pub struct TwiddleTable {
    factors: Vec<Complex32>,
}

impl TwiddleTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        let factors = (0..n)
            .map(|k| {
                if k == 0 {
                    return Complex32::new(1.0, 0.0);
                }
                let (s, c) = (-2.0 * PI * k as f64 / n as f64).sin_cos();
                Complex32::new(c as f32, s as f32)
            })
            .collect();
        Ok(Self { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[Complex32] {
        &self.factors
    }

    #[inline]
    pub fn get(&self, k: usize) -> Complex32 {
        self.factors[k]
    }
}

pub fn make_twiddles(n: usize) -> Result<TwiddleTable> {
    TwiddleTable::new(n)
}
