//! Kernel-fused Range Doppler SAR processing.
//!
//! The crate is organised bottom-up:
//!
//! - [`buffer`]: complex sample storage in interleaved or split layout,
//!   scene matrices, twiddle tables and the binary scene format.
//! - [`fft`]: the two FFT kernel families (out-of-place Stockham and
//!   in-place radix-8 Cooley-Tukey DIF with an 8x8 matrix butterfly).
//! - [`sim`]: point-target raw data simulation and matched filters.
//! - [`rda`]: the Range Doppler pipeline in fused and unfused form, with a
//!   memory-traffic ledger.
//! - [`quality`]: image comparison and point-target metrics.

pub mod buffer;
pub mod error;
pub mod fft;
pub mod quality;
pub mod rda;
pub mod sim;

pub use buffer::{ComplexBuffer, ComplexF32, Layout, SceneMatrix, TwiddleTable, TILE_BYTES};
pub use error::{Error, Result};
pub use fft::{FftFamily, FftPlan};
pub use quality::QualityReport;
pub use rda::{PipelineMode, PipelineOptions, TrafficLedger};
pub use sim::{PointTarget, SarGeometry};
