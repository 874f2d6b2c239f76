//! Range Doppler Algorithm: range compression, azimuth FFT, RCMC and
//! azimuth compression, with fused and unfused executors.

pub mod azimuth;
pub mod ledger;
mod lines;
pub mod pipeline;
pub mod plan;
pub mod range;
pub mod rcmc;
pub mod tile;

pub use azimuth::{
    azimuth_compress_fused, azimuth_compress_fused_in, azimuth_compress_unfused,
    azimuth_compress_unfused_in, azimuth_fft, azimuth_fft_in, AzimuthFilterBank,
};
pub use ledger::{
    LedgerEntry, StageRecord, StageTiming, TrafficLedger, TransferCategory, AZIMUTH_COMPRESSION,
    AZIMUTH_FFT, RANGE_COMPRESSION, RCMC, STAGES,
};
pub use lines::Workspace;
pub use pipeline::{
    benchmark_modes, benchmark_pipeline, median, run_pipeline, AzimuthFilterMode, BenchSummary,
    Pipeline, PipelineMode, PipelineOptions, PipelineOutput,
};
pub use plan::{StageKind, StagePlan, StageSpec};
pub use range::{
    range_compress_fused, range_compress_fused_in, range_compress_unfused,
    range_compress_unfused_in,
};
pub use rcmc::{
    interpolate, rcmc_apply, rcmc_apply_in, RcmcParams, SincKernel, DEFAULT_MAX_SHIFT_CELLS,
    DEFAULT_RCMC_TAPS, KERNEL_PHASES,
};
pub use tile::TileBuffer;
