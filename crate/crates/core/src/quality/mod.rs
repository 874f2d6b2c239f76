//! Image comparison and point-target metrics. Everything is computed in
//! f64 whatever the image precision.

mod metrics;
mod report;

pub use metrics::{
    find_peaks, islr, l2_relative_error, max_abs_error, median_magnitude, pslr, target_snr, Window,
    SIDELOBE_FLOOR_DB,
};
pub use report::{analyze_targets, noise_window, QualityOptions, QualityReport, TargetMetrics};
