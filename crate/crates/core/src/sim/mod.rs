//! Point-target SAR raw data and matched filters.

mod filters;
mod geometry;
mod scene;

pub use filters::{make_azimuth_filter, make_chirp, make_range_filter, FilterKind, MatchedFilter};
pub use geometry::{SarGeometry, SPEED_OF_LIGHT};
pub use scene::{
    default_targets, noise_sigma, simulate_noiseless_f64, simulate_scene, slant_range_at,
    PointTarget, NOISELESS,
};
