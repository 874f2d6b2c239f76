use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("transform length must be at least 1")]
    ZeroLength,
    #[error("length {n} is not supported by {family}")]
    UnsupportedLength { n: usize, family: &'static str },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("layout mismatch: kernel expects {expected:?}, buffer is {actual:?}")]
    LayoutMismatch {
        expected: crate::buffer::Layout,
        actual: crate::buffer::Layout,
    },
    #[error("SIMD lane {0} out of range 0..32")]
    LaneOutOfRange(usize),
    #[error("buffer of {n} samples cannot hold radix-8 blocks at stride {stride}")]
    StrideMismatch { n: usize, stride: usize },
    #[error("scene dimensions must be powers of two, got {rows}x{cols}")]
    NotPowerOfTwo { rows: usize, cols: usize },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("pulse of {samples} samples does not fit a line of {n}")]
    PulseTooLong { samples: usize, n: usize },
    #[error("invalid range {0} m")]
    InvalidRange(f64),
    #[error(
        "target {index} projects to pixel ({row:.1}, {col:.1}) outside the {rows}x{cols} scene"
    )]
    TargetOutOfScene {
        index: usize,
        row: f64,
        col: f64,
        rows: usize,
        cols: usize,
    },

    #[error("line of {n} complex samples ({bytes} bytes) exceeds the {capacity}-byte tile")]
    LineTooLargeForTile {
        n: usize,
        bytes: usize,
        capacity: usize,
    },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("reference image has zero norm")]
    ZeroReference,
    #[error("peak and noise regions overlap")]
    RegionOverlap,
    #[error("region exceeds image bounds")]
    RegionOutOfBounds,
    #[error("no sidelobe found on either side of the peak")]
    NoSidelobeFound,
    #[error("peak near ({row}, {col}) is below the detection floor")]
    PeakBelowFloor { row: usize, col: usize },

    #[error("scene format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
