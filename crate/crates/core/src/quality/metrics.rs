use num_complex::Complex32;

use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};

/// Reported in place of `-inf` when a cut has no sidelobe energy at all.
pub const SIDELOBE_FLOOR_DB: f64 = -100.0;

fn check_dims(a: &SceneMatrix, b: &SceneMatrix) -> Result<()> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
        ));
    }
    Ok(())
}

#[inline]
fn diff_sq(x: Complex32, y: Complex32) -> f64 {
    let re = x.re as f64 - y.re as f64;
    let im = x.im as f64 - y.im as f64;
    re * re + im * im
}

#[inline]
fn power(x: Complex32) -> f64 {
    let (re, im) = (x.re as f64, x.im as f64);
    re * re + im * im
}

/// `||a - b|| / ||b||`, with `b` the reference.
pub fn l2_relative_error(a: &SceneMatrix, b: &SceneMatrix) -> Result<f64> {
    check_dims(a, b)?;
    let (mut num, mut den) = (0.0f64, 0.0f64);
    for (&x, &y) in a.as_slice().iter().zip(b.as_slice()) {
        num += diff_sq(x, y);
        den += power(y);
    }
    if den == 0.0 {
        return if num == 0.0 {
            Ok(0.0)
        } else {
            Err(Error::ZeroReference)
        };
    }
    Ok((num / den).sqrt())
}

pub fn max_abs_error(a: &SceneMatrix, b: &SceneMatrix) -> Result<f64> {
    check_dims(a, b)?;
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(&x, &y)| diff_sq(x, y).sqrt())
        .fold(0.0, f64::max))
}

/// Rectangular pixel region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub row0: usize,
    pub col0: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Window {
    pub fn new(row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self {
            row0,
            col0,
            rows,
            cols,
        }
    }

    /// `(2 * half + 1)` square around a pixel, clipped at the top/left edge.
    pub fn centered(row: usize, col: usize, half: usize) -> Self {
        let row0 = row.saturating_sub(half);
        let col0 = col.saturating_sub(half);
        Self::new(row0, col0, row + half + 1 - row0, col + half + 1 - col0)
    }

    pub fn fits(&self, image: &SceneMatrix) -> bool {
        self.rows > 0
            && self.cols > 0
            && self.row0 + self.rows <= image.rows()
            && self.col0 + self.cols <= image.cols()
    }

    pub fn overlaps(&self, other: &Window) -> bool {
        self.row0 < other.row0 + other.rows
            && other.row0 < self.row0 + self.rows
            && self.col0 < other.col0 + other.cols
            && other.col0 < self.col0 + self.cols
    }

    fn pixels<'a>(&self, image: &'a SceneMatrix) -> impl Iterator<Item = Complex32> + 'a {
        let w = *self;
        (w.row0..w.row0 + w.rows)
            .flat_map(move |r| image.row(r)[w.col0..w.col0 + w.cols].iter().copied())
    }
}

/// `10 log10(max |x|^2 in peak / mean |x|^2 in noise)`.
pub fn target_snr(image: &SceneMatrix, peak: Window, noise: Window) -> Result<f64> {
    if !peak.fits(image) || !noise.fits(image) {
        return Err(Error::RegionOutOfBounds);
    }
    if peak.overlaps(&noise) {
        return Err(Error::RegionOverlap);
    }
    let p = peak.pixels(image).map(power).fold(0.0, f64::max);
    let n = noise.pixels(image).map(power).sum::<f64>() / (noise.rows * noise.cols) as f64;
    Ok(10.0 * (p / n).log10())
}

/// Peak index and the mainlobe `[lo, hi]` bounded by the first minimum on
/// each side.
fn mainlobe(cut: &[f64]) -> Result<(usize, usize, usize)> {
    let peak = cut
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(Error::NoSidelobeFound)?;
    let mut lo = peak;
    while lo > 0 && cut[lo - 1] < cut[lo] {
        lo -= 1;
    }
    let mut hi = peak;
    while hi + 1 < cut.len() && cut[hi + 1] < cut[hi] {
        hi += 1;
    }
    if lo == 0 && hi + 1 == cut.len() {
        return Err(Error::NoSidelobeFound);
    }
    Ok((peak, lo, hi))
}

fn to_db(ratio: f64) -> f64 {
    if ratio > 0.0 {
        (10.0 * ratio.log10()).max(SIDELOBE_FLOOR_DB)
    } else {
        SIDELOBE_FLOOR_DB
    }
}

/// Highest sidelobe power over peak power, in dB. `cut` is magnitude.
pub fn pslr(cut: &[f64]) -> Result<f64> {
    let (peak, lo, hi) = mainlobe(cut)?;
    let side = cut[..lo]
        .iter()
        .chain(&cut[hi + 1..])
        .fold(0.0f64, |m, &v| m.max(v));
    Ok(to_db((side / cut[peak]).powi(2)))
}

/// Sidelobe energy over mainlobe energy across the whole cut, in dB.
pub fn islr(cut: &[f64]) -> Result<f64> {
    let (_, lo, hi) = mainlobe(cut)?;
    let main: f64 = cut[lo..=hi].iter().map(|v| v * v).sum();
    let side: f64 = cut[..lo].iter().chain(&cut[hi + 1..]).map(|v| v * v).sum();
    Ok(to_db(side / main))
}

pub fn median_magnitude(image: &SceneMatrix) -> f64 {
    let mut m: Vec<f32> = image.as_slice().iter().map(|v| v.norm()).collect();
    if m.is_empty() {
        return 0.0;
    }
    let mid = m.len() / 2;
    let (_, v, _) = m.select_nth_unstable_by(mid, |a, b| a.total_cmp(b));
    *v as f64
}

/// Brightest pixel within `radius` of each expected location. Fails if one
/// is not brighter than `floor_factor` times the image median magnitude.
pub fn find_peaks(
    image: &SceneMatrix,
    expected: &[(usize, usize)],
    radius: usize,
    floor_factor: f64,
) -> Result<Vec<(usize, usize)>> {
    let floor = floor_factor * median_magnitude(image);
    expected
        .iter()
        .map(|&(r, c)| {
            if r >= image.rows() || c >= image.cols() {
                return Err(Error::RegionOutOfBounds);
            }
            let (mut best, mut at) = (-1.0f64, (r, c));
            for rr in r.saturating_sub(radius)..=(r + radius).min(image.rows() - 1) {
                for cc in c.saturating_sub(radius)..=(c + radius).min(image.cols() - 1) {
                    let m = power(image.get(rr, cc));
                    if m > best {
                        best = m;
                        at = (rr, cc);
                    }
                }
            }
            if best.sqrt() < floor {
                return Err(Error::PeakBelowFloor { row: r, col: c });
            }
            Ok(at)
        })
        .collect()
}
