//! Point-target raw data simulation.
//!
//! Each azimuth line `i` sits at slow time `eta_i`. A target at slant range
//! `R_t` and along-track position `x_t` contributes, while it is inside the
//! illuminated aperture, the chirp delayed by `2 R(eta) / c` with
//! `R(eta) = sqrt(R_t^2 + (v eta - x_t)^2)` (stop-and-go) and carrier phase
//! `exp(-i 4 pi R(eta) / lambda)`.

use std::f64::consts::PI;

use num_complex::{Complex32, Complex64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{SarGeometry, SPEED_OF_LIGHT};
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointTarget {
    pub label: String,
    /// Slant-range offset from `R_0`.
    pub range_offset_m: f64,
    /// Along-track offset from the scene centre line.
    pub azimuth_offset_m: f64,
    pub amplitude: f64,
}

impl PointTarget {
    pub fn new(label: impl Into<String>, range_offset_m: f64, azimuth_offset_m: f64) -> Self {
        Self {
            label: label.into(),
            range_offset_m,
            azimuth_offset_m,
            amplitude: 1.0,
        }
    }

    pub fn slant_range_m(&self, geom: &SarGeometry) -> f64 {
        geom.range0_m + self.range_offset_m
    }

    /// Fractional `(row, col)` pixel at which the target should focus.
    pub fn pixel(&self, geom: &SarGeometry, n_a: usize, n_r: usize) -> (f64, f64) {
        (
            (n_a / 2) as f64 + self.azimuth_offset_m / geom.azimuth_cell_m(),
            (n_r / 2) as f64 + self.range_offset_m / geom.range_cell_m(),
        )
    }

    /// Nearest integer pixel.
    pub fn expected_pixel(&self, geom: &SarGeometry, n_a: usize, n_r: usize) -> (usize, usize) {
        let (r, c) = self.pixel(geom, n_a, n_r);
        (r.round().max(0.0) as usize, c.round().max(0.0) as usize)
    }
}

/// Five targets: centre, range offset, azimuth offset, diagonal offset and a
/// far offset toward the near/early corner. The first four sit one eighth of
/// the scene from centre, the last at 40% of the half extent. All land on
/// integer pixels.
pub fn default_targets(geom: &SarGeometry, n_a: usize, n_r: usize) -> Vec<PointTarget> {
    let (da, dr) = ((n_a / 8) as f64, (n_r / 8) as f64);
    let far_a = (0.4 * (n_a / 2) as f64).round();
    let far_r = (0.4 * (n_r / 2) as f64).round();
    let (ra, rr) = (geom.azimuth_cell_m(), geom.range_cell_m());
    vec![
        PointTarget::new("center", 0.0, 0.0),
        PointTarget::new("range offset", dr * rr, 0.0),
        PointTarget::new("azimuth offset", 0.0, da * ra),
        PointTarget::new("diagonal offset", dr * rr, da * ra),
        PointTarget::new("far offset", -far_r * rr, -far_a * ra),
    ]
}

/// `noise_snr_db` value that disables noise in [`simulate_scene`].
pub const NOISELESS: f64 = f64::INFINITY;

/// Noiseless echo of every target on azimuth line `line`, accumulated in
/// target order.
pub(crate) fn echo_line(
    geom: &SarGeometry,
    targets: &[PointTarget],
    line: usize,
    n_a: usize,
    n_r: usize,
    out: &mut [Complex64],
) {
    out.fill(Complex64::new(0.0, 0.0));
    let eta = geom.azimuth_time_s(line, n_a);
    let x_p = geom.velocity_mps * eta;
    let lambda = geom.wavelength_m();
    let k_r = geom.range_fm_rate();
    let dr = geom.range_cell_m();
    let r_near = geom.near_range_m(n_r);
    let half_pulse = geom.pulse_dur_s / 2.0;
    for t in targets {
        let r_t = t.slant_range_m(geom);
        let dx = x_p - t.azimuth_offset_m;
        if dx.abs() > geom.aperture_length_m(r_t) / 2.0 {
            continue;
        }
        let r = (r_t * r_t + dx * dx).sqrt();
        let carrier = Complex64::from_polar(t.amplitude, -4.0 * PI * r / lambda);
        let first = ((r - r_near) / dr).ceil().max(0.0) as usize;
        for (k, o) in out.iter_mut().enumerate().skip(first) {
            let u = 2.0 * (r_near + k as f64 * dr - r) / SPEED_OF_LIGHT;
            if u > geom.pulse_dur_s + 1e-15 {
                break;
            }
            let tc = u - half_pulse;
            *o += carrier * Complex64::from_polar(1.0, PI * k_r * tc * tc);
        }
    }
}

fn check_targets(
    geom: &SarGeometry,
    targets: &[PointTarget],
    n_a: usize,
    n_r: usize,
) -> Result<()> {
    for (index, t) in targets.iter().enumerate() {
        let (row, col) = t.pixel(geom, n_a, n_r);
        let inside = row > 0.0 && row < (n_a - 1) as f64 && col > 0.0 && col < (n_r - 1) as f64;
        if !inside || !t.amplitude.is_finite() {
            return Err(Error::TargetOutOfScene {
                index,
                row,
                col,
                rows: n_a,
                cols: n_r,
            });
        }
    }
    Ok(())
}

fn noiseless(
    geom: &SarGeometry,
    targets: &[PointTarget],
    n_a: usize,
    n_r: usize,
) -> Vec<Vec<Complex64>> {
    (0..n_a)
        .into_par_iter()
        .map(|line| {
            let mut row = vec![Complex64::new(0.0, 0.0); n_r];
            echo_line(geom, targets, line, n_a, n_r, &mut row);
            row
        })
        .collect()
}

/// Mean `|s|^2` over samples where the noiseless signal is non-zero.
/// Per-line partial sums are combined sequentially so the result does not
/// depend on the thread count.
fn support_power(lines: &[Vec<Complex64>]) -> f64 {
    let partial: Vec<(f64, usize)> = lines
        .par_iter()
        .map(|l| {
            l.iter()
                .filter(|v| v.norm_sqr() > 0.0)
                .fold((0.0, 0), |(s, c), v| (s + v.norm_sqr(), c + 1))
        })
        .collect();
    let (sum, count) = partial
        .iter()
        .fold((0.0, 0), |(s, c), &(ps, pc)| (s + ps, c + pc));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Per-component noise standard deviation for a requested SNR.
pub fn noise_sigma(signal_power: f64, snr_db: f64) -> f64 {
    if snr_db.is_infinite() && snr_db > 0.0 {
        return 0.0;
    }
    (signal_power / 10f64.powf(snr_db / 10.0) / 2.0).sqrt()
}

/// Simulated raw scene, `n_a` azimuth lines by `n_r` range samples.
///
/// Complex white Gaussian noise is added at `noise_snr_db` relative to the
/// mean noiseless power over the signal support; pass [`NOISELESS`] to skip
/// it. Line `i` draws its noise from ChaCha stream `i` of `seed`, so the
/// scene is bit-identical for a given seed regardless of thread count.
pub fn simulate_scene(
    geom: &SarGeometry,
    targets: &[PointTarget],
    n_a: usize,
    n_r: usize,
    noise_snr_db: f64,
    seed: u64,
) -> Result<SceneMatrix> {
    geom.validate()?;
    if !n_a.is_power_of_two() || !n_r.is_power_of_two() {
        return Err(Error::NotPowerOfTwo {
            rows: n_a,
            cols: n_r,
        });
    }
    let samples = geom.pulse_samples();
    if samples > n_r {
        return Err(Error::PulseTooLong { samples, n: n_r });
    }
    if noise_snr_db.is_nan() {
        return Err(Error::InvalidGeometry("noise SNR is NaN".into()));
    }
    check_targets(geom, targets, n_a, n_r)?;

    let lines = noiseless(geom, targets, n_a, n_r);
    let sigma = noise_sigma(support_power(&lines), noise_snr_db);
    let noise = (sigma > 0.0).then(|| Normal::new(0.0, sigma).expect("finite sigma"));

    let data: Vec<Complex32> = lines
        .into_par_iter()
        .enumerate()
        .flat_map_iter(|(i, line)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            line.into_iter().map(move |s| {
                let v = match &noise {
                    Some(d) => s + Complex64::new(d.sample(&mut rng), d.sample(&mut rng)),
                    None => s,
                };
                Complex32::new(v.re as f32, v.im as f32)
            })
        })
        .collect();
    SceneMatrix::new(n_a, n_r, data)
}

/// Noiseless companion of [`simulate_scene`] in float64, for calibration
/// and oracle checks.
pub fn simulate_noiseless_f64(
    geom: &SarGeometry,
    targets: &[PointTarget],
    n_a: usize,
    n_r: usize,
) -> Vec<Vec<Complex64>> {
    noiseless(geom, targets, n_a, n_r)
}

/// Instantaneous slant range of `target` at azimuth line `line`.
pub fn slant_range_at(geom: &SarGeometry, target: &PointTarget, line: usize, n_a: usize) -> f64 {
    let dx = geom.velocity_mps * geom.azimuth_time_s(line, n_a) - target.azimuth_offset_m;
    let r_t = target.slant_range_m(geom);
    (r_t * r_t + dx * dx).sqrt()
}
