use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Radar and platform parameters. Range bins are spaced `c / (2 f_s)` apart
/// with `range0_m` on the centre bin; azimuth lines are spaced `v / PRF`
/// apart with zero along-track position on the centre line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarGeometry {
    pub bandwidth_hz: f64,
    pub carrier_hz: f64,
    pub velocity_mps: f64,
    pub range0_m: f64,
    pub pulse_dur_s: f64,
    pub sample_rate_hz: f64,
    pub prf_hz: f64,
    /// Doppler bandwidth of the illuminated aperture. A target is seen while
    /// `|v eta - x_t| <= L/2` with `L = B_a lambda R_t / (2 v)`, which centres
    /// every target's azimuth spectrum on zero Doppler.
    pub doppler_bandwidth_hz: f64,
}

impl Default for SarGeometry {
    /// X-band airborne defaults sized for a 4096 x 4096 scene.
    fn default() -> Self {
        Self {
            bandwidth_hz: 100e6,
            carrier_hz: 10e9,
            velocity_mps: 100.0,
            range0_m: 20e3,
            pulse_dur_s: 10e-6,
            sample_rate_hz: 120e6,
            prf_hz: 400.0,
            doppler_bandwidth_hz: 320.0,
        }
    }
}

impl SarGeometry {
    /// Defaults scaled to an `n_a x n_r` scene: the pulse shrinks with the
    /// swath (`10 us * n_r / 4096`) and the PRF is lowered so one synthetic
    /// aperture spans at most about half the azimuth lines.
    pub fn for_scene(n_a: usize, n_r: usize) -> Self {
        let base = Self::default();
        if n_a >= 4096 && n_r >= 4096 {
            return base;
        }
        let pulse_dur_s = base.pulse_dur_s * (n_r as f64 / 4096.0).min(1.0);
        let prf_hz = (100.0 * (n_a as f64 / 512.0).sqrt()).min(base.prf_hz);
        Self {
            pulse_dur_s,
            prf_hz,
            doppler_bandwidth_hz: 0.8 * prf_hz,
            ..base
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("bandwidth_hz", self.bandwidth_hz),
            ("carrier_hz", self.carrier_hz),
            ("velocity_mps", self.velocity_mps),
            ("range0_m", self.range0_m),
            ("pulse_dur_s", self.pulse_dur_s),
            ("sample_rate_hz", self.sample_rate_hz),
            ("prf_hz", self.prf_hz),
            ("doppler_bandwidth_hz", self.doppler_bandwidth_hz),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidGeometry(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.sample_rate_hz < self.bandwidth_hz {
            return Err(Error::InvalidGeometry(format!(
                "sample rate {} Hz is below the chirp bandwidth {} Hz",
                self.sample_rate_hz, self.bandwidth_hz
            )));
        }
        if self.doppler_bandwidth_hz > self.prf_hz {
            return Err(Error::InvalidGeometry(format!(
                "Doppler bandwidth {} Hz exceeds the PRF {} Hz",
                self.doppler_bandwidth_hz, self.prf_hz
            )));
        }
        Ok(())
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_hz
    }

    /// `K_r = B / T_p`.
    pub fn range_fm_rate(&self) -> f64 {
        self.bandwidth_hz / self.pulse_dur_s
    }

    /// `K_a(R) = 2 v^2 / (lambda R)`.
    pub fn azimuth_fm_rate(&self, range_m: f64) -> f64 {
        2.0 * self.velocity_mps.powi(2) / (self.wavelength_m() * range_m)
    }

    /// Slant-range spacing of one range bin.
    pub fn range_cell_m(&self) -> f64 {
        SPEED_OF_LIGHT / (2.0 * self.sample_rate_hz)
    }

    /// Along-track spacing of one azimuth line.
    pub fn azimuth_cell_m(&self) -> f64 {
        self.velocity_mps / self.prf_hz
    }

    /// Samples `k` with `|k / f_s - T_p / 2| <= T_p / 2`.
    pub fn pulse_samples(&self) -> usize {
        (self.pulse_dur_s * self.sample_rate_hz + 1e-9).floor() as usize + 1
    }

    pub fn near_range_m(&self, n_r: usize) -> f64 {
        self.range0_m - (n_r / 2) as f64 * self.range_cell_m()
    }

    pub fn range_of_bin(&self, bin: usize, n_r: usize) -> f64 {
        self.near_range_m(n_r) + bin as f64 * self.range_cell_m()
    }

    /// Slow time of azimuth line `line`.
    pub fn azimuth_time_s(&self, line: usize, n_a: usize) -> f64 {
        (line as f64 - (n_a / 2) as f64) / self.prf_hz
    }

    /// Signed Doppler frequency of FFT bin `k` of an `n_a`-point azimuth
    /// transform, in `[-PRF/2, PRF/2)`.
    pub fn azimuth_frequency_hz(&self, k: usize, n_a: usize) -> f64 {
        let signed = if k < n_a / 2 {
            k as f64
        } else {
            k as f64 - n_a as f64
        };
        signed * self.prf_hz / n_a as f64
    }

    /// Synthetic aperture length at range `range_m`.
    pub fn aperture_length_m(&self, range_m: f64) -> f64 {
        self.doppler_bandwidth_hz * self.wavelength_m() * range_m / (2.0 * self.velocity_mps)
    }

    /// Range migration `lambda^2 R f_a^2 / (8 v^2)` in metres.
    pub fn migration_m(&self, doppler_hz: f64, range_m: f64) -> f64 {
        self.wavelength_m().powi(2) * range_m * doppler_hz.powi(2)
            / (8.0 * self.velocity_mps.powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let g = SarGeometry::default();
        g.validate().unwrap();
        assert!((g.wavelength_m() - 0.029_979_245_8).abs() < 1e-12);
        assert!((g.range_fm_rate() - 1e13).abs() < 1.0);
        let ka = g.azimuth_fm_rate(g.range0_m);
        assert!((ka - 2.0 * 1e4 / (g.wavelength_m() * 2e4)).abs() < 1e-9);
        assert_eq!(g.pulse_samples(), 1201);
        assert!((g.range_of_bin(2048, 4096) - 20e3).abs() < 1e-9);
    }

    #[test]
    fn desk_scale_fits() {
        let g = SarGeometry::for_scene(512, 512);
        g.validate().unwrap();
        assert_eq!(g.prf_hz, 100.0);
        assert!(g.pulse_samples() < 512 / 2);
        let ap_lines = g.aperture_length_m(g.range0_m) / g.azimuth_cell_m();
        assert!(ap_lines < 256.0, "{ap_lines}");
        assert_eq!(SarGeometry::for_scene(4096, 4096), SarGeometry::default());
    }

    #[test]
    fn validation_rejects() {
        let mut g = SarGeometry::default();
        g.sample_rate_hz = 50e6;
        assert!(g.validate().is_err());
        let mut g = SarGeometry::default();
        g.velocity_mps = -1.0;
        assert!(g.validate().is_err());
        let mut g = SarGeometry::default();
        g.doppler_bandwidth_hz = 1000.0;
        assert!(g.validate().is_err());
    }

    #[test]
    fn doppler_bins_signed() {
        let g = SarGeometry::for_scene(512, 512);
        assert_eq!(g.azimuth_frequency_hz(0, 512), 0.0);
        assert_eq!(g.azimuth_frequency_hz(256, 512), -50.0);
        assert!(g.azimuth_frequency_hz(255, 512) > 0.0);
    }
}
