//! Chirp replica and the range / azimuth matched filters.

use std::f64::consts::PI;

use num_complex::Complex32;
use serde::{Deserialize, Serialize};

use super::SarGeometry;
use crate::buffer::ComplexBuffer;
use crate::error::{Error, Result};
use crate::fft::FftPlan;

/// Baseband linear-FM pulse `exp(i pi K_r t^2)` for `|t| <= T_p/2`, laid out
/// from sample 0 (`t_k = k / f_s - T_p / 2`) and zero-padded to `n`.
pub fn make_chirp(geom: &SarGeometry, n: usize) -> Result<ComplexBuffer> {
    chirp_with_rate(
        geom.range_fm_rate(),
        geom.pulse_dur_s,
        geom.sample_rate_hz,
        n,
    )
}

pub(crate) fn chirp_with_rate(
    k_r: f64,
    pulse_dur_s: f64,
    sample_rate_hz: f64,
    n: usize,
) -> Result<ComplexBuffer> {
    if !(pulse_dur_s > 0.0 && sample_rate_hz > 0.0) {
        return Err(Error::InvalidGeometry(
            "pulse duration and sample rate must be positive".into(),
        ));
    }
    let samples = (pulse_dur_s * sample_rate_hz + 1e-9).floor() as usize + 1;
    if samples > n {
        return Err(Error::PulseTooLong { samples, n });
    }
    let mut out = vec![Complex32::new(0.0, 0.0); n];
    for (k, v) in out.iter_mut().take(samples).enumerate() {
        let t = k as f64 / sample_rate_hz - pulse_dur_s / 2.0;
        let (s, c) = (PI * k_r * t * t).sin_cos();
        *v = Complex32::new(c as f32, s as f32);
    }
    Ok(ComplexBuffer::from_interleaved(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FilterKind {
    Range,
    Azimuth,
}

/// Frequency-domain filter taps for one line length.
#[derive(Debug, Clone)]
pub struct MatchedFilter {
    pub kind: FilterKind,
    spectrum: ComplexBuffer,
    /// Reference slant range for azimuth filters.
    pub range_bin_m: Option<f64>,
}

impl MatchedFilter {
    pub fn new(kind: FilterKind, taps: Vec<Complex32>, range_bin_m: Option<f64>) -> Self {
        Self {
            kind,
            spectrum: ComplexBuffer::from_interleaved(taps),
            range_bin_m,
        }
    }

    pub fn len(&self) -> usize {
        self.spectrum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spectrum.is_empty()
    }

    pub fn spectrum(&self) -> &ComplexBuffer {
        &self.spectrum
    }

    pub fn taps(&self) -> &[Complex32] {
        self.spectrum
            .as_interleaved()
            .expect("filters are stored interleaved")
    }
}

/// `H_r = conj(FFT(chirp))`, the chirp zero-padded to `n`.
pub fn make_range_filter(geom: &SarGeometry, n: usize, plan: &FftPlan) -> Result<MatchedFilter> {
    if plan.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: plan.len(),
        });
    }
    let chirp = make_chirp(geom, n)?.into_vec();
    let mut spectrum = vec![Complex32::new(0.0, 0.0); n];
    plan.forward_into(&chirp, &mut spectrum, &mut plan.scratch())?;
    for v in &mut spectrum {
        *v = v.conj();
    }
    Ok(MatchedFilter::new(FilterKind::Range, spectrum, None))
}

/// `H_a(f_a) = exp(-i pi f_a^2 / K_a(R))` over the signed Doppler bins of
/// an `n_a`-point transform.
///
/// The simulated azimuth history is `exp(-i 4 pi R(eta) / lambda)`, a chirp
/// of rate `-K_a` whose spectrum carries `exp(+i pi f^2 / K_a)`; the
/// negative exponent here cancels it.
pub fn make_azimuth_filter(
    geom: &SarGeometry,
    n_a: usize,
    range_bin_m: f64,
) -> Result<MatchedFilter> {
    if !(range_bin_m.is_finite() && range_bin_m > 0.0) {
        return Err(Error::InvalidRange(range_bin_m));
    }
    if !n_a.is_power_of_two() {
        return Err(Error::UnsupportedLength {
            n: n_a,
            family: "azimuth filter",
        });
    }
    let k_a = geom.azimuth_fm_rate(range_bin_m);
    let taps = (0..n_a)
        .map(|k| {
            let f = geom.azimuth_frequency_hz(k, n_a);
            let (s, c) = (-PI * f * f / k_a).sin_cos();
            Complex32::new(c as f32, s as f32)
        })
        .collect();
    Ok(MatchedFilter::new(
        FilterKind::Azimuth,
        taps,
        Some(range_bin_m),
    ))
}
