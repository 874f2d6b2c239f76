use serde::{Deserialize, Serialize};

use super::metrics::{
    find_peaks, islr, l2_relative_error, max_abs_error, pslr, target_snr, Window,
};
use crate::buffer::SceneMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityOptions {
    /// Peak search radius around each expected pixel.
    pub search_radius: usize,
    /// Half size of the square SNR peak window.
    pub peak_half: usize,
    /// Side of the corner noise block.
    pub noise_block: usize,
    /// Peaks must exceed this multiple of the median magnitude.
    pub floor_factor: f64,
    /// Half length of the range and azimuth cuts.
    pub cut_half: usize,
}

impl Default for QualityOptions {
    fn default() -> Self {
        Self {
            search_radius: 2,
            peak_half: 4,
            noise_block: 32,
            floor_factor: 5.0,
            cut_half: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetMetrics {
    pub expected: (usize, usize),
    pub pixel: (usize, usize),
    pub snr_db: f64,
    /// Range cut. `None` when the cut has no sidelobes.
    pub pslr_db: Option<f64>,
    pub islr_db: Option<f64>,
    pub azimuth_pslr_db: Option<f64>,
    pub azimuth_islr_db: Option<f64>,
}

/// First image corner whose `block` square misses every window.
pub fn noise_window(image: &SceneMatrix, block: usize, avoid: &[Window]) -> Result<Window> {
    let (r, c) = (image.rows(), image.cols());
    if block == 0 || block > r || block > c {
        return Err(Error::RegionOutOfBounds);
    }
    [
        (0, 0),
        (0, c - block),
        (r - block, 0),
        (r - block, c - block),
    ]
    .into_iter()
    .map(|(r0, c0)| Window::new(r0, c0, block, block))
    .find(|w| avoid.iter().all(|a| !a.overlaps(w)))
    .ok_or(Error::RegionOverlap)
}

fn cut(values: impl Iterator<Item = f64>) -> Vec<f64> {
    values.collect()
}

fn clip(centre: usize, half: usize, len: usize) -> std::ops::Range<usize> {
    centre.saturating_sub(half)..(centre + half + 1).min(len)
}

fn clipped_window(image: &SceneMatrix, row: usize, col: usize, half: usize) -> Window {
    let r = clip(row, half, image.rows());
    let c = clip(col, half, image.cols());
    Window::new(r.start, c.start, r.len(), c.len())
}

/// Locate and measure every expected target.
pub fn analyze_targets(
    image: &SceneMatrix,
    expected: &[(usize, usize)],
    opts: &QualityOptions,
) -> Result<Vec<TargetMetrics>> {
    let peaks = find_peaks(image, expected, opts.search_radius, opts.floor_factor)?;
    let windows: Vec<Window> = peaks
        .iter()
        .map(|&(r, c)| clipped_window(image, r, c, opts.peak_half))
        .collect();
    let noise = noise_window(image, opts.noise_block, &windows)?;
    let opt = |r: Result<f64>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::NoSidelobeFound) => Ok(None),
        Err(e) => Err(e),
    };
    expected
        .iter()
        .zip(&peaks)
        .zip(&windows)
        .map(|((&exp, &(r, c)), &w)| {
            let range_cut = cut(image.row(r)[clip(c, opts.cut_half, image.cols())]
                .iter()
                .map(|v| v.norm() as f64));
            let az_cut =
                cut(clip(r, opts.cut_half, image.rows()).map(|rr| image.get(rr, c).norm() as f64));
            Ok(TargetMetrics {
                expected: exp,
                pixel: (r, c),
                snr_db: target_snr(image, w, noise)?,
                pslr_db: opt(pslr(&range_cut))?,
                islr_db: opt(islr(&range_cut))?,
                azimuth_pslr_db: opt(pslr(&az_cut))?,
                azimuth_islr_db: opt(islr(&az_cut))?,
            })
        })
        .collect()
}

/// Comparison of a test image against a reference, with per-target
/// metrics for both and the test-minus-reference SNR delta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub l2_relative_error: f64,
    pub max_abs_error: f64,
    pub targets: Vec<TargetMetrics>,
    pub reference_targets: Vec<TargetMetrics>,
    pub snr_delta_db: Vec<f64>,
}

impl QualityReport {
    pub fn compare(
        image: &SceneMatrix,
        reference: &SceneMatrix,
        expected: &[(usize, usize)],
        opts: &QualityOptions,
    ) -> Result<Self> {
        let l2 = l2_relative_error(image, reference)?;
        let max_abs = max_abs_error(image, reference)?;
        let targets = analyze_targets(image, expected, opts)?;
        let reference_targets = analyze_targets(reference, expected, opts)?;
        let snr_delta_db = targets
            .iter()
            .zip(&reference_targets)
            .map(|(a, b)| a.snr_db - b.snr_db)
            .collect();
        Ok(Self {
            l2_relative_error: l2,
            max_abs_error: max_abs,
            targets,
            reference_targets,
            snr_delta_db,
        })
    }

    pub fn max_abs_snr_delta(&self) -> f64 {
        self.snr_delta_db.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Human-readable table, 3 significant digits.
    pub fn render_table(&self, label: &str, reference_label: &str) -> String {
        let mut out = String::new();
        let w = 26;
        out.push_str(&format!(
            "{:<w$} {:>12} {:>12}\n",
            "metric", label, reference_label
        ));
        for (i, (a, b)) in self.targets.iter().zip(&self.reference_targets).enumerate() {
            let name = format!("target {i} ({},{}) SNR dB", a.pixel.0, a.pixel.1);
            out.push_str(&format!(
                "{:<w$} {:>12} {:>12}\n",
                name,
                sig3(a.snr_db),
                sig3(b.snr_db)
            ));
            out.push_str(&format!(
                "{:<w$} {:>12} {:>12}\n",
                "  range PSLR dB",
                opt3(a.pslr_db),
                opt3(b.pslr_db)
            ));
            out.push_str(&format!(
                "{:<w$} {:>12} {:>12}\n",
                "  range ISLR dB",
                opt3(a.islr_db),
                opt3(b.islr_db)
            ));
        }
        out.push_str(&format!(
            "{:<w$} {:>12}\n",
            "L2 relative error",
            sig3(self.l2_relative_error)
        ));
        out.push_str(&format!(
            "{:<w$} {:>12}\n",
            "max absolute error",
            sig3(self.max_abs_error)
        ));
        out.push_str(&format!(
            "{:<w$} {:>12}\n",
            "max |SNR delta| dB",
            sig3(self.max_abs_snr_delta())
        ));
        out
    }
}

fn opt3(v: Option<f64>) -> String {
    v.map(sig3).unwrap_or_else(|| "-".into())
}

/// Three significant digits, switching to exponent form for very small or
/// large magnitudes.
pub(crate) fn sig3(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-3..6).contains(&mag) {
        format!("{v:.2e}")
    } else {
        let decimals = (2 - mag).max(0) as usize;
        format!("{v:.decimals$}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex32;

    fn planted() -> SceneMatrix {
        let mut img = SceneMatrix::new(64, 64, vec![Complex32::new(0.01, 0.0); 64 * 64]).unwrap();
        for (r, c) in [(20, 20), (40, 44)] {
            // little sinc-like profile in both directions
            for (d, a) in [
                (-3i64, 0.1f32),
                (-2, 0.0),
                (-1, 0.6),
                (0, 1.0),
                (1, 0.6),
                (2, 0.0),
                (3, 0.1),
            ] {
                img.set(r, (c as i64 + d) as usize, Complex32::new(a, 0.0));
                img.set((r as i64 + d) as usize, c, Complex32::new(a, 0.0));
            }
        }
        img
    }

    #[test]
    fn identical_images_report_zero() {
        let img = planted();
        let r = QualityReport::compare(
            &img,
            &img,
            &[(20, 20), (40, 43)],
            &QualityOptions::default(),
        )
        .unwrap();
        assert_eq!(r.l2_relative_error, 0.0);
        assert_eq!(r.max_abs_error, 0.0);
        assert_eq!(r.targets.len(), 2);
        assert_eq!(r.targets[1].pixel, (40, 44));
        assert!(r.snr_delta_db.iter().all(|&d| d == 0.0));
        assert!(r.targets[0].snr_db.is_finite());
        let back = QualityReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        let table = r.render_table("fused", "unfused");
        assert!(table.contains("L2 relative error"));
    }

    #[test]
    fn noise_window_avoids_targets() {
        let img = planted();
        let w = noise_window(&img, 16, &[Window::centered(5, 5, 4)]).unwrap();
        assert_eq!((w.row0, w.col0), (0, 48));
        assert!(noise_window(&img, 64, &[Window::centered(5, 5, 4)]).is_err());
    }

    #[test]
    fn sig3_formats() {
        assert_eq!(sig3(47.345), "47.3");
        assert_eq!(sig3(-13.262), "-13.3");
        assert_eq!(sig3(0.5), "0.500");
        assert_eq!(sig3(2.44e-7), "2.44e-7");
    }
}
