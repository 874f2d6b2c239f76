//! FFT kernel families.
//!
//! | family            | layout      | stages                         |
//! |-------------------|-------------|--------------------------------|
//! | `StockhamRadix4`  | interleaved | `log4 n` out-of-place passes   |
//! | `StockhamRadix8`  | interleaved | `log8 n` out-of-place passes   |
//! | `CtDifRadix8`     | split       | `log8 n` in-place DIF stages   |
//!
//! The forward transform is `X[k] = sum_j x[j] exp(-2 pi i jk / n)`. The
//! inverse reuses the forward kernel unchanged as `conj(F(conj(x))) / n`,
//! with the trailing conjugate and scale folded into the final store.

mod butterfly;
mod ct_dif;
mod stockham;
mod tile;

use num_complex::Complex32;
use serde::{Deserialize, Serialize};

use crate::buffer::{ComplexBuffer, Layout, TwiddleTable};
use crate::error::{Error, Result};

pub use ct_dif::{ct_dif_stage, digit_reverse_permutation};
pub use tile::{lane_to_position, tile_butterfly_8x8, Dft8Matrix, LanePosition, Mat8, SIMD_LANES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FftFamily {
    #[serde(rename = "stockham-r4")]
    StockhamRadix4,
    #[serde(rename = "stockham-r8")]
    StockhamRadix8,
    #[serde(rename = "ct-dif-r8")]
    CtDifRadix8,
}

impl FftFamily {
    pub const ALL: [FftFamily; 3] = [
        FftFamily::StockhamRadix4,
        FftFamily::StockhamRadix8,
        FftFamily::CtDifRadix8,
    ];

    pub fn radix(self) -> usize {
        match self {
            FftFamily::StockhamRadix4 => 4,
            FftFamily::StockhamRadix8 | FftFamily::CtDifRadix8 => 8,
        }
    }

    pub fn layout(self) -> Layout {
        match self {
            FftFamily::StockhamRadix4 | FftFamily::StockhamRadix8 => Layout::Interleaved,
            FftFamily::CtDifRadix8 => Layout::Split,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FftFamily::StockhamRadix4 => "stockham-r4",
            FftFamily::StockhamRadix8 => "stockham-r8",
            FftFamily::CtDifRadix8 => "ct-dif-r8",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn supports(self, n: usize) -> bool {
        ct_dif::exact_log(n, self.radix()).is_some()
    }

    /// Preferred Stockham family for a pipeline line of length `n`: radix 4
    /// where possible, radix 8 otherwise.
    pub fn stockham_for(n: usize) -> Option<Self> {
        [FftFamily::StockhamRadix4, FftFamily::StockhamRadix8]
            .into_iter()
            .find(|f| f.supports(n))
    }
}

impl std::fmt::Display for FftFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageDesc {
    pub radix: usize,
    pub stride: usize,
    pub uses_tile_butterfly: bool,
}

/// Precomputed stage list, twiddles and (for DIF) output permutation.
#[derive(Debug, Clone)]
pub struct FftPlan {
    n: usize,
    family: FftFamily,
    stages: Vec<StageDesc>,
    twiddles: TwiddleTable,
    permutation: Option<Vec<usize>>,
    dft8: Dft8Matrix,
}

pub fn plan_fft(n: usize, family: FftFamily) -> Result<FftPlan> {
    FftPlan::new(n, family)
}

impl FftPlan {
    pub fn new(n: usize, family: FftFamily) -> Result<Self> {
        let radix = family.radix();
        let count = ct_dif::exact_log(n, radix).ok_or(Error::UnsupportedLength {
            n,
            family: family.name(),
        })?;
        let stages = match family {
            // Stockham pass s has stride r^s
            FftFamily::StockhamRadix4 | FftFamily::StockhamRadix8 => (0..count)
                .map(|s| StageDesc {
                    radix,
                    stride: radix.pow(s as u32),
                    uses_tile_butterfly: false,
                })
                .collect(),
            FftFamily::CtDifRadix8 => (1..=count)
                .map(|s| {
                    let stride = n / 8usize.pow(s as u32);
                    StageDesc {
                        radix,
                        stride,
                        uses_tile_butterfly: stride > 1,
                    }
                })
                .collect(),
        };
        let permutation = match family {
            FftFamily::CtDifRadix8 => Some(digit_reverse_permutation(n, 8)?),
            _ => None,
        };
        Ok(Self {
            n,
            family,
            stages,
            twiddles: TwiddleTable::new(n)?,
            permutation,
            dft8: Dft8Matrix::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn family(&self) -> FftFamily {
        self.family
    }

    pub fn stages(&self) -> &[StageDesc] {
        &self.stages
    }

    pub fn twiddles(&self) -> &TwiddleTable {
        &self.twiddles
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    pub fn dft8(&self) -> &Dft8Matrix {
        &self.dft8
    }

    /// Working storage for line transforms with this plan.
    pub fn scratch(&self) -> LineScratch {
        LineScratch::new(self.n)
    }

    fn check_line(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: len,
            });
        }
        Ok(())
    }

    /// Load `src` (through `load`) into the scratch tile. Nothing else is
    /// read from `src` afterwards, so the destination may be the same line.
    fn load(
        &self,
        src: &[Complex32],
        scratch: &mut LineScratch,
        load: impl Fn(Complex32) -> Complex32,
    ) {
        debug_assert_eq!(src.len(), self.n);
        scratch.ensure(self.n);
        match self.family {
            FftFamily::StockhamRadix4 | FftFamily::StockhamRadix8 => {
                for (t, s) in scratch.a[..self.n].iter_mut().zip(src) {
                    *t = load(*s);
                }
            }
            FftFamily::CtDifRadix8 => {
                let (re, im) = (&mut scratch.re[..self.n], &mut scratch.im[..self.n]);
                for ((r, i), s) in re.iter_mut().zip(im.iter_mut()).zip(src) {
                    let v = load(*s);
                    *r = v.re;
                    *i = v.im;
                }
            }
        }
    }

    /// Run every stage on the loaded tile and write the natural-order result
    /// to `dst` through `store(k, value)`.
    fn finish(
        &self,
        dst: &mut [Complex32],
        scratch: &mut LineScratch,
        store: impl Fn(usize, Complex32) -> Complex32,
    ) {
        debug_assert_eq!(dst.len(), self.n);
        match self.family {
            FftFamily::StockhamRadix4 | FftFamily::StockhamRadix8 => {
                let (a, b) = (&mut scratch.a[..self.n], &mut scratch.b[..self.n]);
                let tw = self.twiddles.factors();
                if self.family == FftFamily::StockhamRadix4 {
                    stockham::execute::<4>(a, b, dst, tw, store);
                } else {
                    stockham::execute::<8>(a, b, dst, tw, store);
                }
            }
            FftFamily::CtDifRadix8 => {
                let (re, im) = (&mut scratch.re[..self.n], &mut scratch.im[..self.n]);
                let (last, inner) = self.stages.split_last().expect("at least one stage");
                debug_assert_eq!(last.stride, 1);
                for stage in inner {
                    ct_dif::run_stage(re, im, stage, &self.twiddles, &self.dft8);
                }
                let rev = self
                    .permutation
                    .as_deref()
                    .expect("DIF plan has a permutation");
                ct_dif::final_stage_reversed(re, im, rev, |k, v| dst[k] = store(k, v));
            }
        }
    }

    /// Forward transform of an interleaved line, in place.
    pub fn forward_in_place(
        &self,
        line: &mut [Complex32],
        scratch: &mut LineScratch,
    ) -> Result<()> {
        self.check_line(line.len())?;
        self.load(line, scratch, |c| c);
        self.finish(line, scratch, |_, c| c);
        Ok(())
    }

    /// Forward transform of `src` into `dst`.
    pub fn forward_into(
        &self,
        src: &[Complex32],
        dst: &mut [Complex32],
        scratch: &mut LineScratch,
    ) -> Result<()> {
        self.check_line(src.len())?;
        self.check_line(dst.len())?;
        self.load(src, scratch, |c| c);
        self.finish(dst, scratch, |_, c| c);
        Ok(())
    }

    /// Inverse transform of an interleaved line, in place.
    pub fn inverse_in_place(
        &self,
        line: &mut [Complex32],
        scratch: &mut LineScratch,
    ) -> Result<()> {
        self.check_line(line.len())?;
        let scale = 1.0 / self.n as f32;
        self.load(line, scratch, |c| c.conj());
        self.finish(line, scratch, move |_, c| c.conj() * scale);
        Ok(())
    }

    /// Inverse transform of `src` into `dst`; conjugation happens on load,
    /// and the closing conjugate and `1/n` on the final store into `dst`.
    pub fn inverse_into(
        &self,
        src: &[Complex32],
        dst: &mut [Complex32],
        scratch: &mut LineScratch,
    ) -> Result<()> {
        self.check_line(src.len())?;
        self.check_line(dst.len())?;
        let scale = 1.0 / self.n as f32;
        self.load(src, scratch, |c| c.conj());
        self.finish(dst, scratch, move |_, c| c.conj() * scale);
        Ok(())
    }
}

impl FftPlan {
    /// Forward transform of `src` with `dst[k] = store(k, X[k])`, so a
    /// pointwise operation rides along with the last stage's writes.
    pub fn forward_with(
        &self,
        src: &[Complex32],
        dst: &mut [Complex32],
        scratch: &mut LineScratch,
        store: impl Fn(usize, Complex32) -> Complex32,
    ) -> Result<()> {
        self.check_line(src.len())?;
        self.check_line(dst.len())?;
        self.load(src, scratch, |c| c);
        self.finish(dst, scratch, store);
        Ok(())
    }

    /// `dst = conj(FFT(line)) / n` for a line that already holds the
    /// conjugated input, i.e. the inverse transform minus its load-side
    /// conjugation. Stockham plans run directly on `line`, clobbering it.
    pub fn inverse_from_conjugated(
        &self,
        line: &mut [Complex32],
        dst: &mut [Complex32],
        scratch: &mut LineScratch,
    ) -> Result<()> {
        self.check_line(line.len())?;
        self.check_line(dst.len())?;
        let scale = 1.0 / self.n as f32;
        let store = move |_, c: Complex32| c.conj() * scale;
        match self.family {
            FftFamily::StockhamRadix4 | FftFamily::StockhamRadix8 => {
                scratch.ensure(self.n);
                let spare = &mut scratch.a[..self.n];
                let tw = self.twiddles.factors();
                if self.family == FftFamily::StockhamRadix4 {
                    stockham::execute::<4>(line, spare, dst, tw, store);
                } else {
                    stockham::execute::<8>(line, spare, dst, tw, store);
                }
            }
            FftFamily::CtDifRadix8 => {
                self.load(line, scratch, |c| c);
                self.finish(dst, scratch, store);
            }
        }
        Ok(())
    }
}

/// Per-worker working buffers for line transforms: a ping-pong pair for
/// the Stockham kernels and a split pair for the DIF kernel.
#[derive(Debug, Clone, Default)]
pub struct LineScratch {
    a: Vec<Complex32>,
    b: Vec<Complex32>,
    re: Vec<f32>,
    im: Vec<f32>,
}

impl LineScratch {
    pub fn new(n: usize) -> Self {
        let mut s = Self::default();
        s.ensure(n);
        s
    }

    fn ensure(&mut self, n: usize) {
        let zero = Complex32::new(0.0, 0.0);
        if self.a.len() < n {
            self.a.resize(n, zero);
            self.b.resize(n, zero);
            self.re.resize(n, 0.0);
            self.im.resize(n, 0.0);
        }
    }
}

fn check_buffer(plan: &FftPlan, buf: &ComplexBuffer) -> Result<()> {
    plan.check_line(buf.len())?;
    let expected = plan.family.layout();
    if buf.layout() != expected {
        return Err(Error::LayoutMismatch {
            expected,
            actual: buf.layout(),
        });
    }
    Ok(())
}

fn transform_buffer(plan: &FftPlan, buf: &ComplexBuffer, inverse: bool) -> Result<ComplexBuffer> {
    check_buffer(plan, buf)?;
    let src = buf.to_vec();
    let mut out = vec![Complex32::new(0.0, 0.0); plan.n];
    let mut scratch = plan.scratch();
    if inverse {
        plan.inverse_into(&src, &mut out, &mut scratch)?;
    } else {
        plan.forward_into(&src, &mut out, &mut scratch)?;
    }
    Ok(ComplexBuffer::from_interleaved(out).into_layout(buf.layout()))
}

/// Natural-order forward DFT. The buffer layout must match the family:
/// interleaved for Stockham, split for CT-DIF.
pub fn fft_forward(plan: &FftPlan, buf: &ComplexBuffer) -> Result<ComplexBuffer> {
    transform_buffer(plan, buf, false)
}

/// `conj(fft(conj(x))) / n`.
pub fn ifft(plan: &FftPlan, buf: &ComplexBuffer) -> Result<ComplexBuffer> {
    transform_buffer(plan, buf, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// O(n^2) float64 DFT, twiddles indexed by `jk mod n`.
    fn naive_dft(x: &[Complex32]) -> Vec<Complex64> {
        let n = x.len();
        let w: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| Complex64::new(v.re as f64, v.im as f64) * w[(j * k) % n])
                    .sum()
            })
            .collect()
    }

    fn random_line(n: usize, rng: &mut impl Rng) -> Vec<Complex32> {
        (0..n)
            .map(|_| Complex32::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    fn max_rel_err(got: &[Complex32], want: &[Complex64]) -> f64 {
        let scale = want.iter().map(|w| w.norm()).fold(0.0, f64::max);
        got.iter()
            .zip(want)
            .map(|(g, w)| (Complex64::new(g.re as f64, g.im as f64) - w).norm())
            .fold(0.0, f64::max)
            / scale
    }

    fn forward(plan: &FftPlan, x: &[Complex32]) -> Vec<Complex32> {
        let buf = ComplexBuffer::from_interleaved(x.to_vec()).into_layout(plan.family().layout());
        fft_forward(plan, &buf).unwrap().to_vec()
    }

    #[test]
    fn plan_shapes() {
        let p = plan_fft(4096, FftFamily::StockhamRadix4).unwrap();
        assert_eq!(p.stages().len(), 6);
        assert!(p.stages().iter().all(|s| s.radix == 4));

        let p = plan_fft(4096, FftFamily::CtDifRadix8).unwrap();
        let strides: Vec<_> = p.stages().iter().map(|s| s.stride).collect();
        assert_eq!(strides, [512, 64, 8, 1]);
        let tiles: Vec<_> = p.stages().iter().map(|s| s.uses_tile_butterfly).collect();
        assert_eq!(tiles, [true, true, true, false]);

        let p = plan_fft(64, FftFamily::CtDifRadix8).unwrap();
        assert_eq!(
            p.stages().iter().map(|s| s.stride).collect::<Vec<_>>(),
            [8, 1]
        );

        for family in FftFamily::ALL {
            for n in [8, 16, 64, 256, 512, 1024, 4096] {
                if let Ok(p) = plan_fft(n, family) {
                    let prod: usize = p.stages().iter().map(|s| s.radix).product();
                    assert_eq!(prod, n);
                }
            }
        }
    }

    #[test]
    fn plan_rejects_incompatible_lengths() {
        for (n, family) in [
            (512, FftFamily::StockhamRadix4),
            (256, FftFamily::CtDifRadix8),
            (1024, FftFamily::StockhamRadix8),
            (0, FftFamily::CtDifRadix8),
            (4, FftFamily::CtDifRadix8),
        ] {
            assert!(
                matches!(plan_fft(n, family), Err(Error::UnsupportedLength { .. })),
                "{n} {family}"
            );
        }
    }

    #[test]
    fn impulse_and_constant() {
        for family in [FftFamily::StockhamRadix8, FftFamily::CtDifRadix8] {
            let plan = plan_fft(8, family).unwrap();
            let mut x = vec![Complex32::new(0.0, 0.0); 8];
            x[0] = Complex32::new(1.0, 0.0);
            for v in forward(&plan, &x) {
                assert!((v - Complex32::new(1.0, 0.0)).norm() < 1e-7);
            }
            let c = Complex32::new(0.75, -1.5);
            let y = forward(&plan, &[c; 8]);
            assert!((y[0] - c * 8.0).norm() < 1e-6);
            assert!(y[1..].iter().all(|v| v.norm() < 1e-6));
        }
    }

    #[test]
    fn inverse_small_cases() {
        for family in [FftFamily::StockhamRadix8, FftFamily::CtDifRadix8] {
            let plan = plan_fft(8, family).unwrap();
            let ones = ComplexBuffer::from_interleaved(vec![Complex32::new(1.0, 0.0); 8])
                .into_layout(family.layout());
            let y = ifft(&plan, &ones).unwrap().to_vec();
            assert!((y[0] - Complex32::new(1.0, 0.0)).norm() < 1e-7);
            assert!(y[1..].iter().all(|v| v.norm() < 1e-7));

            let mut spike = vec![Complex32::new(0.0, 0.0); 8];
            spike[0] = Complex32::new(8.0, 0.0);
            let spike = ComplexBuffer::from_interleaved(spike).into_layout(family.layout());
            for v in ifft(&plan, &spike).unwrap().iter() {
                assert!((v - Complex32::new(1.0, 0.0)).norm() < 1e-7);
            }
        }
    }

    #[test]
    fn every_family_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for family in FftFamily::ALL {
            for n in [4, 8, 16, 64, 256, 512, 1024, 4096] {
                let Ok(plan) = plan_fft(n, family) else {
                    continue;
                };
                let x = random_line(n, &mut rng);
                let err = max_rel_err(&forward(&plan, &x), &naive_dft(&x));
                assert!(err < 1e-5, "{family} n={n} err={err:e}");
            }
        }
    }

    #[test]
    fn layout_must_match_family() {
        let plan = plan_fft(64, FftFamily::CtDifRadix8).unwrap();
        let inter = ComplexBuffer::zeros(64, Layout::Interleaved);
        assert!(matches!(
            fft_forward(&plan, &inter),
            Err(Error::LayoutMismatch { .. })
        ));
        let plan = plan_fft(64, FftFamily::StockhamRadix4).unwrap();
        let split = ComplexBuffer::zeros(64, Layout::Split);
        assert!(matches!(
            ifft(&plan, &split),
            Err(Error::LayoutMismatch { .. })
        ));
        let short = ComplexBuffer::zeros(16, Layout::Interleaved);
        assert!(matches!(
            fft_forward(&plan, &short),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn single_dif_stage_at_n8_is_the_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random_line(8, &mut rng);
        let plan = plan_fft(8, FftFamily::CtDifRadix8).unwrap();
        let mut buf = ComplexBuffer::from_interleaved(x.clone()).into_layout(Layout::Split);
        ct_dif_stage(&mut buf, &plan.stages()[0], plan.twiddles()).unwrap();
        assert!(max_rel_err(&buf.to_vec(), &naive_dft(&x)) < 1e-6);
    }

    #[test]
    fn dif_stages_then_reversal_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [64, 512, 4096] {
            let x = random_line(n, &mut rng);
            let plan = plan_fft(n, FftFamily::CtDifRadix8).unwrap();
            let mut buf = ComplexBuffer::from_interleaved(x.clone()).into_layout(Layout::Split);
            for stage in plan.stages() {
                ct_dif_stage(&mut buf, stage, plan.twiddles()).unwrap();
            }
            let rev = digit_reverse_permutation(n, 8).unwrap();
            let natural: Vec<_> = (0..n).map(|k| buf.get(rev[k])).collect();
            let err = max_rel_err(&natural, &naive_dft(&x));
            assert!(err < 1e-5, "n={n} err={err:e}");
        }
    }

    #[test]
    fn scalar_and_tile_stages_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = random_line(512, &mut rng);
        let plan = plan_fft(512, FftFamily::CtDifRadix8).unwrap();
        let mut tiled = ComplexBuffer::from_interleaved(x.clone()).into_layout(Layout::Split);
        let mut scalar = tiled.clone();
        for stage in plan.stages() {
            ct_dif_stage(&mut tiled, stage, plan.twiddles()).unwrap();
            let s = StageDesc {
                uses_tile_butterfly: false,
                ..*stage
            };
            ct_dif_stage(&mut scalar, &s, plan.twiddles()).unwrap();
        }
        for k in 0..512 {
            assert!((tiled.get(k) - scalar.get(k)).norm() < 1e-4);
        }
    }

    #[test]
    fn in_place_and_into_agree_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for family in FftFamily::ALL {
            let plan = plan_fft(64, family).unwrap();
            let x = random_line(64, &mut rng);
            let mut scratch = plan.scratch();
            let mut a = x.clone();
            plan.forward_in_place(&mut a, &mut scratch).unwrap();
            let mut b = vec![Complex32::new(0.0, 0.0); 64];
            plan.forward_into(&x, &mut b, &mut scratch).unwrap();
            assert_eq!(a, b);
            plan.inverse_in_place(&mut a, &mut scratch).unwrap();
            plan.inverse_into(&b.clone(), &mut b, &mut scratch).unwrap();
            assert_eq!(a, b);
            let err = a
                .iter()
                .zip(&x)
                .map(|(p, q)| (p - q).norm())
                .fold(0.0f32, f32::max);
            assert!(err < 1e-6);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]

        #[test]
        fn linearity(seed in 0u64..1000, a in -2.0f32..2.0, b in -2.0f32..2.0, pick in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = [64, 512, 4096][pick];
            let family = if n == 64 || n == 4096 { FftFamily::StockhamRadix4 } else { FftFamily::CtDifRadix8 };
            let plan = plan_fft(n, family).unwrap();
            let x = random_line(n, &mut rng);
            let y = random_line(n, &mut rng);
            let mix: Vec<_> = x.iter().zip(&y).map(|(p, q)| p * a + q * b).collect();
            let lhs = forward(&plan, &mix);
            let fx = forward(&plan, &x);
            let fy = forward(&plan, &y);
            let scale = lhs.iter().map(|v| v.norm()).fold(1e-3f32, f32::max);
            for k in 0..n {
                let rhs = fx[k] * a + fy[k] * b;
                proptest::prop_assert!((lhs[k] - rhs).norm() / scale <= 1e-4);
            }
        }

        #[test]
        fn parseval(seed in 0u64..1000, family_idx in 0usize..3) {
            let family = FftFamily::ALL[family_idx];
            let n = 4096;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_line(n, &mut rng);
            let plan = plan_fft(n, family).unwrap();
            let spec = forward(&plan, &x);
            let time: f64 = x.iter().map(|v| v.norm_sqr() as f64).sum();
            let freq: f64 = spec.iter().map(|v| v.norm_sqr() as f64).sum::<f64>() / n as f64;
            proptest::prop_assert!((time - freq).abs() / time <= 1e-3);
        }
    }
}
