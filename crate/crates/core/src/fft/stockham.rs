//! Out-of-place Stockham autosort kernels (radix 4 and radix 8).
//!
//! Pass `s` reads `src` with butterfly legs `l*m` apart, where `m = r^s`
//! and `l = n / (r m)`, and writes `dst` in self-sorted order:
//!
//! ```text
//! dst[k + (r j + q) m] = W_n^{j q m} * sum_p src[k + j m + p l m] W_r^{p q}
//! ```
//!
//! After the last pass the output is in natural order, so no permutation is
//! needed; the price is a second buffer to ping-pong between.

use num_complex::Complex32;

use super::butterfly::{dft4, dft8};

#[inline(always)]
fn butterfly<const R: usize>(a: [Complex32; R]) -> [Complex32; R] {
    debug_assert!(R == 4 || R == 8);
    let mut out = [Complex32::new(0.0, 0.0); R];
    if R == 4 {
        let y = dft4([a[0], a[1], a[2], a[3]]);
        out[..4].copy_from_slice(&y);
    } else {
        let y = dft8([a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]]);
        out[..8].copy_from_slice(&y);
    }
    out
}

/// One Stockham pass with stride `m`; `store(k, v)` is applied to every
/// output sample on its way into `dst[k]`.
#[inline(always)]
pub(crate) fn pass<const R: usize>(
    src: &[Complex32],
    dst: &mut [Complex32],
    m: usize,
    twiddles: &[Complex32],
    store: impl Fn(usize, Complex32) -> Complex32,
) {
    let n = src.len();
    let l = n / (R * m);
    let lm = l * m;
    for j in 0..l {
        let mut w = [Complex32::new(1.0, 0.0); R];
        for (q, wq) in w.iter_mut().enumerate().skip(1) {
            *wq = twiddles[j * q * m];
        }
        for k in 0..m {
            let base = k + j * m;
            let a: [Complex32; R] = std::array::from_fn(|p| src[base + p * lm]);
            let y = butterfly::<R>(a);
            let out = k + R * j * m;
            dst[out] = store(out, y[0]);
            for q in 1..R {
                dst[out + q * m] = store(out + q * m, y[q] * w[q]);
            }
        }
    }
}

/// Full transform of `tile` into `out`. `spare` must be as long as `tile`;
/// both are clobbered. The final pass writes straight into `out` through
/// `store`.
pub(crate) fn execute<const R: usize>(
    tile: &mut [Complex32],
    spare: &mut [Complex32],
    out: &mut [Complex32],
    twiddles: &[Complex32],
    store: impl Fn(usize, Complex32) -> Complex32,
) {
    let n = tile.len();
    let mut strides = Vec::new();
    let mut m = 1;
    while m < n {
        strides.push(m);
        m *= R;
    }
    let (last, inner) = strides.split_last().expect("n >= radix");
    let mut in_tile = true;
    for &m in inner {
        if in_tile {
            pass::<R>(tile, spare, m, twiddles, |_, c| c);
        } else {
            pass::<R>(spare, tile, m, twiddles, |_, c| c);
        }
        in_tile = !in_tile;
    }
    let src: &[Complex32] = if in_tile { tile } else { spare };
    pass::<R>(src, out, *last, twiddles, store);
}
