//! Scalar radix-4 and radix-8 forward DFT butterflies.

use num_complex::Complex32;

const FRAC_1_SQRT_2: f32 = std::f32::consts::FRAC_1_SQRT_2;

#[inline(always)]
fn mul_neg_i(z: Complex32) -> Complex32 {
    Complex32::new(z.im, -z.re)
}

#[inline(always)]
pub fn dft4(a: [Complex32; 4]) -> [Complex32; 4] {
    let t0 = a[0] + a[2];
    let t1 = a[0] - a[2];
    let t2 = a[1] + a[3];
    let t3 = mul_neg_i(a[1] - a[3]);
    [t0 + t2, t1 + t3, t0 - t2, t1 - t3]
}

/// Radix-8 as two radix-4 halves recombined with `W_8^q`.
#[inline(always)]
pub fn dft8(a: [Complex32; 8]) -> [Complex32; 8] {
    let e = dft4([a[0], a[2], a[4], a[6]]);
    let o = dft4([a[1], a[3], a[5], a[7]]);
    let o1 = Complex32::new(
        (o[1].re + o[1].im) * FRAC_1_SQRT_2,
        (o[1].im - o[1].re) * FRAC_1_SQRT_2,
    );
    let o2 = mul_neg_i(o[2]);
    let o3 = Complex32::new(
        (o[3].im - o[3].re) * FRAC_1_SQRT_2,
        -(o[3].re + o[3].im) * FRAC_1_SQRT_2,
    );
    [
        e[0] + o[0],
        e[1] + o1,
        e[2] + o2,
        e[3] + o3,
        e[0] - o[0],
        e[1] - o1,
        e[2] - o2,
        e[3] - o3,
    ]
}
