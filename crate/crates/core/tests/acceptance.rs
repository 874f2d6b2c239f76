//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::{Complex32, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sarfuse_core::buffer::encode_scene;
use sarfuse_core::fft::{
    fft_forward, ifft, lane_to_position, tile_butterfly_8x8, Dft8Matrix, Mat8, SIMD_LANES,
};
use sarfuse_core::quality::{QualityOptions, QualityReport};
use sarfuse_core::rda::{
    benchmark_modes, Pipeline, PipelineMode, PipelineOptions, AZIMUTH_COMPRESSION,
    RANGE_COMPRESSION,
};
use sarfuse_core::sim::{default_targets, simulate_scene};
use sarfuse_core::{ComplexBuffer, FftFamily, FftPlan, Layout, SarGeometry, SceneMatrix};

type Outcome = Result<String, String>;

fn naive_dft(x: &[Complex32], w: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let x64: Vec<Complex64> = x
        .iter()
        .map(|v| Complex64::new(v.re as f64, v.im as f64))
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0;
            for v in &x64 {
                acc += v * w[idx];
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            acc
        })
        .collect()
}

fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect()
}

fn random_line(n: usize, rng: &mut impl Rng) -> Vec<Complex32> {
    (0..n)
        .map(|_| Complex32::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// max |got - want| / max |want|
fn rel_err(got: &[Complex32], want: &[Complex64]) -> f64 {
    let scale = want.iter().map(|w| w.norm()).fold(0.0, f64::max);
    got.iter()
        .zip(want)
        .map(|(g, w)| (Complex64::new(g.re as f64, g.im as f64) - w).norm())
        .fold(0.0, f64::max)
        / scale
}

fn run_fft(plan: &FftPlan, x: &[Complex32]) -> Vec<Complex32> {
    let buf = ComplexBuffer::from_interleaved(x.to_vec()).into_layout(plan.family().layout());
    fft_forward(plan, &buf).unwrap().to_vec()
}

fn run_ifft(plan: &FftPlan, x: &[Complex32]) -> Vec<Complex32> {
    let buf = ComplexBuffer::from_interleaved(x.to_vec()).into_layout(plan.family().layout());
    ifft(plan, &buf).unwrap().to_vec()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const SIZES: [usize; 4] = [8, 64, 512, 4096];

fn fft_correctness() -> Outcome {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in SIZES {
        let w = twiddles(n);
        let plans: Vec<FftPlan> = FftFamily::ALL
            .into_iter()
            .filter(|f| f.supports(n))
            .map(|f| FftPlan::new(n, f).unwrap())
            .collect();
        for _ in 0..100 {
            let x = random_line(n, &mut rng);
            let want = naive_dft(&x, &w);
            for p in &plans {
                worst = worst.max(rel_err(&run_fft(p, &x), &want));
                cases += 1;
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    check(
        worst <= 1e-4 && secs < 60.0,
        format!("{cases} transforms, max rel err {worst:.2e} (<= 1e-4), {secs:.1} s (< 60 s)"),
    )
}

fn kernel_cross_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for n in SIZES {
        let ct = FftPlan::new(n, FftFamily::CtDifRadix8).unwrap();
        let stockham: Vec<FftPlan> = [FftFamily::StockhamRadix4, FftFamily::StockhamRadix8]
            .into_iter()
            .filter(|f| f.supports(n))
            .map(|f| FftPlan::new(n, f).unwrap())
            .collect();
        for _ in 0..20 {
            let x = random_line(n, &mut rng);
            let reference: Vec<Complex64> = run_fft(&ct, &x)
                .iter()
                .map(|v| Complex64::new(v.re as f64, v.im as f64))
                .collect();
            for p in &stockham {
                worst = worst.max(rel_err(&run_fft(p, &x), &reference));
            }
        }
    }
    check(
        worst <= 1e-4,
        format!("stockham vs ct-dif max rel diff {worst:.2e} (<= 1e-4)"),
    )
}

fn ifft_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for family in FftFamily::ALL {
        for n in (2..=12)
            .map(|k| 1usize << k)
            .filter(|&n| family.supports(n))
        {
            let p = FftPlan::new(n, family).unwrap();
            for _ in 0..10 {
                let x = random_line(n, &mut rng);
                let y = run_ifft(&p, &run_fft(&p, &x));
                let e = x
                    .iter()
                    .zip(&y)
                    .map(|(a, b)| (a - b).norm() as f64)
                    .fold(0.0, f64::max);
                worst = worst.max(e);
            }
        }
    }
    check(
        worst <= 1e-5,
        format!("max abs round-trip err {worst:.2e} (<= 1e-5)"),
    )
}

fn lane_map_bijection() -> Outcome {
    let mut seen = [[false; 8]; 8];
    let mut count = 0;
    for lane in 0..SIMD_LANES {
        let p = lane_to_position(lane).map_err(|e| e.to_string())?;
        for (r, c) in p.cells() {
            if r >= 8 || c >= 8 || seen[r][c] {
                return Err(format!(
                    "lane {lane} maps to bad or repeated cell ({r},{c})"
                ));
            }
            seen[r][c] = true;
            count += 1;
        }
    }
    let origin = lane_to_position(0).unwrap();
    check(
        count == 64 && (origin.row, origin.col0) == (0, 0) && lane_to_position(SIMD_LANES).is_err(),
        format!("{count} distinct cells covering the 8x8 grid"),
    )
}

fn tile_butterfly() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dft = Dft8Matrix::new();
    let w = twiddles(8);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let mut x_re: Mat8 = [[0.0; 8]; 8];
        let mut x_im: Mat8 = [[0.0; 8]; 8];
        for r in 0..8 {
            for c in 0..8 {
                x_re[r][c] = rng.random_range(-1.0..1.0);
                x_im[r][c] = rng.random_range(-1.0..1.0);
            }
        }
        let (y_re, y_im) = tile_butterfly_8x8(&dft, &x_re, &x_im);
        for c in 0..8 {
            let col: Vec<Complex32> = (0..8)
                .map(|r| Complex32::new(x_re[r][c], x_im[r][c]))
                .collect();
            let want = naive_dft(&col, &w);
            for (r, wv) in want.iter().enumerate() {
                let got = Complex64::new(y_re[r][c] as f64, y_im[r][c] as f64);
                worst = worst.max((got - wv).norm());
            }
        }
    }
    check(
        worst <= 1e-5,
        format!("1000 tiles, max abs err {worst:.2e} (<= 1e-5)"),
    )
}

struct Desk {
    geom: SarGeometry,
    expected: Vec<(usize, usize)>,
    scene: SceneMatrix,
    fused: sarfuse_core::rda::PipelineOutput,
    unfused: sarfuse_core::rda::PipelineOutput,
}

fn desk(workers: Option<usize>) -> Desk {
    let n = 512;
    let geom = SarGeometry::for_scene(n, n);
    let targets = default_targets(&geom, n, n);
    let expected = targets
        .iter()
        .map(|t| t.expected_pixel(&geom, n, n))
        .collect();
    let scene = simulate_scene(&geom, &targets, n, n, 20.0, 2024).unwrap();
    let opts = PipelineOptions {
        workers,
        ..PipelineOptions::default()
    };
    let p = Pipeline::new(&geom, n, n, opts).unwrap();
    let fused = p.run(&scene).unwrap();
    let unfused = p.with_mode(PipelineMode::Unfused).run(&scene).unwrap();
    Desk {
        geom,
        expected,
        scene,
        fused,
        unfused,
    }
}

fn image_equivalence(d: &Desk) -> Outcome {
    let r = QualityReport::compare(
        &d.fused.image,
        &d.unfused.image,
        &d.expected,
        &QualityOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let delta = r.max_abs_snr_delta();
    check(
        r.l2_relative_error <= 1e-6 && delta <= 0.05 && r.targets.len() == 5,
        format!(
            "512x512, 5 targets, 20 dB: L2 {:.2e} (<= 1e-6), max |SNR delta| {delta:.3} dB (<= 0.05)",
            r.l2_relative_error
        ),
    )
}

fn traffic_ledger(d: &Desk) -> Outcome {
    let lines = d.scene.rows() as u64;
    let f = d.fused.ledger.compute_transfers(RANGE_COMPRESSION);
    let u = d.unfused.ledger.compute_transfers(RANGE_COMPRESSION);
    let mut detail = format!(
        "range compression {} (fused) / {} (unfused) transfers per line",
        f / lines,
        u / lines
    );
    let mut ok = f == 2 * lines && u == 6 * lines;
    for stage in [RANGE_COMPRESSION, AZIMUTH_COMPRESSION] {
        let (fb, ub) = (
            d.fused.ledger.stage_bytes(stage),
            d.unfused.ledger.stage_bytes(stage),
        );
        ok &= fb < ub;
        detail.push_str(&format!("; {stage} bytes {fb} < {ub}"));
    }
    check(ok, detail)
}

fn end_to_end_focusing(d: &Desk) -> Outcome {
    let m = sarfuse_core::quality::analyze_targets(
        &d.fused.image,
        &d.expected,
        &QualityOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let mut ok = m.len() == 5;
    let (mut min_snr, mut max_pslr, mut max_off) = (f64::INFINITY, f64::NEG_INFINITY, 0i64);
    for t in &m {
        let off = (t.pixel.0 as i64 - t.expected.0 as i64)
            .abs()
            .max((t.pixel.1 as i64 - t.expected.1 as i64).abs());
        max_off = max_off.max(off);
        min_snr = min_snr.min(t.snr_db);
        let p = t.pslr_db.unwrap_or(f64::INFINITY);
        max_pslr = max_pslr.max(p);
        ok &= off <= 1 && t.snr_db >= 30.0 && p <= -10.0;
    }
    let _ = &d.geom;
    check(
        ok,
        format!(
            "{} targets, max offset {max_off} px (<= 1), min SNR {min_snr:.1} dB (>= 30), worst range PSLR {max_pslr:.1} dB (<= -10)",
            m.len()
        ),
    )
}

fn performance() -> Outcome {
    let n = 1024;
    let geom = SarGeometry::for_scene(n, n);
    let targets = default_targets(&geom, n, n);
    let scene = simulate_scene(&geom, &targets, n, n, 20.0, 9).unwrap();
    let p = Pipeline::new(&geom, n, n, PipelineOptions::default()).unwrap();
    let [fused, unfused] = benchmark_modes(&p, &scene, 5).map_err(|e| e.to_string())?;
    check(
        fused.median_ms <= unfused.median_ms,
        format!(
            "1024x1024 median of 5: fused {:.1} ms <= unfused {:.1} ms ({:.2}x)",
            fused.median_ms,
            unfused.median_ms,
            unfused.median_ms / fused.median_ms
        ),
    )
}

fn artefacts(d: &Desk) -> (Vec<u8>, Vec<u8>, Vec<u8>, String, String) {
    (
        encode_scene(&d.scene, Layout::Interleaved),
        encode_scene(&d.fused.image, Layout::Interleaved),
        encode_scene(&d.unfused.image, Layout::Interleaved),
        serde_json::to_string(&d.fused.ledger).unwrap(),
        serde_json::to_string(&d.unfused.ledger).unwrap(),
    )
}

fn determinism(d: &Desk) -> Outcome {
    let base = artefacts(d);
    let mut runs = 0;
    for workers in [Some(1), Some(3), None] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.unwrap_or(2))
            .build()
            .unwrap();
        // simulate inside the pool too, so the scene sees the same worker count
        let other = pool.install(|| desk(workers));
        if artefacts(&other) != base {
            return Err(format!("artefacts differ with workers = {workers:?}"));
        }
        runs += 1;
    }
    Ok(format!(
        "scene, fused/unfused image and ledger bytes identical over {} runs and worker counts 1, 3, default",
        runs + 1
    ))
}

fn main() {
    let mut failures = 0;
    let mut report = |id: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    };

    report(1, "fft correctness", &mut fft_correctness);
    report(2, "kernel cross-equivalence", &mut kernel_cross_equivalence);
    report(3, "ifft identity", &mut ifft_identity);
    report(4, "lane-map bijection", &mut lane_map_bijection);
    report(5, "tile butterfly", &mut tile_butterfly);
    let d = desk(None);
    report(6, "fused/unfused image equivalence", &mut || {
        image_equivalence(&d)
    });
    report(7, "traffic ledger", &mut || traffic_ledger(&d));
    report(8, "end-to-end focusing", &mut || end_to_end_focusing(&d));
    report(9, "fused not slower than unfused", &mut performance);
    report(10, "determinism", &mut || determinism(&d));

    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
