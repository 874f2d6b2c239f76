use sarfuse_core::quality::{analyze_targets, QualityOptions};
use sarfuse_core::rda::{run_pipeline, Pipeline, PipelineMode, PipelineOptions};
use sarfuse_core::sim::{default_targets, simulate_scene};
use sarfuse_core::SarGeometry;

#[test]
fn desk_scene_focuses_all_targets() {
    let n = 512;
    let g = SarGeometry::for_scene(n, n);
    let targets = default_targets(&g, n, n);
    let scene = simulate_scene(&g, &targets, n, n, 20.0, 42).unwrap();
    let out = run_pipeline(&g, &scene, &PipelineOptions::default()).unwrap();
    let expected: Vec<_> = targets.iter().map(|t| t.expected_pixel(&g, n, n)).collect();
    let m = analyze_targets(&out.image, &expected, &QualityOptions::default()).unwrap();
    for t in &m {
        eprintln!("{t:?}");
        let (dr, dc) = (
            t.pixel.0 as i64 - t.expected.0 as i64,
            t.pixel.1 as i64 - t.expected.1 as i64,
        );
        assert!(dr.abs() <= 1 && dc.abs() <= 1, "{t:?}");
        assert!(t.snr_db >= 30.0, "{t:?}");
        assert!(t.pslr_db.unwrap() <= -10.0, "{t:?}");
    }
    let _ = Pipeline::new(&g, n, n, PipelineOptions::with_mode(PipelineMode::Unfused)).unwrap();
}

fn long_wave() -> SarGeometry {
    SarGeometry {
        carrier_hz: 1.25e9,
        range0_m: 5e3,
        ..SarGeometry::for_scene(1024, 256)
    }
}

fn argmax(row: &[num_complex::Complex32]) -> usize {
    row.iter()
        .enumerate()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .unwrap()
        .0
}

#[test]
fn rcmc_straightens_range_doppler_trajectory() {
    let (n_a, n_r) = (1024, 256);
    let g = long_wave();
    let t = sarfuse_core::PointTarget::new("c", 0.0, 0.0);
    let (_, col) = t.expected_pixel(&g, n_a, n_r);
    let scene = simulate_scene(
        &g,
        std::slice::from_ref(&t),
        n_a,
        n_r,
        sarfuse_core::sim::NOISELESS,
        1,
    )
    .unwrap();
    let p = Pipeline::new(&g, n_a, n_r, PipelineOptions::default()).unwrap();
    let (_, rd) = p.range_doppler(&scene).unwrap();
    let corrected = p.corrected(&scene).unwrap();

    let (mut rows, mut straight, mut worst_before) = (0, 0, 0i64);
    for k in 0..n_a {
        let f = g.azimuth_frequency_hz(k, n_a);
        // stay inside the illuminated band, away from its tapered edges
        if f.abs() > 0.45 * g.doppler_bandwidth_hz {
            continue;
        }
        rows += 1;
        worst_before = worst_before.max(argmax(rd.row(k)) as i64 - col as i64);
        if (argmax(corrected.row(k)) as i64 - col as i64).abs() <= 1 {
            straight += 1;
        }
    }
    assert!(
        worst_before > 3,
        "uncorrected migration only {worst_before} cells"
    );
    assert!(
        straight as f64 >= 0.95 * rows as f64,
        "{straight}/{rows} rows straight"
    );

    let out = p.run(&scene).unwrap();
    let m = analyze_targets(
        &out.image,
        &[t.expected_pixel(&g, n_a, n_r)],
        &QualityOptions::default(),
    )
    .unwrap();
    assert_eq!(m[0].pixel, m[0].expected);
}
