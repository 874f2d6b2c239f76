//! Shared fixtures for the criterion benches.

use sarfuse_core::rda::Pipeline;
use sarfuse_core::sim::{default_targets, simulate_scene, NOISELESS};
use sarfuse_core::{
    ComplexF32, FftFamily, PipelineMode, PipelineOptions, SarGeometry, SceneMatrix,
};

/// Deterministic, non-trivial input line.
pub fn ramp_line(n: usize) -> Vec<ComplexF32> {
    (0..n)
        .map(|k| ComplexF32::new(((k * 7) % 13) as f32 - 6.0, ((k * 3) % 11) as f32 - 5.0))
        .collect()
}

/// Every (size, family) pair the families support among `sizes`.
pub fn fft_cases(sizes: &[usize]) -> Vec<(usize, FftFamily)> {
    sizes
        .iter()
        .flat_map(|&n| {
            FftFamily::ALL
                .into_iter()
                .filter(move |f| f.supports(n))
                .map(move |f| (n, f))
        })
        .collect()
}

/// Noiseless point-target scene and a pipeline sized for it.
pub fn pipeline_fixture(n: usize, mode: PipelineMode) -> (Pipeline, SceneMatrix) {
    let geom = SarGeometry::for_scene(n, n);
    let scene = simulate_scene(&geom, &default_targets(&geom, n, n), n, n, NOISELESS, 1)
        .expect("simulate bench scene");
    let opts = PipelineOptions::with_mode(mode);
    let pipeline = Pipeline::new(&geom, n, n, opts).expect("plan bench pipeline");
    (pipeline, scene)
}
