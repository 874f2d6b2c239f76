use serde::{Deserialize, Serialize};

use super::ledger::{AZIMUTH_COMPRESSION, AZIMUTH_FFT, RANGE_COMPRESSION, RCMC};
use super::PipelineMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StageKind {
    FusedLine,
    Fft,
    Multiply,
    Ifft,
    Transpose,
    Rcmc,
}

/// One pass over scene storage. `stage` groups passes into the four
/// pipeline steps; `pass` matches the ledger's pass name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSpec {
    pub stage: &'static str,
    pub pass: &'static str,
    pub kind: StageKind,
    pub fused: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StagePlan {
    pub mode: PipelineMode,
    pub stages: Vec<StageSpec>,
}

const fn spec(stage: &'static str, pass: &'static str, kind: StageKind, fused: bool) -> StageSpec {
    StageSpec {
        stage,
        pass,
        kind,
        fused,
    }
}

impl StagePlan {
    pub fn new(mode: PipelineMode) -> Self {
        use StageKind::*;
        let mut stages = Vec::new();
        match mode {
            PipelineMode::Fused => {
                stages.push(spec(RANGE_COMPRESSION, "fused_line", FusedLine, true))
            }
            PipelineMode::Unfused => stages.extend([
                spec(RANGE_COMPRESSION, "fft", Fft, false),
                spec(RANGE_COMPRESSION, "multiply", Multiply, false),
                spec(RANGE_COMPRESSION, "ifft", Ifft, false),
            ]),
        }
        stages.extend([
            spec(AZIMUTH_FFT, "transpose_in", Transpose, false),
            spec(AZIMUTH_FFT, "fft", Fft, false),
            spec(AZIMUTH_FFT, "transpose_out", Transpose, false),
            spec(RCMC, "interpolate", Rcmc, false),
            spec(AZIMUTH_COMPRESSION, "transpose_in", Transpose, false),
        ]);
        match mode {
            PipelineMode::Fused => stages.push(spec(
                AZIMUTH_COMPRESSION,
                "fused_multiply_ifft",
                FusedLine,
                true,
            )),
            PipelineMode::Unfused => stages.extend([
                spec(AZIMUTH_COMPRESSION, "multiply", Multiply, false),
                spec(AZIMUTH_COMPRESSION, "ifft", Ifft, false),
            ]),
        }
        stages.push(spec(AZIMUTH_COMPRESSION, "transpose_out", Transpose, false));
        Self { mode, stages }
    }

    pub fn passes_in<'a>(&'a self, stage: &'a str) -> impl Iterator<Item = &'a StageSpec> + 'a {
        self.stages.iter().filter(move |s| s.stage == stage)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fused_plan_has_one_fused_pass_per_compression_stage() {
        let p = StagePlan::new(PipelineMode::Fused);
        let fused: Vec<_> = p
            .stages
            .iter()
            .filter(|s| s.kind == StageKind::FusedLine)
            .collect();
        assert_eq!(fused.len(), 2);
        assert_eq!(fused[0].stage, RANGE_COMPRESSION);
        assert_eq!(fused[1].stage, AZIMUTH_COMPRESSION);
        assert!(fused.iter().all(|s| s.fused));
    }

    #[test]
    fn unfused_plan_expands_compression() {
        let p = StagePlan::new(PipelineMode::Unfused);
        assert!(p
            .stages
            .iter()
            .all(|s| s.kind != StageKind::FusedLine && !s.fused));
        let kinds: Vec<_> = p.passes_in(RANGE_COMPRESSION).map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            [StageKind::Fft, StageKind::Multiply, StageKind::Ifft]
        );
        let kinds: Vec<_> = p.passes_in(AZIMUTH_COMPRESSION).map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            [
                StageKind::Transpose,
                StageKind::Multiply,
                StageKind::Ifft,
                StageKind::Transpose
            ]
        );
    }
}
