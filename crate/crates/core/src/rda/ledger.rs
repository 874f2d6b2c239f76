//! Memory-traffic accounting.
//!
//! Every pass over scene-sized storage is recorded as line-sized reads and
//! writes. Matched-filter reads are recorded separately as
//! [`TransferCategory::Broadcast`], because one filter line is shared by every
//! line of a pass. The unfused path's standalone conjugation sweeps go under
//! [`TransferCategory::Host`] so the FFT / multiply / IFFT line count of a
//! stage stays comparable between the two executors.

use serde::{Deserialize, Serialize};

pub const RANGE_COMPRESSION: &str = "range_compression";
pub const AZIMUTH_FFT: &str = "azimuth_fft";
pub const RCMC: &str = "rcmc";
pub const AZIMUTH_COMPRESSION: &str = "azimuth_compression";

/// The four pipeline stages in execution order.
pub const STAGES: [&str; 4] = [RANGE_COMPRESSION, AZIMUTH_FFT, RCMC, AZIMUTH_COMPRESSION];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransferCategory {
    Line,
    Broadcast,
    Host,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub stage: String,
    pub pass: String,
    pub category: TransferCategory,
    pub line_reads: u64,
    pub line_writes: u64,
    pub bytes_moved: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrafficLedger {
    entries: Vec<LedgerEntry>,
}

impl TrafficLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Credit `reads` and `writes` transfers of `line_bytes` each. Repeated
    /// credits to the same `(stage, pass, category)` accumulate.
    pub fn record(
        &mut self,
        stage: &str,
        pass: &str,
        category: TransferCategory,
        reads: u64,
        writes: u64,
        line_bytes: u64,
    ) {
        let bytes = (reads + writes) * line_bytes;
        if let Some(e) = self
            .entries
            .iter_mut()
            .find(|e| e.stage == stage && e.pass == pass && e.category == category)
        {
            e.line_reads += reads;
            e.line_writes += writes;
            e.bytes_moved += bytes;
            return;
        }
        self.entries.push(LedgerEntry {
            stage: stage.to_owned(),
            pass: pass.to_owned(),
            category,
            line_reads: reads,
            line_writes: writes,
            bytes_moved: bytes,
        });
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn merge(&mut self, other: &TrafficLedger) {
        for e in &other.entries {
            let per_line = e
                .bytes_moved
                .checked_div(e.line_reads + e.line_writes)
                .unwrap_or(0);
            self.record(
                &e.stage,
                &e.pass,
                e.category,
                e.line_reads,
                e.line_writes,
                per_line,
            );
        }
    }

    fn sum(&self, f: impl Fn(&LedgerEntry) -> bool, g: impl Fn(&LedgerEntry) -> u64) -> u64 {
        self.entries.iter().filter(|e| f(e)).map(g).sum()
    }

    /// Line reads + writes of `category` within `stage`.
    pub fn transfers(&self, stage: &str, category: TransferCategory) -> u64 {
        self.sum(
            |e| e.stage == stage && e.category == category,
            |e| e.line_reads + e.line_writes,
        )
    }

    /// Line-category transfers of `stage` excluding transposes, i.e. the
    /// FFT / multiply / IFFT passes.
    pub fn compute_transfers(&self, stage: &str) -> u64 {
        self.sum(
            |e| {
                e.stage == stage
                    && e.category == TransferCategory::Line
                    && !e.pass.starts_with("transpose")
            },
            |e| e.line_reads + e.line_writes,
        )
    }

    pub fn stage_reads(&self, stage: &str) -> u64 {
        self.sum(|e| e.stage == stage, |e| e.line_reads)
    }

    pub fn stage_writes(&self, stage: &str) -> u64 {
        self.sum(|e| e.stage == stage, |e| e.line_writes)
    }

    pub fn stage_bytes(&self, stage: &str) -> u64 {
        self.sum(|e| e.stage == stage, |e| e.bytes_moved)
    }

    pub fn category_bytes(&self, category: TransferCategory) -> u64 {
        self.sum(|e| e.category == category, |e| e.bytes_moved)
    }

    pub fn total_bytes(&self) -> u64 {
        self.sum(|_| true, |e| e.bytes_moved)
    }

    /// One record per stage, in pipeline order.
    pub fn stage_records(&self, timings: &[StageTiming]) -> Vec<StageRecord> {
        STAGES
            .iter()
            .filter(|s| {
                self.entries.iter().any(|e| e.stage == **s)
                    || timings.iter().any(|t| t.stage == **s)
            })
            .map(|&stage| StageRecord {
                stage: stage.to_owned(),
                reads: self.stage_reads(stage),
                writes: self.stage_writes(stage),
                bytes: self.stage_bytes(stage),
                millis: timings.iter().find(|t| t.stage == stage).map(|t| t.millis),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

/// Per-stage export row: `{ stage, reads, writes, bytes, millis }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: String,
    pub reads: u64,
    pub writes: u64,
    pub bytes: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_accumulates() {
        let mut l = TrafficLedger::new();
        l.record(
            RANGE_COMPRESSION,
            "fused_line",
            TransferCategory::Line,
            4,
            4,
            8,
        );
        l.record(
            RANGE_COMPRESSION,
            "fused_line",
            TransferCategory::Line,
            1,
            1,
            8,
        );
        l.record(
            RANGE_COMPRESSION,
            "filter",
            TransferCategory::Broadcast,
            5,
            0,
            8,
        );
        assert_eq!(l.entries().len(), 2);
        assert_eq!(l.transfers(RANGE_COMPRESSION, TransferCategory::Line), 10);
        assert_eq!(l.stage_bytes(RANGE_COMPRESSION), 80 + 40);
        assert_eq!(l.category_bytes(TransferCategory::Broadcast), 40);

        let mut m = TrafficLedger::new();
        m.merge(&l);
        m.merge(&l);
        assert_eq!(m.total_bytes(), 2 * l.total_bytes());
    }

    #[test]
    fn records_follow_stage_order() {
        let mut l = TrafficLedger::new();
        l.record(RCMC, "interpolate", TransferCategory::Line, 2, 2, 16);
        l.record(
            RANGE_COMPRESSION,
            "fused_line",
            TransferCategory::Line,
            2,
            2,
            16,
        );
        let t = [StageTiming {
            stage: RCMC.into(),
            millis: 1.5,
        }];
        let r = l.stage_records(&t);
        assert_eq!(r[0].stage, RANGE_COMPRESSION);
        assert_eq!(r[0].millis, None);
        assert_eq!(r[1].millis, Some(1.5));
        let json = serde_json::to_value(&r[1]).unwrap();
        assert_eq!(json["bytes"], 64);
    }
}
