use std::path::Path;
use std::time::Instant;

use wavelet_core::meter;
use wavelet_core::structures::{StructureKind, WaveletLevels};

use crate::ingest::IngestedText;
use crate::{build_levels, Algo, Failure};

pub const CSV_HEADER: [&str; 7] = [
    "input",
    "kind",
    "algo",
    "threads",
    "runs",
    "median_seconds",
    "aux_bytes_per_input_byte",
];

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub input: String,
    pub kind: StructureKind,
    pub algo: Algo,
    pub threads: usize,
    pub runs: usize,
    pub median_seconds: f64,
    /// Peak heap bytes beyond the input text and the returned levels.
    pub aux_bytes: usize,
    /// Peak heap bytes including the returned levels.
    pub total_bytes: usize,
    pub input_bytes: usize,
}

impl BenchRow {
    pub fn record(&self) -> [String; 7] {
        let per_byte = if self.input_bytes == 0 {
            0.0
        } else {
            self.aux_bytes as f64 / self.input_bytes as f64
        };
        [
            self.input.clone(),
            self.kind.as_str().to_string(),
            self.algo.name().to_string(),
            self.threads.to_string(),
            self.runs.to_string(),
            format!("{:.6}", self.median_seconds),
            format!("{per_byte:.6}"),
        ]
    }
}

/// Times `runs` constructions and keeps the median. Memory is the smallest
/// peak over the runs, so one-time costs such as starting the thread pool
/// are left out. Only construction is measured: rank and select support is
/// not built.
pub fn bench_one(
    input: &Path,
    text: &IngestedText,
    kind: StructureKind,
    algo: Algo,
    threads: usize,
    runs: usize,
) -> Result<BenchRow, Failure> {
    let mut times = Vec::with_capacity(runs);
    let mut aux_bytes = usize::MAX;
    let mut total_bytes = usize::MAX;
    for _ in 0..runs {
        let before = meter::live_bytes();
        let start = Instant::now();
        let (built, peak): (Result<WaveletLevels, Failure>, usize) =
            meter::peak_during(|| build_levels(text, kind, algo, threads));
        times.push(start.elapsed().as_secs_f64());
        let levels = built?;
        let retained = meter::live_bytes().saturating_sub(before);
        aux_bytes = aux_bytes.min(peak.saturating_sub(retained));
        total_bytes = total_bytes.min(peak);
        drop(levels);
    }
    times.sort_by(f64::total_cmp);
    Ok(BenchRow {
        input: input.display().to_string(),
        kind,
        algo,
        threads,
        runs,
        median_seconds: times[runs / 2],
        aux_bytes,
        total_bytes,
        input_bytes: text.input_bytes,
    })
}
