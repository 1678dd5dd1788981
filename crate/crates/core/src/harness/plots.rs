use std::path::{Path, PathBuf};

use super::compare::PREFIX_STAGE;
use super::{read_file, write_file, HarnessError, RunRecord};

pub const PLOT_HEADER: [&str; 5] = ["algorithm", "repetition", "evaluations", "metric", "value"];

const METRICS: [&str; 4] = ["hv", "gd", "spread", "distinct_critical"];

/// Merges the per-run indicator series into `plot.csv` (long format, one row
/// per run, stage and metric). Fixed-prefix snapshots are left out so every
/// series follows its algorithm's own generation cadence.
pub fn emit_plots(records: &[RunRecord], out: &Path) -> Result<PathBuf, HarnessError> {
    let missing: Vec<PathBuf> =
        records.iter().map(|r| out.join(&r.indicators)).filter(|p| !p.exists()).collect();
    if !missing.is_empty() {
        return Err(HarnessError::MissingFiles(missing));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |p: &Path, e: csv::Error| HarnessError::io(p, e);
    let target = out.join("plot.csv");
    w.write_record(PLOT_HEADER).map_err(|e| csv_err(&target, e))?;
    for rec in records {
        let path = out.join(&rec.indicators);
        let bytes = read_file(&path)?;
        let mut r = csv::Reader::from_reader(bytes.as_slice());
        let header = r.headers().map_err(|e| csv_err(&path, e))?.clone();
        let col = |name: &str| {
            header.iter().position(|h| h == name).ok_or_else(|| HarnessError::io(&path, format!("no column {name}")))
        };
        let (stage, evals) = (col("stage")?, col("evaluations")?);
        let metric_cols: Vec<usize> = METRICS.iter().map(|m| col(m)).collect::<Result<_, _>>()?;
        for row in r.records() {
            let row = row.map_err(|e| csv_err(&path, e))?;
            if row[stage].starts_with(PREFIX_STAGE) {
                continue;
            }
            for (m, &c) in METRICS.iter().zip(&metric_cols) {
                w.write_record([&rec.algorithm, &rec.repetition.to_string(), &row[evals], *m, &row[c]])
                    .map_err(|e| csv_err(&target, e))?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::io(&target, e))?;
    write_file(&target, &bytes)?;
    Ok(target)
}
