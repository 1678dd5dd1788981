use std::collections::HashMap;
use std::io::{Read, Write};

use super::Evaluation;

/// One real evaluation of the system under test.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveRow {
    pub eval_index: u64,
    pub genome: Vec<f64>,
    pub objectives: Vec<f64>,
    pub critical: bool,
}

/// Append-only log of every evaluator call made during a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvaluationArchive {
    pub run_id: String,
    rows: Vec<ArchiveRow>,
    /// First row holding each genome.
    index: HashMap<Vec<u64>, u64>,
}

fn genome_key(genome: &[f64]) -> Vec<u64> {
    genome.iter().map(|x| (x + 0.0).to_bits()).collect()
}

impl EvaluationArchive {
    pub fn new(run_id: impl Into<String>) -> Self {
        Self { run_id: run_id.into(), rows: Vec::new(), index: HashMap::new() }
    }

    /// Appends an evaluation and returns its evaluation index.
    pub fn push(&mut self, genome: Vec<f64>, evaluation: Evaluation) -> u64 {
        let eval_index = self.rows.len() as u64;
        self.index.entry(genome_key(&genome)).or_insert(eval_index);
        self.rows.push(ArchiveRow {
            eval_index,
            genome,
            objectives: evaluation.objectives,
            critical: evaluation.critical,
        });
        eval_index
    }

    /// Earliest row for `genome`, if it was evaluated before.
    pub fn lookup(&self, genome: &[f64]) -> Option<&ArchiveRow> {
        self.index.get(&genome_key(genome)).map(|&i| &self.rows[i as usize])
    }

    pub fn rows(&self) -> &[ArchiveRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, eval_index: u64) -> Option<&ArchiveRow> {
        self.rows.get(eval_index as usize)
    }

    /// Copy holding only the first `n` evaluations.
    pub fn prefix(&self, n: usize) -> EvaluationArchive {
        let mut out = EvaluationArchive::new(self.run_id.clone());
        for r in &self.rows[..n.min(self.rows.len())] {
            out.push(r.genome.clone(), Evaluation { objectives: r.objectives.clone(), critical: r.critical });
        }
        out
    }

    pub fn critical_genomes(&self) -> Vec<Vec<f64>> {
        self.rows.iter().filter(|r| r.critical).map(|r| r.genome.clone()).collect()
    }

    /// CSV with header `run_id,eval_index,g0..,o0..,critical`.
    pub fn write_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let (n, m) = self
            .rows
            .first()
            .map(|r| (r.genome.len(), r.objectives.len()))
            .unwrap_or((0, 0));
        let mut header = vec!["run_id".to_string(), "eval_index".to_string()];
        header.extend((0..n).map(|i| format!("g{i}")));
        header.extend((0..m).map(|i| format!("o{i}")));
        header.push("critical".into());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![self.run_id.clone(), row.eval_index.to_string()];
            rec.extend(row.genome.iter().map(f64::to_string));
            rec.extend(row.objectives.iter().map(f64::to_string));
            rec.push(u8::from(row.critical).to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self, String> {
        let mut r = csv::Reader::from_reader(reader);
        let header = r.headers().map_err(|e| e.to_string())?.clone();
        let n = header.iter().filter(|h| h.starts_with('g')).count();
        let m = header.iter().filter(|h| h.starts_with('o')).count();
        if header.len() != n + m + 3 || header.get(0) != Some("run_id") {
            return Err(format!("unexpected archive header: {header:?}"));
        }
        let mut archive = EvaluationArchive::default();
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| e.to_string())?;
            let num = |i: usize| -> Result<f64, String> {
                rec[i].parse::<f64>().map_err(|e| format!("row {line}, column {i}: {e}"))
            };
            if line == 0 {
                archive.run_id = rec[0].to_string();
            }
            let eval_index: u64 = rec[1].parse().map_err(|e| format!("row {line}: {e}"))?;
            if eval_index != archive.rows.len() as u64 {
                return Err(format!("row {line}: evaluation index {eval_index} out of sequence"));
            }
            let genome = (0..n).map(|i| num(2 + i)).collect::<Result<Vec<_>, _>>()?;
            let objectives = (0..m).map(|i| num(2 + n + i)).collect::<Result<Vec<_>, _>>()?;
            let critical = match &rec[2 + n + m] {
                "1" | "true" => true,
                "0" | "false" => false,
                other => return Err(format!("row {line}: bad critical flag {other:?}")),
            };
            archive.push(genome, Evaluation { objectives, critical });
        }
        Ok(archive)
    }
}
