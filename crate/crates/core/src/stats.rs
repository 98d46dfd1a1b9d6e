//! Smallest-backdoor statistics over a corpus of programs.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::class::TargetClass;
use crate::detect::{find_backdoor, BackdoorKind, BackdoorQuery};
use crate::parse::parse_program;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsRow {
    pub instance: String,
    pub atoms: usize,
    pub rules: usize,
    pub backdoor_size: usize,
    /// `backdoor_size` as a percentage of `atoms`; 0 for programs without atoms.
    pub fraction: f64,
    pub target: String,
    pub kind: BackdoorKind,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsError {
    pub instance: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub version: &'static str,
    pub target: String,
    pub kind: BackdoorKind,
    pub rows: Vec<StatsRow>,
    pub errors: Vec<StatsError>,
    /// Mean fraction over the rows, `None` without rows.
    pub mean: Option<f64>,
    /// Sample standard deviation of the fractions; 0 for fewer than two rows.
    pub stdev: f64,
}

/// One corpus entry: its name and its text, or why it could not be read.
pub type CorpusEntry = (String, Result<String, String>);

fn row(name: &str, text: &str, target: TargetClass, kind: BackdoorKind) -> Result<StatsRow, String> {
    let p = parse_program(text).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let result = find_backdoor(&p, &BackdoorQuery::minimize(target, kind)).map_err(|e| e.to_string())?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let size = result.witness.map_or(0, |w| w.len());
    let atoms = p.at().len();
    Ok(StatsRow {
        instance: name.to_owned(),
        atoms,
        rules: p.len(),
        backdoor_size: size,
        fraction: if atoms == 0 {
            0.0
        } else {
            100.0 * size as f64 / atoms as f64
        },
        target: target.cli_name().to_owned(),
        kind,
        wall_ms,
    })
}

/// Mean and sample standard deviation.
pub fn mean_and_stdev(xs: &[f64]) -> (Option<f64>, f64) {
    if xs.is_empty() {
        return (None, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (Some(mean), 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (Some(mean), var.sqrt())
}

/// Computes one row per readable, parseable entry in parallel; rows and
/// errors keep the corpus order.
pub fn stats_report(corpus: &[CorpusEntry], target: TargetClass, kind: BackdoorKind) -> StatsReport {
    let results: Vec<Result<StatsRow, String>> = corpus
        .par_iter()
        .map(|(name, text)| match text {
            Ok(text) => row(name, text, target, kind),
            Err(e) => Err(e.clone()),
        })
        .collect();
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for ((name, _), r) in corpus.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(message) => errors.push(StatsError {
                instance: name.clone(),
                message,
            }),
        }
    }
    let fractions: Vec<f64> = rows.iter().map(|r| r.fraction).collect();
    let (mean, stdev) = mean_and_stdev(&fractions);
    StatsReport {
        version: env!("CARGO_PKG_VERSION"),
        target: target.cli_name().to_owned(),
        kind,
        rows,
        errors,
        mean,
        stdev,
    }
}

impl StatsReport {
    /// A whitespace-aligned table followed by the aggregate line.
    pub fn render_text(&self) -> String {
        let mut s = format!(
            "{:<24} {:>6} {:>6} {:>4} {:>7} {:>9}\n",
            "instance", "atoms", "rules", "bd", "bd%", "ms"
        );
        for r in &self.rows {
            s += &format!(
                "{:<24} {:>6} {:>6} {:>4} {:>7.2} {:>9.1}\n",
                r.instance, r.atoms, r.rules, r.backdoor_size, r.fraction, r.wall_ms
            );
        }
        for e in &self.errors {
            s += &format!("{:<24} error: {}\n", e.instance, e.message);
        }
        match self.mean {
            Some(mean) => {
                s += &format!(
                    "mean {mean:.2} stdev {:.2} over {} instances\n",
                    self.stdev,
                    self.rows.len()
                )
            }
            None => s += "no instances\n",
        }
        s
    }
}
