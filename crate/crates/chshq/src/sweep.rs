//! (q, p) parameter sweeps with CSV emission. Rows come out in grid order
//! (q outer, p inner), so the CSV is byte-identical across runs and worker
//! counts.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::bounds::{full_report, BoundReport, ReportError, ReportOptions};
use crate::field::is_prime_power;
use crate::ratio::Rational;

/// Which field orders to visit: an explicit list (every entry must be a
/// prime power) or an inclusive range (non-prime-powers are skipped and
/// recorded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSelection {
    List(Vec<u64>),
    Range { start: u64, end: u64 },
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub q: QSelection,
    pub p_list: Vec<Rational>,
    pub options: ReportOptions,
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub reports: Vec<BoundReport>,
    /// Non-prime-powers skipped from a range selection.
    pub skipped: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("q = {0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("the sweep grid is empty")]
    EmptyGrid,
    #[error(transparent)]
    Report(#[from] ReportError),
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome, SweepError> {
    let mut skipped = Vec::new();
    let qs: Vec<u64> = match &spec.q {
        QSelection::List(list) => {
            for &q in list {
                if !is_prime_power(q) {
                    return Err(SweepError::NotAPrimePower(q));
                }
            }
            list.clone()
        }
        QSelection::Range { start, end } => (*start..=*end)
            .filter(|&q| {
                let ok = is_prime_power(q);
                if !ok {
                    skipped.push(q);
                }
                ok
            })
            .collect(),
    };
    if qs.is_empty() || spec.p_list.is_empty() {
        return Err(SweepError::EmptyGrid);
    }
    let mut reports = Vec::with_capacity(qs.len() * spec.p_list.len());
    for &q in &qs {
        for p in &spec.p_list {
            reports.push(full_report(q, p, &spec.options)?);
        }
    }
    Ok(SweepOutcome { reports, skipped })
}

/// Header plus one row per report, trailing newline included.
pub fn csv_string(reports: &[BoundReport]) -> String {
    let mut out = String::from(BoundReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, reports: &[BoundReport]) -> std::io::Result<()> {
    fs::write(path, csv_string(reports))
}
