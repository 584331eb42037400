//! A parameter sweep through the library API, mirroring `chshq sweep`:
//! every bound per (q, p), the constructed lower bound, and a CSV dump.
//!
//! Run with: cargo run --example sweep_to_csv

use chshq::bounds::ReportOptions;
use chshq::ratio::parse_ratio;
use chshq::sweep::{csv_string, run_sweep, QSelection, SweepSpec};

fn main() {
    let spec = SweepSpec {
        q: QSelection::Range { start: 2, end: 13 },
        p_list: vec![parse_ratio("1/2").unwrap(), parse_ratio("1/3").unwrap()],
        options: ReportOptions {
            construction: true,
            ..ReportOptions::default()
        },
    };
    let outcome = run_sweep(&spec).unwrap();
    if !outcome.skipped.is_empty() {
        println!("skipped non-prime-powers: {:?}", outcome.skipped);
    }
    println!();
    print!("{}", csv_string(&outcome.reports));
    println!();

    // The construction column equals thm1 wherever both exist: the bound is
    // tight on this whole grid.
    let all_tight = outcome.reports.iter().all(|r| r.tight != Some(false));
    println!("# every in-regime row is tight: {all_tight}");

    let path = std::env::temp_dir().join("chshq_sweep.csv");
    chshq::sweep::write_csv(&path, &outcome.reports).unwrap();
    println!("# also written to {}", path.display());
}
