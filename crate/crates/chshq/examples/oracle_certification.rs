//! Brute-force certification: the exhaustive oracle pins the exact classical
//! value at small q and sandwiches it between the constructed lower bound
//! and the closed-form upper bound.
//!
//! Run with: cargo run --release --example oracle_certification

use std::time::Instant;

use chshq::bounds::thm1_bound;
use chshq::construction::construct;
use chshq::field::FieldSpec;
use chshq::game::GameParams;
use chshq::oracle::{
    brute_force_incidences, brute_force_value, shift_symmetry_check, OracleMode, OracleOptions,
};
use chshq::ratio::{format_ratio, parse_ratio};

fn main() {
    println!("=== The sandwich: construction <= oracle <= thm1 ===");
    for (q, p_str) in [(2u64, "1/2"), (3, "1/2"), (3, "1/3"), (5, "1/2"), (5, "1/3"), (7, "1/3")] {
        let params =
            GameParams::new(FieldSpec::new(q).unwrap(), parse_ratio(p_str).unwrap()).unwrap();
        let lower = construct(&params).unwrap().achieved_value;
        let mode = OracleMode::auto(q);
        let start = Instant::now();
        let oracle = brute_force_value(&params, &OracleOptions::new(mode).with_jobs(2)).unwrap();
        let upper = thm1_bound(q, params.p()).unwrap();
        println!(
            "  q={q}, p={p_str}: {} <= {} <= {}  [{} mode, {} candidates, {:?}]",
            format_ratio(&lower),
            format_ratio(&oracle.value),
            format_ratio(&upper),
            oracle.reduction_used,
            oracle.strategies_examined,
            start.elapsed()
        );
        assert!(lower <= oracle.value && oracle.value <= upper);
    }
    println!();

    println!("=== Both enumeration modes agree ===");
    for q in [2u64, 3] {
        let params =
            GameParams::new(FieldSpec::new(q).unwrap(), parse_ratio("1/2").unwrap()).unwrap();
        let full = brute_force_value(&params, &OracleOptions::new(OracleMode::Full)).unwrap();
        let best =
            brute_force_value(&params, &OracleOptions::new(OracleMode::BestResponse)).unwrap();
        println!(
            "  q={q}: full {} ({} pairs) vs best-response {} ({} bob functions)",
            format_ratio(&full.value),
            full.strategies_examined,
            format_ratio(&best.value),
            best.strategies_examined
        );
    }
    println!();

    println!("=== Shift symmetry justifies pruning ===");
    let f3 = FieldSpec::new(3).unwrap();
    let params = GameParams::new(f3.clone(), parse_ratio("1/3").unwrap()).unwrap();
    let witness = brute_force_value(&params, &OracleOptions::new(OracleMode::Full))
        .unwrap()
        .witness_strategy;
    for c in f3.elements() {
        println!(
            "  shifting the q=3 witness by c={}: value preserved = {}",
            c.code(),
            shift_symmetry_check(&witness, &c, &params).unwrap()
        );
    }
    let pruned = brute_force_value(
        &params,
        &OracleOptions::new(OracleMode::BestResponse).with_fix_b0(true),
    )
    .unwrap();
    let free =
        brute_force_value(&params, &OracleOptions::new(OracleMode::BestResponse)).unwrap();
    println!(
        "  fixing b(0)=0: {} candidates instead of {}, same value {}",
        pruned.strategies_examined,
        free.strategies_examined,
        format_ratio(&pruned.value)
    );
    println!();

    println!("=== Exhaustive incidence search ===");
    for (n, k, q) in [(2u64, 3u64, 3u64), (3, 3, 3), (3, 5, 5)] {
        let r = brute_force_incidences(n, k, q).unwrap();
        println!(
            "  I(n={n}, k={k}, q={q}) = {} over {} configurations",
            r.maximum, r.configurations_examined
        );
    }
}
