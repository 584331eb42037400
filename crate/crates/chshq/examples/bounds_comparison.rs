//! The three upper bounds side by side: the p + sqrt(2/q) baseline, the
//! sharper p + ((n-1)/q)(1 - np/2), and its closed form p + 1/(2pq), with
//! their validity regimes.
//!
//! Run with: cargo run --example bounds_comparison

use chshq::bounds::{
    chakraborty_bound, corollary_bound, thm1_bound, validity_threshold, BoundsError,
};
use chshq::ratio::{decimal_ceil, format_ratio, parse_ratio, Rational};

fn fmt_regime(v: Result<Rational, BoundsError>) -> String {
    match v {
        Ok(v) => format!("{} ~ {}", format_ratio(&v), decimal_ceil(&v, 6)),
        Err(_) => "out of regime".into(),
    }
}

fn main() {
    println!("=== One instance in detail: q = 13, p = 1/3 ===");
    let p = parse_ratio("1/3").unwrap();
    let chak = chakraborty_bound(13, &p, 50);
    println!(
        "chakraborty: p + sqrt(2/q)        <= {} (vacuous: {})",
        chak.enclosure.decimal_upper(12),
        chak.vacuous
    );
    println!(
        "thm1:        p + (n-1)/q (1-np/2) <= {}",
        fmt_regime(thm1_bound(13, &p))
    );
    println!(
        "corollary:   p + 1/(2pq)          <= {}",
        fmt_regime(corollary_bound(13, &p))
    );
    println!();

    println!("=== Sweep at p = 1/3 ===");
    println!("{:>4}  {:>16}  {:>16}  {:>16}", "q", "chakraborty", "thm1", "corollary");
    for q in [2u64, 3, 4, 5, 7, 8, 9, 13, 25, 49, 81] {
        let chak = chakraborty_bound(q, &p, 50);
        let mut c = chak.enclosure.decimal_upper(12);
        if chak.vacuous {
            c = format!("{c}!");
        }
        println!(
            "{q:>4}  {c:>16}  {:>16}  {:>16}",
            fmt_regime(thm1_bound(q, &p)),
            fmt_regime(corollary_bound(q, &p))
        );
    }
    println!("('!' marks a vacuous bound >= 1)");
    println!();

    println!("=== Where the corollary starts to hold ===");
    println!("threshold p(q) = (sqrt(1+8q) - 1)/(4q), the root of 2p^2 q + p - 1:");
    for q in [1u64, 3, 6, 13, 50, 101] {
        let t = validity_threshold(q, 50);
        let label = if t.is_exact() {
            format!("{} exactly", format_ratio(t.lower()))
        } else {
            format!("in [{}, {}]", decimal_ceil(t.lower(), 9), decimal_ceil(t.upper(), 9))
        };
        println!("  q={q:>3}: {label}");
    }
}
