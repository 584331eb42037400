//! The greedy construction of an optimal strategy, its point/line picture,
//! and the exact match with the closed-form upper bound.
//!
//! Run with: cargo run --example construct_optimal

use chshq::bounds::thm1_bound;
use chshq::construction::{construct, regime_check, removal_budget};
use chshq::field::FieldSpec;
use chshq::game::GameParams;
use chshq::incidence::{configuration_to_strategy, count_incidences};
use chshq::ratio::{format_ratio, parse_ratio};

fn main() {
    println!("=== q = 7, p = 1/3 (inside the guaranteed regime) ===");
    let f7 = FieldSpec::new(7).unwrap();
    let params = GameParams::new(f7.clone(), parse_ratio("1/3").unwrap()).unwrap();
    println!("regime check: {}", regime_check(&params));
    let r = construct(&params).unwrap();
    let pts: Vec<(u64, u64)> = r
        .configuration
        .points()
        .iter()
        .map(|p| (p.x().code(), p.y().code()))
        .collect();
    let lns: Vec<(u64, u64)> = r
        .configuration
        .lines()
        .iter()
        .map(|l| (l.slope().code(), l.offset().code()))
        .collect();
    println!("points (x, y):        {pts:?}");
    println!("lines (slope, offset): {lns:?}");
    println!(
        "incidences: {} = q + n(n-1)/2 = {}",
        count_incidences(&r.configuration),
        7 + 3
    );
    println!(
        "candidate deletions: {} (budget {})",
        r.candidates_removed,
        removal_budget(params.n(), 7)
    );
    println!("achieved value: {}", format_ratio(&r.achieved_value));
    println!(
        "theorem bound:  {}",
        format_ratio(&thm1_bound(7, params.p()).unwrap())
    );
    println!();

    println!("=== q = 3, p = 1/3 (outside the regime, still succeeds) ===");
    let params = GameParams::new(FieldSpec::new(3).unwrap(), parse_ratio("1/3").unwrap()).unwrap();
    println!("regime check: {}", regime_check(&params));
    let r = construct(&params).unwrap();
    println!(
        "achieved {} vs bound {}",
        format_ratio(&r.achieved_value),
        format_ratio(&thm1_bound(3, params.p()).unwrap())
    );
    println!();

    println!("=== Round trip through the configuration ===");
    let (strategy, support) = configuration_to_strategy(&r.configuration, &r.strategy.spec().zero()).unwrap();
    println!(
        "configuration -> strategy reproduces the construction: {}",
        strategy == r.strategy
    );
    let support_codes: Vec<u64> = support.iter().map(|x| x.code()).collect();
    println!("support (sorted): {support_codes:?}");
    println!();

    println!("=== Tightness across small prime powers, p = 1/2 ===");
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let params =
            GameParams::new(FieldSpec::new(q).unwrap(), parse_ratio("1/2").unwrap()).unwrap();
        let r = construct(&params).unwrap();
        let bound = thm1_bound(q, params.p()).unwrap();
        println!(
            "  q={q}: construction {} | thm1 {} | equal {}",
            format_ratio(&r.achieved_value),
            format_ratio(&bound),
            r.achieved_value == bound
        );
    }
}
