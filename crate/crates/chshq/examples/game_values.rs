//! Game semantics: strategies, the win condition a(x) + b(y) = xy, exact
//! win probabilities, and the score-greedy distribution that is worst for
//! the players... best for them, worst for the bound.
//!
//! This example demonstrates:
//! - Evaluating a strategy under a distribution (exact rationals)
//! - Row scores and the capped distribution that maximizes the value
//! - The value of the all-zero strategy at several (q, p)
//!
//! Run with: cargo run --example game_values

use chshq::field::FieldSpec;
use chshq::game::{
    best_distribution, max_game_value, row_scores, verify, win_probability, GameParams,
    InputDistribution, Strategy,
};
use chshq::ratio::{format_ratio, parse_ratio};

fn main() {
    let f3 = FieldSpec::new(3).unwrap();
    let zeros = Strategy::zeros(&f3);

    println!("=== The all-zero strategy over GF(3) ===");
    println!("wins exactly when x*y = 0:");
    for x in f3.elements() {
        for y in f3.elements() {
            let won = verify(&zeros, &x, &y).unwrap();
            print!("  V({x},{y})={}", u8::from(won));
        }
        println!();
    }
    println!("row scores (wins per Alice input): {:?}", row_scores(&zeros));
    let uniform = InputDistribution::uniform(&f3);
    println!(
        "uniform win probability: {}",
        format_ratio(&win_probability(&zeros, &uniform).unwrap())
    );
    println!();

    println!("=== The maximizing game CHSH_q^max(p) ===");
    let p = parse_ratio("1/2").unwrap();
    let params = GameParams::new(f3.clone(), p).unwrap();
    println!("p = 1/2 so n = ceil(1/p) = {}", params.n());
    let dist = best_distribution(&zeros, &params).unwrap();
    let weights: Vec<String> = dist.probs().iter().map(format_ratio).collect();
    println!("score-greedy distribution: {weights:?}");
    println!(
        "value in the maximizing game: {}",
        format_ratio(&max_game_value(&zeros, &params).unwrap())
    );
    println!();

    println!("=== Values of the zero strategy across (q, p) ===");
    for (q, p_str) in [(2u64, "1/2"), (3, "1/2"), (3, "1/3"), (5, "1/2"), (7, "1/3")] {
        let spec = FieldSpec::new(q).unwrap();
        let params = GameParams::new(spec.clone(), parse_ratio(p_str).unwrap()).unwrap();
        let value = max_game_value(&Strategy::zeros(&spec), &params).unwrap();
        println!("  q={q}, p={p_str}: {}", format_ratio(&value));
    }
    println!();

    println!("=== A perfect single-input strategy ===");
    let f5 = FieldSpec::new(5).unwrap();
    let x0 = 3u64;
    // b(y) = x0*y answers input x0 perfectly when a(x0) = 0.
    let bob: Vec<u64> = (0..5).map(|y| f5.mul(x0, y)).collect();
    let s = Strategy::new(f5.clone(), vec![0; 5], bob).unwrap();
    let mass = InputDistribution::point_mass(&f5.element(x0).unwrap());
    println!(
        "all mass on x = {x0}: win probability {}",
        format_ratio(&win_probability(&s, &mass).unwrap())
    );
}
