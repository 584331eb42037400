//! The on-disk formats: strategy, configuration, and distribution files are
//! self-describing JSON with integer element codes and "num/den" rationals.
//!
//! Run with: cargo run --example strategy_files

use chshq::construction::construct;
use chshq::field::FieldSpec;
use chshq::files::{
    read_strategy, write_configuration, write_distribution, write_strategy, StrategyFile,
};
use chshq::game::{max_game_value, GameParams, InputDistribution};
use chshq::ratio::{format_ratio, parse_ratio};

fn main() {
    let dir = std::env::temp_dir().join("chshq_files_example");
    std::fs::create_dir_all(&dir).unwrap();

    let f5 = FieldSpec::new(5).unwrap();
    let params = GameParams::new(f5.clone(), parse_ratio("1/2").unwrap()).unwrap();
    let built = construct(&params).unwrap();

    println!("=== Strategy file ===");
    let strategy_path = dir.join("strategy.json");
    write_strategy(&strategy_path, &built.strategy).unwrap();
    println!("{}", std::fs::read_to_string(&strategy_path).unwrap());

    println!("=== Configuration file ===");
    let config_path = dir.join("strategy.config.json");
    write_configuration(&config_path, built.configuration.as_configuration()).unwrap();
    println!("{}", std::fs::read_to_string(&config_path).unwrap());

    println!("=== Distribution file ===");
    let dist_path = dir.join("uniform.json");
    write_distribution(&dist_path, &InputDistribution::uniform(&f5)).unwrap();
    println!("{}", std::fs::read_to_string(&dist_path).unwrap());

    println!("=== Round trip ===");
    let back = read_strategy(&strategy_path).unwrap();
    println!("read back equals written: {}", back == built.strategy);
    println!(
        "re-evaluates to the same value: {}",
        format_ratio(&max_game_value(&back, &params).unwrap())
    );

    // The serialized form is stable: serializing twice gives the same bytes.
    let once = serde_json::to_string_pretty(&StrategyFile::of(&built.strategy)).unwrap();
    let twice = serde_json::to_string_pretty(&StrategyFile::of(&back)).unwrap();
    println!("byte-stable serialization: {}", once == twice);
}
