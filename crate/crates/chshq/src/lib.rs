//! Exact classical values of CHSH_q(p) non-local games.
//!
//! Two players receive inputs x, y in F_q and answer a, b in F_q without
//! communicating; they win when a + b = xy in the field. Bob's input is
//! uniform while Alice's follows any distribution whose largest probability
//! is at most p. This crate computes, constructs, and certifies the best
//! classical winning probability of that game family with exact rational
//! arithmetic end to end:
//!
//! - [`field`] — deterministic GF(p^k) construction and element arithmetic
//! - [`game`] — strategies, capped input distributions, exact values, and
//!   the score-greedy distribution that maximizes a fixed strategy
//! - [`incidence`] — the point/line picture in F_q^2: counting, the
//!   closed-form optimum k + n(n-1)/2, configuration classes, and a
//!   strictly-improving move for every non-optimal class
//! - [`construction`] — the greedy candidate-elimination build of an
//!   optimal strategy meeting the upper bound
//! - [`bounds`] — the p + sqrt(2/q) baseline, the sharper
//!   p + ((n-1)/q)(1 - np/2) bound and its p + 1/(2pq) closed form, exact
//!   regime predicates, and aggregated per-(q, p) reports
//! - [`oracle`] — exhaustive certification: full strategy enumeration, the
//!   best-response reduction (to q = 8), and brute-force incidence search
//! - [`sweep`] / [`files`] — parameter grids, CSV emission, and the
//!   self-describing JSON formats behind the CLI
//!
//! Irrational quantities (square roots) are handled as two-sided rational
//! enclosures with directed rounding ([`ratio::Enclosure`]); no value
//! computation touches floating point.
//!
//! ## Examples
//!
//! One runnable example per capability:
//!
//! ```text
//! cargo run --example field_arithmetic       # GF(p^k) construction and ops
//! cargo run --example game_values            # strategies and exact values
//! cargo run --example incidence_improvement  # classes and improving moves
//! cargo run --example construct_optimal      # the greedy optimal build
//! cargo run --example bounds_comparison      # the three bounds side by side
//! cargo run --example oracle_certification   # exhaustive certification
//! cargo run --example sweep_to_csv           # grid sweeps and CSV output
//! cargo run --example strategy_files         # on-disk formats and round trips
//! ```
//!
//! ## Quick start
//!
//! ```
//! use chshq::construction::construct;
//! use chshq::bounds::thm1_bound;
//! use chshq::field::FieldSpec;
//! use chshq::game::GameParams;
//! use chshq::ratio::parse_ratio;
//!
//! let params = GameParams::new(FieldSpec::new(7)?, parse_ratio("1/3")?)?;
//! let built = construct(&params)?;
//! assert_eq!(built.achieved_value, thm1_bound(7, params.p()).unwrap());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The `chshq` binary wraps the same functionality as subcommands
//! (`bounds`, `construct`, `evaluate`, `oracle`, `sweep`,
//! `incidence verify`); see the README for the command reference.

pub mod bounds;
pub mod construction;
pub mod field;
pub mod files;
pub mod game;
pub mod incidence;
pub mod oracle;
pub mod ratio;
pub mod sweep;
