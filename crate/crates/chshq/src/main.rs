//! `chshq` — command-line front end over the library: bound tables,
//! strategy construction, evaluation, oracle runs, parameter sweeps, and
//! configuration checks.
//!
//! Exit codes: 0 success, 1 invalid input, 2 when a requested result is out
//! of regime or otherwise unavailable (the run itself still completed).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chshq::bounds::{full_report, precision_bits_from_env, ReportOptions};
use chshq::construction::{construct, regime_check, ConstructionError};
use chshq::field::FieldSpec;
use chshq::files;
use chshq::game::{max_game_value, win_probability, GameParams};
use chshq::incidence::{classify, count_incidences, GameConfiguration, IncidenceError};
use chshq::oracle::{brute_force_value, OracleError, OracleMode, OracleOptions};
use chshq::ratio::{format_ratio, parse_ratio, Rational};
use chshq::sweep::{run_sweep, write_csv, QSelection, SweepError, SweepSpec};

#[derive(Parser)]
#[command(
    name = "chshq",
    version,
    about = "Exact classical values of CHSH_q(p) games: bounds, constructions, oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    BestResponse,
}

impl From<ModeArg> for OracleMode {
    fn from(m: ModeArg) -> OracleMode {
        match m {
            ModeArg::Full => OracleMode::Full,
            ModeArg::BestResponse => OracleMode::BestResponse,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the bound table for one (q, p)
    Bounds {
        /// Field order (a prime power)
        #[arg(long)]
        q: u64,
        /// Probability cap as "num/den"
        #[arg(long)]
        p: String,
        /// Also run the greedy construction (lower-bound column)
        #[arg(long)]
        with_construction: bool,
        /// Also run the brute-force oracle
        #[arg(long)]
        with_oracle: bool,
        /// Oracle enumeration mode (default: full up to q=3, best-response above)
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Oracle worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build the optimal strategy; write strategy and configuration files
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: String,
        /// Strategy output path; the configuration lands next to it as
        /// <stem>.config.json
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a strategy file: max game value at --p, or the win
    /// probability under --distribution
    Evaluate {
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        distribution: Option<PathBuf>,
    },
    /// Certify the classical value by exhaustive search
    Oracle {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a (q, p) grid into a CSV file
    Sweep {
        /// Inclusive range "2..101" or explicit list "2,3,5,7"
        #[arg(long)]
        q: String,
        /// Comma-separated rationals, e.g. "1/2,1/3"
        #[arg(long)]
        p: String,
        /// CSV output path
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        with_construction: bool,
        #[arg(long)]
        with_oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Incidence-configuration utilities
    Incidence {
        #[command(subcommand)]
        command: IncidenceCommand,
    },
}

#[derive(Subcommand)]
enum IncidenceCommand {
    /// Validate a configuration file; print its class and incidence count
    Verify {
        /// Configuration file path
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn parse_probability(s: &str) -> Result<Rational, String> {
    let p = parse_ratio(s).map_err(|e| e.to_string())?;
    if p <= Rational::new(0.into(), 1.into()) || p > Rational::new(1.into(), 1.into()) {
        return Err(format!("p = {s} must lie in (0, 1]"));
    }
    Ok(p)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Bounds {
            q,
            p,
            with_construction,
            with_oracle,
            mode,
            jobs,
        } => {
            let p = parse_probability(&p)?;
            let options = ReportOptions {
                construction: with_construction,
                oracle: with_oracle,
                oracle_mode: mode.map(Into::into),
                jobs,
                precision_bits: precision_bits_from_env(),
            };
            let report = full_report(q, &p, &options).map_err(|e| e.to_string())?;
            println!("{}", report.table());
            Ok(if report.incomplete() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Construct { q, p, out } => {
            let p = parse_probability(&p)?;
            let spec = FieldSpec::new(q).map_err(|e| e.to_string())?;
            let params = GameParams::new(spec, p).map_err(|e| e.to_string())?;
            match construct(&params) {
                Ok(result) => {
                    let config_path = configuration_path(&out);
                    files::write_strategy(&out, &result.strategy).map_err(|e| e.to_string())?;
                    files::write_configuration(
                        &config_path,
                        result.configuration.as_configuration(),
                    )
                    .map_err(|e| e.to_string())?;
                    let in_regime = regime_check(&params);
                    if !in_regime {
                        eprintln!(
                            "warning: (q={}, p={}) is outside the guaranteed construction regime; the greedy succeeded anyway",
                            q,
                            format_ratio(params.p())
                        );
                    }
                    println!("achieved_value {}", format_ratio(&result.achieved_value));
                    println!("thm2_regime    {in_regime}");
                    println!("strategy       {}", out.display());
                    println!("configuration  {}", config_path.display());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ ConstructionError::InfeasibleParams { .. }) => Err(e.to_string()),
                Err(e @ ConstructionError::CandidatesExhausted { .. }) => {
                    eprintln!("construction failed: {e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Evaluate {
            strategy,
            p,
            distribution,
        } => {
            let strategy = files::read_strategy(&strategy).map_err(|e| e.to_string())?;
            let value = match distribution {
                Some(path) => {
                    let dist = files::read_distribution(&path).map_err(|e| e.to_string())?;
                    win_probability(&strategy, &dist).map_err(|e| e.to_string())?
                }
                None => {
                    let p = p.ok_or("either --p or --distribution is required")?;
                    let p = parse_probability(&p)?;
                    let params = GameParams::new(strategy.spec().clone(), p)
                        .map_err(|e| e.to_string())?;
                    max_game_value(&strategy, &params).map_err(|e| e.to_string())?
                }
            };
            println!("{}", format_ratio(&value));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { q, p, mode, jobs } => {
            let p = parse_probability(&p)?;
            let spec = FieldSpec::new(q).map_err(|e| e.to_string())?;
            let params = GameParams::new(spec, p).map_err(|e| e.to_string())?;
            let mode = mode.map(Into::into).unwrap_or_else(|| OracleMode::auto(q));
            match brute_force_value(&params, &OracleOptions::new(mode).with_jobs(jobs)) {
                Ok(result) => {
                    println!("value               {}", format_ratio(&result.value));
                    println!(
                        "witness_a           {:?}",
                        result.witness_strategy.alice_codes()
                    );
                    println!(
                        "witness_b           {:?}",
                        result.witness_strategy.bob_codes()
                    );
                    println!("strategies_examined {}", result.strategies_examined);
                    println!("mode                {}", result.reduction_used);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ OracleError::TooLarge { .. }) => {
                    eprintln!("oracle refused: {e}");
                    Ok(ExitCode::from(2))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Sweep {
            q,
            p,
            csv,
            with_construction,
            with_oracle,
            jobs,
        } => {
            let q = parse_q_selection(&q)?;
            let p_list = p
                .split(',')
                .map(|s| parse_probability(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = SweepSpec {
                q,
                p_list,
                options: ReportOptions {
                    construction: with_construction,
                    oracle: with_oracle,
                    oracle_mode: None,
                    jobs,
                    precision_bits: precision_bits_from_env(),
                },
            };
            let outcome = match run_sweep(&spec) {
                Ok(outcome) => outcome,
                Err(e @ (SweepError::NotAPrimePower(_) | SweepError::EmptyGrid)) => {
                    return Err(e.to_string())
                }
                Err(SweepError::Report(e)) => return Err(e.to_string()),
            };
            for q in &outcome.skipped {
                eprintln!("notice: skipping q = {q} (not a prime power)");
            }
            write_csv(&csv, &outcome.reports).map_err(|e| e.to_string())?;
            println!("wrote {} rows to {}", outcome.reports.len(), csv.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Incidence { command } => match command {
            IncidenceCommand::Verify { config } => {
                let cfg = files::read_configuration(&config).map_err(|e| e.to_string())?;
                println!("points      {}", cfg.points().len());
                println!("lines       {}", cfg.lines().len());
                println!("incidences  {}", count_incidences(&cfg));
                let game_shaped = GameConfiguration::new(cfg.clone()).is_ok();
                match classify(&cfg) {
                    Ok(class) => {
                        println!("class       {}", class.label());
                        println!("game_configuration {game_shaped}");
                        Ok(ExitCode::SUCCESS)
                    }
                    Err(IncidenceError::OutOfRegime { n, k, q }) => {
                        println!("class       OUT_OF_REGIME");
                        println!("game_configuration {game_shaped}");
                        eprintln!(
                            "note: classification needs q >= |L| >= n(n-1)/2 and n >= 1 (n={n}, k={k}, q={q})"
                        );
                        Ok(ExitCode::from(2))
                    }
                    Err(e) => Err(e.to_string()),
                }
            }
        },
    }
}

/// "a..b" (inclusive) or "a,b,c".
fn parse_q_selection(s: &str) -> Result<QSelection, String> {
    if let Some((start, end)) = s.split_once("..") {
        let start: u64 = start
            .trim()
            .parse()
            .map_err(|_| format!("bad range start {start:?}"))?;
        let end: u64 = end
            .trim()
            .parse()
            .map_err(|_| format!("bad range end {end:?}"))?;
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        return Ok(QSelection::Range { start, end });
    }
    let list = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad field order {part:?}"))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    Ok(QSelection::List(list))
}

/// s.json -> s.config.json (appends when there is no extension).
fn configuration_path(strategy_path: &Path) -> PathBuf {
    let mut name = strategy_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "strategy".into());
    name.push_str(".config.json");
    strategy_path.with_file_name(name)
}
