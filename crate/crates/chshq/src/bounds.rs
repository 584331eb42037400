//! Closed-form bound evaluators and regime predicates, plus the aggregated
//! per-(q, p) report combining bounds, the constructed lower bound, and the
//! oracle value.
//!
//! Regime predicates are exact integer/rational comparisons (2p^2 q >= 1,
//! 2q >= n(n-1)), never floating thresholds. Irrational quantities are
//! two-sided rational enclosures with directed rounding, so every reported
//! comparison and printed digit is conservative.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::construction::{construct, regime_check, theorem_value};
use crate::field::{FieldError, FieldSpec};
use crate::game::{GameError, GameParams};
use crate::oracle::{brute_force_value, OracleMode, OracleOptions};
use crate::ratio::{ceil_recip, format_ratio, ratio_u64, Enclosure, Rational};

/// Default precision for irrational bounds, in significant bits.
pub const DEFAULT_PRECISION_BITS: u32 = 50;

/// Reads `CHSHQ_PRECISION_BITS`, falling back to the 50-bit default.
pub fn precision_bits_from_env() -> u32 {
    std::env::var("CHSHQ_PRECISION_BITS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&b| (1..=65536).contains(&b))
        .unwrap_or(DEFAULT_PRECISION_BITS)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("out of regime: {0}")]
    OutOfRegime(&'static str),
}

/// The p + sqrt(2/q) upper bound, with a vacuity flag (true when the bound
/// is >= 1 and so says nothing).
#[derive(Debug, Clone)]
pub struct ChakrabortyBound {
    pub enclosure: Enclosure,
    pub vacuous: bool,
}

pub fn chakraborty_bound(q: u64, p: &Rational, bits: u32) -> ChakrabortyBound {
    assert!(q >= 2);
    let two_over_q = Rational::new(BigInt::from(2), BigInt::from(q));
    let enclosure = Enclosure::sqrt(&two_over_q, bits).add_rational(p);
    let one = Rational::one();
    let mut probe = enclosure.clone();
    let mut b = bits;
    let vacuous = loop {
        if probe.certainly_at_least(&one) {
            break true;
        }
        if probe.certainly_below(&one) {
            break false;
        }
        // Straddling 1 with an inexact enclosure: refine. The value can only
        // equal 1 when sqrt(2/q) is rational, and then the enclosure is
        // exact and already decided above.
        b *= 2;
        probe = Enclosure::sqrt(&two_over_q, b).add_rational(p);
    };
    ChakrabortyBound { enclosure, vacuous }
}

/// p + ((n-1)/q)(1 - np/2) with n = ceil(1/p), valid for q >= n(n-1)/2.
pub fn thm1_bound(q: u64, p: &Rational) -> Result<Rational, BoundsError> {
    let n = ceil_recip(p);
    if 2 * q < n * (n - 1) {
        return Err(BoundsError::OutOfRegime("need q >= n(n-1)/2"));
    }
    Ok(theorem_value(q, n, p))
}

/// p + 1/(2pq), valid when 2 p^2 q >= 1 (exactly the condition
/// p >= 1/sqrt(2q)).
pub fn corollary_bound(q: u64, p: &Rational) -> Result<Rational, BoundsError> {
    if ratio_u64(2) * p * p * ratio_u64(q) < Rational::one() {
        return Err(BoundsError::OutOfRegime("need 2 p^2 q >= 1"));
    }
    Ok(p + Rational::one() / (ratio_u64(2) * p * ratio_u64(q)))
}

/// (sqrt(1+8q) - 1)/(4q), the exact positive root of 2p^2 q + p - 1 = 0:
/// the smallest p for which the corollary regime holds.
pub fn validity_threshold(q: u64, bits: u32) -> Enclosure {
    assert!(q >= 1);
    Enclosure::sqrt(&ratio_u64(1 + 8 * q), bits)
        .sub_rational(&Rational::one())
        .div_rational(&ratio_u64(4 * q))
}

/// A bound column that may be outside its validity regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegimeValue {
    Value(Rational),
    OutOfRegime,
}

impl RegimeValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            RegimeValue::Value(v) => Some(v),
            RegimeValue::OutOfRegime => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            RegimeValue::Value(v) => format_ratio(v),
            RegimeValue::OutOfRegime => "NA".into(),
        }
    }

    fn table(&self) -> String {
        match self {
            RegimeValue::Value(v) => format_ratio(v),
            RegimeValue::OutOfRegime => "OUT_OF_REGIME".into(),
        }
    }
}

/// A computed column (construction or oracle) that may be skipped or may
/// fail for a reportable reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputedValue {
    Value(Rational),
    Unavailable(String),
    Skipped,
}

impl ComputedValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            ComputedValue::Value(v) => Some(v),
            _ => None,
        }
    }

    fn csv(&self) -> String {
        match self {
            ComputedValue::Value(v) => format_ratio(v),
            _ => "NA".into(),
        }
    }

    fn table(&self) -> String {
        match self {
            ComputedValue::Value(v) => format_ratio(v),
            ComputedValue::Unavailable(reason) => format!("UNAVAILABLE ({reason})"),
            ComputedValue::Skipped => "NA".into(),
        }
    }
}

/// Everything known about one (q, p) instance.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub q: u64,
    pub p: Rational,
    pub n: u64,
    pub chakraborty: ChakrabortyBound,
    pub thm1: RegimeValue,
    pub corollary: RegimeValue,
    pub lower_construction: ComputedValue,
    pub oracle_value: ComputedValue,
    /// Whether q > (n-1)[(n-2)^2/2 + 1], the construction's guarantee.
    pub thm2_regime: bool,
    /// Exact tightness: the oracle value (or, failing that, the constructed
    /// lower bound) equals the Theorem-1 bound. None when undecidable.
    pub tight: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub construction: bool,
    pub oracle: bool,
    /// None selects full enumeration up to q = 3 and best-response above.
    pub oracle_mode: Option<OracleMode>,
    pub jobs: usize,
    pub precision_bits: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            construction: false,
            oracle: false,
            oracle_mode: None,
            jobs: 1,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Game(#[from] GameError),
}

pub fn full_report(q: u64, p: &Rational, opts: &ReportOptions) -> Result<BoundReport, ReportError> {
    let spec = FieldSpec::new(q)?;
    let params = GameParams::new(spec, p.clone())?;
    let n = params.n();

    let chakraborty = chakraborty_bound(q, p, opts.precision_bits);
    let thm1 = match thm1_bound(q, p) {
        Ok(v) => RegimeValue::Value(v),
        Err(BoundsError::OutOfRegime(_)) => RegimeValue::OutOfRegime,
    };
    let corollary = match corollary_bound(q, p) {
        Ok(v) => RegimeValue::Value(v),
        Err(BoundsError::OutOfRegime(_)) => RegimeValue::OutOfRegime,
    };

    let lower_construction = if opts.construction {
        match construct(&params) {
            Ok(r) => ComputedValue::Value(r.achieved_value),
            Err(e) => ComputedValue::Unavailable(e.to_string()),
        }
    } else {
        ComputedValue::Skipped
    };

    let oracle_value = if opts.oracle {
        let mode = opts.oracle_mode.unwrap_or_else(|| OracleMode::auto(q));
        match brute_force_value(&params, &OracleOptions::new(mode).with_jobs(opts.jobs)) {
            Ok(r) => ComputedValue::Value(r.value),
            Err(e) => ComputedValue::Unavailable(e.to_string()),
        }
    } else {
        ComputedValue::Skipped
    };

    let tight = match (&thm1, &oracle_value, &lower_construction) {
        (RegimeValue::Value(t), ComputedValue::Value(o), _) => Some(o == t),
        (RegimeValue::Value(t), _, ComputedValue::Value(l)) => Some(l == t),
        _ => None,
    };

    Ok(BoundReport {
        q,
        p: p.clone(),
        n,
        chakraborty,
        thm1,
        corollary,
        lower_construction,
        oracle_value,
        thm2_regime: regime_check(&params),
        tight,
    })
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "q,p_num,p_den,n,chakraborty,thm1,corollary,construction,oracle,tight";

    /// One CSV row: exact rationals as "num/den", reals with 12 decimal
    /// digits (rounded up, staying an upper bound), absent values as "NA".
    pub fn csv_row(&self) -> String {
        let tight = match self.tight {
            Some(true) => "true",
            Some(false) => "false",
            None => "NA",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.p.numer(),
            self.p.denom(),
            self.n,
            self.chakraborty.enclosure.decimal_upper(12),
            self.thm1.csv(),
            self.corollary.csv(),
            self.lower_construction.csv(),
            self.oracle_value.csv(),
            tight
        )
    }

    /// Aligned key-value table for terminal output.
    pub fn table(&self) -> String {
        let mut chak = self.chakraborty.enclosure.decimal_upper(12);
        if self.chakraborty.vacuous {
            chak.push_str(" (vacuous)");
        }
        let tight = match self.tight {
            Some(true) => "true".to_string(),
            Some(false) => "false".to_string(),
            None => "unknown".to_string(),
        };
        let rows = [
            ("q", self.q.to_string()),
            ("p", format_ratio(&self.p)),
            ("n", self.n.to_string()),
            ("chakraborty", chak),
            ("thm1", self.thm1.table()),
            ("corollary", self.corollary.table()),
            ("construction", self.lower_construction.table()),
            ("oracle", self.oracle_value.table()),
            ("thm2_regime", self.thm2_regime.to_string()),
            ("tight", tight),
        ];
        rows.iter()
            .map(|(k, v)| format!("{k:<13} {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// True when some requested column could not be produced (out of regime,
    /// construction failure, oracle too large). Drives the CLI exit code 2.
    pub fn incomplete(&self) -> bool {
        matches!(self.thm1, RegimeValue::OutOfRegime)
            || matches!(self.corollary, RegimeValue::OutOfRegime)
            || matches!(self.lower_construction, ComputedValue::Unavailable(_))
            || matches!(self.oracle_value, ComputedValue::Unavailable(_))
    }
}
