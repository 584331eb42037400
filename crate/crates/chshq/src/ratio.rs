//! Exact rational helpers: parsing/formatting of `num/den` values, the
//! ceiling reciprocal used for `n`, and two-sided rational enclosures of
//! irrational square roots (no floating point anywhere).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational with arbitrary-precision integer parts. All probabilities
/// and bound values in this crate are of this type.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatioError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?} (expected \"num/den\" or an integer)")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"num/den"` (or a bare integer) into an exact rational.
pub fn parse_ratio(s: &str) -> Result<Rational, ParseRatioError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatioError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| ParseRatioError::Invalid(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseRatioError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` form: reduced, denominator >= 1. Integers render as
/// `"k/1"` so the format round-trips unambiguously.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact ceiling of `1/p` for p > 0.
pub fn ceil_recip(p: &Rational) -> u64 {
    debug_assert!(p.is_positive());
    let n = p.denom().div_ceil(p.numer());
    n.to_u64().expect("ceil(1/p) exceeds u64 range")
}

/// Rational from a u64.
pub fn ratio_u64(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Two-sided rational enclosure `lo <= x <= hi` of a nonnegative real, with
/// `lo == hi` exactly when the value is rational and known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn exact(v: Rational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    /// Enclosure of sqrt(x) for x >= 0, with relative width at most 2^-bits.
    /// Perfect squares collapse to an exact enclosure.
    ///
    /// sqrt(a/b) = sqrt(a*b)/b, bracketed by the floor integer square root of
    /// a*b scaled by 4^t.
    pub fn sqrt(x: &Rational, bits: u32) -> Self {
        assert!(!x.is_negative(), "sqrt of a negative rational");
        if x.is_zero() {
            return Enclosure::exact(Rational::zero());
        }
        let t = bits + 2;
        let a = x.numer();
        let b = x.denom();
        let scaled: BigInt = (a * b) << (2 * t as usize);
        let root = scaled.sqrt();
        let den: BigInt = b << (t as usize);
        if &root * &root == scaled {
            return Enclosure::exact(Rational::new(root, den));
        }
        Enclosure {
            lo: Rational::new(root.clone(), den.clone()),
            hi: Rational::new(root + BigInt::one(), den),
        }
    }

    pub fn lower(&self) -> &Rational {
        &self.lo
    }

    pub fn upper(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        Enclosure {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    pub fn sub_rational(&self, r: &Rational) -> Self {
        Enclosure {
            lo: &self.lo - r,
            hi: &self.hi - r,
        }
    }

    /// Divides by a positive rational.
    pub fn div_rational(&self, r: &Rational) -> Self {
        assert!(r.is_positive());
        Enclosure {
            lo: &self.lo / r,
            hi: &self.hi / r,
        }
    }

    /// True when the enclosed value is certainly strictly greater than `r`.
    pub fn certainly_greater_than(&self, r: &Rational) -> bool {
        &self.lo > r
    }

    /// True when the enclosed value is certainly >= `r`.
    pub fn certainly_at_least(&self, r: &Rational) -> bool {
        &self.lo >= r
    }

    /// True when the enclosed value is certainly < `r`.
    pub fn certainly_below(&self, r: &Rational) -> bool {
        &self.hi < r
    }

    /// Upper endpoint rounded *up* at `digits` decimal places, so the printed
    /// number is still an upper bound of the enclosed value.
    pub fn decimal_upper(&self, digits: u32) -> String {
        decimal_ceil(&self.hi, digits)
    }
}

/// `r` rounded up (toward +inf) at `digits` decimal places, as a string.
pub fn decimal_ceil(r: &Rational, digits: u32) -> String {
    assert!(!r.is_negative());
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r.numer() * &scale).div_ceil(r.denom());
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let frac = frac_part.to_string();
    format!(
        "{}.{}{}",
        int_part,
        "0".repeat(digits as usize - frac.len()),
        frac
    )
}
