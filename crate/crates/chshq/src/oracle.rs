//! Brute-force certification of classical game values and incidence optima
//! for small parameters — the independent ground truth behind every
//! tightness claim.
//!
//! Two enumeration modes. `Full` walks every (a, b) strategy pair, feasible
//! up to q^(2q) <= 10^8. `BestResponse` walks only Bob's q^q response
//! functions and derives Alice's reply per input: given b, the rows of the
//! score table are independent, so each a(x) can be set to a maximizer of
//! |{y : a(x) = xy - b(y)}| without loss. That turns q^(2q) work into
//! q^q * q^2 table operations and carries the oracle to q = 8.
//!
//! Work partitioning: the Bob-function index range splits into disjoint
//! contiguous chunks processed independently; the reduction takes the
//! maximum value, ties resolved toward the smallest Bob index. Results are
//! identical for any chunk count.

use std::fmt;
use std::thread;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::game::{
    best_distribution, max_game_value, row_scores, GameError, GameParams, InputDistribution,
    Strategy,
};
use crate::incidence::{count_incidences, Configuration, IncidenceError, Line, Point};
use crate::ratio::Rational;

/// Strategy-pair budget for full enumeration.
pub const FULL_MODE_LIMIT: u128 = 100_000_000;
/// Table-operation budget (q^q * q^2) for the best-response reduction.
pub const BEST_RESPONSE_LIMIT: u128 = 2_000_000_000;
/// Configuration budget for the incidence search, after fixing the first
/// point at the origin.
pub const INCIDENCE_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Full,
    BestResponse,
}

impl OracleMode {
    /// Full enumeration is the default only at q <= 3; the best-response
    /// reduction takes over above that.
    pub fn auto(q: u64) -> OracleMode {
        if q <= 3 {
            OracleMode::Full
        } else {
            OracleMode::BestResponse
        }
    }
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleMode::Full => write!(f, "full"),
            OracleMode::BestResponse => write!(f, "best-response"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    pub mode: OracleMode,
    pub jobs: usize,
    /// Fix b(0) = 0 and enumerate only the q^(q-1) representatives of the
    /// shift symmetry a'(x) = a(x)+c, b'(y) = b(y)-c. Cuts the count by
    /// exactly a factor q and never changes the value.
    pub fix_b0: bool,
}

impl OracleOptions {
    pub fn new(mode: OracleMode) -> Self {
        OracleOptions {
            mode,
            jobs: 1,
            fix_b0: false,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_fix_b0(mut self, fix: bool) -> Self {
        self.fix_b0 = fix;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search too large for {mode} mode at q = {q} (cost {cost} exceeds {limit})")]
    TooLarge {
        mode: &'static str,
        q: u64,
        cost: u128,
        limit: u128,
    },
    #[error("p has numerator or denominator beyond u64; the oracle scores with machine integers")]
    ParameterTooLarge,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: Rational,
    pub witness_strategy: Strategy,
    pub witness_distribution: InputDistribution,
    pub strategies_examined: u128,
    pub reduction_used: OracleMode,
}

fn to_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

/// Integer weights of the value numerator: value = numer / (p_den * q) with
/// numer = p_num * (sum of top n-1 scores) + (p_den - p_num*(n-1)) * (nth).
struct Weights {
    top: u64,
    last: u64,
    n: usize,
}

impl Weights {
    fn of(params: &GameParams) -> Result<Weights, OracleError> {
        let pn = to_u64(params.p().numer()).ok_or(OracleError::ParameterTooLarge)?;
        let pd = to_u64(params.p().denom()).ok_or(OracleError::ParameterTooLarge)?;
        let n = params.n();
        Ok(Weights {
            top: pn,
            last: pd - pn * (n - 1),
            n: n as usize,
        })
    }

    /// Numerator from unsorted row scores.
    fn numer(&self, scores: &mut [u8]) -> u128 {
        scores.sort_unstable_by(|a, b| b.cmp(a));
        let mut total = 0u128;
        for &s in scores.iter().take(self.n - 1) {
            total += self.top as u128 * s as u128;
        }
        total + self.last as u128 * scores[self.n - 1] as u128
    }
}

struct Tables {
    q: usize,
    /// need[x*q + y] = x*y - b(y) is what a(x) must equal to win (x, y),
    /// before b is subtracted; stored as x*y so the per-b pass only does the
    /// subtraction lookup.
    mul: Vec<u8>,
    sub: Vec<u8>,
}

impl Tables {
    fn of(spec: &FieldSpec) -> Tables {
        let q = spec.q() as usize;
        let mut mul = vec![0u8; q * q];
        let mut sub = vec![0u8; q * q];
        for a in 0..q as u64 {
            for b in 0..q as u64 {
                mul[(a * spec.q() + b) as usize] = spec.mul(a, b) as u8;
                sub[(a * spec.q() + b) as usize] = spec.sub(a, b) as u8;
            }
        }
        Tables { q, mul, sub }
    }

    /// cnt[x*q + v] = |{y : x*y - b(y) = v}| for the given Bob digits.
    fn response_counts(&self, bob: &[u8], cnt: &mut [u8]) {
        let q = self.q;
        cnt.fill(0);
        for x in 0..q {
            let row = &self.mul[x * q..(x + 1) * q];
            let out = &mut cnt[x * q..(x + 1) * q];
            for y in 0..q {
                let v = self.sub[row[y] as usize * q + bob[y] as usize];
                out[v as usize] += 1;
            }
        }
    }
}

fn decode_base_q(mut index: u64, q: u64, out: &mut [u8]) {
    for d in out.iter_mut() {
        *d = (index % q) as u8;
        index /= q;
    }
}

struct ChunkBest {
    numer: u128,
    b_index: u64,
    a_index: u64, // meaningful in full mode only
}

/// Scans Bob indices [lo, hi) (in representative space when b(0) is fixed)
/// and returns the chunk's best candidate, ties toward the smaller index.
fn scan_chunk(
    tables: &Tables,
    weights: &Weights,
    mode: OracleMode,
    fix_b0: bool,
    lo: u64,
    hi: u64,
) -> Option<ChunkBest> {
    let q = tables.q;
    let qq = q as u64;
    let mut bob = vec![0u8; q];
    let mut cnt = vec![0u8; q * q];
    let mut scores = vec![0u8; q];
    let mut alice = vec![0u8; q];
    let mut best: Option<ChunkBest> = None;

    let a_total = qq.pow(q as u32);
    for rep in lo..hi {
        let b_index = if fix_b0 { rep * qq } else { rep };
        decode_base_q(b_index, qq, &mut bob);
        tables.response_counts(&bob, &mut cnt);
        match mode {
            OracleMode::BestResponse => {
                for x in 0..q {
                    let row = &cnt[x * q..(x + 1) * q];
                    let mut best_v = 0usize;
                    for v in 1..q {
                        if row[v] > row[best_v] {
                            best_v = v;
                        }
                    }
                    alice[x] = best_v as u8;
                    scores[x] = row[best_v];
                }
                let numer = weights.numer(&mut scores);
                if best.as_ref().is_none_or(|b| numer > b.numer) {
                    best = Some(ChunkBest {
                        numer,
                        b_index,
                        a_index: 0,
                    });
                }
            }
            OracleMode::Full => {
                for a_index in 0..a_total {
                    decode_base_q(a_index, qq, &mut alice);
                    for x in 0..q {
                        scores[x] = cnt[x * q + alice[x] as usize];
                    }
                    let numer = weights.numer(&mut scores);
                    if best.as_ref().is_none_or(|b| numer > b.numer) {
                        best = Some(ChunkBest {
                            numer,
                            b_index,
                            a_index,
                        });
                    }
                }
            }
        }
    }
    best
}

/// Exact maximum of max_game_value over deterministic strategies, with a
/// deterministic witness: Bob functions enumerate as base-q counters
/// ascending, Alice ties break toward the smallest element code, and the
/// global tie rule prefers the smallest Bob index.
pub fn brute_force_value(
    params: &GameParams,
    opts: &OracleOptions,
) -> Result<OracleResult, OracleError> {
    let spec = params.spec().clone();
    let q = spec.q();
    let n = params.n();
    if n > q {
        return Err(GameError::InfeasibleDistribution { n, q }.into());
    }
    let bob_total = (q as u128).pow(q as u32);
    match opts.mode {
        OracleMode::Full => {
            let cost = bob_total.saturating_mul(bob_total);
            if cost > FULL_MODE_LIMIT {
                return Err(OracleError::TooLarge {
                    mode: "full",
                    q,
                    cost,
                    limit: FULL_MODE_LIMIT,
                });
            }
        }
        OracleMode::BestResponse => {
            let cost = bob_total.saturating_mul((q * q) as u128);
            if cost > BEST_RESPONSE_LIMIT {
                return Err(OracleError::TooLarge {
                    mode: "best-response",
                    q,
                    cost,
                    limit: BEST_RESPONSE_LIMIT,
                });
            }
        }
    }

    let weights = Weights::of(params)?;
    let tables = Tables::of(&spec);
    let reps: u64 = if opts.fix_b0 {
        q.pow(q as u32 - 1)
    } else {
        q.pow(q as u32)
    };
    let jobs = opts.jobs.max(1).min(reps.max(1) as usize);

    let winner = if jobs == 1 {
        scan_chunk(&tables, &weights, opts.mode, opts.fix_b0, 0, reps)
    } else {
        let chunk_bests: Vec<Option<ChunkBest>> = thread::scope(|s| {
            let tables = &tables;
            let weights = &weights;
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let lo = reps * j as u64 / jobs as u64;
                    let hi = reps * (j as u64 + 1) / jobs as u64;
                    s.spawn(move || {
                        scan_chunk(tables, weights, opts.mode, opts.fix_b0, lo, hi)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        // Chunks cover ascending contiguous ranges; keeping the first
        // strictly-greater winner reproduces the single-chunk tie rule.
        let mut acc: Option<ChunkBest> = None;
        for cb in chunk_bests.into_iter().flatten() {
            if acc.as_ref().is_none_or(|a| cb.numer > a.numer) {
                acc = Some(cb);
            }
        }
        acc
    };
    let winner = winner.expect("at least one strategy is always examined");

    // Rebuild the witness from its indices.
    let qs = q as usize;
    let mut bob = vec![0u8; qs];
    decode_base_q(winner.b_index, q, &mut bob);
    let mut alice = vec![0u8; qs];
    match opts.mode {
        OracleMode::Full => decode_base_q(winner.a_index, q, &mut alice),
        OracleMode::BestResponse => {
            let mut cnt = vec![0u8; qs * qs];
            tables.response_counts(&bob, &mut cnt);
            for x in 0..qs {
                let row = &cnt[x * qs..(x + 1) * qs];
                let mut best_v = 0usize;
                for v in 1..qs {
                    if row[v] > row[best_v] {
                        best_v = v;
                    }
                }
                alice[x] = best_v as u8;
            }
        }
    }

    let witness_strategy = Strategy::new(
        spec,
        alice.iter().map(|&c| c as u64).collect(),
        bob.iter().map(|&c| c as u64).collect(),
    )?;
    let witness_distribution = best_distribution(&witness_strategy, params)?;
    let value = max_game_value(&witness_strategy, params)?;
    debug_assert_eq!(
        value,
        Rational::new(
            BigInt::from(winner.numer),
            params.p().denom() * BigInt::from(q)
        )
    );

    let strategies_examined = match opts.mode {
        OracleMode::Full => (reps as u128).saturating_mul(bob_total),
        OracleMode::BestResponse => reps as u128,
    };
    Ok(OracleResult {
        value,
        witness_strategy,
        witness_distribution,
        strategies_examined,
        reduction_used: opts.mode,
    })
}

/// Confirms that shifting a by +c and b by -c leaves row scores and the
/// game value unchanged — the symmetry behind the optional b(0) = 0 search
/// pruning.
pub fn shift_symmetry_check(
    strategy: &Strategy,
    c: &FieldElement,
    params: &GameParams,
) -> Result<bool, OracleError> {
    let spec = strategy.spec();
    if c.spec() != spec || params.spec() != spec {
        return Err(GameError::Field(crate::field::FieldError::MixedFields).into());
    }
    let shifted = Strategy::new(
        spec.clone(),
        strategy
            .alice_codes()
            .iter()
            .map(|&a| spec.add(a, c.code()))
            .collect(),
        strategy
            .bob_codes()
            .iter()
            .map(|&b| spec.sub(b, c.code()))
            .collect(),
    )?;
    if row_scores(strategy) != row_scores(&shifted) {
        return Ok(false);
    }
    Ok(max_game_value(strategy, params)? == max_game_value(&shifted, params)?)
}

/// Result of the exhaustive incidence search.
#[derive(Debug, Clone)]
pub struct IncidenceSearch {
    pub maximum: u64,
    pub witness: Configuration,
    pub configurations_examined: u128,
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut out: u128 = 1;
    for i in 0..k.min(n - k) {
        out = out.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    out
}

/// In-place lexicographic k-subset enumeration with prefix sums, so the
/// running incidence total updates only from the first changed position.
struct SubsetSums<'a> {
    counts: &'a [u64],
    idx: Vec<usize>,
    sums: Vec<u64>,
    started: bool,
}

impl<'a> SubsetSums<'a> {
    fn new(counts: &'a [u64], k: usize) -> SubsetSums<'a> {
        let idx: Vec<usize> = (0..k).collect();
        let sums = vec![0; k + 1];
        SubsetSums {
            counts,
            idx,
            sums,
            started: false,
        }
    }

    fn refresh_from(&mut self, from: usize) {
        for j in from..self.idx.len() {
            self.sums[j + 1] = self.sums[j] + self.counts[self.idx[j]];
        }
    }

    /// Advances to the next subset; returns its incidence total.
    fn next(&mut self) -> Option<u64> {
        let k = self.idx.len();
        let m = self.counts.len();
        if k > m {
            return None;
        }
        if !self.started {
            self.started = true;
            self.refresh_from(0);
            return Some(self.sums[k]);
        }
        let mut i = k;
        while i > 0 && self.idx[i - 1] == i - 1 + m - k {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        self.idx[i - 1] += 1;
        for j in i..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        self.refresh_from(i - 1);
        Some(self.sums[k])
    }
}

/// Exact maximum of count_incidences over all P of size n and L of size k
/// in F_q^2, by exhaustive enumeration. Point sets are enumerated with the
/// first point pinned to the origin: the affine maps (x, y) -> (x+c, y+sx+t)
/// act transitively on points and bijectively on slope-offset lines while
/// preserving incidences, so the maximum is unaffected.
pub fn brute_force_incidences(n: u64, k: u64, q: u64) -> Result<IncidenceSearch, OracleError> {
    let spec = FieldSpec::new(q).map_err(GameError::Field)?;
    let grid = q * q;
    let cost = if n == 0 {
        binomial(grid, k)
    } else {
        binomial(grid - 1, n - 1).saturating_mul(binomial(grid, k))
    };
    if cost > INCIDENCE_LIMIT || grid > 128 {
        return Err(OracleError::TooLarge {
            mode: "incidence",
            q,
            cost,
            limit: INCIDENCE_LIMIT,
        });
    }

    // Bitmask of grid points on each line, indexed by line code.
    let mut line_masks = vec![0u128; grid as usize];
    for s in 0..q {
        for o in 0..q {
            let mut mask = 0u128;
            for x in 0..q {
                let y = spec.add(spec.mul(s, x), o);
                mask |= 1u128 << (x * q + y);
            }
            line_masks[(s * q + o) as usize] = mask;
        }
    }

    let mut best_total = 0u64;
    let mut best_pts: Vec<usize> = Vec::new();
    let mut best_lns: Vec<usize> = Vec::new();
    let mut first = true;
    let mut examined: u128 = 0;

    // Point subsets: {0} union (n-1)-subsets of {1, .., grid-1}.
    let rest: Vec<usize> = (1..grid as usize).collect();
    let mut point_iter = combination_indices(rest.len(), n.saturating_sub(1) as usize);
    while let Some(tail) = point_iter.next() {
        let mut pts: Vec<usize> = Vec::with_capacity(n as usize);
        if n >= 1 {
            pts.push(0);
        }
        pts.extend(tail.iter().map(|&i| rest[i]));
        let mut pmask = 0u128;
        for &p in &pts {
            pmask |= 1u128 << p;
        }
        let counts: Vec<u64> = line_masks
            .iter()
            .map(|&m| (m & pmask).count_ones() as u64)
            .collect();
        let mut subsets = SubsetSums::new(&counts, k as usize);
        while let Some(total) = subsets.next() {
            examined += 1;
            if first || total > best_total {
                first = false;
                best_total = total;
                best_pts = pts.clone();
                best_lns = subsets.idx.clone();
            }
        }
    }

    let points: Vec<Point> = best_pts
        .iter()
        .map(|&code| {
            let code = code as u64;
            Point::new(spec.element(code / q)?, spec.element(code % q)?)
        })
        .collect::<Result<_, IncidenceError>>()?;
    let lines: Vec<Line> = best_lns
        .iter()
        .map(|&code| {
            let code = code as u64;
            Line::new(spec.element(code / q)?, spec.element(code % q)?)
        })
        .collect::<Result<_, IncidenceError>>()?;
    let witness = Configuration::new(spec, points, lines)?;
    debug_assert_eq!(count_incidences(&witness), best_total);
    Ok(IncidenceSearch {
        maximum: best_total,
        witness,
        configurations_examined: examined,
    })
}

/// Plain lexicographic k-subset index enumeration.
struct CombinationIndices {
    m: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

fn combination_indices(m: usize, k: usize) -> CombinationIndices {
    CombinationIndices {
        m,
        k,
        idx: (0..k).collect(),
        started: false,
        done: k > m,
    }
}

impl CombinationIndices {
    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let mut i = self.k;
        while i > 0 && self.idx[i - 1] == i - 1 + self.m - self.k {
            i -= 1;
        }
        if i == 0 {
            self.done = true;
            return None;
        }
        self.idx[i - 1] += 1;
        for j in i..self.k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}
