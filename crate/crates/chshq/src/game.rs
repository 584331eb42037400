//! Game semantics for CHSH_q(p): deterministic strategies, capped input
//! distributions, the win condition a(x) + b(y) = x*y, exact win
//! probabilities, and the score-greedy distribution that maximizes a fixed
//! strategy's value within the family.
//!
//! Everything here is exact rational arithmetic; no value computation ever
//! touches floating point.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::ratio::{ceil_recip, ratio_u64, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("response table must list exactly q = {q} element codes, got {got}")]
    WrongResponseLength { q: u64, got: usize },
    #[error("distribution must list exactly q = {q} probabilities, got {got}")]
    WrongDistributionLength { q: u64, got: usize },
    #[error("probabilities must be nonnegative")]
    NegativeProbability,
    #[error("probabilities must sum to exactly 1")]
    ProbabilitySumNotOne,
    #[error("a probability exceeds the cap p_max")]
    ProbabilityAboveCap,
    #[error("the cap p must lie in (0, 1]")]
    InvalidCap,
    #[error("n = {n} supported inputs needed but the field has only q = {q}")]
    InfeasibleDistribution { n: u64, q: u64 },
}

/// A deterministic strategy: Alice's response a(x) and Bob's response b(y),
/// stored as element codes indexed by the input's code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    spec: FieldSpec,
    alice: Vec<u64>,
    bob: Vec<u64>,
}

impl Strategy {
    pub fn new(spec: FieldSpec, alice: Vec<u64>, bob: Vec<u64>) -> Result<Self, GameError> {
        let q = spec.q();
        for table in [&alice, &bob] {
            if table.len() as u64 != q {
                return Err(GameError::WrongResponseLength {
                    q,
                    got: table.len(),
                });
            }
            if let Some(&code) = table.iter().find(|&&c| c >= q) {
                return Err(GameError::Field(FieldError::CodeOutOfRange { code, q }));
            }
        }
        Ok(Strategy { spec, alice, bob })
    }

    /// The all-zero strategy; wins exactly when x*y = 0.
    pub fn zeros(spec: &FieldSpec) -> Self {
        let q = spec.q() as usize;
        Strategy {
            spec: spec.clone(),
            alice: vec![0; q],
            bob: vec![0; q],
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn alice_codes(&self) -> &[u64] {
        &self.alice
    }

    pub fn bob_codes(&self) -> &[u64] {
        &self.bob
    }

    pub fn alice(&self, x: &FieldElement) -> Result<FieldElement, GameError> {
        if x.spec() != &self.spec {
            return Err(GameError::Field(FieldError::MixedFields));
        }
        Ok(self.spec.element(self.alice[x.code() as usize])?)
    }

    pub fn bob(&self, y: &FieldElement) -> Result<FieldElement, GameError> {
        if y.spec() != &self.spec {
            return Err(GameError::Field(FieldError::MixedFields));
        }
        Ok(self.spec.element(self.bob[y.code() as usize])?)
    }
}

/// Alice's input distribution r(x) as exact rationals, with the defining
/// family constraint max_x r(x) <= p_cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDistribution {
    spec: FieldSpec,
    probs: Vec<Rational>,
    p_cap: Rational,
}

impl InputDistribution {
    pub fn new(
        spec: FieldSpec,
        probs: Vec<Rational>,
        p_cap: Rational,
    ) -> Result<Self, GameError> {
        if !(p_cap > Rational::zero() && p_cap <= Rational::one()) {
            return Err(GameError::InvalidCap);
        }
        let q = spec.q();
        if probs.len() as u64 != q {
            return Err(GameError::WrongDistributionLength {
                q,
                got: probs.len(),
            });
        }
        let mut sum = Rational::zero();
        for r in &probs {
            if r < &Rational::zero() {
                return Err(GameError::NegativeProbability);
            }
            if r > &p_cap {
                return Err(GameError::ProbabilityAboveCap);
            }
            sum += r;
        }
        if !sum.is_one() {
            return Err(GameError::ProbabilitySumNotOne);
        }
        Ok(InputDistribution { spec, probs, p_cap })
    }

    /// Uniform distribution, cap tight at 1/q.
    pub fn uniform(spec: &FieldSpec) -> Self {
        let q = spec.q();
        let each = Rational::one() / ratio_u64(q);
        InputDistribution {
            spec: spec.clone(),
            probs: vec![each.clone(); q as usize],
            p_cap: each,
        }
    }

    /// All mass on one input, cap 1.
    pub fn point_mass(x: &FieldElement) -> Self {
        let spec = x.spec().clone();
        let mut probs = vec![Rational::zero(); spec.q() as usize];
        probs[x.code() as usize] = Rational::one();
        InputDistribution {
            spec,
            probs,
            p_cap: Rational::one(),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn p_cap(&self) -> &Rational {
        &self.p_cap
    }
}

/// The (q, p) parameters of a CHSH_q(p) family member, with n = ceil(1/p)
/// computed by exact rational ceiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameParams {
    spec: FieldSpec,
    p: Rational,
    n: u64,
}

impl GameParams {
    pub fn new(spec: FieldSpec, p: Rational) -> Result<Self, GameError> {
        if !(p > Rational::zero() && p <= Rational::one()) {
            return Err(GameError::InvalidCap);
        }
        let n = ceil_recip(&p);
        Ok(GameParams { spec, p, n })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// n = ceil(1/p), the number of inputs a feasible distribution must
    /// support. Realizable only when n <= q.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_feasible(&self) -> bool {
        self.n <= self.spec.q()
    }
}

/// True iff a(x) + b(y) = x*y in F_q.
pub fn verify(
    strategy: &Strategy,
    x: &FieldElement,
    y: &FieldElement,
) -> Result<bool, GameError> {
    let spec = strategy.spec();
    if x.spec() != spec || y.spec() != spec {
        return Err(GameError::Field(FieldError::MixedFields));
    }
    let lhs = spec.add(
        strategy.alice[x.code() as usize],
        strategy.bob[y.code() as usize],
    );
    Ok(lhs == spec.mul(x.code(), y.code()))
}

/// Per-input win counts: entry x is |{y : a(x) + b(y) = x*y}|, each in [0, q].
pub fn row_scores(strategy: &Strategy) -> Vec<u64> {
    let spec = strategy.spec();
    let q = spec.q();
    (0..q)
        .map(|x| {
            (0..q)
                .filter(|&y| {
                    spec.add(strategy.alice[x as usize], strategy.bob[y as usize])
                        == spec.mul(x, y)
                })
                .count() as u64
        })
        .collect()
}

/// Exact win probability: sum_x r(x) * |{y : win}| / q.
pub fn win_probability(
    strategy: &Strategy,
    dist: &InputDistribution,
) -> Result<Rational, GameError> {
    if strategy.spec() != dist.spec() {
        return Err(GameError::Field(FieldError::MixedFields));
    }
    let scores = row_scores(strategy);
    let mut total = Rational::zero();
    for (r, &score) in dist.probs.iter().zip(&scores) {
        if !r.is_zero() {
            total += r * ratio_u64(score);
        }
    }
    Ok(total / ratio_u64(strategy.spec().q()))
}

/// Input codes ordered by (row score descending, code ascending).
fn score_order(scores: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(scores[x]), x));
    order
}

/// Weight assignment given row scores: probability p on the n-1
/// highest-scoring inputs, the remainder 1 - p(n-1) on the next highest,
/// 0 elsewhere. Ties broken by ascending element code.
fn distribution_for_scores(
    spec: &FieldSpec,
    scores: &[u64],
    params: &GameParams,
) -> Result<InputDistribution, GameError> {
    let q = params.q();
    let n = params.n();
    if n > q {
        return Err(GameError::InfeasibleDistribution { n, q });
    }
    let order = score_order(scores);
    let p = params.p();
    let mut probs = vec![Rational::zero(); q as usize];
    for &x in order.iter().take(n as usize - 1) {
        probs[x] = p.clone();
    }
    let remainder = Rational::one() - p * ratio_u64(n - 1);
    probs[order[n as usize - 1]] = remainder;
    InputDistribution::new(spec.clone(), probs, p.clone())
}

/// The distribution maximizing a fixed strategy's value within CHSH_q(p).
pub fn best_distribution(
    strategy: &Strategy,
    params: &GameParams,
) -> Result<InputDistribution, GameError> {
    if strategy.spec() != params.spec() {
        return Err(GameError::Field(FieldError::MixedFields));
    }
    let scores = row_scores(strategy);
    distribution_for_scores(strategy.spec(), &scores, params)
}

/// The strategy's value in the maximizing game CHSH_q^max(p):
/// win_probability under best_distribution.
pub fn max_game_value(strategy: &Strategy, params: &GameParams) -> Result<Rational, GameError> {
    let dist = best_distribution(strategy, params)?;
    win_probability(strategy, &dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::parse_ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn rat(s: &str) -> Rational {
        parse_ratio(s).unwrap()
    }

    #[test]
    fn verify_zero_strategy() {
        let f = gf(3);
        let s = Strategy::zeros(&f);
        let e = |c| f.element(c).unwrap();
        assert!(verify(&s, &e(0), &e(2)).unwrap());
        assert!(!verify(&s, &e(1), &e(2)).unwrap());
    }

    #[test]
    fn verify_identity_alice() {
        let f = gf(5);
        let s = Strategy::new(f.clone(), vec![0, 1, 2, 3, 4], vec![0; 5]).unwrap();
        let e = |c| f.element(c).unwrap();
        // a(2)+b(3) = 2, xy = 6 mod 5 = 1
        assert!(!verify(&s, &e(2), &e(3)).unwrap());
        assert!(verify(&s, &e(1), &e(1)).unwrap());
    }

    #[test]
    fn verify_mixed_fields() {
        let s = Strategy::zeros(&gf(3));
        let x = gf(3).element(0).unwrap();
        let y = gf(5).element(0).unwrap();
        assert_eq!(
            verify(&s, &x, &y).unwrap_err(),
            GameError::Field(FieldError::MixedFields)
        );
    }

    #[test]
    fn win_probability_uniform_zero_strategy() {
        // Wins exactly on xy = 0.
        let s2 = Strategy::zeros(&gf(2));
        assert_eq!(
            win_probability(&s2, &InputDistribution::uniform(&gf(2))).unwrap(),
            rat("3/4")
        );
        let s3 = Strategy::zeros(&gf(3));
        assert_eq!(
            win_probability(&s3, &InputDistribution::uniform(&gf(3))).unwrap(),
            rat("5/9")
        );
    }

    #[test]
    fn point_mass_on_perfect_row() {
        // b(y) = x0*y with a(x0) = 0 answers x0 perfectly.
        let f = gf(7);
        let x0 = 3u64;
        let bob: Vec<u64> = (0..7).map(|y| f.mul(x0, y)).collect();
        let s = Strategy::new(f.clone(), vec![0; 7], bob).unwrap();
        let dist = InputDistribution::point_mass(&f.element(x0).unwrap());
        assert_eq!(win_probability(&s, &dist).unwrap(), Rational::one());
    }

    #[test]
    fn row_scores_zero_strategy() {
        assert_eq!(row_scores(&Strategy::zeros(&gf(3))), vec![3, 1, 1]);
        assert_eq!(row_scores(&Strategy::zeros(&gf(2))), vec![2, 1]);
    }

    #[test]
    fn row_scores_perfect_row() {
        let f = gf(5);
        let x0 = 2u64;
        let bob: Vec<u64> = (0..5).map(|y| f.mul(x0, y)).collect();
        let s = Strategy::new(f.clone(), vec![0; 5], bob).unwrap();
        assert_eq!(row_scores(&s)[x0 as usize], 5);
    }

    #[test]
    fn weight_rule_on_example_scores() {
        // q=5, p=2/5 (n=3), scores [5,2,2,1,0] -> r = [2/5, 2/5, 1/5, 0, 0]:
        // the two ties at score 2 resolve to the smaller code.
        let f = gf(5);
        let params = GameParams::new(f.clone(), rat("2/5")).unwrap();
        assert_eq!(params.n(), 3);
        let dist = distribution_for_scores(&f, &[5, 2, 2, 1, 0], &params).unwrap();
        assert_eq!(
            dist.probs(),
            &[rat("2/5"), rat("2/5"), rat("1/5"), rat("0"), rat("0")]
        );
    }

    #[test]
    fn best_distribution_degenerate_p_one() {
        let f = gf(3);
        let s = Strategy::zeros(&f);
        let params = GameParams::new(f, Rational::one()).unwrap();
        assert_eq!(params.n(), 1);
        let dist = best_distribution(&s, &params).unwrap();
        // All mass on the single highest-scoring input, x = 0 (score 3).
        assert_eq!(dist.probs()[0], Rational::one());
        assert!(dist.probs()[1].is_zero() && dist.probs()[2].is_zero());
    }

    #[test]
    fn best_distribution_uniform_scores_tie_break() {
        // a = [0,0,1], b = [0,1,0] over GF(3) has row scores [2,2,2]; with
        // p = 1/3 the weight rule degenerates to the uniform distribution.
        let f = gf(3);
        let s = Strategy::new(f.clone(), vec![0, 0, 1], vec![0, 1, 0]).unwrap();
        assert_eq!(row_scores(&s), vec![2, 2, 2]);
        let params = GameParams::new(f, rat("1/3")).unwrap();
        let dist = best_distribution(&s, &params).unwrap();
        assert_eq!(dist.probs(), &[rat("1/3"), rat("1/3"), rat("1/3")]);
    }

    #[test]
    fn infeasible_distribution() {
        let f = gf(2);
        let s = Strategy::zeros(&f);
        let params = GameParams::new(f, rat("1/3")).unwrap(); // n = 3 > q = 2
        assert!(!params.is_feasible());
        assert_eq!(
            best_distribution(&s, &params).unwrap_err(),
            GameError::InfeasibleDistribution { n: 3, q: 2 }
        );
    }

    #[test]
    fn max_game_value_examples() {
        let s2 = Strategy::zeros(&gf(2));
        let p2 = GameParams::new(gf(2), rat("1/2")).unwrap();
        assert_eq!(max_game_value(&s2, &p2).unwrap(), rat("3/4"));

        let s3 = Strategy::zeros(&gf(3));
        let p3 = GameParams::new(gf(3), rat("1/2")).unwrap();
        assert_eq!(max_game_value(&s3, &p3).unwrap(), rat("2/3"));

        let p3_one = GameParams::new(gf(3), Rational::one()).unwrap();
        assert_eq!(max_game_value(&s3, &p3_one).unwrap(), Rational::one());
    }

    #[test]
    fn distribution_validation() {
        let f = gf(2);
        assert_eq!(
            InputDistribution::new(f.clone(), vec![rat("1/2")], rat("1/2")).unwrap_err(),
            GameError::WrongDistributionLength { q: 2, got: 1 }
        );
        assert_eq!(
            InputDistribution::new(f.clone(), vec![rat("1/2"), rat("1/3")], rat("1/2"))
                .unwrap_err(),
            GameError::ProbabilitySumNotOne
        );
        assert_eq!(
            InputDistribution::new(f.clone(), vec![rat("3/4"), rat("1/4")], rat("1/2"))
                .unwrap_err(),
            GameError::ProbabilityAboveCap
        );
        assert_eq!(
            InputDistribution::new(f.clone(), vec![rat("-1/2"), rat("3/2")], rat("1/1"))
                .unwrap_err(),
            GameError::NegativeProbability
        );
        assert_eq!(
            InputDistribution::new(f.clone(), vec![rat("1/2"), rat("1/2")], rat("2/1"))
                .unwrap_err(),
            GameError::InvalidCap
        );
        assert!(InputDistribution::new(f, vec![rat("1/2"), rat("1/2")], rat("1/2")).is_ok());
    }

    #[test]
    fn scores_sum_identity() {
        // sum_x row_scores = q^2 * win_probability(uniform)
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 5, 7] {
            let f = gf(q);
            for _ in 0..20 {
                let alice: Vec<u64> = (0..q).map(|_| rng.gen_range(0..q)).collect();
                let bob: Vec<u64> = (0..q).map(|_| rng.gen_range(0..q)).collect();
                let s = Strategy::new(f.clone(), alice, bob).unwrap();
                let total: u64 = row_scores(&s).iter().sum();
                let wp = win_probability(&s, &InputDistribution::uniform(&f)).unwrap();
                assert_eq!(ratio_u64(total), wp * ratio_u64(q * q));
            }
        }
    }

    #[test]
    fn win_probability_linear_in_distribution() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let alice: Vec<u64> = (0..5).map(|_| rng.gen_range(0..5)).collect();
        let bob: Vec<u64> = (0..5).map(|_| rng.gen_range(0..5)).collect();
        let s = Strategy::new(f.clone(), alice, bob).unwrap();

        let d1 = InputDistribution::uniform(&f);
        let d2 = InputDistribution::point_mass(&f.element(2).unwrap());
        let lambda = rat("3/7");
        let mixed_probs: Vec<Rational> = d1
            .probs()
            .iter()
            .zip(d2.probs())
            .map(|(a, b)| &lambda * a + (Rational::one() - &lambda) * b)
            .collect();
        let mixed = InputDistribution::new(f, mixed_probs, Rational::one()).unwrap();

        let lhs = win_probability(&s, &mixed).unwrap();
        let rhs = &lambda * win_probability(&s, &d1).unwrap()
            + (Rational::one() - &lambda) * win_probability(&s, &d2).unwrap();
        assert_eq!(lhs, rhs);
    }

    /// Random feasible distribution with max entry <= p, as rationals with
    /// denominator `den`.
    fn random_capped_distribution(
        rng: &mut ChaCha8Rng,
        spec: &FieldSpec,
        p: &Rational,
        den: u64,
    ) -> InputDistribution {
        let q = spec.q();
        // Max units per entry so that entry <= p.
        let cap_units = (p * ratio_u64(den)).floor().to_integer();
        let cap_units: u64 = cap_units.try_into().unwrap();
        loop {
            let mut units = vec![0u64; q as usize];
            let mut left = den;
            for slot in units.iter_mut() {
                if left == 0 {
                    break;
                }
                let take = rng.gen_range(0..=left.min(cap_units));
                *slot = take;
                left -= take;
            }
            if left == 0 {
                let probs: Vec<Rational> = units
                    .iter()
                    .map(|&u| Rational::new(u.into(), den.into()))
                    .collect();
                return InputDistribution::new(spec.clone(), probs, p.clone()).unwrap();
            }
        }
    }

    #[test]
    fn lemma1_dominance_randomized() {
        // No feasible distribution beats best_distribution; randomized spot
        // checks at q in {5, 7} (the exhaustive small-q version lives in the
        // acceptance suite).
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for q in [5u64, 7] {
            let f = gf(q);
            for p_str in ["1/2", "1/3"] {
                let params = GameParams::new(f.clone(), rat(p_str)).unwrap();
                for _ in 0..30 {
                    let alice: Vec<u64> = (0..q).map(|_| rng.gen_range(0..q)).collect();
                    let bob: Vec<u64> = (0..q).map(|_| rng.gen_range(0..q)).collect();
                    let s = Strategy::new(f.clone(), alice, bob).unwrap();
                    let best = max_game_value(&s, &params).unwrap();
                    for _ in 0..10 {
                        let d = random_capped_distribution(&mut rng, &f, params.p(), 12);
                        assert!(win_probability(&s, &d).unwrap() <= best);
                    }
                }
            }
        }
    }
}
