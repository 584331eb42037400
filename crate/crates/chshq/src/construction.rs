//! Greedy candidate-elimination construction of an optimal game
//! configuration: points enter one at a time (smallest remaining grid
//! position first) while the candidate pool sheds everything that would
//! break a valid strategy — same-column points, points on lines joining
//! chosen pairs, and points on lines through chosen points with a slope some
//! chosen pair already defines. Pairwise connecting lines plus the missing
//! slopes through the first point complete the line set.
//!
//! Success is guaranteed when q > (n-1)[(n-2)^2/2 + 1]; outside that regime
//! the greedy is still attempted and exhaustion is a reportable outcome.

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::game::{max_game_value, GameParams, Strategy};
use crate::incidence::{
    count_incidences, Configuration, GameConfiguration, Line, Point,
};
use crate::ratio::{ratio_u64, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("n = {n} support points needed but the field has only q = {q}")]
    InfeasibleParams { n: u64, q: u64 },
    #[error("candidate pool exhausted after {rounds_completed} of {wanted} rounds")]
    CandidatesExhausted { rounds_completed: u64, wanted: u64 },
}

/// Output of a successful construction. The first support element is the
/// high-degree point that every completion line passes through.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub configuration: GameConfiguration,
    pub strategy: Strategy,
    pub support: Vec<FieldElement>,
    pub achieved_value: Rational,
    pub rounds_used: u64,
    /// Distinct points deleted from the candidate pool, for auditing against
    /// `removal_budget`.
    pub candidates_removed: u64,
}

/// True iff q strictly exceeds (n-1)[(n-2)^2/2 + 1], evaluated exactly
/// (the bracket can be half-integral, so compare 2q against the doubled
/// right-hand side).
pub fn regime_check(params: &GameParams) -> bool {
    let q = params.q() as u128;
    let n = params.n() as u128;
    if n <= 1 {
        return true; // right-hand side is 0
    }
    2 * q > (n - 1) * ((n - 2).pow(2) + 2)
}

/// Upper bound on candidate-pool deletions over the first n-1 rounds:
/// [(n-1) + (n-1)(n-2)^2/2] * q. The product (n-1)(n-2)^2 is always even,
/// so the value is integral.
pub fn removal_budget(n: u64, q: u64) -> u64 {
    if n <= 1 {
        return 0;
    }
    let doubled = (n - 1) * ((n - 2) * (n - 2) + 2);
    doubled / 2 * q
}

struct Pool {
    q: u64,
    alive: Vec<bool>,
    removed: u64,
}

impl Pool {
    fn new(q: u64) -> Pool {
        Pool {
            q,
            alive: vec![true; (q * q) as usize],
            removed: 0,
        }
    }

    fn take_first(&mut self) -> Option<(u64, u64)> {
        let idx = self.alive.iter().position(|&a| a)?;
        self.alive[idx] = false;
        let idx = idx as u64;
        Some((idx / self.q, idx % self.q))
    }

    fn remove(&mut self, x: u64, y: u64) {
        let idx = (x * self.q + y) as usize;
        if self.alive[idx] {
            self.alive[idx] = false;
            self.removed += 1;
        }
    }
}

fn pair_line(spec: &FieldSpec, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    debug_assert_ne!(a.0, b.0, "pair lines require distinct columns");
    let dx = spec.sub(b.0, a.0);
    let slope = spec.mul(spec.sub(b.1, a.1), spec.inv(dx).expect("dx nonzero"));
    let offset = spec.sub(a.1, spec.mul(slope, a.0));
    (slope, offset)
}

/// Runs the greedy and assembles the configuration, strategy, and exact
/// achieved value. Alice answers element 0 outside the support
/// (probability-0 inputs).
pub fn construct(params: &GameParams) -> Result<ConstructionResult, ConstructionError> {
    let spec = params.spec().clone();
    let q = params.q();
    let n = params.n();
    if n > q {
        return Err(ConstructionError::InfeasibleParams { n, q });
    }

    let mut pool = Pool::new(q);
    let mut chosen: Vec<(u64, u64)> = Vec::with_capacity(n as usize);

    for round in 1..=n {
        let pick = pool
            .take_first()
            .ok_or(ConstructionError::CandidatesExhausted {
                rounds_completed: round - 1,
                wanted: n,
            })?;
        chosen.push(pick);
        if round == n {
            // Deletions after the final pick cannot change the outcome, and
            // skipping them keeps the removal audit aligned with the
            // (n-1)-round budget.
            break;
        }
        // Rule 1: the whole column of the new point.
        for y in 0..q {
            pool.remove(pick.0, y);
        }
        // Rule 2: every point on a line joining a chosen pair.
        let mut slopes: BTreeSet<u64> = BTreeSet::new();
        for i in 0..chosen.len() {
            for j in i + 1..chosen.len() {
                let (s, o) = pair_line(&spec, chosen[i], chosen[j]);
                slopes.insert(s);
                for x in 0..q {
                    pool.remove(x, spec.add(spec.mul(s, x), o));
                }
            }
        }
        // Rule 3: every point on a line through a chosen point whose slope
        // some chosen pair defines (the broad reading; it subsumes rule 2's
        // lines).
        for &s in &slopes {
            for &(px, py) in &chosen {
                let o = spec.sub(py, spec.mul(s, px));
                for x in 0..q {
                    pool.remove(x, spec.add(spec.mul(s, x), o));
                }
            }
        }
    }

    assert!(
        pool.removed <= removal_budget(n, q),
        "candidate deletions {} exceed the budget {}",
        pool.removed,
        removal_budget(n, q)
    );

    // Pairwise connecting lines. The elimination rules guarantee pairwise
    // distinct columns and pairwise distinct slopes.
    let mut lines: BTreeSet<(u64, u64)> = BTreeSet::new();
    let mut used_slopes: BTreeSet<u64> = BTreeSet::new();
    for i in 0..chosen.len() {
        for j in i + 1..chosen.len() {
            let (s, o) = pair_line(&spec, chosen[i], chosen[j]);
            assert!(used_slopes.insert(s), "pair slopes must be distinct");
            lines.insert((s, o));
        }
    }
    // Missing slopes all pass through the first chosen point.
    let p1 = chosen[0];
    for s in 0..q {
        if !used_slopes.contains(&s) {
            lines.insert((s, spec.sub(p1.1, spec.mul(s, p1.0))));
        }
    }

    let points: Vec<Point> = chosen
        .iter()
        .map(|&(x, y)| {
            Point::new(spec.element(x).unwrap(), spec.element(y).unwrap()).unwrap()
        })
        .collect();
    let line_objs: Vec<Line> = lines
        .iter()
        .map(|&(s, o)| Line::new(spec.element(s).unwrap(), spec.element(o).unwrap()).unwrap())
        .collect();
    let configuration = GameConfiguration::new(
        Configuration::new(spec.clone(), points, line_objs)
            .expect("constructed points and lines share the field"),
    )
    .expect("the greedy maintains game-configuration invariants");

    let mut alice = vec![0u64; q as usize];
    for &(x, y) in &chosen {
        alice[x as usize] = y;
    }
    let mut bob = vec![0u64; q as usize];
    for l in configuration.lines() {
        bob[l.slope().code() as usize] = spec.neg(l.offset().code());
    }
    let strategy = Strategy::new(spec.clone(), alice, bob).expect("tables are well-formed");
    let support: Vec<FieldElement> = chosen
        .iter()
        .map(|&(x, _)| spec.element(x).unwrap())
        .collect();

    let achieved_value =
        max_game_value(&strategy, params).expect("constructed strategy is evaluable");
    debug_assert_eq!(
        count_incidences(&configuration),
        q + n * (n - 1) / 2,
        "constructed configuration must meet the closed-form optimum"
    );
    debug_assert_eq!(achieved_value, theorem_value(q, n, params.p()));

    Ok(ConstructionResult {
        configuration,
        strategy,
        support,
        achieved_value,
        rounds_used: n,
        candidates_removed: pool.removed,
    })
}

/// p + ((n-1)/q)(1 - np/2), the value the construction achieves.
pub(crate) fn theorem_value(q: u64, n: u64, p: &Rational) -> Rational {
    p + ratio_u64(n - 1) / ratio_u64(q) * (Rational::one() - ratio_u64(n) * p / ratio_u64(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{classify, ConfigClass};
    use crate::ratio::parse_ratio;

    fn params(q: u64, p: &str) -> GameParams {
        GameParams::new(FieldSpec::new(q).unwrap(), parse_ratio(p).unwrap()).unwrap()
    }

    type CodePairs = (Vec<(u64, u64)>, Vec<(u64, u64)>);

    fn codes(cfg: &GameConfiguration) -> CodePairs {
        (
            cfg.points()
                .iter()
                .map(|p| (p.x().code(), p.y().code()))
                .collect(),
            cfg.lines()
                .iter()
                .map(|l| (l.slope().code(), l.offset().code()))
                .collect(),
        )
    }

    #[test]
    fn regime_check_examples() {
        assert!(regime_check(&params(7, "1/3")));
        assert!(!regime_check(&params(3, "1/3")));
        assert!(regime_check(&params(2, "1/1")));
        assert!(regime_check(&params(2, "1/2")));
    }

    #[test]
    fn removal_budget_examples() {
        assert_eq!(removal_budget(3, 7), 21);
        assert_eq!(removal_budget(2, 5), 5);
        assert_eq!(removal_budget(1, 11), 0);
        assert_eq!(removal_budget(5, 23), 22 * 23); // [4 + 4*9/2]*23
    }

    #[test]
    fn construct_q5_half() {
        let params = params(5, "1/2");
        let r = construct(&params).unwrap();
        let (pts, lns) = codes(&r.configuration);
        assert_eq!(pts, vec![(0, 0), (1, 0)]);
        assert_eq!(lns, vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
        assert_eq!(count_incidences(&r.configuration), 6);
        assert_eq!(r.achieved_value, parse_ratio("3/5").unwrap());
        assert_eq!(r.rounds_used, 2);
        assert_eq!(r.support[0].code(), 0);
    }

    #[test]
    fn construct_q3_third_outside_regime() {
        let params = params(3, "1/3");
        assert!(!regime_check(&params));
        let r = construct(&params).unwrap();
        let (pts, _) = codes(&r.configuration);
        assert_eq!(pts, vec![(0, 0), (1, 0), (2, 1)]);
        let slopes: Vec<u64> = r
            .configuration
            .lines()
            .iter()
            .map(|l| l.slope().code())
            .collect();
        assert_eq!(slopes, vec![0, 1, 2]);
        assert_eq!(count_incidences(&r.configuration), 6);
        assert_eq!(r.achieved_value, parse_ratio("2/3").unwrap());
    }

    #[test]
    fn construct_p_one_degenerate() {
        let params = params(7, "1/1");
        let r = construct(&params).unwrap();
        assert_eq!(r.configuration.points().len(), 1);
        assert_eq!(r.configuration.lines().len(), 7);
        assert_eq!(r.achieved_value, Rational::one());
        assert_eq!(r.candidates_removed, 0);
    }

    #[test]
    fn infeasible_params() {
        assert_eq!(
            construct(&params(2, "1/3")).unwrap_err(),
            ConstructionError::InfeasibleParams { n: 3, q: 2 }
        );
    }

    #[test]
    fn regime_implies_success_up_to_101() {
        let prime_powers: Vec<u64> = (2..=101)
            .filter(|&q| crate::field::is_prime_power(q))
            .collect();
        for q in prime_powers {
            for p in ["1/1", "1/2", "1/3", "1/4", "1/5"] {
                let params = params(q, p);
                if params.n() > q {
                    continue;
                }
                match construct(&params) {
                    Ok(r) => {
                        assert_eq!(
                            classify(r.configuration.as_configuration()).unwrap(),
                            ConfigClass::Optimal
                        );
                        assert_eq!(
                            count_incidences(&r.configuration),
                            q + params.n() * (params.n() - 1) / 2
                        );
                        assert_eq!(
                            r.achieved_value,
                            theorem_value(q, params.n(), params.p())
                        );
                        assert!(r.candidates_removed <= removal_budget(params.n(), q));
                    }
                    Err(ConstructionError::CandidatesExhausted { .. }) => {
                        assert!(
                            !regime_check(&params),
                            "exhaustion is only permitted outside the regime (q={q}, p={p})"
                        );
                    }
                    Err(e) => panic!("unexpected construction failure: {e}"),
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let params = params(13, "1/3");
        let a = construct(&params).unwrap();
        let b = construct(&params).unwrap();
        assert_eq!(codes(&a.configuration), codes(&b.configuration));
        assert_eq!(a.strategy, b.strategy);
        assert_eq!(a.achieved_value, b.achieved_value);
    }
}
