//! The Frogs merge game and its potential-function certificate.
//!
//! Ranks start as `n` copies of `δ`. Each turn merges two neighbouring ranks
//! and pays the cheaper of the `κ`-sum ending at the left one and the `κ`-sum
//! starting at the right one; positions outside the sequence count as `δ`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack allowed when comparing floating-point potentials.
pub const POTENTIAL_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrogsState {
    ranks: Vec<u64>,
    kappa: usize,
    delta: u64,
    tau: usize,
    total_cost: u64,
    n: usize,
}

impl FrogsState {
    pub fn new(n: usize, kappa: usize, delta: u64) -> Result<Self> {
        if n == 0 || kappa == 0 || kappa > n {
            return Err(Error::Precondition(format!(
                "need n >= 1 and 1 <= kappa <= n, got n = {n}, kappa = {kappa}"
            )));
        }
        Ok(FrogsState {
            ranks: vec![delta; n],
            kappa,
            delta,
            tau: 1,
            total_cost: 0,
            n,
        })
    }

    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_cost(&self) -> u64 {
        self.total_cost
    }

    pub fn is_finished(&self) -> bool {
        self.ranks.len() == 1
    }

    /// Rank at 1-based position `i`, `δ` outside the sequence.
    fn rank(&self, i: i64) -> u64 {
        if i >= 1 && (i as usize) <= self.ranks.len() {
            self.ranks[i as usize - 1]
        } else {
            self.delta
        }
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        let max = self.ranks.len().saturating_sub(1);
        if pos == 0 || pos > max {
            return Err(Error::InvalidJump { pos, max });
        }
        Ok(())
    }

    /// Cost of merging positions `pos` and `pos + 1` (1-based) now.
    pub fn cost_at(&self, pos: usize) -> Result<u64> {
        self.check_pos(pos)?;
        let (p, kappa) = (pos as i64, self.kappa as i64);
        let left: u64 = (p - kappa + 1..=p).map(|i| self.rank(i)).sum();
        let right: u64 = (p + 1..=p + kappa).map(|i| self.rank(i)).sum();
        Ok(left.min(right))
    }

    pub fn jump(&mut self, pos: usize) -> Result<u64> {
        let cost = self.cost_at(pos)?;
        let merged = self.ranks[pos - 1] + self.ranks[pos];
        self.ranks[pos - 1] = merged;
        self.ranks.remove(pos);
        self.total_cost += cost;
        self.tau += 1;
        Ok(cost)
    }
}

/// Closed-form upper bound on the total cost over all jump sequences:
/// `δ(2κ-1)(n+2κ-2) log₂((n+2κ-2)/(2κ-1))`.
pub fn bound(n: usize, kappa: usize, delta: u64) -> f64 {
    let w = (2 * kappa - 1) as f64;
    let m = (n + 2 * kappa - 2) as f64;
    delta as f64 * w * m * (m / w).log2()
}

fn entropy(x: u64) -> f64 {
    if x == 0 {
        0.0
    } else {
        let x = x as f64;
        x * x.log2()
    }
}

/// `Σ H(r_j + ... + r_{j+2κ-2})` for `j = -2κ+3 ..= len`, with `H(x) = x log₂ x`
/// and ranks outside `1..=len` equal to `δ`.
pub fn potential(ranks: &[u64], kappa: usize, delta: u64) -> f64 {
    let len = ranks.len() as i64;
    let span = 2 * kappa as i64 - 1;
    let at = |i: i64| {
        if i >= 1 && i <= len {
            ranks[i as usize - 1]
        } else {
            delta
        }
    };
    let first = 3 - 2 * kappa as i64;
    let mut sum: u64 = (first..first + span).map(at).sum();
    let mut total = 0.0;
    for j in first..=len {
        if j > first {
            sum = sum - at(j - 1) + at(j + span - 1);
        }
        total += entropy(sum);
    }
    total
}

/// Whether `cost <= Φ(after) - Φ(before)` up to the relative tolerance.
pub fn check_potential_step(before: &[u64], after: &[u64], kappa: usize, delta: u64, cost: u64) -> bool {
    let (pb, pa) = (potential(before, kappa, delta), potential(after, kappa, delta));
    let tol = POTENTIAL_TOLERANCE * pa.abs().max(pb.abs()).max(1.0);
    cost as f64 <= pa - pb + tol
}

/// A full jump sequence, validated against `1 <= j_τ <= n - τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpSequence(pub Vec<usize>);

impl JumpSequence {
    pub fn validate(&self, n: usize) -> Result<()> {
        for (t, &j) in self.0.iter().enumerate() {
            let max = n.saturating_sub(t + 1);
            if j == 0 || j > max {
                return Err(Error::InvalidJump { pos: j, max });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Uniformly random position.
    Random,
    /// Largest immediate cost; leftmost on ties.
    Greedy,
    /// Smallest sum of the two merged ranks; leftmost on ties.
    Balanced,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Random, Strategy::Greedy, Strategy::Balanced];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Greedy => "greedy",
            Strategy::Balanced => "balanced",
        }
    }

    fn pick(self, state: &FrogsState, rng: &mut ChaCha8Rng) -> usize {
        let last = state.ranks.len() - 1;
        match self {
            Strategy::Random => rng.gen_range(1..=last),
            Strategy::Greedy => {
                let mut best = (0, 1);
                for pos in 1..=last {
                    let c = state.cost_at(pos).expect("position in range");
                    if c > best.0 {
                        best = (c, pos);
                    }
                }
                best.1
            }
            Strategy::Balanced => (1..=last)
                .min_by_key(|&p| (state.ranks[p - 1] + state.ranks[p], p))
                .expect("at least two ranks"),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown strategy {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub tau: usize,
    pub pos: usize,
    pub cost: u64,
    pub phi_delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub n: usize,
    pub kappa: usize,
    pub delta: u64,
    pub steps: Vec<StepRecord>,
    pub total_cost: u64,
    pub bound: f64,
    /// First turn where the per-step potential inequality failed.
    pub potential_violation: Option<usize>,
}

impl GameReport {
    pub fn within_bound(&self) -> bool {
        self.total_cost as f64 <= self.bound * (1.0 + POTENTIAL_TOLERANCE)
    }

    pub fn passed(&self) -> bool {
        self.within_bound() && self.potential_violation.is_none()
    }
}

/// Plays `jumps` from the all-`δ` start, checking the potential at each step.
pub fn play_sequence(n: usize, kappa: usize, delta: u64, jumps: &JumpSequence) -> Result<GameReport> {
    jumps.validate(n)?;
    let mut state = FrogsState::new(n, kappa, delta)?;
    let mut report = report_for(&state);
    for &pos in &jumps.0 {
        step(&mut state, pos, &mut report)?;
    }
    report.total_cost = state.total_cost;
    Ok(report)
}

/// Plays a full game (`n - 1` jumps) chosen by `strategy`.
pub fn play(n: usize, kappa: usize, delta: u64, strategy: Strategy, seed: u64) -> Result<GameReport> {
    let mut state = FrogsState::new(n, kappa, delta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = report_for(&state);
    while !state.is_finished() {
        let pos = strategy.pick(&state, &mut rng);
        step(&mut state, pos, &mut report)?;
    }
    report.total_cost = state.total_cost;
    Ok(report)
}

fn report_for(state: &FrogsState) -> GameReport {
    GameReport {
        n: state.n,
        kappa: state.kappa,
        delta: state.delta,
        steps: Vec::new(),
        total_cost: 0,
        bound: bound(state.n, state.kappa, state.delta),
        potential_violation: None,
    }
}

fn step(state: &mut FrogsState, pos: usize, report: &mut GameReport) -> Result<()> {
    let before = state.ranks.clone();
    let tau = state.tau;
    let cost = state.jump(pos)?;
    let (k, d) = (state.kappa, state.delta);
    let phi_delta = potential(&state.ranks, k, d) - potential(&before, k, d);
    if report.potential_violation.is_none() && !check_potential_step(&before, &state.ranks, k, d, cost) {
        report.potential_violation = Some(tau);
    }
    report.steps.push(StepRecord {
        tau,
        pos,
        cost,
        phi_delta,
    });
    Ok(())
}
