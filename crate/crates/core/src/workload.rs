//! Seeded insertion workloads. Every generator produces a multiset with
//! clique number at most `k`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coord::Coord;
use crate::error::Error;

/// Coordinates are multiples of `1 / GRID`.
pub const GRID: i64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// `k` chains of disjoint intervals with gaps in `[0, 1/2)`, random order.
    Tracks,
    /// `k` nearly aligned chains with tiny gaps, broken every few units by a
    /// wide empty stretch, random order.
    Clustered,
    /// A `tracks` instance inserted in bit-reversed `⊏` order, so early
    /// insertions are far apart and later ones bridge them.
    AdversarialOrder,
}

impl Generator {
    pub const ALL: [Generator; 3] = [
        Generator::Tracks,
        Generator::Clustered,
        Generator::AdversarialOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Tracks => "tracks",
            Generator::Clustered => "clustered",
            Generator::AdversarialOrder => "adversarial-order",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown generator {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadConfig {
    pub k: usize,
    pub n: usize,
    pub seed: u64,
    pub generator: Generator,
}

/// Begin coordinates in arrival order.
pub fn generate(cfg: &WorkloadConfig) -> Vec<Coord> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let k = cfg.k.max(1);
    match cfg.generator {
        Generator::Tracks => {
            let mut xs = chains(&mut rng, k, cfg.n, GRID / 2, None);
            xs.shuffle(&mut rng);
            to_coords(&xs)
        }
        Generator::Clustered => {
            let mut xs = chains(&mut rng, k, cfg.n, GRID / 20, Some((12, k as i64 * k as i64 + 2)));
            xs.shuffle(&mut rng);
            to_coords(&xs)
        }
        Generator::AdversarialOrder => {
            let mut xs = chains(&mut rng, k, cfg.n, GRID / 2, None);
            xs.sort_unstable();
            to_coords(&bit_reversed(&xs))
        }
    }
}

fn to_coords(xs: &[i64]) -> Vec<Coord> {
    xs.iter().map(|&v| Coord::from_ratio(v, GRID)).collect()
}

/// `n` begins split round-robin over `k` chains; in each chain consecutive
/// begins differ by `1 + gap`, `gap` uniform in `[0, max_gap)` grid units.
/// With `breaks = Some((every, width))` all chains jump `width` units after
/// roughly every `every` intervals, at a shared coordinate.
fn chains(rng: &mut ChaCha8Rng, k: usize, n: usize, max_gap: i64, breaks: Option<(usize, i64)>) -> Vec<i64> {
    let per_chain = n.div_ceil(k);
    let mut heads: Vec<i64> = (0..k).map(|_| rng.gen_range(0..GRID)).collect();
    let mut xs = Vec::with_capacity(n);
    for step in 0..per_chain {
        if let Some((every, width)) = breaks {
            if step > 0 && step % every == 0 {
                let wall = heads.iter().max().unwrap() + GRID + width * GRID;
                for h in heads.iter_mut() {
                    *h = wall + rng.gen_range(0..GRID / 10);
                }
            }
        }
        for h in heads.iter_mut() {
            if xs.len() == n {
                break;
            }
            xs.push(*h);
            *h += GRID + rng.gen_range(0..max_gap.max(1));
        }
    }
    xs
}

/// Elements in the order of their bit-reversed index; indices past the end
/// of the slice are skipped.
fn bit_reversed<T: Clone>(xs: &[T]) -> Vec<T> {
    let n = xs.len();
    if n <= 1 {
        return xs.to_vec();
    }
    let bits = usize::BITS - (n - 1).leading_zeros();
    (0..1usize << bits)
        .map(|i| i.reverse_bits() >> (usize::BITS - bits))
        .filter(|&i| i < n)
        .map(|i| xs[i].clone())
        .collect()
}
