//! Instance builders shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use unit_recolor::coloring::max_clique_sorted;
use unit_recolor::{Color, Coord, UnitInterval};

pub fn grid(v: i64, den: i64) -> Coord {
    Coord::from_ratio(v, den)
}

/// Intervals with arrivals in input order, sorted by `⊏`.
pub fn ivs(xs: &[Coord]) -> Vec<UnitInterval> {
    let mut v: Vec<UnitInterval> = xs
        .iter()
        .enumerate()
        .map(|(a, x)| UnitInterval::new(x.clone(), a as i64))
        .collect();
    v.sort();
    v
}

/// Most intervals covering a point of `[p, p + 1)`.
pub fn load_on(set: &[UnitInterval], p: &Coord) -> usize {
    let end = p.unit_end();
    std::iter::once(p)
        .chain(set.iter().map(|iv| &iv.x).filter(|x| *x > p && **x < end))
        .map(|q| set.iter().filter(|iv| iv.x <= *q && *q < iv.end()).count())
        .max()
        .unwrap_or(0)
}

/// Earliest-first disjoint dummies on the `1/den` grid in `(lo, hi]`,
/// each keeping every load at most `k`.
pub fn greedy_dummies(set: &[UnitInterval], lo: &Coord, hi: &Coord, k: usize, den: i64, want: usize) -> Vec<Coord> {
    let mut out = Vec::new();
    let mut p = lo + &grid(1, den);
    while out.len() < want && p <= *hi {
        if load_on(set, &p) < k {
            out.push(p.clone());
            p = p.unit_end();
        } else {
            p = &p + &grid(1, den);
        }
    }
    out
}

pub fn random_perm<R: Rng>(rng: &mut R, k: usize) -> Vec<Color> {
    let mut v: Vec<Color> = (1..=k as Color).collect();
    v.shuffle(rng);
    v
}

/// A window meeting the completion preconditions: `k`-cliques at both
/// ends, at most 30 intervals, clique number at most `k`, and `k² - 1`
/// dummy positions between the boundary blocks.
pub struct CompletionCase {
    pub k: usize,
    pub set: Vec<UnitInterval>,
    pub dummies: Vec<Coord>,
    pub left: Vec<Color>,
    pub right: Vec<Color>,
}

pub fn completion_case<R: Rng>(rng: &mut R, k: usize) -> Option<CompletionCase> {
    const DEN: i64 = 20;
    let stretch = (k * k) as i64 + 2 + rng.gen_range(0..8);
    let middle = rng.gen_range(0..=30 - 2 * k);
    let mut xs: Vec<Coord> = (0..k).map(|_| grid(rng.gen_range(0..DEN / 2), DEN)).collect();
    xs.extend((0..middle).map(|_| grid(rng.gen_range(DEN..DEN * (stretch + 1)), DEN)));
    xs.extend((0..k).map(|_| grid(DEN * (stretch + 2) + rng.gen_range(0..DEN / 2), DEN)));
    let set = ivs(&xs);
    if max_clique_sorted(set.iter().map(|iv| &iv.x)) > k {
        return None;
    }
    let n = set.len();
    let dummies = greedy_dummies(&set, &set[k - 1].x, &set[n - k].x, k, DEN, k * k - 1);
    if dummies.len() < k * k - 1 {
        return None;
    }
    let left = random_perm(rng, k);
    let right = random_perm(rng, k);
    Some(CompletionCase {
        k,
        set,
        dummies,
        left,
        right,
    })
}
