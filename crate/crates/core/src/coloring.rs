//! Colorings, the clique-number sweep and properness checks.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::coord::Coord;
use crate::interval::{Color, UnitInterval};
use crate::sequenced::SequencedSet;

/// Total map from arrival index to color.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coloring {
    colors: HashMap<i64, Color>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, arrival: i64) -> Option<Color> {
        self.colors.get(&arrival).copied()
    }

    pub fn set(&mut self, arrival: i64, color: Color) -> Option<Color> {
        self.colors.insert(arrival, color)
    }

    pub fn remove(&mut self, arrival: i64) -> Option<Color> {
        self.colors.remove(&arrival)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Color)> + '_ {
        self.colors.iter().map(|(a, c)| (*a, *c))
    }

    /// Number of arrivals present in both colorings whose colors differ.
    pub fn diff_count(&self, other: &Coloring) -> usize {
        self.colors
            .iter()
            .filter(|(a, c)| other.get(**a).is_some_and(|o| o != **c))
            .count()
    }

    /// Colors of `intervals`, positionally.
    pub fn positional(&self, intervals: &[UnitInterval]) -> Option<Vec<Color>> {
        intervals.iter().map(|iv| self.get(iv.arrival)).collect()
    }
}

impl FromIterator<(i64, Color)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (i64, Color)>>(iter: T) -> Self {
        Coloring {
            colors: iter.into_iter().collect(),
        }
    }
}

/// Why a coloring is not a proper k-coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingColor { arrival: i64 },
    OutOfRange { arrival: i64, color: Color },
    Conflict { a: i64, b: i64, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingColor { arrival } => write!(f, "interval {arrival} has no color"),
            Violation::OutOfRange { arrival, color } => {
                write!(f, "interval {arrival} has color {color} outside 1..=k")
            }
            Violation::Conflict { a, b, color } => {
                write!(f, "intersecting intervals {a} and {b} share color {color}")
            }
        }
    }
}

/// Clique number of a `⊏`-sorted slice, by a left-to-right sweep.
pub fn max_clique_sorted<'a, I>(sorted: I) -> usize
where
    I: IntoIterator<Item = &'a Coord>,
{
    let mut live: VecDeque<&Coord> = VecDeque::new();
    let mut best = 0;
    for x in sorted {
        while live.front().is_some_and(|f| f.unit_end() <= *x) {
            live.pop_front();
        }
        live.push_back(x);
        best = best.max(live.len());
    }
    best
}

/// `ω(I)`; by perfectness also the chromatic number.
pub fn max_clique(set: &SequencedSet) -> usize {
    max_clique_sorted(set.iter().map(|iv| &iv.x))
}

/// Sweep check: every interval is compared only with the live intervals
/// before it (at most `k - 1` when the coloring can be proper).
pub fn check_sorted<'a, I, F>(sorted: I, color_of: F, k: usize) -> Result<(), Violation>
where
    I: IntoIterator<Item = &'a UnitInterval>,
    F: Fn(&UnitInterval) -> Option<Color>,
{
    let mut live: VecDeque<(&UnitInterval, Color)> = VecDeque::new();
    for iv in sorted {
        let color = color_of(iv).ok_or(Violation::MissingColor {
            arrival: iv.arrival,
        })?;
        if color == 0 || color as usize > k {
            return Err(Violation::OutOfRange {
                arrival: iv.arrival,
                color,
            });
        }
        while live.front().is_some_and(|(f, _)| f.end() <= iv.x) {
            live.pop_front();
        }
        if let Some((other, _)) = live.iter().find(|(_, c)| *c == color) {
            return Err(Violation::Conflict {
                a: other.arrival,
                b: iv.arrival,
                color,
            });
        }
        live.push_back((iv, color));
    }
    Ok(())
}

pub fn verify_proper(set: &SequencedSet, c: &Coloring, k: usize) -> Result<(), Violation> {
    check_sorted(set.iter(), |iv| c.get(iv.arrival), k)
}

pub fn is_proper(set: &SequencedSet, c: &Coloring, k: usize) -> bool {
    verify_proper(set, c, k).is_ok()
}

/// Properness of a positional coloring of a `⊏`-sorted slice.
pub fn check_positional(
    intervals: &[UnitInterval],
    colors: &[Color],
    k: usize,
) -> Result<(), Violation> {
    debug_assert_eq!(intervals.len(), colors.len());
    let mut live: VecDeque<usize> = VecDeque::new();
    for (i, iv) in intervals.iter().enumerate() {
        let color = colors[i];
        if color == 0 || color as usize > k {
            return Err(Violation::OutOfRange {
                arrival: iv.arrival,
                color,
            });
        }
        while live.front().is_some_and(|&f| intervals[f].end() <= iv.x) {
            live.pop_front();
        }
        if let Some(&o) = live.iter().find(|&&o| colors[o] == color) {
            return Err(Violation::Conflict {
                a: intervals[o].arrival,
                b: iv.arrival,
                color,
            });
        }
        live.push_back(i);
    }
    Ok(())
}

/// First-fit in `⊏` order starting after the fixed `prefix`. Proper whenever
/// `ω ≤ k`, since the earlier intervals meeting `I_i` all contain `x(I_i)`.
pub fn first_fit(intervals: &[UnitInterval], prefix: &[Color], k: usize) -> Option<Vec<Color>> {
    let mut colors = prefix.to_vec();
    let mut live: VecDeque<usize> = VecDeque::new();
    for (i, iv) in intervals.iter().enumerate() {
        while live.front().is_some_and(|&f| intervals[f].end() <= iv.x) {
            live.pop_front();
        }
        if i >= prefix.len() {
            let c = (1..=k as Color).find(|c| live.iter().all(|&o| colors[o] != *c))?;
            colors.push(c);
        }
        live.push_back(i);
    }
    Some(colors)
}
