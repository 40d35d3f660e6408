//! Unit intervals, the `⊏` order and clique spans.

use serde::{Deserialize, Serialize};

use crate::coord::Coord;
use crate::error::{Error, Result};

/// Colors are `1..=k`.
pub type Color = u32;

/// The half-open interval `[x, x + 1)`.
///
/// `arrival` identifies the interval within a session and breaks ties in the
/// `⊏` order. Sessions use non-negative arrivals; the completion routines use
/// negative ones for dummy intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitInterval {
    pub x: Coord,
    pub arrival: i64,
}

/// Sort key realising `⊏`: begin coordinate, then arrival.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    pub x: Coord,
    pub arrival: i64,
}

impl UnitInterval {
    pub fn new(x: Coord, arrival: i64) -> Self {
        UnitInterval { x, arrival }
    }

    pub fn end(&self) -> Coord {
        self.x.unit_end()
    }

    pub fn key(&self) -> OrderKey {
        OrderKey {
            x: self.x.clone(),
            arrival: self.arrival,
        }
    }

    /// `self < other` in the disjointness order: `y(self) <= x(other)`.
    pub fn precedes(&self, other: &UnitInterval) -> bool {
        self.end() <= other.x
    }
}

impl PartialOrd for UnitInterval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UnitInterval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.x
            .cmp(&other.x)
            .then_with(|| self.arrival.cmp(&other.arrival))
    }
}

/// True iff the two unit intervals share a point, i.e. `|x(a) - x(b)| < 1`.
pub fn intersects(a: &UnitInterval, b: &UnitInterval) -> bool {
    begins_intersect(&a.x, &b.x)
}

pub(crate) fn begins_intersect(a: &Coord, b: &Coord) -> bool {
    if a <= b {
        b < &a.unit_end()
    } else {
        a < &b.unit_end()
    }
}

/// The common intersection `[lo, hi)` of a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSpan {
    pub lo: Coord,
    pub hi: Coord,
}

/// Span of `intervals`, or `None` when they have no common point.
pub fn span_of(intervals: &[UnitInterval]) -> Result<Option<CliqueSpan>> {
    let first = intervals.first().ok_or(Error::EmptyInput)?;
    let mut lo = &first.x;
    let mut min_x = &first.x;
    for iv in &intervals[1..] {
        if iv.x > *lo {
            lo = &iv.x;
        }
        if iv.x < *min_x {
            min_x = &iv.x;
        }
    }
    let hi = min_x.unit_end();
    Ok((*lo < hi).then(|| CliqueSpan { lo: lo.clone(), hi }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str, a: i64) -> UnitInterval {
        UnitInterval::new(s.parse().unwrap(), a)
    }

    #[test]
    fn intersection_is_half_open() {
        assert!(intersects(&iv("0", 0), &iv("0.5", 1)));
        assert!(!intersects(&iv("0", 0), &iv("1", 1)));
        assert!(intersects(&iv("0", 0), &iv("999/1000", 1)));
        assert!(intersects(&iv("2", 0), &iv("2", 1)));
        assert!(!intersects(&iv("3", 0), &iv("1.5", 1)));
    }

    #[test]
    fn spans() {
        let s = span_of(&[iv("0", 0), iv("0.4", 1), iv("0.9", 2)])
            .unwrap()
            .unwrap();
        assert_eq!(s.lo, "0.9".parse().unwrap());
        assert_eq!(s.hi, Coord::one());
        assert_eq!(span_of(&[iv("0", 0), iv("1.2", 1)]).unwrap(), None);
        let single = span_of(&[iv("0", 0)]).unwrap().unwrap();
        assert_eq!((single.lo, single.hi), (Coord::zero(), Coord::one()));
        assert_eq!(span_of(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn order_breaks_ties_by_arrival() {
        let mut v = vec![iv("1", 3), iv("0.5", 7), iv("1", 1)];
        v.sort();
        let arrivals: Vec<i64> = v.iter().map(|i| i.arrival).collect();
        assert_eq!(arrivals, vec![7, 1, 3]);
        assert!(iv("0", 0).precedes(&iv("1", 1)));
        assert!(!iv("0", 0).precedes(&iv("0.9", 1)));
    }
}
