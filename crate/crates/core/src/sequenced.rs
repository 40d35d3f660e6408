//! The `⊏`-ordered multiset of unit intervals.

use std::collections::{BTreeSet, HashMap};
use std::ops::Bound::{Excluded, Included, Unbounded};

use crate::coord::Coord;
use crate::interval::UnitInterval;

/// Ordered multiset keyed by `(x, arrival)`; all queries are `O(log n)`
/// plus output size.
#[derive(Clone, Debug, Default)]
pub struct SequencedSet {
    ordered: BTreeSet<UnitInterval>,
    by_arrival: HashMap<i64, Coord>,
}

impl SequencedSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_intervals<I: IntoIterator<Item = UnitInterval>>(it: I) -> Self {
        let mut s = Self::new();
        for iv in it {
            s.insert(iv);
        }
        s
    }

    /// Returns false (and leaves the set alone) if the arrival is taken.
    pub fn insert(&mut self, iv: UnitInterval) -> bool {
        if self.by_arrival.contains_key(&iv.arrival) {
            return false;
        }
        self.by_arrival.insert(iv.arrival, iv.x.clone());
        self.ordered.insert(iv);
        true
    }

    pub fn remove(&mut self, arrival: i64) -> Option<UnitInterval> {
        let x = self.by_arrival.remove(&arrival)?;
        let iv = UnitInterval::new(x, arrival);
        self.ordered.remove(&iv);
        Some(iv)
    }

    pub fn get(&self, arrival: i64) -> Option<UnitInterval> {
        self.by_arrival
            .get(&arrival)
            .map(|x| UnitInterval::new(x.clone(), arrival))
    }

    pub fn contains(&self, arrival: i64) -> bool {
        self.by_arrival.contains_key(&arrival)
    }

    pub fn len(&self) -> usize {
        self.ordered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }

    pub fn first(&self) -> Option<&UnitInterval> {
        self.ordered.first()
    }

    pub fn last(&self) -> Option<&UnitInterval> {
        self.ordered.last()
    }

    pub fn predecessor(&self, iv: &UnitInterval) -> Option<&UnitInterval> {
        self.ordered.range(..iv).next_back()
    }

    pub fn successor(&self, iv: &UnitInterval) -> Option<&UnitInterval> {
        self.ordered.range((Excluded(iv), Unbounded)).next()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &UnitInterval> {
        self.ordered.iter()
    }

    /// Intervals strictly after `iv`, ascending.
    pub fn iter_after<'a>(&'a self, iv: &UnitInterval) -> impl Iterator<Item = &'a UnitInterval> {
        self.ordered.range((Excluded(iv), Unbounded))
    }

    /// Intervals strictly before `iv`, descending.
    pub fn iter_before<'a>(&'a self, iv: &UnitInterval) -> impl Iterator<Item = &'a UnitInterval> {
        self.ordered.range(..iv).rev()
    }

    /// Contiguous run `from ..= to` in `⊏` order.
    pub fn window(&self, from: &UnitInterval, to: &UnitInterval) -> Vec<UnitInterval> {
        if from > to {
            return Vec::new();
        }
        self.ordered
            .range((Included(from), Included(to)))
            .cloned()
            .collect()
    }

    /// Intervals whose begin lies in the open range `(lo, hi)`.
    pub fn begins_between(&self, lo: &Coord, hi: &Coord) -> Vec<UnitInterval> {
        let start = UnitInterval::new(lo.clone(), i64::MAX);
        self.ordered
            .range((Excluded(&start), Unbounded))
            .take_while(|iv| iv.x < *hi)
            .cloned()
            .collect()
    }

    pub fn to_vec(&self) -> Vec<UnitInterval> {
        self.ordered.iter().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(s: &str, a: i64) -> UnitInterval {
        UnitInterval::new(s.parse().unwrap(), a)
    }

    #[test]
    fn neighbours_and_windows() {
        let s = SequencedSet::from_intervals(vec![
            iv("2", 0),
            iv("0", 1),
            iv("1", 2),
            iv("1", 3),
            iv("3.5", 4),
        ]);
        assert_eq!(s.len(), 5);
        assert_eq!(s.first().unwrap().arrival, 1);
        assert_eq!(s.last().unwrap().arrival, 4);
        let mid = s.get(2).unwrap();
        assert_eq!(s.predecessor(&mid).unwrap().arrival, 1);
        assert_eq!(s.successor(&mid).unwrap().arrival, 3);
        let w: Vec<i64> = s
            .window(&iv("1", 2), &iv("2", 0))
            .iter()
            .map(|i| i.arrival)
            .collect();
        assert_eq!(w, vec![2, 3, 0]);
        let before: Vec<i64> = s.iter_before(&iv("2", 0)).map(|i| i.arrival).collect();
        assert_eq!(before, vec![3, 2, 1]);
        let between: Vec<i64> = s
            .begins_between(&"1".parse().unwrap(), &"3.5".parse().unwrap())
            .iter()
            .map(|i| i.arrival)
            .collect();
        assert_eq!(between, vec![0]);
    }

    #[test]
    fn duplicate_arrival_rejected_and_remove() {
        let mut s = SequencedSet::new();
        assert!(s.insert(iv("0", 0)));
        assert!(!s.insert(iv("5", 0)));
        assert_eq!(s.remove(0), Some(iv("0", 0)));
        assert!(s.is_empty());
        assert_eq!(s.remove(0), None);
    }
}
