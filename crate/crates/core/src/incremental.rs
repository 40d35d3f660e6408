//! Insert-only recoloring engine.
//!
//! On every insertion the engine scans right and left from the new interval
//! for the first point where either the run of intervals disconnects or enough
//! free space (`k² + 1` units between consecutive `k`-clique spans) has been
//! seen, and recolors the shorter of the two runs.
//!
//! Both scans run the same code on a *frame*: the right scan sees real
//! coordinates, the left scan sees the mirror image `x ↦ -(x + 1)` with the
//! intervals in descending `⊏` order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::coloring::{check_positional, Coloring, Violation};
use crate::completion::{
    check_clique, greedy_completion, make_bijection, unit_color_completion, BoundaryColoring,
    SlackPlacement, Window,
};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::interval::{begins_intersect, Color, UnitInterval};
use crate::oracle;
use crate::sequenced::SequencedSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reason {
    Disconnect,
    Slack,
}

/// Outcome of one directional scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub side: Side,
    /// `J^(R)` or `J^(L)`.
    pub boundary: UnitInterval,
    /// The run between the new interval and `boundary`, inclusive, in `⊏` order.
    pub window: Vec<UnitInterval>,
    pub reason: Reason,
    /// `(start, capacity)`: room for `capacity` disjoint dummies at
    /// `start, start + 1, ...`. Real coordinates, ascending.
    pub gaps: Vec<(Coord, usize)>,
    /// Half-open region `[lo, hi)` the gap accounting covered, if it started.
    pub region: Option<(Coord, Coord)>,
}

impl ScanResult {
    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    /// Total recorded dummy capacity.
    pub fn capacity(&self) -> usize {
        self.gaps.iter().map(|(_, c)| c).sum()
    }
}

/// Per-insertion record, one JSON object per line in session output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateRecord {
    pub j: i64,
    pub recolored: usize,
    pub window: usize,
    pub side: Side,
    pub reason: Reason,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecourseStats {
    pub per_update: Vec<usize>,
    pub total: usize,
    pub n: usize,
}

impl RecourseStats {
    fn record(&mut self, recolored: usize) {
        self.per_update.push(recolored);
        self.total += recolored;
        self.n += 1;
    }
}

/// Scan result in frame coordinates, before the window is materialised.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FrameScan {
    len: usize,
    reason: Reason,
    gaps: Vec<(Coord, usize)>,
    region: Option<(Coord, Coord)>,
}

/// The window scan over frame begin coordinates. `xs` yields the new interval
/// first, then its successors in scan order. Returns `None` as soon as the
/// window is known to exceed `limit` intervals.
fn scan_frame<I>(mut xs: I, k: usize, limit: usize) -> Option<FrameScan>
where
    I: Iterator<Item = Coord>,
{
    let mut current = xs.next().expect("scan starts at the new interval");
    let mut idx = 0usize;
    let mut q: VecDeque<Coord> = VecDeque::with_capacity(k + 1);
    let mut gaps: Vec<(Coord, usize)> = Vec::new();

    // Moves `current` forward; Err carries the disconnect result.
    macro_rules! advance {
        ($region:expr) => {{
            let prev = current.clone();
            match xs.next() {
                Some(next) if begins_intersect(&prev, &next) => {
                    current = next;
                    idx += 1;
                    if idx + 1 > limit {
                        return None;
                    }
                    prev
                }
                _ => {
                    return Some(FrameScan {
                        len: idx + 1,
                        reason: Reason::Disconnect,
                        gaps,
                        region: $region(&prev),
                    })
                }
            }
        }};
    }

    for _ in 0..k {
        q.push_back(current.clone());
        advance!(|_: &Coord| None);
    }

    let esp0 = current.unit_end();
    let mut esp = esp0.clone();
    let mut delta: i64 = 0;
    let target = (k * k + 1) as i64;
    while delta + (&current - &esp).floor_i64() < target {
        q.pop_front();
        q.push_back(current.clone());
        let e0 = esp0.clone();
        advance!(|p: &Coord| Some((e0.clone(), p.clone())));
        let (front, back) = (q.front().unwrap(), q.back().unwrap());
        if begins_intersect(front, back) {
            let cap = (back - &esp).floor_i64().max(0);
            if cap > 0 {
                gaps.push((esp.clone(), cap as usize));
            }
            delta += cap;
            // Never move back: dummies must stay right of the skipped block.
            let end = front.unit_end();
            if end > esp {
                esp = end;
            }
        }
    }
    let pending = (&current - &esp).floor_i64();
    if pending > 0 {
        gaps.push((esp.clone(), pending as usize));
    }
    let region_end = current.clone();
    for _ in 0..k {
        let e0 = esp0.clone();
        advance!(|p: &Coord| Some((e0.clone(), p.clone())));
    }
    Some(FrameScan {
        len: idx + 1,
        reason: Reason::Slack,
        gaps,
        region: Some((esp0, region_end)),
    })
}

fn mirror(x: &Coord) -> Coord {
    -x.unit_end()
}

/// Maps frame gaps/region back to real coordinates.
fn unframe(side: Side, scan: &FrameScan) -> (Vec<(Coord, usize)>, Option<(Coord, Coord)>) {
    match side {
        Side::Right => (scan.gaps.clone(), scan.region.clone()),
        Side::Left => {
            let mut gaps: Vec<(Coord, usize)> = scan
                .gaps
                .iter()
                .map(|(s, c)| (-(s.plus_int(*c as i64)), *c))
                .collect();
            gaps.reverse();
            let region = scan.region.as_ref().map(|(a, b)| (-b, -a));
            (gaps, region)
        }
    }
}

/// The smaller window; ties go right.
pub fn choose_side(left: ScanResult, right: ScanResult) -> ScanResult {
    if left.len() < right.len() {
        left
    } else {
        right
    }
}

/// Reverses a `⊏`-sorted run and mirrors it; arrivals become positions.
fn reflect(ivs: &[UnitInterval]) -> Vec<UnitInterval> {
    ivs.iter()
        .rev()
        .enumerate()
        .map(|(i, iv)| UnitInterval::new(mirror(&iv.x), i as i64))
        .collect()
}

/// Colors for the `k` intervals right after `fixed` that form a bijection and
/// are proper together with `fixed` (which may be shorter than `k`).
fn bijection_after(fixed: &[UnitInterval], fixed_colors: &[Color], next: &[UnitInterval], k: usize) -> Result<Vec<Color>> {
    debug_assert_eq!(next.len(), k);
    // Missing neighbours are stood in for by far-away disjoint intervals.
    let missing = k - fixed.len();
    let anchor = fixed.first().unwrap_or(&next[0]).x.plus_int(-1);
    let mut seq: Vec<UnitInterval> = (0..missing)
        .map(|t| UnitInterval::new(anchor.plus_int(-2 * (missing - t) as i64), t as i64))
        .collect();
    let mut first: Vec<Color> = vec![1; missing];
    seq.extend(fixed.iter().chain(next).enumerate().map(|(i, iv)| {
        UnitInterval::new(iv.x.clone(), (missing + i) as i64)
    }));
    first.extend_from_slice(fixed_colors);
    let w = Window::new(seq, k)?;
    Ok(make_bijection(&w, &first)?[k..].to_vec())
}

/// Dynamic proper `k`-coloring under insertions.
#[derive(Clone, Debug)]
pub struct Engine {
    k: usize,
    set: SequencedSet,
    coloring: Coloring,
    stats: RecourseStats,
    next_arrival: i64,
}

impl Engine {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        Ok(Engine {
            k,
            set: SequencedSet::new(),
            coloring: Coloring::new(),
            stats: RecourseStats::default(),
            next_arrival: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set(&self) -> &SequencedSet {
        &self.set
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn stats(&self) -> &RecourseStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn color_of(&self, arrival: i64) -> Option<Color> {
        self.coloring.get(arrival)
    }

    pub fn verify(&self) -> std::result::Result<(), Violation> {
        crate::coloring::verify_proper(&self.set, &self.coloring, self.k)
    }

    /// Overwrites one color without any checks. Only for fault-injection
    /// tests of the verifiers.
    #[doc(hidden)]
    pub fn set_color_unchecked(&mut self, arrival: i64, color: Color) {
        self.coloring.set(arrival, color);
    }

    fn scan_iter<'a>(&'a self, side: Side, from: &'a UnitInterval) -> Box<dyn Iterator<Item = Coord> + 'a> {
        match side {
            Side::Right => Box::new(
                std::iter::once(from.x.clone()).chain(self.set.iter_after(from).map(|iv| iv.x.clone())),
            ),
            Side::Left => Box::new(
                std::iter::once(mirror(&from.x)).chain(self.set.iter_before(from).map(|iv| mirror(&iv.x))),
            ),
        }
    }

    fn scan(&self, side: Side, from: &UnitInterval, limit: usize) -> Option<FrameScan> {
        scan_frame(self.scan_iter(side, from), self.k, limit)
    }

    fn materialise(&self, side: Side, from: &UnitInterval, scan: &FrameScan) -> ScanResult {
        let window: Vec<UnitInterval> = match side {
            Side::Right => std::iter::once(from.clone())
                .chain(self.set.iter_after(from).cloned())
                .take(scan.len)
                .collect(),
            Side::Left => {
                let mut w: Vec<UnitInterval> = std::iter::once(from.clone())
                    .chain(self.set.iter_before(from).cloned())
                    .take(scan.len)
                    .collect();
                w.reverse();
                w
            }
        };
        let boundary = match side {
            Side::Right => window.last().unwrap().clone(),
            Side::Left => window[0].clone(),
        };
        let (gaps, region) = unframe(side, scan);
        ScanResult {
            side,
            boundary,
            window,
            reason: scan.reason,
            gaps,
            region,
        }
    }

    fn find(&self, side: Side, arrival: i64) -> Result<ScanResult> {
        let from = self.set.get(arrival).ok_or(Error::UnknownInterval(arrival))?;
        let scan = self
            .scan(side, &from, usize::MAX)
            .expect("unlimited scan always finishes");
        Ok(self.materialise(side, &from, &scan))
    }

    /// Window scan from the interval with this arrival, to the right.
    pub fn find_right(&self, arrival: i64) -> Result<ScanResult> {
        self.find(Side::Right, arrival)
    }

    /// Mirror image of [`Engine::find_right`].
    pub fn find_left(&self, arrival: i64) -> Result<ScanResult> {
        self.find(Side::Left, arrival)
    }

    /// Same choice as `choose_side(find_left, find_right)`, but neither scan
    /// runs much past the length of the shorter window.
    fn choose_scan(&self, from: &UnitInterval) -> ScanResult {
        let mut limit = 16usize;
        loop {
            let right = self.scan(Side::Right, from, limit);
            let left = self.scan(Side::Left, from, limit);
            // An unfinished scan is longer than `limit`, hence longer than
            // any finished one.
            let pick = match (left, right) {
                (Some(l), Some(r)) if l.len < r.len => Some((Side::Left, l)),
                (_, Some(r)) => Some((Side::Right, r)),
                (Some(l), None) => Some((Side::Left, l)),
                (None, None) => None,
            };
            if let Some((side, scan)) = pick {
                return self.materialise(side, from, &scan);
            }
            limit = limit.saturating_mul(2);
        }
    }

    /// Up to `k` intervals on each side just outside the window.
    fn outside(&self, scan: &ScanResult) -> (Vec<UnitInterval>, Vec<UnitInterval>) {
        let first = &scan.window[0];
        let last = scan.window.last().unwrap();
        let mut before: Vec<UnitInterval> = self.set.iter_before(first).take(self.k).cloned().collect();
        before.reverse();
        let after: Vec<UnitInterval> = self.set.iter_after(last).take(self.k).cloned().collect();
        (before, after)
    }

    fn colors_of(&self, ivs: &[UnitInterval]) -> Result<Vec<Color>> {
        ivs.iter()
            .map(|iv| self.coloring.get(iv.arrival).ok_or(Error::MissingColor(iv.arrival)))
            .collect()
    }

    /// New colors for every interval of `scan.window`, positionally. Colors
    /// outside the window are left alone; the result is checked against
    /// the `k` neighbours on each side.
    pub fn recolor_window(&self, scan: &ScanResult) -> Result<Vec<Color>> {
        let k = self.k;
        let w = &scan.window;
        let (before, after) = self.outside(scan);
        let before_c = self.colors_of(&before)?;
        let after_c = self.colors_of(&after)?;
        let old: Vec<Option<Color>> = w.iter().map(|iv| self.coloring.get(iv.arrival)).collect();

        let colors = if let Some(c) = self.free_color_fill(w, &old) {
            c
        } else {
            match scan.reason {
                Reason::Disconnect => self.complete_disconnected(scan.side, w, &before, &before_c, &after, &after_c)?,
                Reason::Slack => self.complete_slack(scan, &before, &before_c, &after, &after_c)?,
            }
        };

        let mut all = before.clone();
        all.extend(w.iter().cloned());
        all.extend(after.iter().cloned());
        let mut all_c = before_c;
        all_c.extend_from_slice(&colors);
        all_c.extend_from_slice(&after_c);
        check_positional(&all, &all_c, k)
            .map_err(|v| Error::Internal(format!("window recoloring is not proper: {v}")))?;
        Ok(colors)
    }

    /// If only one window interval is uncolored and some color is free for
    /// it, keep everything else.
    fn free_color_fill(&self, w: &[UnitInterval], old: &[Option<Color>]) -> Option<Vec<Color>> {
        let mut missing = old.iter().enumerate().filter(|(_, c)| c.is_none());
        let (pos, _) = missing.next()?;
        if missing.next().is_some() {
            return None;
        }
        let target = &w[pos];
        let lo = target.x.plus_int(-1);
        let hi = target.end();
        let used: Vec<Color> = self
            .set
            .begins_between(&lo, &hi)
            .iter()
            .filter(|iv| iv.arrival != target.arrival)
            .filter_map(|iv| self.coloring.get(iv.arrival))
            .collect();
        let free = (1..=self.k as Color).find(|c| !used.contains(c))?;
        Some(old.iter().map(|c| c.unwrap_or(free)).collect())
    }

    fn complete_disconnected(
        &self,
        side: Side,
        w: &[UnitInterval],
        before: &[UnitInterval],
        before_c: &[Color],
        after: &[UnitInterval],
        after_c: &[Color],
    ) -> Result<Vec<Color>> {
        let k = self.k;
        match side {
            // The window's right end is free.
            Side::Right => {
                let mut seq = before.to_vec();
                seq.extend_from_slice(w);
                let full = greedy_completion(&Window::new(seq, k)?, before_c)?;
                Ok(full[before.len()..].to_vec())
            }
            Side::Left => {
                let mut seq = w.to_vec();
                seq.extend_from_slice(after);
                let refl = reflect(&seq);
                let prefix: Vec<Color> = after_c.iter().rev().copied().collect();
                let full = greedy_completion(&Window::new(refl, k)?, &prefix)?;
                let mut colors: Vec<Color> = full[after.len()..].to_vec();
                colors.reverse();
                Ok(colors)
            }
        }
    }

    fn complete_slack(
        &self,
        scan: &ScanResult,
        before: &[UnitInterval],
        before_c: &[Color],
        after: &[UnitInterval],
        after_c: &[Color],
    ) -> Result<Vec<Color>> {
        let k = self.k;
        let w = &scan.window;
        let m = w.len();
        if m < 2 * k {
            return self.backstop(w, before, before_c, after, after_c);
        }
        let left = bijection_after(before, before_c, &w[..k], k)?;
        let right = {
            let refl_after = reflect(after);
            let refl_last = reflect(&w[m - k..]);
            let rev_c: Vec<Color> = after_c.iter().rev().copied().collect();
            let mut c = bijection_after(&refl_after, &rev_c, &refl_last, k)?;
            c.reverse();
            c
        };
        let need = k * k - 1;
        let mut positions: Vec<Coord> = Vec::with_capacity(need);
        'fill: for (start, cap) in &scan.gaps {
            for t in 0..*cap {
                if positions.len() == need {
                    break 'fill;
                }
                positions.push(start.plus_int(t as i64));
            }
        }
        if positions.len() < need {
            return Err(Error::Internal(format!(
                "slack scan recorded room for {} dummies, need {need}",
                positions.len()
            )));
        }
        let window = Window::new(w.clone(), k)?;
        unit_color_completion(
            &window,
            &BoundaryColoring { left, right },
            &SlackPlacement { positions },
        )
    }

    /// Exhaustive completion for windows too short for the slack construction.
    fn backstop(
        &self,
        w: &[UnitInterval],
        before: &[UnitInterval],
        before_c: &[Color],
        after: &[UnitInterval],
        after_c: &[Color],
    ) -> Result<Vec<Color>> {
        let mut seq = before.to_vec();
        seq.extend_from_slice(w);
        seq.extend_from_slice(after);
        let mut fixed: Vec<Option<Color>> = before_c.iter().map(|&c| Some(c)).collect();
        fixed.extend(std::iter::repeat(None).take(w.len()));
        fixed.extend(after_c.iter().map(|&c| Some(c)));
        let full = oracle::complete_with_boundaries(&seq, &fixed, self.k)?
            .ok_or_else(|| Error::Internal("no completion exists for a short window".into()))?;
        Ok(full[before.len()..before.len() + w.len()].to_vec())
    }

    /// Rejects `x` if some point would be covered more than `k` times.
    fn check_insert(&self, x: &Coord) -> Result<()> {
        let lo = x.plus_int(-1);
        let hi = x.unit_end();
        let mut local = self.set.begins_between(&lo, &hi);
        let probe = UnitInterval::new(x.clone(), self.next_arrival);
        let at = local.partition_point(|iv| *iv < probe);
        local.insert(at, probe);
        check_clique(&local, self.k)
    }

    /// Adds `[x, x + 1)` and restores a proper coloring.
    pub fn insert(&mut self, x: Coord) -> Result<UpdateRecord> {
        self.check_insert(&x)?;
        let iv = UnitInterval::new(x, self.next_arrival);
        self.next_arrival += 1;
        self.set.insert(iv.clone());

        let scan = self.choose_scan(&iv);
        let colors = match self.recolor_window(&scan) {
            Ok(c) => c,
            Err(e) => {
                self.set.remove(iv.arrival);
                self.next_arrival -= 1;
                return Err(e);
            }
        };
        let mut recolored = 0;
        for (w, c) in scan.window.iter().zip(colors) {
            if let Some(old) = self.coloring.set(w.arrival, c) {
                if old != c {
                    recolored += 1;
                }
            }
        }
        self.stats.record(recolored);
        Ok(UpdateRecord {
            j: iv.arrival,
            recolored,
            window: scan.len(),
            side: scan.side,
            reason: scan.reason,
        })
    }
}
