//! Constructive color completion on `⊏`-ordered windows of unit intervals.
//!
//! All routines work positionally: colors are returned as a `Vec<Color>`
//! aligned with [`Window::intervals`].
//!
//! * [`modulo_completion`] copies the permutation on the last `k` colored
//!   intervals forward, `c(I_i) = c(I_{i-k})`.
//! * [`make_bijection`] recolors `k` intervals following a fixed block of `k`
//!   so that they carry a permutation of `1..=k`.
//! * [`greedy_completion`] extends any proper prefix by the two above.
//! * [`unit_color_completion`] extends prescribed permutations on both ends
//!   of a window, given `k² - 1` disjoint dummy intervals of slack in the
//!   middle. The dummies are cut into blocks `L_1..L_k` separated by single
//!   dummies `M_1..M_{k-1}`; the real intervals are split at the separators,
//!   each part is padded with dummies from its block to a multiple of `k`,
//!   and each separator is crossed with one insertion-sort step that moves one
//!   more color into the position required by the right boundary.

use std::collections::HashSet;

use crate::coloring::{check_positional, max_clique_sorted};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::interval::{intersects, Color, UnitInterval};

/// A `⊏`-ordered run of unit intervals with clique number at most `k`.
#[derive(Clone, Debug)]
pub struct Window {
    intervals: Vec<UnitInterval>,
    k: usize,
}

impl Window {
    pub fn new(intervals: Vec<UnitInterval>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("k must be positive".into()));
        }
        if let Some(w) = intervals.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!(
                "window not in order at interval {}",
                w[1].arrival
            )));
        }
        check_clique(&intervals, k)?;
        Ok(Window { intervals, k })
    }

    pub fn intervals(&self) -> &[UnitInterval] {
        &self.intervals
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

/// Rejects a sorted run containing more than `k` pairwise intersecting intervals.
pub(crate) fn check_clique(sorted: &[UnitInterval], k: usize) -> Result<()> {
    if max_clique_sorted(sorted.iter().map(|iv| &iv.x)) <= k {
        return Ok(());
    }
    // Report the first k + 1 consecutive intervals sharing a point.
    for w in sorted.windows(k + 1) {
        if w[k].x < w[0].end() {
            return Err(Error::CliqueViolation {
                k,
                coords: w.iter().map(|iv| iv.x.clone()).collect(),
            });
        }
    }
    unreachable!("sweep found a clique the window scan did not")
}

/// Prescribed permutations on the first and last `k` window intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryColoring {
    pub left: Vec<Color>,
    pub right: Vec<Color>,
}

/// Begin coordinates of `k² - 1` pairwise disjoint dummy unit intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlackPlacement {
    pub positions: Vec<Coord>,
}

fn is_permutation(colors: &[Color], k: usize) -> bool {
    colors.len() == k
        && colors.iter().all(|&c| c >= 1 && c as usize <= k)
        && colors.iter().collect::<HashSet<_>>().len() == k
}

fn check_prefix(w: &Window, prefix: &[Color]) -> Result<()> {
    if prefix.len() > w.len() {
        return Err(Error::Precondition(format!(
            "prefix of {} colors for a window of {}",
            prefix.len(),
            w.len()
        )));
    }
    check_positional(&w.intervals[..prefix.len()], prefix, w.k)
        .map_err(|v| Error::Precondition(format!("prefix not proper: {v}")))
}

fn internal_check(ivs: &[UnitInterval], colors: &[Color], k: usize, what: &str) -> Result<()> {
    check_positional(ivs, colors, k)
        .map_err(|v| Error::Internal(format!("{what} produced an improper coloring: {v}")))
}

/// Extends `prefix` (length `l >= k`, a permutation on its last `k`) by
/// repeating that permutation.
pub fn modulo_completion(w: &Window, prefix: &[Color]) -> Result<Vec<Color>> {
    let k = w.k;
    let l = prefix.len();
    if l < k {
        return Err(Error::Precondition(format!(
            "modulo completion needs at least k = {k} prefix colors, got {l}"
        )));
    }
    check_prefix(w, prefix)?;
    if !is_permutation(&prefix[l - k..], k) {
        return Err(Error::Precondition(format!(
            "prefix is not a bijection on its last k intervals (ending at interval {})",
            w.intervals[l - 1].arrival
        )));
    }
    let mut colors = prefix.to_vec();
    for i in l..w.len() {
        colors.push(colors[i - k]);
    }
    Ok(colors)
}

/// Colors a run of exactly `2k` intervals whose first `k` are fixed so that
/// the last `k` carry a permutation of `1..=k`.
///
/// The intervals of the fixed half meeting `I_k` form a clique `J`; the colors
/// outside `c(J)` go, ascending, to the first free intervals, and the rest
/// copy the color `k` positions earlier.
pub fn make_bijection(seq: &Window, first_k: &[Color]) -> Result<Vec<Color>> {
    let k = seq.k;
    if seq.len() != 2 * k || first_k.len() != k {
        return Err(Error::Precondition(format!(
            "make_bijection needs 2k = {} intervals and k fixed colors, got {} and {}",
            2 * k,
            seq.len(),
            first_k.len()
        )));
    }
    check_prefix(seq, first_k)?;
    let ivs = &seq.intervals;
    let last = &ivs[k - 1];
    let clique_start = (0..k)
        .find(|&p| intersects(&ivs[p], last))
        .expect("an interval meets itself");
    let used: HashSet<Color> = first_k[clique_start..].iter().copied().collect();
    let unused = (1..=k as Color).filter(|c| !used.contains(c));

    let mut colors = first_k.to_vec();
    colors.extend(unused);
    debug_assert_eq!(colors.len(), k + clique_start);
    for i in k + clique_start..2 * k {
        colors.push(colors[i - k]);
    }
    internal_check(ivs, &colors, k, "make_bijection")?;
    if !is_permutation(&colors[k..], k) {
        return Err(Error::Internal(
            "make_bijection output is not a bijection".into(),
        ));
    }
    Ok(colors)
}

/// Extends any proper prefix to the whole window: first-fit up to `k`
/// colored intervals, one [`make_bijection`] step, then
/// [`modulo_completion`]. A tail shorter than `k` is finished first-fit.
pub fn greedy_completion(w: &Window, prefix: &[Color]) -> Result<Vec<Color>> {
    check_prefix(w, prefix)?;
    let (k, n) = (w.k, w.len());
    let ivs = &w.intervals;
    let mut colors = prefix.to_vec();
    if colors.len() < k {
        let upto = k.min(n);
        colors = crate::coloring::first_fit(&ivs[..upto], &colors, k)
            .ok_or_else(|| Error::Internal("first-fit ran out of colors".into()))?;
    }
    let l = colors.len();
    if l == n {
        return Ok(colors);
    }
    if l + k <= n {
        let pair = Window {
            intervals: ivs[l - k..l + k].to_vec(),
            k,
        };
        let repaired = make_bijection(&pair, &colors[l - k..])?;
        colors.extend_from_slice(&repaired[k..]);
        colors = modulo_completion(w, &colors)?;
    } else {
        colors = crate::coloring::first_fit(ivs, &colors, k)
            .ok_or_else(|| Error::Internal("first-fit ran out of colors".into()))?;
    }
    internal_check(ivs, &colors, k, "greedy completion")?;
    Ok(colors)
}

/// Per-block record of the construction in [`unit_color_completion`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionTrace {
    /// Colors of the last `k` intervals of each padded block, in order.
    pub block_tails: Vec<Vec<Color>>,
    /// True when a gap in the middle of the window let both ends be
    /// completed independently.
    pub split: bool,
}

pub fn unit_color_completion(
    w: &Window,
    b: &BoundaryColoring,
    slack: &SlackPlacement,
) -> Result<Vec<Color>> {
    unit_color_completion_traced(w, b, slack).map(|(c, _)| c)
}

/// [`unit_color_completion`] returning the block-by-block permutations as well.
pub fn unit_color_completion_traced(
    w: &Window,
    b: &BoundaryColoring,
    slack: &SlackPlacement,
) -> Result<(Vec<Color>, CompletionTrace)> {
    let (k, n) = (w.k, w.len());
    let ivs = &w.intervals;
    if n < 2 * k {
        return Err(Error::Precondition(format!(
            "window of {n} intervals is shorter than 2k = {}",
            2 * k
        )));
    }
    if !is_permutation(&b.left, k) || !is_permutation(&b.right, k) {
        return Err(Error::Precondition(
            "boundary colorings must be bijections onto 1..=k".into(),
        ));
    }
    check_positional(&ivs[..k], &b.left, k)
        .and_then(|_| check_positional(&ivs[n - k..], &b.right, k))
        .map_err(|v| Error::Precondition(format!("boundary coloring not proper: {v}")))?;
    let dummies = validate_slack(w, slack)?;
    let mut trace = CompletionTrace::default();

    // A gap strictly between the two boundary blocks decouples them.
    if let Some(g) = (k..=n - k).find(|&g| !intersects(&ivs[g - 1], &ivs[g])) {
        let mut colors = vec![0; n];
        colors[..k].copy_from_slice(&b.left);
        colors[n - k..].copy_from_slice(&b.right);
        for i in k..g {
            colors[i] = colors[i - k];
        }
        for i in (g..n - k).rev() {
            colors[i] = colors[i + k];
        }
        internal_check(ivs, &colors, k, "split completion")?;
        if colors[..k] != b.left[..] || colors[n - k..] != b.right[..] {
            return Err(Error::Internal("split completion moved a boundary".into()));
        }
        trace.split = true;
        return Ok((colors, trace));
    }

    // Dummy blocks L_i (k - 1 each) and separators M_i.
    let blocks: Vec<&[UnitInterval]> = (0..k).map(|i| &dummies[i * k..i * k + k - 1]).collect();
    let separators: Vec<&UnitInterval> = (1..k).map(|i| &dummies[i * k - 1]).collect();

    // Real intervals split at the separators, then padded to a multiple of k.
    #[derive(Clone)]
    struct Slot<'a> {
        iv: &'a UnitInterval,
        real: Option<usize>,
    }
    let mut parts: Vec<Vec<Slot<'_>>> = vec![Vec::new(); k];
    for (pos, iv) in ivs.iter().enumerate() {
        let part = separators.partition_point(|m| *m < iv);
        parts[part].push(Slot {
            iv,
            real: Some(pos),
        });
    }
    for (i, part) in parts.iter_mut().enumerate() {
        if part.is_empty() {
            return Err(Error::Internal(format!("block {} has no real interval", i + 1)));
        }
        let pad = (k - part.len() % k) % k;
        part.extend(blocks[i][..pad].iter().map(|iv| Slot { iv, real: None }));
        part.sort_by(|a, c| a.iv.cmp(c.iv));
    }

    let mut block_colors: Vec<Vec<Color>> = Vec::with_capacity(k);
    // First block: copy the left permutation.
    let first: Vec<Color> = (0..parts[0].len()).map(|i| b.left[i % k]).collect();
    let mut tail = first[first.len() - k..].to_vec();
    trace.block_tails.push(tail.clone());
    block_colors.push(first);

    for j in 2..=k {
        // Step 1: bring the color the right boundary wants at slot k - j + 1
        // into place, shifting the colors in between one slot left.
        let slot = k - j + 1;
        let wanted = b.right[slot];
        let from = tail
            .iter()
            .position(|&c| c == wanted)
            .ok_or_else(|| Error::Internal("block tail is not a permutation".into()))?;
        if from > slot {
            return Err(Error::Internal(format!(
                "color {wanted} sits at slot {from}, past target slot {slot}"
            )));
        }
        let mut perm = tail.clone();
        perm[from..slot].copy_from_slice(&tail[from + 1..=slot]);
        perm[slot] = tail[from];
        if perm[slot..] != b.right[slot..] {
            return Err(Error::Internal(format!(
                "block {j} does not match the right boundary on its last {} slots",
                j - 1
            )));
        }
        // Step 2: repeat the permutation across the padded block.
        let colors: Vec<Color> = (0..parts[j - 1].len()).map(|i| perm[i % k]).collect();
        tail = colors[colors.len() - k..].to_vec();
        trace.block_tails.push(tail.clone());
        block_colors.push(colors);
    }
    if tail != b.right {
        return Err(Error::Internal("last block does not end on the right boundary".into()));
    }

    let mut colors = vec![0; n];
    for (part, cols) in parts.iter().zip(&block_colors) {
        for (slot, &c) in part.iter().zip(cols) {
            if let Some(pos) = slot.real {
                colors[pos] = c;
            }
        }
    }
    internal_check(ivs, &colors, k, "unit color completion")?;
    if colors[..k] != b.left[..] || colors[n - k..] != b.right[..] {
        return Err(Error::Internal("completion moved a boundary color".into()));
    }
    Ok((colors, trace))
}

/// Checks the dummy placement against the window and returns the dummies as
/// intervals with arrivals `-1, -2, ...`.
fn validate_slack(w: &Window, slack: &SlackPlacement) -> Result<Vec<UnitInterval>> {
    let (k, n) = (w.k, w.len());
    let ivs = &w.intervals;
    let need = k * k - 1;
    if slack.positions.len() != need {
        return Err(Error::Precondition(format!(
            "need exactly k² - 1 = {need} slack positions, got {}",
            slack.positions.len()
        )));
    }
    let dummies: Vec<UnitInterval> = slack
        .positions
        .iter()
        .enumerate()
        .map(|(i, p)| UnitInterval::new(p.clone(), -(i as i64) - 1))
        .collect();
    if let Some(d) = dummies.windows(2).find(|d| !d[0].precedes(&d[1])) {
        return Err(Error::Precondition(format!(
            "slack intervals at {} and {} are not disjoint and increasing",
            d[0].x, d[1].x
        )));
    }
    if let (Some(first), Some(last)) = (dummies.first(), dummies.last()) {
        if *first <= ivs[k - 1] || *last >= ivs[n - k] {
            return Err(Error::Precondition(
                "slack must lie strictly between the two boundary blocks".into(),
            ));
        }
    }
    let mut all: Vec<&Coord> = ivs.iter().map(|iv| &iv.x).chain(slack.positions.iter()).collect();
    all.sort();
    if max_clique_sorted(all) > k {
        return Err(Error::Precondition(
            "adding the slack intervals raises the clique number above k".into(),
        ));
    }
    Ok(dummies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::complete_with_boundaries;

    fn window(xs: &[&str], k: usize) -> Window {
        Window::new(
            xs.iter()
                .enumerate()
                .map(|(i, s)| UnitInterval::new(s.parse().unwrap(), i as i64))
                .collect(),
            k,
        )
        .unwrap()
    }

    fn coords(xs: &[&str]) -> Vec<Coord> {
        xs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn modulo_examples() {
        let w = window(&["0", "0.5", "1.2", "1.7"], 2);
        assert_eq!(modulo_completion(&w, &[1, 2]).unwrap(), vec![1, 2, 1, 2]);
        let chain = window(&["0", "1", "2.5", "4"], 1);
        assert_eq!(modulo_completion(&chain, &[1]).unwrap(), vec![1; 4]);
        let w3 = window(&["0", "0.1", "0.2", "1.0", "1.1", "1.2"], 3);
        let got = modulo_completion(&w3, &[1, 2, 3]).unwrap();
        assert_eq!(got, vec![1, 2, 3, 1, 2, 3]);
        assert!(check_positional(w3.intervals(), &got, 3).is_ok());
    }

    #[test]
    fn modulo_rejects_non_bijective_prefix() {
        let w = window(&["0", "1.5", "3", "4.5"], 2);
        let err = modulo_completion(&w, &[1, 1]).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("interval 1")));
        assert!(modulo_completion(&w, &[1]).is_err());
    }

    #[test]
    fn window_rejects_large_clique() {
        let err = Window::new(
            coords(&["0", "0.5", "0.7"])
                .into_iter()
                .enumerate()
                .map(|(i, x)| UnitInterval::new(x, i as i64))
                .collect(),
            2,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CliqueViolation { k: 2, ref coords } if coords.len() == 3));
    }

    #[test]
    fn greedy_examples() {
        let w = window(&["0", "0.5", "1.2"], 2);
        let got = greedy_completion(&w, &[1, 2]).unwrap();
        assert_eq!(&got[..2], &[1, 2]);
        assert!(check_positional(w.intervals(), &got, 2).is_ok());

        let w3 = window(&["0", "0.4", "1.2", "1.3"], 3);
        let got = greedy_completion(&w3, &[2, 3]).unwrap();
        assert_eq!(&got[..2], &[2, 3]);
        assert!(check_positional(w3.intervals(), &got, 3).is_ok());

        let empty_prefix = greedy_completion(&w3, &[]).unwrap();
        assert!(check_positional(w3.intervals(), &empty_prefix, 3).is_ok());
    }

    #[test]
    fn greedy_long_window_after_non_bijective_prefix() {
        let xs: Vec<String> = (0..40).map(|i| format!("{}", i as f64 * 0.35)).collect();
        let refs: Vec<&str> = xs.iter().map(|s| s.as_str()).collect();
        let w = window(&refs, 3);
        let got = greedy_completion(&w, &[1, 2, 1]).unwrap_err();
        // 0, 0.35, 0.7 pairwise intersect, so (1, 2, 1) is not proper.
        assert!(matches!(got, Error::Precondition(_)));
        let got = greedy_completion(&w, &[3, 1, 2, 3]).unwrap();
        assert_eq!(&got[..4], &[3, 1, 2, 3]);
        assert!(check_positional(w.intervals(), &got, 3).is_ok());
    }

    #[test]
    fn make_bijection_examples() {
        let w = window(&["0", "1.5", "3.0", "4.5"], 2);
        let got = make_bijection(&w, &[1, 1]).unwrap();
        assert_eq!(got, vec![1, 1, 2, 1]);

        let w1 = window(&["0", "1"], 1);
        assert_eq!(make_bijection(&w1, &[1]).unwrap(), vec![1, 1]);

        let w3 = window(&["0", "0.2", "0.4", "1.1", "1.3", "1.5"], 3);
        let got = make_bijection(&w3, &[1, 2, 3]).unwrap();
        assert_eq!(got, vec![1, 2, 3, 1, 2, 3]);

        // Only the last fixed interval meets I_k: colors 1 and 3 are free.
        let w3 = window(&["0", "1.2", "2.4", "2.6", "3.5", "3.6"], 3);
        let got = make_bijection(&w3, &[2, 2, 2]).unwrap();
        assert_eq!(got, vec![2, 2, 2, 1, 3, 2]);
        assert!(check_positional(w3.intervals(), &got, 3).is_ok());
    }

    #[test]
    fn make_bijection_rejects_wrong_length() {
        let w = window(&["0", "1.5", "3.0"], 2);
        assert!(matches!(make_bijection(&w, &[1, 2]), Err(Error::Precondition(_))));
    }

    #[test]
    fn unit_completion_k1_is_constant() {
        let w = window(&["0", "1", "2.5", "4"], 1);
        let got = unit_color_completion(
            &w,
            &BoundaryColoring {
                left: vec![1],
                right: vec![1],
            },
            &SlackPlacement { positions: vec![] },
        )
        .unwrap();
        assert_eq!(got, vec![1; 4]);
    }

    #[test]
    fn unit_completion_split_at_middle_gap() {
        let w = window(&["0", "0.5", "1.2", "4.6", "5.2", "5.7"], 2);
        let slack = SlackPlacement {
            positions: coords(&["2.2", "3.2", "4.2"]),
        };
        let b = BoundaryColoring {
            left: vec![1, 2],
            right: vec![2, 1],
        };
        let (got, trace) = unit_color_completion_traced(&w, &b, &slack).unwrap();
        assert!(trace.split);
        assert_eq!(got, vec![1, 2, 1, 1, 2, 1]);
    }

    /// A 3-clique, a path of load at most 2, and another 3-clique; eight
    /// dummies fit along the path.
    fn connected_k3() -> (Window, SlackPlacement) {
        let mut xs: Vec<Coord> = coords(&["0", "0.1", "0.2"]);
        xs.extend((0..10).map(|t| Coord::from_ratio(105 + 90 * t, 100)));
        xs.extend(coords(&["10.0", "10.1", "10.2"]));
        let w = Window::new(
            xs.into_iter()
                .enumerate()
                .map(|(i, x)| UnitInterval::new(x, i as i64))
                .collect(),
            3,
        )
        .unwrap();
        let slack = SlackPlacement {
            positions: (0..8).map(|t| Coord::from_ratio(12 + 10 * t, 10)).collect(),
        };
        (w, slack)
    }

    #[test]
    fn unit_completion_connected_all_right_permutations() {
        let (w, slack) = connected_k3();
        let perms = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        for right in perms {
            let b = BoundaryColoring {
                left: vec![1, 2, 3],
                right: right.to_vec(),
            };
            let (got, trace) = unit_color_completion_traced(&w, &b, &slack).unwrap();
            assert!(!trace.split);
            assert_eq!(trace.block_tails.len(), 3);
            assert_eq!(&got[..3], &[1, 2, 3]);
            assert_eq!(&got[13..], &right);
            assert!(check_positional(w.intervals(), &got, 3).is_ok());
            // Block j agrees with the right boundary on its last j - 1 slots.
            for (j, tail) in trace.block_tails.iter().enumerate() {
                assert_eq!(&tail[3 - j..], &right[3 - j..]);
            }
        }
    }

    #[test]
    fn oracle_agrees_connected_instance_is_feasible() {
        let (w, _) = connected_k3();
        let mut fixed = vec![None; w.len()];
        for (i, c) in [1, 2, 3].into_iter().enumerate() {
            fixed[i] = Some(c);
        }
        for (i, c) in [3, 2, 1].into_iter().enumerate() {
            fixed[13 + i] = Some(c);
        }
        assert!(complete_with_boundaries(w.intervals(), &fixed, 3)
            .unwrap()
            .is_some());
    }

    #[test]
    fn slack_validation() {
        let w = window(&["0", "0.5", "1.4", "5.0", "5.5"], 2);
        let b = BoundaryColoring {
            left: vec![1, 2],
            right: vec![2, 1],
        };
        let wrong_count = SlackPlacement {
            positions: coords(&["2", "3"]),
        };
        assert!(matches!(
            unit_color_completion(&w, &b, &wrong_count),
            Err(Error::Precondition(_))
        ));
        let overlapping = SlackPlacement {
            positions: coords(&["2", "2.5", "3.5"]),
        };
        assert!(matches!(
            unit_color_completion(&w, &b, &overlapping),
            Err(Error::Precondition(_))
        ));
        let outside = SlackPlacement {
            positions: coords(&["-3", "-2", "-1"]),
        };
        assert!(matches!(
            unit_color_completion(&w, &b, &outside),
            Err(Error::Precondition(_))
        ));
        let not_bijective = BoundaryColoring {
            left: vec![1, 1],
            right: vec![2, 1],
        };
        assert!(matches!(
            unit_color_completion(
                &w,
                &not_bijective,
                &SlackPlacement {
                    positions: coords(&["2", "3", "4"])
                }
            ),
            Err(Error::Precondition(_))
        ));
    }
}
