//! Brute-force ground truth used to cross-check the constructive code.
//!
//! Nothing here shares code paths with the constructions it checks: the
//! searches use pairwise intersection tests directly and are exponential in
//! the worst case, hence the size guard.

use std::collections::HashSet;

use crate::circular::{arcs_intersect, ArcInstance};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::interval::{intersects, Color, UnitInterval};

pub const ORACLE_LIMIT: usize = 30;

/// Some proper `k`-coloring of `intervals` (positional), or `None`.
pub fn chromatic_backtracking(intervals: &[UnitInterval], k: usize) -> Result<Option<Vec<Color>>> {
    complete_with_boundaries(intervals, &vec![None; intervals.len()], k)
}

/// A proper `k`-coloring of `window` (positional, any input order) that
/// agrees with every `Some` entry of `fixed`, or `None` if none exists.
pub fn complete_with_boundaries(
    window: &[UnitInterval],
    fixed: &[Option<Color>],
    k: usize,
) -> Result<Option<Vec<Color>>> {
    if window.len() > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            size: window.len(),
            limit: ORACLE_LIMIT,
        });
    }
    if fixed.len() != window.len() {
        return Err(Error::Precondition(format!(
            "{} fixed entries for {} intervals",
            fixed.len(),
            window.len()
        )));
    }
    if fixed.iter().flatten().any(|&c| c == 0 || c as usize > k) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..window.len()).collect();
    order.sort_by(|&a, &b| window[a].cmp(&window[b]));
    let ivs: Vec<&UnitInterval> = order.iter().map(|&i| &window[i]).collect();
    let pinned: Vec<Option<Color>> = order.iter().map(|&i| fixed[i]).collect();
    let n = ivs.len();

    // earlier[i]: indices p < i meeting interval i. Anything before i that
    // meets a later interval also meets i, so these colors are the whole
    // state that the suffix search depends on.
    let earlier: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..i).filter(|&p| intersects(ivs[p], ivs[i])).collect())
        .collect();
    let later_pinned: Vec<Vec<Color>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| intersects(ivs[i], ivs[j]))
                .filter_map(|j| pinned[j])
                .collect()
        })
        .collect();

    let mut search = Search {
        k,
        earlier: &earlier,
        later_pinned: &later_pinned,
        pinned: &pinned,
        colors: vec![0; n],
        dead: HashSet::new(),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let mut out = vec![0; n];
    for (pos, &orig) in order.iter().enumerate() {
        out[orig] = search.colors[pos];
    }
    Ok(Some(out))
}

struct Search<'a> {
    k: usize,
    earlier: &'a [Vec<usize>],
    later_pinned: &'a [Vec<Color>],
    pinned: &'a [Option<Color>],
    colors: Vec<Color>,
    dead: HashSet<(usize, Vec<Color>)>,
}

impl Search<'_> {
    fn run(&mut self, i: usize) -> bool {
        if i == self.colors.len() {
            return true;
        }
        let state: Vec<Color> = self.earlier[i].iter().map(|&p| self.colors[p]).collect();
        if self.dead.contains(&(i, state.clone())) {
            return false;
        }
        let candidates: Vec<Color> = match self.pinned[i] {
            Some(c) => vec![c],
            None => (1..=self.k as Color).collect(),
        };
        for c in candidates {
            if state.contains(&c) {
                continue;
            }
            if self.pinned[i].is_none() && self.later_pinned[i].contains(&c) {
                continue;
            }
            self.colors[i] = c;
            if self.run(i + 1) {
                return true;
            }
        }
        self.colors[i] = 0;
        self.dead.insert((i, state));
        false
    }
}

/// Some proper `k`-coloring of the circular-arc graph (positional), or `None`.
/// Plain backtracking over pairwise arc intersection, new colors introduced
/// in increasing order.
pub fn arcs_colorable(inst: &ArcInstance, k: usize) -> Result<Option<Vec<Color>>> {
    let n = inst.arcs.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..i)
                .filter(|&j| arcs_intersect(&inst.arcs[i], &inst.arcs[j], &inst.lambda))
                .collect()
        })
        .collect();
    fn go(i: usize, used: Color, k: usize, adj: &[Vec<usize>], colors: &mut [Color]) -> bool {
        if i == colors.len() {
            return true;
        }
        for c in 1..=(used + 1).min(k as Color) {
            if adj[i].iter().any(|&j| colors[j] == c) {
                continue;
            }
            colors[i] = c;
            if go(i + 1, used.max(c), k, adj, colors) {
                return true;
            }
        }
        colors[i] = 0;
        false
    }
    let mut colors = vec![0; n];
    Ok(go(0, 0, k, &adj, &mut colors).then_some(colors))
}

/// Maximum number of pairwise disjoint unit intervals `[p, p + 1)` with
/// `a <= p` and `p + 1 <= b` that can be added to `set` without any point
/// reaching load `k + 1`.
///
/// Candidate positions are `a` and every endpoint of `set`, each shifted by
/// integer offsets: sliding any packing left until each member touches `a`,
/// its left neighbour or the end of a saturated region lands on this grid.
/// The packing itself is an exhaustive search over the candidates.
pub fn slack_capacity(set: &[UnitInterval], a: &Coord, b: &Coord, k: usize) -> usize {
    if a >= b {
        return 0;
    }
    let width = (b - a).floor_i64().max(0);
    let mut anchors: Vec<Coord> = vec![a.clone()];
    for iv in set {
        for e in [iv.x.clone(), iv.end()] {
            if e >= *a && e < *b {
                anchors.push(e);
            }
        }
    }
    let mut cand: Vec<Coord> = Vec::new();
    for base in &anchors {
        for t in 0..=width {
            let p = base.plus_int(t);
            if p.unit_end() <= *b {
                cand.push(p);
            }
        }
    }
    cand.sort();
    cand.dedup();
    let fits: Vec<bool> = cand.iter().map(|p| max_load_on(set, p) < k).collect();
    // best[i] = largest packing using candidates i.. only.
    let mut best = vec![0usize; cand.len() + 1];
    for i in (0..cand.len()).rev() {
        let skip = best[i + 1];
        let take = if fits[i] {
            let end = cand[i].unit_end();
            let next = cand.partition_point(|c| *c < end);
            1 + best[next]
        } else {
            0
        };
        best[i] = skip.max(take);
    }
    best[0]
}

/// Maximum number of intervals of `set` covering one point of `[p, p + 1)`.
fn max_load_on(set: &[UnitInterval], p: &Coord) -> usize {
    let end = p.unit_end();
    let mut probes: Vec<&Coord> = vec![p];
    probes.extend(set.iter().map(|iv| &iv.x).filter(|x| *x > p && **x < end));
    probes
        .into_iter()
        .map(|q| {
            set.iter()
                .filter(|iv| iv.x <= *q && *q < iv.end())
                .count()
        })
        .max()
        .unwrap_or(0)
}
