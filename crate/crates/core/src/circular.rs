//! Coloring unit circular arcs with exactly `L` colors, where `L` is the
//! maximum load, when `L² - 1` disjoint arcs can be added without raising it.
//!
//! The circle is rotated so a point of load `L` sits at 0, cut open there,
//! and the `L` arcs through 0 are appended again one circumference later.
//! Completing that line instance with the same permutation `1..=L` on both
//! ends gives a coloring that closes up around the circle.

use serde::{Deserialize, Serialize};

use crate::coloring::max_clique_sorted;
use crate::completion::{unit_color_completion, BoundaryColoring, SlackPlacement, Window};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::interval::{Color, UnitInterval};

/// Unit arcs `[a, a + 1)` on a circle of circumference `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcInstance {
    pub lambda: Coord,
    pub arcs: Vec<Coord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadProfile {
    pub max_load: usize,
    pub witness_point: Coord,
}

impl ArcInstance {
    /// Begins are reduced mod `lambda`; `lambda >= 2` is required.
    pub fn new(lambda: Coord, arcs: Vec<Coord>) -> Result<Self> {
        if lambda < Coord::from_int(2) {
            return Err(Error::Precondition(format!(
                "circumference must be at least 2, got {lambda}"
            )));
        }
        let arcs = arcs.iter().map(|a| a.rem_euclid(&lambda)).collect();
        Ok(ArcInstance { lambda, arcs })
    }

    /// Number of arcs containing point `p`.
    pub fn load_at(&self, p: &Coord) -> usize {
        self.arcs
            .iter()
            .filter(|a| (p - *a).rem_euclid(&self.lambda) < Coord::one())
            .count()
    }

    fn rotated(&self, origin: &Coord) -> Vec<Coord> {
        self.arcs
            .iter()
            .map(|a| (a - origin).rem_euclid(&self.lambda))
            .collect()
    }
}

/// True iff two unit arcs on a circle of circumference `lambda` share a point.
pub fn arcs_intersect(a: &Coord, b: &Coord, lambda: &Coord) -> bool {
    let one = Coord::one();
    (b - a).rem_euclid(lambda) < one || (a - b).rem_euclid(lambda) < one
}

/// Load only rises at arc begins, so the maximum is attained at one.
pub fn max_load(inst: &ArcInstance) -> LoadProfile {
    let mut best = LoadProfile {
        max_load: 0,
        witness_point: Coord::zero(),
    };
    for a in &inst.arcs {
        let load = inst.load_at(a);
        if load > best.max_load || (load == best.max_load && *a < best.witness_point) {
            best = LoadProfile {
                max_load: load,
                witness_point: a.clone(),
            };
        }
    }
    best
}

/// Maximal half-open stretches of `[0, lambda)` (rotated coordinates) where
/// the load equals `level`, in order.
fn saturated_segments(rot: &[Coord], lambda: &Coord, level: usize) -> Vec<(Coord, Coord)> {
    let mut cuts: Vec<Coord> = vec![Coord::zero()];
    for a in rot {
        cuts.push(a.clone());
        cuts.push(a.unit_end().rem_euclid(lambda));
    }
    cuts.sort();
    cuts.dedup();
    let one = Coord::one();
    let mut out: Vec<(Coord, Coord)> = Vec::new();
    for (i, s) in cuts.iter().enumerate() {
        let e = cuts.get(i + 1).cloned().unwrap_or_else(|| lambda.clone());
        let load = rot.iter().filter(|a| (s - *a).rem_euclid(lambda) < one).count();
        if load < level {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.1 == *s => last.1 = e,
            _ => out.push((s.clone(), e)),
        }
    }
    out
}

/// Earliest-first packing of up to `r` disjoint arcs in rotated coordinates
/// `(0, lambda]`, each avoiding every point of load `L`.
fn pack(inst: &ArcInstance, r: usize) -> (Coord, Vec<Coord>) {
    let profile = max_load(inst);
    let origin = profile.witness_point.clone();
    let rot = inst.rotated(&origin);
    let segments = saturated_segments(&rot, &inst.lambda, profile.max_load.max(1));
    let mut placed: Vec<Coord> = Vec::new();
    let mut p = Coord::zero();
    let mut seg = segments.iter().peekable();
    while placed.len() < r {
        // Skip past every saturated stretch meeting [p, p + 1).
        while let Some((s, e)) = seg.peek() {
            if *e <= p {
                seg.next();
            } else if *s < p.unit_end() {
                p = e.clone();
                seg.next();
            } else {
                break;
            }
        }
        if p.unit_end() > inst.lambda {
            break;
        }
        placed.push(p.clone());
        p = p.unit_end();
    }
    (origin, placed)
}

/// `r` pairwise disjoint unit arcs whose addition keeps the maximum load,
/// or `None`.
///
/// Every such arc avoids the max-load witness, so after rotating the witness
/// to 0 the arcs lie in `(0, lambda]` and must miss the saturated stretches.
/// Earliest-first packing is optimal for that, so `None` means no extension
/// exists at all.
pub fn find_slack_extension(inst: &ArcInstance, r: usize) -> Option<Vec<Coord>> {
    if r == 0 {
        return Some(Vec::new());
    }
    if inst.arcs.is_empty() {
        return None;
    }
    let (origin, placed) = pack(inst, r);
    (placed.len() == r).then(|| {
        placed
            .iter()
            .map(|p| (p + &origin).rem_euclid(&inst.lambda))
            .collect()
    })
}

/// A proper coloring of `inst.arcs` (positional) using colors `1..=L`.
pub fn color_arcs(inst: &ArcInstance) -> Result<Vec<Color>> {
    let n = inst.arcs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let profile = max_load(inst);
    let l = profile.max_load;
    let need = l * l - 1;
    let (origin, placed) = pack(inst, need);
    if placed.len() < need {
        return Err(Error::InsufficientSlack {
            needed: need,
            found: placed.len(),
        });
    }

    // Cut open at the witness: arcs through 0 get begins in (-1, 0].
    let lambda = &inst.lambda;
    let rot = inst.rotated(&origin);
    let cut = lambda.plus_int(-1);
    let mut order: Vec<(Coord, usize)> = rot
        .iter()
        .enumerate()
        .map(|(i, x)| (if *x > cut { x - lambda } else { x.clone() }, i))
        .collect();
    order.sort();
    let through_zero = order.iter().take_while(|(x, _)| *x <= Coord::zero()).count();
    if through_zero != l {
        return Err(Error::Internal(format!(
            "{through_zero} arcs contain the witness point, expected {l}"
        )));
    }
    let mut line: Vec<UnitInterval> = order
        .iter()
        .enumerate()
        .map(|(i, (x, _))| UnitInterval::new(x.clone(), i as i64))
        .collect();
    line.extend(
        order[..l]
            .iter()
            .enumerate()
            .map(|(i, (x, _))| UnitInterval::new(x + lambda, (n + i) as i64)),
    );
    if max_clique_sorted(line.iter().map(|iv| &iv.x)) > l {
        return Err(Error::Internal("unwrapped instance has a larger clique".into()));
    }

    let ident: Vec<Color> = (1..=l as Color).collect();
    let colors = unit_color_completion(
        &Window::new(line, l)?,
        &BoundaryColoring {
            left: ident.clone(),
            right: ident,
        },
        &SlackPlacement { positions: placed },
    )?;

    let mut out = vec![0; n];
    for (pos, (_, orig)) in order.iter().enumerate() {
        out[*orig] = colors[pos];
    }
    if let Some((a, b)) = first_conflict(inst, &out) {
        return Err(Error::Internal(format!(
            "arcs {a} and {b} intersect and share a color"
        )));
    }
    Ok(out)
}

/// First pair of intersecting arcs with equal colors, if any.
pub fn first_conflict(inst: &ArcInstance, colors: &[Color]) -> Option<(usize, usize)> {
    let n = inst.arcs.len();
    for i in 0..n {
        for j in i + 1..n {
            if colors[i] == colors[j] && arcs_intersect(&inst.arcs[i], &inst.arcs[j], &inst.lambda) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The five-arc odd cycle: circumference 5/2, begins 0, 1/2, 1, 3/2, 2.
pub fn c5_instance() -> ArcInstance {
    ArcInstance::new(
        Coord::from_ratio(5, 2),
        (0..5).map(|i| Coord::from_ratio(i, 2)).collect(),
    )
    .expect("valid circumference")
}
