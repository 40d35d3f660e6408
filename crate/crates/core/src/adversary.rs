//! Adaptive updates that force quadratic recourse on any fully dynamic
//! 2-recoloring algorithm.
//!
//! Two induced paths sit side by side, `L_n, K_n, .., L_1, K_1` on the left
//! and `I_1, J_1, .., I_n, J_n` on the right, with `K_1` and `I_1` less than
//! one unit apart. Each path is 2-colored in one of two ways. Depending on
//! whether `K_1` and `I_1` share a color, the adversary inserts probes that
//! force the opposite relation, so one whole path (`2n` intervals) must flip.

use serde::{Deserialize, Serialize};

use crate::coloring::{first_fit, verify_proper, Coloring};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::interval::{Color, UnitInterval};
use crate::sequenced::SequencedSet;

/// A fully dynamic colorer: after every update the coloring must be proper
/// with at most `k` colors.
pub trait DynamicColorer {
    fn k(&self) -> usize;
    /// Inserts `[x, x + 1)` and returns its arrival index.
    fn insert(&mut self, x: Coord) -> Result<i64>;
    fn delete(&mut self, arrival: i64) -> Result<()>;
    fn coloring(&self) -> &Coloring;
    fn intervals(&self) -> &SequencedSet;
}

/// Recolors every touched connected component greedily from scratch.
#[derive(Clone, Debug)]
pub struct NaiveColorer {
    k: usize,
    set: SequencedSet,
    coloring: Coloring,
    next_arrival: i64,
}

impl NaiveColorer {
    pub fn new(k: usize) -> Self {
        NaiveColorer {
            k,
            set: SequencedSet::new(),
            coloring: Coloring::new(),
            next_arrival: 0,
        }
    }

    /// The maximal run of consecutive, pairwise chained intervals around `iv`.
    fn component(&self, iv: &UnitInterval) -> Vec<UnitInterval> {
        let mut left = vec![iv.clone()];
        for p in self.set.iter_before(iv) {
            if p.end() <= left.last().unwrap().x {
                break;
            }
            left.push(p.clone());
        }
        left.reverse();
        for s in self.set.iter_after(iv) {
            if left.last().unwrap().end() <= s.x {
                break;
            }
            left.push(s.clone());
        }
        left
    }

    fn recolor_component(&mut self, iv: &UnitInterval) -> Result<()> {
        let comp = self.component(iv);
        let colors = first_fit(&comp, &[], self.k).ok_or_else(|| Error::CliqueViolation {
            k: self.k,
            coords: comp.iter().map(|c| c.x.clone()).collect(),
        })?;
        for (c, color) in comp.iter().zip(colors) {
            self.coloring.set(c.arrival, color);
        }
        Ok(())
    }
}

impl DynamicColorer for NaiveColorer {
    fn k(&self) -> usize {
        self.k
    }

    fn insert(&mut self, x: Coord) -> Result<i64> {
        let arrival = self.next_arrival;
        let iv = UnitInterval::new(x, arrival);
        self.set.insert(iv.clone());
        if let Err(e) = self.recolor_component(&iv) {
            self.set.remove(arrival);
            return Err(e);
        }
        self.next_arrival += 1;
        Ok(arrival)
    }

    fn delete(&mut self, arrival: i64) -> Result<()> {
        let iv = self.set.get(arrival).ok_or(Error::UnknownInterval(arrival))?;
        let prev = self.set.predecessor(&iv).cloned();
        let next = self.set.successor(&iv).cloned();
        self.set.remove(arrival);
        self.coloring.remove(arrival);
        for side in [prev, next].into_iter().flatten() {
            self.recolor_component(&side)?;
        }
        Ok(())
    }

    fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    fn intervals(&self) -> &SequencedSet {
        &self.set
    }
}

/// Begin coordinates of the four chains, index `i - 1` holding `X_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub i: Vec<Coord>,
    pub j: Vec<Coord>,
    pub k: Vec<Coord>,
    pub l: Vec<Coord>,
}

impl GadgetInstance {
    pub fn n(&self) -> usize {
        self.i.len()
    }

    /// Left path first, then the right path, each in `⊏` order.
    pub fn all(&self) -> Vec<Coord> {
        let mut left: Vec<Coord> = self.k.iter().chain(&self.l).cloned().collect();
        left.sort();
        let mut right: Vec<Coord> = self.i.iter().chain(&self.j).cloned().collect();
        right.sort();
        left.extend(right);
        left
    }
}

/// Chains step by `5/4` (unit plus `1/4`); the partner chain is offset by
/// half a step so each side is an induced path. `K_1` sits at 0 and `I_1`
/// at `3/2`, half a unit past the end of `K_1`.
pub fn build_gadget(n: usize) -> Result<GadgetInstance> {
    if n == 0 {
        return Err(Error::Precondition("gadget needs n >= 1".into()));
    }
    let step = |i: usize| Coord::from_ratio(5 * i as i64, 4);
    let half = Coord::from_ratio(5, 8);
    let start = Coord::from_ratio(3, 2);
    Ok(GadgetInstance {
        k: (0..n).map(|i| -step(i)).collect(),
        l: (0..n).map(|i| -(&half + &step(i))).collect(),
        i: (0..n).map(|i| &start + &step(i)).collect(),
        j: (0..n).map(|i| &(&start + &half) + &step(i)).collect(),
    })
}

/// A gadget loaded into a colorer; `k1` and `i1` are arrival indices.
#[derive(Clone, Debug)]
pub struct Installed {
    pub gadget: GadgetInstance,
    pub k1: i64,
    pub i1: i64,
    pub updates: usize,
    pub recolored: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub same_color: bool,
    pub updates: usize,
    pub forced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryReport {
    pub n: usize,
    pub probes: Vec<ProbeReport>,
    pub updates: usize,
    pub total_recolored: usize,
}

/// Applies one update and returns how many surviving intervals changed color.
fn tracked<C: DynamicColorer + ?Sized, T>(
    colorer: &mut C,
    op: impl FnOnce(&mut C) -> Result<T>,
) -> Result<(T, usize)> {
    let before = colorer.coloring().clone();
    let out = op(colorer)?;
    verify_proper(colorer.intervals(), colorer.coloring(), colorer.k())
        .map_err(|v| Error::ImproperColoring(v.to_string()))?;
    Ok((out, before.diff_count(colorer.coloring())))
}

pub fn install<C: DynamicColorer + ?Sized>(colorer: &mut C, gadget: &GadgetInstance) -> Result<Installed> {
    let mut recolored = 0;
    let mut k1 = None;
    let mut i1 = None;
    for x in gadget.all() {
        let (a, r) = tracked(colorer, |c| c.insert(x.clone()))?;
        recolored += r;
        if x == gadget.k[0] {
            k1 = Some(a);
        }
        if x == gadget.i[0] {
            i1 = Some(a);
        }
    }
    Ok(Installed {
        gadget: gadget.clone(),
        k1: k1.expect("gadget has K_1"),
        i1: i1.expect("gadget has I_1"),
        updates: 4 * gadget.n(),
        recolored,
    })
}

fn color(colorer: &impl DynamicColorer, arrival: i64) -> Result<Color> {
    colorer.coloring().get(arrival).ok_or(Error::MissingColor(arrival))
}

/// One round: insert the probe(s) matching the current relation of `K_1`
/// and `I_1`, then delete them. `forced` counts color changes of existing
/// intervals over all of those updates.
pub fn probe<C: DynamicColorer>(colorer: &mut C, g: &Installed) -> Result<ProbeReport> {
    let same = color(colorer, g.k1)? == color(colorer, g.i1)?;
    let xs: Vec<Coord> = if same {
        // [1/2, 3/2) meets K_1, [1, 2) meets I_1, and they meet each other.
        vec![Coord::from_ratio(1, 2), Coord::one()]
    } else {
        // [3/4, 7/4) meets both K_1 and I_1.
        vec![Coord::from_ratio(3, 4)]
    };
    let mut forced = 0;
    let mut probes = Vec::new();
    for x in xs {
        let (a, r) = tracked(colorer, |c| c.insert(x))?;
        forced += r;
        probes.push(a);
    }
    for &a in probes.iter().rev() {
        let ((), r) = tracked(colorer, |c| c.delete(a))?;
        forced += r;
    }
    Ok(ProbeReport {
        same_color: same,
        updates: 2 * probes.len(),
        forced,
    })
}

/// Installs a gadget of size `n` and runs `probes` rounds.
pub fn run_adversary<C: DynamicColorer>(colorer: &mut C, n: usize, probes: usize) -> Result<AdversaryReport> {
    let g = install(colorer, &build_gadget(n)?)?;
    let mut report = AdversaryReport {
        n,
        probes: Vec::with_capacity(probes),
        updates: g.updates,
        total_recolored: g.recolored,
    };
    for _ in 0..probes {
        let p = probe(colorer, &g)?;
        report.updates += p.updates;
        report.total_recolored += p.forced;
        report.probes.push(p);
    }
    Ok(report)
}

/// Spends a budget of `m` updates: half on a gadget with `n = m / 8`, the
/// rest on probes while a whole round still fits.
pub fn run_budget<C: DynamicColorer>(colorer: &mut C, m: usize) -> Result<AdversaryReport> {
    let n = (m / 8).max(1);
    let g = install(colorer, &build_gadget(n)?)?;
    let mut report = AdversaryReport {
        n,
        probes: Vec::new(),
        updates: g.updates,
        total_recolored: g.recolored,
    };
    while report.updates + 4 <= m {
        let p = probe(colorer, &g)?;
        report.updates += p.updates;
        report.total_recolored += p.forced;
        report.probes.push(p);
    }
    Ok(report)
}

/// Least-squares `c` in `total ≈ c · m²`.
pub fn fit_quadratic(points: &[(usize, usize)]) -> f64 {
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(m, t)| {
        let m2 = (m as f64).powi(2);
        (num + t as f64 * m2, den + m2 * m2)
    });
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::max_clique_sorted;
    use crate::interval::intersects;
    use crate::oracle::chromatic_backtracking;

    fn ivs(xs: &[Coord]) -> Vec<UnitInterval> {
        xs.iter()
            .enumerate()
            .map(|(a, x)| UnitInterval::new(x.clone(), a as i64))
            .collect()
    }

    #[test]
    fn smallest_gadget() {
        let g = build_gadget(1).unwrap();
        assert_eq!(g.all().len(), 4);
        let k1 = UnitInterval::new(g.k[0].clone(), 0);
        let i1 = UnitInterval::new(g.i[0].clone(), 1);
        assert!(!intersects(&k1, &i1));
        assert!(&i1.x - &k1.end() < Coord::one());
        assert!(build_gadget(0).is_err());
    }

    #[test]
    fn gadget_shape() {
        for n in 1..=6 {
            let g = build_gadget(n).unwrap();
            let all = ivs(&g.all());
            assert_eq!(max_clique_sorted(all.iter().map(|iv| &iv.x)), 2);
            // Each side is an induced path: only ⊏-neighbours meet.
            for (a, x) in all.iter().enumerate() {
                for (b, y) in all.iter().enumerate().skip(a + 1) {
                    let adjacent = b == a + 1 && b != 2 * n;
                    assert_eq!(intersects(x, y), adjacent, "n={n} {a} {b}");
                }
            }
            if all.len() <= 30 {
                assert!(chromatic_backtracking(&all, 2).unwrap().is_some());
            }
        }
        let g = build_gadget(3).unwrap();
        assert!(g.l.iter().max() < g.k.iter().max());
        assert_eq!(g.k.iter().max(), Some(&g.k[0]));
        assert_eq!(g.i.iter().min(), Some(&g.i[0]));
    }

    #[test]
    fn naive_stays_proper() {
        let mut c = NaiveColorer::new(2);
        let a = c.insert(Coord::zero()).unwrap();
        assert_eq!(c.coloring().get(a), Some(1));
        let b = c.insert(Coord::from_ratio(1, 2)).unwrap();
        assert_eq!(c.coloring().get(b), Some(2));
        assert!(matches!(
            c.insert(Coord::from_ratio(3, 4)),
            Err(Error::CliqueViolation { .. })
        ));
        assert_eq!(c.intervals().len(), 2);
        c.delete(a).unwrap();
        assert_eq!(c.coloring().get(b), Some(1));
        assert_eq!(c.delete(a), Err(Error::UnknownInterval(a)));
    }

    #[test]
    fn probes_force_two_n() {
        for n in [1, 3, 10] {
            let mut c = NaiveColorer::new(2);
            let report = run_adversary(&mut c, n, 5).unwrap();
            for p in &report.probes {
                assert!(p.forced >= 2 * n, "n={n}: {p:?}");
            }
            assert!(report.total_recolored >= 2 * n * 5);
        }
    }

    #[test]
    fn improper_colorer_is_caught() {
        struct Liar(NaiveColorer);
        impl DynamicColorer for Liar {
            fn k(&self) -> usize {
                2
            }
            fn insert(&mut self, x: Coord) -> Result<i64> {
                let a = self.0.insert(x)?;
                self.0.coloring.set(a, 1);
                Ok(a)
            }
            fn delete(&mut self, arrival: i64) -> Result<()> {
                self.0.delete(arrival)
            }
            fn coloring(&self) -> &Coloring {
                self.0.coloring()
            }
            fn intervals(&self) -> &SequencedSet {
                self.0.intervals()
            }
        }
        let err = run_adversary(&mut Liar(NaiveColorer::new(2)), 2, 1).unwrap_err();
        assert!(matches!(err, Error::ImproperColoring(_)));
    }

    #[test]
    fn quadratic_fit() {
        assert!((fit_quadratic(&[(10, 100), (20, 400)]) - 1.0).abs() < 1e-12);
        let pts: Vec<(usize, usize)> = [40, 80, 160]
            .iter()
            .map(|&m| {
                let r = run_budget(&mut NaiveColorer::new(2), m).unwrap();
                assert!(r.updates <= m);
                (m, r.total_recolored)
            })
            .collect();
        assert!(fit_quadratic(&pts) >= 0.1, "{pts:?}");
    }
}
