//! Event streams and replay: feeding an insertion sequence through the
//! engine, with optional per-update cross-checks.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::coloring::{check_positional, max_clique_sorted};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::incremental::{Engine, Side, UpdateRecord};
use crate::interval::{Color, UnitInterval};
use crate::oracle::{chromatic_backtracking, complete_with_boundaries, ORACLE_LIMIT};
use crate::workload::{generate, WorkloadConfig};

/// One line of an event stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Event {
    Insert { x: Coord },
}

pub fn events_for(cfg: &WorkloadConfig) -> Vec<Event> {
    generate(cfg).into_iter().map(|x| Event::Insert { x }).collect()
}

/// Parses JSON lines; blank lines are skipped.
pub fn read_events(r: impl BufRead) -> Result<Vec<Event>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Precondition(format!("line {}: {e}", i + 1)))?;
        if line.trim().is_empty() {
            continue;
        }
        let ev = serde_json::from_str(&line)
            .map_err(|e| Error::Precondition(format!("line {}: {e}", i + 1)))?;
        out.push(ev);
    }
    Ok(out)
}

pub fn write_events(mut w: impl Write, events: &[Event]) -> std::io::Result<()> {
    for ev in events {
        serde_json::to_writer(&mut w, ev)?;
        writeln!(w)?;
    }
    Ok(())
}

/// `k^7 · n · log2(n + 2)`.
pub fn recourse_bound(k: usize, n: usize) -> f64 {
    (k as f64).powi(7) * n as f64 * (n as f64 + 2.0).log2()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub k: usize,
    pub total_recolored: usize,
    pub max_window: usize,
    pub bound: f64,
    pub bound_check: bool,
}

impl Summary {
    pub const CSV_HEADER: &'static str = "n,k,total_recolored,max_window,bound,bound_check";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.1},{}",
            self.n, self.k, self.total_recolored, self.max_window, self.bound, self.bound_check
        )
    }
}

/// The update at stream position `event` (0-based) failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub event: usize,
    pub error: Error,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "event {}: {}", self.event, self.error)
    }
}

/// Replays `events`, handing each update record to `sink`.
pub fn run_session(
    events: &[Event],
    k: usize,
    mut sink: impl FnMut(&UpdateRecord),
) -> std::result::Result<Summary, Failure> {
    let mut engine = Engine::new(k).map_err(|error| Failure { event: 0, error })?;
    let mut max_window = 0;
    for (i, ev) in events.iter().enumerate() {
        let Event::Insert { x } = ev;
        let rec = engine
            .insert(x.clone())
            .map_err(|error| Failure { event: i, error })?;
        max_window = max_window.max(rec.window);
        sink(&rec);
    }
    let n = engine.len();
    let total = engine.stats().total;
    let bound = recourse_bound(k, n);
    Ok(Summary {
        n,
        k,
        total_recolored: total,
        max_window,
        bound,
        bound_check: total as f64 <= bound,
    })
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Cross-check each update's neighbourhood against the exhaustive oracle.
    pub oracle: bool,
    /// Test hook: after this event, overwrite one color to break properness.
    pub corrupt_after: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub updates: usize,
    pub oracle_checks: usize,
    pub failure: Option<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `events`, checking properness with `<= k` colors after every
/// update. Stops at the first failure.
pub fn verify_session(events: &[Event], k: usize, opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport {
        updates: 0,
        oracle_checks: 0,
        failure: None,
    };
    let mut engine = match Engine::new(k) {
        Ok(e) => e,
        Err(error) => {
            report.failure = Some(Failure { event: 0, error });
            return report;
        }
    };
    for (i, ev) in events.iter().enumerate() {
        let Event::Insert { x } = ev;
        let step = engine.insert(x.clone()).and_then(|rec| {
            if opts.corrupt_after == Some(i) {
                corrupt(&mut engine, rec.j);
            }
            engine
                .verify()
                .map_err(|v| Error::ImproperColoring(v.to_string()))?;
            if opts.oracle {
                report.oracle_checks += oracle_check(&engine, &rec)?;
            }
            Ok(())
        });
        if let Err(error) = step {
            report.failure = Some(Failure { event: i, error });
            return report;
        }
        report.updates += 1;
    }
    report
}

/// Gives interval `j` the color of an intersecting neighbour, or an
/// out-of-range color if it has none.
fn corrupt(engine: &mut Engine, j: i64) {
    let iv = engine.set().get(j).expect("just inserted");
    let clash = engine
        .set()
        .predecessor(&iv)
        .filter(|p| p.end() > iv.x)
        .or_else(|| engine.set().successor(&iv).filter(|s| iv.end() > s.x))
        .and_then(|o| engine.color_of(o.arrival));
    let color = clash.unwrap_or(engine.k() as Color + 1);
    engine.set_color_unchecked(j, color);
}

/// The updated window plus `k` intervals on each side, in `⊏` order.
fn neighbourhood(engine: &Engine, rec: &UpdateRecord) -> Vec<UnitInterval> {
    let set = engine.set();
    let iv = set.get(rec.j).expect("recorded interval present");
    let k = engine.k();
    let (before, after) = match rec.side {
        Side::Right => (k, rec.window - 1 + k),
        Side::Left => (rec.window - 1 + k, k),
    };
    let mut out: Vec<UnitInterval> = set.iter_before(&iv).take(before).cloned().collect();
    out.reverse();
    out.push(iv.clone());
    out.extend(set.iter_after(&iv).take(after).cloned());
    out
}

/// Checks the neighbourhood of one update against the oracle. Returns the
/// number of checks made (0 when the neighbourhood is too large).
///
/// The engine's colors must be proper there, the oracle must agree that the
/// window admits a completion with the outside colors held fixed, and the
/// sweep clique number must equal the least `k'` the oracle can color with.
fn oracle_check(engine: &Engine, rec: &UpdateRecord) -> Result<usize> {
    let hood = neighbourhood(engine, rec);
    if hood.len() > ORACLE_LIMIT {
        return Ok(0);
    }
    let k = engine.k();
    let colors: Vec<Color> = hood
        .iter()
        .map(|iv| engine.color_of(iv.arrival).ok_or(Error::MissingColor(iv.arrival)))
        .collect::<Result<_>>()?;
    check_positional(&hood, &colors, k).map_err(|v| Error::ImproperColoring(v.to_string()))?;

    let pos = hood.iter().position(|iv| iv.arrival == rec.j).unwrap();
    let (lo, hi) = match rec.side {
        Side::Right => (pos, pos + rec.window),
        Side::Left => (pos + 1 - rec.window, pos + 1),
    };
    let fixed: Vec<Option<Color>> = colors
        .iter()
        .enumerate()
        .map(|(i, &c)| (i < lo || i >= hi).then_some(c))
        .collect();
    if complete_with_boundaries(&hood, &fixed, k)?.is_none() {
        return Err(Error::Internal(format!(
            "oracle finds no completion around update {}",
            rec.j
        )));
    }

    let omega = max_clique_sorted(hood.iter().map(|iv| &iv.x));
    let chi = (0..=k)
        .find(|&c| matches!(chromatic_backtracking(&hood, c), Ok(Some(_))))
        .unwrap_or(k + 1);
    if omega != chi {
        return Err(Error::Internal(format!(
            "sweep clique number {omega} but oracle needs {chi} colors"
        )));
    }
    Ok(1)
}
