//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Everything crosses the boundary as JSON strings. The plain functions carry
//! the logic; the `wasm_bindgen` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use unit_recolor::circular::{color_arcs, max_load, ArcInstance};
use unit_recolor::frogs::{play, Strategy};
use unit_recolor::incremental::{Engine, UpdateRecord};
use unit_recolor::{Color, Coord, Error};

#[derive(Serialize)]
struct Placed {
    x: Coord,
    arrival: i64,
    color: Color,
}

#[derive(Serialize)]
struct Snapshot<'a> {
    k: usize,
    total_recolored: usize,
    last: Option<&'a UpdateRecord>,
    intervals: Vec<Placed>,
}

/// An incremental coloring session.
#[wasm_bindgen]
pub struct Session {
    engine: Engine,
    last: Option<UpdateRecord>,
}

impl Session {
    pub fn create(k: usize) -> Result<Session, Error> {
        Ok(Session {
            engine: Engine::new(k)?,
            last: None,
        })
    }

    /// Inserts `[x, x + 1)`; `x` is a decimal or fraction literal.
    pub fn add(&mut self, x: &str) -> Result<String, Error> {
        let rec = self.engine.insert(x.trim().parse()?)?;
        let out = serde_json::to_string(&rec).expect("record serializes");
        self.last = Some(rec);
        Ok(out)
    }

    pub fn snapshot(&self) -> String {
        let intervals = self
            .engine
            .set()
            .iter()
            .map(|iv| Placed {
                x: iv.x.clone(),
                arrival: iv.arrival,
                color: self.engine.color_of(iv.arrival).unwrap_or(0),
            })
            .collect();
        serde_json::to_string(&Snapshot {
            k: self.engine.k(),
            total_recolored: self.engine.stats().total,
            last: self.last.as_ref(),
            intervals,
        })
        .expect("snapshot serializes")
    }
}

#[wasm_bindgen]
impl Session {
    #[wasm_bindgen(constructor)]
    pub fn new(k: usize) -> Result<Session, JsError> {
        Session::create(k).map_err(js)
    }

    /// JSON update record, or an error naming the clique that blocks `x`.
    pub fn insert(&mut self, x: &str) -> Result<String, JsError> {
        self.add(x).map_err(js)
    }

    /// JSON `{k, total_recolored, last, intervals: [{x, arrival, color}]}`.
    pub fn state(&self) -> String {
        self.snapshot()
    }
}

/// `{"lambda": .., "arcs": [..]}` in, `{"max_load", "colors"}` out.
pub fn arcs_to_json(input: &str) -> Result<String, String> {
    let raw: ArcInstance = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let inst = ArcInstance::new(raw.lambda, raw.arcs).map_err(|e| e.to_string())?;
    let colors = color_arcs(&inst).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "max_load": max_load(&inst).max_load,
        "colors": colors,
    })
    .to_string())
}

/// One Frogs game: total cost, bound and the per-jump trace.
pub fn frogs_to_json(n: usize, kappa: usize, delta: u64, strategy: &str, seed: u64) -> Result<String, String> {
    let strategy: Strategy = strategy.parse().map_err(|e: Error| e.to_string())?;
    let report = play(n, kappa, delta, strategy, seed).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "total_cost": report.total_cost,
        "bound": report.bound,
        "within_bound": report.within_bound(),
        "steps": report.steps,
    })
    .to_string())
}

#[wasm_bindgen(js_name = colorArcs)]
pub fn color_arcs_js(input: &str) -> Result<String, JsError> {
    arcs_to_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = playFrogs)]
pub fn play_frogs_js(n: usize, kappa: usize, delta: u32, strategy: &str, seed: u32) -> Result<String, JsError> {
    frogs_to_json(n, kappa, delta as u64, strategy, seed as u64).map_err(|e| JsError::new(&e))
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}
