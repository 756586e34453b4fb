//! Browser bindings: ℰ-expansions of a vertex, homology of its descending
//! link and the finiteness checklist, each returning JSON text.

use serde_json::json;
use wasm_bindgen::prelude::*;

use thompson_core::complex_topology::{descending_link, Budget};
use thompson_core::expansion_scheme::Scheme;
use thompson_core::finiteness_engine::{f_infinity_checklist, f_n_checklist};
use thompson_core::pseudovertex::Pseudovertex;
use thompson_core::s_structure::SStructure;
use thompson_core::semigroups::{make_action, ActionSpec};

/// Vertex cap for the in-browser link enumeration.
const LINK_BUDGET: usize = 2000;

fn scheme(action: &str) -> Result<Scheme, String> {
    let spec = ActionSpec::parse(action).map_err(|e| e.to_string())?;
    let a = make_action(&spec).map_err(|e| e.to_string())?;
    Ok(Scheme::natural(
        SStructure::natural(a).map_err(|e| e.to_string())?,
    ))
}

/// The ℰ-expansions of `vertex` under the action's natural scheme.
pub fn expansions_json(action: &str, vertex: &str) -> Result<String, String> {
    let s = scheme(action)?;
    let v = Pseudovertex::parse(s.structure(), vertex).map_err(|e| e.to_string())?;
    let mut out: Vec<String> = s
        .e_expansions(&v)
        .filter(|w| *w != v)
        .map(|w| w.to_string())
        .collect();
    out.sort();
    out.dedup();
    Ok(json!({ "vertex": v.to_string(), "expansions": out }).to_string())
}

/// The descending link of `vertex` with its reduced homology up to `max_dim`.
pub fn link_json(action: &str, vertex: &str, max_dim: usize) -> Result<String, String> {
    let s = scheme(action)?;
    let v = Pseudovertex::parse(s.structure(), vertex).map_err(|e| e.to_string())?;
    let budget = Budget {
        max_vertices: LINK_BUDGET,
        ..Budget::default()
    };
    let link = descending_link(&s, &v, &budget).map_err(|e| e.to_string())?;
    let h = link.complex.homology(max_dim).map_err(|e| e.to_string())?;
    let vertices: Vec<String> = link.vertices.iter().map(|w| w.to_string()).collect();
    Ok(json!({
        "vertices": vertices,
        "simplices": link.complex.simplex_count(),
        "components": link.complex.components(),
        "homology": h,
        "summary": h.to_string(),
    })
    .to_string())
}

/// The `F_∞` checklist, or with `level` the stable-connectivity check at that level.
pub fn finiteness_json(action: &str, level: Option<usize>) -> Result<String, String> {
    let s = scheme(action)?;
    let report = match level {
        None => f_infinity_checklist(&s),
        Some(n) => f_n_checklist(&s, n + 1, 10 * (n + 1)),
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn expansions(action: &str, vertex: &str) -> Result<String, JsValue> {
    expansions_json(action, vertex).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn link(action: &str, vertex: &str, max_dim: usize) -> Result<String, JsValue> {
    link_json(action, vertex, max_dim).map_err(|e| JsValue::from_str(&e))
}

/// A negative `level` asks for the `F_∞` checklist.
#[wasm_bindgen]
pub fn finiteness(action: &str, level: i32) -> Result<String, JsValue> {
    finiteness_json(action, usize::try_from(level).ok()).map_err(|e| JsValue::from_str(&e))
}
