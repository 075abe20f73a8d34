//! Three demo operations for the static page in `www/`. Each takes plain
//! strings and returns a JSON string, so the page needs no bundler.

use entangle_core::dynamics::{simulate_circuit, synthesize_circuit};
use entangle_core::hypergraph::{self, family};
use entangle_core::measures::{concurrence_matrix, entanglement_ratio, k_uniformity_tol};
use entangle_core::slocc::{slip_roots, SlipMeasure};
use entangle_core::states::{self, excitation_state};
use entangle_core::PureState;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const TOL: f64 = 1e-9;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Uniformity, concurrences and SLIP roots of a named state.
pub fn analyze(spec: &str) -> Result<Value, String> {
    let psi = states::by_name(spec).map_err(text)?;
    let n = psi.n_sites();
    let mut out = json!({
        "spec": spec,
        "sites": n,
        "dims": psi.dims(),
        "support": psi.support_size(),
        "uniformity": k_uniformity_tol(&psi, TOL).map_err(text)?,
    });
    if psi.is_qubits() && n >= 2 {
        out["concurrence"] = json!(concurrence_matrix(&psi).map_err(text)?);
        if n == 4 {
            let rs = slip_roots(&psi, 0, SlipMeasure::Tau3).map_err(text)?;
            out["roots"] = json!(rs.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
        }
    }
    Ok(out)
}

/// Measured pairwise concurrences of an excitation state next to the closed forms.
pub fn graph_concurrence(spec: &str) -> Result<Value, String> {
    let g = family::parse(spec).map_err(text)?;
    let psi = excitation_state(&g).map_err(text)?;
    let n = g.n_vertices();
    let mut pairs = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            let c = entangle_core::measures::two_site_concurrence(&psi, v, w).map_err(text)?;
            let p = hypergraph::predicted_concurrence(&g, v, w).map_err(text)?;
            pairs.push(json!([v + 1, w + 1, c, p]));
        }
    }
    let ratio = entanglement_ratio(&psi, 0).ok();
    Ok(json!({"vertices": n, "edges": g.n_edges(), "pairs": pairs, "ratio_vertex_1": ratio}))
}

/// Synthesizes the preparation circuit of a graph and checks it by simulation.
pub fn circuit(spec: &str) -> Result<Value, String> {
    let g = family::parse(spec).map_err(text)?;
    let gates = synthesize_circuit(&g).map_err(text)?;
    let n = gates.n_qubits;
    let zero = PureState::basis(&vec![2; n], &vec![0; n]).map_err(text)?;
    let out = simulate_circuit(&gates, &zero).map_err(text)?;
    let fid = out.fidelity(&excitation_state(&g).map_err(text)?);
    let list: Vec<Value> = gates
        .gates
        .iter()
        .map(|x| json!({"label": x.label.to_string(), "sites": x.sites.iter().map(|s| s + 1).collect::<Vec<_>>()}))
        .collect();
    Ok(json!({"qubits": n, "gates": list, "fidelity": fid}))
}

fn export(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = analyzeState)]
pub fn analyze_state_js(spec: &str) -> Result<String, JsValue> {
    export(analyze(spec))
}

#[wasm_bindgen(js_name = graphConcurrence)]
pub fn graph_concurrence_js(spec: &str) -> Result<String, JsValue> {
    export(graph_concurrence(spec))
}

#[wasm_bindgen(js_name = synthesizeCircuit)]
pub fn circuit_js(spec: &str) -> Result<String, JsValue> {
    export(circuit(spec))
}
