//! Browser bindings: inspect a group, evaluate the built-in models at a
//! user-supplied `C`, and run an equivariance sweep. Results are returned as
//! JSON strings for the page script to render.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use strucrep::json::to_canonical_string;
use strucrep::model::{default_model, eval_scalar, eval_tensor, model_library};
use strucrep::rep::representation;
use strucrep::tensor::TAU_SYM;
use strucrep::verify::verify_model;
use strucrep::{Formulation, GroupName, Mat3, ModelKind, SweepConfig, SymTensor2};

fn js(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn group(name: &str) -> Result<GroupName, JsError> {
    name.parse().map_err(js)
}

#[derive(Serialize)]
struct GroupInfo {
    name: GroupName,
    order: Option<usize>,
    formulation: Formulation,
    members: Vec<String>,
    actions: Vec<(&'static str, String)>,
    invariants: Vec<String>,
    generators: Vec<String>,
}

#[wasm_bindgen]
pub fn group_names() -> Vec<String> {
    GroupName::ALL.iter().map(|g| g.to_string()).collect()
}

/// Structural set, generator actions and reduced bases of a group.
#[wasm_bindgen]
pub fn group_info(name: &str) -> Result<String, JsError> {
    let g = group(name)?;
    let rep = representation(g);
    let labels = rep.set.labels();
    let info = GroupInfo {
        name: g,
        order: g.order(),
        formulation: rep.basis.formulation,
        members: labels.clone(),
        actions: rep
            .set
            .generator_actions
            .iter()
            .map(|a| (a.generator, a.action.cycles(&labels)))
            .collect(),
        invariants: rep.basis.invariant_labels.clone(),
        generators: rep.basis.generator_labels.clone(),
    };
    to_canonical_string(&info).map_err(js)
}

#[derive(Serialize)]
struct Evaluation {
    invariants: Vec<f64>,
    #[serde(rename = "T")]
    t: SymTensor2,
    psi: f64,
}

/// Invariants of `C` and the built-in tensor and energy models evaluated there.
/// `c_json` is a 3x3 row-major array.
#[wasm_bindgen]
pub fn evaluate(name: &str, c_json: &str) -> Result<String, JsError> {
    let g = group(name)?;
    let m: Mat3 = serde_json::from_str(c_json).map_err(js)?;
    let c = SymTensor2::from_mat_checked(&m, TAU_SYM).map_err(js)?;
    let out = Evaluation {
        invariants: representation(g).invariant_values(&c),
        t: eval_tensor(&default_model(g, ModelKind::Tensor), &c).map_err(js)?,
        psi: eval_scalar(&default_model(g, ModelKind::Scalar), &c).map_err(js)?,
    };
    to_canonical_string(&out).map_err(js)
}

#[derive(Serialize)]
struct SweepLine {
    model: String,
    check: String,
    trials: usize,
    max_violation: f64,
    pass: bool,
}

/// Verification battery over the model library of a group.
#[wasm_bindgen]
pub fn sweep(name: &str, trials: usize, seed: u32) -> Result<String, JsError> {
    let g = group(name)?;
    let cfg = SweepConfig::new(trials.clamp(1, 2000), seed as u64, 1e-9);
    let mut lines = vec![];
    for m in model_library(g) {
        let kind = if m.kind == ModelKind::Tensor {
            "tensor"
        } else {
            "scalar"
        };
        for r in verify_model(&m, &cfg).map_err(js)? {
            lines.push(SweepLine {
                model: format!("{kind}, degree {}", m.degree),
                check: r.check,
                trials: r.trials,
                max_violation: r.max_violation,
                pass: r.pass,
            });
        }
    }
    to_canonical_string(&lines).map_err(js)
}
