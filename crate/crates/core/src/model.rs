//! Polynomial coefficient models over a group's invariant list, constraint
//! symmetrization by orbit averaging, and evaluation of ψ and T.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::GroupName;
use crate::rep::{representation_in, Form, Formulation, MemberAction, Representation};
use crate::rng::trial_rng;
use crate::tensor::{Mat3, SymTensor2};

/// Degree used when a model file omits `degree`.
pub const DEFAULT_DEGREE: u32 = 3;
/// Hard upper bound on polynomial degree.
pub const MAX_DEGREE: u32 = 8;
/// Tolerance for accepting a model that claims to be symmetrized.
pub const TAU_SYMMETRIZED: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    #[default]
    Tensor,
    Scalar,
}

/// `value · Π x_k^{exponents[k]}` contributing to coefficient `coef_index`
/// (printed numbering; scalar models use index 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef_index: usize,
    #[serde(default)]
    pub exponents: Vec<u32>,
    pub value: f64,
}

fn is_canonical(f: &Form) -> bool {
    *f == Form::Canonical
}

fn default_degree() -> u32 {
    DEFAULT_DEGREE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientModel {
    pub group: GroupName,
    #[serde(default)]
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "is_canonical")]
    pub form: Form,
    #[serde(default = "default_degree")]
    pub degree: u32,
    pub terms: Vec<Term>,
    pub symmetrized: bool,
    /// Written for readability; ignored when reading.
    #[serde(default, skip_deserializing, skip_serializing_if = "Vec::is_empty")]
    pub invariant_labels: Vec<String>,
}

type TermKey = (usize, Vec<u32>);

impl CoefficientModel {
    pub fn new(group: GroupName, kind: ModelKind, degree: u32, terms: Vec<Term>) -> Self {
        CoefficientModel {
            group,
            kind,
            form: Form::Canonical,
            degree,
            terms,
            symmetrized: false,
            invariant_labels: vec![],
        }
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn rep(&self) -> Result<&'static Representation> {
        representation_in(self.group, self.form)
    }

    /// Checks indices, exponent lengths, degree bounds and finiteness, and
    /// expands empty exponent lists to dense zeros.
    pub fn normalize(mut self) -> Result<Self> {
        let rep = self.rep()?;
        if self.degree > MAX_DEGREE {
            return Err(Error::Model(format!(
                "degree {} exceeds the cap {MAX_DEGREE}",
                self.degree
            )));
        }
        let n = rep.n_invariants();
        for t in &mut self.terms {
            if !t.value.is_finite() {
                return Err(Error::NonFinite("model term value".into()));
            }
            match self.kind {
                ModelKind::Tensor if rep.position_of(t.coef_index).is_none() => {
                    return Err(Error::Model(format!(
                        "coef_index {} out of range {}..{} for {}",
                        t.coef_index,
                        rep.first_index(),
                        rep.first_index() + rep.n_generators(),
                        self.group
                    )))
                }
                ModelKind::Scalar if t.coef_index != 0 => {
                    return Err(Error::Model(
                        "scalar model terms must use coef_index 0".into(),
                    ))
                }
                _ => {}
            }
            if t.exponents.is_empty() {
                t.exponents = vec![0; n];
            }
            if t.exponents.len() != n {
                return Err(Error::Model(format!(
                    "term has {} exponents but {} has {n} invariants",
                    t.exponents.len(),
                    self.group
                )));
            }
            let deg: u32 = t.exponents.iter().sum();
            if deg > self.degree {
                return Err(Error::Model(format!(
                    "term of degree {deg} exceeds model degree {}",
                    self.degree
                )));
            }
        }
        Ok(self)
    }

    /// Parses, validates and, if the model claims to be symmetrized, confirms
    /// the claim against its own orbit average.
    pub fn from_json(s: &str) -> Result<Self> {
        let m: CoefficientModel = serde_json::from_str(s).map_err(|e| {
            if e.is_data() {
                Error::Model(e.to_string())
            } else {
                Error::Parse(e.to_string())
            }
        })?;
        let m = m.normalize()?;
        if m.symmetrized && !m.is_fixed_by_symmetrization()? {
            return Err(Error::Model(
                "model is marked symmetrized but violates the constraint table".into(),
            ));
        }
        Ok(m)
    }

    /// Copy with `invariant_labels` filled in, for output.
    pub fn labelled(&self) -> Result<Self> {
        let mut m = self.clone();
        m.invariant_labels = self.rep()?.basis.invariant_labels.clone();
        Ok(m)
    }

    fn term_map(&self) -> BTreeMap<TermKey, f64> {
        let mut map = BTreeMap::new();
        for t in &self.terms {
            *map.entry((t.coef_index, t.exponents.clone()))
                .or_insert(0.0) += t.value;
        }
        map
    }

    fn is_fixed_by_symmetrization(&self) -> Result<bool> {
        let sym = symmetrize_model(self)?;
        let a = self.term_map();
        let b = sym.term_map();
        let scale = a
            .values()
            .chain(b.values())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        let keys: std::collections::BTreeSet<&TermKey> = a.keys().chain(b.keys()).collect();
        let fixed = keys.into_iter().all(|k| {
            let x = a.get(k).copied().unwrap_or(0.0);
            let y = b.get(k).copied().unwrap_or(0.0);
            (x - y).abs() <= TAU_SYMMETRIZED * scale
        });
        Ok(fixed)
    }

    fn require_symmetrized(&self, rep: &Representation) -> Result<()> {
        if rep.basis.formulation == Formulation::ManGoddard && !self.symmetrized {
            return Err(Error::Unsymmetrized {
                group: self.group.as_str(),
            });
        }
        Ok(())
    }

    /// Coefficient values (one per generator; a single value for scalar
    /// models) at the invariant vector `x`.
    pub fn coefficients_at(&self, rep: &Representation, x: &[f64]) -> Vec<f64> {
        let n = match self.kind {
            ModelKind::Tensor => rep.n_generators(),
            ModelKind::Scalar => 1,
        };
        let mut out = vec![0.0; n];
        let first = match self.kind {
            ModelKind::Tensor => rep.first_index(),
            ModelKind::Scalar => 0,
        };
        for t in &self.terms {
            out[t.coef_index - first] += t.value * monomial(x, &t.exponents);
        }
        out
    }

    /// Coefficients with invariants evaluated on an explicit member tuple.
    pub fn coefficients_with(&self, rep: &Representation, c: &Mat3, members: &[Mat3]) -> Vec<f64> {
        self.coefficients_at(rep, &rep.invariant_values_with(c, members))
    }

    /// `T = Σ α_i G_i` without checking the symmetrization flag.
    pub fn eval_tensor_unchecked(&self, c: &SymTensor2) -> Result<SymTensor2> {
        let rep = self.rep()?;
        if self.kind != ModelKind::Tensor {
            return Err(Error::Model("expected a tensor model".into()));
        }
        let alpha = self.coefficients_at(rep, &rep.invariant_values(c));
        let gens = rep.generator_values(c);
        if alpha.len() != gens.len() {
            return Err(Error::Model(
                "coefficient count does not match generator count".into(),
            ));
        }
        Ok(alpha
            .iter()
            .zip(&gens)
            .fold(SymTensor2::ZERO, |acc, (a, g)| acc + *a * *g))
    }

    pub fn eval_scalar_unchecked(&self, c: &SymTensor2) -> Result<f64> {
        let rep = self.rep()?;
        if self.kind != ModelKind::Scalar {
            return Err(Error::Model("expected a scalar model".into()));
        }
        Ok(self.coefficients_at(rep, &rep.invariant_values(c))[0])
    }
}

pub fn monomial(x: &[f64], e: &[u32]) -> f64 {
    x.iter().zip(e).fold(
        1.0,
        |acc, (xi, &p)| if p == 0 { acc } else { acc * xi.powi(p as i32) },
    )
}

/// `(ρ·e)` with `(ρ·e)_{ρ(k)} = e_k`.
pub fn relabel_exponents(e: &[u32], rho: &[usize]) -> Vec<u32> {
    let mut out = vec![0; e.len()];
    for (k, &p) in e.iter().enumerate() {
        out[rho[k]] = p;
    }
    out
}

/// Image of the term key `(j, e)` (internal coefficient index) under one action.
pub fn act_on_key(kind: ModelKind, a: &MemberAction, j: usize, e: &[u32]) -> (usize, Vec<u32>) {
    let j2 = match kind {
        ModelKind::Tensor => a.tau[j],
        ModelKind::Scalar => j,
    };
    (j2, relabel_exponents(e, &a.rho))
}

/// Averages the model over every member permutation the group induces, so
/// that the result satisfies each constraint row identically.
pub fn symmetrize_model(raw: &CoefficientModel) -> Result<CoefficientModel> {
    let raw = raw.clone().normalize()?;
    let rep = raw.rep()?;
    let first = match raw.kind {
        ModelKind::Tensor => rep.first_index(),
        ModelKind::Scalar => 0,
    };
    let weight = 1.0 / rep.actions.len() as f64;
    let mut acc: BTreeMap<TermKey, f64> = BTreeMap::new();
    for t in &raw.terms {
        for a in &rep.actions {
            let (j, e) = act_on_key(raw.kind, a, t.coef_index - first, &t.exponents);
            *acc.entry((j + first, e)).or_insert(0.0) += weight * t.value;
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, v)| *v != 0.0)
        .map(|((coef_index, exponents), value)| Term {
            coef_index,
            exponents,
            value,
        })
        .collect();
    Ok(CoefficientModel {
        terms,
        symmetrized: true,
        invariant_labels: vec![],
        ..raw
    })
}

pub fn eval_tensor(model: &CoefficientModel, c: &SymTensor2) -> Result<SymTensor2> {
    model.require_symmetrized(model.rep()?)?;
    model.eval_tensor_unchecked(c)
}

pub fn eval_scalar(model: &CoefficientModel, c: &SymTensor2) -> Result<f64> {
    model.require_symmetrized(model.rep()?)?;
    model.eval_scalar_unchecked(c)
}

/// Exponent vectors over `n` variables with total degree at most `degree`,
/// ordered by degree and then lexicographically (descending on the first variable).
pub fn monomials(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in (0..=left).rev() {
            prefix.push(p);
            rec(n, left - p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    for d in 0..=degree {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Raw model with every monomial up to `degree` on every coefficient, values
/// uniform in `[-scale, scale]` from a fixed seed.
pub fn random_raw_model(
    group: GroupName,
    kind: ModelKind,
    degree: u32,
    seed: u64,
    scale: f64,
) -> CoefficientModel {
    let rep = crate::rep::representation(group);
    let mut rng = trial_rng(seed, degree as u64);
    let coefs: Vec<usize> = match kind {
        ModelKind::Tensor => (0..rep.n_generators())
            .map(|j| j + rep.first_index())
            .collect(),
        ModelKind::Scalar => vec![0],
    };
    let mut terms = vec![];
    for &coef_index in &coefs {
        for e in monomials(rep.n_invariants(), degree) {
            terms.push(Term {
                coef_index,
                exponents: e,
                value: rng.random_range(-scale..=scale),
            });
        }
    }
    CoefficientModel::new(group, kind, degree, terms)
}

/// Symmetrized tensor and scalar models of degrees 0, 1 and 2 for `group`.
pub fn model_library(group: GroupName) -> Vec<CoefficientModel> {
    let mut out = vec![];
    for kind in [ModelKind::Tensor, ModelKind::Scalar] {
        for degree in 0..=2 {
            let raw = random_raw_model(group, kind, degree, 0x11b + group as u64, 0.5);
            out.push(symmetrize_model(&raw).expect("library models are well formed"));
        }
    }
    out
}

/// A raw model that violates the first nontrivial constraint row of a
/// Man–Goddard group: a single coefficient in a permuted orbit set to the
/// first invariant (tensor), or a single permuted invariant (scalar).
pub fn negative_control(group: GroupName, kind: ModelKind) -> Option<CoefficientModel> {
    let rep = crate::rep::representation(group);
    let block = rep.constraints.blocks.first()?;
    let n = rep.n_invariants();
    let unit = |k: usize| {
        let mut e = vec![0; n];
        e[k] = 1;
        e
    };
    let terms = match kind {
        ModelKind::Tensor => {
            let &(lhs, _) = block.rows.iter().find(|(l, r)| l != r)?;
            vec![Term {
                coef_index: lhs,
                exponents: unit(0),
                value: 1.0,
            }]
        }
        ModelKind::Scalar => {
            let action = rep.member_action(&block.perm).ok()?;
            let k = (0..n).find(|&k| action.rho[k] != k)?;
            vec![Term {
                coef_index: 0,
                exponents: unit(k),
                value: 1.0,
            }]
        }
    };
    Some(CoefficientModel::new(group, kind, 1, terms))
}

/// Built-in model used by synthesis when no model file is given.
pub fn default_model(group: GroupName, kind: ModelKind) -> CoefficientModel {
    symmetrize_model(&random_raw_model(
        group,
        kind,
        1,
        0x5a17 + group as u64,
        1.0,
    ))
    .expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::enumerate_group;
    use crate::rng::random_sym;

    fn unit(n: usize, k: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        e[k] = 1;
        e
    }

    fn d4h_raw() -> CoefficientModel {
        CoefficientModel::new(
            GroupName::D4h,
            ModelKind::Tensor,
            1,
            vec![Term {
                coef_index: 1,
                exponents: unit(7, 0),
                value: 1.0,
            }],
        )
    }

    #[test]
    fn constant_models() {
        let kh = CoefficientModel::new(
            GroupName::Kh,
            ModelKind::Tensor,
            0,
            vec![Term {
                coef_index: 0,
                exponents: vec![],
                value: 1.0,
            }],
        )
        .normalize()
        .unwrap();
        assert_eq!(
            eval_tensor(&kh, &SymTensor2::diag(4.0, 5.0, 6.0)).unwrap(),
            SymTensor2::IDENTITY
        );
        let d2h = CoefficientModel::new(
            GroupName::D2h,
            ModelKind::Tensor,
            0,
            (1..=3)
                .map(|i| Term {
                    coef_index: i,
                    exponents: vec![],
                    value: 1.0,
                })
                .collect(),
        )
        .normalize()
        .unwrap();
        let t = eval_tensor(&d2h, &random_sym(&mut trial_rng(1, 1))).unwrap();
        assert_eq!(t, SymTensor2::IDENTITY);
    }

    #[test]
    fn d4h_symmetrized_example() {
        let sym = symmetrize_model(&d4h_raw()).unwrap();
        assert!(sym.symmetrized);
        let c = SymTensor2::diag(1.0, 2.0, 3.0);
        // (tr(C M1) M1 + tr(C M2) M2) / 2
        let t = eval_tensor(&sym, &c).unwrap();
        assert_eq!(t, SymTensor2::diag(0.5, 1.0, 0.0));
        let rep = sym.rep().unwrap();
        let m = rep.member_matrices();
        let swapped = [m[1], m[0], m[2]];
        let mut rng = trial_rng(2, 0);
        for _ in 0..20 {
            let c = random_sym(&mut rng).to_mat();
            let a = sym.coefficients_with(rep, &c, m);
            let b = sym.coefficients_with(rep, &c, &swapped);
            assert!((a[0] - b[1]).abs() < 1e-12);
        }
        for q in enumerate_group(GroupName::D4h).unwrap() {
            let lhs = eval_tensor(&sym, &SymTensor2::from_mat_lossy(&q.conj(&c.to_mat()))).unwrap();
            assert!(lhs.max_abs_diff(&t.conj_unchecked(&q)) < 1e-12);
        }
    }

    #[test]
    fn unsymmetrized_man_goddard_is_rejected() {
        let raw = d4h_raw();
        assert!(matches!(
            eval_tensor(&raw, &SymTensor2::IDENTITY),
            Err(Error::Unsymmetrized { .. })
        ));
        assert!(raw.eval_tensor_unchecked(&SymTensor2::IDENTITY).is_ok());
        let bl = CoefficientModel::new(GroupName::D2h, ModelKind::Scalar, 1, vec![]);
        assert!(eval_scalar(&bl, &SymTensor2::IDENTITY).is_ok());
    }

    #[test]
    fn oh_scalar_collapses_to_trace() {
        let raw = CoefficientModel::new(
            GroupName::Oh,
            ModelKind::Scalar,
            1,
            vec![Term {
                coef_index: 0,
                exponents: unit(7, 0),
                value: 1.0,
            }],
        );
        let sym = symmetrize_model(&raw).unwrap();
        let mut rng = trial_rng(3, 0);
        for _ in 0..20 {
            let c = random_sym(&mut rng);
            assert!((eval_scalar(&sym, &c).unwrap() - c.trace() / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn symmetrization_is_idempotent() {
        for g in GroupName::ALL {
            for kind in [ModelKind::Tensor, ModelKind::Scalar] {
                let once = symmetrize_model(&random_raw_model(g, kind, 2, 9, 1.0)).unwrap();
                let twice = symmetrize_model(&once).unwrap();
                let mut rng = trial_rng(4, g as u64);
                for _ in 0..10 {
                    let c = random_sym(&mut rng);
                    let (a, b) = match kind {
                        ModelKind::Tensor => {
                            let (x, y) = (
                                eval_tensor(&once, &c).unwrap(),
                                eval_tensor(&twice, &c).unwrap(),
                            );
                            (x.max_abs_diff(&y), x.max_abs())
                        }
                        ModelKind::Scalar => {
                            let (x, y) = (
                                eval_scalar(&once, &c).unwrap(),
                                eval_scalar(&twice, &c).unwrap(),
                            );
                            ((x - y).abs(), x.abs())
                        }
                    };
                    assert!(a <= 1e-12 * (1.0 + b), "{g}");
                }
            }
        }
    }

    #[test]
    fn fixed_models_pass_through() {
        let m = CoefficientModel::new(
            GroupName::D4h,
            ModelKind::Tensor,
            0,
            vec![Term {
                coef_index: 3,
                exponents: vec![],
                value: 2.0,
            }],
        );
        let s = symmetrize_model(&m).unwrap();
        assert_eq!(s.terms, m.normalize().unwrap().terms);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let sym = symmetrize_model(&d4h_raw()).unwrap();
        let text = serde_json::to_string(&sym.labelled().unwrap()).unwrap();
        assert!(text.contains("\"invariant_labels\""));
        assert_eq!(CoefficientModel::from_json(&text).unwrap(), sym);

        let mut fake = d4h_raw();
        fake.symmetrized = true;
        let text = serde_json::to_string(&fake).unwrap();
        assert!(matches!(
            CoefficientModel::from_json(&text),
            Err(Error::Model(_))
        ));

        let bad = r#"{"group":"D_4h","degree":1,"terms":[{"coef_index":9,"exponents":[],"value":1}],"symmetrized":false}"#;
        assert!(CoefficientModel::from_json(bad)
            .unwrap_err()
            .is_validation());
        let short = r#"{"group":"D_4h","degree":1,"terms":[{"coef_index":1,"exponents":[1],"value":1}],"symmetrized":false}"#;
        assert!(CoefficientModel::from_json(short).is_err());
        assert!(matches!(
            CoefficientModel::from_json("{"),
            Err(Error::Parse(_))
        ));
        let minimal = r#"{"group":"K_h","terms":[{"coef_index":1,"value":2}],"symmetrized":true}"#;
        let m = CoefficientModel::from_json(minimal).unwrap();
        assert_eq!(m.degree, DEFAULT_DEGREE);
        assert_eq!(
            eval_tensor(&m, &SymTensor2::diag(1.0, 2.0, 3.0)).unwrap(),
            SymTensor2::diag(2.0, 4.0, 6.0)
        );
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials(2, 2);
        assert_eq!(
            m,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
        assert_eq!(monomials(7, 2).len(), 36);
    }

    #[test]
    fn negative_controls_exist_for_man_goddard_groups() {
        for g in GroupName::ALL {
            let mg = Formulation::of(g) == Formulation::ManGoddard;
            assert_eq!(negative_control(g, ModelKind::Tensor).is_some(), mg, "{g}");
            assert_eq!(negative_control(g, ModelKind::Scalar).is_some(), mg, "{g}");
        }
        let d4h = negative_control(GroupName::D4h, ModelKind::Tensor).unwrap();
        assert_eq!(d4h.terms, d4h_raw().normalize().unwrap().terms);
    }
}
