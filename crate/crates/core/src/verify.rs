//! Sweeps that check equivariance, invariance, constraint rows, redundancy
//! eliminations and energy-to-stress consistency.
//!
//! Every trial draws from its own counter-derived RNG stream, so reports are
//! identical whether trials run sequentially or in parallel.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{enumerate_group, sample_element, GroupName, PointGroup};
use crate::iso::{iso_generators, iso_invariants, relative_span_residual, TAU_SPAN};
use crate::model::{CoefficientModel, ModelKind};
use crate::rep::{representation, Formulation, Representation};
use crate::rng::{random_spd, random_sym, trial_rng};
use crate::tensor::{Mat3, SymTensor2};

pub const MAX_WITNESSES: usize = 5;
/// Sampled elements per sweep for the continuous groups.
pub const CONTINUOUS_SAMPLES: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    /// Entries uniform in `[-1, 1]`.
    #[default]
    Uniform,
    /// `BᵀB + 0.1 I`.
    PositiveDefinite,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub sampling: Sampling,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            tol: DEFAULT_TOL,
            sampling: Sampling::Uniform,
        }
    }
}

impl SweepConfig {
    pub fn new(trials: usize, seed: u64, tol: f64) -> Self {
        SweepConfig {
            trials,
            seed,
            tol,
            ..Default::default()
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> SymTensor2 {
        match self.sampling {
            Sampling::Uniform => random_sym(rng),
            Sampling::PositiveDefinite => random_spd(rng),
        }
    }
}

/// A failing case: trial number, case index within the trial (element index,
/// constraint row, candidate), and the arguments that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub trial: usize,
    pub case: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Mat3>,
    pub c: SymTensor2,
    pub violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: GroupName,
    pub check: String,
    pub trials: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

struct Case {
    violation: f64,
    q: Option<Mat3>,
    c: SymTensor2,
    note: Option<String>,
}

impl Case {
    fn new(violation: f64, q: Option<Mat3>, c: SymTensor2) -> Self {
        // NaN must fail.
        let violation = if violation.is_nan() {
            f64::INFINITY
        } else {
            violation
        };
        Case {
            violation,
            q,
            c,
            note: None,
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.note = Some(s.into());
        self
    }
}

fn map_trials<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

fn sweep(
    group: GroupName,
    check: &str,
    trials: usize,
    tol: f64,
    per_trial: impl Fn(usize) -> Vec<Case> + Sync + Send,
) -> VerificationReport {
    let outcomes = map_trials(trials, per_trial);
    let mut max_violation = 0.0f64;
    let mut witnesses = vec![];
    for (trial, cases) in outcomes.into_iter().enumerate() {
        for (case, c) in cases.into_iter().enumerate() {
            max_violation = max_violation.max(c.violation);
            if c.violation > tol && witnesses.len() < MAX_WITNESSES {
                witnesses.push(Witness {
                    trial,
                    case,
                    q: c.q,
                    c: c.c,
                    violation: c.violation,
                    note: c.note,
                });
            }
        }
    }
    VerificationReport {
        group,
        check: check.to_string(),
        trials,
        max_violation,
        tolerance: tol,
        pass: max_violation <= tol,
        witnesses,
    }
}

/// Element source for a sweep: the full element list for finite groups, one
/// sampled element per trial otherwise.
struct Elements {
    group: PointGroup,
    list: Vec<Mat3>,
}

impl Elements {
    fn new(name: GroupName) -> Result<Self> {
        let list = if name.is_continuous() {
            vec![]
        } else {
            enumerate_group(name)?
        };
        Ok(Elements {
            group: PointGroup::new(name),
            list,
        })
    }

    fn trials(&self, requested: usize) -> usize {
        if self.group.is_continuous {
            requested.max(CONTINUOUS_SAMPLES)
        } else {
            requested
        }
    }

    fn for_trial(&self, rng: &mut ChaCha8Rng) -> Vec<Mat3> {
        if self.group.is_continuous {
            vec![sample_element(&self.group, rng)]
        } else {
            self.list.clone()
        }
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

fn expect_kind(model: &CoefficientModel, kind: ModelKind) -> Result<()> {
    if model.kind != kind {
        return Err(Error::Model(
            format!("expected a {kind:?} model").to_lowercase(),
        ));
    }
    Ok(())
}

/// `‖⟨Q⟩T(C) − T(⟨Q⟩C)‖_max / (1 + ‖T(C)‖_max)` over random `C` and every
/// element (or sampled elements for continuous groups). The model's
/// symmetrization flag is not enforced, so negative controls can be swept.
pub fn check_equivariance(
    model: &CoefficientModel,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    expect_kind(model, ModelKind::Tensor)?;
    model.rep()?;
    let els = Elements::new(model.group)?;
    let trials = els.trials(cfg.trials);
    Ok(sweep(model.group, "equivariance", trials, cfg.tol, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let c = cfg.draw(&mut rng);
        let t0 = model.eval_tensor_unchecked(&c).expect("validated model");
        els.for_trial(&mut rng)
            .into_iter()
            .map(|q| {
                let t1 = model
                    .eval_tensor_unchecked(&c.conj_unchecked(&q))
                    .expect("validated model");
                Case::new(
                    rel(t0.conj_unchecked(&q).max_abs_diff(&t1), t0.max_abs()),
                    Some(q),
                    c,
                )
            })
            .collect()
    }))
}

/// `|ψ(⟨Q⟩C) − ψ(C)| / (1 + |ψ(C)|)`.
pub fn check_scalar_invariance(
    model: &CoefficientModel,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    expect_kind(model, ModelKind::Scalar)?;
    model.rep()?;
    let els = Elements::new(model.group)?;
    let trials = els.trials(cfg.trials);
    Ok(sweep(
        model.group,
        "scalar-invariance",
        trials,
        cfg.tol,
        |t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let c = cfg.draw(&mut rng);
            let p0 = model.eval_scalar_unchecked(&c).expect("validated model");
            els.for_trial(&mut rng)
                .into_iter()
                .map(|q| {
                    let p1 = model
                        .eval_scalar_unchecked(&c.conj_unchecked(&q))
                        .expect("validated model");
                    Case::new(rel((p1 - p0).abs(), p0.abs()), Some(q), c)
                })
                .collect()
        },
    ))
}

type PermutedBlock<'a> = (Vec<Mat3>, Vec<(usize, usize)>, &'a str);

/// Evaluates both sides of every constraint row, `α̃_l(C, M)` against
/// `α̃_r(C, πM)`; for scalar models, `ψ(C, M)` against `ψ(C, πM)` per block.
pub fn audit_constraints(
    model: &CoefficientModel,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    let rep = model.rep()?;
    if rep.basis.formulation != Formulation::ManGoddard {
        return Err(Error::Invalid(format!(
            "{} carries no coefficient constraints",
            model.group
        )));
    }
    let members = rep.member_matrices().to_vec();
    // Permuted members, internal row pairs and generator label per block.
    let blocks: Vec<PermutedBlock> = rep
        .constraints
        .blocks
        .iter()
        .map(|b| {
            let permuted = b.perm.iter().map(|&m| members[m]).collect();
            let rows = b
                .rows
                .iter()
                .map(|&(l, r)| {
                    (
                        rep.position_of(l).expect("row index"),
                        rep.position_of(r).expect("row index"),
                    )
                })
                .collect();
            (permuted, rows, b.generator)
        })
        .collect();
    Ok(sweep(
        model.group,
        "constraints",
        cfg.trials,
        cfg.tol,
        |t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let c = cfg.draw(&mut rng);
            let cm = c.to_mat();
            let lhs = model.coefficients_with(rep, &cm, &members);
            let mut cases = vec![];
            for (permuted, rows, generator) in &blocks {
                let rhs = model.coefficients_with(rep, &cm, permuted);
                match model.kind {
                    ModelKind::Tensor => {
                        for &(l, r) in rows {
                            let label = format!(
                                "{generator}: {} = {}",
                                l + rep.first_index(),
                                r + rep.first_index()
                            );
                            cases.push(
                                Case::new(rel((lhs[l] - rhs[r]).abs(), lhs[l].abs()), None, c)
                                    .note(label),
                            );
                        }
                    }
                    ModelKind::Scalar => {
                        cases.push(
                            Case::new(rel((lhs[0] - rhs[0]).abs(), lhs[0].abs()), None, c)
                                .note(*generator),
                        );
                    }
                }
            }
            cases
        },
    ))
}

fn probe_points() -> Vec<SymTensor2> {
    (0..3)
        .map(|k| random_sym(&mut trial_rng(0xa0d17, k)))
        .collect()
}

fn matches_any(values: &[Vec<SymTensor2>], cand: usize, reduced: &[Vec<SymTensor2>]) -> bool {
    reduced.iter().any(|r| {
        values
            .iter()
            .zip(r)
            .all(|(v, w)| v[cand].max_abs_diff(w) <= 1e-9 * (1.0 + v[cand].max_abs()))
    })
}

/// Eliminated generators and invariants of `rep`: entries of the isotropic
/// lists over `(C, members)` that do not coincide with a reduced entry,
/// plus `I, C, C², C³` on the generator side.
pub struct RedundancyCandidates {
    pub generators: Vec<(String, usize)>,
    pub invariants: Vec<(String, usize)>,
}

const POWER_LABELS: [&str; 4] = ["I", "C", "C^2", "C^3"];

fn powers(c: &SymTensor2) -> [SymTensor2; 4] {
    let m = c.to_mat();
    let m2 = m * m;
    [
        SymTensor2::IDENTITY,
        *c,
        SymTensor2::from_mat_lossy(&m2),
        SymTensor2::from_mat_lossy(&(m2 * m)),
    ]
}

pub fn redundancy_candidates(rep: &Representation) -> RedundancyCandidates {
    let probes = probe_points();
    let unreduced_g: Vec<Vec<SymTensor2>> = probes
        .iter()
        .map(|c| {
            let mut v = iso_generators(&rep.unreduced_args(c)).values;
            v.extend(powers(c));
            v
        })
        .collect();
    let reduced_g: Vec<Vec<SymTensor2>> = probes.iter().map(|c| rep.generator_values(c)).collect();
    let reduced_g_t: Vec<Vec<SymTensor2>> = (0..rep.n_generators())
        .map(|j| reduced_g.iter().map(|v| v[j]).collect())
        .collect();
    let labels_g = {
        let mut l = iso_generators(&rep.unreduced_args(&probes[0])).labels;
        l.extend(POWER_LABELS.iter().map(|s| s.to_string()));
        l
    };
    let n_iso = labels_g.len() - POWER_LABELS.len();
    let generators = (0..labels_g.len())
        .filter(|&k| k >= n_iso || !matches_any(&unreduced_g, k, &reduced_g_t))
        .map(|k| (labels_g[k].clone(), k))
        .collect();

    let unreduced_i: Vec<Vec<f64>> = probes
        .iter()
        .map(|c| iso_invariants(&rep.unreduced_args(c)).values)
        .collect();
    let reduced_i: Vec<Vec<f64>> = probes.iter().map(|c| rep.invariant_values(c)).collect();
    let labels_i = iso_invariants(&rep.unreduced_args(&probes[0])).labels;
    let invariants = (0..labels_i.len())
        .filter(|&k| {
            !(0..rep.n_invariants()).any(|j| {
                unreduced_i
                    .iter()
                    .zip(&reduced_i)
                    .all(|(u, r)| (u[k] - r[j]).abs() <= 1e-9 * (1.0 + u[k].abs()))
            })
        })
        .map(|k| (labels_i[k].clone(), k))
        .collect();
    RedundancyCandidates {
        generators,
        invariants,
    }
}

/// Checks every eliminated generator (and `I, C, C², C³`) against the
/// pointwise span of the reduced generators, and every eliminated invariant
/// for agreement across orbit pairs `(C, ⟨Q⟩C)` on which the reduced
/// invariants agree, i.e. for elements `Q` that fix every member.
pub fn audit_redundancy(group: GroupName, cfg: &SweepConfig) -> Result<VerificationReport> {
    let rep = representation(group);
    let cand = redundancy_candidates(rep);
    let els = Elements::new(group)?;
    let fixing: Vec<Mat3> = if group.is_continuous() {
        vec![]
    } else {
        let mut v = vec![];
        for q in &els.list {
            let moved = rep
                .member_matrices()
                .iter()
                .zip(&rep.set.members)
                .any(|(m, mem)| mem.tensor.conj(q).to_mat().max_abs_diff(m) > 1e-9);
            if !moved {
                v.push(*q);
            }
        }
        v
    };
    let tol = TAU_SPAN.max(cfg.tol);
    Ok(sweep(group, "redundancy", cfg.trials, tol, |t| {
        let mut rng = trial_rng(cfg.seed, t as u64);
        let c = cfg.draw(&mut rng);
        let mut cases = vec![];
        let basis = rep.generator_values(&c);
        let mut unreduced = iso_generators(&rep.unreduced_args(&c)).values;
        unreduced.extend(powers(&c));
        for (label, k) in &cand.generators {
            let r = relative_span_residual(&basis, &unreduced[*k]);
            cases.push(Case::new(r, None, c).note(format!("generator {label}")));
        }
        if !cand.invariants.is_empty() {
            let qs = if group.is_continuous() {
                vec![sample_element(&els.group, &mut rng)]
            } else {
                fixing.clone()
            };
            let base = iso_invariants(&rep.unreduced_args(&c)).values;
            let red = rep.invariant_values(&c);
            for q in qs {
                let c2 = c.conj_unchecked(&q);
                let red2 = rep.invariant_values(&c2);
                let agree = red
                    .iter()
                    .zip(&red2)
                    .all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + a.abs()));
                if !agree {
                    continue;
                }
                let other = iso_invariants(&rep.unreduced_args(&c2)).values;
                for (label, k) in &cand.invariants {
                    let v = rel((base[*k] - other[*k]).abs(), base[*k].abs());
                    cases.push(Case::new(v, Some(q), c).note(format!("invariant {label}")));
                }
            }
        }
        cases
    }))
}

/// Default central-difference step for `C`.
pub fn default_step(c: &SymTensor2) -> f64 {
    1e-5 * (1.0 + c.max_abs())
}

/// `S = 2 ∂ψ/∂C` by central differences. Off-diagonal entries perturb both
/// `C_ij` and `C_ji`, which doubles the derivative, so the difference is
/// divided by `2h` rather than `h`.
pub fn stress_from_energy(
    model: &CoefficientModel,
    c: &SymTensor2,
    step: Option<f64>,
) -> Result<SymTensor2> {
    expect_kind(model, ModelKind::Scalar)?;
    let h = step.unwrap_or_else(|| default_step(c));
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Invalid(
            "finite-difference step must be positive".into(),
        ));
    }
    let mut s = [0.0; 6];
    for (k, sk) in s.iter_mut().enumerate() {
        let mut e = [0.0; 6];
        e[k] = h;
        let d = SymTensor2::from_components(e);
        let diff =
            model.eval_scalar_unchecked(&(*c + d))? - model.eval_scalar_unchecked(&(*c - d))?;
        *sk = if k < 3 { diff / h } else { diff / (2.0 * h) };
    }
    Ok(SymTensor2::from_components(s))
}

/// `⟨Q⟩S(C) = S(⟨Q⟩C)` for the finite-difference stress, at tolerance
/// `max(tol, 50 h²)` with `h` the largest default step the sampler can produce.
pub fn check_stress_equivariance(
    model: &CoefficientModel,
    cfg: &SweepConfig,
) -> Result<VerificationReport> {
    expect_kind(model, ModelKind::Scalar)?;
    model.rep()?;
    let els = Elements::new(model.group)?;
    let trials = els.trials(cfg.trials);
    let bound = match cfg.sampling {
        Sampling::Uniform => 1.0,
        Sampling::PositiveDefinite => 9.1,
    };
    let h = 1e-5 * (1.0 + bound);
    let tol = cfg.tol.max(50.0 * h * h);
    Ok(sweep(
        model.group,
        "stress-equivariance",
        trials,
        tol,
        |t| {
            let mut rng = trial_rng(cfg.seed, t as u64);
            let c = cfg.draw(&mut rng);
            let s0 = stress_from_energy(model, &c, None).expect("validated model");
            els.for_trial(&mut rng)
                .into_iter()
                .map(|q| {
                    let s1 = stress_from_energy(model, &c.conj_unchecked(&q), None)
                        .expect("validated model");
                    Case::new(
                        rel(s0.conj_unchecked(&q).max_abs_diff(&s1), s0.max_abs()),
                        Some(q),
                        c,
                    )
                })
                .collect()
        },
    ))
}

/// Full battery for one model: equivariance or invariance, plus constraint
/// audits for Man–Goddard groups and stress equivariance for scalar models.
pub fn verify_model(
    model: &CoefficientModel,
    cfg: &SweepConfig,
) -> Result<Vec<VerificationReport>> {
    let mut out = vec![];
    match model.kind {
        ModelKind::Tensor => out.push(check_equivariance(model, cfg)?),
        ModelKind::Scalar => {
            out.push(check_scalar_invariance(model, cfg)?);
            out.push(check_stress_equivariance(
                model,
                &SweepConfig {
                    tol: cfg.tol.max(1e-6),
                    ..*cfg
                },
            )?);
        }
    }
    if Formulation::of(model.group) == Formulation::ManGoddard {
        out.push(audit_constraints(
            model,
            &SweepConfig {
                trials: cfg.trials.min(50),
                ..*cfg
            },
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{negative_control, symmetrize_model, Term};

    fn scalar(group: GroupName, n_inv: usize, terms: &[(usize, u32, f64)]) -> CoefficientModel {
        let terms = terms
            .iter()
            .map(|&(k, p, v)| {
                let mut e = vec![0; n_inv];
                if p > 0 {
                    e[k] = p;
                }
                Term {
                    coef_index: 0,
                    exponents: e,
                    value: v,
                }
            })
            .collect();
        let mut m = CoefficientModel::new(group, ModelKind::Scalar, 3, terms);
        m.symmetrized = true;
        m
    }

    #[test]
    fn kh_checks() {
        let tensor = CoefficientModel::new(
            GroupName::Kh,
            ModelKind::Tensor,
            0,
            (0..3)
                .map(|i| Term {
                    coef_index: i,
                    exponents: vec![0; 3],
                    value: 1.0,
                })
                .collect(),
        );
        let r = check_equivariance(&tensor, &SweepConfig::new(10, 1, 1e-12)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.trials, CONTINUOUS_SAMPLES);
        // ψ = tr C³
        let psi = scalar(GroupName::Kh, 3, &[(2, 1, 1.0)]);
        assert!(
            check_scalar_invariance(&psi, &SweepConfig::new(10, 1, 1e-12))
                .unwrap()
                .pass
        );
        assert!(
            check_stress_equivariance(&psi, &SweepConfig::new(10, 1, 1e-9))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn stress_matches_analytic_gradients() {
        let tr = scalar(GroupName::Kh, 3, &[(0, 1, 1.0)]);
        let c = SymTensor2::diag(1.0, 2.0, 3.0);
        let s = stress_from_energy(&tr, &c, None).unwrap();
        assert!(s.max_abs_diff(&SymTensor2::diag(2.0, 2.0, 2.0)) <= 1e-8);
        let tr2 = scalar(GroupName::Kh, 3, &[(1, 1, 1.0)]);
        let s = stress_from_energy(&tr2, &c, None).unwrap();
        assert!(s.max_abs_diff(&SymTensor2::diag(4.0, 8.0, 12.0)) <= 1e-8);
        let mut rng = trial_rng(5, 0);
        let c = random_sym(&mut rng);
        let s = stress_from_energy(&tr2, &c, None).unwrap();
        assert!(s.max_abs_diff(&c.scale(4.0)) <= 1e-8);
        assert!(stress_from_energy(&tr2, &c, Some(0.0)).is_err());
    }

    #[test]
    fn negative_control_fails_and_reports_witnesses() {
        let raw = negative_control(GroupName::D4h, ModelKind::Tensor).unwrap();
        let r = check_equivariance(&raw, &SweepConfig::new(20, 3, 1e-9)).unwrap();
        assert!(!r.pass);
        assert!(r.max_violation > 1e-3);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        let keys: Vec<(usize, usize)> = r.witnesses.iter().map(|w| (w.trial, w.case)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let sym = symmetrize_model(&raw).unwrap();
        assert!(
            check_equivariance(&sym, &SweepConfig::new(50, 3, 1e-9))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let raw = negative_control(GroupName::Oh, ModelKind::Scalar).unwrap();
        let cfg = SweepConfig::new(30, 11, 1e-9);
        let a = check_scalar_invariance(&raw, &cfg).unwrap();
        let b = check_scalar_invariance(&raw, &cfg).unwrap();
        assert_eq!(a.max_violation.to_bits(), b.max_violation.to_bits());
        assert_eq!(a.witnesses, b.witnesses);
    }

    #[test]
    fn constraint_audit_requires_man_goddard() {
        let m = CoefficientModel::new(GroupName::D2h, ModelKind::Scalar, 1, vec![]);
        assert!(audit_constraints(&m, &SweepConfig::default()).is_err());
        let raw = negative_control(GroupName::Th, ModelKind::Tensor).unwrap();
        assert!(
            !audit_constraints(&raw, &SweepConfig::new(5, 0, 1e-12))
                .unwrap()
                .pass
        );
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let psi = scalar(GroupName::Kh, 3, &[]);
        assert!(check_equivariance(&psi, &SweepConfig::default()).is_err());
    }

    #[test]
    fn redundancy_candidates_include_powers() {
        let rep = representation(GroupName::Kh);
        let cand = redundancy_candidates(rep);
        let labels: Vec<&str> = cand.generators.iter().map(|(l, _)| l.as_str()).collect();
        assert!(labels.contains(&"C^3"));
        assert!(
            audit_redundancy(GroupName::Kh, &SweepConfig::new(100, 0, 1e-8))
                .unwrap()
                .pass
        );
    }
}
