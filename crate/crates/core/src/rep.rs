//! Reduced invariant and generator bases for each group, the coefficient
//! constraint tables, and the member permutations induced by group elements.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_lincomb, parse_trace, LinComb, TraceExpr};
use crate::groups::{
    action_on_set, structural_set, GroupName, Member, PointGroup, StructTensor,
    StructuralTensorSet, SymOp,
};
use crate::iso::{ArgList, GeneratorList, InvariantVector};
use crate::rng::{random_sym, trial_rng};
use crate::tensor::{outer_sym, Mat3, SymTensor2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formulation {
    #[serde(rename = "Boehler-Liu")]
    BoehlerLiu,
    #[serde(rename = "Man-Goddard")]
    ManGoddard,
}

impl Formulation {
    pub fn of(group: GroupName) -> Self {
        use GroupName::*;
        match group {
            Ci | C2h | D2h | CInfH | DInfH | Kh => Formulation::BoehlerLiu,
            _ => Formulation::ManGoddard,
        }
    }
}

/// Alternative structural sets. Only `D_2h` has a second form, using the
/// single tensor `P2 = i⊗i − j⊗j` instead of `M1, M2, M3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Form {
    #[default]
    #[serde(rename = "canonical")]
    Canonical,
    #[serde(rename = "single-P2")]
    SingleP2,
}

/// One printed constraint block: for generator `generator` inducing the member
/// tuple `perm`, each row `(i, j)` states `α̃_i(C, M) = α̃_j(C, perm·M)`.
/// Indices are in printed numbering (starting at 0 or 1 per group).
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintBlock {
    pub generator: &'static str,
    pub perm: Vec<usize>,
    pub rows: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintTable {
    pub group: GroupName,
    pub blocks: Vec<ConstraintBlock>,
    /// Set for groups whose coefficients are unconstrained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// Member permutation `p` of one group element with the induced index maps:
/// `G_j(C, p·M) = G_{tau[j]}(C, M)` and `inv_k(C, p·M) = inv_{rho[k]}(C, M)`,
/// where `(p·M)_m = M_{p[m]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberAction {
    pub perm: Vec<usize>,
    pub tau: Vec<usize>,
    pub rho: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupBasis {
    pub group: GroupName,
    pub form: Form,
    pub formulation: Formulation,
    pub member_labels: Vec<String>,
    pub invariant_labels: Vec<String>,
    pub generator_labels: Vec<String>,
    /// Printed index of the first generator coefficient (0 or 1).
    pub first_index: usize,
}

#[derive(Debug, Clone)]
pub struct Representation {
    pub basis: GroupBasis,
    pub set: StructuralTensorSet,
    pub constraints: ConstraintTable,
    /// Distinct member permutations induced by the group.
    pub actions: Vec<MemberAction>,
    invariants: Vec<TraceExpr>,
    generators: Vec<LinComb>,
    members: Vec<Mat3>,
}

/// Generator, member permutation and printed rows of one constraint block.
type RawBlock = (SymOp, Vec<usize>, Vec<(usize, usize)>);

struct Table {
    first_index: usize,
    generators: Vec<String>,
    invariants: Vec<String>,
    blocks: Vec<RawBlock>,
}

const M_GENS: [&str; 7] = [
    "M1",
    "M2",
    "M3",
    "M1 C + C M1",
    "M2 C + C M2",
    "M3 C + C M3",
    "C^2",
];
const M_INVS: [&str; 7] = [
    "tr(C M1)",
    "tr(C M2)",
    "tr(C M3)",
    "tr(C^2 M1)",
    "tr(C^2 M2)",
    "tr(C^2 M3)",
    "tr C^3",
];
const P2_GENS: [&str; 8] = [
    "I",
    "C",
    "C^2",
    "P2",
    "P2^2",
    "C P2 + P2 C",
    "C^2 P2 + P2 C^2",
    "C P2^2 + P2^2 C",
];
const P2_INVS: [&str; 7] = [
    "tr C",
    "tr C^2",
    "tr C^3",
    "tr(C P2)",
    "tr(C^2 P2)",
    "tr(C P2^2)",
    "tr(C^2 P2^2)",
];
const K3_GENS: [&str; 4] = [
    "C K3 - K3 C",
    "C^2 K3 - K3 C^2",
    "K3 C K3",
    "K3 C K3^2 - K3^2 C K3",
];
const ISO_INVS: [&str; 3] = ["tr C", "tr C^2", "tr C^3"];

fn cat(parts: &[&[&str]]) -> Vec<String> {
    parts
        .iter()
        .flat_map(|p| p.iter().map(|s| s.to_string()))
        .collect()
}

fn with_fixed(pairs: &[(usize, usize)], fixed: &[usize]) -> Vec<(usize, usize)> {
    pairs
        .iter()
        .copied()
        .chain(fixed.iter().map(|&i| (i, i)))
        .collect()
}

/// Chain `X1, X2, X3` generators shared by the trigonal and hexagonal groups.
fn chain_gens(x: &str) -> Vec<String> {
    vec![
        "I".to_string(),
        format!("{x}1"),
        format!("{x}2"),
        format!("{x}3"),
        "C".to_string(),
        "C^2".to_string(),
        format!("C {x}1 + {x}1 C"),
        format!("C^2 {x}1 + {x}1 C^2"),
        format!("C {x}2 + {x}2 C"),
        format!("C^2 {x}2 + {x}2 C^2"),
        format!("C {x}3 + {x}3 C"),
        format!("C^2 {x}3 + {x}3 C^2"),
    ]
}

fn table(group: GroupName, form: Form) -> Table {
    use GroupName::*;
    let oh_qp = with_fixed(&[(1, 3), (2, 1), (4, 6), (5, 4)], &[7]);
    let trig_c3 = [(1, 3), (2, 1), (6, 10), (7, 11), (8, 6), (9, 7)];
    let hex_c6 = [(1, 3), (2, 1), (6, 10), (8, 6), (7, 11), (9, 7)];
    match (group, form) {
        (D2h, Form::SingleP2) => Table {
            first_index: 0,
            generators: cat(&[&P2_GENS]),
            invariants: cat(&[&P2_INVS]),
            blocks: vec![],
        },
        (Ci, _) => Table {
            first_index: 1,
            generators: cat(&[&[
                "K1^2",
                "K2^2",
                "K3^2",
                "K1 K2 + K2 K1",
                "K1 K3 + K3 K1",
                "K2 K3 + K3 K2",
            ]]),
            invariants: cat(&[&[
                "tr(C K1^2)",
                "tr(C K2^2)",
                "tr(C K3^2)",
                "tr(C K1 K2)",
                "tr(C K1 K3)",
                "tr(C K2 K3)",
            ]]),
            blocks: vec![],
        },
        (C2h, _) => Table {
            first_index: 0,
            generators: cat(&[&P2_GENS, &K3_GENS, &["P2 K3 - K3 P2"]]),
            invariants: cat(&[&P2_INVS, &["tr(C^2 K3^2 C K3)"]]),
            blocks: vec![],
        },
        (D2h, _) => Table {
            first_index: 1,
            generators: cat(&[&M_GENS]),
            invariants: cat(&[&M_INVS]),
            blocks: vec![],
        },
        (D4h, _) => Table {
            first_index: 1,
            generators: cat(&[&M_GENS]),
            invariants: cat(&[&M_INVS]),
            blocks: vec![(
                SymOp::C4,
                vec![1, 0, 2],
                with_fixed(&[(1, 2), (4, 5)], &[3, 6, 7]),
            )],
        },
        (Th, _) => Table {
            first_index: 1,
            generators: cat(&[&M_GENS]),
            invariants: cat(&[&M_INVS]),
            blocks: vec![(SymOp::Qp, vec![1, 2, 0], oh_qp)],
        },
        (Oh, _) => Table {
            first_index: 1,
            generators: cat(&[&M_GENS]),
            invariants: cat(&[&M_INVS]),
            blocks: vec![
                (SymOp::Qp, vec![1, 2, 0], oh_qp),
                (
                    SymOp::C4x,
                    vec![0, 2, 1],
                    with_fixed(&[(3, 2), (6, 5)], &[1, 4, 7]),
                ),
            ],
        },
        (C4h, _) => Table {
            first_index: 1,
            generators: cat(&[&M_GENS, &K3_GENS, &["M1 K3 - K3 M1", "M2 K3 - K3 M2"]]),
            invariants: cat(&[
                &M_INVS,
                &[
                    "tr(C M1 K3)",
                    "tr(C^2 M1 K3)",
                    "tr(C M2 K3)",
                    "tr(C^2 M2 K3)",
                ],
            ]),
            blocks: vec![(
                SymOp::C4,
                vec![1, 0, 2, 3],
                with_fixed(&[(1, 2), (4, 5), (12, 13)], &[3, 6, 7, 8, 9, 10, 11]),
            )],
        },
        (C3i, _) => Table {
            first_index: 0,
            generators: [
                chain_gens("T"),
                cat(&[
                    &["T1 T2 + T2 T1", "T1 T3 + T3 T1", "T2 T3 + T3 T2"],
                    &K3_GENS,
                    &["K3 T1 K3", "K3 T2 K3", "K3 T3 K3"],
                ]),
            ]
            .concat(),
            invariants: cat(&[&[
                "tr(C T1)",
                "tr(C T2)",
                "tr(C T3)",
                "tr(C T1 T2)",
                "tr(C T1 T3)",
                "tr(C T2 T3)",
            ]]),
            blocks: vec![(
                SymOp::C3,
                vec![1, 2, 0, 3],
                with_fixed(
                    &[
                        trig_c3.as_slice(),
                        &[(12, 13), (14, 12), (19, 21), (20, 19)],
                    ]
                    .concat(),
                    &[0, 4, 5, 15, 16, 17, 18],
                ),
            )],
        },
        (D3d, _) => Table {
            first_index: 0,
            generators: [
                chain_gens("D"),
                cat(&[&["D1 D2 + D2 D1", "D1 D3 + D3 D1", "D2 D3 + D3 D2"]]),
            ]
            .concat(),
            invariants: cat(&[&[
                "tr(C D1)",
                "tr(C D2)",
                "tr(C D3)",
                "tr(C D1 D2)",
                "tr(C D1 D3)",
                "tr(C D2 D3)",
            ]]),
            blocks: vec![
                (
                    SymOp::C3,
                    vec![1, 2, 0],
                    with_fixed(
                        &[trig_c3.as_slice(), &[(12, 13), (13, 14)]].concat(),
                        &[0, 4, 5],
                    ),
                ),
                (
                    SymOp::C2x,
                    vec![0, 2, 1],
                    with_fixed(
                        &[(2, 3), (8, 10), (9, 11), (12, 13)],
                        &[0, 1, 4, 5, 6, 7, 14],
                    ),
                ),
            ],
        },
        (D6h, _) | (C6h, _) => {
            let hex_invs = cat(&[
                &ISO_INVS,
                &[
                    "tr(C H1)",
                    "tr(C^2 H1)",
                    "tr(C H2)",
                    "tr(C^2 H2)",
                    "tr(C H3)",
                    "tr(C^2 H3)",
                ],
            ]);
            if group == D6h {
                Table {
                    first_index: 0,
                    generators: chain_gens("H"),
                    invariants: hex_invs,
                    blocks: vec![
                        (SymOp::C6, vec![1, 2, 0], with_fixed(&hex_c6, &[0, 4, 5])),
                        (
                            SymOp::C2x,
                            vec![0, 2, 1],
                            with_fixed(&[(2, 3), (8, 10), (9, 11)], &[0, 1, 4, 5, 6, 7]),
                        ),
                    ],
                }
            } else {
                Table {
                    first_index: 0,
                    generators: [chain_gens("H"), cat(&[&K3_GENS])].concat(),
                    invariants: hex_invs,
                    blocks: vec![(
                        SymOp::C6,
                        vec![1, 2, 0, 3],
                        with_fixed(&hex_c6, &[0, 4, 5, 12, 13, 14, 15]),
                    )],
                }
            }
        }
        (CInfH, _) => Table {
            first_index: 0,
            generators: cat(&[&["I", "C", "C^2", "K3^2"], &K3_GENS]),
            invariants: cat(&[
                &ISO_INVS,
                &["tr(C K3^2)", "tr(C^2 K3^2)", "tr(C^2 K3^2 C K3)"],
            ]),
            blocks: vec![],
        },
        (DInfH, _) => Table {
            first_index: 0,
            generators: cat(&[&["I", "C", "C^2", "M3", "C M3 + M3 C", "C^2 M3 + M3 C^2"]]),
            invariants: cat(&[&ISO_INVS, &["tr(C M3)", "tr(C^2 M3)"]]),
            blocks: vec![],
        },
        (Kh, _) => Table {
            first_index: 0,
            generators: cat(&[&["I", "C", "C^2"]]),
            invariants: cat(&[&ISO_INVS]),
            blocks: vec![],
        },
    }
}

fn single_p2_set() -> Result<StructuralTensorSet> {
    let p2 = outer_sym(&Vec3::I) - outer_sym(&Vec3::J);
    StructuralTensorSet::from_members(
        GroupName::D2h,
        vec![Member {
            label: "P2".into(),
            tensor: StructTensor::Sym(p2),
        }],
    )
}

/// Matches each `probe` column against `reference` columns: both are lists of
/// sampled values, one list per expression.
fn match_values(probe: &[Vec<f64>], reference: &[Vec<f64>], what: &str) -> Result<Vec<usize>> {
    let close = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs())))
    };
    probe
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let hits: Vec<usize> = reference
                .iter()
                .enumerate()
                .filter(|(_, r)| close(p, r))
                .map(|(j, _)| j)
                .collect();
            match hits.as_slice() {
                [j] => Ok(*j),
                [] => Err(Error::Invalid(format!(
                    "{what} {i} is not closed under the member permutation"
                ))),
                _ => Err(Error::AmbiguousMatch {
                    member: format!("{what} {i}"),
                }),
            }
        })
        .collect()
}

impl Representation {
    pub fn build(group: GroupName, form: Form) -> Result<Self> {
        if form == Form::SingleP2 && group != GroupName::D2h {
            return Err(Error::Invalid(format!(
                "form single-P2 is only defined for D_2h, not {group}"
            )));
        }
        let t = table(group, form);
        let set = if form == Form::SingleP2 {
            single_p2_set()?
        } else {
            structural_set(group)
        };
        let labels = set.labels();
        let generators = t
            .generators
            .iter()
            .map(|s| parse_lincomb(s, &labels))
            .collect::<Result<Vec<_>>>()?;
        let invariants = t
            .invariants
            .iter()
            .map(|s| parse_trace(s, &labels))
            .collect::<Result<Vec<_>>>()?;
        let members = set.matrices();
        let formulation = Formulation::of(group);
        let blocks = t
            .blocks
            .into_iter()
            .map(|(op, perm, rows)| ConstraintBlock {
                generator: op.label(),
                perm,
                rows,
            })
            .collect();
        let note = (formulation == Formulation::BoehlerLiu)
            .then_some("Boehler-Liu formulation: structural tensors are individually invariant, no coefficient constraints");
        let mut rep = Representation {
            basis: GroupBasis {
                group,
                form,
                formulation,
                member_labels: labels,
                invariant_labels: t.invariants.clone(),
                generator_labels: t.generators.clone(),
                first_index: t.first_index,
            },
            set,
            constraints: ConstraintTable {
                group,
                blocks,
                note,
            },
            actions: vec![],
            invariants,
            generators,
            members,
        };
        let grp = PointGroup::new(group);
        let mut perms: BTreeSet<Vec<usize>> = BTreeSet::new();
        perms.insert((0..rep.members.len()).collect());
        for q in &grp.elements {
            let a = action_on_set(q, &rep.set)?;
            if !a.all_positive() {
                return Err(Error::Invalid(format!(
                    "{group}: an element flips the sign of a member"
                )));
            }
            perms.insert(a.targets);
        }
        rep.actions = perms
            .into_iter()
            .map(|p| rep.member_action(&p))
            .collect::<Result<Vec<_>>>()?;
        Ok(rep)
    }

    pub fn group(&self) -> GroupName {
        self.basis.group
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn n_invariants(&self) -> usize {
        self.invariants.len()
    }

    pub fn first_index(&self) -> usize {
        self.basis.first_index
    }

    pub fn member_matrices(&self) -> &[Mat3] {
        &self.members
    }

    /// Internal position of a printed coefficient index.
    pub fn position_of(&self, printed: usize) -> Option<usize> {
        printed
            .checked_sub(self.first_index())
            .filter(|&i| i < self.n_generators())
    }

    /// Computes `tau` and `rho` for the member permutation `p` by evaluating
    /// the substituted expressions at sampled arguments.
    pub fn member_action(&self, p: &[usize]) -> Result<MemberAction> {
        if p.len() != self.members.len() {
            return Err(Error::Invalid(
                "permutation length does not match the structural set".into(),
            ));
        }
        let samples: Vec<Mat3> = (0..3)
            .map(|k| random_sym(&mut trial_rng(0x5eed, k)).to_mat())
            .collect();
        let gen_vals = |gens: &[LinComb]| -> Vec<Vec<f64>> {
            gens.iter()
                .map(|g| {
                    samples
                        .iter()
                        .flat_map(|c| g.eval(c, &self.members).0.into_iter().flatten())
                        .collect()
                })
                .collect()
        };
        let inv_vals = |invs: &[TraceExpr]| -> Vec<Vec<f64>> {
            invs.iter()
                .map(|e| samples.iter().map(|c| e.eval(c, &self.members)).collect())
                .collect()
        };
        let sub_gens: Vec<LinComb> = self.generators.iter().map(|g| g.substitute(p)).collect();
        let sub_invs: Vec<TraceExpr> = self.invariants.iter().map(|e| e.substitute(p)).collect();
        let tau = match_values(
            &gen_vals(&sub_gens),
            &gen_vals(&self.generators),
            "generator",
        )?;
        let rho = match_values(
            &inv_vals(&sub_invs),
            &inv_vals(&self.invariants),
            "invariant",
        )?;
        Ok(MemberAction {
            perm: p.to_vec(),
            tau,
            rho,
        })
    }

    pub fn invariant_values_with(&self, c: &Mat3, members: &[Mat3]) -> Vec<f64> {
        self.invariants.iter().map(|e| e.eval(c, members)).collect()
    }

    pub fn invariant_values(&self, c: &SymTensor2) -> Vec<f64> {
        self.invariant_values_with(&c.to_mat(), &self.members)
    }

    pub fn generator_values_with(&self, c: &Mat3, members: &[Mat3]) -> Vec<SymTensor2> {
        self.generators
            .iter()
            .map(|g| SymTensor2::from_mat_lossy(&g.eval(c, members)))
            .collect()
    }

    pub fn generator_values(&self, c: &SymTensor2) -> Vec<SymTensor2> {
        self.generator_values_with(&c.to_mat(), &self.members)
    }

    pub fn invariant_vector(&self, c: &SymTensor2) -> InvariantVector {
        InvariantVector {
            labels: self.basis.invariant_labels.clone(),
            values: self.invariant_values(c),
        }
    }

    pub fn generator_list(&self, c: &SymTensor2) -> GeneratorList {
        GeneratorList {
            labels: self.basis.generator_labels.clone(),
            values: self.generator_values(c),
        }
    }

    /// `C` followed by the structural-set members, for the unreduced isotropic lists.
    pub fn unreduced_args(&self, c: &SymTensor2) -> ArgList {
        let mut args = ArgList::default().sym("C", *c);
        for m in &self.set.members {
            args = match m.tensor {
                StructTensor::Sym(s) => args.sym(m.label.clone(), s),
                StructTensor::Skew(w) => args.skew(m.label.clone(), w),
            };
        }
        args
    }

    /// Coefficient index map `σ = τ⁻¹` (internal indices) for a member permutation.
    pub fn derived_sigma(&self, perm: &[usize]) -> Result<Vec<usize>> {
        let tau = self.member_action(perm)?.tau;
        let mut sigma = vec![0; tau.len()];
        for (j, &t) in tau.iter().enumerate() {
            sigma[t] = j;
        }
        Ok(sigma)
    }
}

/// Completes the partial map given by printed rows into a permutation of
/// `0..n` (internal indices). Each chain `a → b → … → z` missing its closing
/// row is closed by `z → a`; unmentioned indices are fixed.
pub fn complete_rows(rows: &[(usize, usize)], n: usize) -> Result<Vec<usize>> {
    let mut sigma: Vec<Option<usize>> = vec![None; n];
    let mut hit = vec![false; n];
    for &(l, r) in rows {
        if l >= n || r >= n {
            return Err(Error::Invalid(format!(
                "constraint row ({l}, {r}) out of range"
            )));
        }
        if sigma[l].is_some_and(|x| x != r) || (hit[r] && sigma[l] != Some(r)) {
            return Err(Error::Invalid(format!(
                "constraint row ({l}, {r}) conflicts with another row"
            )));
        }
        sigma[l] = Some(r);
        hit[r] = true;
    }
    let starts: Vec<usize> = (0..n).filter(|&i| !hit[i]).collect();
    for start in starts {
        let mut end = start;
        let mut steps = 0;
        while let Some(next) = sigma[end] {
            end = next;
            steps += 1;
            if steps > n {
                return Err(Error::Invalid("constraint rows form an open loop".into()));
            }
        }
        sigma[end] = Some(start);
    }
    sigma
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Invalid("incomplete constraint map".into())))
        .collect()
}

/// Cycle lengths of a permutation.
pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = vec![];
    for s in 0..p.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

pub fn perm_order(p: &[usize]) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    cycle_lengths(p)
        .into_iter()
        .fold(1, |acc, l| acc / gcd(acc, l) * l)
}

/// Number of rows a complete non-redundant table needs for `sigma`: one per
/// fixed index and `L − 1` per cycle of length `L ≥ 2`.
pub fn minimal_row_count(sigma: &[usize]) -> usize {
    cycle_lengths(sigma)
        .into_iter()
        .map(|l| l.saturating_sub(1).max(1))
        .sum()
}

static CACHE: [OnceLock<Representation>; 14] = [const { OnceLock::new() }; 14];
static SINGLE_P2: OnceLock<Representation> = OnceLock::new();

/// Cached representation for `group` in the given form.
pub fn representation_in(group: GroupName, form: Form) -> Result<&'static Representation> {
    if form == Form::SingleP2 {
        if group != GroupName::D2h {
            return Err(Error::Invalid(format!(
                "form single-P2 is only defined for D_2h, not {group}"
            )));
        }
        return Ok(SINGLE_P2.get_or_init(|| {
            Representation::build(group, form).expect("built-in table is consistent")
        }));
    }
    let slot = GroupName::ALL
        .iter()
        .position(|g| *g == group)
        .expect("listed group");
    Ok(CACHE[slot]
        .get_or_init(|| Representation::build(group, form).expect("built-in table is consistent")))
}

/// Cached canonical representation.
pub fn representation(group: GroupName) -> &'static Representation {
    representation_in(group, Form::Canonical).expect("canonical form exists for every group")
}

/// Reduced invariant list of `group` at `c`, in printed order.
pub fn invariant_basis(group: GroupName, c: &SymTensor2) -> InvariantVector {
    representation(group).invariant_vector(c)
}

/// Reduced generator list of `group` at `c`, in printed order.
pub fn generator_basis(group: GroupName, c: &SymTensor2) -> GeneratorList {
    representation(group).generator_list(c)
}

pub fn constraint_table(group: GroupName) -> &'static ConstraintTable {
    &representation(group).constraints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::eps_contract;

    #[test]
    fn basis_counts() {
        let expect = [
            (GroupName::Ci, 6, 6),
            (GroupName::C2h, 13, 8),
            (GroupName::D2h, 7, 7),
            (GroupName::C4h, 13, 11),
            (GroupName::D4h, 7, 7),
            (GroupName::C3i, 22, 6),
            (GroupName::D3d, 15, 6),
            (GroupName::C6h, 16, 9),
            (GroupName::D6h, 12, 9),
            (GroupName::Th, 7, 7),
            (GroupName::Oh, 7, 7),
            (GroupName::CInfH, 8, 6),
            (GroupName::DInfH, 6, 5),
            (GroupName::Kh, 3, 3),
        ];
        for (g, ng, ni) in expect {
            let r = representation(g);
            assert_eq!((r.n_generators(), r.n_invariants()), (ng, ni), "{g}");
        }
        let p2 = representation_in(GroupName::D2h, Form::SingleP2).unwrap();
        assert_eq!((p2.n_generators(), p2.n_invariants()), (8, 7));
        assert!(representation_in(GroupName::D4h, Form::SingleP2).is_err());
    }

    #[test]
    fn formulation_split() {
        for g in GroupName::ALL {
            let bl = matches!(
                g,
                GroupName::Ci
                    | GroupName::C2h
                    | GroupName::D2h
                    | GroupName::CInfH
                    | GroupName::DInfH
                    | GroupName::Kh
            );
            assert_eq!(
                representation(g).basis.formulation == Formulation::BoehlerLiu,
                bl,
                "{g}"
            );
            assert_eq!(constraint_table(g).blocks.is_empty(), bl, "{g}");
            assert_eq!(constraint_table(g).note.is_some(), bl, "{g}");
        }
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(
            invariant_basis(GroupName::Kh, &SymTensor2::IDENTITY).values,
            vec![3.0, 3.0, 3.0]
        );
        let (a, b, c) = (1.5, -2.0, 0.25);
        let v = invariant_basis(GroupName::DInfH, &SymTensor2::diag(a, b, c)).values;
        let oracle = [
            a + b + c,
            a * a + b * b + c * c,
            a * a * a + b * b * b + c * c * c,
            c,
            c * c,
        ];
        for (x, y) in v.iter().zip(oracle) {
            assert!((x - y).abs() < 1e-14);
        }
        assert_eq!(
            invariant_basis(GroupName::Ci, &SymTensor2::IDENTITY).values,
            vec![-2.0, -2.0, -2.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn generator_examples() {
        let c = SymTensor2::diag(1.0, 2.0, 3.0);
        assert_eq!(
            generator_basis(GroupName::Kh, &c).values,
            vec![SymTensor2::IDENTITY, c, SymTensor2::diag(1.0, 4.0, 9.0)]
        );
        let g = generator_basis(GroupName::Ci, &c);
        assert_eq!(g.values[0], SymTensor2::diag(0.0, -1.0, -1.0));
        let k = [Vec3::I, Vec3::J, Vec3::K].map(|v| eps_contract(&v).to_mat());
        assert_eq!(g.values[3].to_mat(), k[0] * k[1] + k[1] * k[0]);
        let d2h = generator_basis(GroupName::D2h, &c);
        assert_eq!(d2h.labels, M_GENS);
        let sum = d2h.values[0] + d2h.values[1] + d2h.values[2];
        assert_eq!(sum, SymTensor2::IDENTITY);
    }

    #[test]
    fn printed_rows_match_derived_maps() {
        for g in GroupName::ALL {
            let r = representation(g);
            let n = r.n_generators();
            for block in &r.constraints.blocks {
                let sigma = r.derived_sigma(&block.perm).unwrap();
                for &(l, rr) in &block.rows {
                    let (li, ri) = (r.position_of(l).unwrap(), r.position_of(rr).unwrap());
                    assert_eq!(sigma[li], ri, "{g} {} row ({l}, {rr})", block.generator);
                }
                let internal: Vec<_> = block
                    .rows
                    .iter()
                    .map(|&(l, rr)| (r.position_of(l).unwrap(), r.position_of(rr).unwrap()))
                    .collect();
                let completed = complete_rows(&internal, n).unwrap();
                assert_eq!(completed, sigma, "{g} {}", block.generator);
                assert_eq!(
                    block.rows.len(),
                    minimal_row_count(&sigma),
                    "{g} {}",
                    block.generator
                );
                assert_eq!(perm_order(&block.perm) % perm_order(&completed), 0);
            }
        }
    }

    #[test]
    fn block_perms_are_generator_actions() {
        for g in GroupName::LAUE {
            let r = representation(g);
            for block in &r.constraints.blocks {
                let op = SymOp::ALL
                    .iter()
                    .find(|o| o.label() == block.generator)
                    .unwrap();
                assert_eq!(
                    action_on_set(&op.matrix(), &r.set).unwrap().targets,
                    block.perm,
                    "{g}"
                );
            }
            // generators not listed in a block act trivially
            for ga in &r.set.generator_actions {
                if !r
                    .constraints
                    .blocks
                    .iter()
                    .any(|b| b.generator == ga.generator)
                {
                    assert!(ga.action.is_identity(), "{g} {}", ga.generator);
                }
            }
        }
    }

    #[test]
    fn action_counts() {
        let counts = [
            (GroupName::D4h, 2),
            (GroupName::Th, 3),
            (GroupName::Oh, 6),
            (GroupName::C3i, 3),
            (GroupName::D3d, 6),
            (GroupName::D6h, 6),
            (GroupName::C6h, 3),
            (GroupName::C4h, 2),
            (GroupName::Ci, 1),
            (GroupName::Kh, 1),
        ];
        for (g, n) in counts {
            assert_eq!(representation(g).actions.len(), n, "{g}");
        }
    }

    #[test]
    fn complete_rows_closes_cycles() {
        assert_eq!(
            complete_rows(&[(1, 3), (2, 1)], 4).unwrap(),
            vec![0, 3, 1, 2]
        );
        assert_eq!(complete_rows(&[(0, 1)], 2).unwrap(), vec![1, 0]);
        assert!(complete_rows(&[(0, 1), (0, 2)], 3).is_err());
        assert_eq!(minimal_row_count(&[0, 3, 1, 2]), 3);
        assert_eq!(perm_order(&[1, 2, 0, 4, 3]), 6);
    }
}
