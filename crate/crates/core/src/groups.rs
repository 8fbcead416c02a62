//! The fourteen centrosymmetric point groups in 3D: generator tables, element
//! enumeration by closure, samplers for the continuous groups, structural
//! tensor sets and the signed permutations that group elements induce on them.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{eps_contract, outer_sym, Mat3, SkewTensor2, SymTensor2, Vec3};

/// Max-entry tolerance for matching group elements and structural tensors.
pub const TAU_MATCH: f64 = 1e-9;
/// Closure cap for group enumeration.
pub const MAX_GROUP_ORDER: usize = 10_000;
/// Default member cap for [`build_set_from_seed`].
pub const DEFAULT_MEMBER_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Ci,
    C2h,
    D2h,
    C4h,
    D4h,
    C3i,
    D3d,
    C6h,
    D6h,
    Th,
    Oh,
    CInfH,
    DInfH,
    Kh,
}

impl GroupName {
    pub const ALL: [GroupName; 14] = [
        GroupName::Ci,
        GroupName::C2h,
        GroupName::D2h,
        GroupName::C4h,
        GroupName::D4h,
        GroupName::C3i,
        GroupName::D3d,
        GroupName::C6h,
        GroupName::D6h,
        GroupName::Th,
        GroupName::Oh,
        GroupName::CInfH,
        GroupName::DInfH,
        GroupName::Kh,
    ];

    /// The eleven Laue groups.
    pub const LAUE: [GroupName; 11] = [
        GroupName::Ci,
        GroupName::C2h,
        GroupName::D2h,
        GroupName::C4h,
        GroupName::D4h,
        GroupName::C3i,
        GroupName::D3d,
        GroupName::C6h,
        GroupName::D6h,
        GroupName::Th,
        GroupName::Oh,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            GroupName::Ci => "C_i",
            GroupName::C2h => "C_2h",
            GroupName::D2h => "D_2h",
            GroupName::C4h => "C_4h",
            GroupName::D4h => "D_4h",
            GroupName::C3i => "C_3i",
            GroupName::D3d => "D_3d",
            GroupName::C6h => "C_6h",
            GroupName::D6h => "D_6h",
            GroupName::Th => "T_h",
            GroupName::Oh => "O_h",
            GroupName::CInfH => "C_inf_h",
            GroupName::DInfH => "D_inf_h",
            GroupName::Kh => "K_h",
        }
    }

    pub const fn is_continuous(self) -> bool {
        matches!(self, GroupName::CInfH | GroupName::DInfH | GroupName::Kh)
    }

    /// Order of the finite group, `None` for the continuous ones.
    pub const fn order(self) -> Option<usize> {
        match self {
            GroupName::Ci => Some(2),
            GroupName::C2h => Some(4),
            GroupName::D2h | GroupName::C4h => Some(8),
            GroupName::D4h => Some(16),
            GroupName::C3i => Some(6),
            GroupName::D3d | GroupName::C6h => Some(12),
            GroupName::D6h | GroupName::Th => Some(24),
            GroupName::Oh => Some(48),
            _ => None,
        }
    }

    /// Generators in table order.
    pub fn generator_ops(self) -> &'static [SymOp] {
        use SymOp::*;
        match self {
            GroupName::Ci => &[Inversion],
            GroupName::C2h => &[C2, Inversion],
            GroupName::D2h => &[C2, C2x, Inversion],
            GroupName::C4h => &[C4, Inversion],
            GroupName::D4h => &[C4, C2x, Inversion],
            GroupName::C3i => &[C3, Inversion],
            GroupName::D3d => &[C3, C2x, Inversion],
            GroupName::C6h => &[C6, Inversion],
            GroupName::D6h => &[C6, C2x, Inversion],
            GroupName::Th => &[C2x, C2y, Qp, Inversion],
            GroupName::Oh => &[C4x, C2y, Qp, Inversion],
            GroupName::CInfH | GroupName::DInfH | GroupName::Kh => &[],
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

impl Serialize for GroupName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for GroupName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Named orthogonal operations used by the generator tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymOp {
    Identity,
    Inversion,
    C2,
    C2x,
    C2y,
    C4,
    C4x,
    C3,
    C6,
    Qp,
}

impl SymOp {
    pub const ALL: [SymOp; 10] = [
        SymOp::Identity,
        SymOp::Inversion,
        SymOp::C2,
        SymOp::C2x,
        SymOp::C4,
        SymOp::C3,
        SymOp::C6,
        SymOp::C2y,
        SymOp::Qp,
        SymOp::C4x,
    ];

    pub const fn label(self) -> &'static str {
        match self {
            SymOp::Identity => "I",
            SymOp::Inversion => "-I",
            SymOp::C2 => "C_2",
            SymOp::C2x => "C_2x",
            SymOp::C2y => "C_2y",
            SymOp::C4 => "C_4",
            SymOp::C4x => "C_4x",
            SymOp::C3 => "C_3",
            SymOp::C6 => "C_6",
            SymOp::Qp => "Q_p",
        }
    }

    pub fn matrix(self) -> Mat3 {
        let h = 3f64.sqrt() / 2.0;
        match self {
            SymOp::Identity => Mat3::IDENTITY,
            SymOp::Inversion => Mat3::diag(-1.0, -1.0, -1.0),
            SymOp::C2 => Mat3::diag(-1.0, -1.0, 1.0),
            SymOp::C2x => Mat3::diag(1.0, -1.0, -1.0),
            SymOp::C2y => Mat3::diag(-1.0, 1.0, -1.0),
            SymOp::C4 => Mat3::new([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            SymOp::C4x => Mat3::new([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]),
            SymOp::C3 => Mat3::new([[-0.5, h, 0.0], [-h, -0.5, 0.0], [0.0, 0.0, 1.0]]),
            SymOp::C6 => Mat3::new([[0.5, h, 0.0], [-h, 0.5, 0.0], [0.0, 0.0, 1.0]]),
            SymOp::Qp => Mat3::new([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        }
    }
}

/// Generator matrices of a group, in table order. Empty for continuous groups.
pub fn generators_of(name: GroupName) -> Vec<Mat3> {
    name.generator_ops().iter().map(|op| op.matrix()).collect()
}

fn find_match(pool: &[Mat3], x: &Mat3, tol: f64) -> Option<usize> {
    pool.iter().position(|m| m.max_abs_diff(x) <= tol)
}

/// Breadth-first closure of `generators` starting from the identity. Each
/// element is returned with the generator word that produced it
/// (`element = g[w0] · g[w1] · …`).
pub fn close_under(generators: &[Mat3], cap: usize) -> Result<(Vec<Mat3>, Vec<Vec<usize>>)> {
    let mut elements = vec![Mat3::IDENTITY];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head];
        for (gi, g) in generators.iter().enumerate() {
            let y = *g * x;
            if find_match(&elements, &y, TAU_MATCH).is_none() {
                if elements.len() >= cap {
                    return Err(Error::ClosureOverflow { cap });
                }
                let mut w = Vec::with_capacity(words[head].len() + 1);
                w.push(gi);
                w.extend_from_slice(&words[head]);
                elements.push(y);
                words.push(w);
            }
        }
        head += 1;
    }
    Ok((elements, words))
}

/// Every element of a discrete group, breadth-first from the identity.
pub fn enumerate_group(name: GroupName) -> Result<Vec<Mat3>> {
    if name.is_continuous() {
        return Err(Error::ContinuousGroup(name.as_str()));
    }
    close_under(&generators_of(name), MAX_GROUP_ORDER).map(|(e, _)| e)
}

/// Rotation by `theta` about the unit axis `axis` (Rodrigues).
pub fn rotation(axis: &Vec3, theta: f64) -> Mat3 {
    let n = axis.norm();
    let [x, y, z] = axis.0.map(|c| c / n);
    let (s, c) = theta.sin_cos();
    let t = 1.0 - c;
    Mat3::new([
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ])
}

/// Haar-distributed element of O(3): Gram–Schmidt QR of a Gaussian matrix
/// (positive `R` diagonal), so no further sign correction is needed.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    loop {
        let cols: [Vec3; 3] = std::array::from_fn(|_| {
            Vec3(std::array::from_fn(|_| StandardNormal.sample(&mut *rng)))
        });
        let mut q: Vec<Vec3> = Vec::with_capacity(3);
        let mut degenerate = false;
        for c in cols {
            let mut v = c;
            // Two passes keep the result orthogonal to rounding even when
            // the columns are nearly dependent.
            for _ in 0..2 {
                for u in &q {
                    let d = v.dot(u);
                    v = v + (-d) * *u;
                }
            }
            let n = v.norm();
            if n < 1e-6 * c.norm() || n == 0.0 {
                degenerate = true;
                break;
            }
            q.push((1.0 / n) * v);
        }
        if !degenerate {
            return Mat3::from_fn(|i, j| q[j].0[i]);
        }
    }
}

/// Draws an element of the group: uniform over the element list for discrete
/// groups, and from the samplers below for the continuous ones.
///
/// * `C_inf_h`: rotation about `k` by a uniform angle, times `−I` with probability ½.
/// * `D_inf_h`: as `C_inf_h`, additionally composed with a half-turn about `i`
///   with probability ½ (the in-plane two-fold axes of the group).
/// * `K_h`: Haar-random orthogonal matrix.
pub fn sample_element<R: Rng + ?Sized>(group: &PointGroup, rng: &mut R) -> Mat3 {
    let tau = std::f64::consts::TAU;
    match group.name {
        GroupName::CInfH | GroupName::DInfH => {
            let mut q = rotation(&Vec3::K, rng.random::<f64>() * tau);
            if group.name == GroupName::DInfH && rng.random_bool(0.5) {
                q = q * SymOp::C2x.matrix();
            }
            if rng.random_bool(0.5) {
                q = -q;
            }
            q
        }
        GroupName::Kh => random_orthogonal(rng),
        _ => group.elements[rng.random_range(0..group.elements.len())],
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    pub label: &'static str,
    pub matrix: Mat3,
}

#[derive(Debug, Clone)]
pub struct PointGroup {
    pub name: GroupName,
    pub generators: Vec<Generator>,
    /// Empty for continuous groups.
    pub elements: Vec<Mat3>,
    /// Generator word for each element (indices into `generators`).
    pub words: Vec<Vec<usize>>,
    pub is_continuous: bool,
}

impl PointGroup {
    pub fn new(name: GroupName) -> Self {
        let generators: Vec<Generator> = name
            .generator_ops()
            .iter()
            .map(|op| Generator {
                label: op.label(),
                matrix: op.matrix(),
            })
            .collect();
        let (elements, words) = if name.is_continuous() {
            (vec![], vec![])
        } else {
            let mats: Vec<Mat3> = generators.iter().map(|g| g.matrix).collect();
            close_under(&mats, MAX_GROUP_ORDER).expect("built-in generator tables close")
        };
        PointGroup {
            name,
            generators,
            elements,
            words,
            is_continuous: name.is_continuous(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        (!self.is_continuous).then_some(self.elements.len())
    }

    pub fn contains(&self, q: &Mat3) -> bool {
        find_match(&self.elements, q, TAU_MATCH).is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StructTensor {
    Sym(SymTensor2),
    Skew(SkewTensor2),
}

impl StructTensor {
    pub fn to_mat(&self) -> Mat3 {
        match self {
            StructTensor::Sym(s) => s.to_mat(),
            StructTensor::Skew(w) => w.to_mat(),
        }
    }

    pub fn conj(&self, q: &Mat3) -> StructTensor {
        match self {
            StructTensor::Sym(s) => StructTensor::Sym(s.conj_unchecked(q)),
            StructTensor::Skew(w) => StructTensor::Skew(w.conj_unchecked(q)),
        }
    }

    pub fn is_skew(&self) -> bool {
        matches!(self, StructTensor::Skew(_))
    }
}

#[derive(Debug, Clone)]
pub struct Member {
    pub label: String,
    pub tensor: StructTensor,
}

/// A permutation of structural-set members with signs:
/// `⟨Q⟩ member_i = signs[i] · member_{targets[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedPerm {
    pub targets: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            targets: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// `self ∘ other`: apply `other` first. Matches `action(Q1·Q2) = action(Q1) ∘ action(Q2)`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let targets = other.targets.iter().map(|&t| self.targets[t]).collect();
        let signs = other
            .targets
            .iter()
            .zip(other.signs.iter())
            .map(|(&t, &s)| s * self.signs[t])
            .collect();
        SignedPerm { targets, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.len();
        let mut targets = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            targets[self.targets[i]] = i;
            signs[self.targets[i]] = self.signs[i];
        }
        SignedPerm { targets, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| i == t) && self.all_positive()
    }

    pub fn all_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// Smallest `k ≥ 1` with `self^k = id`.
    pub fn order(&self) -> usize {
        let id = SignedPerm::identity(self.len());
        let mut p = self.clone();
        let mut k = 1;
        while p != id {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Cycle notation using member labels, e.g. `(M1 M2)`; `id` for the identity.
    pub fn cycles(&self, labels: &[String]) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.targets[i];
            }
            let flipped = cyc.iter().any(|&i| self.signs[i] < 0);
            if cyc.len() > 1 || flipped {
                out.push('(');
                let parts: Vec<String> = cyc
                    .iter()
                    .map(|&i| {
                        if self.signs[i] < 0 {
                            format!("{}→-", labels[i])
                        } else {
                            labels[i].clone()
                        }
                    })
                    .collect();
                out.push_str(&parts.join(" "));
                out.push(')');
            }
        }
        if out.is_empty() {
            "id".to_string()
        } else {
            out
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorAction {
    pub generator: &'static str,
    pub action: SignedPerm,
}

#[derive(Debug, Clone)]
pub struct StructuralTensorSet {
    pub group: GroupName,
    pub members: Vec<Member>,
    pub generator_actions: Vec<GeneratorAction>,
}

impl StructuralTensorSet {
    /// Builds a set from explicit members and records the generator actions.
    pub fn from_members(group: GroupName, members: Vec<Member>) -> Result<Self> {
        let mut set = StructuralTensorSet {
            group,
            members,
            generator_actions: vec![],
        };
        let actions = group
            .generator_ops()
            .iter()
            .map(|op| {
                action_on_set(&op.matrix(), &set).map(|action| GeneratorAction {
                    generator: op.label(),
                    action,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        set.generator_actions = actions;
        Ok(set)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label.clone()).collect()
    }

    pub fn matrices(&self) -> Vec<Mat3> {
        self.members.iter().map(|m| m.tensor.to_mat()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `⟨Q⟩` maps the member multiset onto itself (all signs positive).
    pub fn is_stabilized_by(&self, q: &Mat3) -> bool {
        action_on_set(q, self)
            .map(|a| a.all_positive())
            .unwrap_or(false)
    }
}

/// Signed permutation induced by `⟨Q⟩` on the members of `set`.
pub fn action_on_set(q: &Mat3, set: &StructuralTensorSet) -> Result<SignedPerm> {
    let mats = set.matrices();
    let n = mats.len();
    let mut targets = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for (i, m) in mats.iter().enumerate() {
        let x = q.conj(m);
        let mut hit: Option<(usize, i8)> = None;
        let mut nearest = f64::INFINITY;
        for (j, y) in mats.iter().enumerate() {
            for sign in [1i8, -1] {
                let d = x.max_abs_diff(&y.scale(sign as f64));
                nearest = nearest.min(d);
                if d <= TAU_MATCH {
                    if hit.is_some_and(|(hj, _)| hj != j) {
                        return Err(Error::AmbiguousMatch {
                            member: set.members[i].label.clone(),
                        });
                    }
                    // a zero member matches with either sign; keep the positive one
                    hit.get_or_insert((j, sign));
                }
            }
        }
        let (j, s) = hit.ok_or_else(|| Error::NotStabilized {
            member: set.members[i].label.clone(),
            distance: nearest,
        })?;
        targets.push(j);
        signs.push(s);
    }
    let mut seen = vec![false; n];
    for (i, &t) in targets.iter().enumerate() {
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::AmbiguousMatch {
                member: set.members[i].label.clone(),
            });
        }
    }
    Ok(SignedPerm { targets, signs })
}

/// Candidates that map the member multiset onto itself.
pub fn stabilizer_within(set: &StructuralTensorSet, candidates: &[Mat3]) -> Vec<Mat3> {
    candidates
        .iter()
        .copied()
        .filter(|q| set.is_stabilized_by(q))
        .collect()
}

fn sym_member(label: impl Into<String>, t: SymTensor2) -> Member {
    Member {
        label: label.into(),
        tensor: StructTensor::Sym(t),
    }
}

fn skew_member(label: impl Into<String>, t: SkewTensor2) -> Member {
    Member {
        label: label.into(),
        tensor: StructTensor::Skew(t),
    }
}

/// `seed, ⟨Q⟩seed, ⟨Q⟩²seed, …` until the orbit closes.
fn orbit_chain(seed: SymTensor2, q: &Mat3, prefix: &str) -> Result<Vec<Member>> {
    let mut out = vec![seed];
    loop {
        let next = out.last().expect("non-empty").conj_unchecked(q);
        if next.max_abs_diff(&out[0]) <= TAU_MATCH {
            break;
        }
        if out.len() >= DEFAULT_MEMBER_CAP {
            return Err(Error::SetOverflow {
                cap: DEFAULT_MEMBER_CAP,
            });
        }
        out.push(next);
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, t)| sym_member(format!("{prefix}{}", i + 1), t))
        .collect())
}

/// Closes `{v ⊗ v : v ∈ seeds}` (and optionally `ε k`) under conjugation by
/// every element of a discrete group. Symmetric members are labelled
/// `M1, M2, …` in discovery order; `ε k` is labelled `K3`.
pub fn build_set_from_seed(
    name: GroupName,
    seeds: &[Vec3],
    include_eps_k: bool,
    cap: usize,
) -> Result<StructuralTensorSet> {
    let group = PointGroup::new(name);
    if group.is_continuous {
        return Err(Error::ContinuousGroup(name.as_str()));
    }
    let mut found: Vec<SymTensor2> = vec![];
    for v in seeds {
        if !v.is_finite() {
            return Err(Error::NonFinite("seed vector".into()));
        }
        let t = outer_sym(v);
        for q in &group.elements {
            let x = t.conj_unchecked(q);
            if !found.iter().any(|y| y.max_abs_diff(&x) <= TAU_MATCH) {
                if found.len() >= cap {
                    return Err(Error::SetOverflow { cap });
                }
                found.push(x);
            }
        }
    }
    let mut members: Vec<Member> = found
        .into_iter()
        .enumerate()
        .map(|(i, t)| sym_member(format!("M{}", i + 1), t))
        .collect();
    if include_eps_k {
        if members.len() >= cap {
            return Err(Error::SetOverflow { cap });
        }
        members.push(skew_member("K3", eps_contract(&Vec3::K)));
    }
    StructuralTensorSet::from_members(name, members)
}

/// The canonical lower-order structural tensor set for each group.
pub fn structural_set(name: GroupName) -> StructuralTensorSet {
    let build = || -> Result<StructuralTensorSet> {
        let (i, j, k) = (Vec3::I, Vec3::J, Vec3::K);
        let k3 = || skew_member("K3", eps_contract(&k));
        let members = match name {
            GroupName::Ci => vec![
                skew_member("K1", eps_contract(&i)),
                skew_member("K2", eps_contract(&j)),
                skew_member("K3", eps_contract(&k)),
            ],
            GroupName::C2h => vec![sym_member("P2", outer_sym(&i) - outer_sym(&j)), k3()],
            GroupName::D2h | GroupName::D4h => {
                return build_set_from_seed(name, &[i, j, k], false, DEFAULT_MEMBER_CAP)
            }
            GroupName::C4h => return build_set_from_seed(name, &[i, k], true, DEFAULT_MEMBER_CAP),
            GroupName::C3i => {
                let mut m = orbit_chain(outer_sym(&(i + k)), &SymOp::C3.matrix(), "T")?;
                m.push(k3());
                m
            }
            GroupName::D3d => orbit_chain(outer_sym(&(j + k)), &SymOp::C3.matrix(), "D")?,
            GroupName::C6h => {
                let mut m = orbit_chain(outer_sym(&i), &SymOp::C6.matrix(), "H")?;
                m.push(k3());
                m
            }
            GroupName::D6h => orbit_chain(outer_sym(&i), &SymOp::C6.matrix(), "H")?,
            GroupName::Th | GroupName::Oh => orbit_chain(outer_sym(&i), &SymOp::Qp.matrix(), "M")?,
            GroupName::CInfH => vec![k3()],
            GroupName::DInfH => vec![sym_member("M3", outer_sym(&k))],
            GroupName::Kh => vec![sym_member("I", SymTensor2::IDENTITY)],
        };
        StructuralTensorSet::from_members(name, members)
    };
    build().expect("canonical structural sets are stable under their generators")
}
