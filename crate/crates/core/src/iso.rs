//! Isotropic functional bases and tensor generators for lists of symmetric and
//! skew-symmetric second-order arguments, plus a pointwise span oracle used to
//! confirm that eliminated generators are redundant.

use serde::Serialize;

use crate::linalg::span_residual;
use crate::tensor::{Mat3, SkewTensor2, SymTensor2};

/// Relative tolerance for [`span_check`].
pub const TAU_SPAN: f64 = 1e-8;

/// Named argument lists. Names appear in labels (`tr(C M1)`, `C K3 - K3 C`).
#[derive(Debug, Clone, Default)]
pub struct ArgList {
    pub sym_args: Vec<SymTensor2>,
    pub skew_args: Vec<SkewTensor2>,
    pub sym_names: Vec<String>,
    pub skew_names: Vec<String>,
}

impl ArgList {
    /// Arguments with default names `A1, A2, …` and `W1, W2, …`.
    pub fn new(sym_args: Vec<SymTensor2>, skew_args: Vec<SkewTensor2>) -> Self {
        let sym_names = (1..=sym_args.len()).map(|i| format!("A{i}")).collect();
        let skew_names = (1..=skew_args.len()).map(|i| format!("W{i}")).collect();
        ArgList {
            sym_args,
            skew_args,
            sym_names,
            skew_names,
        }
    }

    pub fn sym(mut self, name: impl Into<String>, a: SymTensor2) -> Self {
        self.sym_args.push(a);
        self.sym_names.push(name.into());
        self
    }

    pub fn skew(mut self, name: impl Into<String>, w: SkewTensor2) -> Self {
        self.skew_args.push(w);
        self.skew_names.push(name.into());
        self
    }

    /// Conjugates every argument by `q` (no orthogonality check).
    pub fn conj(&self, q: &Mat3) -> Self {
        ArgList {
            sym_args: self.sym_args.iter().map(|a| a.conj_unchecked(q)).collect(),
            skew_args: self.skew_args.iter().map(|w| w.conj_unchecked(q)).collect(),
            sym_names: self.sym_names.clone(),
            skew_names: self.skew_names.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantVector {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
}

impl InvariantVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn push(&mut self, label: String, value: f64) {
        self.labels.push(label);
        self.values.push(value);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorList {
    pub labels: Vec<String>,
    pub values: Vec<SymTensor2>,
}

impl GeneratorList {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pushes the symmetric part of `m`; callers only pass symmetric expressions.
    fn push(&mut self, label: String, m: Mat3) {
        debug_assert!(
            m.asymmetry() <= 1e-12 * (1.0 + m.max_abs()),
            "{label} is not symmetric"
        );
        self.labels.push(label);
        self.values.push(SymTensor2::from_mat_lossy(&m));
    }
}

fn pow(name: &str, p: u32) -> String {
    if p == 1 {
        name.to_string()
    } else {
        format!("{name}^{p}")
    }
}

fn product(parts: &[(&str, u32)]) -> String {
    parts
        .iter()
        .map(|(n, p)| pow(n, *p))
        .collect::<Vec<_>>()
        .join(" ")
}

fn tr(parts: &[(&str, u32)]) -> String {
    if parts.len() == 1 {
        format!("tr {}", product(parts))
    } else {
        format!("tr({})", product(parts))
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

/// Every applicable row of the isotropic functional basis, in row order and
/// then lexicographic argument order.
pub fn iso_invariants(args: &ArgList) -> InvariantVector {
    let a: Vec<Mat3> = args.sym_args.iter().map(|x| x.to_mat()).collect();
    let w: Vec<Mat3> = args.skew_args.iter().map(|x| x.to_mat()).collect();
    let a2: Vec<Mat3> = a.iter().map(|x| *x * *x).collect();
    let w2: Vec<Mat3> = w.iter().map(|x| *x * *x).collect();
    let an = &args.sym_names;
    let wn = &args.skew_names;
    let mut out = InvariantVector {
        labels: vec![],
        values: vec![],
    };

    for i in 0..a.len() {
        let n = an[i].as_str();
        out.push(tr(&[(n, 1)]), a[i].trace());
        out.push(tr(&[(n, 2)]), a2[i].trace());
        out.push(tr(&[(n, 3)]), (a2[i] * a[i]).trace());
    }
    for (i, j) in pairs(a.len()) {
        let (p, q) = (an[i].as_str(), an[j].as_str());
        out.push(tr(&[(p, 1), (q, 1)]), (a[i] * a[j]).trace());
        out.push(tr(&[(p, 2), (q, 1)]), (a2[i] * a[j]).trace());
        out.push(tr(&[(p, 1), (q, 2)]), (a[i] * a2[j]).trace());
        out.push(tr(&[(p, 2), (q, 2)]), (a2[i] * a2[j]).trace());
    }
    for (i, j, k) in triples(a.len()) {
        out.push(
            tr(&[(&an[i], 1), (&an[j], 1), (&an[k], 1)]),
            (a[i] * a[j] * a[k]).trace(),
        );
    }
    for k in 0..w.len() {
        out.push(tr(&[(&wn[k], 2)]), w2[k].trace());
    }
    for i in 0..a.len() {
        for k in 0..w.len() {
            let (p, v) = (an[i].as_str(), wn[k].as_str());
            out.push(tr(&[(p, 1), (v, 2)]), (a[i] * w2[k]).trace());
            out.push(tr(&[(p, 2), (v, 2)]), (a2[i] * w2[k]).trace());
            out.push(
                tr(&[(p, 2), (v, 2), (p, 1), (v, 1)]),
                (a2[i] * w2[k] * a[i] * w[k]).trace(),
            );
        }
    }
    for (i, j) in pairs(a.len()) {
        for k in 0..w.len() {
            let (p, q, v) = (an[i].as_str(), an[j].as_str(), wn[k].as_str());
            out.push(tr(&[(p, 1), (q, 1), (v, 1)]), (a[i] * a[j] * w[k]).trace());
            out.push(tr(&[(p, 2), (q, 1), (v, 1)]), (a2[i] * a[j] * w[k]).trace());
            out.push(tr(&[(p, 1), (q, 2), (v, 1)]), (a[i] * a2[j] * w[k]).trace());
            out.push(
                tr(&[(p, 1), (v, 2), (q, 1), (v, 1)]),
                (a[i] * w2[k] * a[j] * w[k]).trace(),
            );
        }
    }
    for (k, l) in pairs(w.len()) {
        out.push(tr(&[(&wn[k], 1), (&wn[l], 1)]), (w[k] * w[l]).trace());
    }
    for i in 0..a.len() {
        for (k, l) in pairs(w.len()) {
            let (p, u, v) = (an[i].as_str(), wn[k].as_str(), wn[l].as_str());
            out.push(tr(&[(p, 1), (u, 1), (v, 1)]), (a[i] * w[k] * w[l]).trace());
            out.push(tr(&[(p, 1), (u, 2), (v, 1)]), (a[i] * w2[k] * w[l]).trace());
            out.push(tr(&[(p, 1), (u, 1), (v, 2)]), (a[i] * w[k] * w2[l]).trace());
        }
    }
    for (k, l, m) in triples(w.len()) {
        out.push(
            tr(&[(&wn[k], 1), (&wn[l], 1), (&wn[m], 1)]),
            (w[k] * w[l] * w[m]).trace(),
        );
    }
    out
}

/// Every applicable row of the isotropic symmetric-tensor generator table.
pub fn iso_generators(args: &ArgList) -> GeneratorList {
    let a: Vec<Mat3> = args.sym_args.iter().map(|x| x.to_mat()).collect();
    let w: Vec<Mat3> = args.skew_args.iter().map(|x| x.to_mat()).collect();
    let a2: Vec<Mat3> = a.iter().map(|x| *x * *x).collect();
    let w2: Vec<Mat3> = w.iter().map(|x| *x * *x).collect();
    let an = &args.sym_names;
    let wn = &args.skew_names;
    let mut out = GeneratorList {
        labels: vec![],
        values: vec![],
    };

    out.push("I".into(), Mat3::IDENTITY);
    for i in 0..a.len() {
        out.push(pow(&an[i], 1), a[i]);
        out.push(pow(&an[i], 2), a2[i]);
    }
    for k in 0..w.len() {
        out.push(pow(&wn[k], 2), w2[k]);
    }
    for (i, j) in pairs(a.len()) {
        let (p, q) = (an[i].as_str(), an[j].as_str());
        out.push(format!("{p} {q} + {q} {p}"), a[i] * a[j] + a[j] * a[i]);
        out.push(
            format!("{p}^2 {q} + {q} {p}^2"),
            a2[i] * a[j] + a[j] * a2[i],
        );
        out.push(
            format!("{p} {q}^2 + {q}^2 {p}"),
            a[i] * a2[j] + a2[j] * a[i],
        );
    }
    for i in 0..a.len() {
        for k in 0..w.len() {
            let (p, v) = (an[i].as_str(), wn[k].as_str());
            out.push(format!("{p} {v} - {v} {p}"), a[i] * w[k] - w[k] * a[i]);
            out.push(
                format!("{p}^2 {v} - {v} {p}^2"),
                a2[i] * w[k] - w[k] * a2[i],
            );
            out.push(format!("{v} {p} {v}"), w[k] * a[i] * w[k]);
            out.push(
                format!("{v} {p} {v}^2 - {v}^2 {p} {v}"),
                w[k] * a[i] * w2[k] - w2[k] * a[i] * w[k],
            );
        }
    }
    for (k, l) in pairs(w.len()) {
        let (u, v) = (wn[k].as_str(), wn[l].as_str());
        out.push(format!("{u} {v} + {v} {u}"), w[k] * w[l] + w[l] * w[k]);
        out.push(
            format!("{u} {v}^2 - {v}^2 {u}"),
            w[k] * w2[l] - w2[l] * w[k],
        );
        out.push(
            format!("{u}^2 {v} - {v} {u}^2"),
            w2[k] * w[l] - w[l] * w2[k],
        );
    }
    out
}

/// Outcome of a pointwise span test over sampled arguments.
#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub trials: usize,
    /// Samples skipped because every retained generator vanished.
    pub skipped: usize,
    /// Worst residual relative to the candidate norm (absolute when the candidate is zero).
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Relative residual of `candidate` against the span of `retained`.
pub fn relative_span_residual(retained: &[SymTensor2], candidate: &SymTensor2) -> f64 {
    let r = span_residual(retained, candidate);
    let n = candidate.frobenius();
    if n > 0.0 {
        r / n
    } else {
        r
    }
}

/// Tests at `trials` sampled arguments whether `candidate(C)` lies in the span
/// of `retained(C)`.
pub fn span_check(
    retained: impl Fn(&SymTensor2) -> Vec<SymTensor2>,
    candidate: impl Fn(&SymTensor2) -> SymTensor2,
    mut sampler: impl FnMut() -> SymTensor2,
    trials: usize,
) -> SpanReport {
    assert!(trials >= 1, "span_check needs at least one trial");
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for _ in 0..trials {
        let c = sampler();
        let basis = retained(&c);
        if basis.iter().all(|g| g.max_abs() == 0.0) {
            skipped += 1;
            continue;
        }
        worst = worst.max(relative_span_residual(&basis, &candidate(&c)));
    }
    SpanReport {
        trials,
        skipped,
        max_residual: worst,
        tolerance: TAU_SPAN,
        pass: worst <= TAU_SPAN,
    }
}
