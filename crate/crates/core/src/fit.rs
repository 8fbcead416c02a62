//! Sample files, synthetic data, and least-squares calibration of
//! constrained coefficient models.
//!
//! Constraint-tied coefficients share one unknown: the unknowns are the
//! orbits of `(coefficient, monomial)` pairs under the member permutations
//! the group induces, so every fitted model is symmetrized by construction.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::GroupName;
use crate::linalg::lstsq;
use crate::model::{
    act_on_key, monomial, monomials, CoefficientModel, ModelKind, Term, MAX_DEGREE,
};
use crate::rep::{representation_in, Form, Representation};
use crate::rng::{random_sym, trial_rng};
use crate::tensor::{SymTensor2, TAU_SYM};
use crate::verify::{verify_model, SweepConfig, VerificationReport};

pub const DEFAULT_FIT_DEGREE: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    Tensor(SymTensor2),
    Scalar(f64),
}

impl Target {
    fn kind(&self) -> ModelKind {
        match self {
            Target::Tensor(_) => ModelKind::Tensor,
            Target::Scalar(_) => ModelKind::Scalar,
        }
    }

    fn entries(&self) -> Vec<f64> {
        match self {
            Target::Tensor(t) => t.components().to_vec(),
            Target::Scalar(s) => vec![*s],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Record {
    pub c: SymTensor2,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub kind: ModelKind,
    pub records: Vec<Record>,
}

impl SampleSet {
    pub fn new(kind: ModelKind, records: Vec<Record>) -> Result<Self> {
        if records.iter().any(|r| r.target.kind() != kind) {
            return Err(Error::Invalid(
                "sample set mixes tensor and scalar targets".into(),
            ));
        }
        Ok(SampleSet { kind, records })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

const C_COLS: [&str; 6] = ["C11", "C22", "C33", "C12", "C13", "C23"];
const T_COLS: [&str; 6] = ["T11", "T22", "T33", "T12", "T13", "T23"];
const C_LOWER: [&str; 3] = ["C21", "C31", "C32"];
const T_LOWER: [&str; 3] = ["T21", "T31", "T32"];
const PSI: &str = "psi";

struct Layout {
    kind: ModelKind,
    c: [usize; 6],
    c_lower: Option<[usize; 3]>,
    t: [usize; 6],
    t_lower: Option<[usize; 3]>,
    psi: usize,
}

fn layout(header: &csv::StringRecord, want: Option<ModelKind>) -> Result<Layout> {
    let names: Vec<&str> = header.iter().map(str::trim).collect();
    let find = |n: &str| names.iter().position(|h| *h == n);
    for n in &names {
        let known = C_COLS.contains(n)
            || T_COLS.contains(n)
            || C_LOWER.contains(n)
            || T_LOWER.contains(n)
            || *n == PSI;
        if !known {
            return Err(Error::Parse(format!("unknown column `{n}`")));
        }
    }
    let kind = match (find(PSI).is_some(), find("T11").is_some()) {
        (true, false) => ModelKind::Scalar,
        (false, true) => ModelKind::Tensor,
        _ => {
            return Err(Error::Parse(
                "header must contain either T11..T23 or psi".into(),
            ))
        }
    };
    if let Some(w) = want {
        if w != kind {
            return Err(Error::Invalid(
                format!("expected {w:?} samples, header describes {kind:?}").to_lowercase(),
            ));
        }
    }
    let all = |cols: &[&str]| -> Result<Vec<usize>> {
        cols.iter()
            .map(|n| find(n).ok_or_else(|| Error::Parse(format!("missing column `{n}`"))))
            .collect()
    };
    let some = |cols: &[&str; 3]| -> Result<Option<[usize; 3]>> {
        match cols.iter().filter(|n| find(n).is_some()).count() {
            0 => Ok(None),
            3 => Ok(Some(all(cols)?.try_into().expect("three columns"))),
            _ => Err(Error::Parse(format!(
                "partial lower-triangle columns {cols:?}"
            ))),
        }
    };
    let c = all(&C_COLS)?.try_into().expect("six columns");
    let (t, t_lower, psi) = match kind {
        ModelKind::Tensor => (
            all(&T_COLS)?.try_into().expect("six columns"),
            some(&T_LOWER)?,
            0,
        ),
        ModelKind::Scalar => {
            if T_COLS.iter().chain(&T_LOWER).any(|n| find(n).is_some()) {
                return Err(Error::Parse("scalar samples cannot carry T columns".into()));
            }
            ([0; 6], None, find(PSI).expect("checked"))
        }
    };
    Ok(Layout {
        kind,
        c,
        c_lower: some(&C_LOWER)?,
        t,
        t_lower,
        psi,
    })
}

fn number(row: &csv::StringRecord, i: usize) -> Result<f64> {
    let s = row
        .get(i)
        .ok_or_else(|| Error::Parse("row is shorter than the header".into()))?
        .trim();
    let v: f64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::NonFinite(format!("sample entry `{s}`")));
    }
    Ok(v)
}

fn read_sym(
    row: &csv::StringRecord,
    upper: &[usize; 6],
    lower: Option<[usize; 3]>,
) -> Result<SymTensor2> {
    let mut v = [0.0; 6];
    for (k, &i) in upper.iter().enumerate() {
        v[k] = number(row, i)?;
    }
    let s = SymTensor2::from_components(v);
    if let Some(lower) = lower {
        // Lower entries in the order (2,1), (3,1), (3,2) pair with stored xy, xz, yz.
        let mut defect = 0.0f64;
        for (k, &i) in lower.iter().enumerate() {
            defect = defect.max((number(row, i)? - v[3 + k]).abs());
        }
        if defect > TAU_SYM * (1.0 + s.max_abs()) {
            return Err(Error::NotSymmetric { defect });
        }
    }
    Ok(s)
}

/// Reads CSV samples. The kind is taken from the header unless `kind` is given,
/// in which case a mismatch is an error. Errors inside a data row carry its
/// line number.
pub fn read_samples<R: Read>(reader: R, kind: Option<ModelKind>) -> Result<SampleSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let lay = layout(&header, kind)?;
    let mut records = vec![];
    for row in rdr.records() {
        let row = row.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            Error::AtLine {
                line,
                source: Box::new(Error::Parse(e.to_string())),
            }
        })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let parse = || -> Result<Record> {
            if row.len() != header.len() {
                return Err(Error::Parse(format!(
                    "expected {} fields, found {}",
                    header.len(),
                    row.len()
                )));
            }
            let c = read_sym(&row, &lay.c, lay.c_lower)?;
            let target = match lay.kind {
                ModelKind::Tensor => Target::Tensor(read_sym(&row, &lay.t, lay.t_lower)?),
                ModelKind::Scalar => Target::Scalar(number(&row, lay.psi)?),
            };
            Ok(Record { c, target })
        };
        records.push(parse().map_err(|e| Error::AtLine {
            line,
            source: Box::new(e),
        })?);
    }
    if records.is_empty() {
        return Err(Error::Invalid("sample file has no records".into()));
    }
    SampleSet::new(lay.kind, records)
}

pub fn ingest_samples(path: &Path, kind: Option<ModelKind>) -> Result<SampleSet> {
    read_samples(std::fs::File::open(path)?, kind)
}

/// Writes samples with shortest round-trip decimal formatting, so reading the
/// output back reproduces every value bit for bit.
pub fn write_samples<W: Write>(writer: W, samples: &SampleSet) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut header: Vec<&str> = C_COLS.to_vec();
    match samples.kind {
        ModelKind::Tensor => header.extend(T_COLS),
        ModelKind::Scalar => header.push(PSI),
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in &samples.records {
        let fields: Vec<String> =
            r.c.components()
                .iter()
                .chain(&r.target.entries())
                .map(|v| v.to_string())
                .collect();
        w.write_record(&fields).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// `n` samples of `model` at random `C` (entries uniform in `[-1, 1]`), with
/// optional Gaussian noise of standard deviation `noise` on every stored
/// target entry.
pub fn synthesize(model: &CoefficientModel, n: usize, seed: u64, noise: f64) -> Result<SampleSet> {
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(Error::Invalid("noise must be a non-negative number".into()));
    }
    let normal = Normal::new(0.0, noise).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut records = Vec::with_capacity(n);
    for i in 0..n {
        let mut rng = trial_rng(seed, i as u64);
        let c = random_sym(&mut rng);
        let mut jitter = || {
            if noise > 0.0 {
                normal.sample(&mut rng)
            } else {
                0.0
            }
        };
        let target = match model.kind {
            ModelKind::Tensor => {
                let t = crate::model::eval_tensor(model, &c)?;
                let mut v = t.components();
                v.iter_mut().for_each(|x| *x += jitter());
                Target::Tensor(SymTensor2::from_components(v))
            }
            ModelKind::Scalar => Target::Scalar(crate::model::eval_scalar(model, &c)? + jitter()),
        };
        records.push(Record { c, target });
    }
    SampleSet::new(model.kind, records)
}

/// Unknowns of a tied fit: each orbit lists the `(internal coefficient,
/// exponents)` keys sharing one value.
#[derive(Debug, Clone)]
pub struct TiedBasis {
    pub kind: ModelKind,
    pub degree: u32,
    pub orbits: Vec<Vec<(usize, Vec<u32>)>>,
}

pub fn tied_basis(rep: &Representation, kind: ModelKind, degree: u32) -> TiedBasis {
    let n_coef = match kind {
        ModelKind::Tensor => rep.n_generators(),
        ModelKind::Scalar => 1,
    };
    let mons = monomials(rep.n_invariants(), degree);
    let mut seen: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut orbits: Vec<Vec<(usize, Vec<u32>)>> = vec![];
    for j in 0..n_coef {
        for e in &mons {
            if seen.contains_key(&(j, e.clone())) {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![];
            for a in &rep.actions {
                let key = act_on_key(kind, a, j, e);
                if !seen.contains_key(&key) {
                    seen.insert(key.clone(), id);
                    orbit.push(key);
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }
    }
    TiedBasis {
        kind,
        degree,
        orbits,
    }
}

impl TiedBasis {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Values of every orbit basis function at `C`: six Mandel entries per
    /// column for tensors, one for scalars.
    fn row_block(&self, rep: &Representation, c: &SymTensor2) -> Vec<Vec<f64>> {
        let x = rep.invariant_values(c);
        let gens = match self.kind {
            ModelKind::Tensor => rep.generator_values(c),
            ModelKind::Scalar => vec![],
        };
        self.orbits
            .iter()
            .map(|orbit| match self.kind {
                ModelKind::Tensor => {
                    let mut v = [0.0; 6];
                    for (j, e) in orbit {
                        let m = gens[*j].to_mandel();
                        let w = monomial(&x, e);
                        v.iter_mut().zip(m).for_each(|(a, b)| *a += w * b);
                    }
                    v.to_vec()
                }
                ModelKind::Scalar => vec![orbit.iter().map(|(_, e)| monomial(&x, e)).sum()],
            })
            .collect()
    }

    fn model(&self, rep: &Representation, theta: &[f64]) -> CoefficientModel {
        let first = match self.kind {
            ModelKind::Tensor => rep.first_index(),
            ModelKind::Scalar => 0,
        };
        let mut terms: BTreeMap<(usize, Vec<u32>), f64> = BTreeMap::new();
        for (orbit, &v) in self.orbits.iter().zip(theta) {
            for (j, e) in orbit {
                terms.insert((j + first, e.clone()), v);
            }
        }
        let mut m = CoefficientModel::new(
            rep.group(),
            self.kind,
            self.degree,
            terms
                .into_iter()
                .map(|((coef_index, exponents), value)| Term {
                    coef_index,
                    exponents,
                    value,
                })
                .collect(),
        )
        .with_form(rep.basis.form);
        m.symmetrized = true;
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub degree: u32,
    pub ridge: f64,
    pub form: Form,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            degree: DEFAULT_FIT_DEGREE,
            ridge: 0.0,
            form: Form::Canonical,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitMeta {
    pub records: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub condition: f64,
    pub min_norm: bool,
    pub ridge: f64,
    pub rms_residual: f64,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct FitResult {
    pub model: CoefficientModel,
    pub rms_residual: f64,
    /// Root-mean-square residual of each record over its stored entries, in input order.
    pub residuals: Vec<f64>,
    pub condition: f64,
    pub rank: usize,
    pub unknowns: usize,
    pub min_norm: bool,
    pub ridge: f64,
}

/// JSON form: the model fields followed by a `fit` block.
#[derive(Serialize)]
pub struct FitOutput {
    #[serde(flatten)]
    pub model: CoefficientModel,
    pub fit: FitMeta,
}

impl FitResult {
    pub fn output(&self) -> Result<FitOutput> {
        Ok(FitOutput {
            model: self.model.labelled()?,
            fit: FitMeta {
                records: self.residuals.len(),
                unknowns: self.unknowns,
                rank: self.rank,
                condition: self.condition,
                min_norm: self.min_norm,
                ridge: self.ridge,
                rms_residual: self.rms_residual,
                max_residual: self.residuals.iter().cloned().fold(0.0, f64::max),
            },
        })
    }
}

fn record_key(r: &Record) -> Vec<u64> {
    r.c.components()
        .iter()
        .chain(&r.target.entries())
        .map(|v| v.to_bits())
        .collect()
}

/// Per-record rms over stored entries, and overall rms over every entry.
fn residuals(model: &CoefficientModel, samples: &SampleSet) -> Result<(Vec<f64>, f64)> {
    let mut per = Vec::with_capacity(samples.len());
    let mut total = 0.0;
    let mut count = 0usize;
    for r in &samples.records {
        let pred = match samples.kind {
            ModelKind::Tensor => model.eval_tensor_unchecked(&r.c)?.components().to_vec(),
            ModelKind::Scalar => vec![model.eval_scalar_unchecked(&r.c)?],
        };
        let sq: f64 = pred
            .iter()
            .zip(r.target.entries())
            .map(|(p, o)| (p - o).powi(2))
            .sum();
        total += sq;
        count += pred.len();
        per.push((sq / pred.len() as f64).sqrt());
    }
    Ok((per, (total / count.max(1) as f64).sqrt()))
}

/// Least-squares fit of a tied polynomial model of total degree
/// `opts.degree` in the group's invariants. Records are sorted before the
/// design is assembled, so the result does not depend on their order.
pub fn fit_linear(group: GroupName, samples: &SampleSet, opts: &FitOptions) -> Result<FitResult> {
    if samples.is_empty() {
        return Err(Error::Invalid("cannot fit an empty sample set".into()));
    }
    if opts.degree > MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {} exceeds the cap {MAX_DEGREE}",
            opts.degree
        )));
    }
    if !(opts.ridge >= 0.0 && opts.ridge.is_finite()) {
        return Err(Error::Invalid("ridge must be a non-negative number".into()));
    }
    let rep = representation_in(group, opts.form)?;
    let basis = tied_basis(rep, samples.kind, opts.degree);
    let mut sorted: Vec<&Record> = samples.records.iter().collect();
    sorted.sort_by_key(|r| record_key(r));

    let per_row = match samples.kind {
        ModelKind::Tensor => 6,
        ModelKind::Scalar => 1,
    };
    let n = basis.len();
    let mut a = DMatrix::zeros(sorted.len() * per_row, n);
    let mut b = DVector::zeros(sorted.len() * per_row);
    for (i, r) in sorted.iter().enumerate() {
        for (col, vals) in basis.row_block(rep, &r.c).into_iter().enumerate() {
            for (k, v) in vals.into_iter().enumerate() {
                a[(i * per_row + k, col)] = v;
            }
        }
        let obs = match r.target {
            Target::Tensor(t) => t.to_mandel().to_vec(),
            Target::Scalar(s) => vec![s],
        };
        for (k, v) in obs.into_iter().enumerate() {
            b[i * per_row + k] = v;
        }
    }
    let norms: Vec<f64> = (0..n)
        .map(|j| a.column(j).norm())
        .map(|s| if s > 0.0 { s } else { 1.0 })
        .collect();
    for (j, s) in norms.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let sol = lstsq(&a, &b, opts.ridge);
    let theta: Vec<f64> = sol.x.iter().zip(&norms).map(|(x, s)| x / s).collect();
    let model = basis.model(rep, &theta);
    let (per, rms) = residuals(&model, samples)?;
    Ok(FitResult {
        model,
        rms_residual: rms,
        residuals: per,
        condition: sol.condition,
        rank: sol.rank,
        unknowns: n,
        min_norm: sol.rank_deficient,
        ridge: opts.ridge,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub records: usize,
    pub rms_residual: f64,
    pub max_residual: f64,
    pub equivariance: Vec<VerificationReport>,
}

/// Holdout residuals plus a re-run of the verification battery on the fitted model.
pub fn residual_report(result: &FitResult, holdout: &SampleSet) -> Result<ResidualReport> {
    if holdout.is_empty() {
        return Err(Error::Invalid("holdout set is empty".into()));
    }
    if holdout.kind != result.model.kind {
        return Err(Error::Invalid(
            "holdout kind does not match the fitted model".into(),
        ));
    }
    let (per, rms) = residuals(&result.model, holdout)?;
    Ok(ResidualReport {
        records: per.len(),
        rms_residual: rms,
        max_residual: per.iter().cloned().fold(0.0, f64::max),
        equivariance: verify_model(&result.model, &SweepConfig::new(50, 0, 1e-9))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_model, eval_tensor};

    fn kh_linear() -> SampleSet {
        let mut rng = trial_rng(1, 0);
        let records = (0..20)
            .map(|_| {
                let c = random_sym(&mut rng);
                Record {
                    c,
                    target: Target::Tensor(c.scale(2.0)),
                }
            })
            .collect();
        SampleSet::new(ModelKind::Tensor, records).unwrap()
    }

    #[test]
    fn kh_linear_isotropic() {
        let fit = fit_linear(
            GroupName::Kh,
            &kh_linear(),
            &FitOptions {
                degree: 0,
                ..Default::default()
            },
        )
        .unwrap();
        let vals: Vec<f64> = fit.model.terms.iter().map(|t| t.value).collect();
        assert_eq!(
            fit.model
                .terms
                .iter()
                .map(|t| t.coef_index)
                .collect::<Vec<_>>(),
            [0, 1, 2]
        );
        assert!(
            (vals[0]).abs() <= 1e-12 && (vals[1] - 2.0).abs() <= 1e-12 && vals[2].abs() <= 1e-12
        );
        assert!(!fit.min_norm);
        assert!(fit.rms_residual <= 1e-12);
    }

    #[test]
    fn single_sample_is_min_norm_interpolation() {
        let set = SampleSet::new(ModelKind::Tensor, kh_linear().records[..1].to_vec()).unwrap();
        let fit = fit_linear(GroupName::Kh, &set, &FitOptions::default()).unwrap();
        assert!(fit.min_norm);
        assert!(fit.rms_residual <= 1e-12);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let set = synthesize(
            &default_model(GroupName::D4h, ModelKind::Tensor),
            100,
            3,
            0.0,
        )
        .unwrap();
        let mut buf = vec![];
        write_samples(&mut buf, &set).unwrap();
        assert_eq!(read_samples(&buf[..], None).unwrap(), set);
        let psi = synthesize(&default_model(GroupName::Oh, ModelKind::Scalar), 10, 3, 0.0).unwrap();
        let mut buf = vec![];
        write_samples(&mut buf, &psi).unwrap();
        assert_eq!(
            read_samples(&buf[..], Some(ModelKind::Scalar)).unwrap(),
            psi
        );
        assert!(read_samples(&buf[..], Some(ModelKind::Tensor)).is_err());
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let ok = "C11,C22,C33,C12,C13,C23,T11,T22,T33,T12,T13,T23\n1,1,1,0,0,0,1,1,1,0,0,0\n";
        let set = read_samples(ok.as_bytes(), None).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.records[0].target, Target::Tensor(SymTensor2::IDENTITY));

        let bad = format!("{ok}1,1,1,0,0,x,1,1,1,0,0,0\n");
        match read_samples(bad.as_bytes(), None) {
            Err(Error::AtLine { line: 3, source }) => assert!(matches!(*source, Error::Parse(_))),
            other => panic!("{other:?}"),
        }
        let nan = format!("{ok}1,1,1,0,0,NaN,1,1,1,0,0,0\n");
        let e = read_samples(nan.as_bytes(), None).unwrap_err();
        assert!(e.is_validation());

        let full = "C11,C12,C13,C21,C22,C23,C31,C32,C33,psi\n1,0,0,0,1,0,0,0,1,3\n1,0.5,0,0.501,1,0,0,0,1,3\n";
        match read_samples(full.as_bytes(), None) {
            Err(Error::AtLine { line: 3, source }) => {
                assert!(matches!(*source, Error::NotSymmetric { .. }))
            }
            other => panic!("{other:?}"),
        }
        assert!(read_samples("C11,C22\n".as_bytes(), None).is_err());
        assert!(read_samples("C11,C22,C33,C12,C13,C23,psi,zz\n".as_bytes(), None).is_err());
        assert!(read_samples("C11,C22,C33,C12,C13,C23,psi\n".as_bytes(), None).is_err());
    }

    #[test]
    fn tied_orbits_partition_keys() {
        for g in GroupName::ALL {
            let rep = crate::rep::representation(g);
            let b = tied_basis(rep, ModelKind::Tensor, 1);
            let total: usize = b.orbits.iter().map(Vec::len).sum();
            assert_eq!(total, rep.n_generators() * (rep.n_invariants() + 1), "{g}");
        }
    }

    #[test]
    fn noisy_synthesis_perturbs_targets() {
        let m = default_model(GroupName::D2h, ModelKind::Tensor);
        let clean = synthesize(&m, 5, 1, 0.0).unwrap();
        let noisy = synthesize(&m, 5, 1, 1e-3).unwrap();
        for (a, b) in clean.records.iter().zip(&noisy.records) {
            assert_eq!(a.c, b.c);
            assert_ne!(a.target, b.target);
        }
        if let Target::Tensor(t) = clean.records[0].target {
            assert_eq!(t, eval_tensor(&m, &clean.records[0].c).unwrap());
        }
        assert!(synthesize(&m, 1, 1, -1.0).is_err());
    }

    #[test]
    fn empty_holdout_is_an_error() {
        let fit = fit_linear(GroupName::Kh, &kh_linear(), &FitOptions::default()).unwrap();
        let empty = SampleSet {
            kind: ModelKind::Tensor,
            records: vec![],
        };
        assert!(residual_report(&fit, &empty).is_err());
    }
}
