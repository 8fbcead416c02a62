use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use strucrep::fit::{
    read_samples, residual_report, synthesize, write_samples, FitOutput, ResidualReport,
};
use strucrep::groups::{
    build_set_from_seed, enumerate_group, stabilizer_within, structural_set, StructTensor,
};
use strucrep::json::to_canonical_string;
use strucrep::model::{default_model, eval_scalar, eval_tensor, model_library};
use strucrep::rep::{representation_in, ConstraintTable};
use strucrep::tensor::TAU_SYM;
use strucrep::verify::{audit_redundancy, stress_from_energy, verify_model};
use strucrep::{
    fit_linear, CoefficientModel, Error, FitOptions, Form, Formulation, GroupName, Mat3, ModelKind,
    StructuralTensorSet, SweepConfig, SymTensor2, Vec3,
};

const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "strucrep",
    version,
    about = "Anisotropic tensor-function representations for the centrosymmetric point groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the groups or show one in detail.
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
    /// Structural tensor set of a group, or one closed from seed vectors, with stabilizer report.
    Struct {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        /// Seed vector `x,y,z`; repeatable. Without seeds the canonical set is used.
        #[arg(long = "seed-vector", value_parser = parse_vec3, allow_hyphen_values = true)]
        seeds: Vec<Vec3>,
        /// Add `ε k` to a seeded set.
        #[arg(long)]
        eps_k: bool,
        #[arg(long, default_value_t = strucrep::groups::DEFAULT_MEMBER_CAP)]
        cap: usize,
    },
    /// Reduced invariants of a group at `C`.
    Invariants {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        /// JSON file holding a symmetric 3x3 matrix (`-` for stdin).
        #[arg(long)]
        c: PathBuf,
        #[arg(long, value_parser = parse_form, default_value = "canonical")]
        form: Form,
    },
    /// Evaluate a coefficient model at `C`.
    Eval {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        c: PathBuf,
    },
    /// Run the verification battery; exit 4 if any check fails.
    Verify {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        /// Model to verify; defaults to the built-in library plus redundancy audits.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "STRUCREP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Fit a tied polynomial model to CSV samples (file or stdin).
    Fit {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        input: Option<PathBuf>,
        #[arg(long, default_value_t = strucrep::fit::DEFAULT_FIT_DEGREE)]
        degree: u32,
        #[arg(long, default_value_t = 0.0)]
        ridge: f64,
        #[arg(long, value_parser = parse_form, default_value = "canonical")]
        form: Form,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<ModelKind>,
        /// CSV samples for a holdout residual report.
        #[arg(long)]
        holdout: Option<PathBuf>,
    },
    /// Emit CSV samples of a model at random `C`.
    Synth {
        #[arg(value_parser = parse_group)]
        group: GroupName,
        #[arg(long)]
        model: Option<PathBuf>,
        /// Kind of the built-in model used when `--model` is absent.
        #[arg(long, value_parser = parse_kind, default_value = "tensor")]
        kind: ModelKind,
        #[arg(short = 'n', long = "count", default_value_t = 100)]
        count: usize,
        #[arg(long, env = "STRUCREP_SEED", default_value_t = 0)]
        seed: u64,
        /// Standard deviation of Gaussian noise added to every target entry.
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
    },
}

#[derive(Subcommand)]
enum GroupsCommand {
    List,
    Show {
        #[arg(value_parser = parse_group)]
        name: GroupName,
    },
}

fn parse_group(s: &str) -> Result<GroupName, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{x}` is not a number"))
        })
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err("expected three comma-separated numbers".into()),
    }
}

fn parse_form(s: &str) -> Result<Form, String> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| "expected `canonical` or `single-P2`".into())
}

fn parse_kind(s: &str) -> Result<ModelKind, String> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| "expected `tensor` or `scalar`".into())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() {
            EXIT_VALIDATION
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("{}: {e}", path.display()),
        })
    }
}

fn read_c(path: &Path) -> CliResult<SymTensor2> {
    let m: Mat3 = serde_json::from_str(&read_input(path)?).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(SymTensor2::from_mat_checked(&m, TAU_SYM)?)
}

fn read_model(path: &Path, group: GroupName) -> CliResult<CoefficientModel> {
    let m = CoefficientModel::from_json(&read_input(path)?)?;
    if m.group != group {
        return Err(Error::Model(format!("model is for {}, not {group}", m.group)).into());
    }
    Ok(m)
}

fn emit<T: Serialize + ?Sized>(value: &T) -> CliResult<()> {
    let s = to_canonical_string(value)?;
    io::stdout().lock().write_all(s.as_bytes())?;
    Ok(())
}

#[derive(Serialize)]
struct GroupSummary {
    name: GroupName,
    order: Option<usize>,
    continuous: bool,
    formulation: Formulation,
    generators: Vec<&'static str>,
}

#[derive(Serialize)]
struct GeneratorJson {
    label: &'static str,
    matrix: Mat3,
}

#[derive(Serialize)]
struct MemberJson {
    label: String,
    kind: &'static str,
    matrix: Mat3,
}

#[derive(Serialize)]
struct ActionJson {
    generator: &'static str,
    cycles: String,
    targets: Vec<usize>,
    signs: Vec<i8>,
}

#[derive(Serialize)]
struct SetJson {
    members: Vec<MemberJson>,
    generator_actions: Vec<ActionJson>,
}

impl SetJson {
    fn new(set: &StructuralTensorSet) -> Self {
        let labels = set.labels();
        SetJson {
            members: set
                .members
                .iter()
                .map(|m| MemberJson {
                    label: m.label.clone(),
                    kind: match m.tensor {
                        StructTensor::Sym(_) => "symmetric",
                        StructTensor::Skew(_) => "skew",
                    },
                    matrix: m.tensor.to_mat(),
                })
                .collect(),
            generator_actions: set
                .generator_actions
                .iter()
                .map(|a| ActionJson {
                    generator: a.generator,
                    cycles: a.action.cycles(&labels),
                    targets: a.action.targets.clone(),
                    signs: a.action.signs.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct GroupDetail<'a> {
    name: GroupName,
    order: Option<usize>,
    continuous: bool,
    formulation: Formulation,
    generators: Vec<GeneratorJson>,
    structural_set: SetJson,
    first_index: usize,
    invariants: &'a [String],
    tensor_generators: &'a [String],
    constraints: &'a ConstraintTable,
}

fn summary(g: GroupName) -> GroupSummary {
    GroupSummary {
        name: g,
        order: g.order(),
        continuous: g.is_continuous(),
        formulation: Formulation::of(g),
        generators: g.generator_ops().iter().map(|op| op.label()).collect(),
    }
}

fn cmd_groups(command: GroupsCommand) -> CliResult<()> {
    match command {
        GroupsCommand::List => emit(
            &GroupName::ALL
                .iter()
                .map(|&g| summary(g))
                .collect::<Vec<_>>(),
        ),
        GroupsCommand::Show { name } => {
            let rep = representation_in(name, Form::Canonical)?;
            let order = if name.is_continuous() {
                None
            } else {
                Some(enumerate_group(name)?.len())
            };
            emit(&GroupDetail {
                name,
                order,
                continuous: name.is_continuous(),
                formulation: Formulation::of(name),
                generators: name
                    .generator_ops()
                    .iter()
                    .map(|op| GeneratorJson {
                        label: op.label(),
                        matrix: op.matrix(),
                    })
                    .collect(),
                structural_set: SetJson::new(&rep.set),
                first_index: rep.first_index(),
                invariants: &rep.basis.invariant_labels,
                tensor_generators: &rep.basis.generator_labels,
                constraints: &rep.constraints,
            })
        }
    }
}

#[derive(Serialize)]
struct Stabilizer {
    within: GroupName,
    candidates: usize,
    order: usize,
    exceeds_group: bool,
}

#[derive(Serialize)]
struct StructOutput {
    group: GroupName,
    source: &'static str,
    #[serde(flatten)]
    set: SetJson,
    stabilized_by_group: Option<bool>,
    stabilizers: Vec<Stabilizer>,
}

fn cmd_struct(group: GroupName, seeds: &[Vec3], eps_k: bool, cap: usize) -> CliResult<()> {
    let (set, source) = if seeds.is_empty() {
        if eps_k {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "--eps-k needs at least one --seed-vector".into(),
            });
        }
        (structural_set(group), "canonical")
    } else {
        (build_set_from_seed(group, seeds, eps_k, cap)?, "seeds")
    };
    let own = if group.is_continuous() {
        None
    } else {
        let els = enumerate_group(group)?;
        Some(stabilizer_within(&set, &els).len() == els.len())
    };
    let mut stabilizers = vec![];
    for pool in [GroupName::Oh, GroupName::D6h] {
        let candidates = enumerate_group(pool)?;
        let order = stabilizer_within(&set, &candidates).len();
        stabilizers.push(Stabilizer {
            within: pool,
            candidates: candidates.len(),
            order,
            exceeds_group: group.order().is_some_and(|n| order > n),
        });
    }
    emit(&StructOutput {
        group,
        source,
        set: SetJson::new(&set),
        stabilized_by_group: own,
        stabilizers,
    })
}

#[derive(Serialize)]
struct InvariantsOutput<'a> {
    group: GroupName,
    form: Form,
    labels: &'a [String],
    values: Vec<f64>,
}

fn cmd_invariants(group: GroupName, c: &Path, form: Form) -> CliResult<()> {
    let c = read_c(c)?;
    let rep = representation_in(group, form)?;
    emit(&InvariantsOutput {
        group,
        form,
        labels: &rep.basis.invariant_labels,
        values: rep.invariant_values(&c),
    })
}

#[derive(Serialize)]
struct Invariants<'a> {
    labels: &'a [String],
    values: Vec<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum EvalValue {
    #[serde(rename = "T")]
    Tensor(SymTensor2),
    Psi {
        value: f64,
        stress: SymTensor2,
    },
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    group: GroupName,
    invariants: Invariants<'a>,
    coefficients: Vec<f64>,
    #[serde(flatten)]
    value: EvalValue,
}

fn cmd_eval(group: GroupName, model: &Path, c: &Path) -> CliResult<()> {
    let model = read_model(model, group)?;
    let c = read_c(c)?;
    let rep = model.rep()?;
    let x = rep.invariant_values(&c);
    let coefficients = model.coefficients_at(rep, &x);
    let value = match model.kind {
        ModelKind::Tensor => EvalValue::Tensor(eval_tensor(&model, &c)?),
        ModelKind::Scalar => EvalValue::Psi {
            value: eval_scalar(&model, &c)?,
            stress: stress_from_energy(&model, &c, None)?,
        },
    };
    emit(&EvalOutput {
        group,
        invariants: Invariants {
            labels: &rep.basis.invariant_labels,
            values: x,
        },
        coefficients,
        value,
    })
}

fn describe(m: &CoefficientModel) -> String {
    let kind = match m.kind {
        ModelKind::Tensor => "tensor",
        ModelKind::Scalar => "scalar",
    };
    format!("{kind} degree {}", m.degree)
}

fn cmd_verify(
    group: GroupName,
    model: Option<&Path>,
    trials: usize,
    seed: u64,
    tol: f64,
) -> CliResult<()> {
    if trials == 0 {
        return Err(Failure {
            code: EXIT_USAGE,
            message: "--trials must be positive".into(),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure {
            code: EXIT_USAGE,
            message: "--tol must be positive".into(),
        });
    }
    let cfg = SweepConfig::new(trials, seed, tol);
    let models = match model {
        Some(p) => vec![read_model(p, group)?],
        None => model_library(group),
    };
    let mut reports = vec![];
    for m in &models {
        for mut r in verify_model(m, &cfg)? {
            r.check = format!("{} ({})", r.check, describe(m));
            reports.push(r);
        }
    }
    if model.is_none() {
        reports.push(audit_redundancy(
            group,
            &SweepConfig::new(trials.min(100), seed, tol),
        )?);
    }
    emit(&reports)?;
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.check.as_str())
            .collect();
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("verification failed: {}", failed.join(", ")),
        })
    }
}

#[derive(Serialize)]
struct FitCliOutput {
    #[serde(flatten)]
    fit: FitOutput,
    #[serde(skip_serializing_if = "Option::is_none")]
    holdout: Option<ResidualReport>,
}

fn cmd_fit(
    group: GroupName,
    input: Option<&Path>,
    opts: FitOptions,
    kind: Option<ModelKind>,
    holdout: Option<&Path>,
) -> CliResult<()> {
    let text = read_input(input.unwrap_or(Path::new("-")))?;
    let samples = read_samples(text.as_bytes(), kind)?;
    let result = fit_linear(group, &samples, &opts)?;
    if result.min_norm {
        eprintln!(
            "warning: design is rank deficient (rank {} of {} unknowns, condition {:e}); reporting the minimum-norm solution",
            result.rank, result.unknowns, result.condition
        );
    }
    let holdout = match holdout {
        Some(p) => {
            let set = read_samples(read_input(p)?.as_bytes(), Some(samples.kind))?;
            Some(residual_report(&result, &set)?)
        }
        None => None,
    };
    emit(&FitCliOutput {
        fit: result.output()?,
        holdout,
    })
}

fn cmd_synth(
    group: GroupName,
    model: Option<&Path>,
    kind: ModelKind,
    count: usize,
    seed: u64,
    noise: f64,
) -> CliResult<()> {
    let model = match model {
        Some(p) => read_model(p, group)?,
        None => default_model(group, kind),
    };
    let samples = synthesize(&model, count, seed, noise)?;
    let mut out = io::stdout().lock();
    write_samples(&mut out, &samples)?;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Groups { command } => cmd_groups(command),
        Command::Struct {
            group,
            seeds,
            eps_k,
            cap,
        } => cmd_struct(group, &seeds, eps_k, cap),
        Command::Invariants { group, c, form } => cmd_invariants(group, &c, form),
        Command::Eval { group, model, c } => cmd_eval(group, &model, &c),
        Command::Verify {
            group,
            model,
            trials,
            seed,
            tol,
        } => cmd_verify(group, model.as_deref(), trials, seed, tol),
        Command::Fit {
            group,
            input,
            degree,
            ridge,
            form,
            kind,
            holdout,
        } => cmd_fit(
            group,
            input.as_deref(),
            FitOptions {
                degree,
                ridge,
                form,
            },
            kind,
            holdout.as_deref(),
        ),
        Command::Synth {
            group,
            model,
            kind,
            count,
            seed,
            noise,
        } => cmd_synth(group, model.as_deref(), kind, count, seed, noise),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
