//! `qladder`: run verification suites, evaluate families, dump measures.
//!
//! Exit codes: 0 when everything passes, 1 when a check fails, 2 for usage or
//! domain errors.

mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qladder::families::{eval_explicit, eval_recurrence, FamilyId, FamilySpec};
use qladder::integrate::{integrate, QuadConfig};
use qladder::measures::{self, Measure};
use qladder::verify::{parse_tolerances, run_suite, CheckId, Selection, SuiteConfig, DEFAULT_QS};
use qladder::{Complex64, Error, EvalPoint, QBase};

#[derive(Parser)]
#[command(name = "qladder", version, about = "q-orthogonal polynomial ladder: checks, evaluation, measures")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run catalog checks over the default parameter grids.
    Suite(SuiteArgs),
    /// Evaluate one family member by recurrence and by explicit form.
    Eval(EvalArgs),
    /// Print a measure's atom or sample table and its total mass.
    Measure(MeasureArgs),
    /// List the check catalog.
    List,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args)]
struct SuiteArgs {
    /// Run every check (the default).
    #[arg(long, conflicts_with_all = ["section", "check"])]
    all: bool,
    /// Only checks grouped under this section number.
    #[arg(long, conflicts_with = "check")]
    section: Option<u8>,
    /// Only these check ids (repeatable).
    #[arg(long)]
    check: Vec<String>,
    /// Bases to run at, comma separated.
    #[arg(long, value_delimiter = ',')]
    q: Vec<f64>,
    /// Tolerance overrides, `ID=tol` pairs separated by commas; `*` matches every id.
    #[arg(long, env = "QLADDER_TOLERANCE")]
    tolerance: Option<String>,
    /// Relative quadrature tolerance.
    #[arg(long, env = "QLADDER_QUAD_EPS")]
    quad_eps: Option<f64>,
    /// Relative tail bound for discrete sums.
    #[arg(long, env = "QLADDER_TAIL_EPS")]
    tail_eps: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for the randomized grid points.
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args)]
struct FamilyParams {
    #[arg(long)]
    q: f64,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Complex parameters are written like `0.3+0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    t1: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    t2: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    t3: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    t4: Option<Complex64>,
}

#[derive(Args)]
struct EvalArgs {
    /// Family name, e.g. continuous-q-hermite, askey-wilson, pastro.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: FamilyParams,
    /// Real variable (line families; also accepted by every family as `x`).
    #[arg(long, allow_hyphen_values = true, group = "point")]
    x: Option<f64>,
    /// `x = cos(theta)`.
    #[arg(long, allow_hyphen_values = true, group = "point")]
    theta: Option<f64>,
    /// `x = sinh(xi)`.
    #[arg(long, allow_hyphen_values = true, group = "point")]
    xi: Option<f64>,
    /// `z = e^{i phase}` for the circle families.
    #[arg(long, allow_hyphen_values = true, group = "point")]
    phase: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct MeasureArgs {
    /// One of: hermite, al-salam-chihara, askey-wilson, carlitz, v-m, v-sigma, v-density,
    /// szego, pastro, qinv-hermite, nu-mu.
    name: String,
    #[command(flatten)]
    params: FamilyParams,
    /// N-extremal parameter `t`.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    /// Rows per branch (or sample count).
    #[arg(long, default_value_t = 200)]
    limit: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

/// Distinguishes usage problems (exit 2) from failed checks (exit 1).
enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| match cli.cmd {
        Cmd::Suite(a) => suite(a),
        Cmd::Eval(a) => eval(a),
        Cmd::Measure(a) => measure(a),
        Cmd::List => list(),
    });
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Checks)) => ExitCode::from(1),
        Ok(Err(Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}

fn suite(a: SuiteArgs) -> Result<(), Failure> {
    let selection = if let Some(s) = a.section {
        Selection::Section(s)
    } else if !a.check.is_empty() {
        Selection::Checks(a.check.iter().map(|c| c.parse::<CheckId>()).collect::<Result<_, _>>()?)
    } else {
        Selection::All
    };
    let mut quad = QuadConfig::default();
    for (value, slot, name) in [(a.quad_eps, &mut quad.eps, "quad-eps"), (a.tail_eps, &mut quad.eps_tail, "tail-eps")] {
        if let Some(v) = value {
            if !(v > 0.0 && v < 1.0) {
                return Err(Failure::Usage(format!("{name} must lie in (0, 1), got {v}")));
            }
            *slot = v;
        }
    }
    let cfg = SuiteConfig {
        selection,
        qs: if a.q.is_empty() { DEFAULT_QS.to_vec() } else { a.q.clone() },
        tolerances: parse_tolerances(a.tolerance.as_deref().unwrap_or(""))?,
        quad,
        seed: a.seed,
    };
    for &q in &cfg.qs {
        QBase::new(q)?;
    }
    let report = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Failure::Usage(e.to_string()))?
            .install(|| run_suite(&cfg))?,
        None => run_suite(&cfg)?,
    };
    for e in &report.errors {
        eprintln!("check error: {e}");
    }
    let text = report::render_results(&report.results, a.format)?;
    emit(&text, a.output.as_ref())?;
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn family_spec(family: FamilyId, p: &FamilyParams) -> Result<FamilySpec, Failure> {
    let base = QBase::new(p.q)?;
    let zero = Complex64::new(0.0, 0.0);
    let t = [p.t1, p.t2, p.t3, p.t4].map(|v| v.unwrap_or(zero));
    let spec = FamilySpec::new(family, base).with_a(p.a.unwrap_or(0.0)).with_t(&t);
    spec.validate()?;
    Ok(spec)
}

fn eval(a: EvalArgs) -> Result<(), Failure> {
    let family: FamilyId = a.family.parse()?;
    let spec = family_spec(family, &a.params)?;
    let point = match (a.x, a.theta, a.xi, a.phase) {
        (Some(x), ..) => match family.natural_point(0.0) {
            EvalPoint::Circle(_) => return Err(Failure::Usage("circle families take --phase".into())),
            _ => EvalPoint::Line(x),
        },
        (_, Some(t), ..) => EvalPoint::Trig(t),
        (_, _, Some(xi), _) => EvalPoint::Hyper(xi),
        (.., Some(ph)) => EvalPoint::Circle(Complex64::from_polar(1.0, ph)),
        _ => return Err(Failure::Usage("one of --x, --theta, --xi, --phase is required".into())),
    };
    point.validate()?;
    let explicit = eval_explicit(&spec, a.n, point)?;
    let recurrence = match eval_recurrence(&spec, a.n, point) {
        Ok(v) => Some(v * qladder::families::normalization_map(&spec, a.n)?),
        Err(Error::NoRecurrence(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let text = report::render_eval(family, a.n, explicit, recurrence, a.format);
    emit(&text, None)
}

fn measure_from(a: &MeasureArgs) -> Result<Measure, Failure> {
    let p = &a.params;
    let base = QBase::new(p.q)?;
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Failure::Usage(format!("--{name} is required")));
    let real = |v: Option<Complex64>, name: &str| -> Result<f64, Failure> {
        let v = v.ok_or_else(|| Failure::Usage(format!("--{name} is required")))?;
        if v.im != 0.0 {
            return Err(Failure::Usage(format!("--{name} must be real for this measure")));
        }
        Ok(v.re)
    };
    Ok(match a.name.as_str() {
        "hermite" => measures::hermite_trig_weight(base),
        "al-salam-chihara" => measures::asc_weight(real(p.t1, "t1")?, real(p.t2, "t2")?, base)?,
        "askey-wilson" => {
            measures::aw_weight([real(p.t1, "t1")?, real(p.t2, "t2")?, real(p.t3, "t3")?, real(p.t4, "t4")?], base)?
        }
        "carlitz" => measures::carlitz_measure(need(p.a, "a")?, base)?,
        "v-m" => measures::m_measure(need(p.a, "a")?, base)?,
        "v-sigma" => measures::sigma_measure(need(p.a, "a")?, base)?,
        "v-density" => measures::nu_density(need(p.a, "a")?, need(a.gamma, "gamma")?, base)?,
        "szego" => measures::circle_weights(base, 0.0, 0.0)?.0,
        "pastro" => measures::circle_weights(base, real(p.t1, "t1")?, real(p.t2, "t2")?)?.1,
        "qinv-hermite" => measures::qinv_hermite_measure(need(a.t, "t")?, base)?,
        "nu-mu" => {
            let mu = measures::qinv_hermite_measure(need(a.t, "t")?, base)?;
            let t1 = p.t1.ok_or_else(|| Failure::Usage("--t1 is required".into()))?;
            let t2 = p.t2.ok_or_else(|| Failure::Usage("--t2 is required".into()))?;
            measures::nu_measure(&mu, t1, t2, base)?
        }
        other => return Err(Failure::Usage(format!("unknown measure {other:?}"))),
    })
}

fn measure(a: MeasureArgs) -> Result<(), Failure> {
    let mu = measure_from(&a)?;
    let total = integrate(|_| Complex64::new(1.0, 0.0), &mu, &QuadConfig::default())?.value;
    let text = report::render_measure(&mu, a.limit, total, a.format)?;
    emit(&text, None)
}

fn list() -> Result<(), Failure> {
    let mut out = String::new();
    for id in CheckId::all() {
        out.push_str(&format!("{:<44} section {}  {}\n", id.id(), id.section(), id.equation_ref()));
    }
    emit(&out, None)
}
