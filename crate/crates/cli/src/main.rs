mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use bredonkit::bredon::ro_graded;
use bredonkit::gcw::{disjoint_basepoint, point_sphere, GcwComplex};
use bredonkit::linalg::Coefficients;
use bredonkit::mackey::fixed_point_mackey;
use bredonkit::obstruction::{certify, ObstructionProblem};
use bredonkit::point::{euler_order_rep, euler_reduced_regular_vanishes, mp_basis, BasisElement, Method};
use bredonkit::reps::{parse_rep, CyclicGroup, RestrictedGrading, VirtualRep};
use bredonkit::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use output::{Document, Format};

#[derive(Parser, Debug)]
#[command(name = "bredonkit", version, about = "Exact RO(C_n)-graded Bredon cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of the cohomology of a point in gradings m + n·xi.
    Point(PointArgs),
    /// One RO-graded group of a complex read from a file.
    Space(SpaceArgs),
    /// Orders of Euler classes.
    Euler(EulerArgs),
    /// Certificate that no equivariant map Conf_p(R^d) -> S(W_p^{d-1}) exists.
    Obstruct(ObstructArgs),
    /// Run the built-in consistency checks.
    Selftest(FormatArg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coeff {
    Z,
    Fp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    A,
    B,
    C,
    All,
}

#[derive(Args, Debug)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long)]
    p: u64,
    #[arg(long = "m-range", default_value = "0:0", allow_hyphen_values = true, value_parser = parse_range)]
    m_range: (i64, i64),
    #[arg(long = "n-range", default_value = "0:0", allow_hyphen_values = true, value_parser = parse_range)]
    n_range: (i64, i64),
    #[arg(long, value_enum, default_value = "fp")]
    coeff: Coeff,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    grading: String,
    #[arg(long, value_enum, default_value = "z")]
    coeff: Coeff,
    /// Prime for `--coeff fp`; defaults to the group order.
    #[arg(long)]
    p: Option<u64>,
    /// Reduced cohomology of the based complex; otherwise of `X_+`.
    #[arg(long)]
    reduced: bool,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct EulerArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, conflicts_with = "reduced_regular", required_unless_present = "reduced_regular")]
    rep: Option<String>,
    #[arg(long = "reduced-regular")]
    reduced_regular: bool,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct ObstructArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u64,
    #[arg(long, conflicts_with = "surrogate")]
    model: Option<PathBuf>,
    #[arg(long)]
    surrogate: Option<u64>,
    #[command(flatten)]
    format: FormatArg,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

/// Failures of the mathematics exit with 1, malformed input with 2.
enum Failure {
    Math(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use bredonkit::gcw::GcwError;
        use bredonkit::reps::RepError;
        match &e {
            Error::Gcw(GcwError::Parse { .. } | GcwError::Io(_) | GcwError::Rep(RepError::Parse { .. }))
            | Error::Rep(RepError::Parse { .. } | RepError::BadOrder(_) | RepError::BadIrrep { .. } | RepError::NotPrime(_)) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Math(e.to_string()),
        }
    }
}

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct PointRow {
    p: u64,
    m: i64,
    n: i64,
    grading: String,
    dimension: usize,
    group: String,
    labels: Vec<String>,
    methods: String,
}

fn point_row(p: u64, g: RestrictedGrading, coeff: Coeff, method: MethodArg) -> Result<PointRow, Failure> {
    let grading = g.to_string();
    if coeff == Coeff::Z {
        if !matches!(method, MethodArg::A | MethodArg::All) {
            return Err(Failure::Usage("integral coefficients are computed by method a only".into()));
        }
        let group = CyclicGroup::new(p).map_err(Error::from)?;
        let z = fixed_point_mackey(Coefficients::Integers, group);
        let r = ro_graded(&point_sphere(group), &z, &VirtualRep::from_restricted(group, g))?;
        return Ok(PointRow {
            p,
            m: g.m,
            n: g.n,
            grading,
            dimension: r.group.free_rank,
            group: r.group.to_string(),
            labels: Vec::new(),
            methods: "a".into(),
        });
    }
    let methods: Vec<Method> = match method {
        MethodArg::A => vec![Method::A],
        MethodArg::B => vec![Method::B],
        MethodArg::C => vec![Method::C],
        MethodArg::All => vec![Method::A, Method::B, Method::C],
    };
    let bases: Vec<Vec<BasisElement>> = methods.iter().map(|&m| mp_basis(p, g, m)).collect::<Result<_, _>>()?;
    if bases.windows(2).any(|w| w[0] != w[1]) {
        return Err(Failure::Math(format!("methods disagree at {grading}: {bases:?}")));
    }
    let labels: Vec<String> = bases[0].iter().map(ToString::to_string).collect();
    Ok(PointRow {
        p,
        m: g.m,
        n: g.n,
        grading,
        dimension: labels.len(),
        group: bredonkit::linalg::GroupPresentation::field(p, labels.len()).to_string(),
        labels,
        methods: methods.iter().map(|m| format!("{m:?}").to_lowercase()).collect::<Vec<_>>().join("+"),
    })
}

fn cmd_point(a: &PointArgs) -> Result<Document, Failure> {
    let gradings: Vec<RestrictedGrading> = (a.m_range.0..=a.m_range.1)
        .flat_map(|m| (a.n_range.0..=a.n_range.1).map(move |n| RestrictedGrading::new(m, n)))
        .collect();
    let rows: Vec<PointRow> = gradings
        .par_iter()
        .map(|&g| point_row(a.p, g, a.coeff, a.method))
        .collect::<Result<_, _>>()?;
    let mut doc = Document::table(command_line(), vec!["p", "m", "n", "grading", "dimension", "group", "labels", "methods"]);
    rows.iter().for_each(|r| doc.push(r));
    Ok(doc)
}

#[derive(Serialize)]
struct SpaceRow {
    model: String,
    grading: String,
    canonical_grading: String,
    coefficients: String,
    reduced: bool,
    rule: String,
    degree: i64,
    group: String,
}

fn load(path: &PathBuf) -> Result<GcwComplex, Failure> {
    Ok(GcwComplex::from_path(path).map_err(Error::from)?)
}

fn cmd_space(a: &SpaceArgs) -> Result<Document, Failure> {
    let x = load(&a.model)?;
    let group = x.group();
    let coefficients = match (a.coeff, a.p) {
        (Coeff::Z, None) => Coefficients::Integers,
        (Coeff::Z, Some(_)) => return Err(Failure::Usage("--p only applies to --coeff fp".into())),
        (Coeff::Fp, p) => {
            let p = p.unwrap_or(group.order());
            if !bredonkit::reps::is_prime(p) {
                return Err(Failure::Usage(format!("{p} is not prime; pass --p")));
            }
            Coefficients::Field(p)
        }
    };
    let alpha = parse_rep(group, &a.grading).map_err(Error::from)?;
    let based = if a.reduced { x.clone() } else { disjoint_basepoint(&x) };
    let m = fixed_point_mackey(coefficients, group);
    let r = ro_graded(&based, &m, &alpha)?;
    let rule = serde_json::to_value(&r.reduction).expect("reductions serialize")["rule"].as_str().unwrap_or("").to_string();
    let row = SpaceRow {
        model: a.model.display().to_string(),
        grading: alpha.to_string(),
        canonical_grading: r.grading.to_string(),
        coefficients: match coefficients {
            Coefficients::Integers => "Z".into(),
            Coefficients::Field(p) => format!("F_{p}"),
        },
        reduced: a.reduced,
        rule,
        degree: r.degree(),
        group: r.group.to_string(),
    };
    let mut doc = Document::table(command_line(), vec!["model", "grading", "canonical_grading", "coefficients", "reduced", "rule", "degree", "group"]);
    doc.push(&row);
    Ok(doc)
}

fn cmd_euler(a: &EulerArgs) -> Result<Document, Failure> {
    let group = CyclicGroup::new(a.n).map_err(Error::from)?;
    if a.reduced_regular {
        let r = euler_reduced_regular_vanishes(group)?;
        let mut doc = Document::table(
            command_line(),
            vec!["n", "vanishes", "order", "witness_primes", "witness_reps", "witness_orders"],
        );
        let w = r.witness.as_ref();
        doc.push(&serde_json::json!({
            "n": r.n,
            "vanishes": r.vanishes,
            "order": r.order,
            "witness_primes": w.map(|w| vec![w.primes.0, w.primes.1]),
            "witness_reps": w.map(|w| vec![w.subrepresentations.0.clone(), w.subrepresentations.1.clone()]),
            "witness_orders": w.map(|w| vec![w.orders.0, w.orders.1]),
        }));
        return Ok(doc);
    }
    let rep = parse_rep(group, a.rep.as_deref().expect("clap requires --rep")).map_err(Error::from)?;
    if !rep.is_actual() || rep.is_zero() {
        return Err(Failure::Usage(format!("{rep} is not a nonzero actual representation")));
    }
    let order = euler_order_rep(&rep)?;
    let mut doc = Document::table(command_line(), vec!["n", "rep", "order"]);
    doc.push(&serde_json::json!({
        "n": a.n,
        "rep": rep.to_string(),
        "order": order.map_or("infinite".to_string(), |o| o.to_string()),
    }));
    Ok(doc)
}

fn cmd_obstruct(a: &ObstructArgs) -> Result<Document, Failure> {
    let problem = match (&a.model, a.surrogate) {
        (Some(path), _) => {
            let x = load(path)?;
            ObstructionProblem::user(a.p, a.d, &x, format!("{} models Conf_{}(R^{})", path.display(), a.p, a.d))?
        }
        (None, Some(m)) => ObstructionProblem::surrogate(a.p, a.d, m)?,
        (None, None) => ObstructionProblem::new(a.p, a.d)?,
    };
    let cert = certify(&problem)?;
    let mut doc = Document::table(
        command_line(),
        vec!["p", "d", "source", "target_grading", "target_group", "witness_grading", "witness_nonzero", "rechecked", "assumptions"],
    );
    doc.push(&serde_json::json!({
        "p": a.p,
        "d": a.d,
        "source": serde_json::to_value(&problem.source).unwrap()["kind"],
        "target_grading": cert.target_record.grading,
        "target_group": cert.target_record.group.to_string(),
        "witness_grading": cert.witness_record.class.grading.to_string(),
        "witness_nonzero": !cert.witness_record.class.is_zero(),
        "rechecked": cert.rechecked,
        "assumptions": cert.assumptions,
    }));
    doc.payload = Some(serde_json::to_value(&cert).expect("certificates serialize"));
    Ok(doc)
}

fn configure_threads() {
    if let Some(n) = std::env::var("BREDONKIT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let (result, format) = match &cli.command {
        Command::Point(a) => (cmd_point(a), a.format.format),
        Command::Space(a) => (cmd_space(a), a.format.format),
        Command::Euler(a) => (cmd_euler(a), a.format.format),
        Command::Obstruct(a) => (cmd_obstruct(a), a.format.format),
        Command::Selftest(f) => {
            let (doc, ok) = selftest::run(command_line());
            print!("{}", doc.render(f.format));
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match result {
        Ok(doc) => {
            print!("{}", doc.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
