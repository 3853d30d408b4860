use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use psplit::comparison::{compare, compare_square, ComparisonReport, TheoremId};
use psplit::double::{check_convergence, make_pds, ProperDoubleSplitting};
use psplit::linalg::{eigenvalues, penrose_residuals, pinv};
use psplit::matrix_file::{read_matrix, read_vector, ParseError};
use psplit::solver::{solve_double, solve_single, IterationTrace};
use psplit::splitting::{
    check_projector_identities, check_semimonotone_equivalence, classify_single,
    make_proper_splitting,
};
use psplit::{Error, Matrix, ToleranceConfig, Vector};

const EXIT_PARSE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_INVALID_SPLITTING: u8 = 4;

/// Proper splittings of rectangular matrices: pseudoinverses, spectra,
/// classification, two-step iterations and comparison-theorem checks.
#[derive(Parser)]
#[command(name = "psplit", version)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute slack for entrywise >= 0 tests [default: 1e-10].
    #[arg(long, global = true)]
    tol_nonneg: Option<f64>,
    /// Entrywise tolerance for matrix equalities [default: 1e-10].
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Slack on spectral-radius comparisons [default: 1e-10].
    #[arg(long, global = true)]
    tol_spectral: Option<f64>,
    /// Step and distance tolerance for the iterations [default: 1e-10].
    #[arg(long, global = true)]
    tol_solve: Option<f64>,
    /// Iteration limit [default: 10000].
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Relative singular-value cutoff (default: max(m, n) * machine epsilon).
    #[arg(long, global = true)]
    rank_cutoff: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Moore-Penrose inverse with the residuals of the four Penrose equations.
    Pinv { a: PathBuf },
    /// Eigenvalues, spectral radius and (for nonnegative input) the Perron vector.
    Spectrum { m: PathBuf },
    /// Validate a splitting and report its class and spectral radii.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Run an iteration to the minimum-norm least-squares solution.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Check a comparison theorem on two double splittings of the same A.
    Compare(CompareArgs),
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// A = U - V
    Single(SingleFiles),
    /// A = P - R + S
    Double(DoubleFiles),
}

#[derive(Subcommand)]
enum SolveCmd {
    /// x[k+1] = U^+ V x[k] + U^+ b
    Single {
        #[command(flatten)]
        files: SingleFiles,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        x0: Option<PathBuf>,
        /// Include every iterate in the output.
        #[arg(long)]
        trace: bool,
    },
    /// x[k+1] = P^+ R x[k] - P^+ S x[k-1] + P^+ b
    Double {
        #[command(flatten)]
        files: DoubleFiles,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        x0: Option<PathBuf>,
        #[arg(long)]
        x1: Option<PathBuf>,
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Args)]
struct SingleFiles {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    u: PathBuf,
}

#[derive(Args)]
struct DoubleFiles {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    p: PathBuf,
    #[arg(long)]
    r: PathBuf,
    #[arg(long)]
    s: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(value_enum)]
    theorem: TheoremArg,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    p1: PathBuf,
    #[arg(long)]
    r1: PathBuf,
    #[arg(long)]
    s1: PathBuf,
    #[arg(long)]
    p2: PathBuf,
    #[arg(long)]
    r2: PathBuf,
    #[arg(long)]
    s2: PathBuf,
    /// Use ordinary inverses; A must be square and nonsingular.
    #[arg(long)]
    square_corollary: bool,
    /// Include the input matrices in JSON output.
    #[arg(long)]
    echo_inputs: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    RegularVsWeak,
    WeakVsRegular,
    WeakVsWeak,
}

impl From<TheoremArg> for TheoremId {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::RegularVsWeak => TheoremId::RegularVsWeak,
            TheoremArg::WeakVsRegular => TheoremId::WeakVsRegular,
            TheoremArg::WeakVsWeak => TheoremId::WeakVsWeak,
        }
    }
}

enum Failure {
    Parse(String),
    Lib(Error),
    Io(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Parse(_) | Failure::Io(_) => EXIT_PARSE,
            Failure::Lib(e) => match e {
                Error::NotProper { .. }
                | Error::DecompositionMismatch { .. }
                | Error::DifferentA { .. }
                | Error::NotInvertible(_)
                | Error::HypothesisUnmet(_) => EXIT_INVALID_SPLITTING,
                Error::ShapeMismatch { .. }
                | Error::InvalidShape(_)
                | Error::NotSquare { .. }
                | Error::InvalidTolerance(_) => EXIT_PARSE,
                Error::NonFinite { .. } | Error::DecompositionFailure(_) => EXIT_NUMERICAL,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(m) | Failure::Io(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<(String, Value), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("psplit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = tolerances(&cli.opts)?;
    let (text, value) = match &cli.command {
        Command::Pinv { a } => cmd_pinv(a, &cfg),
        Command::Spectrum { m } => cmd_spectrum(m, &cfg),
        Command::Classify(ClassifyCmd::Single(f)) => cmd_classify_single(f, &cfg),
        Command::Classify(ClassifyCmd::Double(f)) => cmd_classify_double(f, &cfg),
        Command::Solve(SolveCmd::Single {
            files,
            b,
            x0,
            trace,
        }) => cmd_solve_single(files, b, x0.as_deref(), *trace, &cfg),
        Command::Solve(SolveCmd::Double {
            files,
            b,
            x0,
            x1,
            trace,
        }) => cmd_solve_double(files, b, x0.as_deref(), x1.as_deref(), *trace, &cfg),
        Command::Compare(args) => cmd_compare(args, &cfg),
    }?;
    let rendered = match cli.opts.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("finite report values");
            s.push('\n');
            s
        }
    };
    match &cli.opts.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn tolerances(o: &GlobalOpts) -> Result<ToleranceConfig, Failure> {
    let d = ToleranceConfig::default();
    let cfg = ToleranceConfig {
        nonneg_slack: o.tol_nonneg.unwrap_or(d.nonneg_slack),
        rank_rel_cutoff: o.rank_cutoff.or(d.rank_rel_cutoff),
        eq_abs_tol: o.tol_eq.unwrap_or(d.eq_abs_tol),
        spectral_tol: o.tol_spectral.unwrap_or(d.spectral_tol),
        solve_tol: o.tol_solve.unwrap_or(d.solve_tol),
        max_iter: o.max_iter.unwrap_or(d.max_iter),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load_double(f: &DoubleFiles, cfg: &ToleranceConfig) -> Result<ProperDoubleSplitting, Failure> {
    let a = read_matrix(&f.a)?;
    let (p, r, s) = (read_matrix(&f.p)?, read_matrix(&f.r)?, read_matrix(&f.s)?);
    Ok(make_pds(&a, &p, &r, &s, cfg)?)
}

/// Shortest round-trip decimal; exponent form outside `[1e-4, 1e15)`.
fn num(x: f64) -> String {
    let mag = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&mag) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn rows(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(m.row(i))).collect())
}

fn text_matrix(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

fn text_vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| num(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_pinv(path: &Path, cfg: &ToleranceConfig) -> Outcome {
    let a = read_matrix(path)?;
    let x = pinv(&a, cfg)?;
    let res = penrose_residuals(&a, &x);
    let mut text = format!("pinv ({}x{}):\n", x.rows(), x.cols());
    text_matrix(&mut text, &x);
    let _ = writeln!(text, "residual AXA-A: {}", num(res.axa_minus_a));
    let _ = writeln!(text, "residual XAX-X: {}", num(res.xax_minus_x));
    let _ = writeln!(text, "residual (AX)^T-AX: {}", num(res.ax_symmetry));
    let _ = writeln!(text, "residual (XA)^T-XA: {}", num(res.xa_symmetry));
    let value = json!({
        "rows": x.rows(),
        "cols": x.cols(),
        "pinv": rows(&x),
        "residual_axa_minus_a": res.axa_minus_a,
        "residual_xax_minus_x": res.xax_minus_x,
        "residual_ax_symmetry": res.ax_symmetry,
        "residual_xa_symmetry": res.xa_symmetry,
    });
    Ok((text, value))
}

fn cmd_spectrum(path: &Path, cfg: &ToleranceConfig) -> Outcome {
    let m = read_matrix(path)?;
    let s = eigenvalues(&m, cfg)?;
    let mut text = String::from("eigenvalues:\n");
    for z in &s.eigenvalues {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        let _ = writeln!(text, "  {} {sign} {}i", num(z.re), num(z.im.abs()));
    }
    let _ = writeln!(text, "spectral_radius: {}", num(s.spectral_radius));
    if let Some(v) = &s.dominant_vector {
        let _ = writeln!(text, "dominant_vector: {}", text_vector(v));
    }
    Ok((text, serde_json::to_value(&s).expect("serializable")))
}

fn cmd_classify_single(f: &SingleFiles, cfg: &ToleranceConfig) -> Outcome {
    let a = read_matrix(&f.a)?;
    let u = read_matrix(&f.u)?;
    let s = make_proper_splitting(&a, &u, cfg)?;
    let class = classify_single(&s, cfg);
    let proj = check_projector_identities(&s, cfg)?;
    let rho = psplit::linalg::spectral_radius(&s.iteration_matrix(), cfg)?;
    let mut text = format!("class: {class:?}\nrho_iteration: {}\n", num(rho));
    let _ = writeln!(text, "range_residual: {}", num(proj.range_residual));
    let _ = writeln!(text, "null_residual: {}", num(proj.null_residual));
    let mut value = json!({
        "class": class,
        "rho_iteration": rho,
        "range_residual": proj.range_residual,
        "null_residual": proj.null_residual,
    });
    if class.is_weak_regular() {
        let e = check_semimonotone_equivalence(&s, cfg)?;
        let _ = writeln!(text, "pinv_a_nonneg: {}", e.pinv_a_nonneg);
        let _ = writeln!(text, "pinv_a_v_nonneg: {}", e.pinv_a_v_nonneg);
        let _ = writeln!(text, "rho_below_one: {}", e.rho_below_one);
        let _ = writeln!(text, "equivalence_holds: {}", e.all_agree);
        let map = value.as_object_mut().expect("object");
        map.insert("pinv_a_nonneg".into(), json!(e.pinv_a_nonneg));
        map.insert("pinv_a_v_nonneg".into(), json!(e.pinv_a_v_nonneg));
        map.insert("rho_below_one".into(), json!(e.rho_below_one));
        map.insert("equivalence_holds".into(), json!(e.all_agree));
    }
    Ok((text, value))
}

fn cmd_classify_double(f: &DoubleFiles, cfg: &ToleranceConfig) -> Outcome {
    let d = load_double(f, cfg)?;
    let r = check_convergence(&d, cfg)?;
    let mut text = format!("class: {:?}\n", r.class);
    let _ = writeln!(text, "rho_w: {}", num(r.rho_w));
    let _ = writeln!(text, "rho_induced: {}", num(r.rho_induced));
    let bic = r
        .biconditional_holds
        .map_or("n/a".to_string(), |b| b.to_string());
    let _ = writeln!(text, "biconditional_holds: {bic}");
    let _ = writeln!(text, "pinv_a_nonneg: {}", r.pinv_a_nonneg);
    let _ = writeln!(text, "convergence_predicted: {}", r.convergence_predicted);
    let _ = writeln!(text, "convergence_observed: {}", r.convergence_observed);
    Ok((text, serde_json::to_value(&r).expect("serializable")))
}

fn start_vector(path: Option<&Path>, n: usize) -> Result<Vector, Failure> {
    match path {
        Some(p) => Ok(read_vector(p)?),
        None => Ok(Vector::zeros(n)),
    }
}

fn trace_output(t: &IterationTrace, full: bool) -> (String, Value) {
    let status = if t.converged {
        "converged"
    } else if t.diverged {
        "diverged"
    } else {
        "not converged"
    };
    let final_residual = t.final_residual().unwrap_or(0.0);
    let mut text = format!("status: {status}\n");
    let _ = writeln!(text, "iterations_used: {}", t.iterations_used);
    let _ = writeln!(text, "final_residual: {}", num(final_residual));
    let _ = writeln!(
        text,
        "distance_to_reference: {}",
        num(t.distance_to_reference)
    );
    let _ = writeln!(text, "limit: {}", text_vector(&t.limit));
    let _ = writeln!(
        text,
        "reference_solution: {}",
        text_vector(&t.reference_solution)
    );
    if let Some(flag) = t.x0_in_null_v {
        let _ = writeln!(text, "x0_in_null_v: {flag}");
    }
    let mut map = Map::new();
    map.insert("status".into(), json!(status));
    map.insert("converged".into(), json!(t.converged));
    map.insert("diverged".into(), json!(t.diverged));
    map.insert("iterations_used".into(), json!(t.iterations_used));
    map.insert("final_residual".into(), json!(final_residual));
    map.insert(
        "distance_to_reference".into(),
        json!(t.distance_to_reference),
    );
    map.insert("limit".into(), json!(t.limit));
    map.insert("reference_solution".into(), json!(t.reference_solution));
    if let Some(flag) = t.x0_in_null_v {
        map.insert("x0_in_null_v".into(), json!(flag));
    }
    if full {
        text.push_str("iterates:\n");
        for (k, x) in t.iterates.iter().enumerate() {
            let _ = writeln!(text, "  {k}: {}", text_vector(x));
        }
        map.insert("iterates".into(), json!(t.iterates));
        map.insert("residual_history".into(), json!(t.residual_history));
    }
    (text, Value::Object(map))
}

fn cmd_solve_single(
    f: &SingleFiles,
    b: &Path,
    x0: Option<&Path>,
    full: bool,
    cfg: &ToleranceConfig,
) -> Outcome {
    let a = read_matrix(&f.a)?;
    let u = read_matrix(&f.u)?;
    let b = read_vector(b)?;
    let s = make_proper_splitting(&a, &u, cfg)?;
    let x0 = start_vector(x0, a.cols())?;
    Ok(trace_output(&solve_single(&s, &b, &x0, cfg)?, full))
}

fn cmd_solve_double(
    f: &DoubleFiles,
    b: &Path,
    x0: Option<&Path>,
    x1: Option<&Path>,
    full: bool,
    cfg: &ToleranceConfig,
) -> Outcome {
    let d = load_double(f, cfg)?;
    let b = read_vector(b)?;
    let n = d.a().cols();
    let x0 = start_vector(x0, n)?;
    let x1 = match x1 {
        Some(_) => start_vector(x1, n)?,
        None => x0.clone(),
    };
    Ok(trace_output(&solve_double(&d, &b, &x0, &x1, cfg)?, full))
}

fn cmd_compare(args: &CompareArgs, cfg: &ToleranceConfig) -> Outcome {
    let a = read_matrix(&args.a)?;
    let m = |p: &Path| read_matrix(p);
    let (p1, r1, s1) = (m(&args.p1)?, m(&args.r1)?, m(&args.s1)?);
    let (p2, r2, s2) = (m(&args.p2)?, m(&args.r2)?, m(&args.s2)?);
    let d1 = make_pds(&a, &p1, &r1, &s1, cfg)?;
    let d2 = make_pds(&a, &p2, &r2, &s2, cfg)?;
    let theorem = args.theorem.into();
    let report = if args.square_corollary {
        compare_square(theorem, &d1, &d2, cfg)?
    } else {
        compare(theorem, &d1, &d2, cfg)?
    };
    let text = compare_text(&report);
    let mut value = compare_json(&report);
    if args.echo_inputs {
        let inputs = json!({
            "A": rows(&a),
            "P1": rows(&p1), "R1": rows(&r1), "S1": rows(&s1),
            "P2": rows(&p2), "R2": rows(&r2), "S2": rows(&s2),
        });
        value
            .as_object_mut()
            .expect("object")
            .insert("inputs".into(), inputs);
    }
    Ok((text, value))
}

fn compare_text(r: &ComparisonReport) -> String {
    let mut text = format!("theorem: {}\nhypotheses:\n", r.theorem);
    let width = r
        .hypotheses
        .iter()
        .map(|h| h.label.len())
        .max()
        .unwrap_or(0);
    for h in &r.hypotheses {
        let _ = writeln!(
            text,
            "  {:<width$}  {:<5}  residual {}",
            h.label,
            h.holds,
            num(h.residual)
        );
    }
    let _ = writeln!(text, "branch_used: {}", r.branch_used.as_str());
    let _ = writeln!(text, "rho1: {}", num(r.rho1));
    let _ = writeln!(text, "rho2: {}", num(r.rho2));
    let _ = writeln!(text, "conclusion_predicted: {}", r.conclusion_predicted);
    let _ = writeln!(text, "conclusion_observed: {}", r.conclusion_observed);
    if let Some(note) = &r.square_corollary {
        let _ = writeln!(text, "square_corollary: A invertible");
        let _ = writeln!(text, "r1_geq_r2: {}", note.r1_geq_r2);
        let _ = writeln!(text, "branch_i_implied: {}", note.branch_i_implied);
    }
    text
}

/// One key per scalar; hypothesis rows become `<label>` and `<label>_residual`.
fn compare_json(r: &ComparisonReport) -> Value {
    let mut map = Map::new();
    map.insert("theorem".into(), json!(r.theorem.slug()));
    for h in &r.hypotheses {
        map.insert(h.label.into(), json!(h.holds));
        map.insert(format!("{}_residual", h.label), json!(h.residual));
    }
    map.insert("branch_used".into(), json!(r.branch_used.as_str()));
    map.insert("rho1".into(), json!(r.rho1));
    map.insert("rho2".into(), json!(r.rho2));
    map.insert("conclusion_predicted".into(), json!(r.conclusion_predicted));
    map.insert("conclusion_observed".into(), json!(r.conclusion_observed));
    map.insert(
        "square_corollary".into(),
        json!(r.square_corollary.is_some()),
    );
    if let Some(note) = &r.square_corollary {
        map.insert("r1_geq_r2".into(), json!(note.r1_geq_r2));
        map.insert("branch_i_implied".into(), json!(note.branch_i_implied));
    }
    Value::Object(map)
}
