//! Command-line front end.
//!
//! Exit codes: `0` every check passed, `1` a verification failed, `2` usage
//! or configuration error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cylinder::{check_equivalence, trace_word, CylinderState, OpWord, MAX_ORDER};
use crate::dsl::{boson_raising_count, eval, parse, EvalContext, ParseError};
use crate::operator::Operator;
use crate::report::VerificationReport;
use crate::representations::{
    b_op, c_op, number_ops, verify_b_relations, verify_orthofermion_relations, SpaceConfig,
};
use crate::symmetries::{
    degeneracies, guarded_residual, verify_z2, verify_zn, Normalization, Z2Spec, ZnSpec,
    DEFAULT_TOLERANCE,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_CUTOFF: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "orthofermion",
    version,
    about = "Orthofermion matrices, the LIFO cylinder model and topological symmetry checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate an operator expression.
    Eval(EvalArgs),
    /// Energy levels of H with multiplicities.
    Spectrum(SpaceArgs),
    /// Trace the cylinder state machine over a word such as "b+3 b+2 b+1".
    Simulate(SimulateArgs),
    /// Print the c, b, N and NN matrices.
    Repr(ReprArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Ortho,
    Cylinder,
    Z2,
    Zn,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormArg {
    Stated,
    Balanced,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// Orthofermion order.
    #[arg(long = "p")]
    p: usize,
    /// Boson cutoff D (levels 0..D-1).
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    cutoff: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[command(flatten)]
    space: SpaceArgs,
    /// Split index of the Z2 generator; all of 1..p-1 when omitted.
    #[arg(long)]
    r: Option<usize>,
    /// Permutation of 1..p as "2,3,1", or "random".
    #[arg(long)]
    perm: Option<String>,
    /// Seed for `--perm random`; drawn at random (and printed) when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Z2 generator normalization.
    #[arg(long, value_enum, default_value_t = NormArg::Stated)]
    normalization: NormArg,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Longest word enumerated by the cylinder state-machine check.
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    /// Emit one JSON report per line.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Expression to evaluate.
    expr: String,
    /// Compare against a second expression instead of printing the matrix.
    #[arg(long)]
    equals: Option<String>,
    /// Split index binding the atom Q (Z2 generator).
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value_t = NormArg::Stated)]
    normalization: NormArg,
    /// Override the guard band (excluded top boson levels).
    #[arg(long)]
    guard: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long = "p")]
    p: usize,
    /// Tokens b+k (create) / b-k (annihilate), applied right to left.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Initial fill level.
    #[arg(long, default_value_t = 0)]
    init: usize,
}

#[derive(Debug, Args)]
struct ReprArgs {
    #[arg(long = "p")]
    p: usize,
}

/// A failure that maps to an exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match cli.command {
        Command::Verify(a) => verify(a, out, err),
        Command::Eval(a) => eval_cmd(a, out),
        Command::Spectrum(a) => spectrum(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Repr(a) => repr(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn space(args: &SpaceArgs) -> Result<SpaceConfig, Failure> {
    if args.p < 1 {
        return Err(Failure::usage("--p must be at least 1"));
    }
    Ok(SpaceConfig::new(args.p, args.cutoff)?)
}

fn normalization(n: NormArg) -> Normalization {
    match n {
        NormArg::Stated => Normalization::Stated,
        NormArg::Balanced => Normalization::Balanced,
    }
}

fn permutation(
    spec: Option<&str>,
    seed: Option<u64>,
    p: usize,
    err: &mut dyn Write,
) -> Result<Vec<usize>, Failure> {
    match spec {
        None | Some("identity") => Ok((1..=p).collect()),
        Some("random") => {
            let seed = seed.unwrap_or_else(rand::random);
            let _ = writeln!(err, "permutation seed: {seed}");
            let mut perm: Vec<usize> = (1..=p).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Ok(perm)
        }
        Some(list) => list
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::usage(format!("invalid permutation {list:?}"))),
    }
}

fn emit(report: &VerificationReport, json: bool, out: &mut dyn Write) {
    let _ = if json {
        writeln!(out, "{}", report.to_json())
    } else {
        write!(out, "{report}")
    };
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = space(&args.space)?;
    let p = cfg.p();
    let suites: &[Suite] = match args.suite {
        Suite::All => &[Suite::Ortho, Suite::Cylinder, Suite::Z2, Suite::Zn],
        Suite::Ortho => &[Suite::Ortho],
        Suite::Cylinder => &[Suite::Cylinder],
        Suite::Z2 => &[Suite::Z2],
        Suite::Zn => &[Suite::Zn],
    };

    let mut all_pass = true;
    for &suite in suites {
        let mut report = match suite {
            Suite::Ortho => verify_orthofermion_relations(p)?,
            Suite::Cylinder => {
                let mut r = verify_b_relations(p)?;
                if p <= MAX_ORDER {
                    r.merge("", check_equivalence(p, args.max_len)?);
                } else {
                    let _ = writeln!(
                        err,
                        "note: state-machine enumeration skipped (p > {MAX_ORDER})"
                    );
                }
                r
            }
            Suite::Z2 => {
                if p < 2 && args.suite == Suite::All {
                    let _ = writeln!(err, "note: z2 suite skipped (needs p >= 2)");
                    continue;
                }
                let perm = permutation(args.perm.as_deref(), args.seed, p, err)?;
                let splits: Vec<usize> = match args.r {
                    Some(r) => vec![r],
                    None if p >= 2 => (1..p).collect(),
                    None => vec![1],
                };
                let mut merged = VerificationReport::new("z2", p, cfg.cutoff());
                for r in splits {
                    let spec = Z2Spec::with_permutation(cfg, r, perm.clone())?
                        .with_normalization(normalization(args.normalization));
                    merged.merge(&format!("r={r}: "), verify_z2(&spec, args.tol)?);
                }
                merged
            }
            Suite::Zn => verify_zn(&ZnSpec::new(cfg), args.tol)?,
            Suite::All => unreachable!(),
        };
        report.cutoff = cfg.cutoff();
        all_pass &= report.pass;
        emit(&report, args.json, out);
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn parse_or_explain(text: &str) -> Result<crate::dsl::Expr, Failure> {
    parse(text).map_err(|e: ParseError| {
        Failure::usage(format!("{e}\n  {text}\n  {}^", " ".repeat(e.offset)))
    })
}

fn eval_cmd(args: EvalArgs, out: &mut dyn Write) -> Outcome {
    let cfg = space(&args.space)?;
    let mut ctx = EvalContext::new(cfg);
    if let Some(r) = args.r {
        let spec = Z2Spec::new(cfg, r)?.with_normalization(normalization(args.normalization));
        ctx = ctx.with_z2(spec);
    }
    let lhs_expr = parse_or_explain(&args.expr)?;
    let lhs = eval(&lhs_expr, &ctx).map_err(|e| Failure::usage(e.to_string()))?;

    let Some(rhs_text) = args.equals else {
        let _ = write!(out, "{}", format_matrix(&lhs));
        return Ok(EXIT_PASS);
    };
    let rhs_expr = parse_or_explain(&rhs_text)?;
    let rhs = eval(&rhs_expr, &ctx).map_err(|e| Failure::usage(e.to_string()))?;
    let guard = args
        .guard
        .unwrap_or_else(|| boson_raising_count(&lhs_expr).max(boson_raising_count(&rhs_expr)));
    if guard + 1 > cfg.cutoff() {
        return Err(Failure::usage(format!(
            "guard {guard} leaves no boson levels at cutoff {}",
            cfg.cutoff()
        )));
    }
    let residual = guarded_residual(&cfg, &lhs, &rhs, guard)?;
    let pass = residual <= args.tol;
    let _ = writeln!(
        out,
        "residual {residual:.6e} on columns with boson level <= {} (guard {guard}, tolerance {:e}): {}",
        cfg.cutoff() - 1 - guard,
        args.tol,
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn spectrum(args: SpaceArgs, out: &mut dyn Write) -> Outcome {
    let cfg = space(&args)?;
    let _ = writeln!(
        out,
        "# p={} cutoff={} (levels E <= {})",
        cfg.p(),
        cfg.cutoff(),
        cfg.cutoff() as i64 - 2
    );
    let _ = writeln!(out, "{:>10}  {:>12}", "energy", "multiplicity");
    for level in degeneracies(&cfg)? {
        let _ = writeln!(
            out,
            "{:>10}  {:>12}",
            sig12(level.energy),
            level.multiplicity
        );
    }
    Ok(EXIT_PASS)
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Outcome {
    if args.p < 1 {
        return Err(Failure::usage("--p must be at least 1"));
    }
    let word: OpWord = args
        .word
        .parse()
        .map_err(|e: crate::cylinder::TokenParseError| Failure::usage(e.to_string()))?;
    let states = trace_word(args.p, &word, CylinderState::Fill(args.init))?;
    let _ = writeln!(out, "word: {word} (applied right to left)");
    let _ = writeln!(out, "start: {}", states[0]);
    for (tok, pair) in word.tokens().iter().rev().zip(states.windows(2)) {
        let _ = writeln!(out, "{tok}: {} -> {}", pair[0], pair[1]);
    }
    let _ = writeln!(out, "final: {}", states.last().expect("non-empty trace"));
    Ok(EXIT_PASS)
}

fn repr(args: ReprArgs, out: &mut dyn Write) -> Outcome {
    let p = args.p;
    if p < 1 {
        return Err(Failure::usage("--p must be at least 1"));
    }
    for alpha in 1..=p {
        let _ = writeln!(out, "c[{alpha}] =\n{}", format_matrix(&c_op(p, alpha)?));
    }
    for alpha in 1..=p {
        let _ = writeln!(out, "b[{alpha}] =\n{}", format_matrix(&b_op(p, alpha)?));
    }
    let (n, nn) = number_ops(p)?;
    let _ = writeln!(out, "N =\n{}", format_matrix(&n));
    let _ = writeln!(out, "NN =\n{}", format_matrix(&nn));
    Ok(EXIT_PASS)
}

/// `x` rounded to 12 significant digits, printed compactly.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("valid float");
    let magnitude = rounded.abs();
    if (1e-4..1e12).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Row-major dump, entries as `re+imi`.
pub fn format_matrix(op: &Operator) -> String {
    let mut s = String::new();
    for i in 0..op.dim() {
        let row: Vec<String> = (0..op.dim())
            .map(|j| {
                let z = op.get(i, j);
                let sign = if z.im.is_sign_negative() && z.im != 0.0 {
                    '-'
                } else {
                    '+'
                };
                format!("{}{sign}{}i", sig12(z.re), sig12(z.im.abs()))
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
