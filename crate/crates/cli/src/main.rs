//! `sbo`: classify parameters, solve the F-system, emit operators and run
//! the verification batteries.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 parameter out of scope
//! (`m = 0`), 4 verification mismatch, 1 any other failure.

mod grid;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sbo_core::diffops::{compare_kkp, emit_operator, render_json, render_latex, render_text};
use sbo_core::fsystem::GeneratorTriple;
use sbo_core::identities::{appendix_battery, default_mus, operator_battery};
use sbo_core::solver::{brute_force_sol, brute_force_xi, classify, closed_form_solution};
use sbo_core::{Error, GR};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_OUT_OF_SCOPE: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "sbo", version, about = "Symmetry breaking operators from 1-forms on R^3 to C_m on R^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the operator space and which case applies.
    Classify(PointArgs),
    /// Brute-force kernel of the F-system next to the closed-form solution.
    Solve(SolveArgs),
    /// Render the closed-form operator.
    Emit(PointArgs),
    /// Cross-check kernel, closed forms, duality and operators on a grid.
    Verify(VerifyArgs),
    /// Gegenbauer and operator identity batteries.
    Suite(SuiteArgs),
    /// Compare the m = +-1 operators with the 1-form operator on monomials.
    CompareKkp(KkpArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

fn parse_gr(s: &str) -> Result<GR, String> {
    s.parse::<GR>().map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    lambda: GR,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    nu: GR,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    lambda: GR,
    /// `nu - lambda`; alternatively give `--nu`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "nu", required_unless_present = "nu")]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    nu: Option<GR>,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated values and inclusive integer ranges `lo..hi`.
    #[arg(long, allow_hyphen_values = true, default_value = grid::DEFAULT_LAMBDAS)]
    grid_lambda: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0..8")]
    grid_a: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1..5")]
    grid_m: String,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Test mode: perturb one coefficient of L_5 or L_6 (chosen from SBO_SEED).
    #[arg(long, hide = true)]
    fuzz_l: bool,
    #[arg(long, env = "SBO_SEED", default_value_t = 0, hide_env_values = true)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Largest degree `l` in the identity batteries.
    #[arg(long, default_value_t = 12)]
    max_degree: i64,
    /// Largest `k` in the reflection identity.
    #[arg(long, default_value_t = 6)]
    max_k: i64,
    /// Largest degree for the operator identities.
    #[arg(long, default_value_t = 8)]
    max_operator_degree: i64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct KkpArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    lambda: GR,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_gr)]
    nu: GR,
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Failure carrying its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroM => EXIT_OUT_OF_SCOPE,
            Error::Parse(_) => EXIT_PARSE,
            _ => EXIT_FAILURE,
        };
        let message = match e {
            Error::ZeroM => "m = 0 is out of scope: scalar-valued targets are not handled by this tool".into(),
            other => other.to_string(),
        };
        Failure { code, message }
    }
}

fn check_m(m: i64) -> Result<(), Failure> {
    if m == 0 {
        Err(Error::ZeroM.into())
    } else {
        Ok(())
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn cmd_classify(args: &PointArgs) -> Result<(), Failure> {
    check_m(args.m)?;
    let cls = classify(&args.lambda, &args.nu, args.m)?;
    match args.format {
        Format::Text => println!(
            "dimension {} case {} subcase {}",
            cls.dimension,
            cls.case.map_or("-".into(), |c| c.to_string()),
            cls.subcase.map_or("-".into(), |s| s.to_string())
        ),
        _ => print_json(&json!({
            "lambda": args.lambda.to_string(),
            "nu": args.nu.to_string(),
            "m": args.m,
            "dimension": cls.dimension,
            "case": cls.case.map(|c| c.to_string()),
        })),
    }
    Ok(())
}

fn triple_json(g: &GeneratorTriple) -> Value {
    let one = |p: &sbo_core::poly::ParityPoly| json!({"bound": p.bound(), "poly": p.body().render("t")});
    json!({"g_lo": one(&g.g_lo), "g_mid": one(&g.g_mid), "g_hi": one(&g.g_hi)})
}

/// `k` with `closed = k * kernel`, if any.
fn triple_ratio(closed: &GeneratorTriple, kernel: &GeneratorTriple) -> Option<GR> {
    let u = closed.coefficient_vector();
    let v = kernel.coefficient_vector();
    let j = v.iter().position(|x| !x.is_zero())?;
    let k = &u[j] / &v[j];
    u.iter().zip(&v).all(|(x, y)| *x == &k * y).then_some(k)
}

fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    check_m(args.m)?;
    let a = match (&args.a, &args.nu) {
        (Some(a), _) => *a,
        (None, Some(nu)) => (nu - &args.lambda).as_integer().ok_or_else(|| Failure {
            code: EXIT_FAILURE,
            message: "nu - lambda must be an integer".into(),
        })?,
        (None, None) => unreachable!("clap requires one of --a, --nu"),
    };
    let lambda = &args.lambda;
    let nu = lambda + &GR::from_int(a);
    let cls = classify(lambda, &nu, args.m)?;
    let kernel = if args.m > 0 { brute_force_xi(lambda, a, args.m)? } else { brute_force_sol(lambda, a, args.m)? };
    let closed = if cls.dimension == 1 { Some(closed_form_solution(lambda, a, args.m)?) } else { None };
    let scalar = match (&closed, kernel.basis.first()) {
        (Some(c), Some(k)) if kernel.dimension() == 1 => triple_ratio(c, k),
        _ => None,
    };
    let consistent = kernel.dimension() == cls.dimension as usize && (closed.is_none() || scalar.is_some());
    match args.format {
        Format::Text => {
            println!("lambda {lambda} nu {nu} m {} a {a}", args.m);
            println!("dimension {}", kernel.dimension());
            for g in &kernel.basis {
                let [g0, g1, g2] = g.parts();
                println!("kernel ({g0}, {g1}, {g2})");
            }
            match &closed {
                Some(g) => {
                    let [g0, g1, g2] = g.parts();
                    println!("closed form ({g0}, {g1}, {g2})");
                }
                None => println!("closed form n/a"),
            }
            println!("scalar {}", scalar.as_ref().map_or("n/a".into(), GR::to_string));
        }
        _ => print_json(&json!({
            "lambda": lambda.to_string(),
            "nu": nu.to_string(),
            "m": args.m,
            "a": a,
            "dimension": kernel.dimension(),
            "case": cls.case.map(|c| c.to_string()),
            "subcase": cls.subcase.map(|s| s.to_string()),
            "kernel": kernel.basis.iter().map(triple_json).collect::<Vec<_>>(),
            "closed_form": closed.as_ref().map(triple_json),
            "scalar": scalar.as_ref().map(GR::to_string),
            "consistent": consistent,
        })),
    }
    if consistent {
        Ok(())
    } else {
        Err(Failure { code: EXIT_MISMATCH, message: "kernel and closed form disagree".into() })
    }
}

fn cmd_emit(args: &PointArgs) -> Result<(), Failure> {
    check_m(args.m)?;
    let d = emit_operator(&args.lambda, &args.nu, args.m)?;
    match args.format {
        Format::Json => print_json(&render_json(&d)),
        Format::Latex => println!("{}", render_latex(&d)),
        Format::Text => println!("{}", render_text(&d)),
    }
    Ok(())
}

fn cmd_suite(args: &SuiteArgs) -> Result<(), Failure> {
    let mus = default_mus();
    let mut reports = appendix_battery(args.max_degree, &mus, args.max_k);
    reports.extend(operator_battery(args.max_operator_degree, &mus));
    let failed = reports.iter().filter(|r| !r.passed()).count();
    match args.format {
        Format::Text | Format::Latex => {
            for r in &reports {
                match &r.failure {
                    None => println!("pass  {} ({} instances)", r.name, r.checked),
                    Some(f) => println!("FAIL  {} at {f}", r.name),
                }
            }
        }
        Format::Json => print_json(&json!({
            "identities": reports.iter().map(|r| json!({
                "name": r.name, "checked": r.checked, "failure": r.failure,
            })).collect::<Vec<_>>(),
            "failed": failed,
        })),
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure { code: EXIT_MISMATCH, message: format!("{failed} identities failed") })
    }
}

fn cmd_compare_kkp(args: &KkpArgs) -> Result<(), Failure> {
    let r = compare_kkp(&args.lambda, &args.nu, args.max_degree)?;
    match args.format {
        Format::Text | Format::Latex => println!(
            "{} K={} checked={}{}",
            if r.agrees { "agree" } else { "MISMATCH" },
            r.k,
            r.checked,
            r.witness.map_or(String::new(), |(s, e)| format!(" witness=f{}*x^{e:?}", s + 1))
        ),
        Format::Json => print_json(&json!({
            "lambda": args.lambda.to_string(),
            "nu": args.nu.to_string(),
            "agrees": r.agrees,
            "K": r.k.to_string(),
            "checked": r.checked,
            "witness": r.witness.map(|(s, e)| json!({"slot": s + 1, "exponent": e})),
        })),
    }
    if r.agrees {
        Ok(())
    } else {
        Err(Failure { code: EXIT_MISMATCH, message: "operators disagree".into() })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Emit(a) => cmd_emit(a),
        Command::Verify(a) => verify::run(a),
        Command::Suite(a) => cmd_suite(a),
        Command::CompareKkp(a) => cmd_compare_kkp(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sbo: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
