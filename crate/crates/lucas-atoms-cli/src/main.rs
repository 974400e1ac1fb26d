//! Command-line surface for the Lucas atom library.
//!
//! Every mathematical capability is exposed as a subcommand with
//! deterministic text or JSON output.  Exit codes distinguish outcomes so
//! pipelines can branch: 0 success, 1 usage error, 2 mathematical
//! rejection (e.g. a quotient that provably is not a polynomial, with a
//! machine-readable reason), 3 internal consistency failure or a
//! verification suite with failing instances.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use lucas_atoms::arith::totient;
use lucas_atoms::coxeter::{self, CoxeterGroup, Family};
use lucas_atoms::gamma;
use lucas_atoms::lucas::{self, IdentityBounds, IdentityKind};
use lucas_atoms::suites::{self, SuiteCase};
use lucas_atoms::two_square::{self, TwoSquareKind};
use lucas_atoms::{atoms, Context, Error, IntPoly2, QuotientSpec, VarPair};

/// Cache ceiling for atoms and cyclotomic polynomials; the Lucas table
/// keeps its own default.
const CACHE_ENV: &str = "LUCAS_ATOM_CACHE_MAX";

fn context() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| {
        let atom_cap = std::env::var(CACHE_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(lucas_atoms::context::DEFAULT_ATOM_CACHE_MAX);
        Context::with_caps(lucas_atoms::context::DEFAULT_LUCAS_CACHE_MAX, atom_cap)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "lucas-atoms",
    version,
    about = "Exact Lucas polynomials, Lucas atoms, and cyclotomic polynomials",
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Lucas polynomial {n} (zero for n <= 0).
    Lucas {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// The Lucas atom P_n.
    Atom {
        n: u64,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// The cyclotomic polynomial Phi_n(q).
    Cyclotomic { n: u64 },
    /// Gamma expansion and gamma image of a palindromic polynomial in q.
    Gamma { poly: String },
    /// Quotient of Lucas polynomial products through the atom gate.
    Quotient {
        /// Numerator indices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        num: Vec<u64>,
        /// Denominator indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        den: Vec<u64>,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// The Lucanomial {n choose k}, or its m-divisible generalization.
    Lucanomial {
        n: u64,
        k: u64,
        /// Stride m of the m-divisible Lucanomial.
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// Fuss-Catalan analogue for a Coxeter group.
    Catalan {
        /// Group name: A5, B4, D6, E6, E7, E8, F4, H3, H4, or I2:7.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// Rational Catalan analogue for coprime a, b.
    RationalCatalan {
        a: u64,
        b: u64,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// Fuss-Narayana analogue; with --i, the classical A/B/D formulas.
    Narayana {
        /// Group name as in `catalan`.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        k: u64,
        /// Rank index for the classical formulas (types A, B, D only).
        #[arg(long)]
        i: Option<u64>,
        #[command(flatten)]
        eval: EvalOpt,
    },
    /// Reduction of P_{pn} or P_{p^m n} to a smaller atom; --phi checks
    /// the cyclotomic counterpart instead.
    Reduce {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: Option<u32>,
        /// Verify the cyclotomic identity and print its common value.
        #[arg(long)]
        phi: bool,
    },
    /// Two-square decomposition of an atom.
    TwoSquare {
        n: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Lucas)]
        kind: KindArg,
    },
    /// Evaluate a polynomial at an integer point.
    Eval {
        poly: String,
        /// Point "x,y"; y may be omitted for univariate input.
        #[arg(long)]
        at: String,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Lucas,
    Gauss,
}

#[derive(Args)]
struct EvalOpt {
    /// Evaluate the result at an integer point "s,t".
    #[arg(long)]
    eval: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: atoms-product, gamma-roundtrip, gate-oracle, identities,
    /// coxeter, reductions, two-square, mod-evaluations, valuations.
    suite: String,
    /// Index ceiling for sweeps over n.
    #[arg(long)]
    max_n: Option<u64>,
    /// Ceiling for the m parameter of identity sweeps.
    #[arg(long)]
    max_m: Option<u64>,
    /// Prime ceiling for identity sweeps.
    #[arg(long)]
    max_p: Option<u64>,
    /// Ceiling for the Fuss parameter k.
    #[arg(long)]
    max_k: Option<u64>,
    /// Classical rank ceiling for the coxeter sweep.
    #[arg(long)]
    max_rank: Option<u32>,
    /// Dihedral parameter ceiling for the coxeter sweep.
    #[arg(long)]
    max_i2: Option<u32>,
    /// Evaluation-point ceiling |b| for the valuation sweep.
    #[arg(long)]
    max_b: Option<i64>,
    /// Number of random specs for the gate oracle.
    #[arg(long)]
    count: Option<usize>,
    /// Largest index drawn by the gate oracle.
    #[arg(long)]
    max_index: Option<u64>,
    /// Largest multiset size drawn by the gate oracle.
    #[arg(long)]
    max_len: Option<u64>,
    /// Seed for the gate oracle.
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict the identities suite to one identity
    /// (M_PLUS_N, TILE_SQ, MNRR, PN_DECOMP, P2P).
    #[arg(long = "suite", value_name = "IDENTITY")]
    identity: Option<String>,
    /// Print and check a single two-square witness instead of the sweep.
    #[arg(long)]
    n: Option<u64>,
    /// Worker pool size; defaults to serial execution.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    match run(cli.command, format) {
        Ok(code) => code,
        Err(e) => {
            let code = match &e {
                Error::NotPolynomial { .. }
                | Error::NoTwoSquareAnalogue { .. }
                | Error::NotPalindromic
                | Error::Unsupported(_) => 2,
                Error::Internal(_) => 3,
                _ => 1,
            };
            report_error(&e, code, format);
            ExitCode::from(code)
        }
    }
}

fn error_slug(e: &Error) -> &'static str {
    match e {
        Error::NotPolynomial { .. } => "not_polynomial",
        Error::NoTwoSquareAnalogue { .. } => "no_two_square_analogue",
        Error::NotPalindromic => "not_palindromic",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
        Error::Parse { .. } => "parse_error",
        Error::VarMismatch { .. } => "variable_mismatch",
        Error::DivisionByZero => "division_by_zero",
        Error::NotDivisible => "not_divisible",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::NotUnivariate => "not_univariate",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

fn reason_text(e: &Error) -> String {
    match e {
        Error::NotPolynomial { violations } => violations
            .iter()
            .map(|(d, a, b)| format!("a_{} = {} < b_{} = {}", d, a, d, b))
            .collect::<Vec<_>>()
            .join(", "),
        Error::Unsupported(msg) | Error::InvalidArgument(msg) | Error::Internal(msg) => {
            msg.clone()
        }
        other => other.to_string(),
    }
}

fn report_error(e: &Error, code: u8, format: Format) {
    match format {
        Format::Text => {
            if code == 2 {
                // Mathematical rejections go to stdout with a stable,
                // machine-readable reason.
                println!("{}: {}", error_slug(e), reason_text(e));
            } else {
                eprintln!("error: {}", e);
            }
        }
        Format::Json => {
            let value = json!({ "error": error_slug(e), "reason": reason_text(e) });
            println!("{}", value);
        }
    }
}

/// Serialized polynomial: triples `[i, j, "coefficient"]` in canonical
/// order (descending first-variable power, ties ascending second).
fn poly_triples(p: &IntPoly2) -> serde_json::Value {
    let triples: Vec<serde_json::Value> = p
        .sorted_terms()
        .into_iter()
        .map(|(i, j, c)| json!([i, j, c.to_string()]))
        .collect();
    serde_json::Value::Array(triples)
}

fn gamma_json(p: &IntPoly2) -> Result<serde_json::Value, Error> {
    let gv = gamma::gamma_expand(p)?;
    let mut out = Vec::with_capacity(gv.gammas.len());
    for g in &gv.gammas {
        let as_i64: i64 = g.try_into().map_err(|_| {
            Error::Internal("gamma coefficient exceeds the JSON integer range".into())
        })?;
        out.push(serde_json::Value::from(as_i64));
    }
    Ok(serde_json::Value::Array(out))
}

struct PolyOutput {
    poly: IntPoly2,
    n: Option<u64>,
    phi: Option<u64>,
    /// Gamma vector of the matching cyclotomic polynomial, when defined.
    gamma_of: Option<IntPoly2>,
    value: Option<BigInt>,
}

impl PolyOutput {
    fn bare(poly: IntPoly2) -> Self {
        PolyOutput { poly, n: None, phi: None, gamma_of: None, value: None }
    }

    fn emit(self, format: Format) -> Result<ExitCode, Error> {
        match format {
            Format::Text => {
                if let Some(v) = self.value {
                    println!("{}", v);
                } else {
                    println!("{}", self.poly);
                }
            }
            Format::Json => {
                let mut map = serde_json::Map::new();
                if let Some(n) = self.n {
                    map.insert("n".into(), json!(n));
                }
                if let Some(phi) = self.phi {
                    map.insert("phi".into(), json!(phi));
                }
                map.insert("poly".into(), poly_triples(&self.poly));
                if let Some(src) = &self.gamma_of {
                    map.insert("gamma".into(), gamma_json(src)?);
                }
                if let Some(v) = self.value {
                    map.insert("value".into(), json!(v.to_string()));
                }
                println!("{}", serde_json::Value::Object(map));
            }
        }
        Ok(ExitCode::SUCCESS)
    }
}

fn parse_point(text: &str) -> Result<(BigInt, BigInt), Error> {
    let parts: Vec<&str> = text.split(',').collect();
    let parse_one = |s: &str| {
        BigInt::from_str(s.trim()).map_err(|_| {
            Error::InvalidArgument(format!("expected an integer, got '{}'", s))
        })
    };
    match parts.as_slice() {
        [x] => Ok((parse_one(x)?, BigInt::from(0))),
        [x, y] => Ok((parse_one(x)?, parse_one(y)?)),
        _ => Err(Error::InvalidArgument(format!(
            "expected a point 'x,y', got '{}'",
            text
        ))),
    }
}

fn with_eval(mut out: PolyOutput, eval: &EvalOpt) -> Result<PolyOutput, Error> {
    if let Some(at) = &eval.eval {
        let (x, y) = parse_point(at)?;
        out.value = Some(out.poly.evaluate(&x, &y));
    }
    Ok(out)
}

fn run(command: Command, format: Format) -> Result<ExitCode, Error> {
    let ctx = context();
    match command {
        Command::Lucas { n, eval } => {
            let poly = ctx.lucas(n);
            let mut out = PolyOutput::bare(poly);
            out.n = u64::try_from(n).ok();
            with_eval(out, &eval)?.emit(format)
        }
        Command::Atom { n, eval } => {
            let poly = ctx.lucas_atom(n)?;
            let mut out = PolyOutput::bare(poly);
            out.n = Some(n);
            out.phi = Some(totient(n)?);
            if n >= 2 {
                out.gamma_of = Some(ctx.cyclotomic(n)?);
            }
            with_eval(out, &eval)?.emit(format)
        }
        Command::Cyclotomic { n } => {
            let poly = ctx.cyclotomic(n)?;
            let mut out = PolyOutput::bare(poly.clone());
            out.n = Some(n);
            out.phi = Some(totient(n)?);
            if n >= 2 {
                out.gamma_of = Some(poly);
            }
            out.emit(format)
        }
        Command::Gamma { poly } => {
            let p = IntPoly2::parse(&poly, VarPair::Q)?;
            let gv = gamma::gamma_expand(&p)?;
            let image = gamma::gamma_map(&p)?;
            match format {
                Format::Text => {
                    let gammas: Vec<String> =
                        gv.gammas.iter().map(|g| g.to_string()).collect();
                    println!("gamma: [{}]", gammas.join(", "));
                    println!("image: {}", image);
                }
                Format::Json => {
                    let value = json!({
                        "gamma": gamma_json(&p)?,
                        "poly": poly_triples(&image),
                    });
                    println!("{}", value);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient { num, den, eval } => {
            let spec = QuotientSpec::new(num, den)?;
            let poly = atoms::quotient_poly(ctx, &spec)?;
            with_eval(PolyOutput::bare(poly), &eval)?.emit(format)
        }
        Command::Lucanomial { n, k, m, eval } => {
            let poly = lucas::m_divisible_lucanomial(ctx, n, k, m)?;
            with_eval(PolyOutput::bare(poly), &eval)?.emit(format)
        }
        Command::Catalan { group, k, eval } => {
            let group: CoxeterGroup = group.parse()?;
            let poly = coxeter::fuss_catalan(ctx, &group, k)?;
            with_eval(PolyOutput::bare(poly), &eval)?.emit(format)
        }
        Command::RationalCatalan { a, b, eval } => {
            let poly = coxeter::rational_catalan(ctx, a, b)?;
            with_eval(PolyOutput::bare(poly), &eval)?.emit(format)
        }
        Command::Narayana { group, k, i, eval } => {
            let group: CoxeterGroup = group.parse()?;
            let poly = match i {
                None => coxeter::fuss_narayana(ctx, &group, k)?,
                Some(i) => {
                    let (family, n) = match group.family() {
                        // Nar(A_{n-1}, i) is parametrized by n = rank + 1.
                        Family::A => (Family::A, group.rank() as u64 + 1),
                        Family::B => (Family::B, group.rank() as u64),
                        Family::D => (Family::D, group.rank() as u64),
                        other => {
                            return Err(Error::Unsupported(format!(
                                "no product formula is available for family {:?} \
                                 with a free index i; only i = 1 is supported",
                                other
                            )))
                        }
                    };
                    coxeter::narayana_classical(ctx, family, n, i, k)?
                }
            };
            with_eval(PolyOutput::bare(poly), &eval)?.emit(format)
        }
        Command::Reduce { p, n, m, phi } => {
            if phi {
                let poly = lucas_atoms::reduction::phi_atom_corollary(ctx, p, n, m)?;
                PolyOutput::bare(poly).emit(format)
            } else {
                let (poly, target) = match m {
                    None => (lucas_atoms::reduction::reduce_pn(ctx, p, n)?, p * n),
                    Some(m) => (
                        lucas_atoms::reduction::reduce_prime_power(ctx, p, m, n)?,
                        p.pow(m) * n,
                    ),
                };
                let mut out = PolyOutput::bare(poly);
                out.n = Some(target);
                out.phi = Some(totient(target)?);
                out.emit(format)
            }
        }
        Command::TwoSquare { n, kind } => {
            let witness = match kind {
                KindArg::Lucas => two_square::two_square_lucas(ctx, n)?,
                KindArg::Gauss => two_square::two_square_gauss(ctx, n)?,
            };
            emit_witness(&witness, format)
        }
        Command::Eval { poly, at } => {
            let p = IntPoly2::parse_infer(&poly)?;
            let (x, y) = parse_point(&at)?;
            let value = p.evaluate(&x, &y);
            match format {
                Format::Text => println!("{}", value),
                Format::Json => println!("{}", json!({ "value": value.to_string() })),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => run_verify(args, format),
    }
}

fn emit_witness(
    witness: &two_square::TwoSquareWitness,
    format: Format,
) -> Result<ExitCode, Error> {
    let (first_name, second_name, relation) = match witness.kind {
        TwoSquareKind::Lucas => (
            "G",
            "H",
            format!("P_{} = G^2 + {}*t*H^2", witness.target, witness.n),
        ),
        TwoSquareKind::Gauss => (
            "E",
            "F",
            format!("4*P_{} = E^2 - {}*t^2*F^2", witness.target, witness.n),
        ),
    };
    match format {
        Format::Text => {
            println!("{} = {}", first_name, witness.first);
            println!("{} = {}", second_name, witness.second);
            println!("{}", relation);
        }
        Format::Json => {
            let value = json!({
                "n": witness.n,
                "target": witness.target,
                "kind": match witness.kind {
                    TwoSquareKind::Lucas => "lucas",
                    TwoSquareKind::Gauss => "gauss",
                },
                "first": poly_triples(&witness.first),
                "second": poly_triples(&witness.second),
            });
            println!("{}", value);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs, format: Format) -> Result<ExitCode, Error> {
    // Single-witness convenience: `verify two-square --n 5`.
    if args.suite == "two-square" {
        if let Some(n) = args.n {
            let witness = two_square::two_square_lucas(context(), n)?;
            witness.verify(context())?;
            return emit_witness(&witness, format);
        }
    }

    let cases = build_cases(&args)?;
    let instances = cases.len();
    let started = Instant::now();
    let failures = run_cases(cases, args.jobs);
    let elapsed = started.elapsed();

    match format {
        Format::Text => {
            println!("suite: {}", args.suite);
            println!("instances: {}", instances);
            println!("failures: {}", failures.len());
            for (label, detail) in &failures {
                println!("  {}: {}", label, detail);
            }
        }
        Format::Json => {
            let failure_values: Vec<serde_json::Value> = failures
                .iter()
                .map(|(label, detail)| json!({ "instance": label, "detail": detail }))
                .collect();
            let value = json!({
                "suite": args.suite,
                "instances": instances,
                "failures": failure_values,
            });
            println!("{}", value);
        }
    }
    // Timing is informational and must not perturb deterministic output.
    let _ = writeln!(std::io::stderr(), "elapsed: {:.3?}", elapsed);

    if failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn build_cases(args: &VerifyArgs) -> Result<Vec<SuiteCase>, Error> {
    let cases = match args.suite.as_str() {
        "atoms-product" => suites::atoms_product_cases(args.max_n.unwrap_or(200)),
        "gamma-roundtrip" => suites::gamma_roundtrip_cases(args.max_n.unwrap_or(200)),
        "gate-oracle" => suites::gate_oracle_cases(
            args.count.unwrap_or(500),
            args.max_index.unwrap_or(40),
            args.max_len.unwrap_or(6),
            args.seed.unwrap_or(suites::GATE_ORACLE_SEED),
        ),
        "identities" => {
            let only = match &args.identity {
                None => None,
                Some(name) => Some(IdentityKind::parse(name).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown identity '{}'", name))
                })?),
            };
            let bounds = IdentityBounds {
                max_m: args.max_m.unwrap_or(60),
                max_n: args.max_n.unwrap_or(60),
                max_p: args.max_p.unwrap_or(13),
            };
            suites::identity_cases(only, bounds)
        }
        "coxeter" => suites::coxeter_cases(
            args.max_rank.unwrap_or(8),
            args.max_i2.unwrap_or(12),
            args.max_k.unwrap_or(5),
        ),
        "reductions" => {
            suites::reduction_cases(args.max_n.unwrap_or(500), args.max_n.map_or(300, |n| n.min(300)))
        }
        "two-square" => suites::two_square_cases(),
        "mod-evaluations" => suites::mod_evaluation_cases(args.max_n.unwrap_or(500)),
        "valuations" => {
            suites::valuation_cases(args.max_n.unwrap_or(200), args.max_b.unwrap_or(20))
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite '{}'; expected one of {}",
                other,
                suites::SUITE_NAMES.join(", ")
            )))
        }
    };
    Ok(cases)
}

/// Runs the cases, optionally on a worker pool; failures come back in
/// instance order regardless of completion order.
fn run_cases(cases: Vec<SuiteCase>, jobs: Option<usize>) -> Vec<(String, String)> {
    let ctx = context();
    let run_one = |case: &SuiteCase| -> Option<(String, String)> {
        (case.run)(ctx).err().map(|detail| (case.label.clone(), detail))
    };
    match jobs {
        None | Some(0) | Some(1) => cases.iter().filter_map(run_one).collect(),
        Some(jobs) => {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("worker pool");
            pool.install(|| {
                cases
                    .par_iter()
                    .map(run_one)
                    .collect::<Vec<_>>()
                    .into_iter()
                    .flatten()
                    .collect()
            })
        }
    }
}
