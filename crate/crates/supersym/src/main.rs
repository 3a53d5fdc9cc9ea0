use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use supersym::input::{self, Alpha, Input};
use supersym::json::{self as out, Coefficient, SCHEMA};
use supersym::suites::{self, Suite};
use supersym_core::generic::{n_count_series, n_enumerate, NSector};
use supersym_core::grassmann::{extract_all_with, Lift};
use supersym_core::spar::enumerate_sector;
use supersym_core::transforms::Algebra;
use supersym_core::{AbstractPoly, Basis, RatFunc, Rational, Scalar};

#[derive(Parser)]
#[command(name = "supersym", version, about = "Exact symmetric functions in superspace")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Superpartitions of a sector.
    Spar {
        #[arg(value_enum)]
        action: SparAction,
        /// `n,over,under`, or `n,m1,...,mN` with --generic.
        #[arg(long)]
        sector: String,
        /// Superpartitions with N families of anticommuting variables.
        #[arg(long)]
        generic: bool,
    },
    /// Monomial expansion of one basis element.
    Expand {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        spar: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Re-expands a polynomial in another basis.
    Convert {
        /// Basis of the input; omit for explicit input.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
        /// File path, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
        #[arg(long)]
        alpha: Option<String>,
        /// Read explicit input in fewer variables than the longest
        /// superpartition of its sectors needs.
        #[arg(long)]
        minimal_lift: bool,
    },
    /// Scalar product of two polynomials.
    Inner {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Runs a verification suite and reports as JSON.
    Verify {
        suite: String,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        alpha: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SparAction {
    List,
    Count,
}

enum Failure {
    Parse(String),
    Verify(String),
}

fn parse<T>(r: Result<T, String>) -> Result<T, Failure> {
    r.map_err(Failure::Parse)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Spar { action, sector, generic } => spar(action, &sector, generic),
        Cmd::Expand { basis, spar, alpha } => {
            let basis = parse(input::basis(&basis))?;
            let sp = parse(input::superpartition(&spar))?;
            let alpha = alpha_arg(alpha.as_deref())?;
            let f = AbstractPoly::single(basis, sp, Rational::from_int(1));
            Ok(convert(&alpha, &f, Basis::M))
        }
        Cmd::Convert { from, to, input: src, alpha, minimal_lift } => {
            let to = parse(input::basis(&to))?;
            let alpha = alpha_arg(alpha.as_deref())?;
            let text = if src.trim_start().starts_with('{') {
                src.clone()
            } else {
                parse(input::read_source(&src))?
            };
            let f = to_abstract(parse(input::polynomial(&text))?, minimal_lift)?;
            if let Some(from) = from {
                let from = parse(input::basis(&from))?;
                if from != f.basis() {
                    return Err(Failure::Parse(format!(
                        "--from {}: input is in basis {}",
                        from.name(),
                        f.basis().name()
                    )));
                }
            }
            Ok(convert(&alpha, &f, to))
        }
        Cmd::Inner { left, right, alpha } => {
            let l = to_abstract(parse(input::operand(&left))?, false)?;
            let r = to_abstract(parse(input::operand(&right))?, false)?;
            let alpha = alpha_arg(alpha.as_deref())?;
            Ok(inner(&alpha, &l, &r))
        }
        Cmd::Verify { suite, bound, alpha } => {
            let s = Suite::from_name(&suite).ok_or_else(|| Failure::Parse(format!("unknown suite {suite:?}")))?;
            let alpha = alpha.as_deref().map(input::alpha).transpose().map_err(Failure::Parse)?;
            let reports = suites::run(s, bound, alpha.as_ref());
            let text = out::render(&out::suite(s.name(), bound, &reports));
            if reports.iter().all(|r| r.passed()) {
                Ok(text)
            } else {
                Err(Failure::Verify(text))
            }
        }
    }
}

fn spar(action: SparAction, sector: &str, generic: bool) -> Result<String, Failure> {
    let names: Vec<String> = if generic {
        let (n, degrees) = parse(input::generic_sector(sector))?;
        if degrees.is_empty() {
            return Err(Failure::Parse(format!("sector {sector:?}: no fermion types")));
        }
        let s = NSector::new(n, degrees.clone());
        if let SparAction::Count = action {
            let total: u32 = degrees.iter().sum();
            let c = n_count_series(degrees.len() as u32, n, total).get(&s).copied().unwrap_or(0);
            return Ok(format!("{c}\n"));
        }
        n_enumerate(&s).iter().map(|l| l.to_string()).collect()
    } else {
        let s = parse(input::sector(sector))?;
        let all = enumerate_sector(s);
        if let SparAction::Count = action {
            return Ok(format!("{}\n", all.len()));
        }
        all.iter().map(|l| l.to_string()).collect()
    };
    Ok(out::render(&json!({"schema": SCHEMA, "sector": sector, "superpartitions": names})))
}

fn alpha_arg(s: Option<&str>) -> Result<Alpha, Failure> {
    parse(s.map_or(Ok(Alpha::Value(Rational::from_int(1))), input::alpha))
}

fn to_abstract(i: Input, minimal: bool) -> Result<AbstractPoly<Rational>, Failure> {
    match i {
        Input::Abstract(p) => Ok(p),
        Input::Explicit(f) => {
            let lift = if minimal { Lift::Minimal } else { Lift::Strict };
            extract_all_with(&f, lift).map_err(|e| Failure::Parse(format!("explicit input: {e}")))
        }
    }
}

fn lift<F: Scalar>(p: &AbstractPoly<Rational>) -> AbstractPoly<F> {
    p.map_coeffs(|q| F::from_rational(q.clone()))
}

fn convert_with<F: Coefficient>(alg: &Algebra<F>, f: &AbstractPoly<Rational>, to: Basis) -> String {
    out::render(&out::poly(&alg.convert(&lift(f), to)))
}

fn inner_with<F: Coefficient>(alg: &Algebra<F>, l: &AbstractPoly<Rational>, r: &AbstractPoly<Rational>) -> String {
    let v = alg.inner(&lift(l), &lift(r));
    out::render(&json!({"schema": SCHEMA, "value": v.encode()}))
}

/// `f` in basis `to`, over ℚ at a sampled α or over ℚ(α).
fn convert(alpha: &Alpha, f: &AbstractPoly<Rational>, to: Basis) -> String {
    match alpha {
        Alpha::Value(q) => convert_with(&Algebra::new(q.clone()), f, to),
        Alpha::Symbolic => convert_with(&Algebra::new(RatFunc::var()), f, to),
    }
}

fn inner(alpha: &Alpha, l: &AbstractPoly<Rational>, r: &AbstractPoly<Rational>) -> String {
    match alpha {
        Alpha::Value(q) => inner_with(&Algebra::new(q.clone()), l, r),
        Alpha::Symbolic => inner_with(&Algebra::new(RatFunc::var()), l, r),
    }
}
