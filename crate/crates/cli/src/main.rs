use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use eplab::acceleration::compare_expansions;
use eplab::bignum::rational::int;
use eplab::bignum::{rational_to_fixed_ceil, Ball, BigFixed};
use eplab::coincidence::{self, cfrac, linear_combo_scan, parse, registry, relation, verify, VerificationReport};
use eplab::oracle::Constant;
use eplab::render::{render, Format};
use eplab::series::{builtin, convergence_table, partial_sum, terms_needed, BuiltinSeries, SeriesSpec, DEFAULT_MAX_TERMS};
use eplab::stirling::{self, StirlingApprox};
use eplab::{Error, Rational};

const DEFAULT_DIGITS: u32 = 30;

/// Decimal places used for the short `≈` value in one-line summaries.
const SUMMARY_DIGITS: u32 = 4;

#[derive(Parser, Debug)]
#[command(name = "eplab", version, about = "Certified arithmetic on e, π and their near-coincidences")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: Format,

    /// Digits after the decimal point [default: 30; a relation's own default for `verify`].
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Largest number of series terms `--terms auto` may choose.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: u64,

    /// Print only the data, without labels.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate π or e by a series or the reference oracle.
    Compute {
        constant: Target,
        /// Series name (gregory-leibniz, nilakantha, nilakantha-paired, lambda6, zeta8, e-factorial) or `oracle`.
        #[arg(long, default_value = "oracle")]
        method: String,
        /// Number of terms, or `auto` for the fewest that certify the requested digits.
        #[arg(long, default_value = "auto")]
        terms: String,
    },
    /// Convergence table of a built-in series against the oracle.
    Table {
        series: String,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        checkpoints: Vec<u64>,
    },
    /// Verify registry relations.
    Verify {
        /// Relation identifier such as R07.
        id: Option<String>,
        #[arg(long, conflicts_with = "id")]
        all: bool,
    },
    /// Certified continued-fraction expansion of an expression.
    Cfrac {
        expr: String,
        #[arg(long, default_value_t = 7)]
        terms: usize,
    },
    /// Stirling-series approximants.
    Stirling {
        #[arg(long, value_enum)]
        op: StirlingOp,
        #[arg(long, default_value_t = 1)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Scan nπ + me for near-integers.
    Scan {
        #[arg(long, default_value_t = 10)]
        max: i64,
        #[arg(long, default_value = "0.06")]
        threshold: String,
    },
    /// The e and 2π expansions side by side.
    Compare {
        #[arg(long, default_value_t = 10)]
        rows: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Pi,
    E,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StirlingOp {
    /// eⁿ from the factorial series.
    Power,
    /// e as a ratio of consecutive approximants.
    Ratio,
    /// e^{n+1/2} as an exact surd.
    EHalf,
    /// The e⁸ ≈ 96π³ decomposition.
    E8,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Rendered output and whether every reported value was certified.
struct Outcome {
    text: String,
    certified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, certified: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.certified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::Parse { .. } | Error::UnknownSeries(_) | Error::UnknownRelation(_) => 2,
        _ => 1,
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let digits = cli.digits.unwrap_or(DEFAULT_DIGITS);
    match &cli.command {
        Command::Compute { constant, method, terms } => compute(cli, *constant, method, terms, digits),
        Command::Table { series, checkpoints } => {
            let spec = builtin(series)?;
            let reference = spec.constant().oracle(digits)?;
            let rows = convergence_table(&spec, checkpoints, &reference)?;
            Ok(Outcome::ok(render(&rows, cli.format)?))
        }
        Command::Verify { id, all } => verify_cmd(cli, id.as_deref(), *all),
        Command::Cfrac { expr, terms } => {
            let e = parse(expr)?;
            let q = cfrac(&e, *terms, digits)?;
            Ok(Outcome::ok(render_cfrac(cli, &q)?))
        }
        Command::Stirling { op, n, k } => stirling_cmd(cli, *op, *n, *k, digits),
        Command::Scan { max, threshold } => {
            let threshold: BigFixed = threshold.parse()?;
            let rows = linear_combo_scan(*max, digits.min(40), &threshold.to_rational())?;
            Ok(Outcome::ok(render(&rows, cli.format)?))
        }
        Command::Compare { rows } => {
            let table = compare_expansions(*rows, digits)?;
            Ok(Outcome::ok(render(&table, cli.format)?))
        }
    }
}

#[derive(Serialize)]
struct ComputeRow {
    constant: &'static str,
    method: String,
    #[serde(serialize_with = "eplab::render::display_str")]
    digits: u32,
    #[serde(serialize_with = "eplab::render::display_str")]
    terms: u64,
    value: BigFixed,
    bound: BigFixed,
    certified: bool,
}

fn series_for(target: Target, method: &str) -> Result<SeriesSpec, Error> {
    let series: BuiltinSeries = method.parse()?;
    let spec = series.spec();
    let fits = match target {
        Target::E => spec.constant() == Constant::E,
        Target::Pi => spec.constant() != Constant::E,
    };
    if !fits {
        return Err(Error::Argument(format!("series `{method}` does not converge to {}", target_name(target))));
    }
    Ok(spec)
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Pi => "pi",
        Target::E => "e",
    }
}

/// Encloses the target constant given a partial sum of `spec` and its bound.
fn enclose(spec: &SeriesSpec, sum: &Rational, bound: &Rational, w: u32) -> Result<Ball, Error> {
    let ball = Ball::from_rational_with_error(sum, bound, w);
    match spec.constant() {
        Constant::E | Constant::Pi => Ok(ball),
        Constant::TwoPi => Ok(ball.mul_rational(&Rational::new(1.into(), 2.into()))),
        Constant::Pi6 => ball.root(6),
        Constant::Pi8 => ball.root(8),
    }
}

fn compute(cli: &Cli, target: Target, method: &str, terms: &str, digits: u32) -> Result<Outcome, Error> {
    let w = digits + 20;
    let (value, bound, terms_used, certified) = if method.eq_ignore_ascii_case("oracle") {
        let c = match target {
            Target::Pi => Constant::Pi,
            Target::E => Constant::E,
        };
        let v = c.oracle(digits)?;
        let ulp = BigFixed::new(BigInt::from(1), digits);
        (v.value, ulp, 0, true)
    } else {
        let spec = series_for(target, method)?;
        let evaluate = |count: u64| -> Result<(Ball, u64), Error> {
            let sum = partial_sum(&spec, spec.last_index(count))?;
            Ok((enclose(&spec, &sum.value, &sum.bound, w)?, sum.terms_used))
        };
        let (ball, used) = if terms.eq_ignore_ascii_case("auto") {
            auto_terms(&spec, digits, cli.max_terms, evaluate)?
        } else {
            let count: u64 =
                terms.parse().map_err(|_| Error::Argument(format!("--terms expects a count or `auto`, got `{terms}`")))?;
            if count == 0 || count > cli.max_terms {
                return Err(Error::Argument(format!("--terms must be in 1..={}", cli.max_terms)));
            }
            evaluate(count)?
        };
        let truncated = ball.certified_truncation(digits);
        let certified = truncated.is_some();
        let value = truncated.unwrap_or_else(|| ball.mid_fixed().trunc_to(digits));
        (value, ball.rad_fixed(), used, certified)
    };
    let bound = rational_to_fixed_ceil(&bound.to_rational(), digits + 5);
    let row = ComputeRow {
        constant: target_name(target),
        method: method.to_ascii_lowercase(),
        digits,
        terms: terms_used,
        value,
        bound,
        certified,
    };
    let text = match cli.format {
        Format::Text if cli.quiet => format!("{}\n", row.value),
        Format::Text => format!(
            "{} = {}\nmethod: {}\nterms: {}\nbound: {}\ncertified: {}\n",
            row.constant,
            row.value,
            row.method,
            row.terms,
            row.bound,
            if row.certified { "yes" } else { "no" }
        ),
        f => render(&[row], f)?,
    };
    Ok(Outcome { text, certified })
}

/// Fewest terms whose enclosure pins down every printed digit. The tail is
/// first driven below `10^-digits`, then a digit tighter at a time when the
/// enclosure straddles a digit boundary.
fn auto_terms<F>(spec: &SeriesSpec, digits: u32, max_terms: u64, evaluate: F) -> Result<(Ball, u64), Error>
where
    F: Fn(u64) -> Result<(Ball, u64), Error>,
{
    const EXTRA: u32 = 6;
    let mut last = None;
    for extra in 0..=EXTRA {
        let n = match terms_needed(spec, digits + extra, max_terms) {
            Ok(n) => n,
            Err(e) if last.is_none() => return Err(e),
            Err(_) => break,
        };
        let count = n - spec.start() + 1;
        let (ball, used) = evaluate(count)?;
        if ball.certified_truncation(digits).is_some() {
            return Ok((ball, used));
        }
        last = Some((ball, used));
    }
    Ok(last.expect("at least one evaluation"))
}

fn verify_cmd(cli: &Cli, id: Option<&str>, all: bool) -> Result<Outcome, Error> {
    let relations: Vec<_> = match (id, all) {
        (Some(id), false) => vec![relation(id)?],
        (None, true) => registry().iter().collect(),
        _ => return Err(Error::Argument("give a relation id or --all".into())),
    };
    let results: Vec<Result<VerificationReport, Error>> = if all {
        match cli.digits {
            Some(d) => coincidence::verify_all(d),
            None => std::thread::scope(|s| {
                let handles: Vec<_> = relations.iter().map(|r| s.spawn(move || verify(r, r.default_digits))).collect();
                handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
            }),
        }
    } else {
        relations.iter().map(|r| verify(r, cli.digits.unwrap_or(r.default_digits))).collect()
    };
    let mut reports = Vec::new();
    let mut certified = true;
    for (r, rel) in results.into_iter().zip(&relations) {
        match r {
            Ok(rep) => {
                certified &= rep.certified;
                reports.push(rep);
            }
            Err(e) if !all => return Err(e),
            Err(e) => {
                eprintln!("error: {}: {e}", rel.id);
                certified = false;
            }
        }
    }
    Ok(Outcome { text: render(&reports, cli.format)?, certified })
}

#[derive(Serialize)]
struct QuotientRow {
    #[serde(serialize_with = "eplab::render::display_str")]
    index: usize,
    #[serde(serialize_with = "eplab::render::display_str")]
    quotient: BigInt,
}

fn render_cfrac(cli: &Cli, q: &[BigInt]) -> Result<String, Error> {
    match cli.format {
        Format::Text => {
            let words: Vec<String> = q.iter().map(ToString::to_string).collect();
            Ok(format!("{}\n", words.join(" ")))
        }
        f => {
            let rows: Vec<_> = q.iter().enumerate().map(|(index, a)| QuotientRow { index, quotient: a.clone() }).collect();
            render(&rows, f)
        }
    }
}

fn stirling_cmd(cli: &Cli, op: StirlingOp, n: u64, k: u32, digits: u32) -> Result<Outcome, Error> {
    let approx = match op {
        StirlingOp::Power => StirlingApprox::power(n, k, digits)?,
        StirlingOp::Ratio => StirlingApprox::ratio(n, k, digits)?,
        StirlingOp::EHalf => StirlingApprox::half_integer(n, k, digits)?,
        StirlingOp::E8 => {
            let d = stirling::stirling_e8_decomposition(digits)?;
            let text = match cli.format {
                Format::Text if !cli.quiet => format!(
                    "e^8 = 64*pi^3 * {} (gap to 3/2: {})\n64*pi^3 = {}\n96*pi^3 = {}\ne^8 = {}\ne^8/(96*pi^3) = {}\n",
                    d.correction, d.approx_3_over_2_gap, d.base, d.value_96pi3, d.e8_oracle, d.ratio
                ),
                Format::Text => format!("{}\n", d.ratio),
                f => render(&[d], f)?,
            };
            return Ok(Outcome::ok(text));
        }
    };
    let text = match (cli.format, op) {
        (Format::Text, StirlingOp::EHalf) => {
            let square = approx.surd.square();
            let q = square.as_rational().cloned().unwrap_or_else(|| int(0));
            let short = BigFixed::from_rational(&q, SUMMARY_DIGITS);
            if cli.quiet {
                format!("{}\n", approx.surd)
            } else {
                format!("{}; squared = {} ≈ {}\n", approx.surd, q, short)
            }
        }
        (Format::Text, _) if cli.quiet => format!("{}\n", approx.value),
        (Format::Text, _) => format!("{approx}\n"),
        (f, _) => render(&[approx], f)?,
    };
    Ok(Outcome::ok(text))
}
