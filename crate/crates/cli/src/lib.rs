//! Command-line front end. [`run`] takes argv and two sinks so it can be
//! driven in-process by tests as well as by the `grassmann` binary.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 evaluation error,
//! 3 self-test or certificate failure.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};
use grassmann_core::lefschetz::{sweep_csv, DEFAULT_M_RANGE};
use grassmann_core::{
    betti_numbers, dual_class_closed, dual_class_recursive, expr, fpp_classification,
    lefschetz_number, nontrivial_intersection_report, render, selftest, FreeClass, RingContext,
};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EVAL: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl From<OutputFormat> for expr::Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => expr::Format::Text,
            OutputFormat::Json => expr::Format::Json,
            OutputFormat::Csv => expr::Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Recursive,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Exact cohomology computations for complex Grassmann manifolds G(k,n)"
)]
pub struct Cli {
    /// Output format. Defaults to json for `obstruct`, csv for `fpp`, text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression in H*(G(k,n); Q).
    Eval {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the dual Chern class cbar_i as a polynomial in c_1..c_k.
    Dual {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Betti numbers of G(k,n) in even degrees 0..2kn.
    Betti {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Lefschetz number of the degree-m Adams endomorphism.
    Lefschetz {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
    },
    /// Fixed point property sweep over 1..=k-max by 1..=n-max.
    Fpp {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        /// Inclusive window of Adams degrees, written LO:HI.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_m_range)]
        m_range: Option<RangeInclusive<i64>>,
    },
    /// Certificate that cbar_n is not a multiple of a rank-k top class.
    Obstruct {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Run the built-in invariant checks.
    Selftest,
}

fn parse_m_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok(lo..=hi)
}

/// Output plus exit code of a successful dispatch; errors carry their own code.
struct Outcome {
    stdout: String,
    code: i32,
}

struct Failure {
    message: String,
    code: i32,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code,
    }
}

fn context(k: u32, n: u32) -> Result<RingContext, Failure> {
    RingContext::new(k as usize, n as usize).map_err(|e| fail(EXIT_USAGE, e.to_string()))
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let fmt = |default: OutputFormat| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Eval { k, n, expr: src } => {
            let ctx = context(*k, *n)?;
            let parsed = expr::parse(src).map_err(|e| {
                fail(
                    EXIT_USAGE,
                    format!("{e}\n  {src}\n  {}^", " ".repeat(e.offset)),
                )
            })?;
            let value = expr::eval(&parsed, ctx).map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
            Ok(Outcome {
                stdout: with_newline(render(&value, fmt(OutputFormat::Text).into())),
                code: EXIT_OK,
            })
        }
        Command::Dual { k, i, method } => Ok(dual(
            *k as usize,
            *i as usize,
            *method,
            fmt(OutputFormat::Text),
        )),
        Command::Betti { k, n } => {
            let ctx = context(*k, *n)?;
            let betti = betti_numbers(ctx);
            let total =
                grassmann_core::partitions::binomial(u64::from(*k) + u64::from(*n), u64::from(*k));
            let stdout = match fmt(OutputFormat::Text) {
                OutputFormat::Text => {
                    let mut s: String = betti
                        .iter()
                        .enumerate()
                        .map(|(i, b)| format!("b{} = {b}\n", 2 * i))
                        .collect();
                    s.push_str(&format!("total = {total}\n"));
                    s
                }
                OutputFormat::Json => with_newline(
                    json!({
                        "k": k,
                        "n": n,
                        "betti": betti.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                        "total": total.to_string(),
                    })
                    .to_string(),
                ),
                OutputFormat::Csv => {
                    let mut s = String::from("degree,betti\n");
                    for (i, b) in betti.iter().enumerate() {
                        s.push_str(&format!("{},{b}\n", 2 * i));
                    }
                    s
                }
            };
            Ok(Outcome {
                stdout,
                code: EXIT_OK,
            })
        }
        Command::Lefschetz { k, n, m } => {
            let ctx = context(*k, *n)?;
            let l = lefschetz_number(*m, ctx);
            let stdout = match fmt(OutputFormat::Text) {
                OutputFormat::Text => format!("{l}\n"),
                OutputFormat::Json => with_newline(
                    json!({"k": k, "n": n, "m": m, "lefschetz": l.to_string()}).to_string(),
                ),
                OutputFormat::Csv => format!("k,n,m,lefschetz\n{k},{n},{m},{l}\n"),
            };
            Ok(Outcome {
                stdout,
                code: EXIT_OK,
            })
        }
        Command::Fpp {
            k_max,
            n_max,
            m_range,
        } => {
            let range = m_range.clone().unwrap_or(DEFAULT_M_RANGE);
            let (k_max, n_max) = (*k_max as usize, *n_max as usize);
            let stdout = match fmt(OutputFormat::Csv) {
                OutputFormat::Csv => sweep_csv(k_max, n_max, range),
                OutputFormat::Json => {
                    let all: Vec<_> = grid(k_max, n_max)
                        .map(|(k, n)| fpp_classification(k, n, range.clone()))
                        .collect();
                    with_newline(serde_json::to_string(&all).expect("verdicts serialize"))
                }
                OutputFormat::Text => grid(k_max, n_max)
                    .map(|(k, n)| {
                        let v = fpp_classification(k, n, range.clone());
                        format!("G({k},{n}): {} [{}]\n", v.status.as_str(), v.range_rule)
                    })
                    .collect(),
            };
            Ok(Outcome {
                stdout,
                code: EXIT_OK,
            })
        }
        Command::Obstruct { k, n } => {
            let cert = nontrivial_intersection_report(*k as usize, *n as usize)
                .map_err(|e| fail(EXIT_EVAL, e.to_string()))?;
            let verified = cert.verify();
            let stdout = match fmt(OutputFormat::Json) {
                OutputFormat::Json => with_newline(cert.to_json().to_string()),
                OutputFormat::Text => format!("{}\n", cert.summary()),
                OutputFormat::Csv => format!(
                    "case,k,n,witness,coefficient,verified\n{},{},{},{},{},{}\n",
                    cert.case,
                    cert.k,
                    cert.n,
                    cert.witness
                        .as_ref()
                        .map(|a| a
                            .entries()
                            .iter()
                            .map(u32::to_string)
                            .collect::<Vec<_>>()
                            .join(" "))
                        .unwrap_or_default(),
                    cert.coefficient
                        .as_ref()
                        .map(grassmann_core::rational::to_compact_string)
                        .unwrap_or_default(),
                    verified.is_ok()
                ),
            };
            match verified {
                Ok(()) => Ok(Outcome {
                    stdout,
                    code: EXIT_OK,
                }),
                Err(e) => Err(fail(
                    EXIT_CHECK,
                    format!("certificate does not verify: {e}\n{stdout}"),
                )),
            }
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let all_passed = results.iter().all(|r| r.passed);
            let stdout = match fmt(OutputFormat::Text) {
                OutputFormat::Text => results
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}] {}: {}\n",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.detail
                        )
                    })
                    .collect(),
                OutputFormat::Json => with_newline(
                    serde_json::Value::Array(
                        results
                            .iter()
                            .map(
                                |r| json!({"name": r.name, "passed": r.passed, "detail": r.detail}),
                            )
                            .collect(),
                    )
                    .to_string(),
                ),
                OutputFormat::Csv => {
                    let mut s = String::from("name,passed,detail\n");
                    for r in &results {
                        s.push_str(&format!(
                            "{},{},{}\n",
                            csv_field(r.name),
                            r.passed,
                            csv_field(&r.detail)
                        ));
                    }
                    s
                }
            };
            Ok(Outcome {
                stdout,
                code: if all_passed { EXIT_OK } else { EXIT_CHECK },
            })
        }
    }
}

fn grid(k_max: usize, n_max: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k_max).flat_map(move |k| (1..=n_max).map(move |n| (k, n)))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn dual(k: usize, i: usize, method: Method, format: OutputFormat) -> Outcome {
    let closed = matches!(method, Method::Closed | Method::Both).then(|| dual_class_closed(i, k));
    let recursive =
        matches!(method, Method::Recursive | Method::Both).then(|| dual_class_recursive(i, k));
    let matched = match (&closed, &recursive) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let rows: Vec<(&str, &FreeClass)> = [
        ("closed", closed.as_ref()),
        ("recursive", recursive.as_ref()),
    ]
    .into_iter()
    .filter_map(|(name, p)| p.map(|p| (name, p)))
    .collect();
    let stdout = match format {
        OutputFormat::Text => {
            let mut s: String = rows
                .iter()
                .map(|(name, p)| format!("{name}: {p}\n"))
                .collect();
            match matched {
                Some(true) => s.push_str("MATCH\n"),
                Some(false) => s.push_str("MISMATCH\n"),
                None => {}
            }
            s
        }
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("k".into(), json!(k));
            obj.insert("i".into(), json!(i));
            for (name, p) in &rows {
                obj.insert((*name).into(), free_terms_json(p));
            }
            if let Some(m) = matched {
                obj.insert("match".into(), json!(m));
            }
            with_newline(serde_json::Value::Object(obj).to_string())
        }
        OutputFormat::Csv => {
            let mut s = String::from("method,alpha,coeff\n");
            for (name, p) in &rows {
                for (alpha, c) in p.terms() {
                    let a: Vec<String> = alpha.entries().iter().map(u32::to_string).collect();
                    s.push_str(&format!(
                        "{name},{},{}\n",
                        a.join(" "),
                        grassmann_core::rational::to_fraction_string(c)
                    ));
                }
            }
            s
        }
    };
    Outcome {
        stdout,
        code: if matched == Some(false) {
            EXIT_CHECK
        } else {
            EXIT_OK
        },
    }
}

fn free_terms_json(p: &FreeClass) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms()
            .map(|(alpha, c)| {
                json!({
                    "alpha": alpha.entries(),
                    "coeff": grassmann_core::rational::to_fraction_string(c),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("grassmann").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn m_range_parsing() {
        assert_eq!(parse_m_range("-5:5").unwrap(), -5..=5);
        assert_eq!(parse_m_range(" 2 : 2 ").unwrap(), 2..=2);
        assert!(parse_m_range("3:1").is_err());
        assert!(parse_m_range("3").is_err());
        assert!(parse_m_range("a:1").is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn dual_both_matches() {
        let (code, out, _) = call(&["dual", "--k", "4", "--i", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "closed: c1^2 - c2\nrecursive: c1^2 - c2\nMATCH\n");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["betti", "--k", "0", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["eval", "--k", "2", "--n", "2", "c1^"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["fpp", "--k-max", "2", "--n-max", "2", "--m-range", "4:1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_exits_zero_on_stdout() {
        let (code, out, err) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
        assert!(err.is_empty());
    }
}
