use bfc_core::boolfn::set_max_vars;
use bfc_core::experiments::census;
use bfc_core::fnspec::parse_function_spec;
use bfc_core::measures::{measure_report, parse_measure_list, MeasureReport};
use bfc_core::paperlab::{self, check, verify_all, Verdict};
use bfc_core::poly::MultilinearPolynomial;
use bfc_core::{postsim, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "bfc", version, about = "Exact complexity measures of small Boolean functions")]
struct Cli {
    /// Omit the timestamp field so identical inputs give byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute measures of one function.
    Measure {
        #[arg(long = "func")]
        func: String,
        /// Comma list from deg, ndeg, rdeg, s, bs, cert, signdeg, adeg[:eps], lambda[:tol], dimand, dimor.
        #[arg(long)]
        measures: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one checker, or the whole regression suite.
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        claim: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact rational degree of seeded random functions.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print an explicit representation: andor, ehbar, mtbar, mt or bi.
    Witness {
        #[arg(long)]
        name: String,
        #[arg(long)]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure row of a named family.
    Report {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Core(Error),
    Io(String),
    Verdict(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse(_) | Error::UnknownClaim(_)) => 2,
            Failure::Core(Error::CapExceeded { .. }) => 3,
            Failure::Core(Error::PartialNotSupported(_)) => 4,
            Failure::Verdict(_) => 5,
            Failure::Core(_) | Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(e) => e.clone(),
            Failure::Verdict(k) => format!("{k} verdict(s) failed"),
        }
    }
}

fn stamp(mut v: Value, deterministic: bool) -> Value {
    if !deterministic {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        if let Value::Object(map) = &mut v {
            map.insert("timestamp".into(), json!(secs));
        }
    }
    v
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON output");
    s.push('\n');
    s
}

/// Writes to `out` via a temporary file in the same directory, or to stdout.
fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let io = |e: std::io::Error| Failure::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn report_text(report: &MeasureReport, format: Format, deterministic: bool) -> String {
    match format {
        Format::Json => pretty(&stamp(report.to_json(), deterministic)),
        Format::Csv => report.to_csv(),
    }
}

fn parse_params(params: &str) -> Result<Vec<usize>, Error> {
    params
        .split([',', 'x', ':'])
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("expected integers, got `{params}`"))))
        .collect()
}

fn one_param(name: &str, params: &str) -> Result<usize, Error> {
    match parse_params(params)?[..] {
        [n] => Ok(n),
        _ => Err(Error::Parse(format!("witness {name} takes one parameter, got `{params}`"))),
    }
}

fn rational_json(f: &bfc_core::BooleanFunction, p: &MultilinearPolynomial, q: &MultilinearPolynomial) -> Result<Value, Error> {
    let (sp, sq) = postsim::to_sign_representation(p, q);
    let report = postsim::certify_error(f, &sp, &sq, &Default::default())?;
    Ok(json!({"p": p.to_json(), "q": q.to_json(), "postselection": report.to_json()}))
}

fn witness(name: &str, params: &str) -> Result<Value, Error> {
    Ok(match name {
        "andor" => {
            let [a, b] = parse_params(params)?[..] else {
                return Err(Error::Parse(format!("witness andor takes a,b, got `{params}`")));
            };
            let (p, q) = paperlab::andor_rational_rep(a, b)?;
            json!({"name": "andor", "params": [a, b], "representation": rational_json(&bfc_core::family("andor", &[a, b])?, &p, &q)?})
        }
        "bi" => {
            let n = one_param(name, params)?;
            let (p, q) = paperlab::bi_rational_witness(n)?;
            json!({"name": "bi", "params": [n], "representation": rational_json(&bfc_core::family("bi", &[n])?, &p, &q)?})
        }
        "ehbar" | "mtbar" | "mt" => {
            let n = one_param(name, params)?;
            let p = match name {
                "ehbar" => paperlab::ehbar_witness(n)?,
                "mtbar" => paperlab::mt_complement_witness(n)?,
                _ => paperlab::mt_existence_witness(n)?,
            };
            json!({"name": name, "params": [n], "degree": p.degree(), "p": p.to_json()})
        }
        other => return Err(Error::Parse(format!("unknown witness `{other}` (andor, ehbar, mtbar, mt, bi)"))),
    })
}

fn verdicts_text(vs: &[Verdict]) -> String {
    pretty(&Value::Array(vs.iter().map(Verdict::to_json).collect()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let det = cli.deterministic;
    match cli.command {
        Command::Measure { func, measures, out, format } => {
            let f = parse_function_spec(&func)?;
            let list = parse_measure_list(&measures)?;
            let report = measure_report(&func, &f, &list)?;
            emit(&report_text(&report, format, det), out.as_deref())
        }
        Command::Verify { claim, params, all, max_size, out } => {
            let vs = if all { verify_all(max_size)? } else { vec![check(claim.as_deref().unwrap_or_default(), &params)?] };
            emit(&verdicts_text(&vs), out.as_deref())?;
            let failed = vs.iter().filter(|v| !v.holds).count();
            eprintln!("{} of {} verdicts hold", vs.len() - failed, vs.len());
            if failed > 0 {
                return Err(Failure::Verdict(failed));
            }
            Ok(())
        }
        Command::Census { n, count, seed, out, format } => {
            let r = census(n, count, seed)?;
            let text = match format {
                Format::Json => pretty(&stamp(r.to_json(), det)),
                Format::Csv => r.to_csv(),
            };
            emit(&text, out.as_deref())
        }
        Command::Witness { name, params, out } => emit(&pretty(&stamp(witness(&name, &params)?, det)), out.as_deref()),
        Command::Report { family, n, out, format } => {
            if family != "sep5.2" {
                return Err(Error::Parse(format!("unknown report family `{family}` (sep5.2)")).into());
            }
            let report = paperlab::separation_report(n)?;
            emit(&report_text(&report, format, det), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(cap) = std::env::var("BFC_MAX_N") {
        match cap.trim().parse::<usize>() {
            Ok(cap) => set_max_vars(cap),
            Err(_) => {
                eprintln!("error: BFC_MAX_N must be a non-negative integer, got `{cap}`");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
