use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qcode_core::jchar::{spectrum_bruteforce, summarize_scanned};
use qcode_core::qc64::{self, AnalyzeOptions, Criterion, Method};
use qcode_core::{
    build_design, report, verify, BinaryDesign, Error, FrequencyVector, GeneratorSpec,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qcode",
    version,
    about = "Quaternary-code fractional factorial designs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Theory,
    Bruteforce,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Theory => Method::Theory,
            MethodArg::Bruteforce => Method::Bruteforce,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    MaxResolution,
    Gma,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::MaxResolution => Criterion::MaxResolution,
            CriterionArg::Gma => Criterion::Gma,
        }
    }
}

#[derive(clap::Args)]
struct Out {
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ±1 design matrix of a generator file.
    Construct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Word spectrum, wordlength pattern and resolution of a generator or design file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Longest word scanned by the brute-force method.
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        force_budget: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Print the k- and a-equation matrices.
    Matrices {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Regenerate the reference matrices and examples and diff them.
    Verify {
        /// 1, 2 or 3; all three when omitted.
        #[arg(long)]
        p: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Rank all frequency vectors with n rows.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value = "max-resolution")]
        criterion: CriterionArg,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long)]
        force_budget: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Periodic extension of a p = 3 frequency vector.
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: u64,
        #[command(flatten)]
        out: Out,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Out, json: Value, text: impl FnOnce() -> String) -> Result<()> {
    let mut body = match out.format {
        Format::Json => serde_json::to_string_pretty(&json)?,
        Format::Text => text(),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &out.output {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => Ok(io::stdout().write_all(body.as_bytes())?),
    }
}

fn design_report(d: &BinaryDesign, max_length: Option<usize>, force: bool) -> Result<Value> {
    let m = d.factors();
    let max_len = max_length.unwrap_or(m).min(m);
    let spec = spectrum_bruteforce(d, max_len, force)?;
    let summary = summarize_scanned(&spec, m, max_len);
    let mut v = json!({
        "runs": d.runs(),
        "factors": m,
        "method": "bruteforce",
        "spectrum": report::spectrum_json(&spec),
    });
    if let (Value::Object(obj), Value::Object(s)) = (&mut v, report::summary_json(&summary)) {
        obj.extend(s);
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { input, output } => {
            let g = GeneratorSpec::from_json(&read(&input)?)
                .with_context(|| format!("parsing {}", input.display()))?;
            let d = build_design(&g)?;
            match output {
                Some(p) => {
                    let file = fs::File::create(&p)
                        .with_context(|| format!("creating {}", p.display()))?;
                    d.write_text(io::BufWriter::new(file))?;
                    println!("runs={} factors={}", d.runs(), d.factors());
                }
                None => d.write_text(io::stdout().lock())?,
            }
        }
        Command::Analyze {
            input,
            method,
            max_length,
            force_budget,
            out,
        } => {
            let text = read(&input)?;
            if text.trim_start().starts_with("runs=") {
                let d = BinaryDesign::read_text(&text)
                    .with_context(|| format!("parsing {}", input.display()))?;
                let v = design_report(&d, max_length, force_budget)?;
                let pretty = serde_json::to_string_pretty(&v)?;
                emit(&out, v, || pretty)?;
            } else {
                let g = GeneratorSpec::from_json(&text)
                    .with_context(|| format!("parsing {}", input.display()))?;
                let opts = AnalyzeOptions {
                    max_len: max_length,
                    force: force_budget,
                };
                let r = qc64::analyze(&g, method.into(), &opts).context("analyze")?;
                emit(&out, report::report_json(&r), || report::report_text(&r))?;
            }
        }
        Command::Matrices { p, out } => {
            let sys = qc64::system(p)?;
            emit(&out, report::system_json(sys), || report::system_text(sys))?;
        }
        Command::Verify { p, out } => {
            let ps = match p {
                Some(p) => vec![p],
                None => vec![1, 2, 3],
            };
            let reports = ps
                .into_iter()
                .map(verify::verify)
                .collect::<qcode_core::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.passed());
            let json = Value::Array(reports.iter().map(report::verify_json).collect());
            emit(&out, json, || {
                reports.iter().map(report::verify_text).collect()
            })?;
            if !ok {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
        Command::Search {
            n,
            p,
            criterion,
            top,
            force_budget,
            out,
        } => {
            let hits = qc64::search(n, p, criterion.into(), top, force_budget).context("search")?;
            emit(&out, report::search_json(&hits), || {
                report::search_text(&hits)
            })?;
        }
        Command::Extend { input, t, out } => {
            let f = FrequencyVector::from_json(&read(&input)?)
                .with_context(|| format!("parsing {}", input.display()))?;
            let fam = qc64::periodic_extend(&f, t).context("extend")?;
            emit(&out, report::family_json(&fam), || {
                report::family_text(&fam)
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Budget { .. }) => EXIT_GUARD,
        Some(Error::Mismatch(_)) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
