use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tilting_core::input::{parse, Document};
use tilting_core::pipeline::{check_tilting, select_probes, verify_bb, verify_derived, Options, Outcome};
use tilting_core::report::VerificationReport;
use tilting_core::Error;

/// Exact verification of tilting modules and the equivalences they induce.
#[derive(Parser, Debug)]
#[command(name = "tilting", version)]
struct Cli {
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Record wall time per phase in the JSON report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file in the line-oriented text format.
    input: PathBuf,
    /// Coresolution search bound: dim T0 ≤ dim R + k (default dim T).
    #[arg(long, value_name = "K")]
    bound: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the tilting axioms and Gen T = T-perp on the probes.
    CheckTilting {
        #[command(flatten)]
        common: Common,
    },
    /// Verify the module-level equivalence for the first tilting module.
    VerifyBb {
        #[command(flatten)]
        common: Common,
        /// `all` or a comma-separated list of module names.
        #[arg(long, default_value = "all")]
        probes: String,
        /// Number of sampled short exact sequences.
        #[arg(long, default_value_t = 200)]
        sequences: usize,
        /// Number of sampled fraction witnesses.
        #[arg(long, default_value_t = 100)]
        ore: usize,
    },
    /// Verify the derived equivalence on declared and sampled complexes.
    VerifyDerived {
        #[command(flatten)]
        common: Common,
        /// Shifts checked for full faithfulness, as `a..b`.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true, value_parser = parse_window)]
        window: RangeInclusive<i32>,
        /// Number of random complexes.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Number of pairs for full faithfulness.
        #[arg(long, default_value_t = 10)]
        pairs: usize,
    },
    /// Validate a JSON report and print its summary.
    Report {
        /// A report written by `--json`.
        report: PathBuf,
    },
}

fn parse_window(s: &str) -> Result<RangeInclusive<i32>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad lower end {a:?}"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad upper end {b:?}"))?;
    if a > b {
        return Err(format!("empty window {a}..{b}"));
    }
    Ok(a..=b)
}

enum Failure {
    Usage(String),
    Io(String),
}

fn load(path: &Path) -> Result<(Vec<u8>, Document), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Usage(format!("{}: not UTF-8", path.display())))?;
    let doc = parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("{}:{e}", path.display())),
        e => Failure::Usage(format!("{}: {e}", path.display())),
    })?;
    Ok((bytes, doc))
}

fn run(cli: Cli) -> Result<VerificationReport, Failure> {
    let mut opts = Options { seed: cli.seed, ..Options::default() };
    let mut params = BTreeMap::new();
    let (name, input, outcome) = match cli.command {
        Command::Report { report } => {
            let text =
                fs::read_to_string(&report).map_err(|e| Failure::Io(format!("{}: {e}", report.display())))?;
            return VerificationReport::from_json(&text)
                .map_err(|e| Failure::Usage(format!("{}: invalid report: {e}", report.display())));
        }
        Command::CheckTilting { common } => {
            opts.bound = common.bound;
            let (bytes, doc) = load(&common.input)?;
            params.insert("bound".into(), bound_param(common.bound));
            let out = check_tilting(&doc, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
            ("check-tilting", bytes, out)
        }
        Command::VerifyBb { common, probes, sequences, ore } => {
            opts.bound = common.bound;
            opts.ses_samples = sequences;
            opts.ore_samples = ore;
            let (bytes, doc) = load(&common.input)?;
            let names: Option<Vec<String>> = match probes.as_str() {
                "all" => None,
                list => Some(list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
            };
            let selected = select_probes(&doc, names.as_deref()).map_err(|e| Failure::Usage(e.to_string()))?;
            params.insert("bound".into(), bound_param(common.bound));
            params.insert("probes".into(), probes);
            params.insert("sequences".into(), sequences.to_string());
            params.insert("ore".into(), ore.to_string());
            let out = verify_bb(&doc, &selected, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
            ("verify-bb", bytes, out)
        }
        Command::VerifyDerived { common, window, samples, pairs } => {
            opts.bound = common.bound;
            params.insert("window".into(), format!("{}..{}", window.start(), window.end()));
            opts.window = window;
            opts.samples = samples;
            opts.ff_pairs = pairs;
            let (bytes, doc) = load(&common.input)?;
            params.insert("bound".into(), bound_param(common.bound));
            params.insert("samples".into(), samples.to_string());
            params.insert("pairs".into(), pairs.to_string());
            let out = verify_derived(&doc, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
            ("verify-derived", bytes, out)
        }
    };
    let Outcome { checks, timings } = outcome;
    let mut report = VerificationReport::new(name, &input, opts.seed, params, checks);
    if cli.timings {
        let mut t = BTreeMap::new();
        for (phase, d) in timings {
            *t.entry(phase).or_insert(0) += u64::try_from(d.as_micros()).unwrap_or(u64::MAX);
        }
        report.timings_us = Some(t);
    }
    Ok(report)
}

fn bound_param(b: Option<usize>) -> String {
    b.map_or_else(|| "dim T".to_string(), |k| k.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) | Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.human());
    if let Some(path) = json {
        if let Err(e) = fs::write(&path, report.to_json()) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.failed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
