//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for configuration errors (nothing is
//! written), 1 for any other failure. Failures print one JSON object on
//! stderr.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gainflow::attribution::CountingBasis;
use gainflow::corpus::{CorpusPaths, DocType};
use gainflow::metrics::{SamplingConfig, DEFAULT_SEED};
use gainflow::report::{self, ReportError, RunConfig};
use gainflow::synth::{self, SynthSpec};

#[derive(Parser)]
#[command(
    name = "gainflow",
    version,
    about = "Citation benefit and gain accounting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest and normalize only; print diagnostics as JSON.
    Validate(InputArgs),
    /// Full pipeline; writes the output bundle to --out.
    Run {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generate a synthetic corpus from a JSON spec.
    Synth {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    cited: PathBuf,
    #[arg(long)]
    citing: PathBuf,
    /// JSONL, or CSV with `citing_id,cited_id` when the extension is .csv.
    #[arg(long)]
    links: PathBuf,
    /// Country rules JSON; the built-in rule set is used when omitted.
    #[arg(long)]
    georules: Option<PathBuf>,
    #[arg(long, default_value = "Italy")]
    source: String,
    /// Also write diagnostics.json here (validate only).
    #[arg(long = "diagnostics-out")]
    diagnostics_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Instances,
    Distinct,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    out: PathBuf,
    /// `subject_category,macro_area` CSV.
    #[arg(long = "macro-map")]
    macro_map: Option<PathBuf>,
    /// `country,publications` CSV of external publication counts.
    #[arg(long = "pub-counts")]
    pub_counts: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long = "counting-basis", value_enum, default_value = "instances")]
    counting_basis: Basis,
    /// Comma-separated cited document types kept.
    #[arg(
        long = "doc-types",
        value_delimiter = ',',
        default_value = "article,review,letter,proceedings"
    )]
    doc_types: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long = "sample-size", default_value_t = 100)]
    sample_size: usize,
    #[arg(long = "top-n", default_value_t = 50)]
    top_n: usize,
    /// Additive smoothing for SGSI.
    #[arg(long)]
    smoothing: Option<f64>,
}

fn config(input: &InputArgs, out: PathBuf) -> RunConfig {
    let mut cfg = RunConfig::new(
        CorpusPaths {
            cited: input.cited.clone(),
            citing: input.citing.clone(),
            links: input.links.clone(),
        },
        &input.source,
        out,
    );
    cfg.georules = input.georules.clone();
    cfg
}

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!(
        "{}",
        json!({ "status": "error", "kind": kind, "message": message })
    );
    ExitCode::from(code)
}

fn report_failure(e: ReportError) -> ExitCode {
    fail(e.kind(), &e.to_string(), e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate(input) => {
            let cfg = config(&input, PathBuf::new());
            match report::validate(&cfg) {
                Ok(diag) => {
                    let text = serde_json::to_string_pretty(&diag).expect("serializable");
                    if let Some(p) = &input.diagnostics_out {
                        if let Err(e) = std::fs::write(p, format!("{text}\n")) {
                            return fail("io error", &format!("{}: {e}", p.display()), 1);
                        }
                    }
                    println!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => report_failure(e),
            }
        }
        Command::Run { input, run } => {
            let mut cfg = config(&input, run.out);
            cfg.macro_map = run.macro_map;
            cfg.pub_counts = run.pub_counts;
            cfg.threshold = run.threshold;
            cfg.counting_basis = match run.counting_basis {
                Basis::Instances => CountingBasis::InstitutionInstances,
                Basis::Distinct => CountingBasis::DistinctInstitutions,
            };
            let mut doc_types = BTreeSet::new();
            for t in &run.doc_types {
                let wanted = t.trim().to_ascii_lowercase();
                match DocType::ALL.iter().find(|d| d.as_str() == wanted) {
                    Some(&d) => {
                        doc_types.insert(d);
                    }
                    None => return fail("config error", &format!("unknown document type: {t}"), 2),
                }
            }
            cfg.doc_types = doc_types;
            cfg.sampling = SamplingConfig {
                n_samples: run.samples,
                sample_size: run.sample_size,
                seed: run.seed,
            };
            cfg.top_n = run.top_n;
            cfg.smoothing = run.smoothing;
            match report::run(&cfg) {
                Ok(bundle) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&bundle.summary).expect("serializable")
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => report_failure(e),
            }
        }
        Command::Synth { spec, out } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => return fail("config error", &format!("{}: {e}", spec.display()), 2),
            };
            let spec: SynthSpec = match serde_json::from_str(&text) {
                Ok(s) => s,
                Err(e) => return fail("config error", &format!("synth spec: {e}"), 2),
            };
            let corpus = match synth::generate(&spec) {
                Ok(c) => c,
                Err(e) => return fail("synth error", &e.to_string(), 1),
            };
            if let Err(e) = std::fs::create_dir_all(&out) {
                return fail("io error", &format!("{}: {e}", out.display()), 1);
            }
            match corpus.write_jsonl(&out) {
                Ok(paths) => {
                    println!(
                        "{}",
                        json!({
                            "cited": paths.cited,
                            "citing": paths.citing,
                            "links": paths.links,
                            "cited_records": corpus.cited().len(),
                            "citing_records": corpus.citing().len(),
                            "link_records": corpus.links().len(),
                        })
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail("io error", &e.to_string(), 1),
            }
        }
    }
}
