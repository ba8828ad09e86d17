use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgraph::census::{
    analyze, census_csv, census_dot, census_json, default_census, parse_census_config, ring_csv, ring_dot,
    ring_json, run_census, AnalysisOptions, CensusEntry, CensusReport, RingReport, RingSpec, Status, THEOREM_IDS,
};
use nilgraph::genus::{DEFAULT_BUDGET_MS, DEFAULT_SEED};
use nilgraph::ring::DEFAULT_MAX_ORDER;
use nilgraph::Exec;

/// Nil-graphs of ideals of finite commutative rings.
#[derive(Parser)]
#[command(name = "nilgraph", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for the embedding search.
    #[arg(long, global = true, env = "NILGRAPH_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Embedding search budget per ring, converted to a fixed step count.
    #[arg(long, global = true, env = "NILGRAPH_BUDGET_MS", default_value_t = DEFAULT_BUDGET_MS)]
    budget_ms: u64,
    /// Largest ring order accepted.
    #[arg(long, global = true, env = "NILGRAPH_MAX_RING_ORDER", default_value_t = DEFAULT_MAX_ORDER)]
    max_ring_order: usize,
    /// Run on one thread.
    #[arg(long, global = true, env = "NILGRAPH_SEQUENTIAL")]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one ring and print a summary (or the JSON report).
    Analyze {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the census and write census.json, census.csv and census.dot.
    Census {
        /// Census file; the shipped census when omitted.
        #[arg(long, env = "NILGRAPH_CONFIG")]
        config: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run the census and list check verdicts; exits non-zero on any failure.
    Verify {
        /// Restrict to one check.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(THEOREM_IDS))]
        theorem: Option<String>,
        #[arg(long, env = "NILGRAPH_CONFIG")]
        config: Option<PathBuf>,
        /// Also list passing and not-applicable verdicts.
        #[arg(long)]
        all: bool,
    },
    /// Export one ring, or a census, as DOT, JSON or CSV.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        /// Ring spec; omit together with --config to export the shipped census.
        spec: Option<String>,
        #[arg(long, conflicts_with = "spec")]
        config: Option<PathBuf>,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
    Csv,
}

impl Global {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            seed: self.seed,
            budget_ms: self.budget_ms,
            max_ring_order: self.max_ring_order,
            exec: if self.sequential { Exec::Sequential } else { Exec::Parallel },
            ..AnalysisOptions::default()
        }
    }
}

fn parse_spec(text: &str) -> Result<RingSpec> {
    text.parse().with_context(|| format!("cannot parse ring spec {text:?}"))
}

fn load_census(config: Option<&Path>) -> Result<Vec<CensusEntry>> {
    match config {
        None => Ok(default_census()),
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse_census_config(&text).with_context(|| format!("in {}", path.display()))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn print_summary(r: &RingReport) {
    println!("{}  |R| = {}", r.label, r.order);
    println!(
        "  ideals {}, |Max| {}, |Min| {}, reduced {}, local {}",
        r.ideal_count, r.max_ideals, r.min_primes, r.is_reduced, r.is_local
    );
    println!("  AG_N: {} vertices, {} edges, degrees {:?}", r.graph.order, r.graph.size, r.graph.degree_histogram);
    println!("  vertices: {}", r.graph.vertices.join(" "));
    let a = &r.independence;
    println!("  alpha: {} strict, {} with R; G_T: {} strict, {} with R", a.strict, a.unit, a.t_strict, a.t_unit);
    println!("  genus: {} (reduction {})", r.genus.verdict, r.reduced_genus);
    for t in &r.theorems {
        let status = match t.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::NotApplicable => "n/a",
        };
        let detail = t.counterexample.as_deref().or(t.reason.as_deref()).unwrap_or("");
        println!("  {status:<4} {:<22} {detail}", t.id);
    }
}

fn verify(census: &CensusReport, theorem: Option<&str>, all: bool) -> bool {
    let mut failed = false;
    for r in &census.rings {
        for t in r.theorems.iter().filter(|t| theorem.is_none_or(|id| t.id == id)) {
            failed |= t.status == Status::Fail;
            if t.status == Status::Fail || all {
                let detail = match t.status {
                    Status::Fail => t.counterexample.clone().unwrap_or_default(),
                    Status::NotApplicable => t.reason.clone().unwrap_or_default(),
                    Status::Pass => format!("{} | {}", t.lhs.as_deref().unwrap_or(""), t.rhs.as_deref().unwrap_or("")),
                };
                println!("{:<6} {:<22} {:<28} {detail}", format!("{:?}", t.status).to_lowercase(), t.id, r.label);
            }
        }
    }
    println!();
    for s in census.summary.iter().filter(|s| theorem.is_none_or(|id| s.id == id)) {
        println!("{:<22} pass {:>4}  fail {:>4}  n/a {:>4}", s.id, s.pass, s.fail, s.not_applicable);
    }
    !failed
}

fn run(cli: Cli) -> Result<ExitCode> {
    let opts = cli.global.options();
    match cli.command {
        Command::Analyze { spec, json } => {
            let report = analyze(&parse_spec(&spec)?, &opts)?;
            if json {
                print!("{}", ring_json(&report)?);
            } else {
                print_summary(&report);
            }
        }
        Command::Census { config, out_dir } => {
            let census = run_census(&load_census(config.as_deref())?, &opts)?;
            fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
            write_file(&out_dir.join("census.json"), &census_json(&census)?)?;
            write_file(&out_dir.join("census.csv"), &census_csv(&census)?)?;
            write_file(&out_dir.join("census.dot"), &census_dot(&census))?;
            let fails = census.failures().len();
            println!("{} rings, {fails} failed checks, written to {}", census.rings.len(), out_dir.display());
        }
        Command::Verify { theorem, config, all } => {
            let census = run_census(&load_census(config.as_deref())?, &opts)?;
            if !verify(&census, theorem.as_deref(), all) {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Export { format, spec, config, out } => {
            let text = match spec {
                Some(spec) => {
                    let r = analyze(&parse_spec(&spec)?, &opts)?;
                    match format {
                        Format::Dot => ring_dot(&r),
                        Format::Json => ring_json(&r)?,
                        Format::Csv => ring_csv(&r)?,
                    }
                }
                None => {
                    let c = run_census(&load_census(config.as_deref())?, &opts)?;
                    match format {
                        Format::Dot => census_dot(&c),
                        Format::Json => census_json(&c)?,
                        Format::Csv => census_csv(&c)?,
                    }
                }
            };
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.to_string().contains("resource limit")) {
                return ExitCode::from(3);
            }
            ExitCode::from(2)
        }
    }
}
