//! Command-line front end: fixture validation, radical/prime/rank reports,
//! the check registry, and open-question searches.  JSON goes to stdout
//! (and optionally to --json-out); a short human summary goes to stderr.
//! Exit codes: 0 pass/reported, 1 fail, 2 usage or schema error, 3 cap or
//! budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use tpsa::harness::cache::Cache;
use tpsa::harness::checks::{
    primes_report, radicals_report, run_all, run_check, CheckContext, CheckParams,
};
use tpsa::harness::fixture::{load_fixture, Fixture};
use tpsa::harness::search::search_open_question;
use tpsa::harness::emit_report;
use tpsa::paction::{check_axioms, TwistedPartialAction};
use tpsa::report::{Status, VerificationReport, SCHEMA_VERSION};
use tpsa::{Error, Result};

#[derive(Parser)]
#[command(name = "tpsa", version, about = "Twisted partial skew power-series rings: exact checks on finite fixtures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this file
    #[arg(long, global = true, value_name = "PATH")]
    json_out: Option<PathBuf>,
    /// Directory for content-addressed result caching
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,
    /// Disable the cache even if --cache-dir is given
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum RingChoice {
    Base,
    Power,
    Laurent,
}

#[derive(Subcommand)]
enum Command {
    /// Check the partial-action axioms of a fixture
    Validate { fixture: PathBuf },
    /// Prime radical and alpha-radicals of the base, with series-ring radical formulas
    Radicals { fixture: PathBuf },
    /// Prime ideals of the base or a materialized series ring
    Primes {
        fixture: PathBuf,
        #[arg(long, value_enum, default_value = "base")]
        ring: RingChoice,
    },
    /// Uniform (Goldie) rank of the base vs its series rings
    Rank { fixture: PathBuf },
    /// Run one registered check id, or `all` compatible checks
    Verify {
        check_id: String,
        fixture: PathBuf,
        /// Truncation order for sampled series arithmetic
        #[arg(long)]
        truncation: Option<i64>,
        /// Sample count for property-style items
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Scan generated fixtures for witnesses to an open question
    Search {
        question_id: String,
        /// Fixture budget for the scan
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<(Fixture, Arc<TwistedPartialAction>)> {
    let fixture = load_fixture(path)?;
    let act = fixture.to_action()?;
    Ok((fixture, act))
}

fn status_code(status: Status) -> ExitCode {
    match status {
        Status::Pass | Status::Reported => ExitCode::from(0),
        _ => ExitCode::from(1),
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<()> {
    let text = emit_report(value, cli.json_out.as_deref())?;
    print!("{text}");
    Ok(())
}

fn summarize(rep: &VerificationReport) {
    eprintln!(
        "{} on {}: {:?} ({} items, {} witnesses)",
        rep.check_id,
        rep.fixture,
        rep.status,
        rep.items.len(),
        rep.witnesses.len()
    );
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cache = Cache::new(cli.cache_dir.clone(), !cli.no_cache);
    match &cli.command {
        Command::Validate { fixture } => {
            let (f, act) = load(fixture)?;
            let mut rep = check_axioms(&act);
            rep.fixture = f.name.clone();
            emit(cli, &serde_json::to_value(&rep).expect("report serializes"))?;
            summarize(&rep);
            Ok(status_code(rep.status))
        }
        Command::Radicals { fixture } => {
            let (f, act) = load(fixture)?;
            let key = f.content_hash();
            let ctx = CheckContext {
                fixture_name: &f.name,
                fixture_key: &key,
                cache: &cache,
                params: CheckParams::default(),
            };
            let rep = radicals_report(&act, &ctx)?;
            emit(cli, &serde_json::to_value(&rep).expect("report serializes"))?;
            summarize(&rep);
            Ok(status_code(rep.status))
        }
        Command::Primes { fixture, ring } => {
            let (f, act) = load(fixture)?;
            let key = f.content_hash();
            let ctx = CheckContext {
                fixture_name: &f.name,
                fixture_key: &key,
                cache: &cache,
                params: CheckParams::default(),
            };
            let which = match ring {
                RingChoice::Base => "base",
                RingChoice::Power => "power",
                RingChoice::Laurent => "laurent",
            };
            let rep = primes_report(&act, &ctx, which)?;
            emit(cli, &serde_json::to_value(&rep).expect("report serializes"))?;
            summarize(&rep);
            Ok(status_code(rep.status))
        }
        Command::Rank { fixture } => {
            let (f, act) = load(fixture)?;
            let key = f.content_hash();
            let ctx = CheckContext {
                fixture_name: &f.name,
                fixture_key: &key,
                cache: &cache,
                params: CheckParams::default(),
            };
            let mut rep = run_check("RANK-3.3", &act, &ctx)?;
            rep.check_id = "rank".to_string();
            emit(cli, &serde_json::to_value(&rep).expect("report serializes"))?;
            summarize(&rep);
            Ok(status_code(rep.status))
        }
        Command::Verify { check_id, fixture, truncation, samples, seed } => {
            let (f, act) = load(fixture)?;
            let key = f.content_hash();
            let mut params = CheckParams::default();
            if let Some(n) = truncation {
                params.truncation = *n;
            }
            if let Some(k) = samples {
                params.samples = *k;
            }
            if let Some(s) = seed {
                params.seed = *s;
            }
            let ctx = CheckContext {
                fixture_name: &f.name,
                fixture_key: &key,
                cache: &cache,
                params,
            };
            if check_id == "all" {
                let (reports, skipped) = run_all(&act, &ctx)?;
                let mut pass = 0usize;
                let mut fail = 0usize;
                let mut reported = 0usize;
                for r in &reports {
                    match r.status {
                        Status::Pass => pass += 1,
                        Status::Fail => fail += 1,
                        _ => reported += 1,
                    }
                }
                let value = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "fixture": f.name,
                    "mode": "verify-all",
                    "params": {
                        "truncation": params.truncation,
                        "samples": params.samples,
                        "seed": params.seed,
                        "ring_cap": params.ring_cap,
                        "lattice_cap": params.lattice_cap,
                    },
                    "reports": reports,
                    "skipped": skipped
                        .iter()
                        .map(|(id, reason)| serde_json::json!({"check_id": id, "reason": reason}))
                        .collect::<Vec<_>>(),
                    "summary": {
                        "pass": pass,
                        "fail": fail,
                        "reported": reported,
                        "skipped": skipped.len(),
                    },
                });
                emit(cli, &value)?;
                eprintln!(
                    "verify all on {}: {pass} pass, {fail} fail, {reported} reported, {} skipped",
                    f.name,
                    skipped.len()
                );
                return Ok(ExitCode::from(if fail > 0 { 1 } else { 0 }));
            }
            let rep = run_check(check_id, &act, &ctx)?;
            emit(cli, &serde_json::to_value(&rep).expect("report serializes"))?;
            summarize(&rep);
            Ok(status_code(rep.status))
        }
        Command::Search { question_id, budget, seed } => {
            let outcome = search_open_question(question_id, *budget, *seed, &cache)?;
            let mut value =
                serde_json::to_value(&outcome.report).expect("report serializes");
            value["budget_exceeded"] = serde_json::json!(outcome.budget_exceeded);
            emit(cli, &value)?;
            summarize(&outcome.report);
            if outcome.budget_exceeded {
                eprintln!(
                    "search {question_id}: budget of {budget} fixtures exhausted without a conclusion"
                );
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::from(0))
        }
    }
}
