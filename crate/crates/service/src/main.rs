use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use asdkb::ingest::{ingest_all, load_schema};
use asdkb::ontology::typing_of;
use asdkb::quality::{aggregate_labels, coverage_eval, parse_labels, wilson};
use asdkb::query::{execute, parse_query};
use asdkb::store::{canonical_dump, parse_ntriples, Triple, TripleStore};
use asdkb_service::{load_kb, router, startup, ServiceConfig};

#[derive(Parser)]
#[command(name = "asdkb", version, about = "Autism screening knowledge base")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Data {
    /// Directory holding ontology.txt, the record files and patterns.jsonl.
    #[arg(long = "data", env = "ASDKB_DATA_DIR", default_value = "data")]
    dir: PathBuf,
    /// Pattern file; defaults to patterns.jsonl in the data directory.
    #[arg(long)]
    patterns: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    theta_sym: f64,
    #[arg(long, default_value_t = 0.5)]
    theta_std: f64,
}

impl Data {
    fn config(&self) -> ServiceConfig {
        let mut c = ServiceConfig::new(&self.dir);
        c.pattern_file = self.patterns.clone();
        c.thresholds = (self.theta_sym, self.theta_std);
        c
    }
}

#[derive(Subcommand)]
enum Command {
    /// Ingest the record files and write the canonical dump.
    Ingest {
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the HTTP API.
    Serve {
        #[command(flatten)]
        data: Data,
        #[arg(long, env = "ASDKB_PORT", default_value_t = 8080)]
        port: u16,
        /// Directory for the session and vote logs.
        #[arg(long, env = "ASDKB_STATE_DIR")]
        state_dir: Option<PathBuf>,
        #[arg(long, default_value_t = asdkb::recommend::DEFAULT_FALLBACK_K)]
        fallback_k: usize,
    },
    /// Run a query and print a tab-separated table.
    Query {
        text: String,
        #[command(flatten)]
        data: Data,
        /// Query this dump instead of ingesting the data directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Answer a natural-language question.
    Qa {
        question: String,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        json: bool,
    },
    #[command(subcommand)]
    Eval(Eval),
    /// Write the canonical dump of the ingested store.
    Export {
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        out: PathBuf,
    },
    /// Parse a dump, check it against the ontology and optionally rewrite it canonically.
    Import {
        file: PathBuf,
        #[command(flatten)]
        data: Data,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Eval {
    /// Wilson interval over a label file.
    Accuracy {
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
    },
    /// Fraction of questions the QA engine answers.
    Coverage {
        #[arg(long)]
        questions: PathBuf,
        #[command(flatten)]
        data: Data,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// One question per line, either bare text or `{"question": ...}`.
fn read_questions(path: &Path) -> Result<Vec<String>> {
    read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| match serde_json::from_str::<serde_json::Value>(l) {
            Ok(v) => v["question"].as_str().map(str::to_owned).with_context(|| format!("no question field in {l}")),
            Err(_) => Ok(l.to_owned()),
        })
        .collect()
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Ingest { data, out } => {
            let (_, store, report) = ingest_all(&data.dir, &data.config().ingest_config())?;
            write(&out, &store.to_ntriples())?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.violations.is_empty() {
                bail!("{} ingest violation(s)", report.violations.len());
            }
        }
        Command::Serve { data, port, state_dir, fallback_k } => {
            let mut config = data.config();
            config.port = port;
            config.state_dir = Some(state_dir.unwrap_or_else(|| data.dir.join("state")));
            config.fallback_k = fallback_k;
            let state = startup(&config)?;
            eprintln!("loaded {} triples; listening on port {port}", state.kb.store.len());
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await.with_context(|| format!("binding port {port}"))?;
                axum::serve(listener, router(state)).await?;
                anyhow::Ok(())
            })?;
        }
        Command::Query { text, data, dump } => {
            let ast = parse_query(&text)?;
            let store = match dump {
                Some(path) => TripleStore::from_triples(parse_ntriples(&read(&path)?)?),
                None => ingest_all(&data.dir, &data.config().ingest_config())?.1,
            };
            print!("{}", execute(&ast, &store).to_tsv());
        }
        Command::Qa { question, data, json } => {
            let kb = load_kb(&data.config())?;
            let r = kb.qa.answer_question(&kb.store, &question);
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                println!("{}", r.answer_text);
                if r.screening_redirect {
                    println!("→ /tools");
                }
            }
        }
        Command::Eval(Eval::Accuracy { labels, alpha }) => {
            let records = parse_labels(&read(&labels)?)?;
            let (successes, trials) = aggregate_labels(&records)?;
            let w = wilson(successes, trials, alpha)?;
            println!("accuracy {:.2}% ± {:.2}% ({successes}/{trials}, alpha {alpha})", 100.0 * w.center, 100.0 * w.half_width);
            println!("{}", json!({ "successes": successes, "trials": trials, "interval": w, "lower": w.lower(), "upper": w.upper() }));
        }
        Command::Eval(Eval::Coverage { questions, data }) => {
            let kb = load_kb(&data.config())?;
            let qs = read_questions(&questions)?;
            let fraction = coverage_eval(&qs, &kb.qa, &kb.store)?;
            let answered = (fraction * qs.len() as f64).round() as usize;
            println!("coverage {:.1}% ({answered}/{})", 100.0 * fraction, qs.len());
            println!("{}", json!({ "answered": answered, "total": qs.len(), "coverage": fraction }));
        }
        Command::Export { data, out } => {
            let kb = load_kb(&data.config())?;
            write(&out, &kb.store.to_ntriples())?;
            eprintln!("wrote {} triples to {}", kb.store.len(), out.display());
        }
        Command::Import { file, data, out } => {
            let triples = parse_ntriples(&read(&file)?)?;
            let schema = load_schema(&data.dir)?;
            let typing = typing_of(&triples);
            let mut bad: Vec<&Triple> = Vec::new();
            for t in &triples {
                if !schema.check_domain_range(t, &typing)?.is_ok() {
                    bad.push(t);
                }
            }
            if let Some(first) = bad.first() {
                bail!("{} triple(s) violate the ontology; first: {}", bad.len(), first.to_ntriples());
            }
            let store = TripleStore::from_triples(triples);
            if let Some(out) = out {
                write(&out, &canonical_dump(store.iter().collect()))?;
            }
            println!("{}", json!({ "triples": store.len(), "subjects": store.distinct_subjects().len() }));
        }
    }
    Ok(())
}
