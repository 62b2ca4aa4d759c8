//! `hyperlab` command-line front end.
//!
//! Exit codes: 0 clean, 1 violations or counterexamples, 2 usage or parse
//! errors, 3 failed preconditions (not a hyperideal, not proper, not
//! multiplicative, `Q` meeting `S`).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hyperlab::axioms::{check_krasner_with, Mode};
use hyperlab::constructions::fixture;
use hyperlab::document;
use hyperlab::harness::{run_suite, search_separating_instances, Corpus, SuiteConfig};
use hyperlab::ideals::{enumerate_hyperideals_with, is_hyperideal};
use hyperlab::predicates::{classify_with, is_multiplicative, Outcome};
use hyperlab::{Budget, Error, HyperStructure, IdealLattice};

#[derive(Parser)]
#[command(name = "hyperlab", version, about = "Checks finite Krasner (m,n)-hyperrings and their hyperideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Krasner axioms and list violations.
    Validate {
        #[command(flatten)]
        source: Source,
        /// Stop at the first violation.
        #[arg(long)]
        first_violation: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every predicate on one (Q, S).
    Classify {
        #[command(flatten)]
        source: Source,
        /// Comma-separated element names of Q.
        #[arg(long)]
        ideal: String,
        /// Comma-separated element names of S.
        #[arg(long)]
        mult_set: String,
        #[arg(long)]
        json: bool,
    },
    /// List all hyperideals and mark the prime ones.
    Ideals {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Run the theorem suite over a corpus.
    Theorems {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        json: bool,
    },
    /// List corpus instances where one predicate holds and another fails.
    Search {
        #[arg(long)]
        holds: String,
        #[arg(long)]
        fails: String,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Write a fixture as a JSON table document.
    Export {
        #[arg(long)]
        fixture: String,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// JSON table document.
    #[arg(conflicts_with = "fixture", required_unless_present = "fixture")]
    path: Option<PathBuf>,
    /// Built-in fixture name, e.g. paper-2-4, ring:Z6, ring:Z2*ring:Z3.
    #[arg(long)]
    fixture: Option<String>,
}

impl Source {
    fn load(&self) -> Result<HyperStructure, Error> {
        match (&self.fixture, &self.path) {
            (Some(name), _) => Ok(fixture(name)?.structure),
            (None, Some(path)) => document::load(path),
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// The built-in default corpus (also used when no corpus is given).
    #[arg(long, conflicts_with = "corpus")]
    default_corpus: bool,
    /// Comma-separated fixture names, or `none`.
    #[arg(long)]
    corpus: Option<String>,
}

impl CorpusArgs {
    fn corpus(&self, budget: Budget) -> Result<Corpus, Error> {
        let corpus = match &self.corpus {
            Some(list) => Corpus::parse(list)?,
            None => Corpus::default(),
        };
        Ok(corpus.with_config(SuiteConfig { budget, ..SuiteConfig::default() }))
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::NotHyperideal(_) | Error::NotProper | Error::NotMultiplicative(_) | Error::DisjointnessViolated(_) => 3,
        Error::Capacity(_) | Error::IdentityRequired(_) | Error::InvalidStructure(_) => 1,
        _ => 2,
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let budget = Budget::from_env()?;
    match cli.command {
        Command::Validate { source, first_violation, json } => {
            let a = source.load()?;
            let mode = if first_violation { Mode::First } else { Mode::All };
            let violations = check_krasner_with(&a, mode);
            if json {
                let list: Vec<Value> =
                    violations.iter().map(|v| json!({"axiom": v.axiom.tag(), "detail": v.render(&a)})).collect();
                print_json(&json!({"structure": a.name(), "valid": violations.is_empty(), "violations": list}));
            } else {
                for v in &violations {
                    println!("{}", v.render(&a));
                }
                println!(
                    "{}: {} ({} violations)",
                    a.name(),
                    if violations.is_empty() { "valid" } else { "invalid" },
                    violations.len()
                );
            }
            Ok(if violations.is_empty() { 0 } else { 1 })
        }
        Command::Classify { source, ideal, mult_set, json } => {
            let a = source.load()?;
            let q = a.parse_set(&ideal)?;
            let s = a.parse_set(&mult_set)?;
            let verdict = is_hyperideal(&a, q);
            if !verdict.holds {
                return Err(Error::NotHyperideal(verdict.note.unwrap_or_default()));
            }
            if q == a.full_set() {
                return Err(Error::NotProper);
            }
            let mult = is_multiplicative(&a, s);
            if !mult.holds {
                let why = mult.counterexample.map(|c| c.render(&a, None)).unwrap_or_default();
                return Err(Error::NotMultiplicative(format!("{} fails at {why}", a.render_set(s))));
            }
            let lattice = enumerate_hyperideals_with(&a, &budget)?;
            let record = classify_with(&a, q, s, &lattice, &budget)?;
            if json {
                let entries: serde_json::Map<String, Value> =
                    record.entries().map(|(name, o)| (name.to_string(), outcome_json(&a, &lattice, o))).collect();
                print_json(&json!({
                    "structure": a.name(),
                    "q": a.set_names(q),
                    "s": a.set_names(s),
                    "predicates": entries,
                    "chain_violations": record.chain_violations(),
                }));
            } else {
                println!("{} Q={} S={}", a.name(), a.render_set(q), a.render_set(s));
                for (name, o) in record.entries() {
                    println!("{name}: {}", o.render(&a, Some(&lattice)));
                }
                for v in record.chain_violations() {
                    println!("chain violation: {v}");
                }
            }
            Ok(0)
        }
        Command::Ideals { source, json } => {
            let a = source.load()?;
            let lattice = enumerate_hyperideals_with(&a, &budget)?;
            if json {
                let list: Vec<Value> = (0..lattice.len())
                    .map(|i| json!({"ideal": a.set_names(lattice.get(i)), "prime": lattice.is_prime(i)}))
                    .collect();
                print_json(&json!({"structure": a.name(), "ideals": list}));
            } else {
                for i in 0..lattice.len() {
                    let tag = if lattice.is_prime(i) { " prime" } else { "" };
                    println!("{}{tag}", a.render_set(lattice.get(i)));
                }
            }
            Ok(0)
        }
        Command::Theorems { corpus, json } => {
            let report = run_suite(&corpus.corpus(budget)?)?;
            if json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.failures().is_empty() { 0 } else { 1 })
        }
        Command::Search { holds, fails, corpus, json } => {
            let found = search_separating_instances(&corpus.corpus(budget)?, &holds, &fails)?;
            if json {
                print_json(&json!(found));
            } else {
                for i in &found {
                    println!("{i}");
                }
                println!("{} separating instances", found.len());
            }
            Ok(0)
        }
        Command::Export { fixture: name, output } => {
            let text = document::to_json(&fixture(&name)?.structure);
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?
                }
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn outcome_json(a: &HyperStructure, lattice: &IdealLattice, o: &Outcome) -> Value {
    match o {
        Outcome::Decided(v) => json!({
            "holds": v.holds,
            "witness_s": v.witness_s.map(|w| a.element_name(w).to_string()),
            "counterexample": v.counterexample.as_ref().map(|c| c.render(a, Some(lattice))),
            "note": v.note,
        }),
        Outcome::Undecided(why) => json!({"holds": null, "undecided": why}),
    }
}
