//! `propex` — extraction pipeline, query, scoring, and service in one binary.
//!
//! Exit codes: 0 on success, 1 for input or runtime failures (unreadable
//! files, malformed parse trees, a parser endpoint that errors), 2 for
//! configuration and usage errors (bad flags, bad rule files, no input).

use std::io::{IsTerminal, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use propex::client::{ParserClient, ParserClientConfig};
use propex::discourse::RhetoricalRelation;
use propex::document::{Document, DocumentFormat};
use propex::pipeline::{run_pipeline, PipelineConfig};
use propex::rules::RuleSet;
use propex::score::{score, GoldRecord};
use propex::serialize::json::emit_json;
use propex::serialize::ntriples::{emit_ntriples, DEFAULT_BASE_IRI};
use propex::serialize::rdfnl::{emit_rdfnl, parse_rdfnl};
use propex::service::{serve, ServiceState};

#[derive(Parser)]
#[command(
    name = "propex",
    version,
    about = "Open information extraction over constituency parses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract a proposition graph from parse trees (or raw text with a parser endpoint)
    Extract(ExtractArgs),
    /// Query an extraction for propositions linked by a relation
    Query(QueryArgs),
    /// Score an extraction against gold tuples
    Score(ScoreArgs),
    /// Serve the extraction pipeline over HTTP
    Serve(ServeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Rdfnl,
    Ntriples,
    Json,
}

#[derive(Args)]
struct ExtractArgs {
    /// Input file; stdin when omitted. Expects one parse tree per line
    /// unless --parser-endpoint (raw text) or --json-doc is given.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "rdfnl")]
    format: OutputFormat,
    /// Skip clause-level splitting
    #[arg(long)]
    no_clausal: bool,
    /// Skip phrase-level extraction
    #[arg(long)]
    no_phrasal: bool,
    /// Transformation rule file (TOML); built-in rules when omitted
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Namespace for N-Triples output
    #[arg(long)]
    base_iri: Option<String>,
    /// Remote constituency parser; input is then treated as raw text
    #[arg(long)]
    parser_endpoint: Option<String>,
    /// TOML config file (flags and PROPEX_* variables take precedence)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input is a JSON document ({"id", "text"?, "sentences": [...]})
    #[arg(long)]
    json_doc: bool,
}

#[derive(Args)]
struct QueryArgs {
    /// Extraction to query, in the tab-separated text format; stdin when omitted
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Relation to follow (e.g. CONDITION, CONTRAST, TEMPORAL)
    #[arg(long)]
    relation: Option<String>,
    /// Substring the source proposition must contain (case-insensitive)
    #[arg(long = "match")]
    pattern: Option<String>,
    /// Natural-language form, e.g. "under which circumstances will the funding be delayed"
    #[arg(long, conflicts_with_all = ["relation", "pattern"])]
    question: Option<String>,
}

#[derive(Args)]
struct ScoreArgs {
    /// Gold tuples: JSON list of {"sentence", "tuples": [{"subject","relation","object"}]}
    #[arg(long)]
    gold: PathBuf,
    /// Extraction to score, in the tab-separated text format; stdin when omitted
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8401")]
    addr: String,
    #[arg(long)]
    rules: Option<PathBuf>,
    #[arg(long)]
    base_iri: Option<String>,
    #[arg(long)]
    parser_endpoint: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Optional settings from a `--config` TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    parser_endpoint: Option<String>,
    base_iri: Option<String>,
    rules: Option<PathBuf>,
    timeout_secs: Option<u64>,
    max_in_flight: Option<usize>,
}

/// Fully resolved settings: flags over environment over config file.
#[derive(Debug)]
struct Resolved {
    parser_endpoint: Option<String>,
    base_iri: String,
    rules: RuleSet,
    timeout_secs: u64,
    max_in_flight: usize,
}

/// An error that already knows its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 1, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Extract(args) => run_extract(args),
        Command::Query(args) => run_query(args),
        Command::Score(args) => run_score(args),
        Command::Serve(args) => run_serve(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("propex: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn resolve(
    config_path: Option<&Path>,
    rules_flag: Option<&Path>,
    base_iri_flag: Option<&str>,
    endpoint_flag: Option<&str>,
) -> Result<Resolved, Failure> {
    let file: FileConfig = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text)
                .map_err(|e| Failure::config(format!("bad config {}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let env = |name: &str| std::env::var(name).ok().filter(|v| !v.is_empty());

    let rules_path = rules_flag
        .map(Path::to_path_buf)
        .or_else(|| env("PROPEX_RULES").map(PathBuf::from))
        .or(file.rules);
    let rules = match rules_path {
        Some(path) => RuleSet::from_path(&path)
            .map_err(|e| Failure::config(format!("bad rule file {}: {e}", path.display())))?,
        None => RuleSet::embedded_default()
            .map_err(|e| Failure::config(format!("built-in rules failed to load: {e}")))?,
    };

    Ok(Resolved {
        parser_endpoint: endpoint_flag
            .map(str::to_string)
            .or_else(|| env("PROPEX_PARSER_ENDPOINT"))
            .or(file.parser_endpoint),
        base_iri: base_iri_flag
            .map(str::to_string)
            .or_else(|| env("PROPEX_BASE_IRI"))
            .or(file.base_iri)
            .unwrap_or_else(|| DEFAULT_BASE_IRI.to_string()),
        rules,
        timeout_secs: file.timeout_secs.unwrap_or(30),
        max_in_flight: file.max_in_flight.unwrap_or(4),
    })
}

fn parser_client(resolved: &Resolved, endpoint: &str) -> Result<ParserClient, Failure> {
    let config = ParserClientConfig {
        endpoint: endpoint.to_string(),
        timeout_secs: resolved.timeout_secs,
        max_in_flight: resolved.max_in_flight,
    };
    ParserClient::with_config(config).map_err(|e| Failure::config(e.to_string()))
}

/// Reads `--input` or stdin. A terminal stdin means there is nothing to
/// read: that is a usage error, not an input error.
fn read_input(path: Option<&Path>, expected: &str) -> Result<String, Failure> {
    match path {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut stdin = std::io::stdin();
            if stdin.is_terminal() {
                return Err(Failure::config(format!(
                    "no input: pass --input FILE or pipe {expected} to stdin"
                )));
            }
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn run_extract(args: ExtractArgs) -> Result<(), Failure> {
    let resolved = resolve(
        args.config.as_deref(),
        args.rules.as_deref(),
        args.base_iri.as_deref(),
        args.parser_endpoint.as_deref(),
    )?;

    let document = if let Some(endpoint) = &resolved.parser_endpoint {
        let text = read_input(args.input.as_deref(), "raw text")?;
        let client = parser_client(&resolved, endpoint)?;
        client.parse_document(&text).map_err(|e| Failure::input(e.to_string()))?
    } else {
        let text = read_input(args.input.as_deref(), "parse trees")?;
        let format = if args.json_doc { DocumentFormat::JsonDoc } else { DocumentFormat::PtbLines };
        Document::from_str_in(&text, format).map_err(|e| Failure::input(e.to_string()))?
    };

    let config = PipelineConfig {
        do_clausal: !args.no_clausal,
        do_phrasal: !args.no_phrasal,
        rules: resolved.rules,
    };
    let result = run_pipeline(&document, &config).map_err(|e| Failure::input(e.to_string()))?;
    for skip in &result.diagnostics {
        eprintln!("propex: skipped sentence {}: {} ({})", skip.sentence + 1, skip.reason, skip.text);
    }

    let output = match args.format {
        OutputFormat::Rdfnl => emit_rdfnl(&result.graph),
        OutputFormat::Ntriples => emit_ntriples(&result.graph, &resolved.base_iri),
        OutputFormat::Json => emit_json(&result.graph),
    };
    print!("{output}");
    Ok(())
}

/// Maps a natural-language question to a relation and a match pattern: the
/// leading interrogative picks the relation, the first content word of the
/// remainder becomes the pattern.
fn question_to_query(question: &str) -> Option<(RhetoricalRelation, String)> {
    use RhetoricalRelation::*;
    const FORMS: &[(&str, RhetoricalRelation)] = &[
        ("under which circumstances", Condition),
        ("under what circumstances", Condition),
        ("in which case", Condition),
        ("for what purpose", Purpose),
        ("what for", Purpose),
        ("according to whom", Attribution),
        ("who said", Attribution),
        ("despite what", Contrast),
        ("why", Cause),
        ("when", Temporal),
        ("where", Spatial),
    ];
    const FUNCTION_WORDS: &[&str] = &[
        "will", "would", "shall", "should", "can", "could", "may", "might", "must", "do",
        "does", "did", "is", "are", "was", "were", "be", "been", "being", "has", "have",
        "had", "the", "a", "an", "it", "this", "that", "there",
    ];
    let lower = question.trim().trim_end_matches(['?', '.', '!']).to_lowercase();
    let (form, relation) = FORMS.iter().find(|(form, _)| lower.starts_with(form))?;
    let remainder = lower[form.len()..].trim();
    let pattern = remainder
        .split_whitespace()
        .find(|w| !FUNCTION_WORDS.contains(w))
        .unwrap_or("")
        .to_string();
    Some((*relation, pattern))
}

fn run_query(args: QueryArgs) -> Result<(), Failure> {
    let (relation, pattern) = match (&args.question, &args.relation, &args.pattern) {
        (Some(question), None, None) => question_to_query(question).ok_or_else(|| {
            Failure::config(format!(
                "cannot interpret question {question:?}; use --relation and --match"
            ))
        })?,
        (None, Some(relation), Some(pattern)) => {
            let relation = RhetoricalRelation::parse(relation)
                .ok_or_else(|| Failure::config(format!("unknown relation {relation:?}")))?;
            (relation, pattern.clone())
        }
        _ => {
            return Err(Failure::config(
                "pass --question, or both --relation and --match",
            ))
        }
    };

    let text = read_input(args.input.as_deref(), "an extraction")?;
    let graph = parse_rdfnl(&text).map_err(|e| Failure::input(e.to_string()))?;
    for prop in graph.query(relation, &pattern) {
        let mut line = format!(
            "#{}\t{}\t{}\t{}",
            prop.id, prop.context_layer, prop.tuple.arg_subj, prop.tuple.rel
        );
        if !prop.tuple.arg_obj.is_empty() {
            line.push('\t');
            line.push_str(&prop.tuple.arg_obj);
        }
        println!("{line}");
    }
    Ok(())
}

fn run_score(args: ScoreArgs) -> Result<(), Failure> {
    let gold_text = std::fs::read_to_string(&args.gold)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.gold.display())))?;
    let gold: Vec<GoldRecord> = serde_json::from_str(&gold_text)
        .map_err(|e| Failure::input(format!("bad gold file {}: {e}", args.gold.display())))?;

    let text = read_input(args.input.as_deref(), "an extraction")?;
    let graph = parse_rdfnl(&text).map_err(|e| Failure::input(e.to_string()))?;
    let scores = score(&graph, &gold).map_err(|e| Failure::input(e.to_string()))?;
    println!("precision\t{:.4}", scores.precision);
    println!("recall\t{:.4}", scores.recall);
    Ok(())
}

fn run_serve(args: ServeArgs) -> Result<(), Failure> {
    let resolved = resolve(
        args.config.as_deref(),
        args.rules.as_deref(),
        args.base_iri.as_deref(),
        args.parser_endpoint.as_deref(),
    )?;
    let parser = match &resolved.parser_endpoint {
        Some(endpoint) => Some(parser_client(&resolved, endpoint)?),
        None => None,
    };
    let config = PipelineConfig {
        do_clausal: true,
        do_phrasal: true,
        rules: resolved.rules,
    };
    let mut state = ServiceState::new(config).with_base_iri(resolved.base_iri);
    if let Some(parser) = parser {
        state = state.with_parser(parser);
    }
    serve(&args.addr, state).map_err(|e| Failure::input(format!("server failed: {e}")))
}
