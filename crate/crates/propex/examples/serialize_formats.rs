//! Emits one extraction in all three output formats.
//!
//! The same proposition graph serializes to RDF-NL (tab-separated, human
//! readable, round-trippable), N-Triples (RDF), and JSON.
//!
//! Run with `cargo run --example serialize_formats`.

use std::error::Error;

use propex::serialize::json::emit_json;
use propex::serialize::ntriples::{emit_ntriples, DEFAULT_BASE_IRI};
use propex::serialize::rdfnl::{emit_rdfnl, parse_rdfnl};
use propex::{run_pipeline, Document, DocumentFormat, PipelineConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let input = "(S (NP (DT The) (NN board)) (VP (VBD met) (PP (IN on) (NP (NNP Tuesday)))) (. .))";
    let doc = Document::from_str_in(input, DocumentFormat::PtbLines)?;
    let graph = run_pipeline(&doc, &PipelineConfig::default())?.graph;

    let rdfnl = emit_rdfnl(&graph);
    println!("── RDF-NL ───────────────────────────────");
    print!("{rdfnl}");

    println!("── N-Triples ({DEFAULT_BASE_IRI}) ──");
    print!("{}", emit_ntriples(&graph, DEFAULT_BASE_IRI));
    println!();

    println!("── JSON ─────────────────────────────────");
    print!("{}", emit_json(&graph));

    // RDF-NL parses back into the identical graph.
    let reparsed = parse_rdfnl(&rdfnl)?;
    assert_eq!(reparsed, graph);
    println!();
    println!("round-trip through RDF-NL: identical");
    Ok(())
}
