//! Scores the bundled mini corpus against its gold tuples.
//!
//! `tests/fixtures/mini_gold.json` pairs each sentence with its constituency
//! parse and the tuples a correct extraction should produce. This example
//! extracts from the parses, prints every proposition, and reports
//! precision/recall under head-word matching.

use std::error::Error;
use std::fs;
use std::path::Path;

use propex::score::{score, GoldRecord};
use propex::{run_pipeline, Document, DocumentFormat, PipelineConfig};
use serde::Deserialize;

#[derive(Deserialize)]
struct CorpusRecord {
    parse: String,
}

fn main() -> Result<(), Box<dyn Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/mini_gold.json");
    let raw = fs::read_to_string(&path)?;

    // The corpus file doubles as input and reference: the extra `parse`
    // field is invisible to the gold deserializer.
    let gold: Vec<GoldRecord> = serde_json::from_str(&raw)?;
    let records: Vec<CorpusRecord> = serde_json::from_str(&raw)?;

    let parses: Vec<String> = records.into_iter().map(|r| r.parse).collect();
    let doc = Document::from_str_in(&parses.join("\n"), DocumentFormat::PtbLines)?;
    let result = run_pipeline(&doc, &PipelineConfig::default())?;

    for (sentence, record) in result.graph.sentences.iter().zip(&gold) {
        println!("{}", record.sentence);
        for prop in &sentence.propositions {
            println!(
                "  #{} layer {}  ({} | {} | {})",
                prop.id, prop.context_layer, prop.tuple.arg_subj, prop.tuple.rel, prop.tuple.arg_obj
            );
        }
    }

    let scores = score(&result.graph, &gold)?;
    println!();
    println!("sentences  {}", gold.len());
    println!("precision  {:.4}", scores.precision);
    println!("recall     {:.4}", scores.recall);
    Ok(())
}
