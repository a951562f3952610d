//! Runs the full extraction pipeline and prints the proposition graph.
//!
//! Run with `cargo run --example extract_graph`.

use std::error::Error;

use propex::serialize::rdfnl::emit_rdfnl;
use propex::{run_pipeline, Document, DocumentFormat, PipelineConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let input = "(ROOT (S (SBAR (IN Although) (S (NP (DT the) (NNP Treasury)) (VP (MD will) (VP (VB announce) (NP (NP (NNS details)) (PP (IN of) (NP (DT the) (NNP November) (NN refunding)))) (PP (IN on) (NP (NNP Monday))))))) (, ,) (NP (DT the) (NN funding)) (VP (MD will) (VP (VB be) (VP (VBN delayed) (SBAR (IN if) (S (NP (NP (NNP Congress)) (CC and) (NP (NNP President) (NNP Bush))) (VP (VBP fail) (S (VP (TO to) (VP (VB increase) (NP (NP (DT the) (NNP Treasury) (POS 's)) (NN borrowing) (NN capacity))))))))))) (. .)))";

    let doc = Document::from_str_in(input, DocumentFormat::PtbLines)?;
    let result = run_pipeline(&doc, &PipelineConfig::default())?;

    for skipped in &result.diagnostics {
        eprintln!("skipped sentence {}: {}", skipped.sentence, skipped.reason);
    }

    // Walk the graph programmatically…
    for prop in result.graph.propositions() {
        println!(
            "#{} layer {} :: {} | {} | {}",
            prop.id, prop.context_layer, prop.tuple.arg_subj, prop.tuple.rel, prop.tuple.arg_obj
        );
        for link in &prop.linked {
            println!("    -> {} #{}", link.relation.as_str(), link.target);
        }
    }

    // …or serialize the whole thing.
    println!();
    print!("{}", emit_rdfnl(&result.graph));
    Ok(())
}
