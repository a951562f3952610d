//! Queries a proposition graph along its contextual links.
//!
//! `query(relation, pattern)` finds every proposition whose text contains
//! the pattern (case-insensitively) and follows its `relation` links,
//! returning the linked propositions in id order.
//!
//! Run with `cargo run --example query_relations`.

use std::error::Error;

use propex::discourse::RhetoricalRelation;
use propex::{run_pipeline, Document, DocumentFormat, PipelineConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let input = "(ROOT (S (SBAR (IN Although) (S (NP (DT the) (NNP Treasury)) (VP (MD will) (VP (VB announce) (NP (NP (NNS details)) (PP (IN of) (NP (DT the) (NNP November) (NN refunding)))) (PP (IN on) (NP (NNP Monday))))))) (, ,) (NP (DT the) (NN funding)) (VP (MD will) (VP (VB be) (VP (VBN delayed) (SBAR (IN if) (S (NP (NP (NNP Congress)) (CC and) (NP (NNP President) (NNP Bush))) (VP (VBP fail) (S (VP (TO to) (VP (VB increase) (NP (NP (DT the) (NNP Treasury) (POS 's)) (NN borrowing) (NN capacity))))))))))) (. .)))";
    let doc = Document::from_str_in(input, DocumentFormat::PtbLines)?;
    let graph = run_pipeline(&doc, &PipelineConfig::default())?.graph;

    let queries = [
        (RhetoricalRelation::Condition, "funding"),
        (RhetoricalRelation::Contrast, "Treasury"),
        (RhetoricalRelation::Cause, "funding"),
    ];

    for (relation, pattern) in queries {
        println!("under which circumstances … {} / \"{}\":", relation.as_str(), pattern);
        let hits = graph.query(relation, pattern);
        if hits.is_empty() {
            println!("  (no propositions)");
        }
        for prop in hits {
            println!(
                "  #{}: {} | {} | {}",
                prop.id, prop.tuple.arg_subj, prop.tuple.rel, prop.tuple.arg_obj
            );
        }
        println!();
    }
    Ok(())
}
