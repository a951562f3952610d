//! Peels simple contexts and spawned sentences off a single clause.
//!
//! Phrase disembedding removes adjuncts (temporal/spatial phrases, purpose
//! infinitives, lead noun phrases) as simple contexts and turns appositives,
//! participials, and conjunct structures into sentences of their own.
//!
//! Run with `cargo run --example phrasal_contexts`.

use std::error::Error;

use propex::parse_ptb;
use propex::phrasal::disembed_phrases;
use propex::rules::RuleSet;

fn main() -> Result<(), Box<dyn Error>> {
    let rules = RuleSet::embedded_default()?;
    let sentences = [
        "(S (NP (DT The) (NN board)) (VP (VBD met) (PP (IN on) (NP (NNP Tuesday)))) (. .))",
        "(S (NP (NP (NNP Cassini)) (, ,) (NP (DT an) (NN astronomer)) (, ,)) (VP (VBD discovered) (NP (DT the) (NN gap))) (. .))",
        "(S (NP (PRP He)) (VP (VBD trained) (S (VP (TO to) (VP (VB win) (NP (DT the) (NN race)))))) (. .))",
        "(S (NP (NP (NNP France)) (, ,) (NP (NNP Germany)) (CC and) (NP (NNP Italy))) (VP (VBD signed) (NP (DT the) (NN treaty))) (. .))",
    ];

    for line in sentences {
        let tree = parse_ptb(line)?;
        println!("sentence: {}", tree.yield_text().unwrap_or_default());

        let result = disembed_phrases(&tree, &rules);
        println!("  core:   {}", result.core.yield_text().unwrap_or_default());
        for context in &result.simple_contexts {
            println!("  S:{}\t{}", context.relation.as_str(), context.phrase);
        }
        for spawn in &result.spawned {
            println!(
                "  spawned ({:?}, {}): {}",
                spawn.edge,
                spawn.relation.as_str(),
                spawn.sentence.yield_text().unwrap_or_default()
            );
        }
        println!();
    }
    Ok(())
}
