//! Matches a tree-query pattern against a parse and shows its captures.
//!
//! The pattern language drives the clause-splitting rules: `<` is direct
//! child, `<<` descendant, `<1` first child, `$+` immediate right sibling,
//! `=name` captures, and `@lexicon` matches a leaf against a word list.
//!
//! Run with `cargo run --example pattern_match`.

use std::collections::HashSet;
use std::error::Error;

use propex::parse_ptb;
use propex::pattern::{node_at, Lexicons, Pattern};

fn main() -> Result<(), Box<dyn Error>> {
    let tree = parse_ptb(
        "(S (NP (DT The) (NN mayor)) (VP (VBD said) (SBAR (IN that) (S (NP (DT the) (NN bridge)) (VP (MD will) (VP (VB reopen)))))) (. .))",
    )?;

    let pattern = Pattern::parse(
        r#"S < NP < (VP < (VBD < @speech_verbs=cue) < (SBAR=sbar < (S=comp < NP < VP)))"#,
    )?;

    let mut lexicons = Lexicons::new();
    lexicons.insert(
        "speech_verbs".to_string(),
        HashSet::from(["said".to_string(), "says".to_string(), "say".to_string()]),
    );

    println!("pattern: {}", pattern.source());
    println!("captures declared: {:?}", pattern.capture_names());
    println!();

    match pattern.find_first(&tree, &lexicons) {
        Some(binds) => {
            let mut names: Vec<&str> = binds.names().collect();
            names.sort();
            for name in names {
                let path = binds.get(name).unwrap();
                let node = node_at(&tree, path);
                println!(
                    "{name:>5} at {path:?}: ({}) {}",
                    node.label,
                    node.yield_text().unwrap_or_default()
                );
            }
        }
        None => println!("no match"),
    }
    Ok(())
}
