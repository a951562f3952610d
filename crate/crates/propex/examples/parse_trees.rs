//! Parses a bracketed constituency tree and walks its structure.
//!
//! Run with `cargo run --example parse_trees`.

use std::error::Error;

use propex::parse_ptb;
use propex::tree::ParseTree;

fn print_tree(node: &ParseTree, depth: usize) {
    let indent = "  ".repeat(depth);
    match &node.token {
        Some(tok) => println!("{indent}{} \"{}\" [{}]", node.label, tok.text, tok.index),
        None => {
            println!("{indent}{}", node.label);
            for child in &node.children {
                print_tree(child, depth + 1);
            }
        }
    }
}

fn main() -> Result<(), Box<dyn Error>> {
    let line = "(S (NP (DT The) (NN committee)) (VP (VBD approved) (NP (DT the) (NN budget)) (PP (IN on) (NP (NNP Friday)))) (. .))";
    let tree = parse_ptb(line)?;

    print_tree(&tree, 0);

    println!();
    println!("yield: {}", tree.yield_text().unwrap_or_default());
    println!("tokens: {}", tree.tokens().len());
    Ok(())
}
