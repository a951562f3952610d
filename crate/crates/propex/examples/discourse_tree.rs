//! Builds the discourse tree for a document and prints its structure.
//!
//! Clause splitting turns each sentence into a tree of coordinations and
//! subordinations whose leaves are minimal clauses; the rhetorical relation
//! on each internal node comes from the cue word that licensed the split.
//!
//! Run with `cargo run --example discourse_tree`.

use std::error::Error;

use propex::discourse::{init_tree, transform_clausal, DiscourseNode, EdgeLabel, InternalNode, NodeKind};
use propex::rules::RuleSet;
use propex::{Document, DocumentFormat};

fn print_internal(inner: &InternalNode, edge: &str, depth: usize) {
    let indent = "  ".repeat(depth);
    let kind = match inner.kind {
        NodeKind::Coordination => "Coordination",
        NodeKind::Subordination => "Subordination",
    };
    println!("{indent}{edge}{kind} [{}]", inner.relation.as_str());
    for (label, child) in &inner.children {
        let marker = match label {
            EdgeLabel::Core => "core: ",
            EdgeLabel::Context => "context: ",
        };
        print_node(child, marker, depth + 1);
    }
}

fn print_node(node: &DiscourseNode, edge: &str, depth: usize) {
    match node {
        DiscourseNode::Leaf(leaf) => {
            let text = leaf.sentence.yield_text().unwrap_or_default();
            println!("{}{edge}\"{text}\"", "  ".repeat(depth));
        }
        DiscourseNode::Internal(inner) => print_internal(inner, edge, depth),
    }
}

fn main() -> Result<(), Box<dyn Error>> {
    let input = "\
(S (SBAR (IN Although) (S (NP (DT the) (NN team)) (VP (VBD lost)))) (, ,) (NP (DT the) (NNS fans)) (VP (VBD cheered)) (. .))
(S (NP (DT The) (NN mayor)) (VP (VBD said) (SBAR (IN that) (S (NP (DT the) (NN bridge)) (VP (MD will) (VP (VB reopen)))))) (. .))
(S (NP (DT The) (NN picnic)) (VP (VBD ended) (SBAR (IN because) (S (NP (PRP it)) (VP (VBD rained))))) (. .))";

    let doc = Document::from_str_in(input, DocumentFormat::PtbLines)?;
    let rules = RuleSet::embedded_default()?;

    let mut tree = init_tree(&doc);
    transform_clausal(&mut tree, &rules)?;

    print_internal(&tree.root, "", 0);
    Ok(())
}
