//! N-Triples output for RDF tooling.
//!
//! Sentences and propositions become blank nodes (`_:s1`, `_:p3`, …); the
//! arguments of tuples and the phrases of contexts become IRIs minted under
//! a base namespace. Every minted text IRI is also mapped back to its exact
//! text with an `rdf:value` triple, emitted once per document right after
//! the IRI's first use, so consumers never need to reverse the IRI encoding.
//!
//! The text-to-IRI encoding is injective: unreserved characters
//! (`A–Z a–z 0–9 . _ ~ -`) pass through, a space becomes `+`, and every
//! other byte of the UTF-8 form is percent-encoded (including literal `+`).

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::graph::PropositionGraph;

/// Namespace used when the caller does not configure one.
pub const DEFAULT_BASE_IRI: &str = "http://example.org/oie/";

const RDF_VALUE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#value";

/// Serializes a graph as N-Triples under `base_iri` (one triple per line).
pub fn emit_ntriples(graph: &PropositionGraph, base_iri: &str) -> String {
    let mut base = base_iri.to_string();
    if !base.ends_with('/') && !base.ends_with('#') {
        base.push('/');
    }
    let mut out = String::new();
    let mut minted: HashSet<String> = HashSet::new();

    let mut text_iri = |text: &str, out: &mut String| -> String {
        let iri = format!("{base}{}", encode_text(text));
        if minted.insert(iri.clone()) {
            let _ = writeln!(out, "<{iri}> <{RDF_VALUE}> \"{}\" .", escape_literal(text));
        }
        iri
    };

    for (index, sentence) in graph.sentences.iter().enumerate() {
        let snode = format!("_:s{}", index + 1);
        let _ = writeln!(
            out,
            "{snode} <{base}sentence#original-text> \"{}\" .",
            escape_literal(&sentence.text)
        );
        for prop in &sentence.propositions {
            let pnode = format!("_:p{}", prop.id);
            let _ = writeln!(out, "{snode} <{base}sentence#has-extraction> {pnode} .");
            let _ = writeln!(
                out,
                "{pnode} <{base}extraction#context-layer> \"{}\" .",
                prop.context_layer
            );
            let mut field = String::new();
            for (name, value) in [
                ("subject", &prop.tuple.arg_subj),
                ("predicate", &prop.tuple.rel),
                ("object", &prop.tuple.arg_obj),
            ] {
                if value.is_empty() {
                    continue;
                }
                field.clear();
                let iri = text_iri(value, &mut field);
                let _ = writeln!(out, "{pnode} <{base}extraction#{name}> <{iri}> .");
                out.push_str(&field);
            }
            for context in &prop.simple {
                field.clear();
                let iri = text_iri(&context.phrase, &mut field);
                let _ = writeln!(
                    out,
                    "{pnode} <{base}extraction#S-{}> <{iri}> .",
                    context.relation.as_str()
                );
                out.push_str(&field);
            }
            for link in &prop.linked {
                let _ = writeln!(
                    out,
                    "{pnode} <{base}extraction#L-{}> _:p{} .",
                    link.relation.as_str(),
                    link.target
                );
            }
        }
    }
    out
}

fn is_unreserved(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '~' | '-')
}

/// Injective text-to-IRI-suffix encoding (see module docs).
pub fn encode_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if is_unreserved(c) {
            out.push(c);
        } else if c == ' ' {
            out.push('+');
        } else {
            let mut buf = [0u8; 4];
            for byte in c.encode_utf8(&mut buf).bytes() {
                let _ = write!(out, "%{byte:02X}");
            }
        }
    }
    out
}

fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out
}
