//! A human-readable, line-oriented serialization that parses back losslessly.
//!
//! Layout per sentence: the original sentence text on its own line, a blank
//! line, then one block per proposition. A block starts with a header
//!
//! ```text
//! #<id> TAB <layer> TAB <subject> TAB <relation> [TAB <object>]
//! ```
//!
//! (the object field is omitted when empty), followed by one indented line
//! per attached context:
//!
//! ```text
//! TAB S:<RELATION> TAB <phrase>      a contextual phrase
//! TAB L:<RELATION> TAB #<id>         a link to another proposition
//! ```
//!
//! Blocks end with a blank line. Sentence text lines must be non-empty and
//! cannot start with `#` or a tab — true of any natural-language sentence.
//! The reader accepts links in either or both directions and resolves them
//! against the whole document.

use std::fmt::Write as _;

use thiserror::Error;

use crate::discourse::RhetoricalRelation;
use crate::graph::{
    LinkedContext, Proposition, PropositionGraph, RelationalTuple, SentenceExtraction,
};
use crate::phrasal::SimpleContext;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfnlError {
    #[error("line {line}: {message}")]
    FormatError { line: usize, message: String },
    #[error("proposition #{from} links to unknown proposition #{target}")]
    DanglingReference { from: usize, target: usize },
}

/// Serializes a graph to the tab-separated text format.
pub fn emit_rdfnl(graph: &PropositionGraph) -> String {
    let mut out = String::new();
    for sentence in &graph.sentences {
        out.push_str(&sentence.text);
        out.push_str("\n\n");
        for prop in &sentence.propositions {
            let _ = write!(
                out,
                "#{}\t{}\t{}\t{}",
                prop.id, prop.context_layer, prop.tuple.arg_subj, prop.tuple.rel
            );
            if !prop.tuple.arg_obj.is_empty() {
                let _ = write!(out, "\t{}", prop.tuple.arg_obj);
            }
            out.push('\n');
            for context in &prop.simple {
                let _ = writeln!(out, "\tS:{}\t{}", context.relation.as_str(), context.phrase);
            }
            for link in &prop.linked {
                let _ = writeln!(out, "\tL:{}\t#{}", link.relation.as_str(), link.target);
            }
            out.push('\n');
        }
    }
    out
}

/// Parses the text format back into a graph.
pub fn parse_rdfnl(input: &str) -> Result<PropositionGraph, RdfnlError> {
    let mut sentences: Vec<SentenceExtraction> = Vec::new();
    let mut current: Option<SentenceExtraction> = None;
    let mut prop: Option<Proposition> = None;

    let fail = |line: usize, message: &str| RdfnlError::FormatError {
        line,
        message: message.to_string(),
    };

    for (number, line) in input.lines().enumerate() {
        let number = number + 1;
        if line.is_empty() {
            if let (Some(sentence), Some(done)) = (current.as_mut(), prop.take()) {
                sentence.propositions.push(done);
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('\t') {
            let Some(target) = prop.as_mut() else {
                return Err(fail(number, "context line outside a proposition block"));
            };
            let (tag, value) = rest
                .split_once('\t')
                .ok_or_else(|| fail(number, "context line needs a tab-separated value"))?;
            let (kind, name) = tag
                .split_once(':')
                .ok_or_else(|| fail(number, "context tag must be S:<RELATION> or L:<RELATION>"))?;
            let relation = RhetoricalRelation::parse(name)
                .ok_or_else(|| fail(number, "unknown rhetorical relation"))?;
            match kind {
                "S" => target.simple.push(SimpleContext {
                    relation,
                    phrase: value.to_string(),
                }),
                "L" => {
                    let id = value
                        .strip_prefix('#')
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| fail(number, "link target must be #<number>"))?;
                    target.linked.push(LinkedContext { relation, target: id });
                }
                _ => return Err(fail(number, "context tag must start with S or L")),
            }
            continue;
        }
        if let Some(header) = line.strip_prefix('#') {
            let Some(sentence) = current.as_mut() else {
                return Err(fail(number, "proposition before any sentence text"));
            };
            if let Some(done) = prop.take() {
                sentence.propositions.push(done);
            }
            let fields: Vec<&str> = header.split('\t').collect();
            if fields.len() != 4 && fields.len() != 5 {
                return Err(fail(number, "header needs 4 or 5 tab-separated fields"));
            }
            let id = fields[0]
                .parse::<usize>()
                .map_err(|_| fail(number, "proposition id must be a number"))?;
            let context_layer = fields[1]
                .parse::<usize>()
                .map_err(|_| fail(number, "context layer must be a number"))?;
            prop = Some(Proposition {
                id,
                context_layer,
                tuple: RelationalTuple {
                    arg_subj: fields[2].to_string(),
                    rel: fields[3].to_string(),
                    arg_obj: fields.get(4).unwrap_or(&"").to_string(),
                },
                simple: Vec::new(),
                linked: Vec::new(),
            });
            continue;
        }
        // A fresh sentence text line.
        if let Some(mut sentence) = current.take() {
            if let Some(done) = prop.take() {
                sentence.propositions.push(done);
            }
            sentences.push(sentence);
        }
        current = Some(SentenceExtraction {
            text: line.to_string(),
            propositions: Vec::new(),
        });
    }
    if let Some(mut sentence) = current.take() {
        if let Some(done) = prop.take() {
            sentence.propositions.push(done);
        }
        sentences.push(sentence);
    }

    let graph = PropositionGraph { sentences };
    let mut ids: Vec<usize> = graph.propositions().map(|p| p.id).collect();
    let before = ids.len();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != before {
        return Err(RdfnlError::FormatError {
            line: 0,
            message: "duplicate proposition id".to_string(),
        });
    }
    for p in graph.propositions() {
        for link in &p.linked {
            if ids.binary_search(&link.target).is_err() {
                return Err(RdfnlError::DanglingReference {
                    from: p.id,
                    target: link.target,
                });
            }
        }
    }
    Ok(graph)
}
