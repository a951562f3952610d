//! JSON output with a stable schema and key order.
//!
//! ```json
//! {
//!   "sentences": [
//!     {
//!       "text": "...",
//!       "propositions": [
//!         {
//!           "id": 1,
//!           "contextLayer": 0,
//!           "subject": "...",
//!           "relation": "...",
//!           "object": "...",
//!           "simpleContexts": [ { "relation": "TEMPORAL", "phrase": "..." } ],
//!           "linkedContexts": [ { "relation": "CONDITION", "target": 2 } ]
//!         }
//!       ]
//!     }
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::discourse::RhetoricalRelation;
use crate::graph::{
    LinkedContext, Proposition, PropositionGraph, RelationalTuple, SentenceExtraction,
};
use crate::phrasal::SimpleContext;

#[derive(Serialize, Deserialize)]
struct DocumentOut {
    sentences: Vec<SentenceOut>,
}

#[derive(Serialize, Deserialize)]
struct SentenceOut {
    text: String,
    propositions: Vec<PropositionOut>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct PropositionOut {
    id: usize,
    context_layer: usize,
    subject: String,
    relation: String,
    object: String,
    simple_contexts: Vec<SimpleContext>,
    linked_contexts: Vec<LinkOut>,
}

#[derive(Serialize, Deserialize)]
struct LinkOut {
    relation: RhetoricalRelation,
    target: usize,
}

fn to_mirror(graph: &PropositionGraph) -> DocumentOut {
    DocumentOut {
        sentences: graph
            .sentences
            .iter()
            .map(|s| SentenceOut {
                text: s.text.clone(),
                propositions: s
                    .propositions
                    .iter()
                    .map(|p| PropositionOut {
                        id: p.id,
                        context_layer: p.context_layer,
                        subject: p.tuple.arg_subj.clone(),
                        relation: p.tuple.rel.clone(),
                        object: p.tuple.arg_obj.clone(),
                        simple_contexts: p.simple.clone(),
                        linked_contexts: p
                            .linked
                            .iter()
                            .map(|l| LinkOut { relation: l.relation, target: l.target })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Serializes a graph as pretty-printed JSON with a trailing newline.
pub fn emit_json(graph: &PropositionGraph) -> String {
    let mirror = to_mirror(graph);
    let mut out = serde_json::to_string_pretty(&mirror).expect("graph serializes");
    out.push('\n');
    out
}

/// Parses the JSON form back into a graph.
pub fn parse_json(input: &str) -> Result<PropositionGraph, serde_json::Error> {
    let mirror: DocumentOut = serde_json::from_str(input)?;
    Ok(PropositionGraph {
        sentences: mirror
            .sentences
            .into_iter()
            .map(|s| SentenceExtraction {
                text: s.text,
                propositions: s
                    .propositions
                    .into_iter()
                    .map(|p| Proposition {
                        id: p.id,
                        context_layer: p.context_layer,
                        tuple: RelationalTuple {
                            rel: p.relation,
                            arg_subj: p.subject,
                            arg_obj: p.object,
                        },
                        simple: p.simple_contexts,
                        linked: p
                            .linked_contexts
                            .into_iter()
                            .map(|l| LinkedContext { relation: l.relation, target: l.target })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> PropositionGraph {
        PropositionGraph {
            sentences: vec![SentenceExtraction {
                text: "Dogs bark .".to_string(),
                propositions: vec![Proposition {
                    id: 1,
                    context_layer: 0,
                    tuple: RelationalTuple {
                        rel: "bark".to_string(),
                        arg_subj: "dogs".to_string(),
                        arg_obj: String::new(),
                    },
                    simple: vec![SimpleContext {
                        relation: RhetoricalRelation::Temporal,
                        phrase: "on Monday".to_string(),
                    }],
                    linked: vec![LinkedContext {
                        relation: RhetoricalRelation::Condition,
                        target: 1,
                    }],
                }],
            }],
        }
    }

    #[test]
    fn keys_use_camel_case_in_schema_order() {
        let out = emit_json(&sample());
        let id = out.find("\"id\"").unwrap();
        let layer = out.find("\"contextLayer\"").unwrap();
        let subject = out.find("\"subject\"").unwrap();
        let relation = out.find("\"relation\"").unwrap();
        let object = out.find("\"object\"").unwrap();
        let simple = out.find("\"simpleContexts\"").unwrap();
        let linked = out.find("\"linkedContexts\"").unwrap();
        assert!(id < layer && layer < subject && subject < relation);
        assert!(relation < object && object < simple && simple < linked);
    }

    #[test]
    fn relations_serialize_as_uppercase_names() {
        let out = emit_json(&sample());
        assert!(out.contains("\"TEMPORAL\""), "got: {out}");
        assert!(out.contains("\"CONDITION\""));
    }

    #[test]
    fn round_trips_through_parse() {
        let graph = sample();
        assert_eq!(parse_json(&emit_json(&graph)).unwrap(), graph);
    }

    #[test]
    fn ends_with_single_newline() {
        let out = emit_json(&sample());
        assert!(out.ends_with('\n'));
        assert!(!out.ends_with("\n\n"));
    }
}
