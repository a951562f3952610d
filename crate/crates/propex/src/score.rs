//! Precision/recall scoring of an extraction against gold tuples.
//!
//! Gold records pair with the graph's sentence groups by position: the
//! first record scores the first input sentence, and so on. A predicted
//! tuple matches a gold tuple when, for each of subject/relation/object,
//! the gold field's head token (its last token after lowercasing and
//! punctuation stripping) occurs among the predicted field's tokens — and
//! an empty gold field only matches an empty predicted field. Matching is
//! greedy in proposition-id order and each gold tuple is consumed by at
//! most one prediction.

use serde::Deserialize;
use thiserror::Error;

use crate::graph::PropositionGraph;

/// One reference tuple. `object` may be empty for intransitives.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct GoldTuple {
    pub subject: String,
    pub relation: String,
    #[serde(default)]
    pub object: String,
}

/// The reference tuples for one input sentence.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct GoldRecord {
    pub sentence: String,
    pub tuples: Vec<GoldTuple>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("gold standard contains no tuples")]
    EmptyGold,
}

fn norm_tokens(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split_whitespace()
        .map(|w| w.chars().filter(|c| c.is_alphanumeric()).collect::<String>())
        .filter(|w| !w.is_empty())
        .collect()
}

fn head_token(text: &str) -> Option<String> {
    norm_tokens(text).pop()
}

fn field_matches(gold: &str, predicted: &str) -> bool {
    match head_token(gold) {
        Some(head) => norm_tokens(predicted).contains(&head),
        None => norm_tokens(predicted).is_empty(),
    }
}

fn tuple_matches(gold: &GoldTuple, predicted: &crate::graph::RelationalTuple) -> bool {
    field_matches(&gold.subject, &predicted.arg_subj)
        && field_matches(&gold.relation, &predicted.rel)
        && field_matches(&gold.object, &predicted.arg_obj)
}

/// Scores `predicted` against `gold` (see module docs for the matching
/// rules). With zero predictions, precision is 1.0 by convention.
pub fn score(predicted: &PropositionGraph, gold: &[GoldRecord]) -> Result<Scores, ScoreError> {
    let total_gold: usize = gold.iter().map(|r| r.tuples.len()).sum();
    if total_gold == 0 {
        return Err(ScoreError::EmptyGold);
    }
    let total_predicted: usize = predicted.sentences.iter().map(|s| s.propositions.len()).sum();

    let mut matched = 0usize;
    for (sentence, record) in predicted.sentences.iter().zip(gold) {
        let mut used = vec![false; record.tuples.len()];
        for prop in &sentence.propositions {
            let hit = record
                .tuples
                .iter()
                .enumerate()
                .find(|(i, g)| !used[*i] && tuple_matches(g, &prop.tuple));
            if let Some((i, _)) = hit {
                used[i] = true;
                matched += 1;
            }
        }
    }

    let precision = if total_predicted == 0 {
        1.0
    } else {
        matched as f64 / total_predicted as f64
    };
    let recall = matched as f64 / total_gold as f64;
    Ok(Scores { precision, recall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Proposition, RelationalTuple, SentenceExtraction};

    fn prop(id: usize, subj: &str, rel: &str, obj: &str) -> Proposition {
        Proposition {
            id,
            context_layer: 0,
            tuple: RelationalTuple {
                rel: rel.to_string(),
                arg_subj: subj.to_string(),
                arg_obj: obj.to_string(),
            },
            simple: vec![],
            linked: vec![],
        }
    }

    fn graph(sentences: Vec<Vec<Proposition>>) -> PropositionGraph {
        PropositionGraph {
            sentences: sentences
                .into_iter()
                .map(|propositions| SentenceExtraction { text: String::new(), propositions })
                .collect(),
        }
    }

    fn gold(tuples: Vec<(&str, &str, &str)>) -> GoldRecord {
        GoldRecord {
            sentence: String::new(),
            tuples: tuples
                .into_iter()
                .map(|(s, r, o)| GoldTuple {
                    subject: s.to_string(),
                    relation: r.to_string(),
                    object: o.to_string(),
                })
                .collect(),
        }
    }

    #[test]
    fn perfect_extraction_scores_one() {
        let g = graph(vec![vec![prop(1, "the funding", "will be delayed", "")]]);
        let records = [gold(vec![("the funding", "will be delayed", "")])];
        let s = score(&g, &records).unwrap();
        assert_eq!((s.precision, s.recall), (1.0, 1.0));
    }

    #[test]
    fn head_containment_tolerates_extra_modifiers() {
        // Gold heads: "treasury", "announce", "refunding" — all present in
        // the longer predicted fields.
        let g = graph(vec![vec![prop(
            1,
            "the US Treasury",
            "will formally announce",
            "details of the November refunding",
        )]]);
        let records = [gold(vec![("the Treasury", "announce", "the refunding")])];
        let s = score(&g, &records).unwrap();
        assert_eq!((s.precision, s.recall), (1.0, 1.0));
    }

    #[test]
    fn empty_gold_object_requires_empty_prediction() {
        let g = graph(vec![vec![prop(1, "dogs", "bark", "loudly")]]);
        let records = [gold(vec![("dogs", "bark", "")])];
        let s = score(&g, &records).unwrap();
        assert_eq!((s.precision, s.recall), (0.0, 0.0));
    }

    #[test]
    fn misses_and_extras_move_the_two_scores_independently() {
        let g = graph(vec![vec![
            prop(1, "dogs", "bark", ""),
            prop(2, "dogs", "howl", ""),
        ]]);
        let records = [gold(vec![
            ("dogs", "bark", ""),
            ("cats", "purr", ""),
            ("birds", "sing", ""),
        ])];
        let s = score(&g, &records).unwrap();
        assert_eq!(s.precision, 0.5); // 1 of 2 predictions
        assert!((s.recall - 1.0 / 3.0).abs() < 1e-12); // 1 of 3 gold
    }

    #[test]
    fn each_gold_tuple_is_consumed_once() {
        let g = graph(vec![vec![
            prop(1, "dogs", "bark", ""),
            prop(2, "dogs", "bark", ""),
        ]]);
        let records = [gold(vec![("dogs", "bark", "")])];
        let s = score(&g, &records).unwrap();
        assert_eq!(s.precision, 0.5);
        assert_eq!(s.recall, 1.0);
    }

    #[test]
    fn records_pair_with_sentences_by_position() {
        let g = graph(vec![
            vec![prop(1, "dogs", "bark", "")],
            vec![prop(2, "cats", "purr", "")],
        ]);
        // Swapped gold records: neither matches its own sentence.
        let records = [gold(vec![("cats", "purr", "")]), gold(vec![("dogs", "bark", "")])];
        let s = score(&g, &records).unwrap();
        assert_eq!((s.precision, s.recall), (0.0, 0.0));
    }

    #[test]
    fn empty_gold_is_an_error() {
        let g = graph(vec![vec![prop(1, "dogs", "bark", "")]]);
        assert_eq!(score(&g, &[]).unwrap_err(), ScoreError::EmptyGold);
        let empty_record = [gold(vec![])];
        assert_eq!(score(&g, &empty_record).unwrap_err(), ScoreError::EmptyGold);
    }
}
