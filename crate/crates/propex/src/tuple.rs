//! Relational tuple extraction from a simplified single-clause sentence.
//!
//! By the time a sentence reaches this stage it should be minimal: one
//! subject, one verb group, at most one complement. The extractor reads the
//! tuple straight off the tree — no statistics, no fallbacks — and reports
//! sentences it cannot read as skips rather than guessing.

use thiserror::Error;

use crate::tree::{ParseTree, Token};

/// A binary relational tuple: who (`arg_subj`) did what (`rel`) to what
/// (`arg_obj`, possibly empty). All fields are space-joined tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalTuple {
    pub rel: String,
    pub arg_subj: String,
    pub arg_obj: String,
}

/// Why a leaf sentence produced no tuple. Skips are diagnostics, not
/// failures: the rest of the document is unaffected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("no verb found")]
    NoVerbFound,
    #[error("no subject found")]
    NoSubjectFound,
}

fn is_negation(text: &str) -> bool {
    matches!(text.to_lowercase().as_str(), "not" | "n't" | "never")
}

fn is_verb_label(label: &str) -> bool {
    label.starts_with("VB") || label == "MD"
}

/// Extracts the tuple of one simplified sentence.
///
/// The verb group is the auxiliary/modal chain down the verb-phrase spine,
/// plus negation and right-attached particles. The subject is the noun
/// phrase before the spine; the object is everything after the verb group,
/// minus punctuation. A subject token capitalized only because it opens the
/// sentence is lowercased (proper nouns and "I" keep their casing).
pub fn extract_tuple(leaf: &ParseTree) -> Result<RelationalTuple, TupleError> {
    let vp_idx = leaf
        .children
        .iter()
        .position(|c| c.label == "VP")
        .ok_or(TupleError::NoVerbFound)?;

    // Walk the spine, collecting the verb group.
    let mut rel_tokens: Vec<&Token> = Vec::new();
    let mut node = &leaf.children[vp_idx];
    loop {
        let next = node.children.iter().position(|c| c.label == "VP");
        for (i, child) in node.children.iter().enumerate() {
            if Some(i) == next {
                continue;
            }
            if let Some(token) = &child.token {
                if is_verb_label(&child.label) || (child.label == "RB" && is_negation(&token.text))
                {
                    rel_tokens.push(token);
                }
            } else if child.label == "PRT" {
                rel_tokens.extend(child.tokens());
            }
        }
        match next {
            Some(i) => node = &node.children[i],
            None => break,
        }
    }
    if !rel_tokens.iter().any(|t| t.text.chars().any(|c| c.is_alphabetic())) {
        return Err(TupleError::NoVerbFound);
    }
    rel_tokens.sort_by_key(|t| t.index);
    let rel = join_tokens(&rel_tokens);

    // Subject: the last noun phrase before the spine.
    let subj_node = leaf.children[..vp_idx]
        .iter()
        .rev()
        .find(|c| c.label == "NP")
        .ok_or(TupleError::NoSubjectFound)?;
    let arg_subj = subject_text(subj_node);

    // Object: every non-punctuation token after the verb group.
    let last_rel_index = rel_tokens.last().map(|t| t.index).unwrap_or(0);
    let object_tokens: Vec<&Token> = leaf
        .tokens()
        .into_iter()
        .filter(|t| t.index > last_rel_index)
        .filter(|t| t.text.chars().any(|c| c.is_alphanumeric()))
        .collect();
    let arg_obj = join_tokens(&object_tokens);

    Ok(RelationalTuple { rel, arg_subj, arg_obj })
}

fn join_tokens(tokens: &[&Token]) -> String {
    tokens.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(" ")
}

/// The subject yield, lowercasing a first token that is capitalized only by
/// sentence position.
fn subject_text(np: &ParseTree) -> String {
    fn first_leaf(node: &ParseTree) -> Option<&ParseTree> {
        if node.token.is_some() {
            return Some(node);
        }
        node.children.iter().find_map(first_leaf)
    }
    let mut words: Vec<String> = np.tokens().iter().map(|t| t.text.clone()).collect();
    if let Some(leaf) = first_leaf(np) {
        let token = leaf.token.as_ref().unwrap();
        let sentence_initial = token.index == 0;
        let proper = matches!(leaf.label.as_str(), "NNP" | "NNPS");
        if sentence_initial && !proper && token.text != "I" {
            if let Some(first) = words.first_mut() {
                let mut chars = first.chars();
                if let Some(c) = chars.next() {
                    *first = c.to_lowercase().collect::<String>() + chars.as_str();
                }
            }
        }
    }
    words.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_ptb;

    fn tuple(s: &str) -> RelationalTuple {
        extract_tuple(&parse_ptb(s).unwrap()).unwrap()
    }

    #[test]
    fn modal_chain_with_no_object() {
        let t = tuple("(S (NP (DT the) (NN funding)) (VP (MD will) (VP (VB be) (VP (VBN delayed)))) (. .))");
        assert_eq!(t.rel, "will be delayed");
        assert_eq!(t.arg_subj, "the funding");
        assert_eq!(t.arg_obj, "");
    }

    #[test]
    fn infinitive_complement_stays_in_object() {
        let t = tuple(
            "(S (NP (NNP Congress)) (VP (VBP fail) (S (VP (TO to) (VP (VB increase) (NP (NP (DT the) (NNP Treasury) (POS 's)) (NN borrowing) (NN capacity)))))) (. .))",
        );
        assert_eq!(t.rel, "fail");
        assert_eq!(t.arg_subj, "Congress");
        assert_eq!(t.arg_obj, "to increase the Treasury 's borrowing capacity");
    }

    #[test]
    fn bare_intransitive() {
        let t = tuple("(S (NP (NNS Dogs)) (VP (VBP bark)) (. .))");
        assert_eq!((t.rel.as_str(), t.arg_obj.as_str()), ("bark", ""));
        // Sentence-initial common noun is lowercased.
        assert_eq!(t.arg_subj, "dogs");
    }

    #[test]
    fn proper_noun_subject_keeps_casing() {
        let t = tuple("(S (NP (NNP President) (NNP Bush)) (VP (VBP fail) (S (VP (TO to) (VP (VB act))))) (. .))");
        assert_eq!(t.arg_subj, "President Bush");
    }

    #[test]
    fn sentence_initial_determiner_is_lowercased() {
        let t = tuple("(S (NP (DT The) (NN mayor)) (VP (VBD spoke)) (. .))");
        assert_eq!(t.arg_subj, "the mayor");
    }

    #[test]
    fn negation_and_particle_join_the_verb_group() {
        let neg = tuple("(S (NP (PRP She)) (VP (VBD did) (RB not) (VP (VB agree))) (. .))");
        assert_eq!(neg.rel, "did not agree");
        let prt = tuple("(S (NP (PRP He)) (VP (VBD picked) (PRT (RP up)) (NP (DT the) (NN box))) (. .))");
        assert_eq!(prt.rel, "picked up");
        assert_eq!(prt.arg_obj, "the box");
    }

    #[test]
    fn copula_predicate_becomes_object() {
        let t = tuple("(S (NP (NNP Cassini)) (VP (VBZ is) (NP (DT an) (NN astronomer))))");
        assert_eq!(t.rel, "is");
        assert_eq!(t.arg_obj, "an astronomer");
    }

    #[test]
    fn missing_verb_and_missing_subject_are_reported() {
        let no_verb = parse_ptb("(S (NP (DT the) (NN dog)) (. .))").unwrap();
        assert_eq!(extract_tuple(&no_verb), Err(TupleError::NoVerbFound));
        let imperative = parse_ptb("(S (VP (VB Stop)) (. .))").unwrap();
        assert_eq!(extract_tuple(&imperative), Err(TupleError::NoSubjectFound));
    }

    #[test]
    fn tuple_tokens_come_from_the_leaf() {
        let tree = parse_ptb(
            "(S (NP (DT The) (NN court)) (VP (MD will) (VP (VB uphold) (NP (DT the) (NN law)))) (. .))",
        )
        .unwrap();
        let t = extract_tuple(&tree).unwrap();
        let source: Vec<String> =
            tree.tokens().iter().map(|tok| tok.text.to_lowercase()).collect();
        for field in [&t.rel, &t.arg_subj, &t.arg_obj] {
            for word in field.split_whitespace() {
                assert!(source.contains(&word.to_lowercase()), "token {word} not in source");
            }
        }
    }
}
