//! Phrase-level simplification of single-clause sentences.
//!
//! After clause splitting, each leaf sentence is compacted further by
//! peeling off phrases that modify rather than state: prepositional,
//! adverbial, and adjectival adjuncts, purpose infinitives, and lead noun
//! phrases become classified *simple contexts* attached to the leaf, while
//! appositives and participials become spawned context sentences and
//! subject/object enumerations and verb-phrase coordinations split the leaf
//! into coordinated siblings.

use serde::{Deserialize, Serialize};

use crate::discourse::{
    DiscourseLeaf, DiscourseNode, DiscourseTree, EdgeLabel, InternalNode, NodeKind,
    RhetoricalRelation,
};
use crate::pattern::{node_at, TreePath};
use crate::rules::RuleSet;
use crate::surgery::{finish_sentence, node_at_mut};
use crate::tree::ParseTree;

/// A contextual phrase attached to a proposition, classified by the
/// semantic relation it expresses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleContext {
    pub relation: RhetoricalRelation,
    pub phrase: String,
}

/// A sentence split off during phrase extraction, to be integrated into the
/// discourse tree next to its source leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct SpawnedSentence {
    /// `Core` for coordination siblings, `Context` for spawned context
    /// sentences (appositives, participials).
    pub edge: EdgeLabel,
    pub sentence: ParseTree,
    pub relation: RhetoricalRelation,
}

/// Everything `disembed_phrases` extracts from one leaf.
#[derive(Debug, Clone, PartialEq)]
pub struct PhrasalResult {
    pub core: ParseTree,
    pub simple_contexts: Vec<SimpleContext>,
    pub spawned: Vec<SpawnedSentence>,
}

/// The syntactic category of an extracted phrase, used to classify its
/// semantic relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhraseCategory {
    Prepositional,
    Adverbial,
    Adjectival,
    LeadNoun,
    Purpose,
}

/// Runs phrase extraction over every leaf of a discourse tree, attaching
/// simple contexts and integrating spawned sentences as new nodes. Spawned
/// sentences are themselves simplified recursively.
pub fn apply_phrasal(tree: &mut DiscourseTree, rules: &RuleSet) {
    for (_, child) in &mut tree.root.children {
        integrate(child, rules);
    }
}

fn integrate(node: &mut DiscourseNode, rules: &RuleSet) {
    if let DiscourseNode::Internal(internal) = node {
        for (_, child) in &mut internal.children {
            integrate(child, rules);
        }
        return;
    }
    let DiscourseNode::Leaf(leaf) = node else {
        return;
    };
    let result = disembed_phrases(&leaf.sentence, rules);
    let mut built = DiscourseNode::Leaf(DiscourseLeaf {
        sentence: result.core,
        contexts: result.simple_contexts,
    });
    let (siblings, contexts): (Vec<_>, Vec<_>) = result
        .spawned
        .into_iter()
        .partition(|s| s.edge == EdgeLabel::Core);
    if !siblings.is_empty() {
        let relation = siblings[0].relation;
        let mut children = vec![(EdgeLabel::Core, built)];
        for spawn in siblings {
            let mut sibling = DiscourseNode::leaf(spawn.sentence);
            integrate(&mut sibling, rules);
            children.push((EdgeLabel::Core, sibling));
        }
        built = DiscourseNode::Internal(InternalNode {
            kind: NodeKind::Coordination,
            relation,
            children,
        });
    }
    for spawn in contexts {
        let mut context = DiscourseNode::leaf(spawn.sentence);
        integrate(&mut context, rules);
        built = DiscourseNode::Internal(InternalNode {
            kind: NodeKind::Subordination,
            relation: spawn.relation,
            children: vec![(EdgeLabel::Core, built), (EdgeLabel::Context, context)],
        });
    }
    *node = built;
}

/// Extracts the phrasal categories from one single-clause sentence.
///
/// Splitting constructions (verb-phrase coordinations, noun-phrase
/// enumerations, appositives, participials) are applied repeatedly until
/// none remains, then contextual phrases are peeled off the final core.
/// Running the operation on its own core output extracts nothing further.
pub fn disembed_phrases(leaf: &ParseTree, rules: &RuleSet) -> PhrasalResult {
    let mut core = leaf.clone();
    let mut spawned = Vec::new();
    loop {
        if let Some((reduced, mut new)) = split_vp_coordination(&core, rules) {
            core = reduced;
            spawned.append(&mut new);
            continue;
        }
        if let Some((reduced, mut new)) = split_np_enumeration(&core, rules) {
            core = reduced;
            spawned.append(&mut new);
            continue;
        }
        if let Some((reduced, spawn)) = extract_np_modifier(&core) {
            core = reduced;
            spawned.push(spawn);
            continue;
        }
        if let Some((reduced, spawn)) = extract_initial_participial(&core) {
            core = reduced;
            spawned.push(spawn);
            continue;
        }
        break;
    }
    let mut simple_contexts = Vec::new();
    while let Some((path, category)) = find_extractable_phrase(&core, rules) {
        let phrase_node = node_at(&core, &path);
        let relation = classify_phrase(phrase_node, category, rules);
        let phrase = phrase_node.yield_text().unwrap_or_default();
        core = remove_with_comma(core, &path);
        simple_contexts.push(SimpleContext { relation, phrase });
    }
    PhrasalResult { core, simple_contexts, spawned }
}

/// Classifies the semantic relation an extracted phrase expresses. Pure and
/// total: anything unrecognized is `Unknown`.
pub fn classify_phrase(
    phrase: &ParseTree,
    category: PhraseCategory,
    rules: &RuleSet,
) -> RhetoricalRelation {
    match category {
        PhraseCategory::Prepositional => {
            let Some(prep) = first_leaf_with(phrase, &["IN", "TO"]) else {
                return RhetoricalRelation::Unknown;
            };
            let prep = prep.to_lowercase();
            let temporal_prep = rules.lexicons.get("temporal_preps").is_some_and(|s| s.contains(&prep));
            let spatial_prep = rules.lexicons.get("spatial_preps").is_some_and(|s| s.contains(&prep));
            if temporal_prep && head_noun_is_temporal(phrase, rules) {
                RhetoricalRelation::Temporal
            } else if spatial_prep {
                RhetoricalRelation::Spatial
            } else {
                RhetoricalRelation::Unknown
            }
        }
        PhraseCategory::Adverbial => {
            let Some(adverb) = first_leaf_with(phrase, &["RB", "RBR", "RBS"]) else {
                return RhetoricalRelation::Unknown;
            };
            let adverb = adverb.to_lowercase();
            if rules.lexicons.get("temporal_adverbs").is_some_and(|s| s.contains(&adverb)) {
                RhetoricalRelation::Temporal
            } else if rules.lexicons.get("spatial_adverbs").is_some_and(|s| s.contains(&adverb)) {
                RhetoricalRelation::Spatial
            } else {
                RhetoricalRelation::Unknown
            }
        }
        PhraseCategory::Adjectival => RhetoricalRelation::Unknown,
        PhraseCategory::LeadNoun => {
            if head_noun_is_temporal(phrase, rules) {
                RhetoricalRelation::Temporal
            } else {
                RhetoricalRelation::Unknown
            }
        }
        PhraseCategory::Purpose => RhetoricalRelation::Purpose,
    }
}

// ── Splitting constructions ─────────────────────────────────────────

fn subject_index(sentence: &ParseTree) -> Option<usize> {
    let vp = sentence.children.iter().position(|c| c.label == "VP")?;
    sentence.children[..vp].iter().rposition(|c| c.label == "NP")
}

/// The chain of verb-phrase nodes from the sentence's VP child down through
/// single nested VPs (auxiliary chains), as paths.
fn vp_spine(sentence: &ParseTree) -> Vec<TreePath> {
    let Some(first) = sentence.children.iter().position(|c| c.label == "VP") else {
        return Vec::new();
    };
    let mut spine = vec![vec![first]];
    loop {
        let last = spine.last().unwrap();
        let node = node_at(sentence, last);
        let vp_children: Vec<usize> = node
            .children
            .iter()
            .enumerate()
            .filter(|(_, c)| c.label == "VP")
            .map(|(i, _)| i)
            .collect();
        if vp_children.len() == 1 {
            let mut next = last.clone();
            next.push(vp_children[0]);
            spine.push(next);
        } else {
            return spine;
        }
    }
}

fn classify_conjunction(cc: &str, rules: &RuleSet) -> RhetoricalRelation {
    match rules.cue_tables.classify(cc, "coordination") {
        RhetoricalRelation::Unknown => RhetoricalRelation::List,
        relation => relation,
    }
}

/// Splits `subject VP1 and VP2 ...` into one sentence per conjunct, sharing
/// the subject and anything above the coordination (auxiliaries included).
fn split_vp_coordination(
    sentence: &ParseTree,
    rules: &RuleSet,
) -> Option<(ParseTree, Vec<SpawnedSentence>)> {
    subject_index(sentence)?;
    for path in vp_spine(sentence) {
        let node = node_at(sentence, &path);
        let conjuncts: Vec<usize> = node
            .children
            .iter()
            .enumerate()
            .filter(|(_, c)| c.label == "VP")
            .map(|(i, _)| i)
            .collect();
        let cc = node.children.iter().find(|c| c.label == "CC");
        let (Some(cc), true) = (cc, conjuncts.len() >= 2) else {
            continue;
        };
        let relation = classify_conjunction(&cc.token.as_ref()?.text.to_lowercase(), rules);
        let mut sentences = conjuncts.into_iter().map(|idx| {
            let conjunct = node.children[idx].clone();
            let mut copy = sentence.clone();
            *node_at_mut(&mut copy, &path) = conjunct;
            finish_sentence(copy)
        });
        let core = sentences.next()?;
        let spawned = sentences
            .map(|sentence| SpawnedSentence { edge: EdgeLabel::Core, sentence, relation })
            .collect();
        return Some((core, spawned));
    }
    None
}

/// An NP of the shape `NP (, NP)* CC NP`: the conjunct indices and the
/// conjunction token.
fn enumeration_parts(np: &ParseTree) -> Option<(Vec<usize>, String)> {
    let mut conjuncts = Vec::new();
    let mut conjunction = None;
    for (i, child) in np.children.iter().enumerate() {
        match child.label.as_str() {
            "NP" => conjuncts.push(i),
            "CC" => conjunction = Some(child.token.as_ref()?.text.to_lowercase()),
            "," => {}
            _ => return None,
        }
    }
    (conjuncts.len() >= 2).then_some(())?;
    conjunction.map(|cc| (conjuncts, cc))
}

/// Splits an enumerated subject or object into one sentence per conjunct,
/// distributing the rest of the sentence to each.
fn split_np_enumeration(
    sentence: &ParseTree,
    rules: &RuleSet,
) -> Option<(ParseTree, Vec<SpawnedSentence>)> {
    let mut candidates: Vec<TreePath> = Vec::new();
    if let Some(subject) = subject_index(sentence) {
        candidates.push(vec![subject]);
    }
    for vp_path in vp_spine(sentence) {
        let vp = node_at(sentence, &vp_path);
        if let Some(object) = vp.children.iter().position(|c| c.label == "NP") {
            let mut path = vp_path.clone();
            path.push(object);
            candidates.push(path);
        }
    }
    for path in candidates {
        let np = node_at(sentence, &path);
        let Some((conjuncts, cc)) = enumeration_parts(np) else {
            continue;
        };
        let relation = classify_conjunction(&cc, rules);
        let mut sentences = conjuncts.into_iter().map(|idx| {
            let conjunct = np.children[idx].clone();
            let mut copy = sentence.clone();
            *node_at_mut(&mut copy, &path) = conjunct;
            finish_sentence(copy)
        });
        let core = sentences.next()?;
        let spawned = sentences
            .map(|sentence| SpawnedSentence { edge: EdgeLabel::Core, sentence, relation })
            .collect();
        return Some((core, spawned));
    }
    None
}

// ── Spawned context sentences ───────────────────────────────────────

/// Whether the head noun of a phrase is plural (`NNS`/`NNPS`).
fn head_is_plural(np: &ParseTree) -> bool {
    fn last_noun_label(node: &ParseTree) -> Option<&str> {
        if node.is_leaf() {
            return node.label.starts_with("NN").then_some(node.label.as_str());
        }
        node.children.iter().rev().find_map(last_noun_label)
    }
    matches!(last_noun_label(np), Some("NNS") | Some("NNPS"))
}

/// Builds `head <copula> modifier` as a standalone sentence. The copula is
/// present-tense for appositives and `VBG` participials, past for `VBN`.
fn copula_sentence(head: &ParseTree, modifier: &ParseTree, past: bool) -> ParseTree {
    let plural = head_is_plural(head);
    let (label, text) = match (past, plural) {
        (false, false) => ("VBZ", "is"),
        (false, true) => ("VBP", "are"),
        (true, false) => ("VBD", "was"),
        (true, true) => ("VBD", "were"),
    };
    let copula = ParseTree::leaf(label, text, 0);
    let vp = ParseTree::node("VP", vec![copula, modifier.clone()]);
    finish_sentence(ParseTree::node("S", vec![head.clone(), vp]))
}

fn first_leaf_label(node: &ParseTree) -> Option<&str> {
    if node.is_leaf() {
        return Some(node.label.as_str());
    }
    node.children.first().and_then(first_leaf_label)
}

/// Finds an NP of the shape `(NP head , NP|VP ,?)` — an appositive or a
/// participial modifier set off by commas — anywhere in the sentence, and
/// spawns `head is/was …` while collapsing the NP to its head.
fn extract_np_modifier(sentence: &ParseTree) -> Option<(ParseTree, SpawnedSentence)> {
    fn find(node: &ParseTree, path: &mut TreePath) -> Option<TreePath> {
        if node.label == "NP" && matches_modifier_shape(node) {
            return Some(path.clone());
        }
        for (i, child) in node.children.iter().enumerate() {
            path.push(i);
            if let Some(hit) = find(child, path) {
                return Some(hit);
            }
            path.pop();
        }
        None
    }
    fn matches_modifier_shape(np: &ParseTree) -> bool {
        let kids = &np.children;
        let trailing_comma = kids.len() == 4 && kids[3].label == ",";
        (kids.len() == 3 || trailing_comma)
            && kids[0].label == "NP"
            && kids[1].label == ","
            && (kids[2].label == "NP"
                || (kids[2].label == "VP"
                    && matches!(first_leaf_label(&kids[2]), Some("VBG") | Some("VBN"))))
    }

    let path = find(sentence, &mut Vec::new())?;
    let np = node_at(sentence, &path);
    let head = &np.children[0];
    let modifier = &np.children[2];
    let past = modifier.label == "VP" && first_leaf_label(modifier) == Some("VBN");
    let spawn = SpawnedSentence {
        edge: EdgeLabel::Context,
        sentence: copula_sentence(head, modifier, past),
        relation: RhetoricalRelation::Elaboration,
    };
    let mut reduced = sentence.clone();
    *node_at_mut(&mut reduced, &path) = head.clone();
    Some((finish_sentence(reduced), spawn))
}

/// Handles a sentence-initial participial clause: `VBG/VBN …, subject VP`.
/// The subject is copied into a spawned `subject is/was …` sentence.
fn extract_initial_participial(sentence: &ParseTree) -> Option<(ParseTree, SpawnedSentence)> {
    let first = sentence.children.first()?;
    if first.label != "VP" || !matches!(first_leaf_label(first), Some("VBG") | Some("VBN")) {
        return None;
    }
    if sentence.children.get(1).map(|c| c.label.as_str()) != Some(",") {
        return None;
    }
    let subject = sentence.children.iter().skip(2).find(|c| c.label == "NP")?;
    let past = first_leaf_label(first) == Some("VBN");
    let spawn = SpawnedSentence {
        edge: EdgeLabel::Context,
        sentence: copula_sentence(subject, first, past),
        relation: RhetoricalRelation::Elaboration,
    };
    let mut reduced = sentence.clone();
    reduced.children.drain(0..2);
    Some((finish_sentence(reduced), spawn))
}

// ── Simple-context phrases ──────────────────────────────────────────

fn first_leaf_with<'t>(node: &'t ParseTree, labels: &[&str]) -> Option<&'t str> {
    if let Some(token) = &node.token {
        return labels.contains(&node.label.as_str()).then_some(token.text.as_str());
    }
    node.children.iter().find_map(|c| first_leaf_with(c, labels))
}

/// Whether the phrase's head noun is date- or time-like: a known temporal
/// noun, or a four-digit year.
fn head_noun_is_temporal(phrase: &ParseTree, rules: &RuleSet) -> bool {
    fn last_nominal(node: &ParseTree) -> Option<&ParseTree> {
        if node.is_leaf() {
            return (node.label.starts_with("NN") || node.label == "CD").then_some(node);
        }
        node.children.iter().rev().find_map(last_nominal)
    }
    let Some(head) = last_nominal(phrase) else {
        return false;
    };
    let text = head.token.as_ref().map(|t| t.text.to_lowercase()).unwrap_or_default();
    if head.label == "CD" {
        return text.len() == 4 && text.chars().all(|c| c.is_ascii_digit());
    }
    rules.lexicons.get("temporal_nouns").is_some_and(|s| s.contains(&text))
}

fn main_verb_is_copula(vp: &ParseTree, rules: &RuleSet) -> bool {
    let verb = vp
        .children
        .iter()
        .find(|c| c.is_leaf() && (c.label.starts_with("VB") || c.label == "MD"))
        .and_then(|c| c.token.as_ref())
        .map(|t| t.text.to_lowercase());
    match verb {
        Some(v) => rules.lexicons.get("be_verbs").is_some_and(|s| s.contains(&v)),
        None => false,
    }
}

fn has_preceding_complement(vp: &ParseTree, idx: usize) -> bool {
    vp.children[..idx]
        .iter()
        .any(|c| matches!(c.label.as_str(), "NP" | "S" | "SBAR" | "ADJP"))
}

/// A purpose infinitive: `(S (VP (TO to) …))` with no subject of its own.
fn is_bare_infinitive(node: &ParseTree) -> bool {
    node.label == "S"
        && !node.children.iter().any(|c| c.label == "NP")
        && node.children.iter().any(|c| {
            c.label == "VP" && first_leaf_with(c, &["TO"]).is_some_and(|t| t.eq_ignore_ascii_case("to"))
        })
}

/// Finds the next phrase to peel off the core, in document order.
fn find_extractable_phrase(
    sentence: &ParseTree,
    rules: &RuleSet,
) -> Option<(TreePath, PhraseCategory)> {
    // Sentence-level adjuncts: anything before or after the clause skeleton.
    let subject = subject_index(sentence);
    for (i, child) in sentence.children.iter().enumerate() {
        match child.label.as_str() {
            "PP" => return Some((vec![i], PhraseCategory::Prepositional)),
            "ADVP" => return Some((vec![i], PhraseCategory::Adverbial)),
            "ADJP" => return Some((vec![i], PhraseCategory::Adjectival)),
            "NP" if Some(i) != subject => {
                // A lead noun phrase: `NP ,` before the subject.
                let comma_next =
                    sentence.children.get(i + 1).map(|c| c.label.as_str()) == Some(",");
                let before_subject = subject.is_some_and(|s| i < s);
                if comma_next && before_subject {
                    return Some((vec![i], PhraseCategory::LeadNoun));
                }
            }
            _ => {}
        }
    }
    // Verb-phrase-level adjuncts along the auxiliary spine.
    for vp_path in vp_spine(sentence) {
        let vp = node_at(sentence, &vp_path);
        let copula = main_verb_is_copula(vp, rules);
        for (i, child) in vp.children.iter().enumerate() {
            let mut path = vp_path.clone();
            path.push(i);
            match child.label.as_str() {
                "PP" => {
                    let extract = has_preceding_complement(vp, i)
                        || (!copula
                            && matches!(
                                classify_phrase(child, PhraseCategory::Prepositional, rules),
                                RhetoricalRelation::Temporal | RhetoricalRelation::Spatial
                            ));
                    if extract {
                        return Some((path, PhraseCategory::Prepositional));
                    }
                }
                "ADVP" => {
                    if has_preceding_complement(vp, i) || !copula {
                        return Some((path, PhraseCategory::Adverbial));
                    }
                }
                "S" if is_bare_infinitive(child) => {
                    let complement = vp
                        .children
                        .iter()
                        .find(|c| c.is_leaf() && c.label.starts_with("VB"))
                        .and_then(|c| c.token.as_ref())
                        .map(|t| t.text.to_lowercase())
                        .is_some_and(|v| {
                            rules.lexicons.get("complement_verbs").is_some_and(|s| s.contains(&v))
                        });
                    if !complement {
                        return Some((path, PhraseCategory::Purpose));
                    }
                }
                "SBAR" => {
                    // "in order to …" purpose adjuncts.
                    let words: Vec<String> = child
                        .tokens()
                        .iter()
                        .take(2)
                        .map(|t| t.text.to_lowercase())
                        .collect();
                    if words == ["in", "order"] && first_leaf_with(child, &["TO"]).is_some() {
                        return Some((path, PhraseCategory::Purpose));
                    }
                }
                _ => {}
            }
        }
    }
    None
}

/// Removes the node at `path` together with one adjacent comma (following
/// preferred, else preceding), then tidies the sentence.
fn remove_with_comma(mut sentence: ParseTree, path: &TreePath) -> ParseTree {
    let (parent_path, idx) = (&path[..path.len() - 1], *path.last().unwrap());
    let parent = node_at_mut(&mut sentence, parent_path);
    parent.children.remove(idx);
    if parent.children.get(idx).map(|c| c.label.as_str()) == Some(",") {
        parent.children.remove(idx);
    } else if idx > 0 && parent.children.get(idx - 1).map(|c| c.label.as_str()) == Some(",") {
        parent.children.remove(idx - 1);
    }
    finish_sentence(sentence)
}
