//! The discourse tree: how split sentences relate to each other.
//!
//! Clause splitting does not just shred a sentence into fragments — it keeps
//! the structure: a tree whose internal nodes say *how* the pieces relate
//! (coordination between equals, subordination of context under a core) and
//! *what* the relationship is (a rhetorical relation classified from the cue
//! phrase that joined the clauses).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::phrasal::SimpleContext;
use crate::rules::{RuleApplication, RuleError, RuleSet, TransformationRule};
use crate::tree::ParseTree;
use crate::Document;
use crate::pattern::Bindings;

/// The closed set of rhetorical relations a node or context can carry.
/// Serialized in uppercase ASCII (`CONTRAST`, `LIST`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RhetoricalRelation {
    List,
    Disjunction,
    Contrast,
    Cause,
    Result,
    Condition,
    Purpose,
    Temporal,
    Spatial,
    Attribution,
    Background,
    Elaboration,
    Unknown,
}

impl RhetoricalRelation {
    pub const ALL: [RhetoricalRelation; 13] = [
        RhetoricalRelation::List,
        RhetoricalRelation::Disjunction,
        RhetoricalRelation::Contrast,
        RhetoricalRelation::Cause,
        RhetoricalRelation::Result,
        RhetoricalRelation::Condition,
        RhetoricalRelation::Purpose,
        RhetoricalRelation::Temporal,
        RhetoricalRelation::Spatial,
        RhetoricalRelation::Attribution,
        RhetoricalRelation::Background,
        RhetoricalRelation::Elaboration,
        RhetoricalRelation::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RhetoricalRelation::List => "LIST",
            RhetoricalRelation::Disjunction => "DISJUNCTION",
            RhetoricalRelation::Contrast => "CONTRAST",
            RhetoricalRelation::Cause => "CAUSE",
            RhetoricalRelation::Result => "RESULT",
            RhetoricalRelation::Condition => "CONDITION",
            RhetoricalRelation::Purpose => "PURPOSE",
            RhetoricalRelation::Temporal => "TEMPORAL",
            RhetoricalRelation::Spatial => "SPATIAL",
            RhetoricalRelation::Attribution => "ATTRIBUTION",
            RhetoricalRelation::Background => "BACKGROUND",
            RhetoricalRelation::Elaboration => "ELABORATION",
            RhetoricalRelation::Unknown => "UNKNOWN",
        }
    }

    /// Parses a relation name, case-insensitively.
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for RhetoricalRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for RhetoricalRelation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for RhetoricalRelation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        RhetoricalRelation::parse(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown rhetorical relation: {s}")))
    }
}

/// How an internal node combines its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// Children of equal status; two or more, all core.
    Coordination,
    /// Exactly two children, one core and one context.
    Subordination,
}

/// Whether a child carries the main statement (core) or supporting
/// information (context).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Core,
    Context,
}

/// A leaf: one simplified sentence plus the simple contexts the phrase
/// extraction pass attached to it.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscourseLeaf {
    pub sentence: ParseTree,
    pub contexts: Vec<SimpleContext>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InternalNode {
    pub kind: NodeKind,
    pub relation: RhetoricalRelation,
    pub children: Vec<(EdgeLabel, DiscourseNode)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiscourseNode {
    Leaf(DiscourseLeaf),
    Internal(InternalNode),
}

impl DiscourseNode {
    pub fn leaf(sentence: ParseTree) -> Self {
        DiscourseNode::Leaf(DiscourseLeaf { sentence, contexts: Vec::new() })
    }

    /// All leaves, left to right.
    pub fn leaves(&self) -> Vec<&DiscourseLeaf> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a DiscourseLeaf>) {
        match self {
            DiscourseNode::Leaf(l) => out.push(l),
            DiscourseNode::Internal(n) => {
                for (_, child) in &n.children {
                    child.collect_leaves(out);
                }
            }
        }
    }
}

/// A whole document's discourse structure. The root is a coordination whose
/// children correspond one-to-one to the document's sentences; it groups
/// sentences rather than expressing a rhetorical split, so proposition
/// linking does not emit links at the root.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscourseTree {
    pub root: InternalNode,
}

#[derive(Debug, Error)]
pub enum DiscourseError {
    #[error("rule {rule}: {source}")]
    MalformedMatch { rule: String, source: RuleError },
    #[error("sentence {sentence}: transformation exceeded depth {depth}; rule set does not terminate")]
    NonTermination { sentence: usize, depth: usize },
}

/// Builds the initial discourse tree: a root coordination (relation `List`)
/// with one core-edged leaf per sentence. An empty document yields a
/// childless root.
pub fn init_tree(doc: &Document) -> DiscourseTree {
    DiscourseTree {
        root: InternalNode {
            kind: NodeKind::Coordination,
            relation: RhetoricalRelation::List,
            children: doc
                .sentences
                .iter()
                .map(|s| (EdgeLabel::Core, DiscourseNode::leaf(s.clone())))
                .collect(),
        },
    }
}

/// Finds the first applicable rule for a sentence: rules are tried in
/// priority order (lower number first; priorities are unique), and within a
/// rule the first listed pattern that matches wins, at its topmost-leftmost
/// position.
pub fn match_first_rule<'r>(
    rules: &'r RuleSet,
    sentence: &ParseTree,
) -> Option<(&'r TransformationRule, Bindings)> {
    for rule in &rules.rules {
        if let Some(binds) = rule.try_match(sentence, &rules.lexicons) {
            return Some((rule, binds));
        }
    }
    None
}

/// Applies a matched rule to a sentence, producing the node kind, the child
/// sentences with their edge labels, and the extracted cue phrase.
pub fn apply_rule(
    rule: &TransformationRule,
    bindings: &Bindings,
    sentence: &ParseTree,
    rules: &RuleSet,
) -> Result<RuleApplication, DiscourseError> {
    rule.apply(sentence, bindings, &rules.lexicons)
        .map_err(|source| DiscourseError::MalformedMatch { rule: rule.name.clone(), source })
}

/// Classifies the rhetorical relation of a cue phrase in a syntactic
/// environment. Pure table lookup: an empty cue is always `Unknown`, a cue
/// missing from the environment's table falls back to the environment's
/// default, and `Unknown` otherwise.
pub fn classify_relation(rules: &RuleSet, cue: &str, environment: &str) -> RhetoricalRelation {
    rules.cue_tables.classify(cue, environment)
}

/// Recursively splits every sentence leaf until no rule matches.
///
/// Each application replaces a leaf with an internal node whose children are
/// strictly shorter sentences, so the recursion depth for a sentence is
/// bounded by its token count; exceeding that bound means a rule failed to
/// shrink its input and is reported as [`DiscourseError::NonTermination`].
pub fn transform_clausal(tree: &mut DiscourseTree, rules: &RuleSet) -> Result<(), DiscourseError> {
    for (idx, (_, child)) in tree.root.children.iter_mut().enumerate() {
        let budget = child
            .leaves()
            .iter()
            .map(|l| l.sentence.token_count())
            .sum::<usize>()
            .max(1);
        expand(child, rules, idx, 0, budget)?;
    }
    Ok(())
}

fn expand(
    node: &mut DiscourseNode,
    rules: &RuleSet,
    sentence_idx: usize,
    depth: usize,
    budget: usize,
) -> Result<(), DiscourseError> {
    if depth > budget {
        return Err(DiscourseError::NonTermination { sentence: sentence_idx, depth });
    }
    if let DiscourseNode::Internal(internal) = node {
        for (_, child) in &mut internal.children {
            expand(child, rules, sentence_idx, depth + 1, budget)?;
        }
        return Ok(());
    }
    let DiscourseNode::Leaf(leaf) = node else {
        return Ok(());
    };
    let Some((rule, binds)) = match_first_rule(rules, &leaf.sentence) else {
        return Ok(());
    };
    let application = apply_rule(rule, &binds, &leaf.sentence, rules)?;
    let relation = classify_relation(rules, &application.cue, &rule.environment);
    let mut children: Vec<(EdgeLabel, DiscourseNode)> = application
        .children
        .into_iter()
        .map(|(edge, sentence)| (edge, DiscourseNode::leaf(sentence)))
        .collect();
    for (_, child) in &mut children {
        expand(child, rules, sentence_idx, depth + 1, budget)?;
    }
    *node = DiscourseNode::Internal(InternalNode { kind: application.kind, relation, children });
    Ok(())
}

/// Checks the structural invariants of a discourse tree. Used by tests and
/// debug assertions; returns a description of the first violation.
pub fn validate(tree: &DiscourseTree) -> Result<(), String> {
    // The root may have any number of children (one per sentence), all core.
    for (edge, child) in &tree.root.children {
        if *edge != EdgeLabel::Core {
            return Err("root child with non-core edge".into());
        }
        validate_node(child)?;
    }
    if tree.root.kind != NodeKind::Coordination {
        return Err("root must be a coordination".into());
    }
    Ok(())
}

fn validate_node(node: &DiscourseNode) -> Result<(), String> {
    match node {
        DiscourseNode::Leaf(leaf) => {
            if leaf.sentence.token_count() == 0 {
                return Err("leaf with empty sentence".into());
            }
            Ok(())
        }
        DiscourseNode::Internal(n) => {
            match n.kind {
                NodeKind::Coordination => {
                    if n.children.len() < 2 {
                        return Err(format!(
                            "coordination with {} child(ren)",
                            n.children.len()
                        ));
                    }
                    if n.children.iter().any(|(e, _)| *e != EdgeLabel::Core) {
                        return Err("coordination with a context edge".into());
                    }
                }
                NodeKind::Subordination => {
                    if n.children.len() != 2 {
                        return Err(format!(
                            "subordination with {} child(ren)",
                            n.children.len()
                        ));
                    }
                    let cores =
                        n.children.iter().filter(|(e, _)| *e == EdgeLabel::Core).count();
                    if cores != 1 {
                        return Err(format!("subordination with {cores} core edges"));
                    }
                }
            }
            for (_, child) in &n.children {
                validate_node(child)?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for DiscourseTree {
    /// Indented sketch of the tree, one node per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root")?;
        for (i, (edge, child)) in self.root.children.iter().enumerate() {
            let last = i + 1 == self.root.children.len();
            fmt_node(f, child, *edge, "", last)?;
        }
        Ok(())
    }
}

fn fmt_node(
    f: &mut fmt::Formatter<'_>,
    node: &DiscourseNode,
    edge: EdgeLabel,
    prefix: &str,
    last: bool,
) -> fmt::Result {
    let branch = if last { "└─" } else { "├─" };
    let edge_name = match edge {
        EdgeLabel::Core => "core",
        EdgeLabel::Context => "context",
    };
    match node {
        DiscourseNode::Leaf(leaf) => {
            let text = leaf.sentence.yield_text().unwrap_or_default();
            writeln!(f, "{prefix}{branch} [{edge_name}] \"{text}\"")?;
            let cont = if last { "   " } else { "│  " };
            for ctx in &leaf.contexts {
                writeln!(f, "{prefix}{cont}      ({}: {})", ctx.relation, ctx.phrase)?;
            }
            Ok(())
        }
        DiscourseNode::Internal(n) => {
            let kind = match n.kind {
                NodeKind::Coordination => "coordination",
                NodeKind::Subordination => "subordination",
            };
            writeln!(f, "{prefix}{branch} [{edge_name}] {kind}/{}", n.relation)?;
            let cont = if last { "   " } else { "│  " };
            for (i, (e, child)) in n.children.iter().enumerate() {
                let child_last = i + 1 == n.children.len();
                fmt_node(f, child, *e, &format!("{prefix}{cont}"), child_last)?;
            }
            Ok(())
        }
    }
}
