//! The proposition graph: numbered tuples, their context layers, and the
//! typed links between them.
//!
//! Building the graph from a discourse tree happens in two passes. The first
//! pass walks each sentence's subtree in leaf order, extracts a tuple per
//! leaf, and assigns document-global ids starting at 1; leaves that yield no
//! tuple become diagnostics instead of propositions. The second pass walks
//! the internal nodes top-down and materializes their rhetorical relations
//! as links: subordination points from each core proposition to each context
//! proposition, coordination links the children's propositions pairwise in
//! both directions. "Core proposition" here means reachable through core
//! edges only, so a nested context never receives links meant for the clause
//! that embeds it.

use thiserror::Error;

use crate::discourse::{
    DiscourseNode, DiscourseTree, EdgeLabel, NodeKind, RhetoricalRelation,
};
use crate::phrasal::SimpleContext;
use crate::tuple::{extract_tuple, TupleError};

pub use crate::tuple::RelationalTuple;

/// Document-global proposition number, starting at 1.
pub type PropositionId = usize;

/// A typed edge to another proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkedContext {
    pub relation: RhetoricalRelation,
    pub target: PropositionId,
}

/// One extracted proposition: a tuple plus everything hanging off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proposition {
    pub id: PropositionId,
    /// How many context edges sit between this proposition and the document
    /// root: 0 for main statements, higher for nested background.
    pub context_layer: usize,
    pub tuple: RelationalTuple,
    pub simple: Vec<SimpleContext>,
    pub linked: Vec<LinkedContext>,
}

/// All propositions extracted from one input sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceExtraction {
    pub text: String,
    pub propositions: Vec<Proposition>,
}

/// The full extraction result for a document.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropositionGraph {
    pub sentences: Vec<SentenceExtraction>,
}

/// A leaf that produced no tuple, with the reason it was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedLeaf {
    /// Zero-based index of the input sentence the leaf came from.
    pub sentence: usize,
    pub text: String,
    pub reason: TupleError,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("proposition #{from} links to nonexistent proposition #{to}")]
    DanglingLink { from: PropositionId, to: PropositionId },
}

impl PropositionGraph {
    pub fn propositions(&self) -> impl Iterator<Item = &Proposition> {
        self.sentences.iter().flat_map(|s| s.propositions.iter())
    }

    pub fn proposition(&self, id: PropositionId) -> Option<&Proposition> {
        self.propositions().find(|p| p.id == id)
    }

    pub fn len(&self) -> usize {
        self.sentences.iter().map(|s| s.propositions.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Finds the propositions reachable over `relation` links from any
    /// proposition whose tuple text contains `pattern` (case-insensitive).
    /// Results are deduplicated and ordered by id.
    pub fn query(&self, relation: RhetoricalRelation, pattern: &str) -> Vec<&Proposition> {
        let needle = pattern.to_lowercase();
        let mut targets: Vec<PropositionId> = Vec::new();
        for p in self.propositions() {
            let hay = format!("{} {} {}", p.tuple.arg_subj, p.tuple.rel, p.tuple.arg_obj)
                .to_lowercase();
            if hay.contains(&needle) {
                targets.extend(
                    p.linked.iter().filter(|l| l.relation == relation).map(|l| l.target),
                );
            }
        }
        targets.sort_unstable();
        targets.dedup();
        targets.iter().filter_map(|&id| self.proposition(id)).collect()
    }
}

/// Context layer of every leaf under `node`, in leaf order, counting from
/// `node` itself at layer 0.
pub fn assign_layers(node: &DiscourseNode) -> Vec<usize> {
    fn walk(node: &DiscourseNode, layer: usize, out: &mut Vec<usize>) {
        match node {
            DiscourseNode::Leaf(_) => out.push(layer),
            DiscourseNode::Internal(internal) => {
                for (edge, child) in &internal.children {
                    let step = usize::from(*edge == EdgeLabel::Context);
                    walk(child, layer + step, out);
                }
            }
        }
    }
    let mut out = Vec::new();
    walk(node, 0, &mut out);
    out
}

/// Mirror of the discourse tree carrying only proposition ids, used while
/// wiring links. Skipped leaves are `Leaf(None)`.
enum Shadow {
    Leaf(Option<PropositionId>),
    Internal {
        kind: NodeKind,
        relation: RhetoricalRelation,
        children: Vec<(EdgeLabel, Shadow)>,
    },
}

/// Builds the proposition graph for a transformed discourse tree.
///
/// `texts` supplies the original sentence strings, one per root child, for
/// the serializers; missing entries become empty strings.
pub fn build_graph(
    tree: &DiscourseTree,
    texts: &[String],
) -> Result<(PropositionGraph, Vec<SkippedLeaf>), GraphError> {
    let mut props: Vec<Proposition> = Vec::new();
    let mut skipped: Vec<SkippedLeaf> = Vec::new();
    let mut shadows: Vec<Shadow> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();

    for (index, (_, child)) in tree.root.children.iter().enumerate() {
        let before = props.len();
        let shadow = build_shadow(child, 0, index, &mut props, &mut skipped);
        shadows.push(shadow);
        counts.push(props.len() - before);
    }

    for shadow in &shadows {
        emit_links(shadow, &mut props);
    }

    let total = props.len();
    for p in &props {
        for l in &p.linked {
            if l.target == 0 || l.target > total || l.target == p.id {
                return Err(GraphError::DanglingLink { from: p.id, to: l.target });
            }
        }
    }

    let mut sentences = Vec::new();
    let mut remaining = props.into_iter();
    for (index, count) in counts.into_iter().enumerate() {
        sentences.push(SentenceExtraction {
            text: texts.get(index).cloned().unwrap_or_default(),
            propositions: remaining.by_ref().take(count).collect(),
        });
    }
    Ok((PropositionGraph { sentences }, skipped))
}

fn build_shadow(
    node: &DiscourseNode,
    layer: usize,
    sentence: usize,
    props: &mut Vec<Proposition>,
    skipped: &mut Vec<SkippedLeaf>,
) -> Shadow {
    match node {
        DiscourseNode::Leaf(leaf) => match extract_tuple(&leaf.sentence) {
            Ok(tuple) => {
                let id = props.len() + 1;
                props.push(Proposition {
                    id,
                    context_layer: layer,
                    tuple,
                    simple: leaf.contexts.clone(),
                    linked: Vec::new(),
                });
                Shadow::Leaf(Some(id))
            }
            Err(reason) => {
                skipped.push(SkippedLeaf {
                    sentence,
                    text: leaf.sentence.yield_text().unwrap_or_default(),
                    reason,
                });
                Shadow::Leaf(None)
            }
        },
        DiscourseNode::Internal(internal) => {
            let children = internal
                .children
                .iter()
                .map(|(edge, child)| {
                    let step = usize::from(*edge == EdgeLabel::Context);
                    (*edge, build_shadow(child, layer + step, sentence, props, skipped))
                })
                .collect();
            Shadow::Internal {
                kind: internal.kind,
                relation: internal.relation,
                children,
            }
        }
    }
}

/// Ids reachable from `shadow` without crossing a context edge.
fn core_propositions(shadow: &Shadow, out: &mut Vec<PropositionId>) {
    match shadow {
        Shadow::Leaf(Some(id)) => out.push(*id),
        Shadow::Leaf(None) => {}
        Shadow::Internal { children, .. } => {
            for (edge, child) in children {
                if *edge == EdgeLabel::Core {
                    core_propositions(child, out);
                }
            }
        }
    }
}

fn emit_links(shadow: &Shadow, props: &mut [Proposition]) {
    let Shadow::Internal { kind, relation, children } = shadow else {
        return;
    };
    match kind {
        NodeKind::Subordination => {
            let mut cores = Vec::new();
            let mut contexts = Vec::new();
            for (edge, child) in children {
                let bucket = match edge {
                    EdgeLabel::Core => &mut cores,
                    EdgeLabel::Context => &mut contexts,
                };
                core_propositions(child, bucket);
            }
            for &core in &cores {
                for &context in &contexts {
                    props[core - 1].linked.push(LinkedContext {
                        relation: *relation,
                        target: context,
                    });
                }
            }
        }
        NodeKind::Coordination => {
            let groups: Vec<Vec<PropositionId>> = children
                .iter()
                .map(|(_, child)| {
                    let mut ids = Vec::new();
                    core_propositions(child, &mut ids);
                    ids
                })
                .collect();
            for (i, from_group) in groups.iter().enumerate() {
                for (j, to_group) in groups.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for &from in from_group {
                        for &to in to_group {
                            props[from - 1]
                                .linked
                                .push(LinkedContext { relation: *relation, target: to });
                        }
                    }
                }
            }
        }
    }
    for (_, child) in children {
        emit_links(child, props);
    }
}
