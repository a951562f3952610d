//! End-to-end composition: parsed document in, proposition graph out.

use thiserror::Error;

use crate::discourse::{init_tree, transform_clausal, DiscourseError};
use crate::document::Document;
use crate::graph::{build_graph, GraphError, PropositionGraph, SkippedLeaf};
use crate::phrasal::apply_phrasal;
use crate::rules::RuleSet;

/// Knobs for a pipeline run. The default runs both simplification stages
/// with the built-in rule set.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    /// Split clause-level constructions into separate sentences.
    pub do_clausal: bool,
    /// Extract phrase-level contexts and split coordinations/enumerations.
    pub do_phrasal: bool,
    pub rules: RuleSet,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            do_clausal: true,
            do_phrasal: true,
            rules: RuleSet::embedded_default().expect("built-in rules are valid"),
        }
    }
}

/// The graph plus any leaves that were skipped on the way.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub graph: PropositionGraph,
    pub diagnostics: Vec<SkippedLeaf>,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Transform(#[from] DiscourseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Runs the configured stages over a document and builds the graph.
pub fn run_pipeline(
    doc: &Document,
    config: &PipelineConfig,
) -> Result<PipelineResult, PipelineError> {
    let mut tree = init_tree(doc);
    if config.do_clausal {
        transform_clausal(&mut tree, &config.rules)?;
    }
    if config.do_phrasal {
        apply_phrasal(&mut tree, &config.rules);
    }
    let (graph, diagnostics) = build_graph(&tree, &doc.sentence_texts())?;
    Ok(PipelineResult { graph, diagnostics })
}
