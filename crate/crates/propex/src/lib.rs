//! Open information extraction over constituency parses.
//!
//! The pipeline turns Penn-Treebank-style parse trees into a graph of small
//! relational tuples whose inter-relationships are kept instead of thrown
//! away: clause splitting builds a tree of core and contextual sentences,
//! phrase extraction peels off modifiers, and the resulting propositions are
//! linked to each other with rhetorical relations and to their local
//! contexts with classified phrases.
//!
//! ```
//! use propex::document::{Document, DocumentFormat};
//! use propex::pipeline::{run_pipeline, PipelineConfig};
//! use propex::serialize::rdfnl::emit_rdfnl;
//!
//! let doc = Document::from_str_in(
//!     "(S (NP (NNS Dogs)) (VP (VBP bark)) (. .))",
//!     DocumentFormat::PtbLines,
//! ).unwrap();
//! let result = run_pipeline(&doc, &PipelineConfig::default()).unwrap();
//! print!("{}", emit_rdfnl(&result.graph));
//! ```
//!
//! The `examples/` directory walks through each stage; `propex` (the one
//! binary) exposes the same functionality as `extract`, `query`, `score`,
//! and `serve` subcommands.

pub mod client;
pub mod discourse;
pub mod document;
pub mod graph;
pub mod pattern;
pub mod phrasal;
pub mod pipeline;
pub mod rules;
pub mod score;
pub mod serialize;
pub mod service;
mod surgery;
pub mod tree;
pub mod tuple;

pub use document::{Document, DocumentFormat};
pub use graph::{LinkedContext, Proposition, PropositionGraph, RelationalTuple};
pub use phrasal::SimpleContext;
pub use pipeline::{run_pipeline, PipelineConfig, PipelineResult};
pub use tree::{parse_ptb, ParseTree, Token};
