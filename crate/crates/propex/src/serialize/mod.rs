//! Output formats for proposition graphs.
//!
//! Three serializations cover the common consumers: a line-oriented
//! tab-separated text format that round-trips ([`rdfnl`]), W3C N-Triples for
//! RDF tooling ([`ntriples`]), and JSON for everything else ([`json`]). All
//! three are deterministic: the same graph always serializes to the same
//! bytes.

pub mod json;
pub mod ntriples;
pub mod rdfnl;
