//! Documents: ordered collections of parsed sentences.
//!
//! Two on-disk layouts are supported:
//!
//! * `ptb-lines` — one bracketed tree per non-blank line;
//! * `json-doc` — `{"id": "...", "text": "...", "sentences": ["(S ...)", ...]}`
//!   where `text` is optional.

use std::io::Read;

use serde::Deserialize;
use thiserror::Error;

use crate::tree::{parse_ptb, ParseTree, TreeError};

/// A document whose sentences are already constituency-parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    /// Original raw text when the source provided it; yields of the parses
    /// stand in for it otherwise.
    pub source_text: Option<String>,
    pub sentences: Vec<ParseTree>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentFormat {
    PtbLines,
    JsonDoc,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("input is not valid UTF-8")]
    DecodeError(#[from] std::string::FromUtf8Error),
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("sentence {line}: {source}")]
    ParseError { line: usize, source: TreeError },
    #[error("invalid document JSON: {0}")]
    JsonError(#[from] serde_json::Error),
}

#[derive(Deserialize)]
struct JsonDoc {
    id: String,
    #[serde(default)]
    text: Option<String>,
    sentences: Vec<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, sentences: Vec<ParseTree>) -> Self {
        Document { id: id.into(), source_text: None, sentences }
    }

    /// Loads a document from a reader in the given format.
    ///
    /// For `ptb-lines`, blank lines are skipped and an empty stream yields a
    /// document with zero sentences. Parse failures carry the 1-based line
    /// (or sentence) number.
    pub fn from_reader(mut reader: impl Read, format: DocumentFormat) -> Result<Self, DocumentError> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        let text = String::from_utf8(bytes)?;
        Self::from_str_in(&text, format)
    }

    /// Same as [`Document::from_reader`] but over an in-memory string.
    pub fn from_str_in(text: &str, format: DocumentFormat) -> Result<Self, DocumentError> {
        match format {
            DocumentFormat::PtbLines => {
                let mut sentences = Vec::new();
                for (i, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let tree = parse_ptb(line)
                        .map_err(|source| DocumentError::ParseError { line: i + 1, source })?;
                    sentences.push(tree);
                }
                Ok(Document::new("doc", sentences))
            }
            DocumentFormat::JsonDoc => {
                let raw: JsonDoc = serde_json::from_str(text)?;
                let mut sentences = Vec::new();
                for (i, s) in raw.sentences.iter().enumerate() {
                    let tree = parse_ptb(s)
                        .map_err(|source| DocumentError::ParseError { line: i + 1, source })?;
                    sentences.push(tree);
                }
                Ok(Document { id: raw.id, source_text: raw.text, sentences })
            }
        }
    }

    /// Surface strings of all sentences, in order.
    pub fn sentence_texts(&self) -> Vec<String> {
        self.sentences
            .iter()
            .map(|t| t.yield_text().unwrap_or_default())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_ptb_lines_skipping_blanks() {
        let input = "(S (NP (NNP Ada)) (VP (VBD slept)))\n\n(S (NP (NNP Bo)) (VP (VBD ran)))\n";
        let doc = Document::from_str_in(input, DocumentFormat::PtbLines).unwrap();
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.sentence_texts(), vec!["Ada slept", "Bo ran"]);
    }

    #[test]
    fn empty_stream_yields_empty_document() {
        let doc = Document::from_str_in("", DocumentFormat::PtbLines).unwrap();
        assert!(doc.sentences.is_empty());
    }

    #[test]
    fn parse_failure_reports_line_number() {
        let input = "(S (NP (NNP Ada)) (VP (VBD slept)))\n(S (NP\n";
        let err = Document::from_str_in(input, DocumentFormat::PtbLines).unwrap_err();
        match err {
            DocumentError::ParseError { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn loads_json_doc() {
        let input = r#"{"id": "d1", "text": "Ada slept.", "sentences": ["(S (NP (NNP Ada)) (VP (VBD slept)) (. .))"]}"#;
        let doc = Document::from_str_in(input, DocumentFormat::JsonDoc).unwrap();
        assert_eq!(doc.id, "d1");
        assert_eq!(doc.source_text.as_deref(), Some("Ada slept."));
        assert_eq!(doc.sentences.len(), 1);
    }

    #[test]
    fn rejects_invalid_json() {
        let err = Document::from_str_in("{nope", DocumentFormat::JsonDoc).unwrap_err();
        assert!(matches!(err, DocumentError::JsonError(_)));
    }

    #[test]
    fn invalid_utf8_is_a_decode_error() {
        let bytes: &[u8] = &[0x28, 0x53, 0xff, 0xfe];
        let err = Document::from_reader(bytes, DocumentFormat::PtbLines).unwrap_err();
        assert!(matches!(err, DocumentError::DecodeError(_)));
    }
}
