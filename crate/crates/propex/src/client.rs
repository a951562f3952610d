//! HTTP client for an external constituency parser.
//!
//! The extraction pipeline consumes parse trees; producing them from raw
//! text is delegated to a parser service. The wire contract is minimal:
//!
//! ```text
//! POST <endpoint>          {"text": "<raw text>"}
//! 200 OK                   {"parses": ["(S ...)", "(S ...)"]}
//! ```
//!
//! The client bounds the number of concurrent requests (parsers are
//! memory-hungry; flooding one helps nobody) and classifies failures so
//! callers can tell a dead endpoint from a sentence the parser rejected.

use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{Document, DocumentFormat};

/// Connection settings. `PROPEX_PARSER_ENDPOINT` and
/// `PROPEX_PARSER_TIMEOUT_SECS` override the corresponding fields when set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParserClientConfig {
    pub endpoint: String,
    /// Per-request timeout in seconds.
    pub timeout_secs: u64,
    /// Maximum concurrent requests to the parser.
    pub max_in_flight: usize,
}

impl ParserClientConfig {
    pub fn new(endpoint: impl Into<String>) -> Self {
        ParserClientConfig {
            endpoint: endpoint.into(),
            timeout_secs: 30,
            max_in_flight: 4,
        }
    }

    /// Applies `PROPEX_*` environment overrides on top of `self`.
    pub fn with_env_overrides(mut self) -> Self {
        if let Ok(endpoint) = std::env::var("PROPEX_PARSER_ENDPOINT") {
            if !endpoint.is_empty() {
                self.endpoint = endpoint;
            }
        }
        if let Ok(secs) = std::env::var("PROPEX_PARSER_TIMEOUT_SECS") {
            if let Ok(secs) = secs.parse() {
                self.timeout_secs = secs;
            }
        }
        self
    }
}

#[derive(Debug, Clone, Error)]
pub enum ClientError {
    /// The endpoint could not be reached at all.
    #[error("parser connection failed: {0}")]
    ConnectionError(String),
    /// The endpoint was reached but did not answer in time.
    #[error("parser timed out: {0}")]
    TimeoutError(String),
    /// The parser answered with an error or an unreadable body.
    #[error("parser rejected the request (status {status}): {message}")]
    RemoteParseError { status: u16, message: String },
}

impl ClientError {
    /// Whether retrying the same request can plausibly succeed.
    pub fn is_retryable(&self) -> bool {
        matches!(self, ClientError::ConnectionError(_) | ClientError::TimeoutError(_))
    }
}

#[derive(Serialize)]
struct ParseRequest<'a> {
    text: &'a str,
}

#[derive(Deserialize)]
struct ParseResponse {
    parses: Vec<String>,
}

/// Blocking client with a bounded number of in-flight requests.
pub struct ParserClient {
    config: ParserClientConfig,
    http: reqwest::blocking::Client,
    slots: Mutex<usize>,
    available: Condvar,
}

/// Releases its concurrency slot on drop.
struct SlotGuard<'a> {
    client: &'a ParserClient,
}

impl Drop for SlotGuard<'_> {
    fn drop(&mut self) {
        let mut free = self.client.slots.lock().unwrap();
        *free += 1;
        self.client.available.notify_one();
    }
}

impl ParserClient {
    pub fn new(endpoint: impl Into<String>) -> Result<Self, ClientError> {
        Self::with_config(ParserClientConfig::new(endpoint))
    }

    pub fn with_config(config: ParserClientConfig) -> Result<Self, ClientError> {
        let http = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build()
            .map_err(|e| ClientError::ConnectionError(e.to_string()))?;
        let slots = Mutex::new(config.max_in_flight.max(1));
        Ok(ParserClient { config, http, slots, available: Condvar::new() })
    }

    pub fn endpoint(&self) -> &str {
        &self.config.endpoint
    }

    fn acquire_slot(&self) -> SlotGuard<'_> {
        let mut free = self.slots.lock().unwrap();
        while *free == 0 {
            free = self.available.wait(free).unwrap();
        }
        *free -= 1;
        SlotGuard { client: self }
    }

    /// Sends raw text to the parser and returns one parse line per sentence.
    pub fn parse_text(&self, text: &str) -> Result<Vec<String>, ClientError> {
        let _slot = self.acquire_slot();
        let response = self
            .http
            .post(&self.config.endpoint)
            .json(&ParseRequest { text })
            .send()
            .map_err(|e| {
                if e.is_timeout() {
                    ClientError::TimeoutError(e.to_string())
                } else {
                    ClientError::ConnectionError(e.to_string())
                }
            })?;
        let status = response.status();
        if !status.is_success() {
            let message = response.text().unwrap_or_default();
            return Err(ClientError::RemoteParseError {
                status: status.as_u16(),
                message: truncate(&message, 500),
            });
        }
        let body: ParseResponse = response.json().map_err(|e| ClientError::RemoteParseError {
            status: status.as_u16(),
            message: format!("unreadable response body: {e}"),
        })?;
        Ok(body.parses)
    }

    /// Parses raw text into a [`Document`] ready for the pipeline.
    pub fn parse_document(&self, text: &str) -> Result<Document, ClientError> {
        let parses = self.parse_text(text)?;
        let joined = parses.join("\n");
        let mut doc = Document::from_str_in(&joined, DocumentFormat::PtbLines).map_err(|e| {
            ClientError::RemoteParseError { status: 200, message: e.to_string() }
        })?;
        doc.source_text = Some(text.to_string());
        Ok(doc)
    }
}

fn truncate(s: &str, max: usize) -> String {
    if s.len() <= max {
        s.to_string()
    } else {
        let mut end = max;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}…", &s[..end])
    }
}
