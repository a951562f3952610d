//! Stateless HTTP service wrapping the pipeline.
//!
//! Endpoints:
//!
//! * `POST /extract` — body `{"sentences": ["(S ...)", ...]}` for
//!   pre-parsed input, or `{"text": "..."}` to have a configured remote
//!   parser produce the trees. An optional `"options"` object selects the
//!   output: `{"format": "rdfnl" | "ntriples" | "json", "clausal": bool,
//!   "phrasal": bool, "baseIri": "..."}`. The response body is exactly the
//!   bytes the serializer produces; running the same request twice returns
//!   identical bytes.
//! * `GET /health` — `{"status": "ok"}`.
//!
//! Malformed requests get `400`; a missing or failing upstream parser gets
//! `502`. Both carry `{"error": {"kind": "...", "message": "..."}}`.

use std::sync::Arc;

use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::client::ParserClient;
use crate::document::{Document, DocumentFormat};
use crate::pipeline::{run_pipeline, PipelineConfig};
use crate::serialize::json::emit_json;
use crate::serialize::ntriples::{emit_ntriples, DEFAULT_BASE_IRI};
use crate::serialize::rdfnl::emit_rdfnl;

/// Shared, immutable service configuration.
#[derive(Clone)]
pub struct ServiceState {
    inner: Arc<Inner>,
}

struct Inner {
    config: PipelineConfig,
    parser: Option<ParserClient>,
    base_iri: String,
}

impl ServiceState {
    pub fn new(config: PipelineConfig) -> Self {
        ServiceState {
            inner: Arc::new(Inner {
                config,
                parser: None,
                base_iri: DEFAULT_BASE_IRI.to_string(),
            }),
        }
    }

    /// Panics if called after the state has been cloned into a router:
    /// configure first, share second.
    pub fn with_parser(mut self, parser: ParserClient) -> Self {
        self.inner_mut().parser = Some(parser);
        self
    }

    /// Panics if called after the state has been cloned into a router.
    pub fn with_base_iri(mut self, base_iri: impl Into<String>) -> Self {
        self.inner_mut().base_iri = base_iri.into();
        self
    }

    fn inner_mut(&mut self) -> &mut Inner {
        Arc::get_mut(&mut self.inner).expect("configure the service before sharing it")
    }
}

#[derive(Debug, Deserialize)]
pub struct ExtractRequest {
    pub text: Option<String>,
    pub sentences: Option<Vec<String>>,
    #[serde(default)]
    pub options: ExtractOptions,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtractOptions {
    pub format: Option<String>,
    pub clausal: Option<bool>,
    pub phrasal: Option<bool>,
    pub base_iri: Option<String>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum ServiceError {
    BadRequest(String),
    ParserFailure(String),
}

impl ServiceError {
    fn kind(&self) -> &'static str {
        match self {
            ServiceError::BadRequest(_) => "bad-request",
            ServiceError::ParserFailure(_) => "parser-failure",
        }
    }

    fn status(&self) -> StatusCode {
        match self {
            ServiceError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ServiceError::ParserFailure(_) => StatusCode::BAD_GATEWAY,
        }
    }

    fn message(&self) -> &str {
        match self {
            ServiceError::BadRequest(m) | ServiceError::ParserFailure(m) => m,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let body = json!({"error": {"kind": self.kind(), "message": self.message()}});
        (self.status(), Json(body)).into_response()
    }
}

/// Runs one extraction request against the service configuration. Returns
/// the response content type and body. This is the whole of `POST /extract`
/// minus the HTTP framing, so it is directly testable.
pub fn perform_extract(
    state: &ServiceState,
    request: &ExtractRequest,
) -> Result<(&'static str, String), ServiceError> {
    let inner = &state.inner;
    let document = match (&request.text, &request.sentences) {
        (Some(_), Some(_)) => {
            return Err(ServiceError::BadRequest(
                "provide either \"text\" or \"sentences\", not both".to_string(),
            ))
        }
        (None, None) => {
            return Err(ServiceError::BadRequest(
                "provide \"text\" or \"sentences\"".to_string(),
            ))
        }
        (None, Some(sentences)) => {
            Document::from_str_in(&sentences.join("\n"), DocumentFormat::PtbLines)
                .map_err(|e| ServiceError::BadRequest(e.to_string()))?
        }
        (Some(text), None) => {
            let parser = inner.parser.as_ref().ok_or_else(|| {
                ServiceError::ParserFailure(
                    "no parser endpoint configured; send pre-parsed \"sentences\"".to_string(),
                )
            })?;
            parser
                .parse_document(text)
                .map_err(|e| ServiceError::ParserFailure(e.to_string()))?
        }
    };

    let mut config = inner.config.clone();
    if let Some(clausal) = request.options.clausal {
        config.do_clausal = clausal;
    }
    if let Some(phrasal) = request.options.phrasal {
        config.do_phrasal = phrasal;
    }
    let result = run_pipeline(&document, &config)
        .map_err(|e| ServiceError::BadRequest(e.to_string()))?;

    let format = request.options.format.as_deref().unwrap_or("rdfnl");
    let base_iri = request.options.base_iri.as_deref().unwrap_or(&inner.base_iri);
    match format {
        "rdfnl" => Ok(("text/plain; charset=utf-8", emit_rdfnl(&result.graph))),
        "ntriples" => Ok((
            "application/n-triples; charset=utf-8",
            emit_ntriples(&result.graph, base_iri),
        )),
        "json" => Ok(("application/json", emit_json(&result.graph))),
        other => Err(ServiceError::BadRequest(format!(
            "unknown format {other:?}; expected rdfnl, ntriples, or json"
        ))),
    }
}

async fn extract_handler(
    State(state): State<ServiceState>,
    Json(request): Json<ExtractRequest>,
) -> Response {
    // The pipeline is CPU-bound; keep the async workers responsive.
    let result =
        tokio::task::spawn_blocking(move || perform_extract(&state, &request)).await;
    match result {
        Ok(Ok((content_type, body))) => {
            ([(header::CONTENT_TYPE, content_type)], body).into_response()
        }
        Ok(Err(error)) => error.into_response(),
        Err(join_error) => ServiceError::ParserFailure(join_error.to_string()).into_response(),
    }
}

async fn health_handler() -> Json<serde_json::Value> {
    Json(json!({"status": "ok"}))
}

/// The service router; exposed separately so tests can drive it in-process.
pub fn router(state: ServiceState) -> Router {
    Router::new()
        .route("/extract", post(extract_handler))
        .route("/health", get(health_handler))
        .with_state(state)
}

/// Binds `addr` and serves until the process is terminated.
pub fn serve(addr: &str, state: ServiceState) -> std::io::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on {}", listener.local_addr()?);
        axum::serve(listener, router(state)).await
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state() -> ServiceState {
        ServiceState::new(PipelineConfig::default())
    }

    fn sentences_request(options: ExtractOptions) -> ExtractRequest {
        ExtractRequest {
            text: None,
            sentences: Some(vec!["(S (NP (NNS Dogs)) (VP (VBP bark)) (. .))".to_string()]),
            options,
        }
    }

    #[test]
    fn extracts_parsed_sentences_to_rdfnl_by_default() {
        let (content_type, body) =
            perform_extract(&state(), &sentences_request(ExtractOptions::default())).unwrap();
        assert!(content_type.starts_with("text/plain"));
        assert!(body.contains("#1\t0\tdogs\tbark"), "got: {body}");
    }

    #[test]
    fn format_option_switches_serializer() {
        let json_out = perform_extract(
            &state(),
            &sentences_request(ExtractOptions { format: Some("json".into()), ..Default::default() }),
        )
        .unwrap();
        assert_eq!(json_out.0, "application/json");
        assert!(json_out.1.contains("\"contextLayer\": 0"));

        let nt = perform_extract(
            &state(),
            &sentences_request(ExtractOptions {
                format: Some("ntriples".into()),
                ..Default::default()
            }),
        )
        .unwrap();
        assert!(nt.1.contains("_:p1"));

        let err = perform_extract(
            &state(),
            &sentences_request(ExtractOptions { format: Some("xml".into()), ..Default::default() }),
        )
        .unwrap_err();
        assert!(matches!(err, ServiceError::BadRequest(_)));
    }

    #[test]
    fn text_without_parser_is_a_gateway_error() {
        let request = ExtractRequest {
            text: Some("Dogs bark.".to_string()),
            sentences: None,
            options: ExtractOptions::default(),
        };
        let err = perform_extract(&state(), &request).unwrap_err();
        assert!(matches!(err, ServiceError::ParserFailure(_)));
    }

    #[test]
    fn bad_ptb_and_bad_shape_are_client_errors() {
        let request = ExtractRequest {
            text: None,
            sentences: Some(vec!["(S (NP broken".to_string()]),
            options: ExtractOptions::default(),
        };
        assert!(matches!(
            perform_extract(&state(), &request).unwrap_err(),
            ServiceError::BadRequest(_)
        ));

        let both = ExtractRequest {
            text: Some("x".to_string()),
            sentences: Some(vec![]),
            options: ExtractOptions::default(),
        };
        assert!(matches!(
            perform_extract(&state(), &both).unwrap_err(),
            ServiceError::BadRequest(_)
        ));
        let neither =
            ExtractRequest { text: None, sentences: None, options: ExtractOptions::default() };
        assert!(matches!(
            perform_extract(&state(), &neither).unwrap_err(),
            ServiceError::BadRequest(_)
        ));
    }

    #[test]
    fn repeated_requests_return_identical_bytes() {
        let request = sentences_request(ExtractOptions::default());
        let first = perform_extract(&state(), &request).unwrap();
        let second = perform_extract(&state(), &request).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn stage_toggles_are_honored() {
        let ptb = "(S (NP (DT the) (NN picnic)) (VP (MD will) (VP (VB be) (VP (VBN canceled) (SBAR (IN if) (S (NP (PRP it)) (VP (VBZ rains))))))) (. .))";
        let request = ExtractRequest {
            text: None,
            sentences: Some(vec![ptb.to_string()]),
            options: ExtractOptions { clausal: Some(false), ..Default::default() },
        };
        let (_, body) = perform_extract(&state(), &request).unwrap();
        // With clause splitting off there is exactly one proposition.
        assert_eq!(body.matches('#').count(), 1, "got: {body}");
    }
}
