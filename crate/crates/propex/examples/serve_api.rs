//! Starts the extraction service on an ephemeral port and calls it.
//!
//! The service exposes `POST /extract` (pre-parsed sentences or, with a
//! parser endpoint configured, raw text) and `GET /health`. This example
//! binds port 0, issues real HTTP requests against itself, and prints the
//! responses.
//!
//! Run with `cargo run --example serve_api`.

use std::error::Error;

use propex::service::{router, ServiceState};
use propex::PipelineConfig;

fn main() -> Result<(), Box<dyn Error>> {
    let state = ServiceState::new(PipelineConfig::default());

    // Bind inside a runtime we own so the example can learn the port.
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    let listener = runtime.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
    let addr = listener.local_addr()?;
    runtime.spawn(async move {
        axum::serve(listener, router(state)).await.expect("server runs until the example exits");
    });

    let client = reqwest::blocking::Client::new();
    let base = format!("http://{addr}");

    let health: serde_json::Value = client.get(format!("{base}/health")).send()?.json()?;
    println!("GET /health -> {health}");
    println!();

    let body = serde_json::json!({
        "sentences": [
            "(S (NP (DT The) (NN shop)) (VP (VBZ sells) (NP (NP (NN bread)) (CC and) (NP (NN cheese)))) (. .))"
        ],
        "options": { "format": "rdfnl" }
    });
    let response = client.post(format!("{base}/extract")).json(&body).send()?;
    println!("POST /extract [rdfnl] -> {}", response.status());
    print!("{}", response.text()?);

    let body = serde_json::json!({
        "sentences": ["(S (NP (NNS Dogs)) (VP (VBP bark)) (. .))"],
        "options": { "format": "json" }
    });
    let response = client.post(format!("{base}/extract")).json(&body).send()?;
    println!("POST /extract [json] -> {}", response.status());
    print!("{}", response.text()?);

    // Malformed input comes back as a structured error.
    let response = client.post(format!("{base}/extract")).json(&serde_json::json!({})).send()?;
    println!();
    println!("POST /extract [empty] -> {}", response.status());
    println!("{}", response.text()?);
    Ok(())
}
