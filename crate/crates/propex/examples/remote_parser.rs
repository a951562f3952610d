//! Fetches constituency parses from a remote parser service.
//!
//! The client POSTs `{"text": …}` to the configured endpoint and expects
//! `{"parses": [<one bracketed tree per sentence>]}` back. Concurrency is
//! bounded, timeouts and connection failures are retryable, remote parse
//! errors are not.
//!
//! Set `PROPEX_PARSER_ENDPOINT` to a running parser and run with
//! `cargo run --example remote_parser`.

use std::error::Error;

use propex::client::{ParserClient, ParserClientConfig};
use propex::{run_pipeline, PipelineConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let Ok(endpoint) = std::env::var("PROPEX_PARSER_ENDPOINT") else {
        println!("PROPEX_PARSER_ENDPOINT is not set; nothing to call.");
        println!("Point it at a constituency parser that accepts");
        println!("  POST {{\"text\": \"...\"}}  ->  {{\"parses\": [\"(S ...)\", ...]}}");
        return Ok(());
    };

    let config = ParserClientConfig::new(endpoint).with_env_overrides();
    println!("endpoint: {}", config.endpoint);
    let client = ParserClient::with_config(config)?;

    let text = "The shop sells bread and cheese. The board met on Tuesday.";
    match client.parse_document(text) {
        Ok(doc) => {
            let result = run_pipeline(&doc, &PipelineConfig::default())?;
            for prop in result.graph.propositions() {
                println!(
                    "#{} {} | {} | {}",
                    prop.id, prop.tuple.arg_subj, prop.tuple.rel, prop.tuple.arg_obj
                );
            }
        }
        Err(err) => {
            eprintln!("parse failed: {err}");
            eprintln!("retryable: {}", err.is_retryable());
        }
    }
    Ok(())
}
