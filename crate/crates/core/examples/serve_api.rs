//! Starts the HTTP API on an ephemeral port, sends one ranking request
//! over a plain socket and prints the reply. Pass `--keep` to leave the
//! server running.
//!
//! ```text
//! cargo run --example serve_api -- --keep
//! curl -s localhost:<port>/api/rank -d '{"profile": "SG"}'
//! ```

use std::io::{Read, Write};
use std::net::TcpStream;

use outrank::dataset::read_boxscore_csv;

fn request(port: u16, method: &str, path: &str, body: &str) -> std::io::Result<String> {
    let mut stream = TcpStream::connect(("127.0.0.1", port))?;
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut reply = String::new();
    stream.read_to_string(&mut reply)?;
    Ok(reply)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/league.csv");
    let data = read_boxscore_csv(path)?;
    let keep = std::env::args().any(|a| a == "--keep");

    let rt = tokio::runtime::Runtime::new()?;
    let listener = rt.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
    let port = listener.local_addr()?.port();
    let server = rt.spawn(async move { axum::serve(listener, outrank::service::router(data)).await });
    println!("listening on http://127.0.0.1:{port}");

    let health = request(port, "GET", "/healthz", "")?;
    println!("{}", health.lines().next().unwrap_or_default());

    let reply = request(port, "POST", "/api/rank", r#"{"profile": "PF", "scenario": "correlation_boosted"}"#)?;
    let body = reply.split("\r\n\r\n").nth(1).unwrap_or_default();
    let json: serde_json::Value = serde_json::from_str(body)?;
    for r in json["total_order"].as_array().into_iter().flatten() {
        println!("{} {:<16} {:+.4}", r["rank"], r["id"].as_str().unwrap_or("?"), r["phi"].as_f64().unwrap_or(f64::NAN));
    }

    let bad = request(port, "POST", "/api/rank", r#"{"alpha": 90, "beta": 10}"#)?;
    println!("\n{}", bad.lines().next().unwrap_or_default());
    println!("{}", bad.split("\r\n\r\n").nth(1).unwrap_or_default());

    if keep {
        rt.block_on(server)??;
    }
    Ok(())
}
