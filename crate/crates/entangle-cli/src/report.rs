use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> anyhow::Result<(Input, String)> {
        let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        let sha256 = format!("{:x}", Sha256::digest(text.as_bytes()));
        Ok((Input { path: path.display().to_string(), sha256 }, text))
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub status: &'static str,
    pub runtime_ms: f64,
}

/// What a command computed; `verified` false maps to exit code 2.
pub struct Outcome {
    pub inputs: Vec<Input>,
    pub results: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub verified: bool,
}

impl Outcome {
    pub fn new() -> Self {
        Outcome { inputs: Vec::new(), results: Map::new(), tolerances: Map::new(), verified: true }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.to_string(), serde_json::to_value(value).expect("serializable result"));
    }

    pub fn tol(&mut self, key: &str, value: f64) {
        self.tolerances.insert(key.to_string(), Value::from(value));
    }

    pub fn require(&mut self, ok: bool) {
        self.verified &= ok;
    }
}

pub fn print_text(report: &Report) {
    println!("command: {}", report.command);
    for input in &report.inputs {
        println!("input: {} (sha256 {})", input.path, &input.sha256[..16]);
    }
    for (k, v) in &report.results {
        match v {
            Value::String(s) => println!("{k}: {s}"),
            Value::Array(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                println!("{k}:");
                for r in rows {
                    println!("  {r}");
                }
            }
            other => println!("{k}: {other}"),
        }
    }
    let tols: Vec<String> = report.tolerances.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if !tols.is_empty() {
        println!("tolerances: {}", tols.join(", "));
    }
    println!("status: {}", report.status);
}
