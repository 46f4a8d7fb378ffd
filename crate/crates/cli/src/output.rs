//! Artifact rendering. JSON goes out wrapped in an [`Envelope`]; CSV gets
//! the config as leading `# key=value` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const ENVELOPE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub result: T,
}

impl<T> Envelope<T> {
    pub fn new(config: &RunConfig, result: T) -> Self {
        Envelope {
            schema: ENVELOPE_SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: config.command.clone(),
            config: config.embedded(),
            result,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// What a command produced. `csv` is `None` for commands without a table.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub default_format: Format,
}

impl Artifact {
    pub fn json(value: impl Serialize) -> Self {
        Artifact { json: to_value(value), csv: None, default_format: Format::Json }
    }

    pub fn table(value: impl Serialize, csv: String) -> Self {
        Artifact { json: to_value(value), csv: Some(csv), default_format: Format::Csv }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn to_value(value: impl Serialize) -> serde_json::Value {
    serde_json::to_value(value).expect("results serialize")
}

pub fn render_json(config: &RunConfig, artifact: &Artifact) -> String {
    let env = Envelope::new(config, &artifact.json);
    let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
    s.push('\n');
    s
}

pub fn render_csv(config: &RunConfig, body: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# command={}", config.command).unwrap();
    writeln!(out, "# version={}", env!("CARGO_PKG_VERSION")).unwrap();
    for (k, v) in config.embedded() {
        writeln!(out, "# {k}={v}").unwrap();
    }
    out.push_str(body);
    out
}
