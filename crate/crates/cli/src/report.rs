//! The run report: one struct, rendered either as JSON or as a human table
//! carrying exactly the same numbers.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunReport {
    /// The subcommand and flags that produced this report.
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecEcho>,
    pub results: Value,
    pub wall_ms: u128,
    /// Whether every executed check passed; absent when nothing was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    /// Preformatted human rendering for row-oriented commands; carries the
    /// same numbers as `results` by construction. Never serialized.
    #[serde(skip)]
    pub human: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpecEcho {
    pub n: u8,
    pub k: u8,
}

impl RunReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(spec) = self.spec {
            out.push_str(&format!("complex: D_{{{},{}}}\n", spec.n, spec.k));
        }
        match &self.human {
            Some(text) => out.push_str(text),
            None => render_value(&mut out, &self.results, 0),
        }
        if let Some(pass) = self.pass {
            out.push_str(if pass {
                "status: PASS\n"
            } else {
                "status: FAIL\n"
            });
        }
        out.push_str(&format!("wall time: {} ms\n", self.wall_ms));
        out
    }
}

fn render_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, v, indent + 1);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for item in items {
                            render_value(out, item, indent + 1);
                            out.push('\n');
                        }
                    }
                    _ => out.push_str(&format!("{pad}{key}: {v}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}
