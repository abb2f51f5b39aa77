use serde_json::{Map, Value};

/// Result of one command, serialized with sorted keys.
pub struct Report {
    pub command: &'static str,
    pub method: Option<String>,
    pub input: Value,
    pub result: Map<String, Value>,
    pub elapsed_us: Option<u128>,
}

impl Report {
    pub fn new(command: &'static str, input: Value) -> Self {
        Self { command, method: None, input, result: Map::new(), elapsed_us: None }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.into()));
        out.insert("input".into(), self.input.clone());
        if let Some(m) = &self.method {
            out.insert("method".into(), Value::String(m.clone()));
        }
        out.insert("result".into(), Value::Object(self.result.clone()));
        if let Some(us) = self.elapsed_us {
            out.insert("timing".into(), serde_json::json!({ "elapsed_us": us.to_string() }));
        }
        Value::Object(out)
    }

    /// One `key: value` line per result entry; nested values are printed as
    /// compact JSON.
    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("command: {}", self.command)];
        if let Some(m) = &self.method {
            lines.push(format!("method: {m}"));
        }
        for (k, v) in &self.result {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            lines.push(format!("{k}: {shown}"));
        }
        if let Some(us) = self.elapsed_us {
            lines.push(format!("elapsed_us: {us}"));
        }
        lines.join("\n")
    }
}
