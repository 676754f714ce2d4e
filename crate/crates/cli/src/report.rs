//! Reports: a sorted machine section of `key = value` lines (TOML literals)
//! followed by free-form human lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;

#[derive(Debug, Default)]
pub struct Report {
    machine: BTreeMap<String, Value>,
    human: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.machine.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.human.push(text.into());
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[machine]\n");
        for (k, v) in &self.machine {
            writeln!(out, "{k} = {}", literal(v)).unwrap();
        }
        out.push_str("\n[report]\n");
        for l in &self.human {
            writeln!(out, "{l}").unwrap();
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.machine).expect("values serialize");
        s.push('\n');
        s
    }
}

fn literal(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(literal).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|s| Value::String(s.to_string()))
            .collect(),
    )
}

pub fn ints<T: Into<i64>>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|n| Value::from(n.into())).collect())
}
