use clap::ValueEnum;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    /// `key: value`, one per line.
    Kv,
    Json,
}

/// Ordered report fields.
#[derive(Default)]
pub struct Fields(Vec<(String, Value)>);

impl Fields {
    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    fn kv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.0 {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {v}\n"));
        }
        s
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub struct Out {
    pub format: Format,
    pub quiet: bool,
}

impl Out {
    pub fn emit(&self, fields: &Fields) {
        if self.quiet {
            return;
        }
        match self.format {
            Format::Kv => print!("{}", fields.kv()),
            Format::Json => println!("{}", serde_json::to_string_pretty(fields).unwrap()),
        }
    }

    /// Blank-line separated blocks, or a JSON array.
    pub fn emit_rows(&self, rows: &[Fields]) {
        if self.quiet {
            return;
        }
        match self.format {
            Format::Kv => {
                let blocks: Vec<String> = rows.iter().map(Fields::kv).collect();
                print!("{}", blocks.join("\n"));
            }
            Format::Json => println!("{}", serde_json::to_string_pretty(rows).unwrap()),
        }
    }
}
