use serde_json::{json, Map, Value};

use crate::cli::model::JsonRational;
use crate::exactlin::{format_rational, QMatrix, Rational};

pub fn rat_value(x: &Rational) -> Value {
    serde_json::to_value(JsonRational(x.clone())).expect("serializable")
}

pub fn vec_value(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat_value).collect())
}

pub fn matrix_value(m: &QMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vec_value(r)).collect())
}

pub fn fmt_vec(v: &[Rational]) -> String {
    format!("[{}]", v.iter().map(format_rational).collect::<Vec<_>>().join(", "))
}

/// Certificate for one command; `ok` is false when an asserted property
/// fails. Keys keep insertion order so the JSON is byte-stable.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdicts: Map<String, Value>,
    pub dimensions: Map<String, Value>,
    pub representatives: Map<String, Value>,
    pub residuals: Map<String, Value>,
    pub ok: bool,
    rows: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_owned(), ok: true, ..Default::default() }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        let v = v.into();
        self.row(key, v.as_str().map_or_else(|| v.to_string(), str::to_owned));
        self.inputs.insert(key.to_owned(), v);
        self
    }

    /// Records a verdict; `asserted` verdicts that are false make the run fail.
    pub fn verdict(&mut self, key: &str, value: bool, asserted: bool) -> &mut Self {
        if asserted && !value {
            self.ok = false;
        }
        self.verdicts.insert(key.to_owned(), Value::Bool(value));
        self.row(key, value.to_string());
        self
    }

    pub fn row(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.rows.push((key.to_owned(), value.into()));
        self
    }

    pub fn cohomology_dims(&mut self, dims: &[(usize, usize)]) {
        let list: Vec<Value> = dims.iter().map(|&(k, d)| json!({"k": k, "dim": d})).collect();
        self.dimensions.insert("H".into(), Value::Array(list));
        for &(k, d) in dims {
            self.row(&format!("dim H^{k}"), d.to_string());
        }
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": self.verdicts,
            "dimensions": self.dimensions,
            "representatives": self.representatives,
            "residuals": self.residuals,
        });
        serde_json::to_string(&v).expect("serializable")
    }

    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0).max(7);
        let mut out = format!("{:width$}  {}\n", "command", self.command);
        for (k, v) in &self.rows {
            out.push_str(&format!("{k:width$}  {v}\n"));
        }
        out
    }
}
