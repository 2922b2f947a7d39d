//! Tabular experiment results and their metadata.

use std::fmt;

use serde::Serialize;

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    UInt(u64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Int(v) => Some(v as f64),
            Value::UInt(v) => Some(v as f64),
            Value::Real(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }
}

// Reals use the shortest representation that round-trips.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::UInt(v) => write!(f, "{v}"),
            Value::Real(v) => write!(f, "{v:?}"),
            Value::Text(s) => f.write_str(s),
            Value::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::UInt(v as u64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::UInt(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Text(String::new()), Value::Real)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row. Panics if the width does not match the header.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width in table {}",
            self.name
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, column: &str) -> Option<&Value> {
        self.rows.get(row)?.get(self.column(column)?)
    }

    pub fn real(&self, row: usize, column: &str) -> Option<f64> {
        self.get(row, column)?.as_f64()
    }

    /// Rows whose `column` cell satisfies `pred`.
    pub fn rows_where<'a>(
        &'a self,
        column: &str,
        pred: impl Fn(&Value) -> bool + 'a,
    ) -> impl Iterator<Item = usize> + 'a {
        let col = self.column(column);
        (0..self.rows.len()).filter(move |&i| col.is_some_and(|c| pred(&self.rows[i][c])))
    }

    /// First row where every `(column, value)` pair matches.
    pub fn find(&self, keys: &[(&str, Value)]) -> Option<usize> {
        (0..self.rows.len()).find(|&i| {
            keys.iter()
                .all(|(col, v)| self.get(i, col).is_some_and(|cell| cell == v))
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|v| v.to_string()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// Array of row objects keyed by column name.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), serde_json::to_value(v).expect("plain value")))
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub experiment: String,
    pub version: String,
    pub config: Vec<(String, String)>,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub tables: Vec<Table>,
    pub metadata: Metadata,
}

impl ExperimentResult {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn metadata_json(&self) -> String {
        let m = &self.metadata;
        let config: serde_json::Map<_, _> = m
            .config
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let tables: Vec<_> = self.tables.iter().map(|t| t.name.clone()).collect();
        let doc = serde_json::json!({
            "experiment": m.experiment,
            "version": m.version,
            "config": config,
            "tables": tables,
            "wall_time_seconds": m.wall_time_seconds,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("plain json");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_tags_and_keeps_precision() {
        let mut t = Table::new("demo", &["spec_tag", "value", "n"]);
        t.push(vec!["kind=goe,n=10".into(), 0.1f64.into(), 10usize.into()]);
        t.push(vec!["x".into(), 1e-30f64.into(), 3usize.into()]);
        assert_eq!(
            t.to_csv(),
            "spec_tag,value,n\n\"kind=goe,n=10\",0.1,10\nx,1e-30,3\n"
        );
        assert_eq!(t.real(0, "value"), Some(0.1));
        assert_eq!(t.find(&[("n", Value::UInt(3))]), Some(1));
        assert_eq!(t.rows_where("n", |v| v.as_f64() == Some(10.0)).count(), 1);
    }

    #[test]
    fn json_rows_are_objects() {
        let mut t = Table::new("demo", &["a", "b"]);
        t.push(vec![1usize.into(), "x".into()]);
        assert_eq!(t.to_json(), serde_json::json!([{"a": 1, "b": "x"}]));
    }

    #[test]
    #[should_panic]
    fn width_mismatch_panics() {
        Table::new("demo", &["a"]).push(vec![]);
    }
}
