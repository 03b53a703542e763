//! Rendering of result records as JSON, CSV or text.
//!
//! Floats are always printed with 17 significant digits in scientific notation,
//! so repeated runs give byte-identical output.

use std::io::Write;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A JSON-shaped value with fixed float rendering.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Obj(Vec<(String, Node)>),
}

impl From<f64> for Node {
    fn from(v: f64) -> Self {
        Node::Num(v)
    }
}

impl From<bool> for Node {
    fn from(v: bool) -> Self {
        Node::Bool(v)
    }
}

impl From<&str> for Node {
    fn from(v: &str) -> Self {
        Node::Str(v.to_string())
    }
}

impl From<String> for Node {
    fn from(v: String) -> Self {
        Node::Str(v)
    }
}

macro_rules! int_node {
    ($($t:ty),*) => {$(
        impl From<$t> for Node {
            fn from(v: $t) -> Self {
                Node::Int(v as i64)
            }
        }
    )*};
}
int_node!(i32, i64, u32, u64, usize);

impl<T: Into<Node>> From<Option<T>> for Node {
    fn from(v: Option<T>) -> Self {
        v.map_or(Node::Null, Into::into)
    }
}

/// Builder for `Node::Obj` that keeps insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Obj(Vec<(String, Node)>);

impl Obj {
    pub fn new() -> Self {
        Obj(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Node>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Node>) {
        self.0.push((key.to_string(), value.into()));
    }
}

impl From<Obj> for Node {
    fn from(o: Obj) -> Self {
        Node::Obj(o.0)
    }
}

pub fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

fn scalar_text(n: &Node) -> String {
    match n {
        Node::Null => String::new(),
        Node::Bool(b) => b.to_string(),
        Node::Int(i) => i.to_string(),
        Node::Num(v) => sci(*v),
        Node::Str(s) => s.clone(),
        Node::Obj(_) => unreachable!("objects are flattened before printing"),
    }
}

fn write_json(n: &Node, out: &mut String, indent: usize) {
    match n {
        Node::Null => out.push_str("null"),
        Node::Num(v) if !v.is_finite() => out.push_str("null"),
        Node::Str(s) => out.push_str(&serde_json::to_string(s).expect("strings always serialize")),
        Node::Obj(fields) => {
            if fields.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, v)) in fields.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("strings always serialize"));
                out.push_str(": ");
                write_json(v, out, indent + 1);
                if i + 1 < fields.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        other => out.push_str(&scalar_text(other)),
    }
}

/// Flatten nested objects into dotted keys.
fn flatten(n: &Node, prefix: &str, out: &mut Vec<(String, String)>) {
    match n {
        Node::Obj(fields) => {
            for (k, v) in fields {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(v, &key, out);
            }
        }
        other => out.push((prefix.to_string(), scalar_text(other))),
    }
}

pub fn render(records: &[Node], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = String::new();
            if records.len() == 1 {
                write_json(&records[0], &mut s, 0);
            } else {
                s.push_str("[\n");
                for (i, r) in records.iter().enumerate() {
                    s.push_str("  ");
                    write_json(r, &mut s, 1);
                    if i + 1 < records.len() {
                        s.push(',');
                    }
                    s.push('\n');
                }
                s.push(']');
            }
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows: Vec<Vec<(String, String)>> = records
                .iter()
                .map(|r| {
                    let mut v = Vec::new();
                    flatten(r, "", &mut v);
                    v
                })
                .collect();
            let mut header: Vec<String> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("writing to memory");
            for row in &rows {
                let cells = header
                    .iter()
                    .map(|h| row.iter().find(|(k, _)| k == h).map_or("", |(_, v)| v.as_str()));
                w.write_record(cells).expect("writing to memory");
            }
            String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
        }
        Format::Text => {
            let mut s = String::new();
            for (i, r) in records.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                let mut v = Vec::new();
                flatten(r, "", &mut v);
                let width = v.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, val) in v {
                    s.push_str(&format!("{k:<width$}  {val}\n"));
                }
            }
            s
        }
    }
}

pub fn emit(records: &[Node], format: Format, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = render(records, format);
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
