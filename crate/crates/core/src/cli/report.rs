//! Report values and their two renderings. Keys are sorted recursively, so a
//! report is byte-identical whenever its contents are.

use serde_json::{json, Map, Value};

use crate::exactla::Matrix;
use crate::fdmod::DimResult;

/// How a command ended; the process exit code follows from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Undecided,
    Violated,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Undecided => 2,
            Status::Violated | Status::Error => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Undecided => "undecided",
            Status::Violated => "violated",
            Status::Error => "error",
        }
    }

    /// Combines two outcomes: a violation beats undecided, which beats ok.
    pub fn join(self, o: Status) -> Status {
        self.max(o)
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::Violated
        }
    }
}

pub fn dim(d: &DimResult) -> Value {
    match d {
        DimResult::Finite(v) => json!(v),
        DimResult::Infinite(_) => json!("infinite"),
        DimResult::AtLeast(v) => json!(format!(">= {v}")),
    }
}

pub fn dim_status(d: &DimResult) -> Status {
    match d {
        DimResult::AtLeast(_) => Status::Undecided,
        _ => Status::Ok,
    }
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|s| json!(s.to_string())).collect())).collect())
}

pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonical(v.clone())).expect("values serialize");
    s.push('\n');
    s
}

/// `(path, scalar)` pairs in document order; empty containers are leaves.
pub fn flatten(v: &Value) -> Vec<(String, Value)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
        match v {
            Value::Object(m) if !m.is_empty() => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    go(&p, x, out);
                }
            }
            Value::Array(a) if !a.is_empty() => {
                for (i, x) in a.iter().enumerate() {
                    go(&format!("{prefix}[{i}]"), x, out);
                }
            }
            leaf => out.push((prefix.to_string(), leaf.clone())),
        }
    }
    let mut out = Vec::new();
    go("", &canonical(v.clone()), &mut out);
    out
}

pub fn render_text(v: &Value) -> String {
    flatten(v).into_iter().map(|(p, x)| format!("{p} = {x}\n")).collect()
}

/// Inverse of [`render_text`] up to structure: the flattened pairs.
pub fn parse_text(s: &str) -> Option<Vec<(String, Value)>> {
    s.lines()
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (p, x) = l.split_once(" = ")?;
            Some((p.to_string(), serde_json::from_str(x).ok()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let v = json!({"b": [1, {"c": "1/2"}], "a": {}, "e": [], "d": null});
        let text = render_text(&v);
        assert_eq!(parse_text(&text).unwrap(), flatten(&v));
        assert!(text.starts_with("a = {}"));
    }

    #[test]
    fn status_order() {
        assert_eq!(Status::Ok.join(Status::Undecided), Status::Undecided);
        assert_eq!(Status::Undecided.join(Status::Violated).exit_code(), 1);
    }
}
