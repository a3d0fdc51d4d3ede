//! Deterministic JSON and text rendering of command results.

use std::fmt::Write as _;

use num_rational::BigRational;
use posetdegen::exact::Point;
use posetdegen::{Ideal, Poset};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// A command result in both renderings, plus the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: i32,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            status: 0,
        }
    }

    pub fn with_status(mut self, status: i32) -> Self {
        self.status = status;
        self
    }

    /// JSON objects use sorted keys (`serde_json::Map` is ordered by key).
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.json).expect("values serialize");
                out.push('\n');
                out
            }
            Format::Text => {
                let mut out = self.text.clone();
                if !out.ends_with('\n') {
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Reduced `p/q`; integers print without a denominator.
pub fn rational(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

pub fn point(p: &[i64]) -> Value {
    Value::from(p.to_vec())
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(|p| point(p)).collect())
}

pub fn point_text(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn names(poset: &Poset, mask: u64) -> Vec<String> {
    poset.names(mask)
}

pub fn ideal(poset: &Poset, j: Ideal) -> Value {
    Value::from(names(poset, j.bits()))
}

pub fn ideal_text(poset: &Poset, j: Ideal) -> String {
    format!("{{{}}}", names(poset, j.bits()).join(","))
}

pub fn label_pairs(poset: &Poset, pairs: &[(usize, usize)]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|&(p, q)| Value::from(vec![poset.label(p), poset.label(q)]))
            .collect(),
    )
}

/// Each element followed by its upper covers, indented one level.
pub fn hasse_text(order: &Poset, indent: usize) -> String {
    let pad = " ".repeat(indent);
    let covers = order.covers();
    let mut out = String::new();
    for p in 0..order.len() {
        let _ = writeln!(out, "{pad}{}", order.label(p));
        for &(_, q) in covers.iter().filter(|&&(a, _)| a == p) {
            let _ = writeln!(out, "{pad}  {}", order.label(q));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        let r = Report::new(json!({"b": 1, "a": {"z": 0, "c": 2}}), String::new());
        assert_eq!(
            r.render(Format::Json),
            "{\n  \"a\": {\n    \"c\": 2,\n    \"z\": 0\n  },\n  \"b\": 1\n}\n"
        );
    }

    #[test]
    fn rationals_are_reduced() {
        let v = BigRational::new(6.into(), (-4).into());
        assert_eq!(rational(&v), json!("-3/2"));
        assert_eq!(rational(&BigRational::from_integer(4.into())), json!("4"));
    }

    #[test]
    fn hasse_lists_covers() {
        let p = Poset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        assert_eq!(hasse_text(&p, 2), "  a\n    b\n  b\n    c\n  c\n");
    }
}
