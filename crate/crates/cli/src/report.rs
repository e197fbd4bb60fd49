//! Report rendering. Every command produces one `Report`; the JSON and text
//! renderings are two views of the same value tree, so they always agree.
//! JSON objects are backed by sorted maps, which makes the output
//! byte-identical for identical inputs and flags.

use serde_json::{json, Map, Value};

use sgon_core::bigdec::BigDec;
use sgon_core::exact::quad::QuadNum;
use sgon_core::exact::rational::{format_rational, Rational};
use sgon_core::exact::symbol::SymReal;
use sgon_core::intlinalg::matrix::IntMatrix;
use sgon_core::planar::tau::Tau;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub provenance: Vec<&'static str>,
    pub precision: u32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.into()));
        root.insert("precision".into(), json!(self.precision));
        root.insert("result".into(), self.body.clone());
        root.insert(
            "provenance".into(),
            Value::Array(
                self.provenance
                    .iter()
                    .map(|s| Value::String((*s).into()))
                    .collect(),
            ),
        );
        let value = Value::Object(root);
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
                out.push('\n');
                out
            }
            Format::Text => {
                let mut out = String::new();
                render_text(&value, "", &mut out);
                out
            }
        }
    }
}

fn render_text(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let next = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{}.{}", path, k)
                };
                render_text(val, &next, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{} = []\n", path));
            }
            for (i, val) in items.iter().enumerate() {
                render_text(val, &format!("{}[{}]", path, i), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{} = {}\n", path, s)),
        other => out.push_str(&format!("{} = {}\n", path, other)),
    }
}

// ---------- value builders ----------

pub fn val_rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn val_quad(q: &QuadNum) -> Value {
    json!({
        "D": q.discriminant(),
        "pair": [
            format_rational(q.rational_part()),
            format_rational(q.surd_part()),
        ],
        "display": q.to_string(),
    })
}

pub fn val_tau(t: &Tau) -> Value {
    json!({
        "D": t.discriminant(),
        "a": [
            format_rational(t.a().rational_part()),
            format_rational(t.a().surd_part()),
        ],
        "b": [
            format_rational(t.b().rational_part()),
            format_rational(t.b().surd_part()),
        ],
        "display": t.to_string(),
    })
}

/// A symbol-basis value as its aligned coefficient array plus a display
/// form.
pub fn val_symreal(x: &SymReal) -> Value {
    json!({
        "coeffs": x.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        "display": x.to_string(),
    })
}

pub fn val_symreal_vector(xs: &[SymReal]) -> Value {
    Value::Array(xs.iter().map(val_symreal).collect())
}

pub fn val_numeric(x: &BigDec, digits: u32) -> Value {
    Value::String(x.to_fixed_string(digits))
}

pub fn val_int_vector(v: &[num_bigint::BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn val_int_matrix(m: &IntMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}
