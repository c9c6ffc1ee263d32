//! Deterministic output artifacts: a provenance header plus the result,
//! rendered as pretty JSON (sorted keys via `BTreeMap`-backed values) or as a
//! plain table with grade rows in (height, lex) order.

use crate::Format;
use bkm_core::cartan::BkmCartanMatrix;
use serde_json::{json, Value};

/// Provenance attached to every artifact.
pub struct Meta {
    pub matrix_hash: Option<String>,
    pub cutoff: Option<u32>,
    pub version: &'static str,
}

impl Meta {
    pub fn new(matrix: Option<&BkmCartanMatrix>, cutoff: Option<u32>) -> Self {
        let matrix_hash = matrix.map(|m| {
            let canon = serde_json::to_string(&m.to_json()).expect("matrix serializes");
            format!("{:016x}", fnv1a(canon.as_bytes()))
        });
        Meta {
            matrix_hash,
            cutoff,
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    fn to_value(&self) -> Value {
        json!({
            "tool": "bkm",
            "version": self.version,
            "matrix_hash": self.matrix_hash,
            "cutoff": self.cutoff,
        })
    }
}

/// 64-bit FNV-1a, used for matrix hashes and cache keys.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn emit(meta: &Meta, result: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let artifact = json!({ "meta": meta.to_value(), "result": result });
            let mut s = serde_json::to_string_pretty(&artifact).expect("artifact serializes");
            s.push('\n');
            s
        }
        Format::Table => render_table(meta, result),
    }
}

fn render_table(meta: &Meta, result: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("# bkm {}\n", meta.version));
    if let Some(h) = &meta.matrix_hash {
        out.push_str(&format!("# matrix {h}\n"));
    }
    if let Some(c) = meta.cutoff {
        out.push_str(&format!("# cutoff {c}\n"));
    }
    render_value(result, "", &mut out);
    out
}

fn grade_str(v: &Value) -> Option<String> {
    let arr = v.as_array()?;
    let mut parts = Vec::with_capacity(arr.len());
    for x in arr {
        parts.push(x.as_u64()?.to_string());
    }
    Some(parts.join(","))
}

fn render_value(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            // character coefficients get dedicated grade/coefficient rows;
            // maps created upstream are already (height, lex)-sorted
            if let (Some(Value::Array(coeffs)), true) = (map.get("coeffs"), map.contains_key("top"))
            {
                for row in coeffs {
                    let g = grade_str(&row["grade"]).unwrap_or_default();
                    out.push_str(&format!("{g}\t{}\n", row["c"]));
                }
                return;
            }
            for (k, val) in map {
                render_value(val, k, out);
            }
        }
        Value::Array(_) => {
            if let Some(g) = grade_str(v) {
                out.push_str(&format!("{prefix}\t{g}\n"));
                return;
            }
            let arr = v.as_array().unwrap();
            for item in arr {
                if let Some(g) = grade_str(item) {
                    out.push_str(&format!("{prefix}\t{g}\n"));
                } else {
                    render_value(item, prefix, out);
                }
            }
        }
        other => out.push_str(&format!("{prefix}\t{other}\n")),
    }
}
