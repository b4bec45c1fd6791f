//! Storable JSON form of a fitted model.
//!
//! The document is schema-versioned and strict: unknown fields are
//! rejected, and floats are written with 17 significant digits so that
//! parse(serialize(model)) reproduces every double bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use expseries::prony::ExpTerm;
use expseries::{Complex64, ExponentialModel};
use serde::Deserialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: u32,
    /// Sampling step of the fit; evaluation itself is step-free.
    pub dt: f64,
    pub terms: Vec<TermDoc>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

/// One model term, both complex numbers as `[re, im]`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub amp: [f64; 2],
    pub exp: [f64; 2],
}

impl ModelDocument {
    pub fn from_model(model: &ExponentialModel, meta: BTreeMap<String, String>) -> Self {
        let terms = model
            .terms()
            .iter()
            .map(|term| TermDoc {
                amp: [term.amplitude.re, term.amplitude.im],
                exp: [term.exponent.re, term.exponent.im],
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            dt: model.dt(),
            terms,
            meta,
        }
    }

    pub fn to_model(&self) -> Result<ExponentialModel> {
        if self.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            );
        }
        if self.dt != 1.0 {
            bail!(
                "unsupported dt {}: only unit sampling is supported",
                self.dt
            );
        }
        let terms = self
            .terms
            .iter()
            .map(|term| {
                ExpTerm::new(
                    Complex64::new(term.amp[0], term.amp[1]),
                    Complex64::new(term.exp[0], term.exp[1]),
                )
            })
            .collect();
        Ok(ExponentialModel::new(terms)?)
    }

    /// Serializes the document. Hand-rolled so every float is printed with
    /// 17 significant digits; generic serializers use shortest round-trip
    /// digits, which round-trips too but is harder to pin in goldens.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"schema_version\": {},", self.schema_version);
        let _ = writeln!(out, "  \"dt\": {},", full_precision(self.dt));
        out.push_str("  \"terms\": [\n");
        for (i, term) in self.terms.iter().enumerate() {
            let _ = write!(
                out,
                "    {{\"amp\": [{}, {}], \"exp\": [{}, {}]}}",
                full_precision(term.amp[0]),
                full_precision(term.amp[1]),
                full_precision(term.exp[0]),
                full_precision(term.exp[1])
            );
            out.push_str(if i + 1 < self.terms.len() {
                ",\n"
            } else {
                "\n"
            });
        }
        if self.meta.is_empty() {
            out.push_str("  ],\n  \"meta\": {}\n}\n");
            return out;
        }
        out.push_str("  ],\n  \"meta\": {\n");
        for (i, (key, value)) in self.meta.iter().enumerate() {
            let _ = write!(out, "    \"{}\": \"{}\"", escape(key), escape(value));
            out.push_str(if i + 1 < self.meta.len() { ",\n" } else { "\n" });
        }
        out.push_str("  }\n}\n");
        out
    }
}

pub fn load_model(path: &Path) -> Result<ExponentialModel> {
    let raw = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: ModelDocument =
        serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
    doc.to_model()
        .with_context(|| format!("loading model from {}", path.display()))
}

/// `{:.16e}`: one leading digit plus 16 fractional digits, enough to
/// reproduce any f64 exactly.
fn full_precision(x: f64) -> String {
    format!("{x:.16e}")
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            ch if (ch as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", ch as u32);
            }
            ch => out.push(ch),
        }
    }
    out
}
