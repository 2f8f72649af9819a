//! JSON instance and result file formats, canonical instance digests, and
//! Betti table rendering (JSON, Macaulay-style CSV grid, plain text).

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::FieldCfg;
use crate::betti::BettiTable;
use crate::combinatorics::{Clutter, CombinatoricsError, Face, SimplicialComplex};

/// Version tag embedded in every result payload.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid instance json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Validation(#[from] CombinatoricsError),
    #[error("instance has kind '{got}', expected '{expected}'")]
    WrongKind { expected: &'static str, got: String },
    #[error("clutter instance requires the field 'm'")]
    MissingM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Clutter,
    Complex,
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceKind::Clutter => write!(f, "clutter"),
            InstanceKind::Complex => write!(f, "complex"),
        }
    }
}

/// The on-disk instance format. Unknown keys are rejected; vertex sets are
/// validated by the combinatorics constructors on conversion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: u32,
    pub kind: InstanceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub sets: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<std::collections::BTreeMap<String, String>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_complex(delta: &SimplicialComplex) -> Self {
        InstanceFile {
            n: delta.n(),
            kind: InstanceKind::Complex,
            m: None,
            sets: delta
                .facets()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect(),
            labels: None,
        }
    }

    pub fn from_clutter(c: &Clutter) -> Self {
        InstanceFile {
            n: c.n(),
            kind: InstanceKind::Clutter,
            m: Some(c.m()),
            sets: c.circuits().iter().map(|f| f.vertices().to_vec()).collect(),
            labels: None,
        }
    }

    fn faces(&self) -> Result<Vec<Face>, IoError> {
        Ok(self
            .sets
            .iter()
            .map(|s| Face::new(s.clone()))
            .collect::<Result<_, _>>()?)
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, IoError> {
        if self.kind != InstanceKind::Complex {
            return Err(IoError::WrongKind {
                expected: "complex",
                got: self.kind.to_string(),
            });
        }
        Ok(SimplicialComplex::from_facets(self.faces()?, self.n)?)
    }

    pub fn to_clutter(&self) -> Result<Clutter, IoError> {
        if self.kind != InstanceKind::Clutter {
            return Err(IoError::WrongKind {
                expected: "clutter",
                got: self.kind.to_string(),
            });
        }
        let m = self.m.ok_or(IoError::MissingM)?;
        Ok(Clutter::new(self.faces()?, self.n, m)?)
    }

    /// SHA-256 of the canonical form (normalized sets, labels excluded),
    /// so results are traceable to the instance they were computed from.
    pub fn digest(&self) -> Result<String, IoError> {
        #[derive(Serialize)]
        struct Canonical<'a> {
            kind: &'a InstanceKind,
            n: u32,
            #[serde(skip_serializing_if = "Option::is_none")]
            m: Option<u32>,
            sets: Vec<Vec<u32>>,
        }
        let sets: Vec<Vec<u32>> = match self.kind {
            InstanceKind::Complex => self
                .to_complex()?
                .facets()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect(),
            InstanceKind::Clutter => self
                .to_clutter()?
                .circuits()
                .iter()
                .map(|f| f.vertices().to_vec())
                .collect(),
        };
        let canonical = Canonical {
            kind: &self.kind,
            n: self.n,
            m: self.m,
            sets,
        };
        let bytes = serde_json::to_vec(&canonical)?;
        let mut hasher = Sha256::new();
        hasher.update(&bytes);
        Ok(hex_string(&hasher.finalize()))
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// The result envelope written by every command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: String,
    pub schema: u32,
    pub field: FieldCfg,
    pub command: String,
    pub instance: String,
    pub payload: Value,
}

impl ResultFile {
    pub fn new(field: FieldCfg, command: String, instance_digest: String, payload: Value) -> Self {
        ResultFile {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            field,
            command,
            instance: instance_digest,
            payload,
        }
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serialization cannot fail")
    }
}

/// Betti table as a JSON value: explicit window, field, and sparse cells.
pub fn betti_table_json(t: &BettiTable) -> Value {
    let cells: Vec<Value> = t
        .cells
        .iter()
        .map(|(&(i, j), &v)| serde_json::json!({ "i": i, "j": j, "value": v }))
        .collect();
    serde_json::json!({
        "field": t.field,
        "m": t.m,
        "i_max": t.i_max,
        "j_max": t.j_max,
        "cells": cells,
    })
}

/// Macaulay-style CSV grid: rows indexed by `j - i`, columns by `i`.
pub fn betti_table_csv(t: &BettiTable) -> String {
    let mut out = String::from("j-i");
    for i in 0..=t.i_max {
        out.push_str(&format!(",{i}"));
    }
    out.push('\n');
    let d_max = t.j_max.saturating_sub(0);
    for d in t.m..=d_max {
        out.push_str(&d.to_string());
        for i in 0..=t.i_max {
            let j = d + i as u32;
            if j > t.j_max {
                out.push(',');
            } else {
                out.push_str(&format!(",{}", t.get(i, j)));
            }
        }
        out.push('\n');
    }
    out
}

/// Human-readable grid with dots for zeros.
pub fn betti_table_text(t: &BettiTable) -> String {
    let mut out = format!(
        "betti table  field={}  window: i<={} j<={}\n",
        t.field, t.i_max, t.j_max
    );
    let width = t
        .cells
        .values()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(2);
    out.push_str(&format!("{:>5} |", "j-i"));
    for i in 0..=t.i_max {
        out.push_str(&format!(" {i:>width$}"));
    }
    out.push('\n');
    out.push_str(&format!("{:-<6}+{:-<w$}\n", "", "", w = (width + 1) * (t.i_max + 1)));
    for d in t.m..=t.j_max {
        out.push_str(&format!("{d:>5} |"));
        for i in 0..=t.i_max {
            let j = d + i as u32;
            if j > t.j_max {
                out.push_str(&format!(" {:>width$}", ""));
            } else {
                let v = t.get(i, j);
                if v == 0 {
                    out.push_str(&format!(" {:>width$}", "."));
                } else {
                    out.push_str(&format!(" {v:>width$}"));
                }
            }
        }
        out.push('\n');
    }
    out
}
