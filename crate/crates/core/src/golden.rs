//! Reference data transcribed from published matrices and worked examples.
//!
//! The JSON files under `golden/` are embedded at compile time and guarded
//! by SHA-256 checksums. Nothing in this crate writes to them.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::ca_engine::WordType;
use crate::design::{cell_count, cell_pattern, FrequencyVector, GeneratorSpec};
use crate::error::{Error, Result};
use crate::z4;

pub const MATRICES_JSON: &str = include_str!("../golden/matrices.json");
pub const EXAMPLES_JSON: &str = include_str!("../golden/examples.json");

pub const MATRICES_SHA256: &str =
    "cdd52fda299ac58fcd7e3aed020c68ab07762edab9ee170797af008421214a36";
pub const EXAMPLES_SHA256: &str =
    "0242356d4f87c26861bb3d4849aa8f50796181353e53cd273eaa06b978e4dcc9";

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{:02x}", b))
        .collect()
}

/// Errors unless both embedded files hash to their recorded digests.
pub fn verify_checksums() -> Result<()> {
    for (name, data, want) in [
        ("matrices.json", MATRICES_JSON, MATRICES_SHA256),
        ("examples.json", EXAMPLES_JSON, EXAMPLES_SHA256),
    ] {
        let got = sha256_hex(data.as_bytes());
        if got != want {
            return Err(Error::Mismatch(format!(
                "{} checksum {} differs from recorded {}",
                name, got, want
            )));
        }
    }
    Ok(())
}

/// Reference k- and a-equation matrices for one `p`.
#[derive(Clone, Debug, Deserialize)]
pub struct GoldenMatrices {
    #[serde(rename = "K_order")]
    pub k_order: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<u8>>,
    #[serde(rename = "A_order")]
    pub a_order: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u8>>,
    #[serde(default)]
    pub constants: Option<Vec<u32>>,
    #[serde(default)]
    pub deltas: Option<Vec<u8>>,
}

pub fn golden_matrices(p: usize) -> Result<GoldenMatrices> {
    let mut all: std::collections::BTreeMap<String, GoldenMatrices> =
        serde_json::from_str(MATRICES_JSON)?;
    all.remove(&format!("p{}", p))
        .ok_or_else(|| Error::Unsupported(format!("no reference matrices for p = {}", p)))
}

#[derive(Clone, Debug, Deserialize)]
pub struct CaSumFixture {
    pub p: usize,
    pub k10: Vec<u8>,
    pub k02: Vec<u8>,
    pub k10_plus_k02: Vec<u8>,
}

/// Cells of `k_11` grouped by coefficient.
#[derive(Clone, Debug, Deserialize)]
pub struct K11Classes {
    pub p: usize,
    #[serde(rename = "C0")]
    pub c0: Vec<String>,
    #[serde(rename = "C1")]
    pub c1: Vec<String>,
    #[serde(rename = "C2")]
    pub c2: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct SpectrumEntry {
    pub length: u32,
    pub rho: String,
    pub count: u128,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Design256 {
    pub n: usize,
    pub p: usize,
    #[serde(rename = "V")]
    pub v: Vec<Vec<i64>>,
    #[serde(rename = "F_runs")]
    pub f_runs: Vec<(u64, usize)>,
    #[serde(rename = "K")]
    pub k: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    pub lengths: Vec<u64>,
    pub rho: String,
    pub partial_words: u128,
    pub spectrum: Vec<SpectrumEntry>,
    pub gwlp: Vec<u64>,
    pub resolution: String,
}

impl Design256 {
    pub fn generator(&self) -> Result<GeneratorSpec> {
        GeneratorSpec::from_ints(&self.v)
    }

    pub fn frequency(&self) -> Result<FrequencyVector> {
        FrequencyVector::new(self.p, expand_runs(&self.f_runs))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Extension {
    pub t: u64,
    #[serde(rename = "Ft_runs")]
    pub ft_runs: Vec<(u64, usize)>,
    pub r: u64,
    pub rho_exponent: u32,
    pub resolution_decimal: String,
}

impl Extension {
    pub fn frequency(&self) -> Result<FrequencyVector> {
        FrequencyVector::new(3, expand_runs(&self.ft_runs))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct TypeCount {
    pub p: usize,
    pub even: usize,
    pub odd: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenExamples {
    pub ca_sum: CaSumFixture,
    pub k11_classes: K11Classes,
    pub design256: Design256,
    pub extension: Extension,
    pub type_counts: Vec<TypeCount>,
}

pub fn golden_examples() -> Result<GoldenExamples> {
    Ok(serde_json::from_str(EXAMPLES_JSON)?)
}

/// Expands `(value, repeat)` pairs, e.g. `(0, 22), (1, 1)` → 22 zeros then a one.
pub fn expand_runs(runs: &[(u64, usize)]) -> Vec<u64> {
    runs.iter()
        .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
        .collect()
}

/// Independent k-equation: coefficient `lee_weight(w·i)` on cell `i`.
pub fn inner_product_k(w: &WordType) -> Vec<u8> {
    let p = w.p();
    (0..cell_count(p))
        .map(|i| z4::dot(w.entries(), &cell_pattern(i, p)).lee_weight())
        .collect()
}

/// Independent a-equation: coefficient `(w·i) mod 2` on cell `i`.
pub fn inner_product_a(w: &WordType) -> Vec<u8> {
    let p = w.p();
    (0..cell_count(p))
        .map(|i| z4::dot(w.entries(), &cell_pattern(i, p)).value() & 1)
        .collect()
}

/// Cells where a transcribed matrix disagrees with the inner-product forms,
/// as `(matrix, row label, cell, transcribed, oracle)`.
pub fn transcription_errors(m: &GoldenMatrices) -> Vec<(char, String, usize, u8, u8)> {
    let mut out = Vec::new();
    for (name, order, rows, oracle) in [
        (
            'C',
            &m.k_order,
            &m.c,
            inner_product_k as fn(&WordType) -> Vec<u8>,
        ),
        ('B', &m.a_order, &m.b, inner_product_a),
    ] {
        for (label, row) in order.iter().zip(rows) {
            let Some(w) = WordType::from_label(label) else {
                out.push((name, label.clone(), 0, 0, 0));
                continue;
            };
            for (cell, (&x, y)) in row.iter().zip(oracle(&w)).enumerate() {
                if x != y {
                    out.push((name, label.clone(), cell, x, y));
                }
            }
        }
    }
    out
}
