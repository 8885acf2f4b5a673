//! Generator matrices, frequency vectors and the Gray-map binary design.
//!
//! A generator `G = (V, I_n)` is described by its `n × p` block `V`; the
//! identity block is implied. The binary design `D` has `4^n` runs (one per
//! coefficient vector `t ∈ Z4^n`, in base-4 ascending order) and `2p + 2n`
//! two-level factors: the Gray images of the `p` columns of `V` first, then
//! those of the `n` identity columns.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::z4::Z4;

/// Largest `n` for which the design matrix is materialized (`4^12` runs).
pub const MAX_DESIGN_N: usize = 12;

/// Number of frequency cells for exponent `p`.
#[inline]
pub fn cell_count(p: usize) -> usize {
    1usize << (2 * p)
}

/// Base-4 index of a row pattern, first entry most significant.
pub fn cell_index(pattern: &[Z4]) -> usize {
    pattern
        .iter()
        .fold(0usize, |acc, x| (acc << 2) | x.value() as usize)
}

/// Entry `pos` (0-based, from the left) of the pattern with index `cell`.
#[inline]
pub fn cell_digit(cell: usize, pos: usize, p: usize) -> Z4 {
    Z4::new(((cell >> (2 * (p - 1 - pos))) & 3) as u8)
}

/// Inverse of [`cell_index`].
pub fn cell_pattern(cell: usize, p: usize) -> Vec<Z4> {
    (0..p).map(|pos| cell_digit(cell, pos, p)).collect()
}

/// The `n × p` quaternary block `V` of a generator `G = (V, I_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    n: usize,
    p: usize,
    rows: Vec<Vec<Z4>>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorFile {
    n: usize,
    p: usize,
    #[serde(rename = "V")]
    v: Vec<Vec<i64>>,
}

impl GeneratorSpec {
    pub fn new(rows: Vec<Vec<Z4>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGenerator("V has no rows".into()));
        }
        let p = rows[0].len();
        if p == 0 {
            return Err(Error::InvalidGenerator("V has no columns".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != p) {
            return Err(Error::InvalidGenerator(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                p
            )));
        }
        Ok(Self { n, p, rows })
    }

    /// Builds a generator from integer rows, rejecting entries outside 0..=3.
    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &x)| {
                        Z4::try_from_int(x).ok_or_else(|| {
                            Error::InvalidGenerator(format!(
                                "V[{}][{}] = {} is not in 0..3",
                                i + 1,
                                j + 1,
                                x
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    /// Parses the generator file format `{"n": .., "p": .., "V": [[..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeneratorFile = serde_json::from_str(text)?;
        let g = Self::from_ints(&file.v)?;
        if g.n != file.n || g.p != file.p {
            return Err(Error::InvalidGenerator(format!(
                "declared n={} p={} but V is {}x{}",
                file.n, file.p, g.n, g.p
            )));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let file = GeneratorFile {
            n: self.n,
            p: self.p,
            v: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.value() as i64).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("generator serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> &[Vec<Z4>] {
        &self.rows
    }

    pub fn rows_as_ints(&self) -> Vec<Vec<u8>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Reorders the columns of `V`: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.p);
        let rows = self
            .rows
            .iter()
            .map(|r| perm.iter().map(|&j| r[j]).collect())
            .collect();
        Self {
            n: self.n,
            p: self.p,
            rows,
        }
    }

    /// Codeword `t·G mod 4` (length `p + n`) for the coefficient vector `t`.
    pub fn codeword(&self, t: &[Z4]) -> Vec<Z4> {
        let mut word = vec![Z4::ZERO; self.p + self.n];
        for (r, &tr) in t.iter().enumerate() {
            for (j, &v) in self.rows[r].iter().enumerate() {
                word[j] += tr * v;
            }
            word[self.p + r] = tr;
        }
        word
    }

    pub fn frequency_vector(&self) -> FrequencyVector {
        frequency_vector(self)
    }
}

/// Counts of each row pattern of `V`, indexed by base-4 value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyVector {
    p: usize,
    counts: Vec<u64>,
}

impl FrequencyVector {
    pub fn new(p: usize, counts: Vec<u64>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidFrequency("p must be positive".into()));
        }
        if counts.len() != cell_count(p) {
            return Err(Error::DimensionMismatch {
                expected: cell_count(p),
                got: counts.len(),
            });
        }
        Ok(Self { p, counts })
    }

    /// Infers `p` from the length (`4^p`) of `counts`.
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        let len = counts.len();
        let p = (1..=8).find(|&p| cell_count(p) == len).ok_or_else(|| {
            Error::InvalidFrequency(format!("length {} is not a power of 4", len))
        })?;
        Self::new(p, counts)
    }

    /// Parses the frequency-vector file format: a JSON array of `4^p` integers.
    pub fn from_json(text: &str) -> Result<Self> {
        let counts: Vec<u64> = serde_json::from_str(text)?;
        Self::from_counts(counts)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of rows of `V` summarized.
    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, cell: usize) -> u64 {
        self.counts[cell]
    }

    /// A generator whose rows realize these counts, listed in ascending cell order.
    pub fn witness(&self) -> Result<GeneratorSpec> {
        let rows: Vec<Vec<Z4>> = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(cell, &c)| std::iter::repeat_n(cell, c as usize))
            .map(|cell| cell_pattern(cell, self.p))
            .collect();
        GeneratorSpec::new(rows)
    }
}

/// `counts[b4(i)]` = number of rows of `V` equal to the pattern `i`.
pub fn frequency_vector(g: &GeneratorSpec) -> FrequencyVector {
    let mut counts = vec![0u64; cell_count(g.p)];
    for row in &g.rows {
        counts[cell_index(row)] += 1;
    }
    FrequencyVector { p: g.p, counts }
}

/// A two-level design with ±1 entries, stored column-major as sign bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDesign {
    runs: usize,
    factors: usize,
    words: usize,
    // bit r of column c is set when cell (r, c) is −1; padding bits stay clear
    columns: Vec<Vec<u64>>,
}

impl BinaryDesign {
    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    /// Number of `u64` words per packed column.
    pub fn words(&self) -> usize {
        self.words
    }

    /// Packed sign bits of column `col` (0-based).
    pub fn column_bits(&self, col: usize) -> &[u64] {
        &self.columns[col]
    }

    /// Entry at (`run`, `col`), both 0-based.
    pub fn cell(&self, run: usize, col: usize) -> i8 {
        if (self.columns[col][run / 64] >> (run % 64)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn row(&self, run: usize) -> Vec<i8> {
        (0..self.factors).map(|c| self.cell(run, c)).collect()
    }

    pub fn to_matrix(&self) -> Vec<Vec<i8>> {
        (0..self.runs).map(|r| self.row(r)).collect()
    }

    /// Builds a design from an explicit ±1 matrix.
    pub fn from_matrix(rows: &[Vec<i8>]) -> Result<Self> {
        let runs = rows.len();
        if runs == 0 {
            return Err(Error::InvalidGenerator("design has no runs".into()));
        }
        let factors = rows[0].len();
        let words = runs.div_ceil(64);
        let mut columns = vec![vec![0u64; words]; factors];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != factors {
                return Err(Error::DimensionMismatch {
                    expected: factors,
                    got: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                match x {
                    1 => {}
                    -1 => columns[c][r / 64] |= 1 << (r % 64),
                    _ => {
                        return Err(Error::Parse(format!(
                            "entry ({}, {}) = {} is not ±1",
                            r + 1,
                            c + 1,
                            x
                        )))
                    }
                }
            }
        }
        Ok(Self {
            runs,
            factors,
            words,
            columns,
        })
    }

    /// The full `4^n × 2n` factorial generated by `I_n` alone.
    pub fn full_factorial(n: usize) -> Result<Self> {
        check_n(n)?;
        let g = GeneratorSpec {
            n,
            p: 0,
            rows: vec![Vec::new(); n],
        };
        Ok(construct(&g))
    }

    /// Writes the text export: a `runs=R factors=M` header then one
    /// comma-separated run per line.
    pub fn write_text<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "runs={} factors={}", self.runs, self.factors)?;
        let mut line = String::with_capacity(self.factors * 3);
        for r in 0..self.runs {
            line.clear();
            for c in 0..self.factors {
                if c > 0 {
                    line.push(',');
                }
                line.push_str(if self.cell(r, c) == 1 { "+1" } else { "-1" });
            }
            writeln!(out, "{}", line)?;
        }
        Ok(())
    }

    /// Parses the text export written by [`BinaryDesign::write_text`].
    pub fn read_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty design file".into()))?;
        let mut runs = None;
        let mut factors = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("runs=") {
                runs = v.parse::<usize>().ok();
            } else if let Some(v) = tok.strip_prefix("factors=") {
                factors = v.parse::<usize>().ok();
            }
        }
        let (runs, factors) = runs
            .zip(factors)
            .ok_or_else(|| Error::Parse(format!("line 1: bad header {:?}", header)))?;
        let rows = lines
            .enumerate()
            .map(|(i, l)| {
                l.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i8>()
                            .map_err(|_| Error::Parse(format!("line {}: bad entry {:?}", i + 2, x)))
                    })
                    .collect::<Result<Vec<i8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Self::from_matrix(&rows)?;
        if d.runs != runs || d.factors != factors {
            return Err(Error::Parse(format!(
                "header declares {}x{}, body is {}x{}",
                runs, factors, d.runs, d.factors
            )));
        }
        Ok(d)
    }
}

fn check_n(n: usize) -> Result<()> {
    if !(1..=MAX_DESIGN_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            lo: 1,
            hi: MAX_DESIGN_N as i64,
        });
    }
    Ok(())
}

/// Materializes the binary image of the code generated by `G = (V, I_n)`.
pub fn build_design(g: &GeneratorSpec) -> Result<BinaryDesign> {
    check_n(g.n)?;
    Ok(construct(g))
}

fn construct(g: &GeneratorSpec) -> BinaryDesign {
    let n = g.n;
    let q = g.p + n;
    let runs = 1usize << (2 * n);
    let words = runs.div_ceil(64);
    let factors = 2 * q;

    // one block of 64 runs at a time; each block yields a word per binary column
    let blocks: Vec<Vec<u64>> = (0..words)
        .into_par_iter()
        .map(|b| {
            let mut out = vec![0u64; factors];
            let mut t = vec![Z4::ZERO; n];
            let end = runs.min((b + 1) * 64);
            for run in b * 64..end {
                for (r, tr) in t.iter_mut().enumerate() {
                    *tr = Z4::new(((run >> (2 * (n - 1 - r))) & 3) as u8);
                }
                let bit = 1u64 << (run % 64);
                for (j, x) in g.codeword(&t).into_iter().enumerate() {
                    let (b1, b2) = x.gray_bits();
                    if b1 == 1 {
                        out[2 * j] |= bit;
                    }
                    if b2 == 1 {
                        out[2 * j + 1] |= bit;
                    }
                }
            }
            out
        })
        .collect();

    let columns = (0..factors)
        .map(|c| blocks.iter().map(|blk| blk[c]).collect())
        .collect();
    BinaryDesign {
        runs,
        factors,
        words,
        columns,
    }
}
