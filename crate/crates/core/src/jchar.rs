//! Brute-force aliasing oracle.
//!
//! Everything here is computed directly from a [`BinaryDesign`]: the
//! J-characteristic of a column subset is the sum over runs of the product of
//! its columns, and the aliasing index is its magnitude relative to the run
//! size. Enumerating every subset gives the word spectrum, from which the
//! generalized wordlength pattern and generalized resolution follow.
//!
//! No floating point is involved; aliasing indices are kept as powers of two
//! and derived quantities as exact rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::design::BinaryDesign;
use crate::error::{Error, Result};

/// Default refusal threshold for brute-force scans, in cell reads.
pub const SCAN_BUDGET: f64 = 1e10;

/// Words shorter than this are degenerate (constant or duplicated columns)
/// and kept out of the wordlength pattern.
pub const MIN_WORD_LENGTH: u32 = 3;

/// A set of distinct 1-based column indices, stored in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnSubset {
    indices: Vec<usize>,
}

impl ColumnSubset {
    pub fn new(indices: impl Into<Vec<usize>>, factors: usize) -> Result<Self> {
        let mut indices = indices.into();
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > factors) {
            return Err(Error::InvalidColumn {
                index: bad,
                factors,
            });
        }
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateColumn(w[0]));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// A nonzero aliasing index `ρ = 2^(−exponent)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AliasIndex(u32);

impl AliasIndex {
    pub const ONE: AliasIndex = AliasIndex(0);

    pub const fn from_exponent(e: u32) -> Self {
        AliasIndex(e)
    }

    pub const fn exponent(self) -> u32 {
        self.0
    }

    pub fn is_complete(self) -> bool {
        self.0 == 0
    }

    pub fn ratio(self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.0)
    }

    /// `ρ²` as an exact rational.
    pub fn squared(self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << (2 * self.0))
    }

    /// Classifies `|j| / runs`; `None` for an orthogonal subset, an error if
    /// the ratio is not a power of two.
    pub fn from_j(j: i64, runs: usize) -> Result<Option<Self>> {
        let mag = j.unsigned_abs();
        if mag == 0 {
            return Ok(None);
        }
        let runs = runs as u64;
        if mag > runs || !runs.is_multiple_of(mag) || !(runs / mag).is_power_of_two() {
            let g = num_integer::gcd(mag, runs);
            return Err(Error::NonDyadic {
                num: mag / g,
                den: runs / g,
            });
        }
        Ok(Some(AliasIndex((runs / mag).trailing_zeros())))
    }
}

impl fmt::Display for AliasIndex {
    /// Renders as `"1/2^e"` expanded, e.g. `"1/2"`, `"1/1"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", BigInt::one() << self.0)
    }
}

/// Renders a rational as `"num/den"` (always with a denominator).
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a nonnegative rational with `places` decimals, rounding half up.
pub fn render_decimal(r: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r * BigRational::from_integer(scale.clone())
        + BigRational::new(BigInt::one(), BigInt::from(2)))
    .floor()
    .to_integer();
    let int_part = &scaled / &scale;
    let frac_part = (&scaled % &scale).abs();
    if places == 0 {
        return int_part.to_string();
    }
    format!(
        "{}.{:0>width$}",
        int_part,
        frac_part.to_string(),
        width = places as usize
    )
}

/// J-characteristic: sum over runs of the product of the selected columns.
pub fn j_characteristic(d: &BinaryDesign, s: &ColumnSubset) -> Result<i64> {
    if let Some(&bad) = s.indices.iter().find(|&&i| i == 0 || i > d.factors()) {
        return Err(Error::InvalidColumn {
            index: bad,
            factors: d.factors(),
        });
    }
    let mut acc = vec![0u64; d.words()];
    for &c in &s.indices {
        for (a, b) in acc.iter_mut().zip(d.column_bits(c - 1)) {
            *a ^= b;
        }
    }
    Ok(j_from_bits(&acc, d.runs()))
}

#[inline]
fn j_from_bits(acc: &[u64], runs: usize) -> i64 {
    let neg: u32 = acc.iter().map(|w| w.count_ones()).sum();
    runs as i64 - 2 * neg as i64
}

/// Aliasing index `|j| / runs` of a column subset.
pub fn aliasing_index(d: &BinaryDesign, s: &ColumnSubset) -> Result<BigRational> {
    let j = j_characteristic(d, s)?;
    Ok(BigRational::new(
        BigInt::from(j.abs()),
        BigInt::from(d.runs() as u64),
    ))
}

type SpectrumMap = BTreeMap<(u32, AliasIndex), u128>;

/// Multiset of words aggregated by `(length, ρ)`.
///
/// Words of length ≥ 3 make up the spectrum proper; shorter ones (constant
/// columns, duplicated column pairs) are tracked separately as diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordSpectrum {
    words: SpectrumMap,
    degenerate: SpectrumMap,
}

impl WordSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, length: u32, rho: AliasIndex, count: u128) {
        if count == 0 {
            return;
        }
        let map = if length < MIN_WORD_LENGTH {
            &mut self.degenerate
        } else {
            &mut self.words
        };
        *map.entry((length, rho)).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &WordSpectrum) {
        for (&(l, r), &c) in other.words.iter().chain(&other.degenerate) {
            self.add(l, r, c);
        }
    }

    /// `(length, ρ, count)` for words of length ≥ 3, by length then decreasing ρ.
    pub fn entries(&self) -> impl Iterator<Item = (u32, AliasIndex, u128)> + '_ {
        self.words.iter().map(|(&(l, r), &c)| (l, r, c))
    }

    /// `(length, ρ, count)` for degenerate words of length 1 or 2.
    pub fn degenerate(&self) -> impl Iterator<Item = (u32, AliasIndex, u128)> + '_ {
        self.degenerate.iter().map(|(&(l, r), &c)| (l, r, c))
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn total_words(&self) -> u128 {
        self.words.values().sum()
    }

    pub fn count(&self, length: u32, rho: AliasIndex) -> u128 {
        let map = if length < MIN_WORD_LENGTH {
            &self.degenerate
        } else {
            &self.words
        };
        map.get(&(length, rho)).copied().unwrap_or(0)
    }

    /// Spectrum restricted to words no longer than `max_len`.
    pub fn truncated(&self, max_len: u32) -> WordSpectrum {
        let mut out = WordSpectrum::new();
        for (&(l, r), &c) in self.words.iter().chain(&self.degenerate) {
            if l <= max_len {
                out.add(l, r, c);
            }
        }
        out
    }

    /// Describes the first `(length, ρ)` cell where the two spectra disagree.
    pub fn first_difference(&self, other: &WordSpectrum) -> Option<String> {
        let mut keys: Vec<(u32, AliasIndex)> = self
            .words
            .keys()
            .chain(self.degenerate.keys())
            .chain(other.words.keys())
            .chain(other.degenerate.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|(l, r)| {
            let a = self.count(l, r);
            let b = other.count(l, r);
            (a != b).then(|| format!("length {} rho {}: {} vs {}", l, r, a, b))
        })
    }
}

/// Generalized resolution, or a marker that no word exists up to the
/// scanned length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Exact(BigRational),
    Beyond(usize),
}

impl Resolution {
    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Resolution::Exact(r) => Some(r),
            Resolution::Beyond(_) => None,
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Exact(r) => write!(f, "{}", ratio_string(r)),
            Resolution::Beyond(l) => write!(f, ">{}", l),
        }
    }
}

impl PartialOrd for Resolution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Resolution {
    fn cmp(&self, other: &Self) -> Ordering {
        use Resolution::*;
        match (self, other) {
            (Exact(a), Exact(b)) => a.cmp(b),
            (Exact(_), Beyond(_)) => Ordering::Less,
            (Beyond(_), Exact(_)) => Ordering::Greater,
            (Beyond(a), Beyond(b)) => a.cmp(b),
        }
    }
}

/// Wordlength pattern and generalized resolution of a design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignSummary {
    pub factors: usize,
    /// `A_1, …, A_factors`; `A_1 = A_2 = 0` since short words are excluded.
    pub gwlp: Vec<BigRational>,
    pub resolution: Resolution,
    pub min_length: Option<u32>,
    pub max_rho_at_min_length: Option<AliasIndex>,
    /// Set when the design has words of length 1 or 2.
    pub degenerate: bool,
}

impl DesignSummary {
    /// `A_k` for `k` in `from..=factors`.
    pub fn gwlp_from(&self, from: usize) -> &[BigRational] {
        &self.gwlp[from - 1..]
    }

    pub fn gwlp_mass(&self) -> BigRational {
        self.gwlp.iter().fold(BigRational::zero(), |acc, a| acc + a)
    }

    pub fn resolution_f64(&self) -> Option<f64> {
        self.resolution.exact().and_then(|r| r.to_f64())
    }
}

/// Summary of a spectrum that covers all word lengths up to `factors`.
pub fn summarize(spec: &WordSpectrum, factors: usize) -> DesignSummary {
    summarize_scanned(spec, factors, factors)
}

/// Summary of a spectrum known to be complete only up to `scanned` columns.
pub fn summarize_scanned(spec: &WordSpectrum, factors: usize, scanned: usize) -> DesignSummary {
    let mut gwlp = vec![BigRational::zero(); factors];
    for (l, rho, c) in spec.entries() {
        let k = l as usize;
        if k <= factors {
            gwlp[k - 1] += rho.squared() * BigRational::from_integer(BigInt::from(c));
        }
    }
    let min_length = spec.entries().map(|(l, _, _)| l).min();
    let max_rho = min_length.and_then(|r| {
        spec.entries()
            .filter(|&(l, _, _)| l == r)
            .map(|(_, rho, _)| rho)
            .min()
    });
    let resolution = match (min_length, max_rho) {
        (Some(r), Some(rho)) => {
            Resolution::Exact(BigRational::from_integer(BigInt::from(r + 1)) - rho.ratio())
        }
        _ => Resolution::Beyond(scanned),
    };
    DesignSummary {
        factors,
        gwlp,
        resolution,
        min_length,
        max_rho_at_min_length: max_rho,
        degenerate: spec.is_degenerate(),
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Estimated cell reads for scanning all subsets of size ≤ `max_len`.
pub fn scan_cost(factors: usize, runs: usize, max_len: usize) -> f64 {
    (1..=max_len.min(factors))
        .map(|k| binomial(factors, k))
        .sum::<f64>()
        * runs as f64
}

/// Enumerates every column subset of size `1..=max_len` and aggregates the
/// ones with nonzero J-characteristic by `(length, ρ)`.
pub fn spectrum_bruteforce(d: &BinaryDesign, max_len: usize, force: bool) -> Result<WordSpectrum> {
    let m = d.factors();
    if max_len == 0 || max_len > m {
        return Err(Error::OutOfRange {
            what: "max_len",
            value: max_len as i64,
            lo: 1,
            hi: m as i64,
        });
    }
    let cost = scan_cost(m, d.runs(), max_len);
    if !force && cost > SCAN_BUDGET {
        return Err(Error::Budget {
            what: "brute-force subset scan",
            estimate: cost,
            limit: SCAN_BUDGET,
        });
    }

    let partials: Vec<Result<SpectrumMap>> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut out = SpectrumMap::new();
            let mut acc = vec![vec![0u64; d.words()]; max_len + 1];
            acc[1].copy_from_slice(d.column_bits(first));
            record(&acc[1], 1, d.runs(), &mut out)?;
            if max_len > 1 {
                scan(d, first + 1, 1, max_len, &mut acc, &mut out)?;
            }
            Ok(out)
        })
        .collect();

    let mut spec = WordSpectrum::new();
    for part in partials {
        for ((l, r), c) in part? {
            spec.add(l, r, c);
        }
    }
    Ok(spec)
}

#[inline]
fn record(bits: &[u64], len: usize, runs: usize, out: &mut SpectrumMap) -> Result<()> {
    if let Some(rho) = AliasIndex::from_j(j_from_bits(bits, runs), runs)? {
        *out.entry((len as u32, rho)).or_insert(0) += 1;
    }
    Ok(())
}

fn scan(
    d: &BinaryDesign,
    start: usize,
    depth: usize,
    max_len: usize,
    acc: &mut [Vec<u64>],
    out: &mut SpectrumMap,
) -> Result<()> {
    for c in start..d.factors() {
        let (lo, hi) = acc.split_at_mut(depth + 1);
        let next = &mut hi[0];
        for ((n, a), b) in next.iter_mut().zip(&lo[depth]).zip(d.column_bits(c)) {
            *n = a ^ b;
        }
        record(next, depth + 1, d.runs(), out)?;
        if depth + 1 < max_len {
            scan(d, c + 1, depth + 1, max_len, acc, out)?;
        }
    }
    Ok(())
}
