//! Theory path for `(1/4)^p` fractions, `p ≤ 3`.
//!
//! A design `G = (V, I_n)` is summarized by its frequency vector `F`. The
//! wordlength values `K = C·F` and aliasing values `A = B·F` then fix the
//! whole word spectrum:
//!
//! * an all-even word type `w` is a single complete word of length
//!   `k_w + Σ lee(w)`;
//! * an odd word type whose parity class has aliasing index `ρ = 2^−e`
//!   contributes `2·4^e` words of length `k_w + Σ lee(w)`, so each class
//!   carries `2^p/ρ²` words in total.
//!
//! The second rule needs every row pattern combination that could make two
//! words of one class collide to be present in `V`. For `p = 3` this is the
//! positivity of three parity sums; for smaller `p` the general condition is
//! checked directly.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ca_engine::{build_system, EquationSystem, WordType, MAX_SYSTEM_P};
use crate::design::{build_design, cell_count, cell_pattern, FrequencyVector, GeneratorSpec};
use crate::error::{Error, Result};
use crate::jchar::{
    spectrum_bruteforce, summarize, summarize_scanned, AliasIndex, DesignSummary, Resolution,
    WordSpectrum,
};
use crate::z4;

/// Largest `p` with a theory path.
pub const MAX_THEORY_P: usize = 3;

/// Refusal threshold for the number of search candidates.
pub const SEARCH_BUDGET: f64 = 1e8;

/// Shift of every k-value per unit of periodic extension (`p = 3`).
pub const K_SHIFT: u64 = 64;
/// Shift of every a-value per unit of periodic extension (`p = 3`).
pub const A_SHIFT: u64 = 32;

static SYSTEMS: [OnceLock<EquationSystem>; MAX_SYSTEM_P] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// Cached equation system for exponent `p`.
pub fn system(p: usize) -> Result<&'static EquationSystem> {
    if !(1..=MAX_SYSTEM_P).contains(&p) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            lo: 1,
            hi: MAX_SYSTEM_P as i64,
        });
    }
    if let Some(sys) = SYSTEMS[p - 1].get() {
        return Ok(sys);
    }
    let sys = build_system(p)?;
    Ok(SYSTEMS[p - 1].get_or_init(|| sys))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Theory,
    Bruteforce,
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Theory => "theory",
            Method::Bruteforce => "bruteforce",
            Method::Both => "both",
        })
    }
}

/// Where the word counts of a report came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumSource {
    Theory,
    Bruteforce,
}

impl fmt::Display for SpectrumSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumSource::Theory => "theory",
            SpectrumSource::Bruteforce => "bruteforce",
        })
    }
}

/// `K = C·F` and `A = B·F`.
pub fn evaluate(f: &FrequencyVector, sys: &EquationSystem) -> Result<(Vec<u64>, Vec<u64>)> {
    if f.p() != sys.p {
        return Err(Error::DimensionMismatch {
            expected: sys.p,
            got: f.p(),
        });
    }
    if f.n() == 0 {
        return Err(Error::InvalidFrequency("all counts are zero".into()));
    }
    let dot = |row: &Vec<u8>| -> u64 {
        row.iter()
            .zip(f.counts())
            .map(|(&c, &x)| c as u64 * x)
            .sum()
    };
    Ok((
        sys.c.iter().map(dot).collect(),
        sys.b.iter().map(dot).collect(),
    ))
}

/// Aliasing index of every a-equation class for the values `a`.
pub fn class_rhos(sys: &EquationSystem, a: &[u64]) -> Vec<AliasIndex> {
    (0..sys.a_order.len())
        .map(|i| sys.a_equation(i).rho(a[i]))
        .collect()
}

fn parity_sum(f: &FrequencyVector, parity: [u8; 3]) -> u64 {
    (0..cell_count(3))
        .filter(|&i| {
            cell_pattern(i, 3)
                .iter()
                .zip(parity)
                .all(|(x, b)| x.value() & 1 == b)
        })
        .map(|i| f.get(i))
        .sum()
}

/// The three parity sums `Σ f_ijk` over rows with `(i, j)`, `(i, k)` and
/// `(j, k)` odd and the remaining entry even.
pub fn parity_sums(f: &FrequencyVector) -> Result<[u64; 3]> {
    if f.p() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: f.p(),
        });
    }
    Ok([
        parity_sum(f, [1, 1, 0]),
        parity_sum(f, [1, 0, 1]),
        parity_sum(f, [0, 1, 1]),
    ])
}

/// True when, for every parity class `π` with two or more odd entries and
/// every nonempty proper subset `x` of its support, `V` has a row `i` with
/// `π·i` even and `x·i` odd.
pub fn no_collision(f: &FrequencyVector) -> bool {
    let p = f.p();
    let present: Vec<u32> = (0..cell_count(p))
        .filter(|&i| f.get(i) > 0)
        .map(|i| {
            cell_pattern(i, p)
                .iter()
                .fold(0u32, |acc, x| (acc << 1) | (x.value() & 1) as u32)
        })
        .collect();
    let odd = |mask: u32, row: u32| (mask & row).count_ones() % 2 == 1;
    (1u32..1 << p).filter(|pi| pi.count_ones() >= 2).all(|pi| {
        let mut x = (pi - 1) & pi;
        while x != 0 {
            if !present.iter().any(|&r| !odd(pi, r) && odd(x, r)) {
                return false;
            }
            x = (x - 1) & pi;
        }
        true
    })
}

/// Whether the theory path's counting rule applies to `f`.
///
/// For `p = 3` this is the positivity of the three parity sums; for `p ≤ 2`
/// it is [`no_collision`].
pub fn preconditions_met(f: &FrequencyVector) -> bool {
    match f.p() {
        3 => parity_sums(f)
            .map(|s| s.iter().all(|&x| x > 0))
            .unwrap_or(false),
        p if p < 3 => no_collision(f),
        _ => false,
    }
}

/// `(length, ρ)` of every canonical word type.
pub fn type_profile(sys: &EquationSystem, k: &[u64], a: &[u64]) -> Vec<(u64, AliasIndex)> {
    let rhos = class_rhos(sys, a);
    sys.k_order
        .iter()
        .enumerate()
        .map(|(row, w)| {
            let length = k[row] + sys.constants[row] as u64;
            let rho = if w.is_all_even() {
                AliasIndex::ONE
            } else {
                rhos[sys.a_index(&w.parity()).expect("parity class listed")]
            };
            (length, rho)
        })
        .collect()
}

/// Word spectrum from `K` and `A` by the class counting rule.
pub fn class_rule_spectrum(sys: &EquationSystem, k: &[u64], a: &[u64]) -> Result<WordSpectrum> {
    let mut spec = WordSpectrum::new();
    for ((length, rho), w) in type_profile(sys, k, a).into_iter().zip(&sys.k_order) {
        let count = if w.is_all_even() {
            1u128
        } else {
            let bits = 2 * rho.exponent() + 1;
            if bits >= 128 {
                return Err(Error::CountOverflow(bits));
            }
            1u128 << bits
        };
        let length = u32::try_from(length).map_err(|_| Error::OutOfRange {
            what: "word length",
            value: length as i64,
            lo: 0,
            hi: u32::MAX as i64,
        })?;
        spec.add(length, rho, count);
    }
    Ok(spec)
}

/// Word spectrum of a `p = 3` design whose three parity sums are positive.
pub fn p3_spectrum(f: &FrequencyVector, sys: &EquationSystem) -> Result<WordSpectrum> {
    if sys.p != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: sys.p,
        });
    }
    let sums = parity_sums(f)?;
    if sums.contains(&0) {
        return Err(Error::Precondition(format!(
            "parity sums (110, 101, 011) = ({}, {}, {}) are not all positive",
            sums[0], sums[1], sums[2]
        )));
    }
    let (k, a) = evaluate(f, sys)?;
    class_rule_spectrum(sys, &k, &a)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    /// Longest word scanned by the oracle; all columns when `None`.
    pub max_len: Option<usize>,
    /// Override the oracle's work budget.
    pub force: bool,
}

/// Aliasing structure of one design with the theory quantities that apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryReport {
    pub p: usize,
    pub n: usize,
    pub method: Method,
    pub frequency: FrequencyVector,
    /// `K = C·F` in display order; `None` for `p > 3`.
    pub k_values: Option<Vec<u64>>,
    /// `A = B·F` in display order; `None` for `p > 3`.
    pub a_values: Option<Vec<u64>>,
    /// Aliasing index per a-equation class.
    pub rhos: Option<Vec<AliasIndex>>,
    pub preconditions_met: bool,
    pub spectrum_source: SpectrumSource,
    pub spectrum: WordSpectrum,
    pub summary: DesignSummary,
}

impl TheoryReport {
    pub fn factors(&self) -> usize {
        2 * (self.p + self.n)
    }

    /// `4^n`.
    pub fn runs(&self) -> BigUint {
        BigUint::one() << (2 * self.n)
    }

    pub fn resolution(&self) -> &Resolution {
        &self.summary.resolution
    }
}

fn oracle_spectrum(
    g: &GeneratorSpec,
    opts: &AnalyzeOptions,
) -> Result<(WordSpectrum, DesignSummary)> {
    let d = build_design(g)?;
    let m = d.factors();
    let max_len = opts.max_len.unwrap_or(m).min(m);
    let spec = spectrum_bruteforce(&d, max_len, opts.force)?;
    let summary = summarize_scanned(&spec, m, max_len);
    Ok((spec, summary))
}

/// Analyzes `g` on the theory path, the brute-force oracle, or both.
///
/// The theory path needs `p ≤ 3`. For `p = 3` it refuses designs whose
/// parity sums are not all positive; for `p ≤ 2` such designs get their
/// counts from the oracle (`spectrum_source = bruteforce`). With
/// [`Method::Both`] the two spectra must agree exactly.
pub fn analyze(g: &GeneratorSpec, method: Method, opts: &AnalyzeOptions) -> Result<TheoryReport> {
    let f = g.frequency_vector();
    let p = g.p();
    let factors = 2 * (p + g.n());

    if method != Method::Bruteforce && p > MAX_THEORY_P {
        return Err(Error::Unsupported(format!(
            "theory path covers p <= {}, got p = {}",
            MAX_THEORY_P, p
        )));
    }
    let theory = if p <= MAX_THEORY_P {
        let sys = system(p)?;
        let (k, a) = evaluate(&f, sys)?;
        let rhos = class_rhos(sys, &a);
        Some((sys, k, a, rhos))
    } else {
        None
    };
    let met = preconditions_met(&f);

    let (spectrum, summary, source) = match method {
        Method::Bruteforce => {
            let (s, sum) = oracle_spectrum(g, opts)?;
            (s, sum, SpectrumSource::Bruteforce)
        }
        Method::Theory | Method::Both => {
            let (sys, k, a, _) = theory.as_ref().expect("p <= 3 checked above");
            let (spec, source) = if met {
                (class_rule_spectrum(sys, k, a)?, SpectrumSource::Theory)
            } else if p == 3 {
                return Err(Error::Precondition(format!(
                    "parity sums (110, 101, 011) = {:?} are not all positive",
                    parity_sums(&f)?
                )));
            } else {
                let full = AnalyzeOptions {
                    max_len: None,
                    ..*opts
                };
                (oracle_spectrum(g, &full)?.0, SpectrumSource::Bruteforce)
            };
            if method == Method::Both {
                let full = AnalyzeOptions {
                    max_len: None,
                    ..*opts
                };
                let (oracle, _) = oracle_spectrum(g, &full)?;
                if let Some(diff) = spec.first_difference(&oracle) {
                    return Err(Error::Mismatch(diff));
                }
            }
            let summary = summarize(&spec, factors);
            (spec, summary, source)
        }
    };

    let (k_values, a_values, rhos) = match theory {
        Some((_, k, a, r)) => (Some(k), Some(a), Some(r)),
        None => (None, None, None),
    };
    Ok(TheoryReport {
        p,
        n: g.n(),
        method,
        frequency: f,
        k_values,
        a_values,
        rhos,
        preconditions_met: met,
        spectrum_source: source,
        spectrum,
        summary,
    })
}

/// Minimum word length and largest aliasing index at that length, read off
/// `K` and `A` without counting words.
pub fn min_length_profile(sys: &EquationSystem, k: &[u64], a: &[u64]) -> (u64, AliasIndex) {
    type_profile(sys, k, a)
        .into_iter()
        .min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)))
        .expect("at least one word type")
}

fn resolution_of(r: u64, rho: AliasIndex) -> BigRational {
    BigRational::from_integer(BigInt::from(r + 1)) - rho.ratio()
}

/// The family `F_t = F_0 + t·(0, 1, …, 1)` and its predicted resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicFamily {
    pub f0: FrequencyVector,
    pub t: u64,
    pub ft: FrequencyVector,
    pub r0: u64,
    pub rho0: AliasIndex,
    pub predicted_r: u64,
    pub predicted_rho: AliasIndex,
    pub predicted_resolution: BigRational,
    pub k0: Vec<u64>,
    pub a0: Vec<u64>,
    pub kt: Vec<u64>,
    pub at: Vec<u64>,
    /// Minimum length and its largest ρ computed from `K(F_t)`, `A(F_t)` directly.
    pub direct_r: u64,
    pub direct_rho: AliasIndex,
}

impl PeriodicFamily {
    pub fn direct_resolution(&self) -> BigRational {
        resolution_of(self.direct_r, self.direct_rho)
    }

    /// Prediction agrees with the direct evaluation of `F_t`.
    pub fn consistent(&self) -> bool {
        self.predicted_r == self.direct_r && self.predicted_rho == self.direct_rho
    }
}

/// Extends a `p = 3` frequency vector by `t` on every nonzero cell.
pub fn periodic_extend(f0: &FrequencyVector, t: u64) -> Result<PeriodicFamily> {
    if f0.p() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: f0.p(),
        });
    }
    if !preconditions_met(f0) {
        return Err(Error::Precondition(format!(
            "parity sums (110, 101, 011) = {:?} of F0 are not all positive",
            parity_sums(f0)?
        )));
    }
    let sys = system(3)?;
    let counts: Vec<u64> = f0
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 { c } else { c + t })
        .collect();
    let ft = FrequencyVector::new(3, counts)?;

    let (k0, a0) = evaluate(f0, sys)?;
    let (kt, at) = evaluate(&ft, sys)?;
    for (row, (x, y)) in k0.iter().zip(&kt).enumerate() {
        if y - x != K_SHIFT * t {
            return Err(Error::Mismatch(format!(
                "k_{} shifts by {} instead of {}",
                sys.k_order[row],
                y - x,
                K_SHIFT * t
            )));
        }
    }
    for (row, (x, y)) in a0.iter().zip(&at).enumerate() {
        if y - x != A_SHIFT * t {
            return Err(Error::Mismatch(format!(
                "a_{} shifts by {} instead of {}",
                sys.a_order[row],
                y - x,
                A_SHIFT * t
            )));
        }
    }

    let (r0, rho0) = min_length_profile(sys, &k0, &a0);
    let predicted_r = r0 + K_SHIFT * t;
    let predicted_rho = if rho0.is_complete() {
        AliasIndex::ONE
    } else {
        let e = rho0.exponent() as u64 + (A_SHIFT / 2) * t;
        AliasIndex::from_exponent(u32::try_from(e).map_err(|_| Error::CountOverflow(u32::MAX))?)
    };
    let (direct_r, direct_rho) = min_length_profile(sys, &kt, &at);
    Ok(PeriodicFamily {
        f0: f0.clone(),
        t,
        ft,
        r0,
        rho0,
        predicted_r,
        predicted_rho,
        predicted_resolution: resolution_of(predicted_r, predicted_rho),
        k0,
        a0,
        kt,
        at,
        direct_r,
        direct_rho,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    MaxResolution,
    Gma,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::MaxResolution => "max_resolution",
            Criterion::Gma => "gma",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub report: TheoryReport,
    pub witness: GeneratorSpec,
}

impl SearchHit {
    pub fn frequency(&self) -> &FrequencyVector {
        &self.report.frequency
    }
}

/// Number of frequency vectors with `f_0 = 0` and `Σ f = n`:
/// `C(n + 4^p − 2, n)`.
pub fn candidate_count(n: usize, p: usize) -> f64 {
    let cells = cell_count(p) - 1;
    (0..n).fold(1.0, |acc, i| acc * (cells + i) as f64 / (i + 1) as f64)
}

fn evaluate_candidate(f: FrequencyVector) -> Result<TheoryReport> {
    let g = f.witness()?;
    let method = if preconditions_met(&f) {
        Method::Theory
    } else {
        Method::Bruteforce
    };
    analyze(&g, method, &AnalyzeOptions::default())
}

/// Cell transforms that leave the word spectrum unchanged: permutations and
/// sign changes of the `p` columns of `V`. Negating a column only swaps the
/// two binary columns of its Gray image.
fn column_symmetries(p: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..p {
        perms = perms
            .into_iter()
            .flat_map(|perm| {
                let free: Vec<usize> = (0..p).filter(|j| !perm.contains(j)).collect();
                free.into_iter().map(move |j| {
                    let mut q = perm.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for perm in &perms {
        for signs in 0..1usize << p {
            let table = (0..cell_count(p))
                .map(|c| {
                    let pat = cell_pattern(c, p);
                    let image: Vec<_> = (0..p)
                        .map(|j| {
                            let x = pat[perm[j]];
                            if signs >> j & 1 == 1 {
                                -x
                            } else {
                                x
                            }
                        })
                        .collect();
                    crate::design::cell_index(&image)
                })
                .collect();
            out.push(table);
        }
    }
    out
}

/// Orbit representative of a row multiset. Besides the column symmetries, a
/// single row of `V` may be negated: substituting `−t_r` for `t_r` relabels
/// the runs and swaps the Gray pair of identity column `r`.
fn orbit_key(cells: &[usize], syms: &[Vec<usize>], neg: &[usize]) -> Vec<usize> {
    syms.iter()
        .map(|table| {
            let mut image: Vec<usize> =
                cells.iter().map(|&c| table[c].min(table[neg[c]])).collect();
            image.sort_unstable();
            image
        })
        .min()
        .expect("identity transform present")
}

fn frequency_of(cells: &[usize], p: usize) -> Result<FrequencyVector> {
    let mut counts = vec![0u64; cell_count(p)];
    for &c in cells {
        counts[c] += 1;
    }
    FrequencyVector::new(p, counts)
}

/// Rows of `V` as ascending cell indices.
pub fn row_cells(f: &FrequencyVector) -> Vec<usize> {
    f.counts()
        .iter()
        .enumerate()
        .flat_map(|(c, &k)| std::iter::repeat_n(c, k as usize))
        .collect()
}

/// Degenerate designs last, then by criterion, then by the ascending list
/// of row cells.
pub fn rank(criterion: Criterion, x: &TheoryReport, y: &TheoryReport) -> Ordering {
    rank_summary(criterion, &x.summary, &y.summary)
        .then_with(|| row_cells(&x.frequency).cmp(&row_cells(&y.frequency)))
}

fn rank_summary(criterion: Criterion, x: &DesignSummary, y: &DesignSummary) -> Ordering {
    x.degenerate
        .cmp(&y.degenerate)
        .then_with(|| match criterion {
            Criterion::MaxResolution => y.resolution.cmp(&x.resolution),
            Criterion::Gma => x.gwlp.cmp(&y.gwlp),
        })
}

/// Exhaustive search over frequency vectors with `f_0 = 0` and `n` rows.
///
/// Candidates meeting the counting preconditions are evaluated on the theory
/// path, the rest with the oracle on their witness generator. Candidates
/// related by a spectrum-preserving symmetry share one evaluation.
pub fn search(
    n: usize,
    p: usize,
    criterion: Criterion,
    top: usize,
    force: bool,
) -> Result<Vec<SearchHit>> {
    if !(1..=MAX_THEORY_P).contains(&p) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            lo: 1,
            hi: MAX_THEORY_P as i64,
        });
    }
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let estimate = candidate_count(n, p);
    if !force && estimate > SEARCH_BUDGET {
        return Err(Error::Budget {
            what: "search candidates",
            estimate,
            limit: SEARCH_BUDGET,
        });
    }
    let cells = cell_count(p);
    let top = top.max(1);
    let syms = column_symmetries(p);
    let neg: Vec<usize> = (0..cells)
        .map(|c| {
            let pat: Vec<_> = cell_pattern(c, p).into_iter().map(|x| -x).collect();
            crate::design::cell_index(&pat)
        })
        .collect();

    // every candidate as a nondecreasing cell list, tagged with its orbit
    let mut candidates: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut cur = vec![1usize; n];
    loop {
        candidates.push((cur.clone(), Vec::new()));
        let Some(pos) = (0..n).rev().find(|&i| cur[i] + 1 < cells) else {
            break;
        };
        let next = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|c| *c = next);
    }
    candidates
        .par_iter_mut()
        .for_each(|(c, key)| *key = orbit_key(c, &syms, &neg));

    let mut keys: Vec<Vec<usize>> = candidates.iter().map(|(_, k)| k.clone()).collect();
    keys.sort_unstable();
    keys.dedup();
    let summaries: Vec<DesignSummary> = keys
        .par_iter()
        .map(|k| evaluate_candidate(frequency_of(k, p)?).map(|r| r.summary))
        .collect::<Result<_>>()?;
    let summary_of = |key: &Vec<usize>| &summaries[keys.binary_search(key).expect("key listed")];

    candidates.sort_by(|(cx, kx), (cy, ky)| {
        rank_summary(criterion, summary_of(kx), summary_of(ky)).then_with(|| cx.cmp(cy))
    });
    candidates
        .into_iter()
        .take(top)
        .map(|(c, _)| {
            let report = evaluate_candidate(frequency_of(&c, p)?)?;
            let witness = report.frequency.witness()?;
            Ok(SearchHit { report, witness })
        })
        .collect()
}

/// Label of a word type, for reports.
pub fn type_label(w: &WordType) -> String {
    z4::label(w.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::cell_index;

    fn design256() -> GeneratorSpec {
        GeneratorSpec::from_ints(&[vec![1, 1, 2], vec![1, 2, 1], vec![1, 3, 3], vec![2, 1, 3]])
            .unwrap()
    }

    fn rho(e: u32) -> AliasIndex {
        AliasIndex::from_exponent(e)
    }

    #[test]
    fn design256_values() {
        let f = design256().frequency_vector();
        let (k, a) = evaluate(&f, system(3).unwrap()).unwrap();
        assert_eq!(a, vec![3, 3, 3, 2, 2, 2, 1]);
        assert_eq!(k.len(), 35);
        assert_eq!(&k[..6], &[5, 5, 5, 6, 4, 4]);
        assert!(preconditions_met(&f));
    }

    #[test]
    fn design256_theory_spectrum() {
        let f = design256().frequency_vector();
        let spec = p3_spectrum(&f, system(3).unwrap()).unwrap();
        let got: Vec<_> = spec.entries().collect();
        assert_eq!(
            got,
            vec![(6, rho(1), 168), (8, rho(0), 7), (10, rho(1), 56)]
        );
    }

    #[test]
    fn design256_analyze_both() {
        let r = analyze(&design256(), Method::Both, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.summary.resolution.to_string(), "13/2");
        assert_eq!(r.spectrum_source, SpectrumSource::Theory);
        assert_eq!(r.factors(), 14);
        assert_eq!(r.runs(), BigUint::from(256u32));
    }

    #[test]
    fn zero_rows_only() {
        let mut counts = vec![0u64; 64];
        counts[0] = 3;
        let f = FrequencyVector::new(3, counts).unwrap();
        let (k, a) = evaluate(&f, system(3).unwrap()).unwrap();
        assert!(k.iter().all(|&x| x == 0));
        assert!(a.iter().all(|&x| x == 0));
    }

    #[test]
    fn precondition_violation_is_reported() {
        // last coordinate even in every row
        let g = GeneratorSpec::from_ints(&[vec![1, 1, 0], vec![1, 3, 2], vec![3, 1, 2]]).unwrap();
        let err = analyze(&g, Method::Theory, &AnalyzeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let r = analyze(&g, Method::Bruteforce, &AnalyzeOptions::default()).unwrap();
        assert!(!r.preconditions_met);
        assert!(p3_spectrum(&g.frequency_vector(), system(3).unwrap()).is_err());
    }

    #[test]
    fn p4_theory_is_unsupported() {
        let g = GeneratorSpec::from_ints(&[vec![1, 1, 1, 1]]).unwrap();
        assert!(matches!(
            analyze(&g, Method::Theory, &AnalyzeOptions::default()),
            Err(Error::Unsupported(_))
        ));
        let r = analyze(&g, Method::Bruteforce, &AnalyzeOptions::default()).unwrap();
        assert!(r.k_values.is_none());
    }

    #[test]
    fn extension_extension() {
        let fam = periodic_extend(&design256().frequency_vector(), 1).unwrap();
        assert_eq!(fam.predicted_r, 70);
        assert_eq!(fam.predicted_rho, rho(17));
        assert!(fam.consistent());
        assert_eq!(
            crate::jchar::render_decimal(&fam.predicted_resolution, 7),
            "70.9999924"
        );
        let twos: Vec<usize> = (0..64).filter(|&i| fam.ft.get(i) == 2).collect();
        assert_eq!(twos, vec![22, 25, 31, 39]);
        assert_eq!(fam.ft.get(0), 0);
    }

    #[test]
    fn extension_by_zero_is_identity() {
        let f = design256().frequency_vector();
        let fam = periodic_extend(&f, 0).unwrap();
        assert_eq!(fam.ft, f);
        assert_eq!(fam.predicted_resolution, resolution_of(6, rho(1)));
    }

    #[test]
    fn no_collision_small_p() {
        let f = |p: usize, rows: &[&str]| {
            let mut counts = vec![0u64; cell_count(p)];
            for r in rows {
                counts[cell_index(&z4::parse_label(r).unwrap())] += 1;
            }
            FrequencyVector::new(p, counts).unwrap()
        };
        assert!(no_collision(&f(1, &["2"])));
        assert!(no_collision(&f(2, &["13"])));
        assert!(!no_collision(&f(2, &["10", "01"])));
        assert!(!no_collision(&f(3, &["110", "101"])));
        assert!(no_collision(&f(3, &["110", "101", "011"])));
    }

    #[test]
    fn search_small_is_deterministic() {
        let a = search(2, 1, Criterion::MaxResolution, 5, false).unwrap();
        let b = search(2, 1, Criterion::MaxResolution, 5, false).unwrap();
        let fa: Vec<_> = a.iter().map(|h| h.frequency().clone()).collect();
        let fb: Vec<_> = b.iter().map(|h| h.frequency().clone()).collect();
        assert_eq!(fa, fb);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn search_budget_guard() {
        assert!(matches!(
            search(10, 3, Criterion::Gma, 1, false),
            Err(Error::Budget { .. })
        ));
        assert_eq!(candidate_count(4, 3), 720720.0);
        assert_eq!(candidate_count(1, 1), 3.0);
    }
}
