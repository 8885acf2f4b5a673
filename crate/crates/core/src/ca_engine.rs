//! Code-arithmetic generation of wordlength (k-) and aliasing (a-) equations.
//!
//! A word of a `(1/4)^p`-fraction design is described by a word type
//! `w ∈ Z4^p`: entry `w_j` says how many of the two binary columns coming
//! from quaternary column `j` of `V` the word uses (0 none, 2 both, odd one).
//! Its k-equation is a coefficient vector over the `4^p` frequency cells;
//! the word length is `Σ c_i f_i` plus the number of `V` columns involved.
//!
//! Equations are never written down directly. They are grown from the two
//! single-entry basis equations by four rewriting steps:
//!
//! * insert a zero entry into a lower-order equation ([`lift_insert_zero`]),
//! * extend the all-ones equation by one odd entry ([`lift_all_odd`]),
//! * flip an entry by 2 with the Lee-weight sum `⊕` ([`toggle_entry`]),
//! * read the a-equation off the parity of `w` ([`a_equation`]).
//!
//! [`build_system`] applies these steps to every canonical word type and
//! assembles the coefficient matrices in display order.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::design::{cell_count, cell_digit, cell_index, cell_pattern, FrequencyVector};
use crate::error::{Error, Result};
use crate::jchar::AliasIndex;
use crate::z4::{self, Z4};

/// Largest `p` for which equation systems are materialized.
pub const MAX_SYSTEM_P: usize = 6;

/// A word type `w ∈ Z4^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordType(Vec<Z4>);

impl WordType {
    pub fn new(entries: Vec<Z4>) -> Self {
        assert!(!entries.is_empty(), "word type needs p >= 1");
        WordType(entries)
    }

    pub fn from_label(s: &str) -> Option<Self> {
        z4::parse_label(s).filter(|v| !v.is_empty()).map(WordType)
    }

    /// `e_l` scaled by `value`.
    pub fn unit(p: usize, l: usize, value: Z4) -> Self {
        let mut v = vec![Z4::ZERO; p];
        v[l] = value;
        WordType(v)
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Z4] {
        &self.0
    }

    pub fn label(&self) -> String {
        z4::label(&self.0)
    }

    /// Number of `V` columns the word includes: `Σ lee_weight(w_j)`.
    pub fn lee_sum(&self) -> u32 {
        self.0.iter().map(|x| x.lee_weight() as u32).sum()
    }

    pub fn odd_count(&self) -> usize {
        self.0.iter().filter(|x| x.is_odd()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == Z4::ZERO)
    }

    pub fn is_all_even(&self) -> bool {
        self.0.iter().all(|x| !x.is_odd())
    }

    /// `w mod 2`.
    pub fn parity(&self) -> WordType {
        WordType(self.0.iter().map(|x| Z4::new(x.value() & 1)).collect())
    }

    /// All-even nonzero, or first odd entry equal to 1.
    pub fn is_canonical(&self) -> bool {
        match self.0.iter().find(|x| x.is_odd()) {
            Some(&first) => first == Z4::ONE,
            None => !self.is_zero(),
        }
    }

    /// The canonical type with the same k-equation (`−w` when the first odd entry is 3).
    pub fn canonical(&self) -> WordType {
        match self.0.iter().find(|x| x.is_odd()) {
            Some(&Z4::THREE) => WordType(self.0.iter().map(|&x| -x).collect()),
            _ => self.clone(),
        }
    }

    fn order_key(&self) -> (u32, Vec<(u8, u8)>) {
        (
            self.lee_sum(),
            self.0.iter().map(|x| (x.lee_weight(), x.value())).collect(),
        )
    }
}

impl PartialOrd for WordType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Display order: Lee-weight sum first, then entry by entry with
/// 0 < 1 < 3 < 2 (Lee weight, then value).
impl Ord for WordType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for WordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Wordlength equation `k_w = Σ c_i f_i` with coefficients in {0, 1, 2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KEquation {
    pub wtype: WordType,
    pub coeffs: Vec<u8>,
}

impl KEquation {
    pub fn p(&self) -> usize {
        self.wtype.p()
    }

    /// Number of `V`-generated columns in the word.
    pub fn length_constant(&self) -> u32 {
        self.wtype.lee_sum()
    }

    pub fn evaluate(&self, f: &FrequencyVector) -> u64 {
        self.coeffs
            .iter()
            .zip(f.counts())
            .map(|(&c, &n)| c as u64 * n)
            .sum()
    }

    /// The all-zero equation of exponent `p` (identity for `⊕`).
    pub fn zero(p: usize) -> Self {
        KEquation {
            wtype: WordType(vec![Z4::ZERO; p]),
            coeffs: vec![0; cell_count(p)],
        }
    }
}

/// Aliasing equation `a_w = Σ b_i f_i`, shared by all `w` with the same parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AEquation {
    pub parity: WordType,
    pub coeffs: Vec<u8>,
    /// 1 when the entries of `w` sum to an even number.
    pub delta: u8,
}

impl AEquation {
    pub fn odd_count(&self) -> usize {
        self.parity.odd_count()
    }

    pub fn evaluate(&self, f: &FrequencyVector) -> u64 {
        self.coeffs
            .iter()
            .zip(f.counts())
            .map(|(&c, &n)| c as u64 * n)
            .sum()
    }

    /// Aliasing index for the value `a` of this equation.
    ///
    /// The exponent is `⌊(a + δ)/2⌋` plus one for every further pair of odd
    /// entries beyond the first: `⌊(a + q − 1)/2⌋` with `q` odd entries.
    pub fn rho(&self, a: u64) -> AliasIndex {
        let q = self.odd_count() as u64;
        let extra = (q - 1) / 2;
        AliasIndex::from_exponent(((a + self.delta as u64) / 2 + extra) as u32)
    }
}

fn check_position(l: usize, hi: usize) -> Result<()> {
    if l > hi {
        return Err(Error::OutOfRange {
            what: "l",
            value: l as i64,
            lo: 0,
            hi: hi as i64,
        });
    }
    Ok(())
}

fn check_p(p: usize) -> Result<()> {
    if !(1..=MAX_SYSTEM_P).contains(&p) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p as i64,
            lo: 1,
            hi: MAX_SYSTEM_P as i64,
        });
    }
    Ok(())
}

/// `k_1 ⊕ k_2`: cellwise `lee_weight(c + c' mod 4)`; the type is `w_1 + w_2`.
pub fn ca_add(k1: &KEquation, k2: &KEquation) -> Result<KEquation> {
    if k1.p() != k2.p() {
        return Err(Error::DimensionMismatch {
            expected: k1.p(),
            got: k2.p(),
        });
    }
    let coeffs = k1
        .coeffs
        .iter()
        .zip(&k2.coeffs)
        .map(|(&a, &b)| Z4::new(a + b).lee_weight())
        .collect();
    let wtype = WordType(
        k1.wtype
            .0
            .iter()
            .zip(&k2.wtype.0)
            .map(|(&a, &b)| a + b)
            .collect(),
    );
    Ok(KEquation { wtype, coeffs })
}

/// k-equation of `e_l`: coefficient `lee_weight(i_l)` on every cell.
pub fn basis_single_one(p: usize, l: usize) -> Result<KEquation> {
    check_p(p)?;
    check_position(l, p - 1)?;
    let coeffs = (0..cell_count(p))
        .map(|i| cell_digit(i, l, p).lee_weight())
        .collect();
    Ok(KEquation {
        wtype: WordType::unit(p, l, Z4::ONE),
        coeffs,
    })
}

/// k-equation of `2·e_l`: coefficient 2 where `i_l` is odd.
pub fn basis_single_two(p: usize, l: usize) -> Result<KEquation> {
    check_p(p)?;
    check_position(l, p - 1)?;
    let coeffs = (0..cell_count(p))
        .map(|i| if cell_digit(i, l, p).is_odd() { 2 } else { 0 })
        .collect();
    Ok(KEquation {
        wtype: WordType::unit(p, l, Z4::TWO),
        coeffs,
    })
}

/// Inserts a zero entry at position `l` of the type, replicating each
/// coefficient over the four values of the new cell coordinate.
pub fn lift_insert_zero(k: &KEquation, l: usize) -> Result<KEquation> {
    let p = k.p();
    check_position(l, p)?;
    check_p(p + 1)?;
    let coeffs = (0..cell_count(p + 1))
        .map(|i| {
            let mut pat = cell_pattern(i, p + 1);
            pat.remove(l);
            k.coeffs[cell_index(&pat)]
        })
        .collect();
    let mut w = k.wtype.0.clone();
    w.insert(l, Z4::ZERO);
    Ok(KEquation {
        wtype: WordType(w),
        coeffs,
    })
}

/// Extends `k_{1_p}` to `k_{(1, 3_p)}`: the coefficient of `f_i` moves to
/// `f_(s, i_1..i_{p−1}, i_p + s)` for every `s`.
pub fn lift_all_odd(k: &KEquation) -> Result<KEquation> {
    let p = k.p();
    if k.wtype.0.iter().any(|&x| x != Z4::ONE) {
        return Err(Error::NotAllOnes(k.wtype.label()));
    }
    check_p(p + 1)?;
    let mut coeffs = vec![0u8; cell_count(p + 1)];
    for (i, &c) in k.coeffs.iter().enumerate() {
        let pat = cell_pattern(i, p);
        for s in Z4::ALL {
            let mut lifted = Vec::with_capacity(p + 1);
            lifted.push(s);
            lifted.extend_from_slice(&pat[..p - 1]);
            lifted.push(pat[p - 1] + s);
            coeffs[cell_index(&lifted)] = c;
        }
    }
    let mut w = vec![Z4::THREE; p + 1];
    w[0] = Z4::ONE;
    Ok(KEquation {
        wtype: WordType(w),
        coeffs,
    })
}

/// `k ⊕ k_{2e_l}`: changes entry `l` of the type by 2.
pub fn toggle_entry(k: &KEquation, l: usize) -> Result<KEquation> {
    let p = k.p();
    check_position(l, p.saturating_sub(1))?;
    ca_add(k, &basis_single_two(p, l)?)
}

/// Closed form of `k_{1_p}`: coefficient 1 on odd entry sums, 2 on sums
/// ≡ 2 (mod 4), 0 on sums ≡ 0 (mod 4).
pub fn all_odd_closed_form(p: usize) -> Result<KEquation> {
    check_p(p)?;
    let coeffs = (0..cell_count(p))
        .map(|i| {
            let sum = cell_pattern(i, p)
                .into_iter()
                .fold(Z4::ZERO, |acc, x| acc + x);
            sum.lee_weight()
        })
        .collect();
    Ok(KEquation {
        wtype: WordType(vec![Z4::ONE; p]),
        coeffs,
    })
}

/// a-equation of a word type with at least one odd entry: coefficient 1 on
/// cells where `Σ (w_j mod 2)·i_j` is odd.
pub fn a_equation(w: &WordType) -> Result<AEquation> {
    if w.is_all_even() {
        return Err(Error::CompleteWord(w.label()));
    }
    let p = w.p();
    check_p(p)?;
    let parity = w.parity();
    let coeffs = (0..cell_count(p))
        .map(|i| {
            let pat = cell_pattern(i, p);
            z4::dot(&parity.0, &pat).value() & 1
        })
        .collect();
    let sum: u32 = w.0.iter().map(|x| x.value() as u32).sum();
    Ok(AEquation {
        parity,
        coeffs,
        delta: sum.is_multiple_of(2) as u8,
    })
}

/// All canonical word types of exponent `p`, in display order.
pub fn canonical_wordtypes(p: usize) -> Result<Vec<WordType>> {
    check_p(p)?;
    let mut out: Vec<WordType> = (0..cell_count(p))
        .map(|i| WordType(cell_pattern(i, p)))
        .filter(|w| w.is_canonical())
        .collect();
    out.sort();
    Ok(out)
}

/// Nonzero parity vectors of length `p`, in display order.
pub fn parity_classes(p: usize) -> Result<Vec<WordType>> {
    check_p(p)?;
    let mut out: Vec<WordType> = (1..(1usize << p))
        .map(|bits| {
            WordType(
                (0..p)
                    .map(|j| Z4::new(((bits >> (p - 1 - j)) & 1) as u8))
                    .collect(),
            )
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Derives the k-equation of a canonical type through the rewriting chain.
pub fn derive_equation(w: &WordType) -> Result<KEquation> {
    if !w.is_canonical() {
        return Err(Error::Unsupported(format!(
            "word type {} is not canonical",
            w
        )));
    }
    check_p(w.p())?;
    derive(&w.0)
}

fn derive(w: &[Z4]) -> Result<KEquation> {
    let p = w.len();
    let nonzero: Vec<usize> = (0..p).filter(|&j| w[j] != Z4::ZERO).collect();
    if let [l] = nonzero[..] {
        return match w[l] {
            Z4::ONE => basis_single_one(p, l),
            Z4::TWO => basis_single_two(p, l),
            _ => unreachable!("canonical single-entry types are 1 or 2"),
        };
    }
    if let Some(l) = w.iter().position(|&x| x == Z4::ZERO) {
        let mut sub = w.to_vec();
        sub.remove(l);
        return lift_insert_zero(&derive(&sub)?, l);
    }
    if let Some(l) = w.iter().position(|&x| x == Z4::TWO) {
        let mut sub = w.to_vec();
        sub[l] = Z4::ZERO;
        return toggle_entry(&derive(&sub)?, l);
    }
    // all odd with leading 1: start from (1, 3, …, 3) and flip the 1s back
    let mut k = lift_all_odd(&derive(&vec![Z4::ONE; p - 1])?)?;
    for (l, &x) in w.iter().enumerate().skip(1) {
        if x == Z4::ONE {
            k = toggle_entry(&k, l)?;
        }
    }
    Ok(k)
}

/// k-equation of any nonzero type. Non-canonical types are obtained from
/// their canonical representative by toggling every odd entry.
pub fn equation_for(w: &WordType) -> Result<KEquation> {
    if w.is_zero() {
        return Ok(KEquation::zero(w.p()));
    }
    if w.is_canonical() {
        return derive_equation(w);
    }
    let mut k = derive_equation(&w.canonical())?;
    for (l, x) in w.0.iter().enumerate() {
        if x.is_odd() {
            k = toggle_entry(&k, l)?;
        }
    }
    Ok(k)
}

/// The ordered k- and a-equation matrices for exponent `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub p: usize,
    pub k_order: Vec<WordType>,
    pub c: Vec<Vec<u8>>,
    pub a_order: Vec<WordType>,
    pub b: Vec<Vec<u8>>,
    pub constants: Vec<u32>,
    pub deltas: Vec<u8>,
}

impl EquationSystem {
    pub fn k_index(&self, w: &WordType) -> Option<usize> {
        self.k_order.iter().position(|x| x == w)
    }

    pub fn a_index(&self, parity: &WordType) -> Option<usize> {
        self.a_order.iter().position(|x| x == parity)
    }

    pub fn k_equation(&self, row: usize) -> KEquation {
        KEquation {
            wtype: self.k_order[row].clone(),
            coeffs: self.c[row].clone(),
        }
    }

    pub fn a_equation(&self, row: usize) -> AEquation {
        AEquation {
            parity: self.a_order[row].clone(),
            coeffs: self.b[row].clone(),
            delta: self.deltas[row],
        }
    }

    /// Expected `|K| = 2^p − 1 + 2^(2p−1) − 2^(p−1)`.
    pub fn expected_k_rows(p: usize) -> usize {
        (1 << p) - 1 + (1 << (2 * p - 1)) - (1 << (p - 1))
    }
}

/// Generates every canonical k-equation and every a-equation for exponent `p`.
pub fn build_system(p: usize) -> Result<EquationSystem> {
    let k_order = canonical_wordtypes(p)?;
    let rows: Vec<KEquation> = k_order
        .par_iter()
        .map(derive_equation)
        .collect::<Result<_>>()?;
    debug_assert!(rows.iter().zip(&k_order).all(|(k, w)| &k.wtype == w));
    let constants = rows.iter().map(KEquation::length_constant).collect();
    let c = rows.into_iter().map(|k| k.coeffs).collect();

    let a_order = parity_classes(p)?;
    let a_rows: Vec<AEquation> = a_order.iter().map(a_equation).collect::<Result<_>>()?;
    let deltas = a_rows.iter().map(|a| a.delta).collect();
    let b = a_rows.into_iter().map(|a| a.coeffs).collect();

    Ok(EquationSystem {
        p,
        k_order,
        c,
        a_order,
        b,
        constants,
        deltas,
    })
}
