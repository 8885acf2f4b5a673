//! Arithmetic over the ring Z4 = {0, 1, 2, 3}.
//!
//! Besides the ring operations this module provides the two maps every
//! quaternary-code design is built on:
//!
//! | x | Lee weight | Gray image |
//! |---|------------|------------|
//! | 0 | 0          | (+1, +1)   |
//! | 1 | 1          | (+1, -1)   |
//! | 2 | 2          | (-1, -1)   |
//! | 3 | 1          | (-1, +1)   |

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element of Z4, always reduced mod 4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Z4(u8);

impl Z4 {
    pub const ZERO: Z4 = Z4(0);
    pub const ONE: Z4 = Z4(1);
    pub const TWO: Z4 = Z4(2);
    pub const THREE: Z4 = Z4(3);

    pub const ALL: [Z4; 4] = [Z4(0), Z4(1), Z4(2), Z4(3)];

    #[inline]
    pub const fn new(v: u8) -> Self {
        Z4(v & 3)
    }

    /// Reduces an arbitrary integer into Z4.
    #[inline]
    pub fn from_int(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    /// Accepts only values already in 0..=3.
    pub fn try_from_int(v: i64) -> Option<Self> {
        (0..4).contains(&v).then_some(Z4(v as u8))
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_odd(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub const fn lee_weight(self) -> u8 {
        LEE[self.0 as usize]
    }

    /// Gray image as a pair of ±1 entries.
    #[inline]
    pub const fn gray(self) -> (i8, i8) {
        GRAY[self.0 as usize]
    }

    /// Gray image as sign bits (1 encodes −1).
    #[inline]
    pub const fn gray_bits(self) -> (u8, u8) {
        let x = self.0;
        (x >> 1, (x ^ (x >> 1)) & 1)
    }
}

const LEE: [u8; 4] = [0, 1, 2, 1];
const GRAY: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, -1), (-1, 1)];

/// Lee weight of `x`: 0, 1, 2, 1 for x = 0, 1, 2, 3.
#[inline]
pub fn lee_weight(x: Z4) -> u8 {
    x.lee_weight()
}

/// The Gray map Z4 → {+1, −1}².
#[inline]
pub fn gray_map(x: Z4) -> (i8, i8) {
    x.gray()
}

impl Add for Z4 {
    type Output = Z4;
    #[inline]
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) & 3)
    }
}

impl AddAssign for Z4 {
    #[inline]
    fn add_assign(&mut self, rhs: Z4) {
        *self = *self + rhs;
    }
}

impl Sub for Z4 {
    type Output = Z4;
    #[inline]
    fn sub(self, rhs: Z4) -> Z4 {
        Z4((self.0 + 4 - rhs.0) & 3)
    }
}

impl Neg for Z4 {
    type Output = Z4;
    #[inline]
    fn neg(self) -> Z4 {
        Z4((4 - self.0) & 3)
    }
}

impl Mul for Z4 {
    type Output = Z4;
    #[inline]
    fn mul(self, rhs: Z4) -> Z4 {
        Z4((self.0 * rhs.0) & 3)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Inner product of two Z4 vectors.
pub fn dot(a: &[Z4], b: &[Z4]) -> Z4 {
    a.iter().zip(b).fold(Z4::ZERO, |acc, (&x, &y)| acc + x * y)
}

/// Renders a Z4 vector as a digit string, e.g. `[1, 3, 0]` → `"130"`.
pub fn label(v: &[Z4]) -> String {
    v.iter().map(|x| char::from(b'0' + x.value())).collect()
}

/// Parses a digit string such as `"130"` into a Z4 vector.
pub fn parse_label(s: &str) -> Option<Vec<Z4>> {
    s.bytes()
        .map(|b| match b {
            b'0'..=b'3' => Some(Z4(b - b'0')),
            _ => None,
        })
        .collect()
}
