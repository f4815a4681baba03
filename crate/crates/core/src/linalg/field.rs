use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest characteristic supported by the 8-bit residue representation.
pub const MAX_PRIME: u32 = 13;

/// A prime field F_p with `p <= MAX_PRIME`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u8);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Prime(p as u8))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u8 {
        x.rem_euclid(self.0 as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.get() - b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.get()) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0 && (a as u32) < self.get());
        // a^(p-2) by repeated multiplication; p is tiny.
        let mut r = 1u8;
        for _ in 0..self.get() - 2 {
            r = self.mul(r, a);
        }
        r
    }

    /// The largest power of `self` dividing `n`.
    pub fn part_of(self, mut n: usize) -> usize {
        let p = self.get() as usize;
        let mut part = 1;
        while n > 0 && n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
        part
    }

    pub fn is_power(self, mut n: usize) -> bool {
        let p = self.get() as usize;
        if n == 0 {
            return false;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.get()
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
