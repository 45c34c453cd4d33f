//! Prime fields.
//!
//! Vectors and matrices store raw `u32` residues and carry a [`Prime`] as the
//! arithmetic context. [`FpScalar`] is the self-describing value type used at
//! API boundaries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus. Bounded so that products of two residues fit in `u64`
/// without overflow and digits serialize compactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub const MAX: u32 = 65_521;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX).contains(&p) || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, self.0 as u64 - 2)
    }

    #[inline]
    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(self) -> u32 {
        if self.0 == 2 {
            return 1;
        }
        let order = self.0 as u64 - 1;
        let factors = prime_factors(order);
        (2..self.0)
            .find(|&g| factors.iter().all(|&q| self.pow(g, order / q) != 1))
            .expect("every prime field has a primitive root")
    }

    /// The largest `m` with `p^m | v` (v > 0).
    pub fn valuation(self, mut v: u64) -> u32 {
        let p = self.0 as u64;
        let mut m = 0;
        while v > 0 && v.is_multiple_of(p) {
            v /= p;
            m += 1;
        }
        m
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of `F_p` that remembers its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: i64, p: Prime) -> Self {
        FpScalar {
            value: p.reduce_i64(value),
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar {
            value: self.p.inv(self.value),
            p: self.p,
        })
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        FpScalar {
            value: self.p.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        FpScalar {
            value: self.p.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        FpScalar {
            value: self.p.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn inverses_and_roots() {
        let p = Prime::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
        assert_eq!(p.primitive_root(), 3);
        assert_eq!(Prime::new(3).unwrap().primitive_root(), 2);
        assert_eq!(Prime::new(2).unwrap().primitive_root(), 1);
    }

    #[test]
    fn scalar_arithmetic_reduces() {
        let p = Prime::new(5).unwrap();
        let a = FpScalar::new(-1, p);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + FpScalar::new(1, p)).value(), 0);
        assert_eq!(FpScalar::new(3, p).inverse().unwrap().value(), 2);
    }

    #[test]
    fn valuation_counts_factors() {
        let p = Prime::new(2).unwrap();
        assert_eq!(p.valuation(12), 2);
        assert_eq!(p.valuation(9), 0);
    }
}
