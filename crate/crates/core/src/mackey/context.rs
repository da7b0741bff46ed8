use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The group `C_{p^n}` for an odd prime `p`. Level `m` stands for the orbit `G/C_{p^m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    pub p: u64,
    pub n: u32,
}

impl GroupContext {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Context(format!("p = {p} must be an odd prime")));
        }
        if p.checked_pow(n).and_then(|q| q.checked_mul(4)).is_none() {
            return Err(Error::Context(format!("p^n = {p}^{n} is too large")));
        }
        Ok(GroupContext { p, n })
    }

    /// `p^e`
    pub fn pow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    pub fn big_pow(&self, e: u32) -> BigInt {
        BigInt::from(self.p).pow(e)
    }

    /// Order of the group.
    pub fn order(&self) -> u64 {
        self.pow(self.n)
    }

    /// Order of the Weyl group `G/C_{p^m}` at level `m`.
    pub fn weyl_order(&self, m: u32) -> u64 {
        self.pow(self.n - m)
    }

    pub fn levels(&self) -> std::ops::RangeInclusive<u32> {
        0..=self.n
    }

    /// The context of the subgroup `C_{p^h}`.
    pub fn subgroup(&self, h: u32) -> GroupContext {
        GroupContext { p: self.p, n: h }
    }

    /// The context of the quotient `G/C_{p^j}`.
    pub fn quotient(&self, j: u32) -> GroupContext {
        GroupContext { p: self.p, n: self.n - j }
    }

    /// `p`-adic valuation of a nonzero integer.
    pub fn valuation(&self, mut r: u64) -> u32 {
        debug_assert!(r != 0);
        let mut v = 0;
        while r % self.p == 0 {
            r /= self.p;
            v += 1;
        }
        v
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
