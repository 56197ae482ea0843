use std::fmt;
use std::ops::Add;

use serde::Serialize;

/// Closed integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub const fn new(lo: i64, hi: i64) -> Self {
        IntInterval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Number of integers in the interval.
    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn intersect(&self, other: &IntInterval) -> IntInterval {
        IntInterval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Nearest member to `v`. The interval must be nonempty.
    pub fn clamp(&self, v: i64) -> i64 {
        debug_assert!(!self.is_empty());
        v.clamp(self.lo, self.hi)
    }

    /// Distance from `v` to the interval.
    pub fn distance(&self, v: i64) -> i64 {
        (self.lo - v).max(0) + (v - self.hi).max(0)
    }
}

/// Minkowski sum: `[a,b] + [c,d] = [a+c, b+d]`.
impl Add for IntInterval {
    type Output = IntInterval;

    fn add(self, rhs: IntInterval) -> IntInterval {
        IntInterval::new(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
