use std::fmt;

use crate::error::{Error, Result};

/// A real interval whose endpoints may be open (singular boundaries such as
/// `x = ±1`, where evaluation is forbidden) or closed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, open_lo: bool, open_hi: bool) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::InvalidParam(format!("interval needs lo < hi, got [{lo}, {hi}]")));
        }
        // Infinite endpoints can never be attained.
        Ok(Interval { lo, hi, open_lo: open_lo || lo.is_infinite(), open_hi: open_hi || hi.is_infinite() })
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn real_line() -> Self {
        Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY, open_lo: true, open_hi: true }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.open_lo { x > self.lo } else { x >= self.lo };
        let below = if self.open_hi { x < self.hi } else { x <= self.hi };
        above && below
    }

    pub fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { x, domain: self.to_string() })
        }
    }

    /// Distance from `x` to the nearest open endpoint (infinite if none).
    pub fn distance_to_open_boundary(&self, x: f64) -> f64 {
        let mut d = f64::INFINITY;
        if self.open_lo && self.lo.is_finite() {
            d = d.min(x - self.lo);
        }
        if self.open_hi && self.hi.is_finite() {
            d = d.min(self.hi - x);
        }
        d
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, open_lo) = match self.lo.partial_cmp(&other.lo)? {
            std::cmp::Ordering::Greater => (self.lo, self.open_lo),
            std::cmp::Ordering::Less => (other.lo, other.open_lo),
            std::cmp::Ordering::Equal => (self.lo, self.open_lo || other.open_lo),
        };
        let (hi, open_hi) = match self.hi.partial_cmp(&other.hi)? {
            std::cmp::Ordering::Less => (self.hi, self.open_hi),
            std::cmp::Ordering::Greater => (other.hi, other.open_hi),
            std::cmp::Ordering::Equal => (self.hi, self.open_hi || other.open_hi),
        };
        Interval::new(lo, hi, open_lo, open_hi).ok()
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.open_lo { '(' } else { '[' };
        let r = if self.open_hi { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_endpoints_are_excluded() {
        let i = Interval::open(-1.0, 1.0).unwrap();
        assert!(!i.contains(1.0));
        assert!(!i.contains(-1.0));
        assert!(i.contains(0.999));
        let c = Interval::closed(-1.0, 1.0).unwrap();
        assert!(c.contains(1.0));
    }

    #[test]
    fn rejects_empty() {
        assert!(Interval::closed(1.0, 1.0).is_err());
        assert!(Interval::closed(2.0, 1.0).is_err());
    }

    #[test]
    fn intersection_keeps_openness() {
        let a = Interval::open(-1.0, 1.0).unwrap();
        let b = Interval::closed(0.0, 2.0).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Interval { lo: 0.0, hi: 1.0, open_lo: false, open_hi: true });
        assert_eq!(i.to_string(), "[0, 1)");
    }
}
