//! Closed intervals with exact rational endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use bitflags::bitflags;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

bitflags! {
    /// Sign classification of an interval. Flags overlap: `[0, 0]` is
    /// `NONNEG | NONPOS | ZERO | CONSTANT`.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub struct SignClass: u8 {
        const NONNEG = 1 << 0;
        const NONPOS = 1 << 1;
        const STRICT_NEG = 1 << 2;
        const STRICT_POS = 1 << 3;
        const STRADDLES_ZERO = 1 << 4;
        const ZERO = 1 << 5;
        const CONSTANT = 1 << 6;
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval {
                lo: format_rational(&lo),
                hi: format_rational(&hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[v, v]`.
    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    /// Integer endpoints. Panics if `lo > hi`; meant for literals in tests and docs.
    pub fn of(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "Interval::of({lo}, {hi}): lo > hi");
        Interval { lo: int(lo), hi: int(hi) }
    }

    pub fn zero() -> Self {
        Interval::point(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Endpoint-inclusive membership.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_constant(&self) -> bool {
        self.lo == self.hi
    }

    pub fn classify(&self) -> SignClass {
        let mut c = SignClass::empty();
        if !self.lo.is_negative() {
            c |= SignClass::NONNEG;
        }
        if !self.hi.is_positive() {
            c |= SignClass::NONPOS;
        }
        if self.hi.is_negative() {
            c |= SignClass::STRICT_NEG;
        }
        if self.lo.is_positive() {
            c |= SignClass::STRICT_POS;
        }
        if self.lo.is_negative() && self.hi.is_positive() {
            c |= SignClass::STRADDLES_ZERO;
        }
        if self.lo.is_zero() && self.hi.is_zero() {
            c |= SignClass::ZERO;
        }
        if self.is_constant() {
            c |= SignClass::CONSTANT;
        }
        c
    }

    /// Contained in the nonnegative or the nonpositive half-line.
    pub fn is_sign_definite(&self) -> bool {
        !self.lo.is_negative() || !self.hi.is_positive()
    }

    /// `e * [lo, hi] = [min(e lo, e hi), max(e lo, e hi)]`.
    pub fn scale(&self, e: &Rational) -> Interval {
        let a = e * &self.lo;
        let b = e * &self.hi;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// `[max(0, lo), hi]`; the caller guarantees `hi >= 0`.
    pub(crate) fn clamp_below_at_zero(&self) -> Interval {
        let lo = if self.lo.is_negative() { Rational::zero() } else { self.lo.clone() };
        Interval { lo, hi: self.hi.clone() }
    }
}

/// `[e, f] + [g, h] = [e + g, f + h]`.
pub fn interval_add(a: &Interval, b: &Interval) -> Interval {
    Interval {
        lo: &a.lo + &b.lo,
        hi: &a.hi + &b.hi,
    }
}

/// `[e, f] * [g, h]` spans the min and max of the four endpoint products.
pub fn interval_mul(a: &Interval, b: &Interval) -> Interval {
    let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    Interval { lo, hi }
}

pub fn scalar_mul(e: &Rational, a: &Interval) -> Interval {
    a.scale(e)
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        interval_add(self, rhs)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        interval_mul(self, rhs)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}
