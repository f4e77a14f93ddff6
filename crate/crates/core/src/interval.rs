//! Closed real intervals with outward rounding.
//!
//! Every primitive rounds to nearest and then widens each endpoint by one
//! unit in the last place, so results enclose the exact real result without
//! switching the FPU rounding mode. Endpoints may be infinite; in endpoint
//! products `0 * inf` is taken as 0, which is the correct set-based rule.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[inline]
fn down(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v.next_down()
    }
}

#[inline]
fn up(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v.next_up()
    }
}

#[inline]
fn emul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl Interval {
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Panics if `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        Self::try_new(lo, hi).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Self> {
        if lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")))
        }
    }

    pub fn point(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Splits at the midpoint into `[lo, m]` and `[m, hi]`.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    fn widened(lo: f64, hi: f64) -> Interval {
        let (lo, hi) = (down(lo), up(hi));
        if lo.is_nan() || hi.is_nan() {
            Interval::ENTIRE
        } else {
            Interval { lo, hi }
        }
    }

    pub fn sqr(&self) -> Interval {
        let (a, b) = (emul(self.lo, self.lo), emul(self.hi, self.hi));
        if self.lo <= 0.0 && self.hi >= 0.0 {
            Interval {
                lo: 0.0,
                hi: up(a.max(b)),
            }
        } else {
            Interval {
                lo: down(a.min(b)).max(0.0),
                hi: up(a.max(b)),
            }
        }
    }

    /// Square root over the part of `self` where it is defined.
    ///
    /// Lower endpoints below zero are clamped to zero. If the whole interval
    /// lies below `-clamp` the square root is undefined and an error results;
    /// an interval entirely within `[-clamp, 0)` maps to `[0, 0]`.
    pub fn sqrt(&self, clamp: f64) -> Result<Interval> {
        if self.hi < -clamp {
            return Err(Error::Domain(format!(
                "sqrt of negative interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.hi <= 0.0 {
            return Ok(Interval { lo: 0.0, hi: 0.0 });
        }
        let lo = if self.lo <= 0.0 {
            0.0
        } else {
            down(self.lo.sqrt()).max(0.0)
        };
        Ok(Interval {
            lo,
            hi: up(self.hi.sqrt()),
        })
    }

    /// `1 / self` for `self >= 0`; a zero lower endpoint gives `+inf`.
    pub fn recip_nonneg(&self) -> Result<Interval> {
        if self.lo < 0.0 || self.hi <= 0.0 {
            return Err(Error::Domain(format!("reciprocal of [{}, {}]", self.lo, self.hi)));
        }
        let lo = down(1.0 / self.hi).max(0.0);
        let hi = if self.lo == 0.0 {
            f64::INFINITY
        } else {
            up(1.0 / self.lo)
        };
        Ok(Interval { lo, hi })
    }

    /// `self / d` for a divisor `d >= 0` that is not identically 0.
    pub fn div_nonneg(&self, d: &Interval) -> Result<Interval> {
        Ok(*self * d.recip_nonneg()?)
    }

    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::widened(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::widened(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let p = [
            emul(self.lo, o.lo),
            emul(self.lo, o.hi),
            emul(self.hi, o.lo),
            emul(self.hi, o.hi),
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::widened(lo, hi)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, k: f64) -> Interval {
        self + Interval::point(k)
    }
}

impl Sub<Interval> for f64 {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::point(self) - o
    }
}

impl Mul<Interval> for f64 {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        Interval::point(self) * o
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Axis-aligned box in the `(x, y)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box2 {
    pub x: Interval,
    pub y: Interval,
}

impl Box2 {
    pub fn new(x: Interval, y: Interval) -> Self {
        Self { x, y }
    }

    pub fn width(&self) -> f64 {
        self.x.width().max(self.y.width())
    }

    pub fn center(&self) -> (f64, f64) {
        (self.x.mid(), self.y.mid())
    }

    /// Bisects the wider side; on a tie, `x` is split.
    pub fn bisect(&self) -> (Box2, Box2) {
        if self.x.width() >= self.y.width() {
            let (l, r) = self.x.bisect();
            (Box2 { x: l, y: self.y }, Box2 { x: r, y: self.y })
        } else {
            let (l, r) = self.y.bisect();
            (Box2 { x: self.x, y: l }, Box2 { x: self.x, y: r })
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x.contains(x) && self.y.contains(y)
    }

    /// Largest Euclidean distance from `(px, py)` to a point of the box.
    pub fn max_distance_to(&self, px: f64, py: f64) -> f64 {
        let dx = (self.x.lo() - px).abs().max((self.x.hi() - px).abs());
        let dy = (self.y.lo() - py).abs().max((self.y.hi() - py).abs());
        dx.hypot(dy)
    }
}
