use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Interval `[x0 - delta, x0 + delta]`.
    pub fn centered(x0: f64, delta: f64) -> Self {
        Interval::new(x0 - delta, x0 + delta)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// Half-width.
    pub fn rad(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::new(self.lo, m), Interval::new(m, self.hi))
    }

    /// Range of `cos` over the interval.
    pub fn cos(&self) -> Interval {
        shifted_range(self.lo, self.hi, f64::cos, 0.0)
    }

    /// Range of `sin` over the interval.
    pub fn sin(&self) -> Interval {
        shifted_range(self.lo, self.hi, f64::sin, 0.5 * PI)
    }
}

/// Range of a sinusoid with maxima at `peak + 2k pi` and minima at
/// `peak + pi + 2k pi`.
fn shifted_range(lo: f64, hi: f64, f: fn(f64) -> f64, peak: f64) -> Interval {
    if hi - lo >= 2.0 * PI {
        return Interval::new(-1.0, 1.0);
    }
    let (a, b) = (f(lo), f(hi));
    let mut r = Interval::new(a.min(b), a.max(b));
    let contains_shift = |s: f64| {
        let k = ((lo - s) / (2.0 * PI)).ceil();
        s + 2.0 * PI * k <= hi
    };
    if contains_shift(peak) {
        r.hi = 1.0;
    }
    if contains_shift(peak + PI) {
        r.lo = -1.0;
    }
    r
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval::new(self.lo * c, self.hi * c)
        } else {
            Interval::new(self.hi * c, self.lo * c)
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        Interval::new(
            c.iter().cloned().fold(f64::INFINITY, f64::min),
            c.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}
