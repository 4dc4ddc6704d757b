use super::{Interval, RelaxError, WIDEN};

/// Largest half-width accepted by [`enclose_trig`].
pub const MAX_TRIG_HALF_WIDTH: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Sin,
    Cos,
}

impl Trig {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Sin => x.sin(),
            Trig::Cos => x.cos(),
        }
    }

    /// `k`-th derivative at `x`.
    pub fn derivative(self, k: usize, x: f64) -> f64 {
        let shift = match self {
            Trig::Sin => 0,
            Trig::Cos => 1,
        };
        match (k + shift) % 4 {
            0 => x.sin(),
            1 => x.cos(),
            2 => -x.sin(),
            _ => -x.cos(),
        }
    }
}

/// Linear bounds `lower <= sum k_i x_i - f(x) <= upper` over a box.
///
/// For a single variable `k = [k]`; for products `k = [k_a, k_b]` or
/// `[k_a, k_b, k_c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub k: Vec<f64>,
    /// `C`
    pub lower: f64,
    /// `D`
    pub upper: f64,
}

impl Enclosure {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Enclosure of `k x - f(x)` with `k = f'(x0)` on `[x0 - delta, x0 + delta]`.
///
/// With `t = x - x0`, the identity
/// `f(x0 + t) = f(x0) + f'(x0) t + f''(x0) (1 - cos t) + f'''(x0) (t - sin t)`
/// is exact for `sin` and `cos`, so the bounds come from extremising the last
/// two terms over `|t| <= delta`.
pub fn enclose_trig(kind: Trig, iv: Interval) -> Result<Enclosure, RelaxError> {
    let (x0, delta) = (iv.mid(), iv.rad());
    if delta > MAX_TRIG_HALF_WIDTH {
        return Err(RelaxError::TooWide(delta));
    }
    let k = kind.derivative(1, x0);
    let base = k * x0 - kind.eval(x0);
    let a = kind.derivative(2, x0);
    let b = kind.derivative(3, x0);
    let g = |t: f64| a * (1.0 - t.cos()) + b * (t - t.sin());
    let mut ts = vec![-delta, 0.0, delta];
    if b != 0.0 {
        let t = 2.0 * (-a / b).atan();
        if t.abs() <= delta {
            ts.push(t);
        }
    }
    let (mut gmin, mut gmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in ts {
        let v = g(t);
        gmin = gmin.min(v);
        gmax = gmax.max(v);
    }
    Ok(Enclosure {
        k: vec![k],
        lower: base - gmax - WIDEN,
        upper: base - gmin + WIDEN,
    })
}

/// Enclosure of `k_a a + k_b b - a b` with `k_a = b0`, `k_b = a0`; the value
/// is `a0 b0 - s t` for `a = a0 + s`, `b = b0 + t`, so the bounds are tight.
pub fn enclose_product(a: Interval, b: Interval) -> Enclosure {
    let (a0, da, b0, db) = (a.mid(), a.rad(), b.mid(), b.rad());
    let c = a0 * b0;
    let r = da * db;
    Enclosure {
        k: vec![b0, a0],
        lower: c - r - WIDEN,
        upper: c + r + WIDEN,
    }
}

/// Enclosure of `k_a a + k_b b + k_c c - a b c` with `k_a = b0 c0`,
/// `k_b = a0 c0`, `k_c = a0 b0`.
pub fn enclose_triple(a: Interval, b: Interval, c: Interval) -> Enclosure {
    let (a0, da) = (a.mid(), a.rad());
    let (b0, db) = (b.mid(), b.rad());
    let (c0, dc) = (c.mid(), c.rad());
    let centre = 2.0 * a0 * b0 * c0;
    let r = (a0 * db * dc).abs() + (da * b0 * dc).abs() + (da * db * c0).abs() + (da * db * dc).abs();
    Enclosure {
        k: vec![b0 * c0, a0 * c0, a0 * b0],
        lower: centre - r - WIDEN,
        upper: centre + r + WIDEN,
    }
}
