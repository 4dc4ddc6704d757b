use super::{enclose_product, enclose_trig, enclose_triple, Interval, LinearConstraint, Trig, VarId};

/// `sum c_i x_i + e` with `e` somewhere in `rest`, valid on the box it was
/// built from. `range` bounds the value of the whole expression on that box.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    pub coeffs: Vec<(VarId, f64)>,
    pub rest: Interval,
    pub range: Interval,
}

impl Affine {
    pub fn constant(c: f64) -> Self {
        Affine {
            coeffs: Vec::new(),
            rest: Interval::point(c),
            range: Interval::point(c),
        }
    }

    pub fn var(v: VarId, bx: &[Interval]) -> Self {
        Affine {
            coeffs: vec![(v, 1.0)],
            rest: Interval::point(0.0),
            range: bx[v],
        }
    }

    /// `f(scale * x_v)`. Falls back to the constant range enclosure when the
    /// argument interval is too wide to linearise.
    pub fn trig(kind: Trig, v: VarId, scale: f64, bx: &[Interval]) -> Self {
        let arg = bx[v] * scale;
        let range = match kind {
            Trig::Sin => arg.sin(),
            Trig::Cos => arg.cos(),
        };
        match enclose_trig(kind, arg) {
            // f = k y - e with e in [C, D]
            Ok(e) => Affine {
                coeffs: vec![(v, e.k[0] * scale)],
                rest: Interval::new(-e.upper, -e.lower),
                range,
            },
            Err(_) => Affine {
                coeffs: Vec::new(),
                rest: range,
                range,
            },
        }
    }

    pub fn cos(v: VarId, bx: &[Interval]) -> Self {
        Self::trig(Trig::Cos, v, 1.0, bx)
    }

    pub fn sin(v: VarId, bx: &[Interval]) -> Self {
        Self::trig(Trig::Sin, v, 1.0, bx)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Affine {
            coeffs: self.coeffs.iter().map(|&(v, k)| (v, k * c)).collect(),
            rest: self.rest * c,
            range: self.range * c,
        }
    }

    pub fn plus(&self, o: &Affine) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.extend_from_slice(&o.coeffs);
        Affine {
            coeffs,
            rest: self.rest + o.rest,
            range: self.range + o.range,
        }
    }

    pub fn minus(&self, o: &Affine) -> Self {
        self.plus(&o.scaled(-1.0))
    }

    /// `A B = b0 A + a0 B - e`, `e` from the product enclosure of the ranges.
    pub fn times(&self, o: &Affine) -> Self {
        let e = enclose_product(self.range, o.range);
        let mut out = self.scaled(e.k[0]).plus(&o.scaled(e.k[1]));
        out.rest = out.rest - Interval::new(e.lower, e.upper);
        out.range = self.range * o.range;
        out
    }

    /// `A B C = k_a A + k_b B + k_c C - e`.
    pub fn times3(&self, b: &Affine, c: &Affine) -> Self {
        let e = enclose_triple(self.range, b.range, c.range);
        let mut out = self.scaled(e.k[0]).plus(&b.scaled(e.k[1])).plus(&c.scaled(e.k[2]));
        out.rest = out.rest - Interval::new(e.lower, e.upper);
        out.range = self.range * b.range * c.range;
        out
    }

    /// Constraint `lo <= self <= hi` on the variables.
    pub fn within(&self, lo: f64, hi: f64) -> Option<LinearConstraint> {
        LinearConstraint::new(self.coeffs.iter().cloned(), lo - self.rest.hi, hi - self.rest.lo)
    }

    /// Constraint `self = 0`.
    pub fn zero(&self) -> Option<LinearConstraint> {
        self.within(0.0, 0.0)
    }

    /// Interval of values the form can take at a point.
    pub fn at(&self, x: &[f64]) -> Interval {
        let s: f64 = self.coeffs.iter().map(|&(v, c)| c * x[v]).sum();
        Interval::new(s + self.rest.lo, s + self.rest.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(bx: &[Interval], t: &[f64]) -> Vec<f64> {
        bx.iter().zip(t).map(|(iv, &s)| iv.lo + s * iv.width()).collect()
    }

    #[test]
    fn forms_contain_their_functions() {
        let bx = [Interval::new(0.9, 1.3), Interval::new(0.4, 0.5), Interval::new(2.0, 2.2)];
        let cos0 = Affine::cos(0, &bx);
        let sin1 = Affine::sin(1, &bx);
        let half = Affine::trig(Trig::Cos, 2, 0.5, &bx);
        let prod = cos0.times(&sin1);
        let triple = cos0.times3(&sin1, &half);
        let diff = prod.minus(&Affine::var(2, &bx).scaled(0.3));
        for i in 0..=10 {
            for j in 0..=10 {
                for k in 0..=10 {
                    let t = [i as f64 / 10.0, j as f64 / 10.0, k as f64 / 10.0];
                    let x = sample(&bx, &t);
                    let checks = [
                        (&cos0, x[0].cos()),
                        (&sin1, x[1].sin()),
                        (&half, (0.5 * x[2]).cos()),
                        (&prod, x[0].cos() * x[1].sin()),
                        (&triple, x[0].cos() * x[1].sin() * (0.5 * x[2]).cos()),
                        (&diff, x[0].cos() * x[1].sin() - 0.3 * x[2]),
                    ];
                    for (form, value) in checks {
                        let iv = form.at(&x);
                        assert!(iv.lo <= value && value <= iv.hi, "{value} not in {iv:?}");
                        assert!(form.range.lo <= value + 1e-15 && value <= form.range.hi + 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn wide_argument_uses_range() {
        let bx = [Interval::new(0.0, 3.0)];
        let f = Affine::cos(0, &bx);
        assert!(f.coeffs.is_empty());
        assert_eq!(f.rest, bx[0].cos());
    }

    #[test]
    fn constraint_from_form() {
        let bx = [Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)];
        let f = Affine::var(0, &bx).plus(&Affine::var(1, &bx)).plus(&Affine::constant(-1.0));
        let c = f.zero().unwrap();
        assert_eq!(c.coeffs, vec![(0, 1.0), (1, 1.0)]);
        assert_eq!((c.lo, c.hi), (1.0, 1.0));
    }
}
