//! Sound linear enclosures of the trigonometric relations on interval boxes.
//!
//! Every nonlinear subexpression `f` over a box is replaced by a linear
//! function plus an interval remainder, so each relation of the geometry
//! becomes a two-sided linear constraint valid on the whole box.

mod affine;
mod assemble;
mod enclose;
mod interval;

pub use affine::Affine;
pub use assemble::{assemble_system, law_of_cosines, linearize_triangle, polar_law_of_cosines};
pub use enclose::{enclose_product, enclose_trig, enclose_triple, Enclosure, Trig, MAX_TRIG_HALF_WIDTH};
pub use interval::Interval;

/// Index of a variable in a [`crate::feasibility::VariableSystem`] or box.
pub type VarId = usize;

/// Absolute outward widening applied to every enclosure bound.
pub const WIDEN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelaxError {
    #[error("interval half-width {0} exceeds 1; split before linearising")]
    TooWide(f64),
}

/// `lo <= sum c_i x_i <= hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(VarId, f64)>,
    pub lo: f64,
    pub hi: f64,
}

impl LinearConstraint {
    /// Builds a constraint, merging repeated variables and dropping zeros.
    /// Returns `None` when no coefficient survives.
    pub fn new(coeffs: impl IntoIterator<Item = (VarId, f64)>, lo: f64, hi: f64) -> Option<Self> {
        let mut merged: Vec<(VarId, f64)> = Vec::new();
        for (v, c) in coeffs {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some((_, acc)) => *acc += c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        merged.sort_by_key(|&(v, _)| v);
        (!merged.is_empty()).then_some(LinearConstraint { coeffs: merged, lo, hi })
    }

    pub fn eq(coeffs: impl IntoIterator<Item = (VarId, f64)>, rhs: f64) -> Option<Self> {
        Self::new(coeffs, rhs, rhs)
    }

    pub fn le(coeffs: impl IntoIterator<Item = (VarId, f64)>, rhs: f64) -> Option<Self> {
        Self::new(coeffs, f64::NEG_INFINITY, rhs)
    }

    pub fn ge(coeffs: impl IntoIterator<Item = (VarId, f64)>, rhs: f64) -> Option<Self> {
        Self::new(coeffs, rhs, f64::INFINITY)
    }

    /// `sum c_i x_i` at a point.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(v, c)| c * x[v]).sum()
    }

    /// Amount by which the point violates the constraint (0 if satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let s = self.eval(x);
        (self.lo - s).max(s - self.hi).max(0.0)
    }

    pub fn mentions(&self, v: VarId) -> bool {
        self.coeffs.iter().any(|&(w, _)| w == v)
    }
}
