//! Sequential linear programming on point coordinates.
//!
//! Unknowns are the points `p_v` (not constrained to the sphere) and
//! `t = cos d`. Equalities: `|p_v|^2 = 1`, `p_u . p_v = t` on edges.
//! Inequalities: `t - p_u . p_v >= floor` on non-edges and
//! `det(p_a, p_b, p_c) >= floor` for every convexity or containment triple.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector, Vector3};

use crate::plane_graph::{trace_faces, GraphError, PlaneGraph};

/// Penalty weight on linearised constraint violation.
const PENALTY: f64 = 50.0;

#[derive(Debug, Clone)]
pub(crate) struct Structure {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub non_edges: Vec<(usize, usize)>,
    /// `det(p_a, p_b, p_c) > 0` triples.
    pub dets: Vec<[usize; 3]>,
}

impl Structure {
    pub fn new(g: &PlaneGraph) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let faces = trace_faces(g)?;
        let edges = g.edges();
        let mut non_edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.is_adjacent(u, v) {
                    non_edges.push((u, v));
                }
            }
        }
        let mut dets = Vec::new();
        for f in &faces {
            let vs = f.vertices();
            let m = vs.len();
            for i in 0..m {
                // corner at vs[i]: counter-clockwise from next to prev
                dets.push([vs[i], vs[(i + 1) % m], vs[(i + m - 1) % m]]);
            }
        }
        for (&w, &fid) in g.placement() {
            let vs = faces[fid].vertices();
            let m = vs.len();
            for i in 0..m {
                dets.push([vs[i], vs[(i + 1) % m], w]);
            }
        }
        Ok(Structure {
            n,
            edges,
            non_edges,
            dets,
        })
    }

    fn dim(&self) -> usize {
        3 * self.n + 1
    }

    fn p(x: &[f64], v: usize) -> Vector3<f64> {
        Vector3::new(x[3 * v], x[3 * v + 1], x[3 * v + 2])
    }

    /// Equality residuals with sparse gradients.
    fn equalities(&self, x: &[f64]) -> Vec<(f64, Vec<(usize, f64)>)> {
        let t = 3 * self.n;
        let mut out = Vec::with_capacity(self.n + self.edges.len());
        for v in 0..self.n {
            let p = Self::p(x, v);
            out.push((p.norm_squared() - 1.0, (0..3).map(|k| (3 * v + k, 2.0 * p[k])).collect()));
        }
        for &(u, v) in &self.edges {
            let (pu, pv) = (Self::p(x, u), Self::p(x, v));
            let mut grad: Vec<(usize, f64)> = (0..3).map(|k| (3 * u + k, pv[k])).collect();
            grad.extend((0..3).map(|k| (3 * v + k, pu[k])));
            grad.push((t, -1.0));
            out.push((pu.dot(&pv) - x[t], grad));
        }
        out
    }

    /// Inequality values (`>= floor` wanted) with sparse gradients.
    fn inequalities(&self, x: &[f64]) -> Vec<(f64, Vec<(usize, f64)>)> {
        let t = 3 * self.n;
        let mut out = Vec::with_capacity(self.non_edges.len() + self.dets.len());
        for &(u, v) in &self.non_edges {
            let (pu, pv) = (Self::p(x, u), Self::p(x, v));
            let mut grad: Vec<(usize, f64)> = (0..3).map(|k| (3 * u + k, -pv[k])).collect();
            grad.extend((0..3).map(|k| (3 * v + k, -pu[k])));
            grad.push((t, 1.0));
            out.push((x[t] - pu.dot(&pv), grad));
        }
        for &[a, b, c] in &self.dets {
            let (pa, pb, pc) = (Self::p(x, a), Self::p(x, b), Self::p(x, c));
            let ga = pb.cross(&pc);
            let gb = pc.cross(&pa);
            let gc = pa.cross(&pb);
            let mut grad = Vec::with_capacity(9);
            for (v, gv) in [(a, ga), (b, gb), (c, gc)] {
                grad.extend((0..3).map(|k| (3 * v + k, gv[k])));
            }
            out.push((pa.dot(&ga), grad));
        }
        out
    }

    pub fn slack(&self, x: &[f64]) -> f64 {
        self.inequalities(x).iter().map(|c| c.0).fold(f64::INFINITY, f64::min)
    }

    pub fn eq_violation(&self, x: &[f64]) -> f64 {
        self.equalities(x).iter().map(|c| c.0.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Goal {
    /// Maximise the smallest inequality value.
    MaxSlack,
    /// Minimise `t` (maximise `d`) keeping every inequality `>= floor`.
    MaxD { floor: f64 },
    /// Maximise `t` (minimise `d`).
    MinD { floor: f64 },
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SlpOptions {
    pub goal: Goal,
    /// Bounds on `t`; equal bounds fix `d`.
    pub t_bounds: (f64, f64),
    pub max_iter: usize,
}

fn merit(s: &Structure, x: &[f64], goal: Goal) -> f64 {
    let h: f64 = s.equalities(x).iter().map(|c| c.0.abs()).sum();
    let g = s.inequalities(x);
    let t = x[3 * s.n];
    match goal {
        Goal::MaxSlack => g.iter().map(|c| c.0).fold(f64::INFINITY, f64::min) - PENALTY * h,
        Goal::MaxD { floor } | Goal::MinD { floor } => {
            let viol: f64 = g.iter().map(|c| (floor - c.0).max(0.0)).sum();
            let obj = if matches!(goal, Goal::MaxD { .. }) { -t } else { t };
            obj - PENALTY * (h + viol)
        }
    }
}

/// One linear program of the trust-region iteration. Returns the step and
/// the model merit at the step.
fn lp_step(s: &Structure, x: &[f64], tau: f64, opts: &SlpOptions) -> Option<(Vec<f64>, f64)> {
    let dim = s.dim();
    let ti = 3 * s.n;
    let mut p = Problem::new(OptimizationDirection::Maximize);
    let t_obj = match opts.goal {
        Goal::MaxSlack => 0.0,
        Goal::MaxD { .. } => -1.0,
        Goal::MinD { .. } => 1.0,
    };
    let dx: Vec<_> = (0..dim)
        .map(|i| {
            if i == ti {
                let lo = (opts.t_bounds.0 - x[ti]).max(-tau).min(0.0);
                let hi = (opts.t_bounds.1 - x[ti]).min(tau).max(0.0);
                p.add_var(t_obj, (lo, hi))
            } else {
                p.add_var(0.0, (-tau, tau))
            }
        })
        .collect();
    let mut constant = if matches!(opts.goal, Goal::MaxSlack) { 0.0 } else { t_obj * x[ti] };
    for (h, grad) in s.equalities(x) {
        let ep = p.add_var(-PENALTY, (0.0, f64::INFINITY));
        let em = p.add_var(-PENALTY, (0.0, f64::INFINITY));
        let mut expr: Vec<_> = grad.iter().map(|&(i, c)| (dx[i], c)).collect();
        expr.push((ep, 1.0));
        expr.push((em, -1.0));
        p.add_constraint(&expr[..], ComparisonOp::Eq, -h);
    }
    match opts.goal {
        Goal::MaxSlack => {
            let sv = p.add_var(1.0, (-10.0, 10.0));
            for (g, grad) in s.inequalities(x) {
                let mut expr: Vec<_> = grad.iter().map(|&(i, c)| (dx[i], c)).collect();
                expr.push((sv, -1.0));
                p.add_constraint(&expr[..], ComparisonOp::Ge, -g);
            }
        }
        Goal::MaxD { floor } | Goal::MinD { floor } => {
            for (g, grad) in s.inequalities(x) {
                let w = p.add_var(-PENALTY, (0.0, f64::INFINITY));
                let mut expr: Vec<_> = grad.iter().map(|&(i, c)| (dx[i], c)).collect();
                expr.push((w, 1.0));
                p.add_constraint(&expr[..], ComparisonOp::Ge, floor - g);
            }
        }
    }
    let microlp::SolveOutcome::Solution(sol) = p.solve().ok()? else {
        return None;
    };
    constant += sol.objective();
    Some((dx.iter().map(|&v| sol.var_value(v)).collect(), constant))
}

/// Trust-region SLP with an exact-penalty merit function.
pub(crate) fn slp(s: &Structure, x0: &[f64], opts: &SlpOptions) -> Vec<f64> {
    let mut x = x0.to_vec();
    let ti = 3 * s.n;
    x[ti] = x[ti].clamp(opts.t_bounds.0, opts.t_bounds.1);
    let mut tau: f64 = 0.05;
    let mut phi = merit(s, &x, opts.goal);
    for _ in 0..opts.max_iter {
        let Some((dx, model)) = lp_step(s, &x, tau, opts) else {
            tau *= 0.3;
            if tau < 1e-12 {
                break;
            }
            continue;
        };
        let pred = model - phi;
        if pred < 1e-14 {
            break;
        }
        let mut cand: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
        cand[ti] = cand[ti].clamp(opts.t_bounds.0, opts.t_bounds.1);
        let phi_new = merit(s, &cand, opts.goal);
        let ratio = (phi_new - phi) / pred;
        if ratio > 0.1 {
            x = cand;
            phi = phi_new;
            if ratio > 0.75 {
                tau = (tau * 2.0).min(0.5);
            }
        } else {
            tau *= 0.3;
        }
        if tau < 1e-12 {
            break;
        }
    }
    x
}

/// Gauss-Newton projection onto the equalities (minimum-norm steps).
pub(crate) fn polish(s: &Structure, x: &mut [f64], fix_t: bool) {
    let dim = s.dim();
    for _ in 0..20 {
        let eqs = s.equalities(x);
        let worst = eqs.iter().map(|c| c.0.abs()).fold(0.0, f64::max);
        if worst < 1e-15 {
            break;
        }
        let mut j = DMatrix::zeros(eqs.len(), dim);
        let mut r = DVector::zeros(eqs.len());
        for (row, (h, grad)) in eqs.iter().enumerate() {
            r[row] = -h;
            for &(i, c) in grad {
                if !(fix_t && i == 3 * s.n) {
                    j[(row, i)] += c;
                }
            }
        }
        let svd = j.svd(true, true);
        let Ok(step) = svd.solve(&r, 1e-10) else {
            break;
        };
        for i in 0..dim {
            x[i] += step[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::fixtures;

    fn flat(points: &[[f64; 3]], t: f64) -> Vec<f64> {
        let mut x: Vec<f64> = points.iter().flatten().cloned().collect();
        x.push(t);
        x
    }

    #[test]
    fn octahedron_is_a_fixed_point() {
        let s = Structure::new(&fixtures::octahedron()).unwrap();
        let pts = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let x = flat(&pts, 0.0);
        assert!(s.eq_violation(&x) < 1e-15);
        // antipodal non-edges: t - p.q = 1; corners det = 1
        assert!((s.slack(&x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn slp_recovers_perturbed_octahedron() {
        let s = Structure::new(&fixtures::octahedron()).unwrap();
        let pts = [
            [1.0, 0.1, 0.0],
            [-1.0, 0.0, 0.05],
            [0.0, 1.0, -0.1],
            [0.1, -1.0, 0.0],
            [0.0, 0.1, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let opts = SlpOptions {
            goal: Goal::MaxSlack,
            t_bounds: (-0.5, 0.9),
            max_iter: 200,
        };
        let mut x = slp(&s, &flat(&pts, 0.2), &opts);
        polish(&s, &mut x, false);
        assert!(s.eq_violation(&x) < 1e-12);
        assert!(x[18].abs() < 1e-6, "t = {}", x[18]);
    }

    #[test]
    fn extremes_of_a_fixed_graph() {
        // the octahedron is rigid: both extremes give d = pi / 2
        let s = Structure::new(&fixtures::octahedron()).unwrap();
        let pts = [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        for goal in [Goal::MaxD { floor: 0.0 }, Goal::MinD { floor: 0.0 }] {
            let opts = SlpOptions {
                goal,
                t_bounds: (-0.5, 0.9),
                max_iter: 200,
            };
            let mut x = slp(&s, &flat(&pts, 0.0), &opts);
            polish(&s, &mut x, false);
            assert!(x[18].abs() < 1e-7, "{goal:?}: t = {}", x[18]);
        }
    }
}
