use std::collections::VecDeque;

use super::DomainBox;
use crate::linear_relax::{Interval, LinearConstraint};

/// Relative shrink below which a variable counts as unchanged.
pub const FIXPOINT_REL: f64 = 1e-4;
/// Relative shrink that re-queues neighbouring constraints first.
pub const REQUEUE_FIRST: f64 = 0.10;
/// Overlap tolerated before an interval counts as empty.
pub const EMPTY_TOL: f64 = 1e-9;

/// Interval propagation of each constraint into each of its variables, run
/// to a fixpoint. Returns `None` when some interval empties.
pub fn propagate(cons: &[LinearConstraint], bx: &DomainBox) -> Option<DomainBox> {
    let mut b = bx.clone();
    let mut by_var = vec![Vec::new(); b.len()];
    for (i, c) in cons.iter().enumerate() {
        for &(v, _) in &c.coeffs {
            by_var[v].push(i);
        }
    }
    let mut queue: VecDeque<usize> = (0..cons.len()).collect();
    let mut queued = vec![true; cons.len()];
    let mut budget = 200 * cons.len() + 1000;
    while let Some(ci) = queue.pop_front() {
        queued[ci] = false;
        if budget == 0 {
            break;
        }
        budget -= 1;
        let c = &cons[ci];
        let contrib = |k: f64, iv: Interval| if k > 0.0 { (k * iv.lo, k * iv.hi) } else { (k * iv.hi, k * iv.lo) };
        let (mut min_sum, mut max_sum) = (0.0, 0.0);
        for &(v, k) in &c.coeffs {
            let (lo, hi) = contrib(k, b[v]);
            min_sum += lo;
            max_sum += hi;
        }
        let scale = 1.0 + min_sum.abs().max(max_sum.abs());
        if min_sum > c.hi + EMPTY_TOL * scale || max_sum < c.lo - EMPTY_TOL * scale {
            return None;
        }
        for &(v, k) in &c.coeffs {
            let (cmin, cmax) = contrib(k, b[v]);
            let (lo, hi) = (c.lo - (max_sum - cmax), c.hi - (min_sum - cmin));
            let (lo, hi) = if k > 0.0 { (lo / k, hi / k) } else { (hi / k, lo / k) };
            let old = b[v];
            let (nlo, nhi) = (old.lo.max(lo), old.hi.min(hi));
            if nlo > nhi + EMPTY_TOL * (1.0 + nlo.abs()) {
                return None;
            }
            let new = if nlo > nhi {
                Interval::point((0.5 * (nlo + nhi)).clamp(old.lo, old.hi))
            } else {
                Interval::new(nlo, nhi)
            };
            if old.width() <= 0.0 || new == old {
                continue;
            }
            let rel = (old.width() - new.width()) / old.width();
            b[v] = new;
            if rel < FIXPOINT_REL {
                continue;
            }
            for &cj in &by_var[v] {
                if cj != ci && !queued[cj] {
                    queued[cj] = true;
                    if rel >= REQUEUE_FIRST {
                        queue.push_front(cj);
                    } else {
                        queue.push_back(cj);
                    }
                }
            }
        }
    }
    Some(b)
}

/// Exact bounds of every variable over the polytope `constraints ∩ box`,
/// by two linear programs per variable. Slow; meant for cross-checking
/// [`propagate`].
pub fn propagate_lp(cons: &[LinearConstraint], bx: &DomainBox) -> Option<DomainBox> {
    use microlp::{ComparisonOp, OptimizationDirection, Problem};
    let mut out = bx.clone();
    for target in 0..bx.len() {
        if bx[target].width() == 0.0 {
            continue;
        }
        let mut bounds = [0.0; 2];
        for (slot, dir) in [OptimizationDirection::Minimize, OptimizationDirection::Maximize]
            .into_iter()
            .enumerate()
        {
            let mut p = Problem::new(dir);
            let vars: Vec<_> = bx
                .iter()
                .enumerate()
                .map(|(i, iv)| p.add_var(if i == target { 1.0 } else { 0.0 }, (iv.lo, iv.hi)))
                .collect();
            for c in cons {
                let expr: Vec<_> = c.coeffs.iter().map(|&(v, k)| (vars[v], k)).collect();
                let scale = [c.lo, c.hi].into_iter().filter(|b| b.is_finite()).fold(0.0f64, |m, b| m.max(b.abs()));
                let tol = EMPTY_TOL * (1.0 + scale);
                if c.lo == c.hi {
                    p.add_constraint(&expr[..], ComparisonOp::Ge, c.lo - tol);
                    p.add_constraint(&expr[..], ComparisonOp::Le, c.hi + tol);
                    continue;
                }
                if c.lo.is_finite() {
                    p.add_constraint(&expr[..], ComparisonOp::Ge, c.lo - tol);
                }
                if c.hi.is_finite() {
                    p.add_constraint(&expr[..], ComparisonOp::Le, c.hi + tol);
                }
            }
            match p.solve() {
                Ok(microlp::SolveOutcome::Solution(sol)) => bounds[slot] = sol.objective(),
                Err(microlp::Error::Infeasible) => return None,
                Ok(_) | Err(_) => bounds[slot] = if slot == 0 { bx[target].lo } else { bx[target].hi },
            }
        }
        let lo = bounds[0].max(bx[target].lo);
        let hi = bounds[1].min(bx[target].hi);
        out[target] = if lo <= hi { Interval::new(lo, hi) } else { Interval::point(0.5 * (lo + hi)) };
    }
    Some(out)
}
