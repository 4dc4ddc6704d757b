use std::f64::consts::PI;

use super::{propagate, propagate_lp, DomainBox, VariableSystem, A, D};
use crate::linear_relax::{assemble_system, VarId};
use crate::plane_graph::{canonical_code, GraphError, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationMode {
    /// Per-constraint interval propagation.
    #[default]
    Interval,
    /// Per-variable linear programs (debugging).
    Lp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub max_level: usize,
    pub leaf_budget: usize,
    /// Boxes whose branching variables are all narrower than this are not
    /// split further.
    pub min_width: f64,
    /// Assemble/propagate rounds per node.
    pub rounds: usize,
    pub mode: PropagationMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_level: 40,
            leaf_budget: 4096,
            min_width: 1e-3,
            rounds: 8,
            mode: PropagationMode::Interval,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode {
    pub bx: DomainBox,
    pub level: usize,
    /// `(variable, upper half?)` per split from the root.
    pub lineage: Vec<(VarId, bool)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Pruned { level: usize },
    Survived { boxes: Vec<SearchNode> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub levels: usize,
    /// Nodes tightened over the whole search.
    pub nodes: usize,
}

impl SearchReport {
    pub fn survived(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Survived { .. })
    }

    pub fn boxes(&self) -> &[SearchNode] {
        match &self.outcome {
            SearchOutcome::Survived { boxes } => boxes,
            SearchOutcome::Pruned { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph {code}: {live} live boxes at level {level} exceed the leaf budget")]
    BudgetExceeded {
        code: String,
        level: usize,
        live: usize,
        /// The live boxes when the search stopped.
        frontier: Vec<SearchNode>,
    },
}

/// Widest member of the determining set and `a`; ties go to the earlier
/// variable.
pub fn choose_branch_variable(sys: &VariableSystem, bx: &DomainBox) -> VarId {
    let mut cands: Vec<VarId> = sys.determining.clone();
    cands.push(A);
    cands.sort_unstable();
    let mut best = cands[0];
    for &v in &cands[1..] {
        if bx[v].width() > bx[best].width() {
            best = v;
        }
    }
    best
}

/// Repeated assembly and propagation on one box; enclosures tighten as the
/// box shrinks, so each round re-linearises.
pub fn tighten(sys: &VariableSystem, bx: DomainBox, cfg: &SearchConfig) -> Option<DomainBox> {
    let mut b = bx;
    for _ in 0..cfg.rounds.max(1) {
        // a convex m-gon of side d needs m d < 2 pi
        let cap = (2.0 * PI / b[D].lo + 1e-9).floor() as usize;
        if sys.face_vars.iter().any(|f| f.size() > cap) {
            return None;
        }
        let cons = assemble_system(sys, &b);
        let next = match cfg.mode {
            PropagationMode::Interval => propagate(&cons, &b)?,
            PropagationMode::Lp => propagate_lp(&cons, &b)?,
        };
        let progress = b
            .iter()
            .zip(next.iter())
            .filter(|(o, _)| o.width() > 0.0)
            .map(|(o, n)| (o.width() - n.width()) / o.width())
            .fold(0.0, f64::max);
        b = next;
        if progress < 1e-3 {
            break;
        }
    }
    Some(b)
}

/// Level-wise branch and bound over the domain of `g`.
pub fn branch_and_bound(g: &PlaneGraph, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let sys = VariableSystem::new(g)?;
    search_system(&sys, DomainBox::initial(&sys), cfg)
}

/// [`branch_and_bound`] from an explicit root box.
pub fn search_system(sys: &VariableSystem, root: DomainBox, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let mut nodes = 1;
    let Some(root) = tighten(sys, root, cfg) else {
        return Ok(SearchReport {
            outcome: SearchOutcome::Pruned { level: 1 },
            levels: 1,
            nodes,
        });
    };
    let mut frontier = vec![SearchNode {
        bx: root,
        level: 1,
        lineage: Vec::new(),
    }];
    let mut level = 1;
    while level < cfg.max_level {
        level += 1;
        let mut next = Vec::with_capacity(2 * frontier.len());
        let mut split_any = false;
        for node in frontier {
            let v = choose_branch_variable(sys, &node.bx);
            if node.bx[v].width() < cfg.min_width {
                next.push(node);
                continue;
            }
            split_any = true;
            let (lo, hi) = node.bx[v].split();
            for (upper, half) in [(false, lo), (true, hi)] {
                let mut child = node.bx.clone();
                child[v] = half;
                nodes += 1;
                if let Some(b) = tighten(sys, child, cfg) {
                    let mut lineage = node.lineage.clone();
                    lineage.push((v, upper));
                    next.push(SearchNode { bx: b, level, lineage });
                }
            }
        }
        if next.is_empty() {
            return Ok(SearchReport {
                outcome: SearchOutcome::Pruned { level },
                levels: level,
                nodes,
            });
        }
        if next.len() > cfg.leaf_budget {
            return Err(SearchError::BudgetExceeded {
                code: canonical_code(&sys.graph).to_hex(),
                level,
                live: next.len(),
                frontier: next,
            });
        }
        frontier = next;
        if !split_any {
            break;
        }
    }
    Ok(SearchReport {
        outcome: SearchOutcome::Survived { boxes: frontier },
        levels: level,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear_relax::Interval;
    use crate::plane_graph::fixtures;

    #[test]
    fn branch_variable_rules() {
        let sys = VariableSystem::new(&fixtures::cube()).unwrap();
        let mut bx = DomainBox::initial(&sys);
        for v in sys.determining.clone() {
            bx[v] = Interval::point(1.0);
        }
        assert_eq!(choose_branch_variable(&sys, &bx), A);
        let v0 = sys.determining[0];
        bx[v0] = Interval::new(0.0, 3.0);
        assert_eq!(choose_branch_variable(&sys, &bx), v0);
        bx[A] = Interval::new(0.0, 3.0);
        assert_eq!(choose_branch_variable(&sys, &bx), A);
    }

    #[test]
    fn octahedron_survives_at_right_angle() {
        let rep = branch_and_bound(&fixtures::octahedron(), &SearchConfig::default()).unwrap();
        assert!(rep.boxes().iter().any(|n| n.bx[D].contains(PI / 2.0)));
    }

    #[test]
    fn icosahedron_survives_at_the_upper_bound() {
        // five triangles at every vertex force a = 2 pi / 5, whose d is the
        // upper end of the twelve-point domain
        let rep = branch_and_bound(&fixtures::icosahedron(), &SearchConfig::default()).unwrap();
        let d = (1.0 / 5f64.sqrt()).acos();
        assert!(rep.boxes().iter().any(|n| n.bx[D].lo <= d + 1e-9 && d - 1e-9 <= n.bx[D].hi));
    }
}
