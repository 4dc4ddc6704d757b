//! Branch and bound over the angle/length domain of a candidate graph.
//!
//! Each node's box is re-linearised with [`crate::linear_relax`] and
//! tightened by constraint propagation; boxes that empty are discarded.

mod propagate;
mod search;
mod system;

pub use propagate::{propagate, propagate_lp, EMPTY_TOL, FIXPOINT_REL, REQUEUE_FIRST};
pub use search::{
    branch_and_bound, choose_branch_variable, search_system, tighten, PropagationMode, SearchConfig,
    SearchError, SearchNode, SearchOutcome, SearchReport,
};
pub use system::{fejes_toth_bound, DomainBox, FaceVars, FanTriangle, VarKind, VariableSystem, A, D};
pub(crate) use system::{alpha_of, d_of_alpha};
