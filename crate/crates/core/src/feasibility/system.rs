use std::f64::consts::PI;
use std::ops::{Deref, DerefMut};

use crate::linear_relax::{Interval, VarId};
use crate::plane_graph::{trace_faces, Face, GraphError, PlaneGraph};

/// The common edge length.
pub const D: VarId = 0;
/// The equilateral-triangle angle `alpha(d)`.
pub const A: VarId = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    D,
    A,
    /// Interior angle of a non-triangular face at boundary position `pos`.
    Corner { face: usize, pos: usize },
    /// Angle of fan triangle `tri` at its vertex `at` (0: apex, 1, 2).
    SubAngle { face: usize, tri: usize, at: usize },
    /// Distance from the fan apex to boundary position `j`.
    Diagonal { face: usize, j: usize },
}

/// Fan triangle `(A_0, A_j, A_{j+1})`; `angles[i]` is opposite `sides[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanTriangle {
    pub sides: [VarId; 3],
    pub angles: [VarId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceVars {
    pub face: usize,
    /// Angle variable per boundary position; [`A`] for triangles.
    pub corners: Vec<VarId>,
    /// Fan triangulation from boundary position 0, empty for triangles.
    pub fan: Vec<FanTriangle>,
    /// `diagonals[j]` is the length variable of `A_0 A_j` (`D` for sides).
    pub diagonals: Vec<VarId>,
}

impl FaceVars {
    pub fn size(&self) -> usize {
        self.corners.len()
    }
}

/// Variable table of one candidate graph.
#[derive(Debug, Clone)]
pub struct VariableSystem {
    pub n: usize,
    pub graph: PlaneGraph,
    pub faces: Vec<Face>,
    pub kinds: Vec<VarKind>,
    pub face_vars: Vec<FaceVars>,
    /// Corner angle variables around each vertex (empty when isolated).
    pub vertex_corners: Vec<Vec<VarId>>,
    /// Variables that, together with [`A`], pin every other variable.
    pub determining: Vec<VarId>,
}

impl VariableSystem {
    pub fn new(g: &PlaneGraph) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        let faces = trace_faces(g)?;
        let mut kinds = vec![VarKind::D, VarKind::A];
        let fresh = |k: VarKind, kinds: &mut Vec<VarKind>| {
            kinds.push(k);
            kinds.len() - 1
        };
        let mut face_vars = Vec::with_capacity(faces.len());
        let mut vertex_corners = vec![Vec::new(); n];
        for f in &faces {
            let m = f.size();
            let corners: Vec<VarId> = if m == 3 {
                vec![A; 3]
            } else {
                (0..m)
                    .map(|pos| fresh(VarKind::Corner { face: f.id, pos }, &mut kinds))
                    .collect()
            };
            for (c, &v) in f.boundary.iter().zip(&corners) {
                vertex_corners[c.vertex].push(v);
            }
            let mut fan = Vec::new();
            let mut diagonals = Vec::new();
            if m >= 4 {
                diagonals = vec![D; m];
                for (j, slot) in diagonals.iter_mut().enumerate().take(m - 1).skip(2) {
                    *slot = fresh(VarKind::Diagonal { face: f.id, j }, &mut kinds);
                }
                for tri in 1..m - 1 {
                    let angles = [0, 1, 2].map(|at| fresh(VarKind::SubAngle { face: f.id, tri, at }, &mut kinds));
                    fan.push(FanTriangle {
                        sides: [D, diagonals[tri + 1], diagonals[tri]],
                        angles,
                    });
                }
            }
            face_vars.push(FaceVars {
                face: f.id,
                corners,
                fan,
                diagonals,
            });
        }
        let mut sys = VariableSystem {
            n,
            graph: g.clone(),
            faces,
            kinds,
            face_vars,
            vertex_corners,
            determining: Vec::new(),
        };
        sys.determining = sys.determining_set();
        Ok(sys)
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// Non-triangle corner variables, in declaration order.
    pub fn corner_vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.len()).filter(|&v| matches!(self.kinds[v], VarKind::Corner { .. }))
    }

    pub fn name(&self, v: VarId) -> String {
        match self.kinds[v] {
            VarKind::D => "d".into(),
            VarKind::A => "a".into(),
            VarKind::Corner { face, pos } => format!("u[f{face}.{pos}]"),
            VarKind::SubAngle { face, tri, at } => format!("t[f{face}.{tri}.{at}]"),
            VarKind::Diagonal { face, j } => format!("z[f{face}.{j}]"),
        }
    }

    /// Greedy structural closure: vertex sums fix a last unknown corner, a
    /// rhombus angle fixes its face, and `m - 3` angles fix an `m`-gon. The
    /// earliest unknown corner is added whenever the closure stalls.
    fn determining_set(&self) -> Vec<VarId> {
        let mut known = vec![false; self.len()];
        known[D] = true;
        known[A] = true;
        let mut chosen = Vec::new();
        loop {
            let mut changed = true;
            while changed {
                changed = false;
                for corners in &self.vertex_corners {
                    let unknown: Vec<VarId> = corners.iter().cloned().filter(|&v| !known[v]).collect();
                    if let [v] = unknown[..] {
                        known[v] = true;
                        changed = true;
                    }
                }
                for fv in &self.face_vars {
                    let m = fv.size();
                    if m < 4 {
                        continue;
                    }
                    let k = fv.corners.iter().filter(|&&v| known[v]).count();
                    if k < m && (k >= m - 3 || (m == 4 && k >= 1)) {
                        for &v in &fv.corners {
                            known[v] = true;
                        }
                        changed = true;
                    }
                }
            }
            match self.corner_vars().find(|&v| !known[v]) {
                Some(v) => {
                    known[v] = true;
                    chosen.push(v);
                }
                None => return chosen,
            }
        }
    }
}

/// Interval per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox(pub Vec<Interval>);

impl Deref for DomainBox {
    type Target = [Interval];
    fn deref(&self) -> &[Interval] {
        &self.0
    }
}

impl DerefMut for DomainBox {
    fn deref_mut(&mut self) -> &mut [Interval] {
        &mut self.0
    }
}

/// Upper bound on the minimum distance of `n` points (Fejes Toth).
pub fn fejes_toth_bound(n: usize) -> f64 {
    let w = n as f64 * PI / (6.0 * (n as f64 - 2.0));
    let cot2 = (w.cos() / w.sin()).powi(2);
    ((cot2 - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
}

/// `alpha(d)` extended continuously to `[0, pi)`.
pub(crate) fn alpha_of(d: f64) -> f64 {
    let c = d.cos();
    (c / (1.0 + c)).clamp(-1.0, 1.0).acos()
}

/// Inverse of [`alpha_of`].
pub(crate) fn d_of_alpha(a: f64) -> f64 {
    let c = a.cos();
    (c / (1.0 - c)).clamp(-1.0, 1.0).acos()
}

impl DomainBox {
    /// The initial domain: `d` between `2 pi / n` and the Fejes Toth bound,
    /// every angle in `[0, pi]` (corners at least `a`), diagonals at least
    /// `d`.
    pub fn initial(sys: &VariableSystem) -> Self {
        let d_lo = 2.0 * PI / sys.n as f64;
        let d_hi = (fejes_toth_bound(sys.n) + 1e-9).min(2.0 * PI / 3.0 - 1e-9);
        let d = Interval::new(d_lo, d_hi);
        let a = Interval::new(alpha_of(d_lo), alpha_of(d_hi));
        let ivs = sys
            .kinds
            .iter()
            .map(|k| match k {
                VarKind::D => d,
                VarKind::A => a,
                VarKind::Corner { .. } => Interval::new(a.lo, PI),
                VarKind::SubAngle { .. } => Interval::new(0.0, PI),
                VarKind::Diagonal { .. } => Interval::new(d_lo, PI),
            })
            .collect();
        DomainBox(ivs)
    }

    pub fn contains_point(&self, x: &[f64], tol: f64) -> bool {
        self.0.iter().zip(x).all(|(iv, &v)| iv.lo - tol <= v && v <= iv.hi + tol)
    }

    pub fn is_subset_of(&self, other: &DomainBox) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.is_subset_of(b))
    }
}
