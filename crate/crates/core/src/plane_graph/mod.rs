//! Plane graphs given by rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, its neighbours in
//! counter-clockwise order as seen from outside the sphere. Vertices with an
//! empty rotation are isolated; an isolated vertex may be *placed* in one of
//! the faces of the non-isolated part.

mod canonical;
mod embed;
mod faces;
mod filter;
mod generate;
mod planar_code;

use std::collections::BTreeMap;
use std::fmt;

pub use canonical::{canonical_code, canonical_code_with, CanonicalCode, Orientation};
pub use faces::{trace_faces, Corner, Face};
pub use filter::{combinatorial_filter, degree_histogram};
pub use generate::{
    generate_candidates, place_isolated, polyhedra, triangulations, CandidateSet,
};
pub use planar_code::{read_planar_code, write_planar_code, PLANAR_CODE_HEADER};

/// Errors raised while building or decoding plane graphs.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {v} lists {u} as a neighbour but {u} does not list {v}")]
    Asymmetric { u: usize, v: usize },
    #[error("vertex {v} lists neighbour {u} more than once")]
    MultiEdge { u: usize, v: usize },
    #[error("vertex {0} is adjacent to itself")]
    Loop(usize),
    #[error("neighbour {neighbour} of vertex {v} is out of range")]
    OutOfRange { v: usize, neighbour: usize },
    #[error("rotation system violates Euler's relation: V={v} E={e} F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("isolated vertex {vertex} is tagged with unknown face {face}")]
    UnknownFace { vertex: usize, face: usize },
    #[error("vertex {0} is not isolated")]
    NotIsolated(usize),
    #[error("unsupported vertex count {0} (expected 4..=11)")]
    UnsupportedCount(usize),
    #[error("planar code: {msg} at byte {offset}")]
    Format { offset: usize, msg: String },
}

/// A plane graph: rotation system plus face tags of isolated vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    placement: BTreeMap<usize, usize>,
}

impl PlaneGraph {
    /// Builds a graph from counter-clockwise neighbour lists, checking that
    /// adjacency is symmetric and simple.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = rotation.len();
        for (v, nbrs) in rotation.iter().enumerate() {
            for (i, &u) in nbrs.iter().enumerate() {
                if u >= n {
                    return Err(GraphError::OutOfRange { v, neighbour: u });
                }
                if u == v {
                    return Err(GraphError::Loop(v));
                }
                if nbrs[..i].contains(&u) {
                    return Err(GraphError::MultiEdge { u, v });
                }
                if !rotation[u].contains(&v) {
                    return Err(GraphError::Asymmetric { u: v, v: u });
                }
            }
        }
        let g = PlaneGraph {
            rotation,
            placement: BTreeMap::new(),
        };
        let faces = trace_faces(&g)?;
        let (v, e, f) = (g.non_isolated_count(), g.edge_count(), faces.len());
        if v > 0 && v + f != e + 2 {
            return Err(GraphError::Euler { v, e, f });
        }
        Ok(g)
    }

    /// Same as [`from_rotation`](Self::from_rotation) and additionally tags
    /// isolated vertices with faces (indices into [`trace_faces`] output).
    pub fn with_placement(
        rotation: Vec<Vec<usize>>,
        placement: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Self::from_rotation(rotation)?;
        let face_count = trace_faces(&g)?.len();
        for (vertex, face) in placement {
            if !g.rotation[vertex].is_empty() {
                return Err(GraphError::NotIsolated(vertex));
            }
            if face >= face_count {
                return Err(GraphError::UnknownFace { vertex, face });
            }
            g.placement.insert(vertex, face);
        }
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(
        rotation: Vec<Vec<usize>>,
        placement: BTreeMap<usize, usize>,
    ) -> Self {
        PlaneGraph {
            rotation,
            placement,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn non_isolated_count(&self) -> usize {
        self.rotation.iter().filter(|r| !r.is_empty()).count()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Counter-clockwise neighbours of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.rotation[u].contains(&v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.rotation.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices of degree zero.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.rotation[v].is_empty())
            .collect()
    }

    /// Face index hosting isolated vertex `v`, if it has been placed.
    pub fn placement_of(&self, v: usize) -> Option<usize> {
        self.placement.get(&v).copied()
    }

    pub fn placement(&self) -> &BTreeMap<usize, usize> {
        &self.placement
    }

    /// True when every isolated vertex carries a face tag.
    pub fn is_placed(&self) -> bool {
        self.isolated()
            .iter()
            .all(|v| self.placement.contains_key(v))
    }

    /// Graph with every rotation reversed (the mirror image).
    pub fn mirrored(&self) -> PlaneGraph {
        let rotation: Vec<Vec<usize>> = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        // the face left of u->v becomes the face left of v->u
        self.transport_placement(rotation, |u, v| (v, u))
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> PlaneGraph {
        let n = self.vertex_count();
        let mut rotation = vec![Vec::new(); n];
        for v in 0..n {
            rotation[perm[v]] = self.rotation[v].iter().map(|&u| perm[u]).collect();
        }
        let placed = self.transport_placement(rotation, |u, v| (perm[u], perm[v]));
        let placement = placed
            .placement
            .iter()
            .map(|(&v, &f)| (perm[v], f))
            .collect();
        PlaneGraph::from_parts_unchecked(placed.rotation, placement)
    }

    fn transport_placement(
        &self,
        rotation: Vec<Vec<usize>>,
        dart: impl Fn(usize, usize) -> (usize, usize),
    ) -> PlaneGraph {
        let target = PlaneGraph::from_parts_unchecked(rotation, BTreeMap::new());
        if self.placement.is_empty() {
            return target;
        }
        let own = trace_faces(self).expect("valid graph");
        let theirs = trace_faces(&target).expect("valid graph");
        let placement = self
            .placement
            .iter()
            .map(|(&v, &f)| {
                let vs = own[f].vertices();
                let (a, b) = dart(vs[0], vs[1 % vs.len()]);
                (v, faces::face_of_dart(&theirs, a, b).expect("face exists"))
            })
            .collect();
        PlaneGraph::from_parts_unchecked(target.rotation, placement)
    }

    /// Vertex connectivity of the non-isolated part is at least three.
    pub fn is_three_connected(&self) -> bool {
        let active: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| !self.rotation[v].is_empty())
            .collect();
        if active.len() < 4 {
            return false;
        }
        if !self.connected_without(&[]) {
            return false;
        }
        for (i, &a) in active.iter().enumerate() {
            for &b in &active[i + 1..] {
                if !self.connected_without(&[a, b]) {
                    return false;
                }
            }
        }
        true
    }

    fn connected_without(&self, removed: &[usize]) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let start = match (0..n).find(|&v| !seen[v] && !self.rotation[v].is_empty()) {
            Some(s) => s,
            None => return true,
        };
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.rotation[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        let total = (0..n)
            .filter(|v| !removed.contains(v) && !self.rotation[*v].is_empty())
            .count();
        reached == total
    }
}

impl fmt::Debug for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneGraph(n={}", self.vertex_count())?;
        for (v, r) in self.rotation.iter().enumerate() {
            write!(f, " {v}:{r:?}")?;
        }
        if !self.placement.is_empty() {
            write!(f, " placed:{:?}", self.placement)?;
        }
        write!(f, ")")
    }
}

/// Small named graphs used by tests and examples.
pub mod fixtures {
    use super::PlaneGraph;

    pub fn tetrahedron() -> PlaneGraph {
        PlaneGraph::from_rotation(vec![
            vec![1, 2, 3],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ])
        .unwrap()
    }

    /// Octahedron with vertices +x, -x, +y, -y, +z, -z (indices 0..6), rotations
    /// counter-clockwise seen from outside.
    pub fn octahedron() -> PlaneGraph {
        PlaneGraph::from_rotation(vec![
            vec![2, 4, 3, 5],
            vec![2, 5, 3, 4],
            vec![0, 5, 1, 4],
            vec![0, 4, 1, 5],
            vec![0, 2, 1, 3],
            vec![0, 3, 1, 2],
        ])
        .unwrap()
    }

    /// Cube with vertices indexed by sign bits (x, y, z).
    pub fn cube() -> PlaneGraph {
        // vertex i has coordinates (sx, sy, sz) with s = +1 if bit set.
        PlaneGraph::from_rotation(vec![
            vec![1, 4, 2], // 000 -> -x-y-z
            vec![0, 3, 5], // 001 = +x
            vec![0, 6, 3], // 010 = +y
            vec![1, 2, 7], // 011
            vec![0, 5, 6], // 100 = +z
            vec![1, 7, 4], // 101
            vec![2, 4, 7], // 110
            vec![3, 6, 5], // 111
        ])
        .unwrap()
    }

    /// Icosahedron: vertex 0 on top, upper ring 1..=5, lower ring 6..=10
    /// (lower vertex `6 + i` sits between upper `1 + i` and `1 + (i + 1) % 5`),
    /// vertex 11 at the bottom.
    pub fn icosahedron() -> PlaneGraph {
        let mut rot = vec![Vec::new(); 12];
        rot[0] = vec![1, 2, 3, 4, 5];
        rot[11] = vec![10, 9, 8, 7, 6];
        for i in 0..5 {
            let up = 1 + i;
            let up_next = 1 + (i + 1) % 5;
            let up_prev = 1 + (i + 4) % 5;
            let lo = 6 + i;
            let lo_next = 6 + (i + 1) % 5;
            let lo_prev = 6 + (i + 4) % 5;
            rot[up] = vec![0, up_prev, lo_prev, lo, up_next];
            rot[lo] = vec![up_next, up, lo_prev, 11, lo_next];
        }
        PlaneGraph::from_rotation(rot).unwrap()
    }
}
