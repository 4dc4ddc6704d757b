//! Exhaustive generation of candidate plane graphs.
//!
//! Every 3-connected plane graph is a spanning subgraph of a simple
//! triangulation with a compatible embedding, and all triangulations on `n`
//! vertices are connected by edge flips. Generation therefore runs a flip
//! search over triangulations, then a pruned edge-deletion search inside each
//! triangulation, with canonical codes as the single deduplication point.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::{
    canonical_code, combinatorial_filter, trace_faces, CanonicalCode, GraphError, PlaneGraph,
};

/// Candidate list for one point count.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub n: usize,
    /// Filter-passing candidates, one per (graph, isolated placement) pair,
    /// sorted by canonical code.
    pub graphs: Vec<PlaneGraph>,
    /// Number of distinct non-isolated parts among `graphs`.
    pub underlying: usize,
}

/// All triangulations of the sphere with `n >= 4` vertices, up to
/// isomorphism (including reflection), sorted by canonical code.
pub fn triangulations(n: usize) -> Vec<PlaneGraph> {
    assert!(n >= 4, "triangulations need at least four vertices");
    let start = if n == 4 {
        super::fixtures::tetrahedron()
    } else {
        bipyramid(n)
    };
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_code(&start));
    queue.push_back(start);
    while let Some(t) = queue.pop_front() {
        for (u, v) in t.edges() {
            if let Some(f) = flip(&t, u, v) {
                let code = canonical_code(&f);
                if seen.insert(code) {
                    queue.push_back(f);
                }
            }
        }
        out.push(t);
    }
    sort_by_code(out)
}

/// All 3-connected plane graphs on `n` vertices with maximum degree at most
/// `max_degree`, up to isomorphism (including reflection), sorted by code.
pub fn polyhedra(n: usize, max_degree: usize) -> Vec<PlaneGraph> {
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut out = Vec::new();
    for t in triangulations(n) {
        let mut search = DeletionSearch::new(&t, max_degree);
        search.run(&mut |g| {
            let code = canonical_code(&g);
            if seen.insert(code) {
                out.push(g);
            }
        });
    }
    sort_by_code(out)
}

/// Candidates for `n` points: 3-connected plane graphs with degrees in
/// {3, 4, 5}, plus every admissible placement of isolated vertices into
/// graphs with fewer vertices.
pub fn generate_candidates(n: usize) -> Result<CandidateSet, GraphError> {
    if !(4..=11).contains(&n) {
        return Err(GraphError::UnsupportedCount(n));
    }
    let mut graphs = Vec::new();
    let mut underlying = 0;
    // a host face needs at least six vertices, so k >= 6 once isolated
    // vertices are present
    for k in (4..=n).rev() {
        if k < n && k < 6 {
            break;
        }
        for g in polyhedra(k, 5) {
            let placed = if k == n {
                vec![g]
            } else {
                place_isolated(&g, n)
            };
            let placed: Vec<PlaneGraph> = placed
                .into_iter()
                .filter(|p| combinatorial_filter(p, n))
                .collect();
            if !placed.is_empty() {
                underlying += 1;
            }
            graphs.extend(placed);
        }
    }
    Ok(CandidateSet {
        n,
        graphs: sort_by_code(graphs),
        underlying,
    })
}

/// Every placement of `n - k` isolated vertices into faces of size at least
/// six of the `k`-vertex graph `g` (at most one per hexagon), up to
/// isomorphism.
pub fn place_isolated(g: &PlaneGraph, n: usize) -> Vec<PlaneGraph> {
    let k = g.vertex_count();
    if n < k {
        return Vec::new();
    }
    let extra = n - k;
    let faces = trace_faces(g).expect("valid graph");
    let hosts: Vec<(usize, usize)> = faces
        .iter()
        .filter(|f| f.size() >= 6)
        .map(|f| (f.id, if f.size() == 6 { 1 } else { extra }))
        .collect();
    let mut rotation = g.rotation().to_vec();
    rotation.resize(n, Vec::new());
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut chosen = Vec::new();
    multisets(&hosts, 0, extra, &mut chosen, &mut |faces_chosen| {
        let placement: BTreeMap<usize, usize> = faces_chosen
            .iter()
            .enumerate()
            .map(|(i, &f)| (k + i, f))
            .collect();
        let p = PlaneGraph::from_parts_unchecked(rotation.clone(), placement);
        if seen.insert(canonical_code(&p)) {
            out.push(p);
        }
    });
    out
}

fn multisets(
    hosts: &[(usize, usize)],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for i in from..hosts.len() {
        let (face, cap) = hosts[i];
        for take in 1..=cap.min(remaining) {
            for _ in 0..take {
                chosen.push(face);
            }
            multisets(hosts, i + 1, remaining - take, chosen, emit);
            for _ in 0..take {
                chosen.pop();
            }
        }
    }
}

fn sort_by_code(graphs: Vec<PlaneGraph>) -> Vec<PlaneGraph> {
    let mut keyed: Vec<(CanonicalCode, PlaneGraph)> =
        graphs.into_iter().map(|g| (canonical_code(&g), g)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.into_iter().map(|(_, g)| g).collect()
}

fn bipyramid(n: usize) -> PlaneGraph {
    let ring: Vec<usize> = (2..n).collect();
    let m = ring.len();
    let mut rot = vec![Vec::new(); n];
    rot[0] = ring.clone();
    rot[1] = ring.iter().rev().copied().collect();
    for i in 0..m {
        let prev = ring[(i + m - 1) % m];
        let next = ring[(i + 1) % m];
        rot[ring[i]] = vec![0, prev, 1, next];
    }
    PlaneGraph::from_rotation(rot).expect("bipyramid is a triangulation")
}

/// Flips edge `u v` of a triangulation, or `None` when the result would not
/// be a simple triangulation with minimum degree three.
fn flip(t: &PlaneGraph, u: usize, v: usize) -> Option<PlaneGraph> {
    let rot = t.rotation();
    if rot[u].len() <= 3 || rot[v].len() <= 3 {
        return None;
    }
    let prev = |a: usize, b: usize| {
        let r = &rot[a];
        let j = r.iter().position(|&x| x == b).expect("adjacent");
        r[(j + r.len() - 1) % r.len()]
    };
    // faces u->v->w and v->u->x
    let w = prev(v, u);
    let x = prev(u, v);
    if w == x || rot[w].contains(&x) {
        return None;
    }
    let mut r = rot.to_vec();
    r[u].retain(|&y| y != v);
    r[v].retain(|&y| y != u);
    // at w the new edge sits between u and v; at x between v and u
    let iw = r[w].iter().position(|&y| y == u).expect("adjacent");
    r[w].insert(iw + 1, x);
    let ix = r[x].iter().position(|&y| y == v).expect("adjacent");
    r[x].insert(ix + 1, w);
    Some(PlaneGraph::from_parts_unchecked(r, BTreeMap::new()))
}

/// Depth-first search over subsets of deleted edges of one triangulation.
struct DeletionSearch<'a> {
    t: &'a PlaneGraph,
    edges: Vec<(usize, usize)>,
    /// number of undecided edges at each vertex, per decision depth
    undecided: Vec<usize>,
    degree: Vec<usize>,
    adjacency: Vec<u16>,
    deleted: Vec<bool>,
    max_degree: usize,
}

impl<'a> DeletionSearch<'a> {
    fn new(t: &'a PlaneGraph, max_degree: usize) -> Self {
        let n = t.vertex_count();
        assert!(n <= 16, "bit-set adjacency supports at most 16 vertices");
        let edges = t.edges();
        let degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
        let mut adjacency = vec![0u16; n];
        for &(a, b) in &edges {
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
        }
        DeletionSearch {
            t,
            undecided: degree.clone(),
            degree,
            adjacency,
            deleted: vec![false; edges.len()],
            edges,
            max_degree,
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(PlaneGraph)) {
        self.step(0, emit);
    }

    fn step(&mut self, i: usize, emit: &mut dyn FnMut(PlaneGraph)) {
        if i == self.edges.len() {
            if self.degree.iter().all(|&d| d <= self.max_degree)
                && three_connected(&self.adjacency)
            {
                emit(self.build());
            }
            return;
        }
        let (a, b) = self.edges[i];
        self.undecided[a] -= 1;
        self.undecided[b] -= 1;

        // keep the edge
        let keep_ok = [a, b]
            .iter()
            .all(|&x| self.degree[x] - self.undecided[x] <= self.max_degree);
        if keep_ok {
            self.step(i + 1, emit);
        }

        // delete the edge
        if self.degree[a] > 3 && self.degree[b] > 3 {
            self.degree[a] -= 1;
            self.degree[b] -= 1;
            self.adjacency[a] &= !(1 << b);
            self.adjacency[b] &= !(1 << a);
            self.deleted[i] = true;
            if three_connected(&self.adjacency) {
                self.step(i + 1, emit);
            }
            self.deleted[i] = false;
            self.adjacency[a] |= 1 << b;
            self.adjacency[b] |= 1 << a;
            self.degree[a] += 1;
            self.degree[b] += 1;
        }

        self.undecided[a] += 1;
        self.undecided[b] += 1;
    }

    fn build(&self) -> PlaneGraph {
        let mut rot = self.t.rotation().to_vec();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if self.deleted[i] {
                rot[a].retain(|&y| y != b);
                rot[b].retain(|&y| y != a);
            }
        }
        PlaneGraph::from_parts_unchecked(rot, BTreeMap::new())
    }
}

/// 3-connectivity of a graph on at most 16 vertices given as bit masks.
fn three_connected(adj: &[u16]) -> bool {
    let n = adj.len();
    let all: u16 = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
    if n < 4 {
        return false;
    }
    if !connected(adj, all) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !connected(adj, all & !(1 << a) & !(1 << b)) {
                return false;
            }
        }
    }
    true
}

fn connected(adj: &[u16], alive: u16) -> bool {
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros() as usize;
    let mut reached: u16 = 1 << start;
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & alive & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == alive
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (4..=9).map(|n| triangulations(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 50]);
    }

    #[test]
    fn polyhedra_counts_small() {
        assert_eq!(polyhedra(4, 3).len(), 1);
        assert_eq!(polyhedra(5, 4).len(), 2);
        assert_eq!(polyhedra(6, 5).len(), 7);
    }

    #[test]
    fn flip_preserves_triangulation() {
        let t = bipyramid(7);
        for (u, v) in t.edges() {
            if let Some(f) = flip(&t, u, v) {
                let faces = trace_faces(&f).unwrap();
                assert!(faces.iter().all(|x| x.size() == 3));
                assert_eq!(f.edge_count(), t.edge_count());
            }
        }
    }

    #[test]
    fn out_of_range_count_is_rejected() {
        assert_eq!(
            generate_candidates(12).unwrap_err(),
            GraphError::UnsupportedCount(12)
        );
        assert!(generate_candidates(3).is_err());
    }

    #[test]
    fn three_connectivity_by_masks() {
        // K4
        assert!(three_connected(&[0b1110, 0b1101, 0b1011, 0b0111]));
        // 4-cycle
        assert!(!three_connected(&[0b1010, 0b0101, 0b1010, 0b0101]));
    }
}
