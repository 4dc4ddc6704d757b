//! Recovering the rotation system of a 3-connected planar graph.
//!
//! The faces of a 3-connected planar graph are exactly its induced
//! non-separating cycles, so for the small graphs handled here the embedding
//! can be rebuilt from adjacency alone.

use std::collections::{BTreeMap, HashMap, VecDeque};

/// Rotation system (counter-clockwise up to a global reflection) of the
/// 3-connected planar graph with adjacency lists `adj`, or `None` if the
/// graph is not 3-connected planar.
pub(crate) fn embed_three_connected(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let active: Vec<usize> = (0..n).filter(|&v| !adj[v].is_empty()).collect();
    if active.len() < 4 || n > 64 {
        return None;
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let faces_needed = edges + 2 - active.len();

    let mut faces: Vec<Vec<usize>> = Vec::new();
    for cycle in induced_cycles(adj) {
        if !separates(adj, &cycle) {
            faces.push(cycle);
            if faces.len() > faces_needed {
                return None;
            }
        }
    }
    if faces.len() != faces_needed {
        return None;
    }

    // orient faces coherently: each edge is traversed once in each direction
    let mut oriented: Vec<Option<Vec<usize>>> = vec![None; faces.len()];
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for j in 0..f.len() {
            let (a, b) = (f[j], f[(j + 1) % f.len()]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    if by_edge.len() != edges || by_edge.values().any(|v| v.len() != 2) {
        return None;
    }
    let mut queue = VecDeque::new();
    oriented[0] = Some(faces[0].clone());
    queue.push_back(0);
    while let Some(i) = queue.pop_front() {
        let f = oriented[i].clone().expect("oriented");
        for j in 0..f.len() {
            let (a, b) = (f[j], f[(j + 1) % f.len()]);
            let other = by_edge[&(a.min(b), a.max(b))]
                .iter()
                .copied()
                .find(|&k| k != i)
                .expect("two faces per edge");
            // the neighbour must run b -> a
            let g = &faces[other];
            let pos = g.iter().position(|&x| x == b).expect("shared edge");
            let runs_back = g[(pos + 1) % g.len()] == a;
            let cand: Vec<usize> = if runs_back {
                g.clone()
            } else {
                g.iter().rev().copied().collect()
            };
            match &oriented[other] {
                Some(existing) if *existing != cand => return None,
                Some(_) => {}
                None => {
                    oriented[other] = Some(cand);
                    queue.push_back(other);
                }
            }
        }
    }

    // corner at v in face ...u -> v -> w...: w precedes u in the rotation
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for f in oriented.into_iter().map(|f| f.expect("connected dual")) {
        let m = f.len();
        for j in 0..m {
            let (u, v, w) = (f[(j + m - 1) % m], f[j], f[(j + 1) % m]);
            succ[v].insert(w, u);
        }
    }
    let mut rotation = vec![Vec::new(); n];
    for v in active {
        let first = adj[v][0];
        let mut r = vec![first];
        let mut cur = succ[v].get(&first).copied()?;
        while cur != first {
            r.push(cur);
            if r.len() > adj[v].len() {
                return None;
            }
            cur = succ[v].get(&cur).copied()?;
        }
        if r.len() != adj[v].len() {
            return None;
        }
        rotation[v] = r;
    }
    Some(rotation)
}

/// Chordless cycles, each reported once starting at its smallest vertex.
fn induced_cycles(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(adj, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn extend(
    adj: &[Vec<usize>],
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("non-empty path");
    for &next in &adj[last] {
        if next <= s || on_path[next] {
            continue;
        }
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| adj[next].contains(&p)) {
            continue;
        }
        if path.len() >= 2 && adj[next].contains(&s) {
            // the edge back to s closes the cycle; extending would add a chord
            if path[1] < next {
                let mut cycle = path.clone();
                cycle.push(next);
                out.push(cycle);
            }
            continue;
        }
        path.push(next);
        on_path[next] = true;
        extend(adj, s, path, on_path, out);
        on_path[next] = false;
        path.pop();
    }
}

fn separates(adj: &[Vec<usize>], cycle: &[usize]) -> bool {
    let n = adj.len();
    let mut blocked = vec![false; n];
    for &c in cycle {
        blocked[c] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !blocked[v] && !adj[v].is_empty()).collect();
    let Some(&start) = rest.first() else {
        return false;
    };
    let mut stack = vec![start];
    blocked[start] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !blocked[u] {
                blocked[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached != rest.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{canonical_code, fixtures, PlaneGraph};

    fn sorted_adjacency(g: &PlaneGraph) -> Vec<Vec<usize>> {
        g.rotation()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r
            })
            .collect()
    }

    #[test]
    fn recovers_platonic_embeddings() {
        for g in [
            fixtures::tetrahedron(),
            fixtures::cube(),
            fixtures::octahedron(),
            fixtures::icosahedron(),
        ] {
            let rot = embed_three_connected(&sorted_adjacency(&g)).unwrap();
            let h = PlaneGraph::from_rotation(rot).unwrap();
            assert_eq!(canonical_code(&h), canonical_code(&g));
        }
    }

    #[test]
    fn rejects_a_four_cycle() {
        let adj = vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]];
        assert!(embed_three_connected(&adj).is_none());
    }
}
