use super::{trace_faces, PlaneGraph};

/// Necessary combinatorial conditions for an irreducible contact graph on
/// `n` points:
///
/// * every degree is 0, 3, 4 or 5;
/// * every isolated vertex is placed in a face with at least six vertices,
///   and no hexagon hosts two of them;
/// * every face has at most `n` vertices.
pub fn combinatorial_filter(g: &PlaneGraph, n: usize) -> bool {
    if g.vertex_count() != n {
        return false;
    }
    if (0..n).any(|v| !matches!(g.degree(v), 0 | 3 | 4 | 5)) {
        return false;
    }
    let Ok(faces) = trace_faces(g) else {
        return false;
    };
    if faces.iter().any(|f| f.size() > n) {
        return false;
    }
    let mut hosted = vec![0usize; faces.len()];
    for v in g.isolated() {
        let Some(f) = g.placement_of(v) else {
            return false;
        };
        if faces[f].size() < 6 {
            return false;
        }
        hosted[f] += 1;
    }
    !faces
        .iter()
        .zip(&hosted)
        .any(|(f, &h)| f.size() == 6 && h >= 2)
}

/// Count of vertices per degree, indexed by degree.
pub fn degree_histogram(g: &PlaneGraph) -> Vec<usize> {
    let max = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut h = vec![0; max + 1];
    for v in 0..g.vertex_count() {
        h[g.degree(v)] += 1;
    }
    h
}
