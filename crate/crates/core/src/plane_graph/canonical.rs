use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{trace_faces, GraphError, PlaneGraph};

/// Which embeddings count as equal when computing a canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Mirror images share a code.
    #[default]
    Unoriented,
    /// Only orientation-preserving relabelings share a code.
    Oriented,
}

/// Byte string identifying a plane graph up to relabeling (and reflection in
/// the default mode).
///
/// Layout: `n`, number of isolated vertices, then the breadth-first code of
/// the non-isolated part (neighbour numbers in rotation order, `0` after each
/// vertex), then for every isolated vertex the boundary of its host face as
/// `len, numbers...` with the faces sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 != 0 {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }

    /// Rebuilds a representative graph from the code.
    pub fn to_graph(&self) -> Result<PlaneGraph, GraphError> {
        let bytes = &self.0;
        let bad = |offset: usize, msg: &str| GraphError::Format {
            offset,
            msg: msg.to_string(),
        };
        if bytes.len() < 2 {
            return Err(bad(0, "code too short"));
        }
        let n = bytes[0] as usize;
        let isolated = bytes[1] as usize;
        let active = n.checked_sub(isolated).ok_or_else(|| bad(1, "too many isolated"))?;
        let mut rotation = vec![Vec::new(); n];
        let mut pos = 2;
        for (v, rot) in rotation.iter_mut().enumerate().take(active) {
            loop {
                let b = *bytes.get(pos).ok_or_else(|| bad(pos, "truncated"))? as usize;
                pos += 1;
                if b == 0 {
                    break;
                }
                if b > active {
                    return Err(bad(pos - 1, "neighbour out of range"));
                }
                let _ = v;
                rot.push(b - 1);
            }
        }
        let mut g = PlaneGraph::from_rotation(rotation)?;
        if isolated == 0 {
            return Ok(g);
        }
        let faces = trace_faces(&g)?;
        let mut placement = BTreeMap::new();
        for k in 0..isolated {
            let len = *bytes.get(pos).ok_or_else(|| bad(pos, "truncated"))? as usize;
            pos += 1;
            let key: Vec<usize> = bytes
                .get(pos..pos + len)
                .ok_or_else(|| bad(pos, "truncated"))?
                .iter()
                .map(|&b| b as usize - 1)
                .collect();
            pos += len;
            let face = faces
                .iter()
                .position(|f| min_rotation(&f.vertices()) == key)
                .ok_or_else(|| bad(pos, "unknown face"))?;
            placement.insert(active + k, face);
        }
        g.placement = placement;
        Ok(g)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical code with mirror images identified.
pub fn canonical_code(g: &PlaneGraph) -> CanonicalCode {
    canonical_code_with(g, Orientation::Unoriented)
}

pub fn canonical_code_with(g: &PlaneGraph, orientation: Orientation) -> CanonicalCode {
    let n = g.vertex_count();
    let isolated = g.isolated();
    let mut header = vec![n as u8, isolated.len() as u8];
    let rot = g.rotation();
    let active = n - isolated.len();
    if active == 0 {
        return CanonicalCode(header);
    }

    let directions: &[bool] = match orientation {
        Orientation::Unoriented => &[false, true],
        Orientation::Oriented => &[false],
    };
    let faces = trace_faces(g).expect("valid graph");
    // size of the face left of each dart u -> rot[u][i]
    let mut left = vec![Vec::new(); n];
    for (u, r) in rot.iter().enumerate() {
        left[u] = vec![0usize; r.len()];
    }
    for f in &faces {
        let m = f.size();
        for (j, c) in f.boundary.iter().enumerate() {
            let next = f.boundary[(j + 1) % m].vertex;
            let i = rot[c.vertex].iter().position(|&x| x == next).expect("adjacent");
            left[c.vertex][i] = m;
        }
    }
    // roots are restricted to darts with the largest invariant key; the
    // reversed reading swaps the faces on either side of a dart
    let key = |v: usize, i: usize, reversed: bool| {
        let w = rot[v][i];
        let j = rot[w].iter().position(|&x| x == v).expect("adjacent");
        let (l, r) = (left[v][i], left[w][j]);
        let (a, b) = if reversed { (r, l) } else { (l, r) };
        (rot[v].len(), rot[w].len(), a, b)
    };
    let mut best_key = (0, 0, 0, 0);
    for &reversed in directions {
        for v in 0..n {
            for i in 0..rot[v].len() {
                best_key = best_key.max(key(v, i, reversed));
            }
        }
    }

    let mut best: Option<Vec<u8>> = None;
    let mut scratch = Scratch::new(n);
    for &reversed in directions {
        for v0 in 0..n {
            for i0 in 0..rot[v0].len() {
                if key(v0, i0, reversed) != best_key {
                    continue;
                }
                let Some(body) = bfs_code(rot, v0, i0, reversed, best.as_deref(), &mut scratch)
                else {
                    continue;
                };
                let mut full = body;
                if !isolated.is_empty() {
                    let mut keys: Vec<Vec<usize>> = isolated
                        .iter()
                        .map(|v| {
                            let face = g.placement_of(*v).expect("placed isolated vertex");
                            let mut seq: Vec<usize> = faces[face]
                                .vertices()
                                .iter()
                                .map(|&x| scratch.number[x])
                                .collect();
                            if reversed {
                                seq.reverse();
                            }
                            min_rotation(&seq)
                        })
                        .collect();
                    keys.sort();
                    for k in keys {
                        full.push(k.len() as u8);
                        full.extend(k.iter().map(|&x| (x + 1) as u8));
                    }
                }
                if best.as_ref().is_none_or(|b| full < *b) {
                    best = Some(full);
                }
            }
        }
    }
    header.extend(best.expect("at least one dart"));
    CanonicalCode(header)
}

struct Scratch {
    number: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            number: vec![usize::MAX; n],
            order: Vec::with_capacity(n),
            parent: vec![usize::MAX; n],
        }
    }
}

/// Breadth-first code rooted at dart `v0 -> rot[v0][i0]`. Returns `None` as
/// soon as the code is known to exceed `bound` (ties are kept, since the
/// isolated-vertex suffix may break them).
fn bfs_code(
    rot: &[Vec<usize>],
    v0: usize,
    i0: usize,
    reversed: bool,
    bound: Option<&[u8]>,
    s: &mut Scratch,
) -> Option<Vec<u8>> {
    s.number.iter_mut().for_each(|x| *x = usize::MAX);
    s.order.clear();
    s.number[v0] = 0;
    s.order.push(v0);
    s.parent[v0] = rot[v0][i0];
    let mut code = Vec::with_capacity(64);
    let mut head = 0;
    let mut tight = bound.is_some();
    while head < s.order.len() {
        let v = s.order[head];
        head += 1;
        let r = &rot[v];
        let k = r.len();
        let start = r.iter().position(|&x| x == s.parent[v]).expect("parent adjacent");
        for step in 0..k {
            let idx = if reversed {
                (start + k - step) % k
            } else {
                (start + step) % k
            };
            let u = r[idx];
            if s.number[u] == usize::MAX {
                s.number[u] = s.order.len();
                s.parent[u] = v;
                s.order.push(u);
            }
            let byte = (s.number[u] + 1) as u8;
            if !push_cmp(&mut code, byte, bound, &mut tight) {
                return None;
            }
        }
        if !push_cmp(&mut code, 0, bound, &mut tight) {
            return None;
        }
    }
    Some(code)
}

#[inline]
fn push_cmp(code: &mut Vec<u8>, byte: u8, bound: Option<&[u8]>, tight: &mut bool) -> bool {
    if *tight {
        let b = bound.expect("tight implies bound");
        match b.get(code.len()).map(|&x| byte.cmp(&x)) {
            Some(Ordering::Greater) => return false,
            Some(Ordering::Less) => *tight = false,
            _ => {}
        }
    }
    code.push(byte);
    true
}

fn min_rotation(seq: &[usize]) -> Vec<usize> {
    (0..seq.len())
        .map(|i| {
            let mut r = seq[i..].to_vec();
            r.extend_from_slice(&seq[..i]);
            r
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::fixtures;

    fn shuffled(g: &PlaneGraph, seed: u64) -> PlaneGraph {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        g.relabeled(&perm)
    }

    #[test]
    fn relabeling_preserves_code() {
        for g in [fixtures::octahedron(), fixtures::cube(), fixtures::icosahedron()] {
            let c = canonical_code(&g);
            for seed in 0..5 {
                assert_eq!(canonical_code(&shuffled(&g, seed)), c);
            }
        }
    }

    #[test]
    fn octahedron_and_cube_differ() {
        assert_ne!(
            canonical_code(&fixtures::octahedron()),
            canonical_code(&fixtures::cube())
        );
    }

    #[test]
    fn code_round_trips_through_graph() {
        for g in [fixtures::tetrahedron(), fixtures::cube(), fixtures::icosahedron()] {
            let c = canonical_code(&g);
            let back = c.to_graph().unwrap();
            assert_eq!(canonical_code(&back), c);
        }
    }

    #[test]
    fn hex_round_trip() {
        let c = canonical_code(&fixtures::cube());
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()), Some(c));
    }

    #[test]
    fn mirror_is_identified_only_when_unoriented() {
        let chiral = crate::plane_graph::polyhedra(8, 7)
            .into_iter()
            .find(|g| {
                canonical_code_with(g, Orientation::Oriented)
                    != canonical_code_with(&g.mirrored(), Orientation::Oriented)
            })
            .expect("some polyhedron on 8 vertices is chiral");
        assert_eq!(canonical_code(&chiral), canonical_code(&chiral.mirrored()));

        let ico = fixtures::icosahedron();
        assert_eq!(
            canonical_code_with(&ico, Orientation::Oriented),
            canonical_code_with(&ico.mirrored(), Orientation::Oriented)
        );
    }
}
