use super::{GraphError, PlaneGraph};

/// The corner of a face at `vertex`: the angular sector swept
/// counter-clockwise from `rotation[vertex][slot]` to
/// `rotation[vertex][slot + 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertex: usize,
    pub slot: usize,
}

/// A face of the embedding. The boundary is listed so that the face lies to
/// the left of every boundary edge, i.e. counter-clockwise around the face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<Corner>,
}

impl Face {
    /// Number of boundary corners.
    pub fn size(&self) -> usize {
        self.boundary.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.boundary.iter().map(|c| c.vertex).collect()
    }

    /// Whether the boundary walk visits every vertex once.
    pub fn is_simple(&self) -> bool {
        let mut v = self.vertices();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }
}

/// Traces the faces of the rotation system, ordered by their first dart.
///
/// Walking dart `u -> v`, the next dart leaves `v` towards the neighbour that
/// precedes `u` in the counter-clockwise rotation of `v`.
pub fn trace_faces(g: &PlaneGraph) -> Result<Vec<Face>, GraphError> {
    let n = g.vertex_count();
    let rot = g.rotation();
    // symmetric adjacency is required for the walk to close
    for (v, nbrs) in rot.iter().enumerate() {
        for &u in nbrs {
            if u >= n {
                return Err(GraphError::OutOfRange { v, neighbour: u });
            }
            if !rot[u].contains(&v) {
                return Err(GraphError::Asymmetric { u: v, v: u });
            }
        }
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for r in rot {
        offsets.push(total);
        total += r.len();
    }
    let mut used = vec![false; total];
    let mut faces = Vec::new();
    for start_v in 0..n {
        for start_i in 0..rot[start_v].len() {
            if used[offsets[start_v] + start_i] {
                continue;
            }
            let mut boundary = Vec::new();
            let (mut v, mut i) = (start_v, start_i);
            loop {
                used[offsets[v] + i] = true;
                let w = rot[v][i];
                let j = rot[w].iter().position(|&x| x == v).expect("symmetric");
                let k = rot[w].len();
                let next = (j + k - 1) % k;
                boundary.push(Corner {
                    vertex: w,
                    slot: next,
                });
                v = w;
                i = next;
                if v == start_v && i == start_i {
                    break;
                }
                if boundary.len() > total {
                    return Err(GraphError::Asymmetric { u: v, v: w });
                }
            }
            // start the listing at the corner of the first dart's tail
            boundary.rotate_right(1);
            faces.push(Face {
                id: faces.len(),
                boundary,
            });
        }
    }
    Ok(faces)
}

/// Face having the dart `u -> v` on its boundary.
pub(crate) fn face_of_dart(faces: &[Face], u: usize, v: usize) -> Option<usize> {
    faces.iter().position(|f| {
        let vs = f.vertices();
        (0..vs.len()).any(|i| vs[i] == u && vs[(i + 1) % vs.len()] == v)
    })
}
