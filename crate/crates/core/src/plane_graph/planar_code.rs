//! The `planar_code` interchange format.
//!
//! A 15-byte header `>>planar_code<<` is followed by one record per graph:
//! the vertex count as one byte, then for every vertex its neighbours in
//! rotation order as 1-based bytes, each list closed by `0`. Isolated
//! vertices are written as empty lists; their face tags are not part of the
//! format, so decoded isolated vertices are unplaced.

use super::embed::embed_three_connected;
use super::{GraphError, PlaneGraph};

pub const PLANAR_CODE_HEADER: &[u8; 15] = b">>planar_code<<";

pub fn write_planar_code(graphs: &[PlaneGraph]) -> Vec<u8> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for g in graphs {
        assert!(g.vertex_count() <= 255, "single-byte planar code");
        out.push(g.vertex_count() as u8);
        for nbrs in g.rotation() {
            out.extend(nbrs.iter().map(|&u| (u + 1) as u8));
            out.push(0);
        }
    }
    out
}

pub fn read_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, GraphError> {
    let format = |offset: usize, msg: &str| GraphError::Format {
        offset,
        msg: msg.to_string(),
    };
    if bytes.len() < PLANAR_CODE_HEADER.len() || &bytes[..15] != PLANAR_CODE_HEADER {
        return Err(format(0, "missing >>planar_code<< header"));
    }
    let mut pos = PLANAR_CODE_HEADER.len();
    let mut graphs = Vec::new();
    while pos < bytes.len() {
        let record = pos;
        let n = bytes[pos] as usize;
        pos += 1;
        if n == 0 {
            return Err(format(record, "zero vertex count"));
        }
        let mut rotation = Vec::with_capacity(n);
        for _ in 0..n {
            let mut nbrs = Vec::new();
            loop {
                let b = *bytes
                    .get(pos)
                    .ok_or_else(|| format(pos, "truncated record"))?;
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n {
                    return Err(format(pos - 1, "neighbour index out of range"));
                }
                nbrs.push(b as usize - 1);
            }
            rotation.push(nbrs);
        }
        let g = match PlaneGraph::from_rotation(rotation.clone()) {
            Ok(g) => g,
            // neighbour lists that are not a rotation system: recover the
            // unique embedding when the graph is 3-connected planar
            Err(GraphError::Euler { .. }) => embed_three_connected(&rotation)
                .and_then(|r| PlaneGraph::from_rotation(r).ok())
                .ok_or_else(|| format(record, "adjacency lists are not a plane embedding"))?,
            Err(other) => return Err(format(record, &other.to_string())),
        };
        graphs.push(g);
    }
    Ok(graphs)
}
