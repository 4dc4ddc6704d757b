//! Starting coordinates from Tutte's barycentric embedding.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane_graph::{Face, PlaneGraph};
use crate::sphere_geom::{det3, SpherePoint};

/// Barycentric (Tutte) drawing with `outer` pinned to a regular polygon of
/// the given radius; isolated vertices sit at their host face centroid.
pub fn tutte_layout(g: &PlaneGraph, faces: &[Face], outer: usize, radius: f64) -> Vec<[f64; 2]> {
    let n = g.vertex_count();
    let boundary = faces[outer].vertices();
    let m = boundary.len();
    let mut pos = vec![[0.0f64; 2]; n];
    let mut pinned = vec![false; n];
    for (k, &v) in boundary.iter().enumerate() {
        let th = 2.0 * PI * k as f64 / m as f64;
        pos[v] = [radius * th.cos(), radius * th.sin()];
        pinned[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !pinned[v] && g.degree(v) > 0).collect();
    if !free.is_empty() {
        let idx: Vec<Option<usize>> = (0..n).map(|v| free.iter().position(|&w| w == v)).collect();
        let k = free.len();
        let mut a = DMatrix::zeros(k, k);
        let mut b = DMatrix::zeros(k, 2);
        for (row, &v) in free.iter().enumerate() {
            a[(row, row)] = g.degree(v) as f64;
            for &u in g.neighbours(v) {
                match idx[u] {
                    Some(col) => a[(row, col)] -= 1.0,
                    None => {
                        b[(row, 0)] += pos[u][0];
                        b[(row, 1)] += pos[u][1];
                    }
                }
            }
        }
        if let Some(sol) = a.lu().solve(&b) {
            for (row, &v) in free.iter().enumerate() {
                pos[v] = [sol[(row, 0)], sol[(row, 1)]];
            }
        }
    }
    for (&w, &fid) in g.placement() {
        let vs = faces[fid].vertices();
        let k = vs.len() as f64;
        pos[w] = [
            vs.iter().map(|&v| pos[v][0]).sum::<f64>() / k,
            vs.iter().map(|&v| pos[v][1]).sum::<f64>() / k,
        ];
    }
    pos
}

/// [`tutte_layout`] lifted to the sphere by inverse stereographic projection
/// so that the outer face becomes a cap of angular radius `cap` around the
/// north pole.
pub(crate) fn tutte_start(g: &PlaneGraph, faces: &[Face], outer: usize, cap: f64) -> Vec<SpherePoint> {
    let pos = tutte_layout(g, faces, outer, 1.0 / (0.5 * cap).tan());
    let mut pts: Vec<SpherePoint> = pos
        .iter()
        .map(|&[x, y]| {
            let r2 = x * x + y * y;
            SpherePoint::new(2.0 * x, 2.0 * y, r2 - 1.0)
        })
        .collect();
    for (&w, &fid) in g.placement() {
        let c: Vector3<f64> = faces[fid].vertices().iter().map(|&v| pts[v].vec()).sum();
        pts[w] = SpherePoint::from_vec(c);
    }
    orient(faces, &mut pts);
    pts
}

/// Mirrors the points if most face corners turn clockwise.
pub(crate) fn orient(faces: &[Face], pts: &mut [SpherePoint]) {
    let mut score = 0.0;
    for f in faces {
        let vs = f.vertices();
        let m = vs.len();
        for i in 0..m {
            score += det3(&pts[vs[i]], &pts[vs[(i + 1) % m]], &pts[vs[(i + m - 1) % m]]).signum();
        }
    }
    if score < 0.0 {
        for p in pts.iter_mut() {
            p.x = -p.x;
        }
    }
}

/// Deterministic random perturbation of every point by up to `amount`.
pub(crate) fn jitter(pts: &[SpherePoint], amount: f64, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.iter()
        .map(|p| {
            let e = Vector3::new(
                rng.gen_range(-amount..=amount),
                rng.gen_range(-amount..=amount),
                rng.gen_range(-amount..=amount),
            );
            SpherePoint::from_vec(p.vec() + e)
        })
        .collect()
}

/// Flattened `[p_0, ..., p_{n-1}, t]`.
pub(crate) fn pack(pts: &[SpherePoint], t: f64) -> Vec<f64> {
    let mut x: Vec<f64> = pts.iter().flat_map(|p| [p.x, p.y, p.z]).collect();
    x.push(t);
    x
}

pub(crate) fn unpack(x: &[f64]) -> (Vec<SpherePoint>, f64) {
    let n = (x.len() - 1) / 3;
    let pts = (0..n)
        .map(|v| SpherePoint::new(x[3 * v], x[3 * v + 1], x[3 * v + 2]))
        .collect();
    (pts, x[3 * n])
}
