use std::f64::consts::PI;

use super::{angular_dist, Embedding, GeomError, SpherePoint, GEOM_TOL};

/// Whether `v` can be moved so that its distance to every other point grows.
///
/// The relevant points are the graph neighbours of `v`, or for an isolated
/// vertex the points nearest to it. A strictly improving tangent direction
/// exists iff their directions leave an angular gap of at least `pi`.
pub fn vertex_shiftable(emb: &Embedding, v: usize) -> bool {
    let p = &emb.points[v];
    let tight: Vec<usize> = if emb.graph.degree(v) > 0 {
        emb.graph.neighbours(v).to_vec()
    } else {
        let dists: Vec<(usize, f64)> = (0..emb.points.len())
            .filter(|&u| u != v)
            .map(|u| (u, angular_dist(p, &emb.points[u])))
            .collect();
        let m = dists.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
        dists
            .into_iter()
            .filter(|&(_, r)| r <= m + GEOM_TOL)
            .map(|(u, _)| u)
            .collect()
    };
    if tight.len() < 3 {
        return true;
    }
    let dirs: Vec<_> = tight
        .iter()
        .filter_map(|&u| p.direction_to(&emb.points[u]))
        .collect();
    let e1 = dirs[0];
    let e2 = p.vec().cross(&e1);
    let mut angles: Vec<f64> = dirs.iter().map(|t| t.dot(&e2).atan2(t.dot(&e1))).collect();
    angles.sort_by(f64::total_cmp);
    let k = angles.len();
    let max_gap = (0..k)
        .map(|i| {
            let next = if i + 1 < k { angles[i + 1] } else { angles[0] + 2.0 * PI };
            next - angles[i]
        })
        .fold(0.0, f64::max);
    max_gap >= PI - GEOM_TOL
}

/// Reflection of `x` in the great circle through `y` and `z`, returned when
/// it clears every other point by more than `psi = d`.
pub fn d_flip(
    emb: &Embedding,
    x: usize,
    y: usize,
    z: usize,
) -> Result<Option<SpherePoint>, GeomError> {
    let n = emb.points[y].vec().cross(&emb.points[z].vec());
    if n.norm() < GEOM_TOL {
        return Err(GeomError::Degenerate(format!(
            "points {y} and {z} do not determine a great circle"
        )));
    }
    let n = n.normalize();
    let p = emb.points[x].vec();
    let h = p.dot(&n);
    if h.abs() <= GEOM_TOL {
        return Ok(None);
    }
    let flipped = SpherePoint::from_vec(p - n * (2.0 * h));
    let clears = (0..emb.points.len())
        .filter(|&w| w != x && w != y && w != z)
        .all(|w| angular_dist(&flipped, &emb.points[w]) > emb.d + GEOM_TOL);
    Ok(clears.then_some(flipped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{fixtures, PlaneGraph};
    use crate::sphere_geom::testing::octahedron_points;
    use crate::sphere_geom::{contact_graph, psi};
    use std::f64::consts::FRAC_PI_2;

    fn embedding(points: Vec<SpherePoint>) -> Embedding {
        let d = psi(&points).unwrap();
        let g = contact_graph(&points).unwrap();
        Embedding::new(g, points, d)
    }

    #[test]
    fn three_directions_at_120_degrees_jam() {
        let d = 1.0;
        let c = SpherePoint::new(0.0, 0.0, 1.0);
        let mut pts = vec![c];
        for k in 0..3 {
            pts.push(SpherePoint::from_polar(d, 2.0 * PI * k as f64 / 3.0));
        }
        let emb = embedding(pts);
        assert_eq!(emb.graph.degree(0), 3);
        assert!(!vertex_shiftable(&emb, 0));
    }

    #[test]
    fn directions_in_a_half_plane_shift() {
        let d = 0.8;
        let mut pts = vec![SpherePoint::new(0.0, 0.0, 1.0)];
        for phi in [0.0, 1.4, 2.8] {
            pts.push(SpherePoint::from_polar(d, phi));
        }
        let emb = embedding(pts);
        assert!(emb.graph.degree(0) == 3);
        assert!(vertex_shiftable(&emb, 0));
    }

    #[test]
    fn degree_two_vertices_shift() {
        let d = 1.0;
        let pts = vec![
            SpherePoint::new(0.0, 0.0, 1.0),
            SpherePoint::from_polar(d, 0.0),
            SpherePoint::from_polar(d, 2.5),
        ];
        let rot = vec![vec![1, 2], vec![0, 2], vec![1, 0]];
        let g = PlaneGraph::from_rotation(rot).unwrap();
        let emb = Embedding::new(g, pts, d);
        assert!(vertex_shiftable(&emb, 0));
    }

    #[test]
    fn octahedron_vertices_are_jammed() {
        let emb = Embedding::new(fixtures::octahedron(), octahedron_points(), FRAC_PI_2);
        for v in 0..6 {
            assert!(!vertex_shiftable(&emb, v));
        }
    }

    fn loose(points: Vec<SpherePoint>, d: f64) -> Embedding {
        let n = points.len();
        Embedding {
            graph: PlaneGraph::from_rotation(vec![Vec::new(); n]).unwrap(),
            points,
            d,
        }
    }

    #[test]
    fn flip_of_point_on_the_circle_is_none() {
        let d = 0.9;
        let pts = (0..3).map(|k| SpherePoint::from_polar(FRAC_PI_2, k as f64 * d)).collect();
        let emb = loose(pts, d);
        assert_eq!(d_flip(&emb, 1, 0, 2).unwrap(), None);
    }

    #[test]
    fn antipodal_pivots_are_degenerate() {
        let emb = Embedding::new(fixtures::octahedron(), octahedron_points(), FRAC_PI_2);
        assert!(matches!(d_flip(&emb, 0, 2, 3), Err(GeomError::Degenerate(_))));
    }

    #[test]
    fn symmetric_flip_gains_nothing() {
        // reflecting +z across the circle through +x and +y lands on -z,
        // which is already occupied
        let emb = Embedding::new(fixtures::octahedron(), octahedron_points(), FRAC_PI_2);
        assert_eq!(d_flip(&emb, 4, 0, 2).unwrap(), None);
    }

    #[test]
    fn constructed_flip_clears_everything() {
        // y, z on the equator, x above them and w at the north pole
        let d = 1.0;
        let y = SpherePoint::from_polar(FRAC_PI_2, 0.0);
        let z = SpherePoint::from_polar(FRAC_PI_2, d);
        // x at distance d from both, above the equator
        let mid = SpherePoint::from_polar(FRAC_PI_2, 0.5 * d);
        let h = ((d.cos()) / (0.5 * d).cos()).acos();
        let x = SpherePoint::from_vec(mid.vec() * h.cos() + nalgebra::Vector3::z() * h.sin());
        let w = SpherePoint::from_polar(0.0, 0.0);
        let pts = vec![x, y, z, w];

        let emb = loose(pts, d);
        assert!((angular_dist(&x, &y) - d).abs() < 1e-12);
        let flipped = d_flip(&emb, 0, 1, 2).unwrap().expect("flip clears w");
        assert!((angular_dist(&flipped, &y) - d).abs() < 1e-12);
        assert!(angular_dist(&flipped, &w) > d);
        assert!(flipped.z < 0.0);
    }
}
