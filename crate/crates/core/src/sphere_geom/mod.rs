//! Spherical trigonometry on the unit sphere.
//!
//! Distances are great-circle distances in radians. Polygons are listed
//! counter-clockwise as seen from outside the sphere, matching the rotation
//! convention of [`crate::plane_graph`].

mod polygon;
mod shift;
mod trig;

use nalgebra::{Matrix3, Vector3};

use crate::plane_graph::{trace_faces, GraphError, PlaneGraph};

pub use polygon::{lambda_maxmin, polygon_complete, Completion, MaxMin, SphericalPolygon};
pub use shift::{d_flip, vertex_shiftable};
pub use trig::{alpha, loc_angle, loc_side, quad_opposite, regular_angle};

/// Geometric equality tolerance (radians).
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeomError {
    #[error("{what} = {value} is outside its domain")]
    Domain { what: &'static str, value: f64 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A point on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    /// Normalises `(x, y, z)`.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self::from_vec(Vector3::new(x, y, z))
    }

    pub fn from_vec(v: Vector3<f64>) -> Self {
        let v = v.normalize();
        SpherePoint {
            x: v.x,
            y: v.y,
            z: v.z,
        }
    }

    /// Point at colatitude `theta` and longitude `phi`.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        SpherePoint::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
    }

    pub fn vec(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn antipode(&self) -> Self {
        SpherePoint {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Unit tangent at `self` pointing along the geodesic towards `q`.
    pub fn direction_to(&self, q: &SpherePoint) -> Option<Vector3<f64>> {
        let p = self.vec();
        let t = q.vec() - p * p.dot(&q.vec());
        let n = t.norm();
        (n > 1e-15).then(|| t / n)
    }

    /// Point at distance `dist` from `self` along tangent direction `t`.
    pub fn travel(&self, t: &Vector3<f64>, dist: f64) -> SpherePoint {
        SpherePoint::from_vec(self.vec() * dist.cos() + t * dist.sin())
    }
}

/// Great-circle distance, computed stably over the whole range `[0, pi]`.
pub fn angular_dist(p: &SpherePoint, q: &SpherePoint) -> f64 {
    let (a, b) = (p.vec(), q.vec());
    a.cross(&b).norm().atan2(a.dot(&b))
}

/// `det(a, b, c)`: positive when `a, b, c` turn counter-clockwise seen from
/// outside.
pub fn det3(a: &SpherePoint, b: &SpherePoint, c: &SpherePoint) -> f64 {
    Matrix3::from_columns(&[a.vec(), b.vec(), c.vec()]).determinant()
}

/// Points realising a plane graph with common edge length `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub graph: PlaneGraph,
    pub points: Vec<SpherePoint>,
    pub d: f64,
}

impl Embedding {
    pub fn new(graph: PlaneGraph, points: Vec<SpherePoint>, d: f64) -> Self {
        assert_eq!(graph.vertex_count(), points.len(), "one point per vertex");
        Embedding { graph, points, d }
    }

    pub fn dist(&self, u: usize, v: usize) -> f64 {
        angular_dist(&self.points[u], &self.points[v])
    }

    /// Largest violation of the embedding conditions: edges at length `d`,
    /// non-adjacent pairs at least `d`, and `psi = d`.
    pub fn residual(&self) -> f64 {
        let n = self.points.len();
        let mut worst: f64 = 0.0;
        for u in 0..n {
            for v in u + 1..n {
                let r = self.dist(u, v) - self.d;
                if self.graph.is_adjacent(u, v) {
                    worst = worst.max(r.abs());
                } else {
                    worst = worst.max(-r);
                }
            }
        }
        worst
    }

    /// Smallest gap `dist - d` over non-adjacent pairs.
    pub fn non_edge_gap(&self) -> f64 {
        let n = self.points.len();
        let mut gap = f64::INFINITY;
        for u in 0..n {
            for v in u + 1..n {
                if !self.graph.is_adjacent(u, v) {
                    gap = gap.min(self.dist(u, v) - self.d);
                }
            }
        }
        gap
    }

    /// Checks that the contact graph of the points is exactly the stored
    /// graph, faces included.
    pub fn reproduces_graph(&self, tol: f64) -> bool {
        match contact_graph_with_tol(&self.points, tol) {
            Ok(g) => {
                crate::plane_graph::canonical_code(&g)
                    == crate::plane_graph::canonical_code(&self.graph)
            }
            Err(_) => false,
        }
    }
}

/// Minimum pairwise distance.
pub fn psi(points: &[SpherePoint]) -> Result<f64, GeomError> {
    if points.len() < 2 {
        return Err(GeomError::Degenerate("fewer than two points".into()));
    }
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min(angular_dist(p, q));
        }
    }
    if best < GEOM_TOL {
        return Err(GeomError::Degenerate("coincident points".into()));
    }
    Ok(best)
}

/// Contact graph with the default tolerance.
pub fn contact_graph(points: &[SpherePoint]) -> Result<PlaneGraph, GeomError> {
    contact_graph_with_tol(points, GEOM_TOL)
}

/// Graph joining pairs at distance within `tol` of `psi`, with rotations read
/// off the tangent directions and isolated vertices placed in the face that
/// contains them.
pub fn contact_graph_with_tol(points: &[SpherePoint], tol: f64) -> Result<PlaneGraph, GeomError> {
    let m = psi(points)?;
    let n = points.len();
    let mut rotation = vec![Vec::new(); n];
    for v in 0..n {
        let p = points[v].vec();
        let mut nbrs: Vec<(f64, usize)> = Vec::new();
        let mut frame: Option<(Vector3<f64>, Vector3<f64>)> = None;
        for u in 0..n {
            if u == v || angular_dist(&points[u], &points[v]) > m + tol {
                continue;
            }
            let t = points[v]
                .direction_to(&points[u])
                .ok_or_else(|| GeomError::Degenerate("antipodal contact direction".into()))?;
            let (e1, e2) = *frame.get_or_insert_with(|| (t, p.cross(&t)));
            nbrs.push((t.dot(&e2).atan2(t.dot(&e1)), u));
        }
        nbrs.sort_by(|a, b| a.0.total_cmp(&b.0));
        rotation[v] = nbrs.into_iter().map(|(_, u)| u).collect();
    }
    let g = PlaneGraph::from_rotation(rotation.clone())?;
    let isolated = g.isolated();
    if isolated.is_empty() || isolated.len() == n {
        return Ok(g);
    }
    let faces = trace_faces(&g)?;
    let mut placement = Vec::new();
    for v in isolated {
        let face = faces
            .iter()
            .find(|f| {
                let vs = f.vertices();
                (0..vs.len()).all(|i| {
                    det3(&points[vs[i]], &points[vs[(i + 1) % vs.len()]], &points[v]) > 0.0
                })
            })
            .ok_or_else(|| GeomError::Degenerate(format!("vertex {v} lies in no face")))?;
        placement.push((v, face.id));
    }
    Ok(PlaneGraph::with_placement(rotation, placement)?)
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    /// Vertex coordinates matching [`crate::plane_graph::fixtures::octahedron`].
    pub fn octahedron_points() -> Vec<SpherePoint> {
        vec![
            SpherePoint::new(1.0, 0.0, 0.0),
            SpherePoint::new(-1.0, 0.0, 0.0),
            SpherePoint::new(0.0, 1.0, 0.0),
            SpherePoint::new(0.0, -1.0, 0.0),
            SpherePoint::new(0.0, 0.0, 1.0),
            SpherePoint::new(0.0, 0.0, -1.0),
        ]
    }

    /// Vertex coordinates matching [`crate::plane_graph::fixtures::icosahedron`]:
    /// top, upper ring, lower ring, bottom.
    pub fn icosahedron_points() -> Vec<SpherePoint> {
        let t = (1.0f64 / 5f64.sqrt()).acos();
        let mut pts = vec![SpherePoint::new(0.0, 0.0, 1.0)];
        for k in 0..5 {
            pts.push(SpherePoint::from_polar(t, 2.0 * std::f64::consts::PI * k as f64 / 5.0));
        }
        for k in 0..5 {
            let phi = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / 5.0;
            pts.push(SpherePoint::from_polar(std::f64::consts::PI - t, phi));
        }
        pts.push(SpherePoint::new(0.0, 0.0, -1.0));
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::plane_graph::{canonical_code, fixtures};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn oriented(g: &PlaneGraph) -> crate::plane_graph::CanonicalCode {
        crate::plane_graph::canonical_code_with(g, crate::plane_graph::Orientation::Oriented)
    }

    #[test]
    fn distances() {
        let p = SpherePoint::new(1.0, 0.0, 0.0);
        let q = SpherePoint::new(0.0, 1.0, 0.0);
        assert_eq!(angular_dist(&p, &p), 0.0);
        assert!((angular_dist(&p, &p.antipode()) - PI).abs() < 1e-15);
        assert!((angular_dist(&p, &q) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(angular_dist(&p, &q), angular_dist(&q, &p));
    }

    #[test]
    fn octahedron_contact_graph() {
        let pts = octahedron_points();
        assert!((psi(&pts).unwrap() - FRAC_PI_2).abs() < 1e-12);
        let g = contact_graph(&pts).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(canonical_code(&g), canonical_code(&fixtures::octahedron()));
        // the fixture's rotation is the geometric one, not its mirror
        assert_eq!(oriented(&g), oriented(&fixtures::octahedron()));
    }

    #[test]
    fn antipodal_pair() {
        let p = SpherePoint::new(0.0, 0.0, 1.0);
        let pts = [p, p.antipode()];
        assert!((psi(&pts).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn icosahedron_contact_graph() {
        let pts = icosahedron_points();
        let d = psi(&pts).unwrap();
        assert!((d - (1.0 / 5f64.sqrt()).acos()).abs() < 1e-12);
        let g = contact_graph(&pts).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert_eq!(oriented(&g), oriented(&fixtures::icosahedron()));
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let p = SpherePoint::new(0.0, 0.0, 1.0);
        assert!(matches!(psi(&[p, p]), Err(GeomError::Degenerate(_))));
        assert!(psi(&[p]).is_err());
    }

    #[test]
    fn embedding_residual_of_octahedron() {
        let e = Embedding::new(fixtures::octahedron(), octahedron_points(), FRAC_PI_2);
        assert!(e.residual() < 1e-12);
        assert!((e.non_edge_gap() - FRAC_PI_2).abs() < 1e-12);
        assert!(e.reproduces_graph(1e-9));
    }
}
