use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Rotation3, Unit, Vector3};

use super::{angular_dist, det3, GeomError, SpherePoint, GEOM_TOL};

/// Convex equilateral spherical polygon, vertices counter-clockwise from
/// outside.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    pub vertices: Vec<SpherePoint>,
    pub side: f64,
}

impl SphericalPolygon {
    /// Validates convexity and equal sides (within `GEOM_TOL`).
    pub fn new(vertices: Vec<SpherePoint>, side: f64) -> Result<Self, GeomError> {
        let m = vertices.len();
        if m < 3 {
            return Err(GeomError::Degenerate("polygon with fewer than 3 vertices".into()));
        }
        for i in 0..m {
            let s = angular_dist(&vertices[i], &vertices[(i + 1) % m]);
            if (s - side).abs() > GEOM_TOL {
                return Err(GeomError::Infeasible(format!("side {i} has length {s}, not {side}")));
            }
        }
        let poly = SphericalPolygon { vertices, side };
        for (i, u) in poly.angles().into_iter().enumerate() {
            if !(u > 0.0 && u < PI) {
                return Err(GeomError::Infeasible(format!("angle {i} = {u} is not convex")));
            }
        }
        Ok(poly)
    }

    /// Regular polygon centred on the north pole.
    pub fn regular(m: usize, side: f64) -> Result<Self, GeomError> {
        let half = PI / m as f64;
        let sin_r = (0.5 * side).sin() / half.sin();
        if m < 3 || !(side > 0.0) || sin_r >= 1.0 {
            return Err(GeomError::Domain { what: "side", value: side });
        }
        let r = sin_r.asin();
        let vertices = (0..m)
            .map(|k| SpherePoint::from_polar(r, 2.0 * half * k as f64))
            .collect();
        Ok(SphericalPolygon { vertices, side })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Interior angles in vertex order.
    pub fn angles(&self) -> Vec<f64> {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                corner_angle(
                    &self.vertices[i],
                    &self.vertices[(i + m - 1) % m],
                    &self.vertices[(i + 1) % m],
                )
            })
            .collect()
    }

    /// Closed containment test with slack `tol` on each edge determinant.
    pub fn contains(&self, p: &SpherePoint, tol: f64) -> bool {
        let m = self.vertices.len();
        (0..m).all(|i| det3(&self.vertices[i], &self.vertices[(i + 1) % m], p) >= -tol)
    }
}

/// Interior angle at `v` of a counter-clockwise polygon with neighbours
/// `prev` and `next`: the counter-clockwise turn from `next` to `prev`.
pub(crate) fn corner_angle(v: &SpherePoint, prev: &SpherePoint, next: &SpherePoint) -> f64 {
    let (Some(tp), Some(tn)) = (v.direction_to(prev), v.direction_to(next)) else {
        return f64::NAN;
    };
    v.vec().dot(&tn.cross(&tp)).atan2(tn.dot(&tp))
}

/// Tangent at `v` rotated counter-clockwise (from outside) by `angle`.
pub(crate) fn turn(v: &SpherePoint, t: &Vector3<f64>, angle: f64) -> Vector3<f64> {
    Rotation3::from_axis_angle(&Unit::new_normalize(v.vec()), angle) * t
}

/// A polygon rebuilt from its free angles.
#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    /// All `m` interior angles.
    pub angles: Vec<f64>,
    /// Distances between non-adjacent vertices, keyed `(i, j)` with `i < j`.
    pub diagonals: BTreeMap<(usize, usize), f64>,
    pub polygon: SphericalPolygon,
}

/// Rebuilds the equilateral polygon with side `d` from the angles
/// `u_0, ..., u_{m-4}` at vertices `A_0, ..., A_{m-4}` and returns the three
/// remaining angles together with all diagonals.
///
/// Vertex `A_{m-1}` follows from `u_0`, then `A_2, ..., A_{m-3}` by walking
/// forward; `A_{m-2}` closes the polygon at distance `d` from both
/// neighbours.
pub fn polygon_complete(free: &[f64], d: f64, m: usize) -> Result<Completion, GeomError> {
    if m < 4 {
        return Err(GeomError::Domain { what: "m", value: m as f64 });
    }
    if free.len() != m - 3 {
        return Err(GeomError::Domain { what: "free angle count", value: free.len() as f64 });
    }
    if !(d > 0.0 && d < PI) {
        return Err(GeomError::Domain { what: "d", value: d });
    }
    for (i, &u) in free.iter().enumerate() {
        if !(u > 0.0 && u < PI) {
            return Err(GeomError::Infeasible(format!("free angle u_{i} = {u} outside (0, pi)")));
        }
    }
    let mut pts = vec![SpherePoint::new(0.0, 0.0, 1.0); m];
    let t0 = Vector3::new(1.0, 0.0, 0.0);
    pts[1] = pts[0].travel(&t0, d);
    pts[m - 1] = pts[0].travel(&turn(&pts[0], &t0, free[0]), d);
    for i in 1..m - 3 {
        let back = pts[i].direction_to(&pts[i - 1]).expect("distinct points");
        let fwd = turn(&pts[i], &back, -free[i]);
        pts[i + 1] = pts[i].travel(&fwd, d);
    }
    let (p, q) = (pts[m - 3].vec(), pts[m - 1].vec());
    let pq = p.dot(&q);
    let a = d.cos() / (1.0 + pq);
    let b2 = 1.0 - 2.0 * a * a * (1.0 + pq);
    let cross = p.cross(&q);
    if b2 < 0.0 || cross.norm() < 1e-14 {
        return Err(GeomError::Infeasible(format!(
            "polygon does not close: dist(A_{}, A_{}) = {} exceeds 2d = {}",
            m - 3,
            m - 1,
            angular_dist(&pts[m - 3], &pts[m - 1]),
            2.0 * d
        )));
    }
    let n = cross.normalize();
    let base = (p + q) * a;
    let convex = |u: &f64| *u > 0.0 && *u < PI;
    let mut attempt = None;
    for sign in [1.0, -1.0] {
        pts[m - 2] = SpherePoint::from_vec(base + n * (sign * b2.sqrt()));
        let polygon = SphericalPolygon { vertices: pts.clone(), side: d };
        let angles = polygon.angles();
        let ok = angles.iter().all(convex);
        if ok || attempt.is_none() {
            attempt = Some((polygon, angles));
        }
        if ok {
            break;
        }
    }
    let (polygon, angles) = attempt.expect("two closing candidates");
    if let Some((i, u)) = angles.iter().enumerate().find(|(_, u)| !convex(u)) {
        return Err(GeomError::Infeasible(format!("angle u_{i} = {u} is not convex")));
    }
    let turning: f64 = angles.iter().map(|u| PI - u).sum();
    if turning >= 2.0 * PI {
        return Err(GeomError::Infeasible(format!(
            "boundary winds more than once (turning {turning})"
        )));
    }
    let mut diagonals = BTreeMap::new();
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            diagonals.insert((i, j), angular_dist(&polygon.vertices[i], &polygon.vertices[j]));
        }
    }
    Ok(Completion { angles, diagonals, polygon })
}

/// Largest empty circle centred in a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxMin {
    /// `max_{p in F} min_i dist(p, A_i)`.
    pub value: f64,
    pub point: SpherePoint,
    /// Vertices at distance `value` (within `GEOM_TOL`) from `point`.
    pub nearest: Vec<usize>,
}

fn min_dist(vertices: &[SpherePoint], p: &SpherePoint) -> f64 {
    vertices
        .iter()
        .map(|a| angular_dist(a, p))
        .fold(f64::INFINITY, f64::min)
}

/// Maximin distance from the polygon's vertices over the closed polygon.
///
/// The optimum is a vertex of the spherical Voronoi diagram of the polygon
/// vertices or a crossing of a Voronoi edge with the boundary, so circumcentres
/// of vertex triples and bisector/edge intersections are enumerated. A zoomed
/// grid search is the fallback.
pub fn lambda_maxmin(poly: &SphericalPolygon) -> MaxMin {
    let v = &poly.vertices;
    let m = v.len();
    let tol = 1e-12;
    let mut best: Option<(f64, SpherePoint)> = None;
    let mut consider = |p: SpherePoint| {
        if poly.contains(&p, tol) {
            let val = min_dist(v, &p);
            if best.is_none_or(|(b, _)| val > b) {
                best = Some((val, p));
            }
        }
    };
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let n = (v[j].vec() - v[i].vec()).cross(&(v[k].vec() - v[i].vec()));
                if n.norm() > 1e-14 {
                    consider(SpherePoint::from_vec(n));
                    consider(SpherePoint::from_vec(-n));
                }
            }
        }
    }
    for e in 0..m {
        let plane = v[e].vec().cross(&v[(e + 1) % m].vec());
        for i in 0..m {
            for j in i + 1..m {
                let dir = (v[i].vec() - v[j].vec()).cross(&plane);
                if dir.norm() > 1e-14 {
                    consider(SpherePoint::from_vec(dir));
                    consider(SpherePoint::from_vec(-dir));
                }
            }
        }
    }
    let (value, point) = best.unwrap_or_else(|| grid_maxmin(poly));
    let nearest = (0..m)
        .filter(|&i| angular_dist(&v[i], &point) <= value + GEOM_TOL)
        .collect();
    MaxMin { value, point, nearest }
}

/// Grid search on the gnomonic chart around the vertex centroid, zooming in
/// on the best cell.
fn grid_maxmin(poly: &SphericalPolygon) -> (f64, SpherePoint) {
    let v = &poly.vertices;
    let c = v.iter().fold(Vector3::zeros(), |acc, p| acc + p.vec()).normalize();
    let e1 = c.cross(&Vector3::new(0.3, 0.5, 0.8)).normalize();
    let e2 = c.cross(&e1);
    let chart = |x: f64, y: f64| SpherePoint::from_vec(c + e1 * x + e2 * y);
    let mut center = (0.0, 0.0);
    let mut half = v
        .iter()
        .map(|p| {
            let w = p.vec() / p.vec().dot(&c);
            (w - c).norm()
        })
        .fold(0.0, f64::max);
    let mut best = (min_dist(v, &SpherePoint::from_vec(c)), SpherePoint::from_vec(c));
    while half > 1e-13 {
        let steps = 20;
        for a in 0..=steps {
            for b in 0..=steps {
                let x = center.0 - half + 2.0 * half * a as f64 / steps as f64;
                let y = center.1 - half + 2.0 * half * b as f64 / steps as f64;
                let p = chart(x, y);
                if poly.contains(&p, 0.0) {
                    let val = min_dist(v, &p);
                    if val > best.0 {
                        best = (val, p);
                        let w = p.vec() / p.vec().dot(&c) - c;
                        center = (w.dot(&e1), w.dot(&e2));
                    }
                }
            }
        }
        half *= 0.25;
    }
    best
}
