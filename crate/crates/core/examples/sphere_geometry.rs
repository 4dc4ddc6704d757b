//! Spherical trigonometry building blocks.
//!
//! ```text
//! cargo run --example sphere_geometry
//! ```

use std::f64::consts::PI;

use sphere_contact::sphere_geom::{
    alpha, contact_graph, lambda_maxmin, loc_angle, loc_side, polygon_complete, psi, quad_opposite, regular_angle,
    SpherePoint, SphericalPolygon,
};

fn main() {
    for d in [PI / 3.0, 1.1, PI / 2.0] {
        println!("d={d:.5}  alpha={:.6}  rhombus(pi/2)={:.6}", alpha(d).unwrap(), quad_opposite(PI / 2.0, d).unwrap());
    }

    let side = loc_side(1.0, 1.2, 0.8).unwrap();
    println!("side opposite 0.8 between 1.0 and 1.2: {side:.9}; back {:.12}", loc_angle(1.0, 1.2, side).unwrap());

    // a pentagon of side 1 with two angles fixed
    let c = polygon_complete(&[2.0, 2.1], 1.0, 5).unwrap();
    println!("pentagon angles {:.5?}", c.angles);
    for ((i, j), z) in &c.diagonals {
        println!("  diagonal {i}-{j}: {z:.6}");
    }
    println!("regular pentagon angle at d=1: {:.6}", regular_angle(5, 1.0).unwrap());

    let hex = SphericalPolygon::regular(6, 1.0).unwrap();
    let l = lambda_maxmin(&hex);
    println!("regular hexagon side 1: lambda={:.6} touching {} vertices", l.value, l.nearest.len());

    let axes: Vec<SpherePoint> = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
    .iter()
    .map(|&[x, y, z]| SpherePoint::new(x, y, z))
    .collect();
    let g = contact_graph(&axes).unwrap();
    println!("octahedron: psi={:.6} edges={}", psi(&axes).unwrap(), g.edge_count());
}
