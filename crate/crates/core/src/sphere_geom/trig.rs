use std::f64::consts::{FRAC_PI_2, PI};

use super::GeomError;

fn domain(what: &'static str, value: f64) -> GeomError {
    GeomError::Domain { what, value }
}

/// Angle of the equilateral spherical triangle with side `d`.
pub fn alpha(d: f64) -> Result<f64, GeomError> {
    if !(d > 0.0 && d < 2.0 * PI / 3.0) {
        return Err(domain("d", d));
    }
    let c = d.cos();
    Ok((c / (1.0 + c)).clamp(-1.0, 1.0).acos())
}

/// Side opposite the angle `phi` between sides `t1` and `t2`.
pub fn loc_side(t1: f64, t2: f64, phi: f64) -> Result<f64, GeomError> {
    for (what, v) in [("theta1", t1), ("theta2", t2), ("phi", phi)] {
        if !(v > 0.0 && v < PI) {
            return Err(domain(what, v));
        }
    }
    // explicit vectors keep the result accurate near 0 and pi
    let b = [t1.sin(), 0.0, t1.cos()];
    let c = [t2.sin() * phi.cos(), t2.sin() * phi.sin(), t2.cos()];
    let dot = b[0] * c[0] + b[1] * c[1] + b[2] * c[2];
    let cross = [
        b[1] * c[2] - b[2] * c[1],
        b[2] * c[0] - b[0] * c[2],
        b[0] * c[1] - b[1] * c[0],
    ];
    let s = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    Ok(s.atan2(dot))
}

/// Angle between sides `t1` and `t2` of the triangle whose third side is
/// `side` (half-angle formula).
pub fn loc_angle(t1: f64, t2: f64, side: f64) -> Result<f64, GeomError> {
    for (what, v) in [("theta1", t1), ("theta2", t2), ("side", side)] {
        if !(v > 0.0 && v < PI) {
            return Err(domain(what, v));
        }
    }
    let s = 0.5 * (t1 + t2 + side);
    let num = (s - t1).sin() * (s - t2).sin();
    let den = s.sin() * (s - side).sin();
    if num < 0.0 || den <= 0.0 || s >= PI || side <= (t1 - t2).abs() {
        return Err(GeomError::Infeasible(format!(
            "sides {t1}, {t2}, {side} violate the triangle inequality"
        )));
    }
    Ok(2.0 * num.sqrt().atan2(den.sqrt()))
}

/// The rhombus function: the angle `u2` adjacent to `u1` in an equilateral
/// spherical quadrilateral with side `d`, from `cot(u1/2) cot(u2/2) = cos d`.
pub fn quad_opposite(u1: f64, d: f64) -> Result<f64, GeomError> {
    if !(u1 > 0.0 && u1 < PI) {
        return Err(GeomError::Infeasible(format!("u1 = {u1} outside (0, pi)")));
    }
    if !(d > 0.0 && d < FRAC_PI_2) {
        return Err(GeomError::Infeasible(format!("d = {d} outside (0, pi/2)")));
    }
    Ok(2.0 * 1.0f64.atan2(d.cos() * (0.5 * u1).tan()))
}

/// Interior angle of the regular spherical `m`-gon with side `d`.
pub fn regular_angle(m: usize, d: f64) -> Result<f64, GeomError> {
    if m < 3 {
        return Err(domain("m", m as f64));
    }
    let half = PI / m as f64;
    let sin_r = (0.5 * d).sin() / half.sin();
    if !(d > 0.0) || sin_r >= 1.0 {
        return Err(domain("d", d));
    }
    let cos_r = (1.0 - sin_r * sin_r).sqrt();
    Ok(2.0 * 1.0f64.atan2(cos_r * half.tan()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere_geom::{angular_dist, SpherePoint};
    use proptest::prelude::*;

    #[test]
    fn alpha_values() {
        assert!((alpha(FRAC_PI_2).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let d = (1.0 / 5f64.sqrt()).acos();
        assert!((alpha(d).unwrap() - 2.0 * PI / 5.0).abs() < 1e-12);
        let d = (1.0f64 / 3.0).acos();
        assert!((alpha(d).unwrap() - 0.25f64.acos()).abs() < 1e-12);
        assert!((alpha(d).unwrap() - 1.318_116_071_652_818).abs() < 1e-9);
        assert!(alpha(0.0).is_err());
        assert!(alpha(2.2).is_err());
    }

    #[test]
    fn alpha_limits_and_monotonicity() {
        assert!((alpha(1e-6).unwrap() - PI / 3.0).abs() < 1e-9);
        let mut prev = alpha(1e-3).unwrap();
        for k in 2..=1570 {
            let a = alpha(k as f64 * 1e-3).unwrap();
            assert!(a > prev && a >= PI / 3.0);
            prev = a;
        }
    }

    #[test]
    fn loc_side_examples() {
        assert!((loc_side(FRAC_PI_2, FRAC_PI_2, 0.7).unwrap() - 0.7).abs() < 1e-14);
        let d = 1.2;
        assert!((loc_side(d, d, alpha(d).unwrap()).unwrap() - d).abs() < 1e-14);
        // vector oracle: A at the pole, B and C placed by colatitude/longitude
        let a = SpherePoint::new(0.0, 0.0, 1.0);
        let b = SpherePoint::from_polar(1.0, 0.3);
        let c = SpherePoint::from_polar(1.2, 1.2);
        assert!((angular_dist(&a, &b) - 1.0).abs() < 1e-14);
        let oracle = angular_dist(&b, &c);
        assert!((loc_side(1.0, 1.2, 0.9).unwrap() - oracle).abs() < 1e-14);
    }

    #[test]
    fn loc_round_trip_on_random_triangles() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let lo = 0.01;
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let t1 = lo + (PI - 2.0 * lo) * next();
            let t2 = lo + (PI - 2.0 * lo) * next();
            let phi = lo + (PI - 2.0 * lo) * next();
            let side = loc_side(t1, t2, phi).unwrap();
            let back = loc_angle(t1, t2, side).unwrap();
            worst = worst.max((back - phi).abs());
        }
        assert!(worst < 1e-12, "worst round-trip error {worst:e}");
    }

    #[test]
    fn loc_angle_rejects_impossible_sides() {
        assert!(loc_angle(0.5, 0.5, 1.2).is_err());
        assert!(loc_angle(0.0, 0.5, 0.3).is_err());
    }

    #[test]
    fn quad_opposite_examples() {
        let u2 = quad_opposite(FRAC_PI_2, PI / 3.0).unwrap();
        assert!((u2 - 2.0 * 2f64.atan()).abs() < 1e-14);
        assert!((u2 - 2.214_297_435_588_181).abs() < 1e-9);
        // planar limit
        assert!((quad_opposite(1.0, 1e-8).unwrap() - (PI - 1.0)).abs() < 1e-9);
        // fixed point cot^2(u/2) = cos d
        let d: f64 = 1.1;
        let u = 2.0 * (1.0 / d.cos().sqrt()).atan();
        assert!((quad_opposite(u, d).unwrap() - u).abs() < 1e-14);
        assert!(quad_opposite(1.0, FRAC_PI_2).is_err());
        assert!(quad_opposite(PI, 1.0).is_err());
    }

    #[test]
    fn regular_angle_matches_known_polygons() {
        // four equilateral triangles around a vertex of the octahedron
        assert!((regular_angle(3, FRAC_PI_2).unwrap() - FRAC_PI_2).abs() < 1e-14);
        let d = 1.0;
        assert!((regular_angle(3, d).unwrap() - alpha(d).unwrap()).abs() < 1e-14);
        let u = regular_angle(4, d).unwrap();
        assert!((quad_opposite(u, d).unwrap() - u).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn quad_opposite_is_monotone(u in 0.2f64..2.9, d in 0.05f64..1.5, e in 1e-4f64..0.05) {
            let base = quad_opposite(u, d).unwrap();
            prop_assert!(quad_opposite(u + e, d).unwrap() < base);
            prop_assert!(quad_opposite(u, d + e).unwrap() > base);
        }

        #[test]
        fn quad_opposite_is_an_involution(u in 0.1f64..3.0, d in 0.05f64..1.5) {
            let v = quad_opposite(u, d).unwrap();
            prop_assert!((quad_opposite(v, d).unwrap() - u).abs() < 1e-12);
        }
    }
}
