use std::f64::consts::PI;

use super::{Affine, Interval, LinearConstraint, VarId};
use crate::feasibility::{alpha_of, d_of_alpha, VariableSystem, A, D};
use crate::sphere_geom::quad_opposite;

/// `cos c = cos a cos b + sin a sin b cos gamma` for sides `[a, b, c]`.
pub fn law_of_cosines(sides: [VarId; 3], gamma: VarId, bx: &[Interval]) -> Option<LinearConstraint> {
    let [a, b, c] = sides;
    let rhs = Affine::cos(a, bx)
        .times(&Affine::cos(b, bx))
        .plus(&Affine::sin(a, bx).times3(&Affine::sin(b, bx), &Affine::cos(gamma, bx)));
    Affine::cos(c, bx).minus(&rhs).zero()
}

/// `cos C = -cos A cos B + sin A sin B cos c` for angles `[A, B, C]`.
pub fn polar_law_of_cosines(angles: [VarId; 3], side: VarId, bx: &[Interval]) -> Option<LinearConstraint> {
    let [a, b, c] = angles;
    let rhs = Affine::sin(a, bx)
        .times3(&Affine::sin(b, bx), &Affine::cos(side, bx))
        .minus(&Affine::cos(a, bx).times(&Affine::cos(b, bx)));
    Affine::cos(c, bx).minus(&rhs).zero()
}

/// Both forms of the law of cosines for each of the three pairings of a
/// triangle; `angles[i]` is opposite `sides[i]`.
pub fn linearize_triangle(sides: [VarId; 3], angles: [VarId; 3], bx: &[Interval]) -> Vec<LinearConstraint> {
    let mut out = Vec::with_capacity(6);
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        out.extend(law_of_cosines([sides[i], sides[j], sides[k]], angles[k], bx));
        out.extend(polar_law_of_cosines([angles[i], angles[j], angles[k]], sides[k], bx));
    }
    out
}

fn push(out: &mut Vec<LinearConstraint>, c: Option<LinearConstraint>) {
    out.extend(c);
}

fn bound(v: VarId, lo: f64, hi: f64) -> Option<LinearConstraint> {
    LinearConstraint::new([(v, 1.0)], lo, hi)
}

/// Every linear constraint of the candidate, with enclosures valid on `bx`.
pub fn assemble_system(sys: &VariableSystem, bx: &[Interval]) -> Vec<LinearConstraint> {
    let mut out = Vec::new();
    let (d, a) = (bx[D], bx[A]);

    for corners in sys.vertex_corners.iter().filter(|c| !c.is_empty()) {
        push(&mut out, LinearConstraint::eq(corners.iter().map(|&v| (v, 1.0)), 2.0 * PI));
    }

    // a = alpha(d), monotone in both directions
    push(&mut out, bound(D, 2.0 * PI / sys.n as f64, 2.0 * PI / 3.0));
    push(&mut out, bound(A, alpha_of(d.lo), alpha_of(d.hi)));
    push(&mut out, bound(D, d_of_alpha(a.lo), d_of_alpha(a.hi)));
    let (ca, cd) = (Affine::cos(A, bx), Affine::cos(D, bx));
    push(&mut out, ca.plus(&ca.times(&cd)).minus(&cd).zero());

    for fv in &sys.face_vars {
        let m = fv.size();
        if m < 4 {
            continue;
        }
        let u = &fv.corners;
        // a convex polygon has perimeter below 2 pi and angle sum above (m-2) pi
        push(&mut out, LinearConstraint::le([(D, m as f64)], 2.0 * PI));
        push(&mut out, LinearConstraint::ge(u.iter().map(|&v| (v, 1.0)), (m as f64 - 2.0) * PI));
        for &v in u {
            push(&mut out, LinearConstraint::ge([(v, 1.0), (A, -1.0)], 0.0));
        }
        if m == 4 {
            push(&mut out, LinearConstraint::eq([(u[2], 1.0), (u[0], -1.0)], 0.0));
            push(&mut out, LinearConstraint::eq([(u[3], 1.0), (u[1], -1.0)], 0.0));
            for (p, q) in [(u[0], u[1]), (u[1], u[0])] {
                push(&mut out, LinearConstraint::le([(p, 1.0), (A, -2.0)], 0.0));
                if let (Ok(lo), Ok(hi)) = (
                    quad_opposite(bx[q].hi.min(PI - 1e-12), d.lo),
                    quad_opposite(bx[q].lo.max(1e-12), d.hi),
                ) {
                    push(&mut out, bound(p, lo - 1e-12, hi + 1e-12));
                }
            }
            // cos(u0/2) cos(u1/2) = cos d sin(u0/2) sin(u1/2)
            let half = |k, v| Affine::trig(k, v, 0.5, bx);
            use super::Trig::{Cos, Sin};
            let lhs = half(Cos, u[0]).times(&half(Cos, u[1]));
            let rhs = cd.times3(&half(Sin, u[0]), &half(Sin, u[1]));
            push(&mut out, lhs.minus(&rhs).zero());
        }

        let fan = &fv.fan;
        let last = fan.len() - 1;
        // u_0 = sum of apex angles, u_j = delta_{j-1} + gamma_j
        push(
            &mut out,
            LinearConstraint::eq(
                fan.iter().map(|t| (t.angles[0], 1.0)).chain([(u[0], -1.0)]),
                0.0,
            ),
        );
        for j in 1..m {
            let mut terms = vec![(u[j], -1.0)];
            if j >= 2 {
                terms.push((fan[j - 2].angles[2], 1.0));
            }
            if j <= m - 2 {
                terms.push((fan[j - 1].angles[1], 1.0));
            }
            push(&mut out, LinearConstraint::eq(terms, 0.0));
        }
        // the outer fan triangles are isosceles
        push(&mut out, LinearConstraint::eq([(fan[0].angles[0], 1.0), (fan[0].angles[2], -1.0)], 0.0));
        push(&mut out, LinearConstraint::eq([(fan[last].angles[0], 1.0), (fan[last].angles[1], -1.0)], 0.0));
        for &z in &fv.diagonals[2..m - 1] {
            push(&mut out, LinearConstraint::ge([(z, 1.0), (D, -1.0)], 0.0));
        }
        for t in fan {
            out.extend(linearize_triangle(t.sides, t.angles, bx));
            let (s, g) = (t.sides, t.angles);
            push(&mut out, LinearConstraint::le(s.iter().map(|&v| (v, 1.0)), 2.0 * PI));
            push(&mut out, LinearConstraint::ge(g.iter().map(|&v| (v, 1.0)), PI));
            for k in 0..3 {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                push(&mut out, LinearConstraint::le([(s[k], 1.0), (s[i], -1.0), (s[j], -1.0)], 0.0));
                push(&mut out, LinearConstraint::le([(g[i], 1.0), (g[j], 1.0), (g[k], -1.0)], PI));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{DomainBox, VariableSystem};
    use crate::plane_graph::fixtures;
    use crate::sphere_geom::{alpha, loc_angle, loc_side};

    fn satisfied(cons: &[LinearConstraint], x: &[f64], slack: f64) -> bool {
        cons.iter().all(|c| c.violation(x) <= slack)
    }

    #[test]
    fn point_box_has_zero_slack() {
        let (a, b, g) = (0.9, 1.1, 1.3);
        let c = loc_side(a, b, g).unwrap();
        let alpha_ = loc_angle(b, c, a).unwrap();
        let beta = loc_angle(a, c, b).unwrap();
        let x = [a, b, c, alpha_, beta, g];
        let bx: Vec<Interval> = x.iter().map(|&v| Interval::point(v)).collect();
        let cons = linearize_triangle([0, 1, 2], [3, 4, 5], &bx);
        assert_eq!(cons.len(), 6);
        for con in &cons {
            assert!(con.violation(&x) < 1e-11, "{con:?}");
            assert!(con.hi - con.lo < 1e-10);
        }
    }

    #[test]
    fn equilateral_manifold_satisfies_constraints() {
        use rand::{Rng, SeedableRng};
        let d0 = 1.2;
        let bx: Vec<Interval> = [d0, d0, d0, 0.0, 0.0, 0.0]
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let c = if i < 3 { v } else { alpha(d0).unwrap() };
                Interval::centered(c, 0.05)
            })
            .collect();
        let cons = linearize_triangle([0, 1, 2], [3, 4, 5], &bx);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 1000 {
            // sample two sides and the included angle, complete the triangle
            let a = rng.gen_range(bx[0].lo..=bx[0].hi);
            let b = rng.gen_range(bx[1].lo..=bx[1].hi);
            let g = rng.gen_range(bx[5].lo..=bx[5].hi);
            let c = loc_side(a, b, g).unwrap();
            let x = [a, b, c, loc_angle(b, c, a).unwrap(), loc_angle(a, c, b).unwrap(), g];
            if !bx.iter().zip(&x).all(|(iv, &v)| iv.contains(v)) {
                continue;
            }
            assert!(satisfied(&cons, &x, 1e-12));
            checked += 1;
        }
    }

    #[test]
    fn inconsistent_box_is_pruned() {
        // c about 2.0 cannot follow from sides near 0.5 with a small angle
        let bx = vec![
            Interval::new(0.45, 0.55),
            Interval::new(0.45, 0.55),
            Interval::new(1.9, 2.1),
            Interval::new(0.1, 3.0),
            Interval::new(0.1, 3.0),
            Interval::new(0.8, 1.0),
        ];
        let cons = linearize_triangle([0, 1, 2], [3, 4, 5], &bx);
        let out = crate::feasibility::propagate(&cons, &DomainBox(bx));
        assert!(out.is_none());
    }

    #[test]
    fn degree_four_sum_and_triangle_faces() {
        let sys = VariableSystem::new(&fixtures::octahedron()).unwrap();
        let bx = DomainBox::initial(&sys);
        let cons = assemble_system(&sys, &bx);
        // every vertex reads 4a = 2 pi
        let sums: Vec<_> = cons.iter().filter(|c| c.coeffs == vec![(A, 4.0)]).collect();
        assert_eq!(sums.len(), 6);
        assert!(sums.iter().all(|c| (c.lo - 2.0 * PI).abs() < 1e-15));
    }

    #[test]
    fn quadrilateral_equalities() {
        let sys = VariableSystem::new(&fixtures::cube()).unwrap();
        let bx = DomainBox::initial(&sys);
        let cons = assemble_system(&sys, &bx);
        let u = &sys.face_vars[0].corners;
        let mut want = LinearConstraint::eq([(u[2], 1.0), (u[0], -1.0)], 0.0).unwrap();
        assert!(cons.contains(&want));
        want = LinearConstraint::eq([(u[3], 1.0), (u[1], -1.0)], 0.0).unwrap();
        assert!(cons.contains(&want));
    }

    #[test]
    fn octahedron_satisfies_system() {
        let sys = VariableSystem::new(&fixtures::octahedron()).unwrap();
        let bx = DomainBox::initial(&sys);
        let cons = assemble_system(&sys, &bx);
        assert!(satisfied(&cons, &[PI / 2.0, PI / 2.0], 1e-7));
    }
}
