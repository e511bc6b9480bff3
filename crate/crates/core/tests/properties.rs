use proptest::prelude::*;

use thurston_core::h2::{
    adjacent_vertex, orthofoot, shear, Geodesic, H2Point, IdealPoint, IdealTriangle, MobiusMap,
};
use thurston_core::pants::{
    delta, enumerate_triangulations, shear_coords, Layout, PantsMetric, PantsTriangulation, Twist,
};
use thurston_core::stretch::{
    twist_width, twist_width_with, DeltaMethod, Direction, FNPoint, StretchSpec, Surface,
};

fn mobius() -> impl Strategy<Value = MobiusMap> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("det bounded away from 0", |(a, b, c, d)| a * d - b * c > 0.2)
        .prop_map(|(a, b, c, d)| MobiusMap::new(a, b, c, d).unwrap())
}

fn lengths() -> impl Strategy<Value = [f64; 3]> {
    [0.2..4.0f64, 0.2..4.0f64, 0.2..4.0f64]
}

fn triangulation() -> impl Strategy<Value = PantsTriangulation> {
    (0..32usize).prop_map(|i| enumerate_triangulations()[i])
}

fn width_pair(surface: Surface, t: f64) -> (StretchSpec, StretchSpec) {
    (
        StretchSpec::uniform(surface, Twist::Left, Direction::Backward, t).unwrap(),
        StretchSpec::uniform(surface, Twist::Right, Direction::Backward, t).unwrap(),
    )
}

fn surface_point(surface: Surface, l: f64, theta: f64) -> FNPoint {
    match surface {
        Surface::S11 => FNPoint::s11(l, theta).unwrap(),
        Surface::S04 => FNPoint::s04(l, theta).unwrap(),
        Surface::S2 => FNPoint::s2([l, 1.1 * l, 0.9 * l], [theta, 0.0, 0.0]).unwrap(),
    }
}

proptest! {
    #[test]
    fn mobius_preserves_distance(m in mobius(), x1 in -5.0..5.0f64, y1 in 0.1..5.0f64,
                                 x2 in -5.0..5.0f64, y2 in 0.1..5.0f64) {
        let p = H2Point::new(x1, y1).unwrap();
        let q = H2Point::new(x2, y2).unwrap();
        let d = p.distance(&q);
        let dm = m.apply_point(&p).distance(&m.apply_point(&q));
        prop_assert!((d - dm).abs() <= 1e-8 * d.max(1.0));
    }

    #[test]
    fn shear_is_mobius_invariant_and_symmetric(m in mobius(), x in -4.0..0.9f64, s in -3.0..3.0f64) {
        let t1 = IdealTriangle::new(x, 1.0, IdealPoint::Infinity).unwrap();
        let r = adjacent_vertex(&t1, 1, s).unwrap();
        let t2 = IdealTriangle::new(1.0, r, IdealPoint::Infinity).unwrap();
        let g = Geodesic::new(1.0, IdealPoint::Infinity).unwrap();
        let s0 = shear(&t1, &t2, &g).unwrap();
        prop_assert!((s0 - s).abs() < 1e-9);
        prop_assert!((shear(&t2, &t1, &g.reversed()).unwrap() - s0).abs() < 1e-9);
        let (u1, u2, h) = (m.apply_triangle(&t1), m.apply_triangle(&t2), m.apply_geodesic(&g));
        if let Ok(sm) = shear(&u1, &u2, &h) {
            prop_assert!((sm - s0).abs() < 1e-7, "{} vs {}", sm, s0);
        }
    }

    #[test]
    fn orthofoot_height_is_geometric_mean(a in 1e-3..1e3f64, b in 1e-3..1e3f64) {
        prop_assume!((a - b).abs() > 1e-9 * a.max(b));
        let g1 = Geodesic::new(0.0, IdealPoint::Infinity).unwrap();
        let g2 = Geodesic::new(a, b).unwrap();
        let p = orthofoot(&g1, &g2).unwrap();
        let want = (a * b).sqrt();
        prop_assert!(p.x().abs() < 1e-12 * want);
        prop_assert!((p.y() - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn leaf_ends_at_each_cuff_sum_to_minus_signed_length(l in lengths(), t in triangulation()) {
        let m = PantsMetric::from_array(l).unwrap();
        let sc = shear_coords(&m, &t);
        for c in 0..3 {
            let total: f64 = sc
                .iter()
                .map(|(leaf, s)| leaf.ends().iter().filter(|&&e| e == c).count() as f64 * s)
                .sum();
            prop_assert!((total + t.signs.eps(c) * l[c]).abs() < 1e-12);
        }
        if t.layout == Layout::ThreeSym {
            for j in 0..3 {
                let pair = sc.iter().filter(|(leaf, _)| leaf.ends().contains(&j))
                    .map(|(_, s)| s).sum::<f64>();
                prop_assert!((pair.abs() - l[j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sign_flip_is_exact_up_to_a_linear_term(l in lengths(), m in lengths(), t in triangulation(),
                                              c in 0..3usize) {
        let f = |x: [f64; 3]| {
            let p = PantsMetric::from_array(x).unwrap();
            delta(&p, &t, c).unwrap() + delta(&p, &t.flipped(), c).unwrap()
        };
        let sum = [l[0] + m[0], l[1] + m[1], l[2] + m[2]];
        prop_assert!((f(sum) - f(l) - f(m)).abs() < 1e-9);
    }

    #[test]
    fn twist_width_ignores_initial_twist(l in 0.2..5.0f64, t in 0.0..6.0f64, shift in -10.0..10.0f64,
                                         si in 0..3usize) {
        let surface = [Surface::S11, Surface::S04, Surface::S2][si];
        let (lam, nu) = width_pair(surface, t);
        let a = twist_width(&surface_point(surface, l, 0.0), &lam, &nu, 0).unwrap();
        let b = twist_width(&surface_point(surface, l, shift), &lam, &nu, 0).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        prop_assert!((a + twist_width(&surface_point(surface, l, 0.0), &nu, &lam, 0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn twist_width_ignores_normalization(l in 0.2..5.0f64, t in 0.0..6.0f64, k in -3i32..4) {
        let x = FNPoint::s11(l, 0.3).unwrap();
        let (lam, nu) = width_pair(Surface::S11, t);
        let a = twist_width(&x, &lam, &nu, 0).unwrap();
        let b = twist_width_with(&x, &lam, &nu, 0, DeltaMethod::Normalized(k)).unwrap();
        prop_assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
    }
}
