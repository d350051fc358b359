use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use sphere_distort::constants::B0;
use sphere_distort::projection::angle_ratio_bounds;
use sphere_distort::surface::{builtin, cyclic_cover, parse_fixture, write_fixture};
use sphere_distort::{
    angle_distortion, transform, EuclideanTriangle, Family, SphericalTriangle, Triangle,
    TriangleParams,
};

fn params(r_max: f64) -> impl Strategy<Value = TriangleParams> {
    (1e-3..r_max, -12.0f64..0.0, -12.0f64..0.0).prop_filter_map(
        "outside the chart",
        |(r, lp, ll)| {
            let phi = FRAC_PI_2 * lp.exp() * (1.0 - 1e-9);
            let lead = (FRAC_PI_2 - phi) * ll.exp();
            TriangleParams::from_offset(r, phi, lead)
                .ok()
                .filter(|p| p.triangle().is_ok())
        },
    )
}

/// Shapes whose circumradius and angles are well determined by the sides.
fn conditioned(r_max: f64) -> impl Strategy<Value = TriangleParams> {
    params(r_max).prop_filter("ill-conditioned", |p| {
        let a = p.triangle().unwrap().angles();
        a.iter().all(|&x| x > 1e-3 && x < PI - 1e-2)
    })
}

fn plane() -> impl Strategy<Value = EuclideanTriangle> {
    (-10.0f64..0.0, 0.0f64..1.0, -5.0f64..5.0).prop_filter_map("degenerate", |(la, u, ls)| {
        let alpha = (PI / 3.0) * la.exp();
        let beta = alpha + ((PI - alpha) / 2.0 - alpha) * u;
        let gamma = PI - alpha - beta;
        let k = 10f64.powf(ls) / gamma.sin();
        EuclideanTriangle::new(k * alpha.sin(), k * beta.sin(), k * gamma.sin()).ok()
    })
}

fn arc_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Chd),
        Just(Family::Finf),
        (0u32..12).prop_map(|j| Family::Fk(2f64.powi(j as i32))),
        (0u32..12).prop_map(|j| Family::FkStar(2f64.powi(j as i32))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn spherical_angles_exceed_pi_by_area(p in params(1.5)) {
        let t = p.triangle().unwrap();
        let s: f64 = t.angles().iter().sum();
        prop_assert!(s > PI);
        prop_assert!((s - PI - t.area()).abs() <= 1e-12 * (1.0 + s));
    }

    #[test]
    fn chart_radius_is_circumradius(p in conditioned(1.5)) {
        let t = p.triangle().unwrap();
        prop_assert!((t.circumradius() - p.r()).abs() <= 1e-9 * (1.0 + p.r()), "{} vs {}", t.circumradius(), p.r());
    }

    #[test]
    fn plane_angles_sum_to_pi(t in plane()) {
        let s: f64 = t.angles().iter().sum();
        prop_assert!((s - PI).abs() <= 1e-12);
    }

    #[test]
    fn distortion_is_at_most_one(p in params(1.5), f in arc_family()) {
        let t = p.triangle().unwrap();
        if let Ok(r) = angle_distortion(f, &t) {
            prop_assert!(r.d <= 1.0 + 1e-12, "{f}: {}", r.d);
            prop_assert!(r.order_preserved(1e-9));
        }
    }

    #[test]
    fn transform_is_monotone_in_sides(p in params(1.5), f in arc_family()) {
        let t = p.triangle().unwrap();
        let (s, tt) = (t.sides(), transform(f, &t).unwrap().sides());
        for i in 0..3 {
            for j in 0..3 {
                if s[i] < s[j] {
                    prop_assert!(tt[i] <= tt[j] * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn sqrt_chord_bound_below_b0(p in params(B0 - 1e-3)) {
        let t = p.triangle().unwrap();
        let d = angle_distortion(Family::Finf, &t).unwrap().d;
        prop_assert!(d > 0.5, "{d} at {p:?}");
    }

    #[test]
    fn capped_families_never_exceed_sqrt_chord(x in 0.0f64..PI, j in 0u32..16) {
        let k = 2f64.powi(j as i32);
        let inf = Family::Finf.eval(x).unwrap();
        prop_assert!(Family::Fk(k).eval(x).unwrap() <= inf);
        prop_assert!(Family::Fk(k).eval(x).unwrap() <= k * Family::Chd.eval(x).unwrap() * (1.0 + 1e-15));
        prop_assert!(Family::FkStar(k).eval(x).unwrap() <= 1.0);
    }

    #[test]
    fn angle_ratios_within_secant(p in conditioned(1.4)) {
        let t = p.triangle().unwrap();
        let b = angle_ratio_bounds(&t).unwrap();
        for x in b.ratios {
            prop_assert!(b.lower <= x && x <= b.upper, "{x} outside [{}, {}]", b.lower, b.upper);
        }
    }

    #[test]
    fn plane_distortion_under_g1(t in plane()) {
        let d = angle_distortion(Family::G1, &t).unwrap().d;
        prop_assert!(d > 0.5);
        let d = angle_distortion(Family::G1Star, &t).unwrap().d;
        prop_assert!(d > 1.0 / 3.0);
    }

    #[test]
    fn scaling_by_two_keeps_angles(t in plane(), s in -8i32..8) {
        let u = t.scaled(2f64.powi(s)).unwrap();
        prop_assert_eq!(t.angles(), u.angles());
    }

    #[test]
    fn equilateral_radius_decreases_with_angle(a in 1.05f64..2.09, b in 1.05f64..2.09) {
        prop_assume!((a - b).abs() > 1e-6);
        let side = |x: f64| (x.cos() / (1.0 - x.cos())).acos();
        let ra = SphericalTriangle::equilateral(side(a)).unwrap().circumradius();
        let rb = SphericalTriangle::equilateral(side(b)).unwrap().circumradius();
        prop_assert_eq!(a < b, ra < rb);
    }
}

#[test]
fn builtins_round_trip_through_fixtures() {
    for name in ["weierstrass", "tetrahedron", "octa2", "icosa2"] {
        let c = builtin(name).unwrap();
        let d = parse_fixture(&write_fixture(&c)).unwrap();
        assert_eq!(c, d, "{name}");
    }
}

#[test]
fn branched_cover_euler_characteristic() {
    for name in ["tetrahedron", "octahedron", "icosahedron"] {
        let base = builtin(name).unwrap();
        for n in 2..=3 {
            let Ok(cover) = cyclic_cover(&base, n) else {
                assert_ne!(base.num_vertices() % n, 0, "{name} {n}");
                continue;
            };
            let expect = n as i64 * base.euler_characteristic()
                - (n as i64 - 1) * base.num_vertices() as i64;
            assert_eq!(cover.euler_characteristic(), expect, "{name} {n}");
            assert!(cover.gauss_bonnet().unwrap().residual() < 1e-9);
            let (b, c) = (base.total_angles().totals, cover.total_angles().totals);
            for bv in &b {
                assert!(c.iter().any(|t| (t - n as f64 * bv).abs() < 1e-9));
            }
        }
    }
}
