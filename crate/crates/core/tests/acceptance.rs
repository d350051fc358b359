//! Acceptance checks. Each prints one PASS or FAIL line; the process exits
//! non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sphere_distort::certify::{
    degenerate_family_test, isosceles_case_four, planar_sweep, random_euclidean, scan_infimum,
    small_angle_asymptotic, spherical_sweep, DegenerateKind, ScanSpec,
};
use sphere_distort::constants::{b0_arccos, b0_arctan, B0, R0};
use sphere_distort::oracle::run_oracle;
use sphere_distort::projection::{affine_lipschitz_bound, small_angle_bounds};
use sphere_distort::surface::{builtin, ConeDensity, Geometry};
use sphere_distort::{EmbeddedTriangle, EuclideanTriangle, Family, Triangle, TriangleParams};

type Check = (bool, String);
type CheckFn = fn() -> Check;

const BIN: &str = env!("CARGO_BIN_EXE_sphere-distort");

/// Spherical triangle with the given angles, placed on the unit sphere.
fn embedded_from_angles(aa: f64, bb: f64, cc: f64) -> EmbeddedTriangle {
    let side =
        |x: f64, y: f64, z: f64| ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin())).acos();
    let b = side(bb, cc, aa);
    let c = side(cc, aa, bb);
    let va = [0.0, 0.0, 1.0];
    let vb = [c.sin(), 0.0, c.cos()];
    let vc = [b.sin() * aa.cos(), b.sin() * aa.sin(), b.cos()];
    EmbeddedTriangle::new([va, vb, vc]).expect("non-degenerate")
}

fn constants() -> Check {
    let t = Instant::now();
    let d_def = (b0_arctan() - b0_arccos()).abs();
    let eq = embedded_from_angles(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0);
    let d_eq = (eq.circumradius() - B0).abs();
    let rt = embedded_from_angles(FRAC_PI_2, FRAC_PI_2, 2.0 * PI / 3.0);
    let d_r0 = (rt.circumradius() - R0).abs();
    let angles_ok = eq
        .angles()
        .iter()
        .all(|a| (a - 2.0 * PI / 3.0).abs() < 1e-12);
    let el = t.elapsed();
    (
        d_def <= 1e-15
            && d_eq <= 1e-10
            && d_r0 <= 1e-10
            && angles_ok
            && el < Duration::from_secs(1),
        format!(
            "|arctan√8 − arccos⅓| = {d_def:.1e}, equilateral {d_eq:.1e}, R0 {d_r0:.1e}, {el:.2?}"
        ),
    )
}

fn sqrt_chord_sweep() -> Check {
    let t = Instant::now();
    let sweep = spherical_sweep(Family::Finf, B0 - 1e-3, 1_000_000, 11).unwrap();
    let spec = ScanSpec::new(Family::Finf, B0);
    let res = scan_infimum(&spec).unwrap();
    let p = res.argmin.canonical();
    let dr = (p.r() - B0).abs();
    let dphi = (p.phi() - PI / 6.0).abs();
    let dt = (p.t() - FRAC_PI_2).abs();
    let near = dr <= B0 / spec.n_r as f64
        && dphi <= FRAC_PI_2 / spec.n_phi as f64
        && dt <= FRAC_PI_2 / spec.n_t as f64;
    let el = t.elapsed();
    (
        sweep.violations == 0
            && sweep.evaluated >= 999_000
            && res.infimum > 0.5
            && res.infimum < 0.5 + 1e-3
            && near
            && el < Duration::from_secs(120),
        format!(
            "{} sampled, {} violations, min {:.6}; scan inf {:.10} at R−b0 {dr:.1e} φ−π/6 {dphi:.1e} t−π/2 {dt:.1e}, {el:.2?}",
            sweep.evaluated, sweep.violations, sweep.min_d, res.infimum
        ),
    )
}

fn certify_cli(family: &str, eps: f64) -> (bool, String, Duration) {
    let t = Instant::now();
    let out = Command::new(BIN)
        .args(["certify", "--family", family, "--eps", &eps.to_string()])
        .output()
        .expect("binary runs");
    let el = t.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let row = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .nth(1)
        .unwrap_or("");
    let f: Vec<&str> = row.split(',').collect();
    let delta: f64 = f.get(3).and_then(|x| x.parse().ok()).unwrap_or(f64::NAN);
    let ok = out.status.code() == Some(0) && delta >= 1e-4 && el < Duration::from_secs(600);
    let k = f.get(2).copied().unwrap_or("-");
    (
        ok,
        format!(
            "{family} ε={eps}: k={k} δ={delta:.4e} exit {:?}",
            out.status.code()
        ),
        el,
    )
}

fn certification() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (fam, eps) in [
        ("fk", 0.05),
        ("fk", 0.1),
        ("fk", 0.3),
        ("fkstar", 0.1),
        ("fkstar", 0.3),
        ("fkstar", 0.7),
    ] {
        let (p, s, el) = certify_cli(fam, eps);
        ok &= p;
        parts.push(format!("{s} {el:.1?}"));
    }
    (ok, parts.join("; "))
}

fn planar_sweeps() -> Check {
    let t = Instant::now();
    let g1 = planar_sweep(Family::G1, 1_000_000, 21).unwrap();
    let g1s = planar_sweep(Family::G1Star, 1_000_000, 22).unwrap();
    let el = t.elapsed();
    (
        g1.violations == 0 && g1s.violations == 0 && el < Duration::from_secs(30),
        format!(
            "G1 min {:.6} ({} violations), G1* min {:.6} ({} violations), {el:.2?}",
            g1.min_d, g1.violations, g1s.min_d, g1s.violations
        ),
    )
}

fn projection_oracle() -> Check {
    let rep = run_oracle(10_000, 31);
    let get = |n: &str| {
        rep.rows
            .iter()
            .find(|r| r.name == n)
            .map_or(f64::NAN, |r| r.max)
    };
    let eta = get("eta_vs_embedding");
    let slope = get("eta_slope_endpoints");
    let ratio = get("angle_ratio_outside_bounds");
    (
        eta <= 1e-9 && slope <= 1e-9 && ratio <= 0.0,
        format!("η {eta:.1e}, endpoint slopes {slope:.1e}, ratio overshoot {ratio:.1e}"),
    )
}

fn random_params(rng: &mut ChaCha8Rng) -> TriangleParams {
    let lf = 1e-6f64.ln();
    loop {
        let r = 1e-3 + (FRAC_PI_2 - 2e-3) * rng.random::<f64>();
        let phi = (lf + (FRAC_PI_2.ln() - lf) * rng.random::<f64>()).exp() * (1.0 - 1e-9);
        let lead = (FRAC_PI_2 - phi) * (lf * rng.random::<f64>()).exp();
        if let Ok(p) = TriangleParams::from_offset(r, phi, lead) {
            return p;
        }
    }
}

fn small_angles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let (mut n, mut sandwich_bad, mut applies, mut cmp_bad) = (0, 0, 0, 0);
    while n < 100_000 {
        let Ok(tri) = random_params(&mut rng).triangle() else {
            continue;
        };
        let Ok(b) = small_angle_bounds(&tri) else {
            continue;
        };
        n += 1;
        sandwich_bad += usize::from(!b.sandwich_holds());
        applies += usize::from(b.small);
        cmp_bad += usize::from(!b.comparison_holds());
    }
    (
        sandwich_bad == 0 && cmp_bad == 0 && applies > 0,
        format!("{n} samples: two-sided bound failed {sandwich_bad}; chord comparison applied {applies}, failed {cmp_bad}"),
    )
}

fn surface() -> Check {
    let c = builtin("weierstrass").unwrap();
    let chi = c.euler_characteristic();
    let totals = c.total_angles().totals;
    let dev = totals
        .iter()
        .map(|t| (t - 4.0 * PI).abs())
        .fold(0.0, f64::max);
    let gb = c.gauss_bonnet().unwrap().residual();
    let mut flat_dev = 0.0f64;
    let mut flat_gb = 0.0f64;
    let families = [
        Family::Chd,
        Family::Finf,
        Family::Fk(1.0),
        Family::Fk(2.0),
        Family::Fk(64.0),
        Family::FkStar(1.0),
        Family::FkStar(8.0),
    ];
    for f in families {
        let (flat, rep) = c.transform(f).unwrap();
        for t in &rep.after.totals {
            flat_dev = flat_dev.max((t - 2.0 * PI).abs());
        }
        let g = flat.gauss_bonnet().unwrap();
        let defect: f64 = rep.after.totals.iter().map(|t| 2.0 * PI - t).sum();
        flat_gb = flat_gb.max(g.residual()).max(defect.abs());
    }
    (
        chi == 0 && dev <= 1e-10 && gb < 1e-9 && flat_dev <= 1e-10 && flat_gb <= 1e-9,
        format!(
            "χ = {chi}, |θ − 4π| ≤ {dev:.1e}, residual {gb:.1e}; transformed |θ − 2π| ≤ {flat_dev:.1e}, flat residual {flat_gb:.1e}"
        ),
    )
}

fn cone() -> Check {
    let mut worst_k = 0.0f64;
    let mut worst_rim = 0.0f64;
    let mut monotone = true;
    for q in [0.1, 0.5, 0.9] {
        let c = ConeDensity::new(q).unwrap();
        for i in 0..40 {
            let r = 1e-2 + (SQRT_2 - 2e-2) * i as f64 / 39.0;
            for j in 0..8 {
                let th = 2.0 * PI * j as f64 / 8.0;
                worst_k = worst_k.max((c.curvature(r, th, 1e-2) + 1.0).abs());
            }
        }
        let limit = ((1.0 - q * q) / 2.0).sqrt();
        let near = c.density(SQRT_2 * (1.0 - 1e-12)).unwrap();
        worst_rim = worst_rim
            .max((c.rim_value() - limit).abs())
            .max((near - limit).abs());
        let vals: Vec<f64> = (1..=2000)
            .map(|i| c.eval(SQRT_2 * i as f64 / 2000.0))
            .collect();
        monotone &= vals.windows(2).all(|w| w[1] < w[0]);
    }
    (
        worst_k <= 1e-6 && worst_rim <= 1e-8 && monotone,
        format!("|K + 1| ≤ {worst_k:.1e}, rim {worst_rim:.1e}, decreasing {monotone}"),
    )
}

fn placed(t: &EuclideanTriangle) -> Matrix2<f64> {
    let [_, b, c] = t.sides();
    let a = t.angles()[0];
    Matrix2::new(c, b * a.cos(), 0.0, b * a.sin())
}

fn affine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let (mut bad, mut worst_rel, mut worst_slack) = (0, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let src = random_euclidean(&mut rng);
        let dst = random_euclidean(&mut rng);
        let b = affine_lipschitz_bound(&src, &dst).unwrap();
        let m = placed(&dst) * placed(&src).try_inverse().unwrap();
        let sv = m.singular_values().max();
        if sv.is_nan() || sv > b.bound {
            bad += 1;
        }
        worst_rel = worst_rel.max((sv - b.l_true).abs() / sv);
        worst_slack = worst_slack.max(sv / b.bound);
    }
    (
        bad == 0,
        format!("10000 pairs, {bad} violations, max L/bound {worst_slack:.3}, closed form vs SVD {worst_rel:.1e}"),
    )
}

fn asymptotic() -> Check {
    let coarse = small_angle_asymptotic(24).unwrap();
    let fine = small_angle_asymptotic(48).unwrap();
    let (a, b) = (coarse.max_ratio, fine.max_ratio);
    let stable = a.is_finite() && b.is_finite() && a.max(b) < 2.0 * a.min(b);
    let mut worst = 0.0f64;
    for i in 1..100 {
        let beta = PI / 3.0 * i as f64 / 100.0;
        for k in [1.0, 4.0, 32.0, 1024.0] {
            let (x, y) = isosceles_case_four(beta, k).unwrap();
            worst = worst.max((x - y).abs());
        }
    }
    (
        stable && worst <= 1e-12,
        format!("max ratio {a:.4} at n=24, {b:.4} at n=48; cases {:?}; isosceles closed form {worst:.1e}", fine.case_max),
    )
}

fn degenerate() -> Check {
    let cases = [
        (DegenerateKind::SmallAngles, Geometry::Spherical, PI / 3.0),
        (DegenerateKind::SmallAngles, Geometry::Euclidean, PI / 3.0),
        (DegenerateKind::Half, Geometry::Spherical, PI / 3.0),
        (DegenerateKind::Half, Geometry::Euclidean, FRAC_PI_2),
        (DegenerateKind::Third, Geometry::Spherical, PI / 3.0),
        (DegenerateKind::Third, Geometry::Euclidean, PI / 3.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, g, b0) in cases {
        let r = degenerate_family_test(kind, g, b0, 30, 1e-3).unwrap();
        ok &= r.passes();
        parts.push(format!(
            "{kind:?}/{}: {:.4}",
            g.name(),
            r.tail_min - r.threshold
        ));
    }
    (ok, format!("tail margins {}", parts.join(", ")))
}

fn run_bin(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.stdout, out.status.code())
}

fn determinism() -> Check {
    let scan = [
        "scan", "--family", "fk", "--k", "2", "--rmax", "1.1", "--seed", "7",
    ];
    let (a, ca) = run_bin(&[&["--threads", "1"], &scan[..]].concat());
    let (b, cb) = run_bin(&[&["--threads", "3"], &scan[..]].concat());
    let (c, _) = run_bin(&scan);
    let cert = ["certify", "--family", "fkstar", "--eps", "0.3"];
    let (d, _) = run_bin(&cert);
    let (e, _) = run_bin(&cert);
    let ok = ca == Some(0) && cb == Some(0) && !a.is_empty() && a == b && b == c && d == e;
    (
        ok,
        format!(
            "scan {} bytes, certify {} bytes, identical {ok}",
            a.len(),
            d.len()
        ),
    )
}

fn main() {
    let checks: [(&str, CheckFn); 12] = [
        ("1 constants", constants),
        ("2 sqrt-chord bound", sqrt_chord_sweep),
        ("3 k certification", certification),
        ("4 plane sweeps", planar_sweeps),
        ("5 projection oracle", projection_oracle),
        ("6 small-angle bounds", small_angles),
        ("7 surface", surface),
        ("8 cone density", cone),
        ("9 affine Lipschitz", affine),
        ("10 near-flat asymptotic", asymptotic),
        ("11 degenerate sequences", degenerate),
        ("12 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let t = Instant::now();
        let (ok, detail) = f();
        failed += usize::from(!ok);
        println!(
            "{} {name}: {detail} [{:.2?}]",
            if ok { "PASS" } else { "FAIL" },
            t.elapsed()
        );
    }
    println!("{} of {} passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
