//! Cross-checks of the closed forms against direct measurement on
//! triangles embedded in 3-space.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::projection::{angle_ratio_bounds, eta, eta_derivative, gamma_of_t, ProjectionContext};
use crate::trig::embed::{arc_between, dot, scale, sub, Vec3};
use crate::trig::{EmbeddedTriangle, Triangle, TriangleParams};

/// Spherical angle at the circle point `(sin R, 0, cos R)` between the
/// circle's tangent and the image of a plane direction at angle `τ` to it.
pub fn eta_measured(tau: f64, r: f64) -> f64 {
    let v: Vec3 = [r.sin(), 0.0, r.cos()];
    let tangent: Vec3 = [0.0, 1.0, 0.0];
    let w: Vec3 = [-tau.sin(), tau.cos(), 0.0];
    let u = sub(w, scale(dot(w, v), v));
    arc_between(u, tangent)
}

/// Largest deviation found by one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub max: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub rows: Vec<Residual>,
}

impl OracleReport {
    pub fn worst(&self) -> f64 {
        self.rows.iter().map(|r| r.max).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rows.iter().all(|r| r.max <= tol)
    }
}

/// Random parameters kept `MARGIN` away from degenerate shapes, where the
/// embedded measurements lose digits.
fn params<R: Rng>(rng: &mut R, r_max: f64) -> TriangleParams {
    const MARGIN: f64 = 1e-2;
    let mut u = |lo: f64, hi: f64| lo + (hi - lo) * rng.random::<f64>();
    let r = u(MARGIN, r_max);
    let phi = u(MARGIN, FRAC_PI_2 - 2.0 * MARGIN);
    let lead = u(MARGIN, FRAC_PI_2 - phi);
    TriangleParams::from_offset(r, phi, lead).expect("inside the chart")
}

/// Run every check on `n` random inputs each.
pub fn run_oracle(n: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut push = |name, max, samples| rows.push(Residual { name, max, samples });

    let mut m = 0.0f64;
    for _ in 0..n {
        let tau = PI * rng.random::<f64>().max(1e-12);
        let r = (FRAC_PI_2 - 1e-6) * rng.random::<f64>();
        m = m.max((eta(tau, r).expect("in range") - eta_measured(tau, r)).abs());
    }
    push("eta_vs_embedding", m, n);

    let mut m = 0.0f64;
    for i in 0..n {
        let r = (FRAC_PI_2 - 1e-3) * (i as f64 + 0.5) / n as f64;
        let lo = eta_derivative(0.0, r).expect("in range") - r.cos();
        let hi = eta_derivative(FRAC_PI_2, r).expect("in range") * r.cos() - 1.0;
        m = m.max(lo.abs()).max(hi.abs());
    }
    push("eta_slope_endpoints", m, n);

    let (mut ms, mut ma, mut mr, mut mg) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let p = params(&mut rng, 1.5);
        let tri = p.triangle().expect("checked");
        let e = EmbeddedTriangle::from_params(&p);
        for (x, y) in tri.sides().iter().zip(e.sides()) {
            ms = ms.max((x - y).abs());
        }
        for (x, y) in tri.angles().iter().zip(e.angles()) {
            ma = ma.max((x - y).abs());
        }
        mr = mr.max((tri.circumradius() - e.circumradius()).abs());
        mg = mg.max((gamma_of_t(p.r(), p.phi(), p.t()).expect("valid") - tri.angles()[2]).abs());
    }
    push("sides_vs_embedding", ms, n);
    push("angles_vs_embedding", ma, n);
    push("circumradius_vs_embedding", mr, n);
    push("gamma_of_t_vs_angle", mg, n);

    let mut m = 0.0f64;
    for _ in 0..n {
        let p = params(&mut rng, 1.4);
        let tri = p.triangle().expect("checked");
        let b = angle_ratio_bounds(&tri).expect("distortable");
        for x in b.ratios {
            m = m.max(b.lower - x).max(x - b.upper);
        }
    }
    push("angle_ratio_outside_bounds", m.max(0.0), n);

    let mut m = 0.0f64;
    for _ in 0..n {
        let p = params(&mut rng, 1.4);
        let e = EmbeddedTriangle::from_params(&p);
        let ctx = ProjectionContext::new(&e);
        let (x, y) = (e.sample_point(&mut rng), e.sample_point(&mut rng));
        if arc_between(x, y) > 1e-6 {
            let q = ctx.distance_ratio(x, y);
            m = m.max(ctx.r.cos() - q).max(q - ctx.bilipschitz());
        }
    }
    push("length_ratio_outside_bounds", m.max(0.0), n);

    let mut m = 0.0f64;
    for _ in 0..n {
        let p = params(&mut rng, 1.5);
        m = m.max(p.triangle().expect("checked").identity_residuals().worst());
    }
    push("napier_delambre_identities", m, n);

    OracleReport { rows }
}
