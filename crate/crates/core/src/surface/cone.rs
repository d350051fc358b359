use std::f64::consts::SQRT_2;

use super::VertexAngles;
use crate::error::{domain, Result};

/// The conformal density `2q R^q r^(q−1) / (R^(2q) − r^(2q))` on the disc of
/// radius `√2`, with `R = √2 ((1+q)/(1−q))^(1/(2q))`. It has curvature −1
/// away from the cone point at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeDensity {
    q: f64,
    big_r: f64,
}

impl ConeDensity {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(domain("q", q, "(0, 1)"));
        }
        let big_r = SQRT_2 * ((1.0 + q) / (1.0 - q)).powf(0.5 / q);
        Ok(Self { q, big_r })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn outer_radius(&self) -> f64 {
        self.big_r
    }

    pub fn density(&self, r: f64) -> Result<f64> {
        if !(r > 0.0 && r < SQRT_2) {
            return Err(domain("r", r, "(0, √2)"));
        }
        Ok(self.eval(r))
    }

    /// The closed form, continuous on `(0, R)`.
    pub fn eval(&self, r: f64) -> f64 {
        let q = self.q;
        let rq = self.big_r.powf(q);
        2.0 * q * rq * r.powf(q - 1.0) / (rq * rq - r.powf(2.0 * q))
    }

    /// Value at the rim `r = √2`, the infimum over the disc.
    pub fn rim_value(&self) -> f64 {
        self.eval(SQRT_2)
    }

    /// Curvature at the point of radius `r` and argument `theta`.
    pub fn curvature(&self, r: f64, theta: f64, h: f64) -> f64 {
        log_polar_curvature(|x, y| self.eval(x.hypot(y)), r, theta, h)
    }
}

/// Gaussian curvature `−Δ log λ / λ²` of a density, by fourth-order
/// differences in `s = ln r` and `θ`. In these coordinates
/// `Δ = r⁻² (∂ₛ² + ∂θ²)`, which keeps the stencil well scaled at every
/// radius.
pub fn log_polar_curvature<F: Fn(f64, f64) -> f64>(lambda: F, r: f64, theta: f64, h: f64) -> f64 {
    let g = |s: f64, t: f64| {
        let rr = s.exp();
        lambda(rr * t.cos(), rr * t.sin()).ln()
    };
    let s = r.ln();
    let d2 = |f: &dyn Fn(f64) -> f64| {
        (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h)
    };
    let gss = d2(&|d| g(s + d, theta));
    let gtt = d2(&|d| g(s, theta + d));
    let l = lambda(r * theta.cos(), r * theta.sin());
    -(gss + gtt) / (r * r * l * l)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaQReport {
    pub passes: bool,
    /// Smallest `α_v q` over interior vertices, and its vertex.
    pub worst: Option<(usize, f64)>,
}

/// Whether every interior cone angle `2πα_v` has `α_v q > 1`.
pub fn alpha_q_check(angles: &VertexAngles, q: f64) -> Result<AlphaQReport> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain("q", q, "(0, 1)"));
    }
    let worst = (0..angles.totals.len())
        .filter(|&v| angles.interior[v])
        .map(|v| (v, angles.totals[v] / (2.0 * std::f64::consts::PI) * q))
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(AlphaQReport {
        passes: worst.map_or(true, |(_, w)| w > 1.0),
        worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{CURVATURE_MARGIN, CURVATURE_STEP};
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_parameters() {
        assert!(ConeDensity::new(0.0).is_err());
        assert!(ConeDensity::new(1.0).is_err());
        let d = ConeDensity::new(0.5).unwrap();
        assert!(d.density(0.0).is_err());
        assert!(d.density(SQRT_2).is_err());
    }

    #[test]
    fn half_at_unit_radius() {
        // q = 1/2: R = 3√2, so λ(1) = √R / (R − 1).
        let d = ConeDensity::new(0.5).unwrap();
        let big_r = 3.0 * SQRT_2;
        assert!((d.outer_radius() - big_r).abs() < 1e-14);
        let want = big_r.sqrt() / (big_r - 1.0);
        assert!((d.density(1.0).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn rim_value() {
        for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let d = ConeDensity::new(q).unwrap();
            let want = ((1.0 - q * q) / 2.0).sqrt();
            assert!((d.rim_value() - want).abs() < 1e-12, "q = {q}");
            let near = d.density(SQRT_2 - 1e-9).unwrap();
            assert!((near - want).abs() < 1e-8);
        }
    }

    #[test]
    fn decreasing() {
        for q in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let d = ConeDensity::new(q).unwrap();
            let n = 10_000;
            let v: Vec<f64> = (1..n)
                .map(|i| d.eval(SQRT_2 * f64::from(i) / f64::from(n)))
                .collect();
            assert!(v.windows(2).all(|w| w[1] < w[0]), "q = {q}");
        }
    }

    #[test]
    fn constant_negative_curvature() {
        for q in [0.1, 0.5, 0.9] {
            let d = ConeDensity::new(q).unwrap();
            let (lo, hi) = (CURVATURE_MARGIN, SQRT_2 - CURVATURE_MARGIN);
            for i in 0..=20 {
                let r = lo + (hi - lo) * f64::from(i) / 20.0;
                for theta in [0.0, 1.0, 2.5, -2.0] {
                    let k = d.curvature(r, theta, CURVATURE_STEP);
                    assert!((k + 1.0).abs() < 1e-6, "q = {q}, r = {r}, K = {k}");
                }
            }
        }
    }

    #[test]
    fn curvature_of_model_metrics() {
        let sphere = |x: f64, y: f64| 2.0 / (1.0 + x * x + y * y);
        let flat = |_: f64, _: f64| 3.0;
        for r in [0.1, 0.5, 1.3] {
            assert!((log_polar_curvature(sphere, r, 0.4, 1e-2) - 1.0).abs() < 1e-7);
            assert!(log_polar_curvature(flat, r, 0.4, 1e-2).abs() < 1e-9);
        }
    }

    #[test]
    fn alpha_q() {
        let delta = 0.05;
        let q = 1.0 / (1.0 + delta);
        let good = VertexAngles {
            totals: vec![2.0 * PI * (1.0 + 2.0 * delta); 3],
            interior: vec![true; 3],
        };
        assert!(alpha_q_check(&good, q).unwrap().passes);
        let flat = VertexAngles {
            totals: vec![2.0 * PI; 2],
            interior: vec![true; 2],
        };
        assert!(!alpha_q_check(&flat, 0.99).unwrap().passes);
        assert!(alpha_q_check(&flat, 1.0).is_err());
    }
}
