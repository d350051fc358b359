//! Central projection of a spherical triangle onto the plane through its
//! vertices, and how it distorts angles and lengths.
//!
//! Under the projection a curve leaving a vertex at angle `τ` to the
//! circumscribed circle (measured in the plane) leaves it at angle
//! `η(τ) = arccot(sec R cot τ)` on the sphere.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};
use crate::trig::embed::{dot, norm, scale, sub, Vec3};
use crate::trig::{chord, EmbeddedTriangle, EuclideanTriangle, SphericalTriangle, Triangle};

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..FRAC_PI_2).contains(&r) {
        return Err(domain("R", r, "[0, π/2)"));
    }
    Ok(())
}

/// `η = arccot(sec R cot τ)` with the branch in `(0, π)`.
pub fn eta(tau: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    if !(tau > 0.0 && tau < PI) {
        return Err(domain("τ", tau, "(0, π)"));
    }
    Ok((r.cos() * tau.sin()).atan2(tau.cos()))
}

/// `dη/dτ = cos R / (cos² τ + cos² R sin² τ)`.
pub fn eta_derivative(tau: f64, r: f64) -> Result<f64> {
    check_radius(r)?;
    if !(0.0..=PI).contains(&tau) {
        return Err(domain("τ", tau, "[0, π]"));
    }
    let (s, c) = tau.sin_cos();
    let cr = r.cos();
    Ok(cr / (c * c + cr * cr * s * s))
}

/// The unique `τ₀ ∈ [0, π/2]` with `dη/dτ = 1`:
/// `arcsin(2^{-1/2} sec(R/2))`.
pub fn unit_slope_angle(r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(((0.5f64).sqrt() / (0.5 * r).cos()).min(1.0).asin())
}

/// Angle at the marked vertex of the triangle `(R, φ, t)`:
/// `η(t + φ) − η(t − φ)`.
pub fn gamma_of_t(r: f64, phi: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(domain("φ", phi, "(0, π/2)"));
    }
    if !(t > phi && t < PI - phi) {
        return Err(domain("t", t, "(φ, π − φ)"));
    }
    Ok(eta(t + phi, r)? - eta(t - phi, r)?)
}

/// The plane through a triangle's vertices and the projection onto it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionContext {
    pub r: f64,
    pub normal: Vec3,
    /// Distance of the plane from the origin, `cos R`.
    pub offset: f64,
}

impl ProjectionContext {
    pub fn new(tri: &EmbeddedTriangle) -> Self {
        Self {
            r: tri.circumradius(),
            normal: tri.plane_normal(),
            offset: tri.plane_offset(),
        }
    }

    /// Bilipschitz constant `sec R`.
    pub fn bilipschitz(&self) -> f64 {
        1.0 / self.r.cos()
    }

    /// Image of a point of the sphere on the plane.
    pub fn project(&self, p: Vec3) -> Vec3 {
        scale(self.offset / dot(self.normal, p), p)
    }

    /// Ratio of the planar distance of the images to the spherical
    /// distance of two points.
    pub fn distance_ratio(&self, p: Vec3, q: Vec3) -> f64 {
        norm(sub(self.project(p), self.project(q))) / crate::trig::embed::arc_between(p, q)
    }
}

/// Ratios of the chord triangle's angles to the spherical angles, with the
/// bounds `[cos R, sec R]` they must lie in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleRatios {
    pub ratios: [f64; 3],
    pub lower: f64,
    pub upper: f64,
}

impl AngleRatios {
    pub fn within(&self, tol: f64) -> bool {
        self.ratios
            .iter()
            .all(|&x| x >= self.lower - tol && x <= self.upper + tol)
    }
}

fn chord_triangle(tri: &SphericalTriangle) -> Result<EuclideanTriangle> {
    let [a, b, c] = tri.sides().map(chord);
    EuclideanTriangle::transformed([a, b, c])
}

pub fn angle_ratio_bounds(tri: &SphericalTriangle) -> Result<AngleRatios> {
    tri.distortable()?;
    let r = tri.circumradius();
    let flat = chord_triangle(tri)?.angles();
    let sph = tri.angles();
    Ok(AngleRatios {
        ratios: [0, 1, 2].map(|i| flat[i] / sph[i]),
        lower: r.cos(),
        upper: 1.0 / r.cos(),
    })
}

/// The two-sided estimate of the sum of the two angles at the ends of the
/// longest side, and the comparison with the chord triangle's angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallAngleBounds {
    /// `½ chd d cot R`
    pub lower: f64,
    /// `α + β`
    pub sum: f64,
    /// `4 chd d csc 2R`
    pub upper: f64,
    /// Whether `chd d ≤ 2^{-1/2} sin(R/2)`.
    pub small: bool,
    /// `α ≤ α'` for the chord triangle's angle `α'`.
    pub alpha_below_chord: bool,
    pub beta_below_chord: bool,
}

impl SmallAngleBounds {
    pub fn sandwich_holds(&self) -> bool {
        self.lower <= self.sum && self.sum <= self.upper
    }

    /// The chord comparison holds, or its hypothesis does not apply.
    pub fn comparison_holds(&self) -> bool {
        !self.small || (self.alpha_below_chord && self.beta_below_chord)
    }
}

pub fn small_angle_bounds(tri: &SphericalTriangle) -> Result<SmallAngleBounds> {
    tri.distortable()?;
    let r = tri.circumradius();
    let sides = tri.sides();
    let longest = (0..3)
        .max_by(|&i, &j| sides[i].total_cmp(&sides[j]))
        .unwrap_or(2);
    let (i, j) = ((longest + 1) % 3, (longest + 2) % 3);
    let sph = tri.angles();
    let flat = chord_triangle(tri)?.angles();
    let cd = chord(sides[longest]);
    Ok(SmallAngleBounds {
        lower: 0.5 * cd / r.tan(),
        sum: sph[i] + sph[j],
        upper: 4.0 * cd / (2.0 * r).sin(),
        small: cd <= (0.5f64).sqrt() * (0.5 * r).sin(),
        alpha_below_chord: sph[i] <= flat[i],
        beta_below_chord: sph[j] <= flat[j],
    })
}

/// Lipschitz data of the affine map taking one plane triangle onto
/// another, vertex to vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineBound {
    /// Largest singular value of the linear part.
    pub l_true: f64,
    /// Largest ratio of corresponding side lengths.
    pub l: f64,
    /// Middle angle of the source triangle.
    pub beta: f64,
    /// `l π² / β²`
    pub bound: f64,
}

impl AffineBound {
    pub fn holds(&self) -> bool {
        self.l_true <= self.bound
    }
}

/// Vertices `A, B, C` placed with `A` at the origin and `B` on the positive
/// axis; side `a = |BC|` etc.
pub(crate) fn place(t: &EuclideanTriangle) -> [[f64; 2]; 3] {
    let [_, b, c] = t.sides();
    let alpha = t.angles()[0];
    [[0.0, 0.0], [c, 0.0], [b * alpha.cos(), b * alpha.sin()]]
}

/// Linear part of the affine map sending `src` onto `dst`, row-major.
pub(crate) fn affine_linear_part(
    src: &EuclideanTriangle,
    dst: &EuclideanTriangle,
) -> [[f64; 2]; 2] {
    let [_, p1, p2] = place(src);
    let [_, q1, q2] = place(dst);
    let det = p1[0] * p2[1] - p2[0] * p1[1];
    let inv = [[p2[1] / det, -p2[0] / det], [-p1[1] / det, p1[0] / det]];
    let mut m = [[0.0; 2]; 2];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = q1[r] * inv[0][c] + q2[r] * inv[1][c];
        }
    }
    m
}

pub fn affine_lipschitz_bound(
    src: &EuclideanTriangle,
    dst: &EuclideanTriangle,
) -> Result<AffineBound> {
    let m = affine_linear_part(src, dst);
    let p = (m[0][0] + m[1][1]).hypot(m[0][1] - m[1][0]);
    let q = (m[0][0] - m[1][1]).hypot(m[0][1] + m[1][0]);
    let l_true = 0.5 * (p + q);
    let (s, d) = (src.sides(), dst.sides());
    let l = (0..3).map(|i| d[i] / s[i]).fold(0.0, f64::max);
    let mut ang = src.angles();
    ang.sort_by(f64::total_cmp);
    let beta = ang[1];
    Ok(AffineBound {
        l_true,
        l,
        beta,
        bound: l * PI * PI / (beta * beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::B0;
    use crate::trig::TriangleParams;

    #[test]
    fn eta_examples() {
        for r in [0.0, 0.4, 1.5] {
            assert!((eta(FRAC_PI_2, r).unwrap() - FRAC_PI_2).abs() < 1e-15);
        }
        for tau in [0.1, 1.0, 3.0] {
            assert!((eta(tau, 0.0).unwrap() - tau).abs() < 1e-15);
        }
        let e = eta(PI / 4.0, PI / 3.0).unwrap();
        assert!((e - (0.5f64).atan()).abs() < 1e-15);
        assert!((e - 0.463_647_609_000_806_1).abs() < 1e-15);
        assert!(eta(0.0, 1.0).is_err());
        assert!(eta(1.0, FRAC_PI_2).is_err());
    }

    #[test]
    fn eta_reflection() {
        for &(tau, r) in &[(0.3, 1.0), (1.2, 0.2), (0.01, 1.5)] {
            let s = eta(PI - tau, r).unwrap() + eta(tau, r).unwrap();
            assert!((s - PI).abs() < 1e-14);
        }
    }

    #[test]
    fn derivative_endpoints() {
        for r in [0.1, 0.8, 1.4] {
            assert!((eta_derivative(0.0, r).unwrap() - r.cos()).abs() < 1e-15);
            assert!((eta_derivative(FRAC_PI_2, r).unwrap() - 1.0 / r.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let h = 1e-5;
        for &(tau, r) in &[(0.3, 1.0), (1.2, 0.2), (2.5, 1.4)] {
            let fd = (eta(tau + h, r).unwrap() - eta(tau - h, r).unwrap()) / (2.0 * h);
            assert!((fd - eta_derivative(tau, r).unwrap()).abs() < 1e-7);
        }
    }

    #[test]
    fn unit_slope() {
        for r in [0.05, 0.7, 1.3] {
            let t0 = unit_slope_angle(r).unwrap();
            assert!((eta_derivative(t0, r).unwrap() - 1.0).abs() < 1e-12);
            assert!(t0 > 0.0 && t0 < FRAC_PI_2);
        }
    }

    #[test]
    fn gamma_examples() {
        let (r, phi) = (1.0, 0.4);
        let g = gamma_of_t(r, phi, FRAC_PI_2).unwrap();
        let closed = PI - 2.0 * (r.cos() * (FRAC_PI_2 - phi).tan()).atan();
        assert!((g - closed).abs() < 1e-14);
        assert!((gamma_of_t(0.0, 0.3, 0.9).unwrap() - 0.6).abs() < 1e-15);
        for t in [0.5, 0.9, 1.3] {
            let d = gamma_of_t(r, phi, t).unwrap() - gamma_of_t(r, phi, PI - t).unwrap();
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn gamma_matches_triangle_angle() {
        for &(r, phi, t) in &[(1.0, 0.4, 0.9), (0.2, 1.1, 1.3), (1.5, 0.01, 0.02)] {
            let tri = TriangleParams::new(r, phi, t).unwrap().triangle().unwrap();
            assert!((gamma_of_t(r, phi, t).unwrap() - tri.angles()[2]).abs() < 1e-10);
        }
    }

    #[test]
    fn gamma_increasing_to_isosceles() {
        let (r, phi) = (1.2, 0.25);
        let mut prev = 0.0;
        for i in 1..=200 {
            let t = phi + (FRAC_PI_2 - phi) * f64::from(i) / 200.0;
            let g = gamma_of_t(r, phi, t).unwrap();
            assert!(g > prev);
            prev = g;
        }
    }

    #[test]
    fn ratios_of_equilateral() {
        let tri = TriangleParams::new(1.0, PI / 6.0, FRAC_PI_2)
            .unwrap()
            .triangle()
            .unwrap();
        let a = angle_ratio_bounds(&tri).unwrap();
        assert!(a.within(0.0));
        let tiny = TriangleParams::new(1e-4, 0.4, 1.0)
            .unwrap()
            .triangle()
            .unwrap();
        for x in angle_ratio_bounds(&tiny).unwrap().ratios {
            assert!((x - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn sandwich_on_tetrahedral_face() {
        let tri = SphericalTriangle::equilateral((-1.0f64 / 3.0).acos()).unwrap();
        let b = small_angle_bounds(&tri).unwrap();
        assert!(b.sandwich_holds());
        assert!((b.sum - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!(!b.small);
    }

    #[test]
    fn tiny_triangle_satisfies_comparison() {
        let p = TriangleParams::from_offset(1.0, 1e-5, 2e-5).unwrap();
        let b = small_angle_bounds(&p.triangle().unwrap()).unwrap();
        assert!(b.small && b.alpha_below_chord && b.beta_below_chord);
    }

    #[test]
    fn scaled_family_sum_tracks_diameter_over_radius() {
        let r = 1.0;
        for j in 1..8 {
            let lead = 10f64.powi(-j);
            let p = TriangleParams::from_offset(r, 0.3 * lead, lead).unwrap();
            let b =
                small_angle_bounds(&p.triangle().unwrap()).unwrap_or_else(|e| panic!("{j}: {e}"));
            assert!(b.sandwich_holds());
        }
    }

    #[test]
    fn projection_length_distortion() {
        let p = TriangleParams::new(B0 - 0.1, 0.5, 1.2).unwrap();
        let e = EmbeddedTriangle::from_params(&p);
        let ctx = ProjectionContext::new(&e);
        for v in e.v {
            let q = ctx.project(v);
            assert!(norm(sub(q, v)) < 1e-14);
        }
        let [a, b, c] = e.v;
        let mid = {
            let m = [0, 1, 2].map(|i| (a[i] + b[i] + c[i]) / 3.0);
            scale(1.0 / norm(m), m)
        };
        for q in [a, b, c] {
            let ratio = ctx.distance_ratio(mid, q);
            assert!(ratio >= ctx.r.cos() - 1e-12 && ratio <= ctx.bilipschitz() + 1e-12);
        }
    }

    #[test]
    fn affine_identity_and_scaling() {
        let t = EuclideanTriangle::new(2.0, 3.0, 4.0).unwrap();
        let id = affine_lipschitz_bound(&t, &t).unwrap();
        assert!((id.l_true - 1.0).abs() < 1e-14 && (id.l - 1.0).abs() < 1e-15);
        assert!(id.bound >= 1.0 && id.holds());
        let s = t.scaled(2.5).unwrap();
        let sc = affine_lipschitz_bound(&t, &s).unwrap();
        assert!(
            (sc.l_true - 2.5).abs() < 1e-14 && (sc.l - 2.5).abs() < 1e-14,
            "{sc:?}"
        );
    }

    #[test]
    fn affine_singular_value_of_shear() {
        let src = EuclideanTriangle::new(1.0, 1.0, 2f64.sqrt()).unwrap();
        let dst = EuclideanTriangle::new(1.0, 5f64.sqrt(), 2.0).unwrap();
        let m = affine_linear_part(&src, &dst);
        let b = affine_lipschitz_bound(&src, &dst).unwrap();
        let fro: f64 = m.iter().flatten().map(|x| x * x).sum();
        assert!(b.l_true * b.l_true <= fro + 1e-12);
        assert!(b.l_true >= b.l - 1e-12);
        assert!(b.holds());
    }
}
