use std::f64::consts::{FRAC_PI_2, PI};

use super::{arc, SphericalTriangle};
use crate::constants::DEGENERACY_FLOOR;
use crate::error::{domain, Error, Result};

/// A spherical triangle with a marked vertex, placed on its circumscribed
/// circle.
///
/// `r` is the spherical circumradius. The marked vertex `C` sits on the
/// circle, the opposite side `AB` subtends the inscribed half-angle `φ`,
/// and `t` is the angle between the bisector of the angle at `C` and the
/// circle. The chords are `2 sin r sin(t − φ)`, `2 sin r sin(t + φ)`,
/// `2 sin r sin 2φ`. The offset `t − φ` is stored directly so that thin
/// triangles keep full relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleParams {
    r: f64,
    phi: f64,
    lead: f64,
}

impl TriangleParams {
    pub fn new(r: f64, phi: f64, t: f64) -> Result<Self> {
        Self::from_offset(r, phi, t - phi)
    }

    /// Parameters from `r`, `φ` and the offset `t − φ`.
    pub fn from_offset(r: f64, phi: f64, lead: f64) -> Result<Self> {
        if !(r > 0.0 && r < FRAC_PI_2) {
            return Err(domain("R", r, "(0, π/2)"));
        }
        if !(phi > 0.0 && phi < FRAC_PI_2) {
            return Err(domain("φ", phi, "(0, π/2)"));
        }
        if !(lead > 0.0 && lead < PI - 2.0 * phi) {
            return Err(domain("t − φ", lead, "(0, π − 2φ)"));
        }
        Ok(Self { r, phi, lead })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn t(&self) -> f64 {
        self.phi + self.lead
    }

    /// `t − φ`.
    pub fn offset(&self) -> f64 {
        self.lead
    }

    /// Representative with `t ∈ (φ, π/2]`; `t` and `π − t` give congruent
    /// triangles.
    pub fn canonical(&self) -> Self {
        if self.t() <= FRAC_PI_2 {
            *self
        } else {
            let lead = PI - 2.0 * self.phi - self.lead;
            Self { lead, ..*self }
        }
    }

    /// Chords `[|BC|, |CA|, |AB|]`.
    pub fn chords(&self) -> [f64; 3] {
        let k = 2.0 * self.r.sin();
        [
            k * self.lead.sin(),
            k * (2.0 * self.phi + self.lead).sin(),
            k * (2.0 * self.phi).sin(),
        ]
    }

    pub fn triangle(&self) -> Result<SphericalTriangle> {
        self.triangle_with_floor(DEGENERACY_FLOOR)
    }

    /// The spherical triangle, rejecting chords shorter than `floor`.
    pub fn triangle_with_floor(&self, floor: f64) -> Result<SphericalTriangle> {
        let ch = self.chords();
        if let Some(x) = ch.iter().find(|&&x| x < floor) {
            return Err(Error::Degenerate(format!("chord {x} below floor {floor}")));
        }
        SphericalTriangle::new(arc(ch[0]), arc(ch[1]), arc(ch[2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::B0;
    use crate::trig::{chord, Triangle};

    #[test]
    fn validates_domain() {
        assert!(TriangleParams::new(0.0, 0.3, 1.0).is_err());
        assert!(TriangleParams::new(FRAC_PI_2, 0.3, 1.0).is_err());
        assert!(TriangleParams::new(1.0, 0.3, 0.3).is_err());
        assert!(TriangleParams::new(1.0, 0.3, PI - 0.3).is_err());
        assert!(TriangleParams::new(1.0, 0.3, 2.0).is_ok());
    }

    #[test]
    fn equilateral_chords() {
        let r = 0.8;
        let p = TriangleParams::new(r, PI / 6.0, FRAC_PI_2).unwrap();
        for x in p.chords() {
            assert!((x - 3f64.sqrt() * r.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn isosceles_chords() {
        let (r, phi) = (1.1, 0.4);
        let [a, b, _] = TriangleParams::new(r, phi, FRAC_PI_2).unwrap().chords();
        assert!((a - 2.0 * r.sin() * phi.cos()).abs() < 1e-15);
        assert!((b - a).abs() < 1e-15);
    }

    #[test]
    fn tetrahedral_face_from_params() {
        let t = TriangleParams::new(B0, PI / 6.0, FRAC_PI_2)
            .unwrap()
            .triangle()
            .unwrap();
        for s in t.sides() {
            assert!((s - (-1.0f64 / 3.0).acos()).abs() < 1e-14);
        }
    }

    #[test]
    fn circumradius_round_trip() {
        for &(r, phi, t) in &[
            (0.3, 0.2, 1.0),
            (1.4, 0.05, 0.06),
            (1e-3, 1.0, 1.3),
            (1.2, 1.5, 1.55),
        ] {
            let tri = TriangleParams::new(r, phi, t).unwrap().triangle().unwrap();
            assert!((tri.circumradius() - r).abs() < 1e-10);
        }
    }

    #[test]
    fn reflection_gives_congruent_triangle() {
        let p = TriangleParams::new(0.9, 0.3, 2.2).unwrap();
        let q = p.canonical();
        assert!((q.t() - (PI - 2.2)).abs() < 1e-15);
        let mut s1 = p.triangle().unwrap().sides();
        let mut s2 = q.triangle().unwrap().sides();
        s1.sort_by(f64::total_cmp);
        s2.sort_by(f64::total_cmp);
        for (x, y) in s1.iter().zip(s2) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn floor_rejects_short_chords() {
        let p = TriangleParams::from_offset(0.5, 0.3, 1e-8).unwrap();
        assert!(p.triangle_with_floor(1e-6).is_err());
        assert!(p.triangle().is_ok());
    }

    #[test]
    fn thin_offsets_keep_precision() {
        let p = TriangleParams::from_offset(0.5, 0.3, 1e-10).unwrap();
        let a = p.triangle().unwrap().sides()[0];
        assert!((chord(a) / (2.0 * 0.5f64.sin() * 1e-10) - 1.0).abs() < 1e-12);
    }
}
