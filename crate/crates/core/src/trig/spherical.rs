use std::f64::consts::{FRAC_PI_2, PI};

use super::{clamp_cos, excesses, Triangle};
use crate::constants::{DEGENERACY_FLOOR, HEMISPHERE_TOL};
use crate::error::{Error, Result};

/// A triangle on the unit sphere, stored by its three side lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalTriangle {
    sides: [f64; 3],
}

impl SphericalTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let sides = [a, b, c];
        for (name, &x) in ["a", "b", "c"].iter().zip(&sides) {
            if !x.is_finite() || x >= PI {
                return Err(Error::InvalidTriangle(format!(
                    "side {name} = {x} not in (0, π)"
                )));
            }
            if x < DEGENERACY_FLOOR {
                return Err(Error::Degenerate(format!("side {name} = {x} below floor")));
            }
        }
        if a + b + c >= 2.0 * PI {
            return Err(Error::InvalidTriangle(format!(
                "perimeter {} not below 2π",
                a + b + c
            )));
        }
        if excesses(sides).iter().any(|&e| e <= 0.0) {
            return Err(Error::InvalidTriangle(format!(
                "sides ({a}, {b}, {c}) violate the triangle inequality"
            )));
        }
        let tri = Self { sides };
        if let Some(x) = tri.angles().into_iter().find(|&x| x < DEGENERACY_FLOOR) {
            return Err(Error::Degenerate(format!("angle {x} below floor")));
        }
        Ok(tri)
    }

    pub fn equilateral(side: f64) -> Result<Self> {
        Self::new(side, side, side)
    }

    /// Angles from the side law of cosines, clamped. Loses accuracy on
    /// thin triangles; kept as a cross-check.
    pub fn law_of_cosines(&self) -> Result<[f64; 3]> {
        let [a, b, c] = self.sides;
        let one = |x: f64, y: f64, z: f64| -> Result<f64> {
            let v = (x.cos() - y.cos() * z.cos()) / (y.sin() * z.sin());
            Ok(clamp_cos(v, "spherical law of cosines")?.acos())
        };
        Ok([one(a, b, c)?, one(b, c, a)?, one(c, a, b)?])
    }

    /// `[sin s, sin(s-a), sin(s-b), sin(s-c)]` with the differences taken
    /// without cancellation.
    fn half_perimeter_sines(&self) -> [f64; 4] {
        let [a, b, c] = self.sides;
        let e = excesses(self.sides);
        [
            (0.5 * (a + b + c)).sin(),
            (0.5 * e[0]).sin(),
            (0.5 * e[1]).sin(),
            (0.5 * e[2]).sin(),
        ]
    }

    /// Spherical circumradius, in `(0, π/2)` for every valid triangle.
    pub fn circumradius(&self) -> f64 {
        let [a, b, c] = self.sides;
        let [s, sa, sb, sc] = self.half_perimeter_sines();
        let num = 2.0 * (0.5 * a).sin() * (0.5 * b).sin() * (0.5 * c).sin();
        num.atan2((s * sa * sb * sc).sqrt())
    }

    /// True when the circumradius is within tolerance of `π/2`, where the
    /// distortion operations stop being defined.
    pub fn near_hemisphere(&self) -> bool {
        self.circumradius() >= FRAC_PI_2 - HEMISPHERE_TOL
    }

    /// Area, by L'Huilier's formula.
    pub fn area(&self) -> f64 {
        let [a, b, c] = self.sides;
        let e = excesses(self.sides);
        let t = (0.25 * (a + b + c)).tan()
            * (0.25 * e[0]).tan()
            * (0.25 * e[1]).tan()
            * (0.25 * e[2]).tan();
        4.0 * t.sqrt().atan()
    }

    /// Largest distance between two points of the triangle, which is the
    /// longest side.
    pub fn diameter(&self) -> f64 {
        self.sides.iter().copied().fold(0.0, f64::max)
    }

    /// Residuals of Napier's analogy, Delambre's analogy, and the law of
    /// cosines for angles, all relative to `γ` and its opposite side `c`.
    pub fn identity_residuals(&self) -> IdentityResiduals {
        let [a, b, c] = self.sides;
        let [al, be, ga] = self.angles();
        let napier = ((c - b) / 2.0).tan() * ((ga + be) / 2.0).sin()
            - (a / 2.0).tan() * ((ga - be) / 2.0).sin();
        let delambre =
            (ga / 2.0).cos() * ((a - b) / 2.0).cos() - (c / 2.0).cos() * ((al + be) / 2.0).sin();
        let angle_cosines = ga.cos() - (-al.cos() * be.cos() + al.sin() * be.sin() * c.cos());
        IdentityResiduals {
            napier: napier.abs(),
            delambre: delambre.abs(),
            angle_cosines: angle_cosines.abs(),
        }
    }
}

impl Triangle for SphericalTriangle {
    fn sides(&self) -> [f64; 3] {
        self.sides
    }

    /// Half-angle formulas; accurate for needle-like and tiny triangles.
    fn angles(&self) -> [f64; 3] {
        let [s, sa, sb, sc] = self.half_perimeter_sines();
        let half = |p: f64, q: f64, r: f64| 2.0 * (q * r).sqrt().atan2((s * p).sqrt());
        [half(sa, sb, sc), half(sb, sc, sa), half(sc, sa, sb)]
    }

    fn distortable(&self) -> Result<()> {
        if self.near_hemisphere() {
            return Err(Error::Input(format!(
                "circumradius {} is not below π/2",
                self.circumradius()
            )));
        }
        Ok(())
    }
}

/// Absolute residuals of three classical identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub napier: f64,
    pub delambre: f64,
    pub angle_cosines: f64,
}

impl IdentityResiduals {
    pub fn worst(&self) -> f64 {
        self.napier.max(self.delambre).max(self.angle_cosines)
    }

    /// Name of the first identity whose residual exceeds `tol`.
    pub fn check(&self, tol: f64) -> std::result::Result<(), &'static str> {
        if self.napier > tol {
            Err("napier")
        } else if self.delambre > tol {
            Err("delambre")
        } else if self.angle_cosines > tol {
            Err("angle cosines")
        } else {
            Ok(())
        }
    }
}
