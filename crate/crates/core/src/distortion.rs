//! Side-distortion families and the angle distortion `D(F, Δ)`: the
//! smallest ratio of a transformed angle to the original one, where the
//! transformed triangle is the plane triangle with sides `F(a), F(b), F(c)`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::trig::{arc, chord, EuclideanTriangle, Triangle};

/// The side-distortion functions.
///
/// Families built on the chord accept arcs in `[0, π]`; the plain families
/// accept `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `chd t`
    Chd,
    /// `√(chd t)`
    Finf,
    /// `min(k chd t, √(chd t))`
    Fk(f64),
    /// `min(k chd t, 1)`
    FkStar(f64),
    /// `min(kt, √t)`
    Gk(f64),
    /// `min(kt, 1)`
    GkStar(f64),
    /// `min(t, √t)`
    G1,
    /// `min(t, 1)`
    G1Star,
    /// `√t`
    Ginf,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `[0, π]`
    Arc,
    /// `[0, ∞)`
    HalfLine,
}

/// Qualitative shape of a family, each verified on grids in the tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub increasing: bool,
    pub concave: bool,
    pub subadditive: bool,
}

pub const FAMILY_NAMES: &[&str] = &[
    "chd", "finf", "fk", "fkstar", "gk", "gkstar", "g1", "g1star", "ginf", "identity",
];

impl Family {
    /// Family from its name; `k` is required by the parametric members and
    /// rejected by the others.
    pub fn parse(name: &str, k: Option<f64>) -> Result<Self> {
        let need_k = || -> Result<f64> {
            match k {
                Some(k) if k.is_finite() && k > 0.0 => Ok(k),
                Some(k) => Err(domain("k", k, "(0, ∞)")),
                None => Err(Error::Input(format!("family {name} needs k"))),
            }
        };
        let fam = match name.to_ascii_lowercase().as_str() {
            "chd" => Family::Chd,
            "finf" => Family::Finf,
            "fk" => Family::Fk(need_k()?),
            "fkstar" => Family::FkStar(need_k()?),
            "gk" => Family::Gk(need_k()?),
            "gkstar" => Family::GkStar(need_k()?),
            "g1" => Family::G1,
            "g1star" => Family::G1Star,
            "ginf" => Family::Ginf,
            "identity" => Family::Identity,
            other => {
                return Err(Error::Input(format!(
                    "unknown family {other}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        if fam.k().is_none() && k.is_some() {
            return Err(Error::Input(format!("family {name} takes no k")));
        }
        Ok(fam)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Chd => "chd",
            Family::Finf => "finf",
            Family::Fk(_) => "fk",
            Family::FkStar(_) => "fkstar",
            Family::Gk(_) => "gk",
            Family::GkStar(_) => "gkstar",
            Family::G1 => "g1",
            Family::G1Star => "g1star",
            Family::Ginf => "ginf",
            Family::Identity => "identity",
        }
    }

    pub fn k(&self) -> Option<f64> {
        match *self {
            Family::Fk(k) | Family::FkStar(k) | Family::Gk(k) | Family::GkStar(k) => Some(k),
            _ => None,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Family::Chd | Family::Finf | Family::Fk(_) | Family::FkStar(_) => Domain::Arc,
            _ => Domain::HalfLine,
        }
    }

    pub fn shape(&self) -> Shape {
        Shape {
            increasing: true,
            concave: true,
            subadditive: true,
        }
    }

    /// `F'(0⁺)`, or `None` where it is infinite.
    pub fn slope_at_zero(&self) -> Option<f64> {
        match *self {
            Family::Finf | Family::Ginf => None,
            Family::Fk(k) | Family::FkStar(k) | Family::Gk(k) | Family::GkStar(k) => Some(k),
            Family::Chd | Family::G1 | Family::G1Star | Family::Identity => Some(1.0),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let ok = match self.domain() {
            Domain::Arc => (0.0..=PI).contains(&x),
            Domain::HalfLine => x >= 0.0 && x.is_finite(),
        };
        if !ok {
            let d = match self.domain() {
                Domain::Arc => "[0, π]",
                Domain::HalfLine => "[0, ∞)",
            };
            return Err(domain("side", x, d));
        }
        Ok(self.apply(x))
    }

    #[inline]
    pub(crate) fn apply(&self, x: f64) -> f64 {
        match *self {
            Family::Chd => chord(x),
            Family::Finf => chord(x).sqrt(),
            Family::Fk(k) => {
                let c = chord(x);
                (k * c).min(c.sqrt())
            }
            Family::FkStar(k) => (k * chord(x)).min(1.0),
            Family::Gk(k) => (k * x).min(x.sqrt()),
            Family::GkStar(k) => (k * x).min(1.0),
            Family::G1 => x.min(x.sqrt()),
            Family::G1Star => x.min(1.0),
            Family::Ginf => x.sqrt(),
            Family::Identity => x,
        }
    }

    /// Chord length (or plain length, for the plain families) at which the
    /// two branches of a `min` meet.
    pub fn crossover_chord(&self) -> Option<f64> {
        match *self {
            Family::Fk(k) | Family::Gk(k) => Some(1.0 / (k * k)),
            Family::FkStar(k) | Family::GkStar(k) => Some(1.0 / k),
            Family::G1 | Family::G1Star => Some(1.0),
            _ => None,
        }
    }

    /// Side length at which the branches meet, if inside the domain.
    pub fn crossover(&self) -> Option<f64> {
        let x = self.crossover_chord()?;
        match self.domain() {
            Domain::Arc => (x <= 2.0).then(|| arc(x)),
            Domain::HalfLine => Some(x),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k() {
            Some(k) => write!(f, "{}(k={})", self.name(), k),
            None => f.write_str(self.name()),
        }
    }
}

/// The plane triangle with sides `F(a), F(b), F(c)`.
pub fn transform<T: Triangle>(f: Family, tri: &T) -> Result<EuclideanTriangle> {
    let s = tri.sides();
    EuclideanTriangle::transformed([f.eval(s[0])?, f.eval(s[1])?, f.eval(s[2])?])
}

/// Original and transformed angles, their ratios and `D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionReport {
    pub sides: [f64; 3],
    pub angles: [f64; 3],
    pub transformed: EuclideanTriangle,
    pub transformed_angles: [f64; 3],
    pub ratios: [f64; 3],
    pub d: f64,
}

impl DistortionReport {
    /// Whether the transform keeps the angle ordering (ties within `tol`
    /// are ignored).
    pub fn order_preserved(&self, tol: f64) -> bool {
        let (x, y) = (self.angles, self.transformed_angles);
        (0..3).all(|i| (0..3).all(|j| !(x[i] < x[j] - tol && y[i] > y[j] + tol)))
    }
}

/// `D(F, Δ)` with the full report. Spherical input must have
/// circumradius below `π/2`.
pub fn angle_distortion<T: Triangle>(f: Family, tri: &T) -> Result<DistortionReport> {
    tri.distortable()?;
    let transformed = transform(f, tri)?;
    let angles = tri.angles();
    let transformed_angles = transformed.angles();
    let ratios = [0, 1, 2].map(|i| transformed_angles[i] / angles[i]);
    let d = ratios[0].min(ratios[1]).min(ratios[2]);
    Ok(DistortionReport {
        sides: tri.sides(),
        angles,
        transformed,
        transformed_angles,
        ratios,
        d,
    })
}

/// Outcome of one inequality checked over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Smallest value of `rhs − lhs` (or `|lhs − rhs|` negated for the
    /// identity), with the pair where it occurred.
    pub worst: f64,
    pub witness: (f64, f64),
}

/// The three conditions on plane families: `G(x+y) ≤ G(x) + G(y)`,
/// `G²(x+y) ≥ G²(x) + G²(y)` and `G(x²) = G²(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GConditions {
    pub subadditive: ConditionCheck,
    pub square_superadditive: ConditionCheck,
    pub square_multiplicative: ConditionCheck,
}

impl GConditions {
    pub fn all_hold(&self) -> bool {
        self.subadditive.holds
            && self.square_superadditive.holds
            && self.square_multiplicative.holds
    }
}

pub fn g_conditions_check(g: Family, grid: &[f64]) -> Result<GConditions> {
    if g.domain() != Domain::HalfLine {
        return Err(Error::Input(format!("{g} is not a plane family")));
    }
    const REL: f64 = 1e-12;
    let mut sub = (f64::INFINITY, (0.0, 0.0));
    let mut sup = (f64::INFINITY, (0.0, 0.0));
    let mut mul = (f64::INFINITY, (0.0, 0.0));
    for &x in grid {
        let gx = g.eval(x)?;
        let m = -(g.eval(x * x)? - gx * gx).abs() / (1.0 + gx * gx);
        if m < mul.0 {
            mul = (m, (x, x));
        }
        for &y in grid {
            let (gy, gs) = (g.eval(y)?, g.eval(x + y)?);
            let scale = 1.0 + gx + gy;
            let s = (gx + gy - gs) / scale;
            if s < sub.0 {
                sub = (s, (x, y));
            }
            let q = (gs * gs - gx * gx - gy * gy) / (scale * scale);
            if q < sup.0 {
                sup = (q, (x, y));
            }
        }
    }
    let check = |(worst, witness): (f64, (f64, f64))| ConditionCheck {
        holds: worst >= -REL,
        worst,
        witness,
    };
    Ok(GConditions {
        subadditive: check(sub),
        square_superadditive: check(sup),
        square_multiplicative: check(mul),
    })
}

/// Equal side `a` of the isosceles triangle `(R, φ, t = π/2)`.
fn isosceles_side(r: f64, phi: f64) -> Result<f64> {
    if !(r > 0.0 && r < PI / 2.0) {
        return Err(domain("R", r, "(0, π/2)"));
    }
    if !(phi > 0.0 && phi < PI / 2.0) {
        return Err(domain("φ", phi, "(0, π/2)"));
    }
    Ok(arc(2.0 * r.sin() * phi.cos()))
}

/// `cos γ̃ = 1 − √(1 − sin²(a/2)/sin² R)` for the isosceles triangle with
/// circumradius `R`, apex half-angle parameter `φ`, transformed by `√chd`.
pub fn isosceles_gamma_tilde(r: f64, phi: f64) -> Result<f64> {
    let a = isosceles_side(r, phi)?;
    let q = (0.5 * a).sin() / r.sin();
    Ok(1.0 - ((1.0 - q) * (1.0 + q)).max(0.0).sqrt())
}

/// `cos(γ/2) = tan(a/2)/tan R` for the same isosceles triangle.
pub fn isosceles_gamma_half(r: f64, phi: f64) -> Result<f64> {
    let a = isosceles_side(r, phi)?;
    Ok((0.5 * a).tan() / r.tan())
}

/// `t² − T t + 2`.
pub fn isosceles_parabola(t: f64, big_t: f64) -> f64 {
    t * t - big_t * t + 2.0
}

/// `t² − T t + 2` at `t = tan(a/2)`, `T = tan R` for the isosceles
/// triangle `(R, φ, π/2)`; positive exactly when `γ̃ > γ/2` there.
pub fn isosceles_margin(r: f64, phi: f64) -> Result<f64> {
    let a = isosceles_side(r, phi)?;
    Ok(isosceles_parabola((0.5 * a).tan(), r.tan()))
}
