use super::{clamp_cos, excesses, Triangle};
use crate::constants::{DEGENERACY_FLOOR, TRANSFORM_SLACK};
use crate::error::{Error, Result};

/// A plane triangle, stored by its three side lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanTriangle {
    sides: [f64; 3],
}

impl EuclideanTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let sides = [a, b, c];
        for (name, &x) in ["a", "b", "c"].iter().zip(&sides) {
            if !x.is_finite() || x <= 0.0 {
                return Err(Error::InvalidTriangle(format!(
                    "side {name} = {x} not positive"
                )));
            }
            if x < DEGENERACY_FLOOR {
                return Err(Error::Degenerate(format!("side {name} = {x} below floor")));
            }
        }
        let tri = Self::with_sides(sides)?;
        tri.law_of_cosines()?;
        if let Some(x) = tri.angles().into_iter().find(|&x| x < DEGENERACY_FLOOR) {
            return Err(Error::Degenerate(format!("angle {x} below floor")));
        }
        Ok(tri)
    }

    /// Sides of the image of a triangle under a side transform. Only the
    /// strict triangle inequality is enforced; a violation larger than the
    /// rounding slack is an invariant failure.
    pub(crate) fn transformed(sides: [f64; 3]) -> Result<Self> {
        if sides.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::Degenerate(format!("transformed sides {sides:?}")));
        }
        let longest = sides.iter().copied().fold(0.0, f64::max);
        let worst = excesses(sides).into_iter().fold(f64::INFINITY, f64::min);
        if worst < -TRANSFORM_SLACK * longest {
            return Err(Error::Invariant(format!(
                "transformed sides {sides:?} violate the triangle inequality"
            )));
        }
        Self::with_sides(sides)
    }

    fn with_sides(sides: [f64; 3]) -> Result<Self> {
        if excesses(sides).iter().any(|&e| e <= 0.0) {
            return Err(Error::Degenerate(format!(
                "sides {sides:?} are collinear or violate the triangle inequality"
            )));
        }
        Ok(Self { sides })
    }

    pub fn equilateral(side: f64) -> Result<Self> {
        Self::new(side, side, side)
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let [a, b, c] = self.sides;
        Self::new(s * a, s * b, s * c)
    }

    /// Angles from the law of cosines, clamped, with the overshoot guard.
    pub fn law_of_cosines(&self) -> Result<[f64; 3]> {
        let [a, b, c] = self.sides;
        let one = |x: f64, y: f64, z: f64| -> Result<f64> {
            let v = (y * y + z * z - x * x) / (2.0 * y * z);
            Ok(clamp_cos(v, "law of cosines")?.acos())
        };
        Ok([one(a, b, c)?, one(b, c, a)?, one(c, a, b)?])
    }

    /// Area by Heron's formula in its cancellation-free arrangement.
    pub fn area(&self) -> f64 {
        let mut s = self.sides;
        s.sort_by(|x, y| y.total_cmp(x));
        let [a, b, c] = s;
        0.25 * ((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))).sqrt()
    }

    pub fn diameter(&self) -> f64 {
        self.sides.iter().copied().fold(0.0, f64::max)
    }
}

/// Angle opposite `c`, needle-safe.
fn kahan_angle(p: f64, q: f64, c: f64) -> f64 {
    let (a, b) = if p >= q { (p, q) } else { (q, p) };
    let mu = if b >= c { c - (a - b) } else { b - (a - c) };
    let num = ((a - b) + c) * mu;
    let den = (a + (b + c)) * ((a - c) + b);
    2.0 * num.max(0.0).sqrt().atan2(den.max(0.0).sqrt())
}

impl Triangle for EuclideanTriangle {
    fn sides(&self) -> [f64; 3] {
        self.sides
    }

    fn angles(&self) -> [f64; 3] {
        let [a, b, c] = self.sides;
        [
            kahan_angle(b, c, a),
            kahan_angle(c, a, b),
            kahan_angle(a, b, c),
        ]
    }
}

/// Third side from two sides and their included angle, in the half-angle
/// form `√((a+b)² − 4ab cos²(γ/2))`, rearranged as
/// `√((a−b)² + 4ab sin²(γ/2))` to avoid cancellation for small `γ`.
pub fn half_angle_side(a: f64, b: f64, gamma: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(crate::error::domain("side", a.min(b), "(0, ∞)"));
    }
    if !(gamma > 0.0 && gamma < std::f64::consts::PI) {
        return Err(crate::error::domain("angle", gamma, "(0, π)"));
    }
    let h = (0.5 * gamma).sin();
    Ok(((a - b) * (a - b) + 4.0 * a * b * h * h).sqrt())
}
