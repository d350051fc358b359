//! Named constants and the numerical tolerances shared across modules.

use std::f64::consts::{FRAC_PI_2, PI};

/// `arctan √8 = arccos(1/3)`: circumradius of the spherical equilateral
/// triangle with all angles `2π/3`.
pub const B0: f64 = 1.230_959_417_340_774_7;

/// `arctan 2`: circumradius of the spherical triangle with angles
/// `(π/2, π/2, 2π/3)`.
pub const R0: f64 = 1.107_148_717_794_090_4;

/// Inverse-trig arguments may overshoot `[-1, 1]` by this much before the
/// input is rejected as degenerate.
pub const CLAMP_GUARD: f64 = 1e-9;

/// Sides and angles below this are rejected at construction.
pub const DEGENERACY_FLOOR: f64 = 1e-12;

/// Glued sides must agree in length to this absolute tolerance.
pub const GLUE_TOL: f64 = 1e-9;

/// Slack allowed on a transformed triangle's triangle inequality, relative
/// to its longest side.
pub const TRANSFORM_SLACK: f64 = 1e-12;

/// Step of the log-polar curvature stencil.
pub const CURVATURE_STEP: f64 = 1e-2;

/// Curvature is sampled this far from the origin and from the boundary.
pub const CURVATURE_MARGIN: f64 = 1e-2;

/// Circumradii at or above `π/2 - HEMISPHERE_TOL` are flagged.
pub const HEMISPHERE_TOL: f64 = 1e-9;

/// `arctan √8`, computed.
pub fn b0_arctan() -> f64 {
    8f64.sqrt().atan()
}

/// `arccos(1/3)`, computed.
pub fn b0_arccos() -> f64 {
    (1.0f64 / 3.0).acos()
}

/// Lower bound `2 arctan √(m/(m+2))` for the spherical Bloch radius of
/// functions with all critical points of multiplicity at least `m`.
/// `None` stands for `m = ∞`.
pub fn multiplicity_bound(m: Option<u32>) -> f64 {
    match m {
        None => FRAC_PI_2,
        Some(m) => {
            let m = f64::from(m);
            2.0 * (m / (m + 2.0)).sqrt().atan()
        }
    }
}

/// Circumradius of the equilateral triangle with angles `qπ/3`, in the
/// form `arctan √(-cos(πq/2) / cos³(πq/6))` for `q ∈ (1, 3]`.
///
/// Evaluated as an `atan2` so that `q = 3`, where both numerator and
/// denominator vanish, returns the limit `π/2`.
pub fn equilateral_radius_multiple(q: f64) -> crate::Result<f64> {
    if !(q > 1.0 && q <= 3.0) {
        return Err(crate::error::domain("q", q, "(1, 3]"));
    }
    let num = (-(PI * q / 2.0).cos()).max(0.0);
    let den = (PI * q / 6.0).cos().max(0.0);
    Ok(num.sqrt().atan2(den * den.sqrt()))
}

/// Circumradius of the spherical equilateral triangle with angle `A`,
/// `A ∈ (π/3, π)`.
pub fn equilateral_circumradius(angle: f64) -> crate::Result<f64> {
    if !(angle > PI / 3.0 && angle < PI) {
        return Err(crate::error::domain("angle", angle, "(π/3, π)"));
    }
    let cos_side = angle.cos() / (1.0 - angle.cos());
    let half_tan = ((1.0 - cos_side) / (1.0 + cos_side)).sqrt();
    Ok(half_tan.atan2((angle / 2.0).cos()))
}

/// Radians to `(degrees, arc minutes)`, minutes rounded to the nearest.
pub fn degrees_minutes(rad: f64) -> (i64, i64) {
    let total = (rad.to_degrees() * 60.0).round() as i64;
    (total / 60, total % 60)
}
