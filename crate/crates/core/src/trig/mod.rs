//! Spherical and Euclidean triangle solvers, the `(R, φ, t)` chart of
//! triangles inscribed in a circle, and the embedding in 3-space used to
//! cross-check every closed form.
//!
//! Triangles store side lengths only. Side `a` is opposite the angle `α`,
//! `b` opposite `β`, `c` opposite `γ`.

pub(crate) mod embed;
mod euclidean;
mod params;
mod spherical;

pub use embed::EmbeddedTriangle;
pub use euclidean::{half_angle_side, EuclideanTriangle};
pub use params::TriangleParams;
pub use spherical::{IdentityResiduals, SphericalTriangle};

use std::f64::consts::PI;

use crate::constants::CLAMP_GUARD;
use crate::error::{domain, Error, Result};

/// Common read access to spherical and Euclidean triangles.
pub trait Triangle {
    fn sides(&self) -> [f64; 3];
    fn angles(&self) -> [f64; 3];

    /// Whether the angle distortion is defined for this triangle.
    fn distortable(&self) -> Result<()> {
        Ok(())
    }
}

/// Chord of an arc on the unit sphere, `2 sin(t/2)`.
pub fn chd(t: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&t) {
        return Err(domain("arc", t, "[0, π]"));
    }
    Ok(chord(t))
}

/// Arc subtended by a chord of the unit sphere.
pub fn chd_inv(x: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&x) {
        return Err(domain("chord", x, "[0, 2]"));
    }
    Ok(arc(x))
}

#[inline]
pub(crate) fn chord(t: f64) -> f64 {
    2.0 * (0.5 * t).sin()
}

#[inline]
pub(crate) fn arc(x: f64) -> f64 {
    2.0 * (0.5 * x).min(1.0).asin()
}

/// `[b + c - a, c + a - b, a + b - c]` without catastrophic cancellation.
pub(crate) fn excesses(s: [f64; 3]) -> [f64; 3] {
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let (x, y, z) = (s[idx[0]], s[idx[1]], s[idx[2]]);
    let mut out = [0.0; 3];
    out[idx[0]] = z - (x - y);
    out[idx[1]] = z + (x - y);
    out[idx[2]] = x + (y - z);
    out
}

/// Clamp a cosine into `[-1, 1]`, rejecting overshoot beyond the guard.
pub(crate) fn clamp_cos(v: f64, what: &str) -> Result<f64> {
    if v.abs() > 1.0 + CLAMP_GUARD || !v.is_finite() {
        return Err(Error::Degenerate(format!(
            "{what}: cosine {v} out of range"
        )));
    }
    Ok(v.clamp(-1.0, 1.0))
}
