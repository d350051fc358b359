use std::f64::consts::PI;

use crate::distortion::{angle_distortion, transform, Family};
use crate::error::{domain, Result};
use crate::surface::Geometry;
use crate::trig::{EuclideanTriangle, SphericalTriangle, Triangle};

/// What is tracked along a sequence with one vanishing angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateKind {
    /// `min(α̃/α, β̃/β)` for the two smaller angles, against `1/2`;
    /// `F_k` on the sphere, `G₁` in the plane.
    SmallAngles,
    /// `D` under `F_k` or `G₁`, against `1/2`.
    Half,
    /// `D` under `F_k*` or `G₁*`, against `1/3`.
    Third,
}

impl DegenerateKind {
    pub fn threshold(&self) -> f64 {
        match self {
            DegenerateKind::Third => 1.0 / 3.0,
            _ => 0.5,
        }
    }

    fn family(&self, geometry: Geometry, k: f64) -> Family {
        match (self, geometry) {
            (DegenerateKind::Third, Geometry::Spherical) => Family::FkStar(k),
            (DegenerateKind::Third, Geometry::Euclidean) => Family::G1Star,
            (_, Geometry::Spherical) => Family::Fk(k),
            (_, Geometry::Euclidean) => Family::G1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateReport {
    /// `(k, value)` along the sequence.
    pub values: Vec<(f64, f64)>,
    /// Minimum over the second half of the sequence.
    pub tail_min: f64,
    pub threshold: f64,
    pub margin: f64,
}

impl DegenerateReport {
    pub fn passes(&self) -> bool {
        self.tail_min >= self.threshold + self.margin
    }
}

/// Triangles `Δ_j` with the angle `β₀` between sides `a_j = 2^(−j)/2` and
/// `c = 1/2`, so that `α_j → 0` and `β_j → β₀`, paired with `k = 2^j`.
/// The liminf is estimated by the minimum over `j ∈ [steps/2, steps]`.
pub fn degenerate_family_test(
    kind: DegenerateKind,
    geometry: Geometry,
    beta0: f64,
    steps: u32,
    margin: f64,
) -> Result<DegenerateReport> {
    if !(beta0 > 0.0 && beta0 <= PI / 2.0) {
        return Err(domain("β₀", beta0, "(0, π/2]"));
    }
    let c = 0.5;
    let mut values = Vec::with_capacity(steps as usize + 1);
    for j in 0..=steps {
        let k = 2f64.powi(j as i32);
        let a = c * 2f64.powi(-(j as i32));
        let f = kind.family(geometry, k);
        let out = match geometry {
            Geometry::Euclidean => {
                let b = ((a - c).powi(2) + 4.0 * a * c * (0.5 * beta0).sin().powi(2)).sqrt();
                let t = EuclideanTriangle::new(a, b, c)?;
                measure(kind, f, &t)?
            }
            Geometry::Spherical => {
                let hav =
                    (0.5 * (a - c)).sin().powi(2) + a.sin() * c.sin() * (0.5 * beta0).sin().powi(2);
                let b = 2.0 * hav.sqrt().asin();
                let t = SphericalTriangle::new(a, b, c)?;
                measure(kind, f, &t)?
            }
        };
        values.push((k, out));
    }
    let tail_min = values[steps as usize / 2..]
        .iter()
        .map(|v| v.1)
        .fold(f64::INFINITY, f64::min);
    Ok(DegenerateReport {
        values,
        tail_min,
        threshold: kind.threshold(),
        margin,
    })
}

fn measure<T: Triangle>(kind: DegenerateKind, f: Family, t: &T) -> Result<f64> {
    Ok(match kind {
        DegenerateKind::SmallAngles => {
            let before = t.angles();
            let after = transform(f, t)?.angles();
            let mut idx = [0usize, 1, 2];
            idx.sort_by(|&i, &j| before[i].total_cmp(&before[j]));
            let mut sorted_after = after;
            sorted_after.sort_by(f64::total_cmp);
            (sorted_after[0] / before[idx[0]]).min(sorted_after[1] / before[idx[1]])
        }
        _ => angle_distortion(f, t)?.d,
    })
}
