use rand::Rng;

use super::TriangleParams;
use crate::error::{Error, Result};

pub(crate) type Vec3 = [f64; 3];

pub(crate) fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn sub(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub(crate) fn scale(s: f64, v: Vec3) -> Vec3 {
    [s * v[0], s * v[1], s * v[2]]
}

pub(crate) fn norm(v: Vec3) -> f64 {
    dot(v, v).sqrt()
}

/// Great-circle distance between unit vectors.
pub(crate) fn arc_between(u: Vec3, v: Vec3) -> f64 {
    norm(cross(u, v)).atan2(dot(u, v))
}

/// Angle at `p` between the great circles towards `q` and `s`.
pub(crate) fn corner_angle(p: Vec3, q: Vec3, s: Vec3) -> f64 {
    let u = sub(q, scale(dot(q, p), p));
    let w = sub(s, scale(dot(s, p), p));
    norm(cross(u, w)).atan2(dot(u, w))
}

/// Three unit vectors `[A, B, C]`; side `a` is `|BC|` and so on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedTriangle {
    pub v: [Vec3; 3],
}

impl EmbeddedTriangle {
    pub fn new(v: [Vec3; 3]) -> Result<Self> {
        for p in &v {
            if (norm(*p) - 1.0).abs() > 1e-12 {
                return Err(Error::Input(format!("vertex {p:?} is not a unit vector")));
            }
        }
        if norm(cross(sub(v[1], v[0]), sub(v[2], v[0]))) == 0.0 {
            return Err(Error::Degenerate("coincident or collinear vertices".into()));
        }
        Ok(Self { v })
    }

    /// Vertices on the circle of Euclidean radius `sin R` in the plane
    /// `z = cos R`: `C` at circle angle 0, `B` at `2(t − φ)`, `A` at
    /// `2(t + φ)`.
    pub fn from_params(p: &TriangleParams) -> Self {
        let (s, c) = p.r().sin_cos();
        let at = |theta: f64| [s * theta.cos(), s * theta.sin(), c];
        let lead = p.offset();
        Self {
            v: [
                at(2.0 * (2.0 * p.phi() + lead)),
                at(2.0 * lead),
                [s, 0.0, c],
            ],
        }
    }

    /// Apply a rotation, given as a row-major matrix.
    pub fn rotated(&self, m: [[f64; 3]; 3]) -> Self {
        let rot = |p: Vec3| [dot(m[0], p), dot(m[1], p), dot(m[2], p)];
        Self { v: self.v.map(rot) }
    }

    pub fn sides(&self) -> [f64; 3] {
        let [a, b, c] = self.v;
        [arc_between(b, c), arc_between(c, a), arc_between(a, b)]
    }

    pub fn angles(&self) -> [f64; 3] {
        let [a, b, c] = self.v;
        [
            corner_angle(a, b, c),
            corner_angle(b, c, a),
            corner_angle(c, a, b),
        ]
    }

    /// Unit normal of the plane through the vertices, oriented away from
    /// the origin.
    pub fn plane_normal(&self) -> Vec3 {
        let [a, b, c] = self.v;
        let n = cross(sub(b, a), sub(c, a));
        let n = scale(1.0 / norm(n), n);
        if dot(n, a) < 0.0 {
            scale(-1.0, n)
        } else {
            n
        }
    }

    /// Distance from the origin to the plane through the vertices.
    pub fn plane_offset(&self) -> f64 {
        dot(self.plane_normal(), self.v[0])
    }

    /// Spherical circumradius from the plane: the circle through the
    /// vertices has Euclidean radius `sin R` and sits at height `cos R`.
    pub fn circumradius(&self) -> f64 {
        let [a, b, c] = self.v;
        let (x, y, z) = (norm(sub(b, c)), norm(sub(c, a)), norm(sub(a, b)));
        let area2 = norm(cross(sub(b, a), sub(c, a)));
        let rho = x * y * z / (2.0 * area2);
        rho.atan2(self.plane_offset())
    }

    /// A random point of the spherical triangle.
    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec3 {
        let (mut u, mut w) = (rng.random::<f64>(), rng.random::<f64>());
        if u + w > 1.0 {
            u = 1.0 - u;
            w = 1.0 - w;
        }
        let [a, b, c] = self.v;
        let p = [0, 1, 2].map(|i| a[i] + u * (b[i] - a[i]) + w * (c[i] - a[i]));
        scale(1.0 / norm(p), p)
    }

    /// Largest great-circle distance among `n` random pairs of points.
    pub fn max_sampled_distance<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> f64 {
        (0..n)
            .map(|_| arc_between(self.sample_point(rng), self.sample_point(rng)))
            .fold(0.0, f64::max)
    }
}
