//! Angle distortion of spherical and Euclidean triangles under side-length
//! transforms, with numerical certification of the sharp lower bounds and
//! tools for triangle complexes glued from such triangles.
//!
//! The modules build on each other bottom-up:
//!
//! - [`trig`]: triangle solvers, the `(R, φ, t)` chart and the 3D embedding.
//! - [`distortion`]: side-distortion families and the functional `D(F, Δ)`.
//! - [`projection`]: central projection onto the plane of the vertices.
//! - [`surface`]: triangle complexes, cone angles and the cone density.
//! - [`certify`]: grid scans, refinement, and the constants search.
//! - [`oracle`]: coordinate-based cross-checks of the closed forms.

pub mod certify;
pub mod cli;
pub mod constants;
pub mod distortion;
pub mod error;
pub mod oracle;
pub mod projection;
pub mod surface;
pub mod trig;

pub use distortion::{angle_distortion, transform, DistortionReport, Family};
pub use error::{Error, Result};
pub use trig::{EmbeddedTriangle, EuclideanTriangle, SphericalTriangle, Triangle, TriangleParams};
