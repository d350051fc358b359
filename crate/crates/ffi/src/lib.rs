//! C interface to `sphere-distort`.
//!
//! Every function returns an [`SdStatus`]. On failure the message is kept
//! per thread and read with [`sd_last_error_message`]. Complexes are opaque
//! handles released with [`sd_complex_free`]. Pointer arguments must be
//! null or valid for the documented length.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sphere_distort::certify::{scan_infimum, ScanSpec};
use sphere_distort::surface::{self, Geometry, Gluing, Orientation, SideRef, TriangleComplex};
use sphere_distort::{angle_distortion, Error, EuclideanTriangle, Family, SphericalTriangle};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Gluing = 4,
    Parse = 5,
    Invariant = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdFamilyKind {
    Chd = 0,
    Finf = 1,
    Fk = 2,
    FkStar = 3,
    Gk = 4,
    GkStar = 5,
    G1 = 6,
    G1Star = 7,
    Ginf = 8,
    Identity = 9,
}

/// A side transform; `k` is read only by the `k`-indexed kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdFamily {
    pub kind: SdFamilyKind,
    pub k: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdGeometry {
    Spherical = 0,
    Euclidean = 1,
}

/// Side `side_a` of triangle `tri_a` glued to side `side_b` of `tri_b`,
/// with opposite directions unless `same_direction` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SdGluing {
    pub tri_a: usize,
    pub side_a: usize,
    pub tri_b: usize,
    pub side_b: usize,
    pub same_direction: bool,
}

/// Summary of a distortion scan. `r`, `phi`, `t` locate the minimum.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SdScanResult {
    pub infimum: f64,
    pub threshold: f64,
    pub margin: f64,
    pub r: f64,
    pub phi: f64,
    pub t: f64,
    pub evaluated: u64,
    pub violations: u64,
}

/// Opaque triangle complex.
pub struct SdComplex(TriangleComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SdStatus {
    match e {
        Error::Domain { .. } | Error::Input(_) | Error::InvalidTriangle(_) => {
            SdStatus::InvalidArgument
        }
        Error::Degenerate(_) => SdStatus::Degenerate,
        Error::Gluing(_) => SdStatus::Gluing,
        Error::Parse { .. } => SdStatus::Parse,
        Error::Invariant(_) => SdStatus::Invariant,
    }
}

struct Fail(SdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SdStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> SdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SdStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside sphere-distort");
            SdStatus::Panic
        }
    }
}

fn family(f: SdFamily) -> Family {
    match f.kind {
        SdFamilyKind::Chd => Family::Chd,
        SdFamilyKind::Finf => Family::Finf,
        SdFamilyKind::Fk => Family::Fk(f.k),
        SdFamilyKind::FkStar => Family::FkStar(f.k),
        SdFamilyKind::Gk => Family::Gk(f.k),
        SdFamilyKind::GkStar => Family::GkStar(f.k),
        SdFamilyKind::G1 => Family::G1,
        SdFamilyKind::G1Star => Family::G1Star,
        SdFamilyKind::Ginf => Family::Ginf,
        SdFamilyKind::Identity => Family::Identity,
    }
}

fn checked_family(f: SdFamily) -> Result<Family, Fail> {
    let fam = family(f);
    if fam.k().is_some_and(|k| !(k > 0.0 && k.is_finite())) {
        return Err(Fail(
            SdStatus::InvalidArgument,
            format!("k = {} must be positive", f.k),
        ));
    }
    Ok(fam)
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SdStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn complex<'a>(c: *const SdComplex) -> Result<&'a TriangleComplex, Fail> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| null("complex"))
}

unsafe fn hand_out(out: *mut *mut SdComplex, c: TriangleComplex) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SdComplex(c)));
    Ok(())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn sd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `D(F, Δ)` for the triangle with the given sides.
#[no_mangle]
pub unsafe extern "C" fn sd_angle_distortion(
    fam: SdFamily,
    geometry: SdGeometry,
    sides: *const f64,
    out_d: *mut f64,
) -> SdStatus {
    guard(|| {
        if sides.is_null() || out_d.is_null() {
            return Err(null("sides or out_d"));
        }
        let s = std::slice::from_raw_parts(sides, 3);
        let f = checked_family(fam)?;
        let d = match geometry {
            SdGeometry::Spherical => {
                angle_distortion(f, &SphericalTriangle::new(s[0], s[1], s[2])?)?.d
            }
            SdGeometry::Euclidean => {
                angle_distortion(f, &EuclideanTriangle::new(s[0], s[1], s[2])?)?.d
            }
        };
        *out_d = d;
        Ok(())
    })
}

/// Build a complex from `3 * n_faces` side lengths and `n_gluings` gluings.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_new(
    geometry: SdGeometry,
    sides: *const f64,
    n_faces: usize,
    gluings: *const SdGluing,
    n_gluings: usize,
    out: *mut *mut SdComplex,
) -> SdStatus {
    guard(|| {
        if sides.is_null() && n_faces > 0 {
            return Err(null("sides"));
        }
        if gluings.is_null() && n_gluings > 0 {
            return Err(null("gluings"));
        }
        let flat = if n_faces == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(sides, 3 * n_faces)
        };
        let faces = flat.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let glue = if n_gluings == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(gluings, n_gluings)
        };
        let glue = glue
            .iter()
            .map(|g| Gluing {
                a: SideRef {
                    tri: g.tri_a,
                    side: g.side_a,
                },
                b: SideRef {
                    tri: g.tri_b,
                    side: g.side_b,
                },
                orientation: if g.same_direction {
                    Orientation::Same
                } else {
                    Orientation::Reversed
                },
            })
            .collect();
        let geometry = match geometry {
            SdGeometry::Spherical => Geometry::Spherical,
            SdGeometry::Euclidean => Geometry::Euclidean,
        };
        hand_out(out, TriangleComplex::new(geometry, faces, glue, None)?)
    })
}

/// Parse a complex from fixture text.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_parse(
    src: *const c_char,
    out: *mut *mut SdComplex,
) -> SdStatus {
    guard(|| hand_out(out, surface::parse_fixture(text(src, "text")?)?))
}

/// One of the named complexes: weierstrass, tetrahedron, octahedron,
/// icosahedron, octa2, icosa2, icosa3.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_builtin(
    name: *const c_char,
    out: *mut *mut SdComplex,
) -> SdStatus {
    guard(|| hand_out(out, surface::builtin(text(name, "name")?)?))
}

/// Release a complex. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_free(c: *mut SdComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Vertex, edge and face counts and the Euler characteristic. Any output
/// pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_counts(
    c: *const SdComplex,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
    euler: *mut i64,
) -> SdStatus {
    guard(|| {
        let c = complex(c)?;
        if let Some(v) = vertices.as_mut() {
            *v = c.num_vertices();
        }
        if let Some(e) = edges.as_mut() {
            *e = c.num_edges();
        }
        if let Some(f) = faces.as_mut() {
            *f = c.num_faces();
        }
        if let Some(x) = euler.as_mut() {
            *x = c.euler_characteristic();
        }
        Ok(())
    })
}

/// Total angle at each vertex into `out[0..cap]`. `*len` receives the
/// vertex count; a short buffer gives `BufferTooSmall` and writes nothing.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_total_angles(
    c: *const SdComplex,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> SdStatus {
    guard(|| {
        let c = complex(c)?;
        if len.is_null() {
            return Err(null("len"));
        }
        let totals = c.total_angles().totals;
        *len = totals.len();
        if cap < totals.len() {
            return Err(Fail(
                SdStatus::BufferTooSmall,
                format!("need room for {} angles, have {cap}", totals.len()),
            ));
        }
        if out.is_null() && !totals.is_empty() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(totals.as_ptr(), out, totals.len());
        Ok(())
    })
}

/// `|K·area + Σ(2π − θ_v) − 2πχ|` for a closed complex.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_gauss_bonnet(
    c: *const SdComplex,
    residual: *mut f64,
) -> SdStatus {
    guard(|| {
        let c = complex(c)?;
        if residual.is_null() {
            return Err(null("residual"));
        }
        *residual = c.gauss_bonnet()?.residual();
        Ok(())
    })
}

/// The flat complex obtained by transforming every side length.
#[no_mangle]
pub unsafe extern "C" fn sd_complex_transform(
    c: *const SdComplex,
    fam: SdFamily,
    out: *mut *mut SdComplex,
) -> SdStatus {
    guard(|| {
        let c = complex(c)?;
        let (flat, _) = c.transform(checked_family(fam)?)?;
        hand_out(out, flat)
    })
}

/// Lower bound scan of `D(F, Δ)` over circumradii below `r_max`, with the
/// default refinement settings.
#[no_mangle]
pub unsafe extern "C" fn sd_scan_infimum(
    fam: SdFamily,
    r_max: f64,
    n_r: usize,
    n_phi: usize,
    n_t: usize,
    seed: u64,
    out: *mut SdScanResult,
) -> SdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = ScanSpec {
            n_r,
            n_phi,
            n_t,
            seed,
            ..ScanSpec::new(checked_family(fam)?, r_max)
        };
        let res = scan_infimum(&spec)?;
        *out = SdScanResult {
            infimum: res.infimum,
            threshold: res.threshold,
            margin: res.margin,
            r: res.argmin.r(),
            phi: res.argmin.phi(),
            t: res.argmin.t(),
            evaluated: res.evaluated as u64,
            violations: res.violations as u64,
        };
        Ok(())
    })
}
