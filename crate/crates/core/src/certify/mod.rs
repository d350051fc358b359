//! Empirical lower bounds on the angle distortion.
//!
//! A scan evaluates `D(F, Δ)` on a grid over the `(R, φ, t)` chart with
//! `t ∈ (φ, π/2]`, densified logarithmically toward the degenerate corners
//! and with the branch crossovers of `F` as extra radius nodes. The best
//! grid points seed a simplex refinement. Every step is deterministic for a
//! given [`ScanSpec`], independent of the thread count.

mod degenerate;
mod planar;
mod search;
mod simplex;

pub use degenerate::{degenerate_family_test, DegenerateKind, DegenerateReport};
pub use planar::{
    empirical_modulus, isosceles_case_four, largest_angle_check, planar_sweep, random_euclidean,
    small_angle_asymptotic, AsymptoticReport, LargestAngleReport, ModulusRow, PlaneCase,
    SweepReport,
};
pub use search::{k_search, Certified, KSearch, KSearchOutcome, Target};

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constants::DEGENERACY_FLOOR;
use crate::distortion::{angle_distortion, Domain, Family};
use crate::error::{domain, Error, Result};
use crate::trig::{Triangle, TriangleParams};
use simplex::Simplex;

/// The constant a family's distortion is compared with: `1/3` for the
/// families that saturate at 1, `1/2` otherwise.
pub fn threshold(f: Family) -> f64 {
    match f {
        Family::FkStar(_) | Family::GkStar(_) | Family::G1Star => 1.0 / 3.0,
        _ => 0.5,
    }
}

/// Degeneracy regime of a small spherical triangle with diameter `d` and
/// circumradius `r`, for the family parameter `k`.
///
/// 1: `d` not small. 2: `d` small but comparable to `r`. 3: `d/r` small
/// even against `1/k²`. 4: `d/r` small but `k² d/r` not.
pub fn case_classify(d: f64, r: f64, k: f64) -> u8 {
    const SMALL: f64 = 1e-2;
    if d > SMALL {
        1
    } else if d / r > SMALL {
        2
    } else if k * k * d / r < SMALL {
        3
    } else {
        4
    }
}

/// Everything a scan needs; the same spec reproduces the same result.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub family: Family,
    /// Radii are scanned in `(0, r_max)`; the top node sits just below.
    pub r_max: f64,
    pub n_r: usize,
    pub n_phi: usize,
    pub n_t: usize,
    /// Extra uniformly random parameter points drawn from `seed`.
    pub random_samples: usize,
    pub seed: u64,
    /// Smallest `φ` and `t − φ` on the grid.
    pub floor: f64,
    /// Number of best grid points refined.
    pub refine_starts: usize,
    pub refine_iters: usize,
}

impl ScanSpec {
    pub fn new(family: Family, r_max: f64) -> Self {
        Self {
            family,
            r_max,
            n_r: 64,
            n_phi: 128,
            n_t: 128,
            random_samples: 4096,
            seed: 0,
            floor: 1e-6,
            refine_starts: 100,
            refine_iters: 300,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.family.domain() != Domain::Arc {
            return Err(Error::Input(format!(
                "{} acts on plane lengths; scans need a family on arcs",
                self.family
            )));
        }
        if !(self.r_max > 0.0 && self.r_max < FRAC_PI_2) {
            return Err(domain("R_max", self.r_max, "(0, π/2)"));
        }
        if self.n_r == 0 || self.n_phi == 0 || self.n_t == 0 {
            return Err(Error::Input("empty grid".into()));
        }
        if !(self.floor > 0.0 && self.floor < 0.01) {
            return Err(domain("floor", self.floor, "(0, 0.01)"));
        }
        Ok(())
    }

    /// Largest radius evaluated.
    pub fn r_top(&self) -> f64 {
        self.r_max * (1.0 - 1e-9)
    }
}

/// `n` points: a quarter log-spaced on `[lo, mid)`, the rest uniform on
/// `[mid, hi]`.
fn densified(n: usize, lo: f64, mid: f64, hi: f64) -> Vec<f64> {
    if n == 1 {
        return vec![hi];
    }
    let n_log = n / 4;
    let n_uni = n - n_log;
    let mut out: Vec<f64> = (0..n_log)
        .map(|i| lo * (mid / lo).powf(i as f64 / n_log as f64))
        .collect();
    out.extend((0..n_uni).map(|i| {
        if n_uni == 1 {
            hi
        } else {
            mid + (hi - mid) * i as f64 / (n_uni - 1) as f64
        }
    }));
    out
}

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// One evaluated parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub params: TriangleParams,
    pub d: f64,
}

impl Sample {
    fn key(&self) -> (f64, f64, f64, f64) {
        (self.d, self.params.r(), self.params.phi(), self.params.t())
    }

    /// Lexicographic on `(D, R, φ, t)`.
    pub fn cmp_key(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = (self.key(), other.key());
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
            .then(a.3.total_cmp(&b.3))
    }
}

/// `D` at a parameter point, or `None` if the triangle is degenerate.
pub fn evaluate(f: Family, r: f64, phi: f64, lead: f64) -> Option<Sample> {
    let params = TriangleParams::from_offset(r, phi, lead).ok()?;
    let tri = params.triangle_with_floor(DEGENERACY_FLOOR).ok()?;
    let rep = angle_distortion(f, &tri).ok()?;
    rep.d.is_finite().then_some(Sample { params, d: rep.d })
}

/// `|γ − π + α + β| / (α + β)²`, with `γ` the largest angle.
pub fn near_flat_ratio(angles: [f64; 3]) -> f64 {
    let mut a = angles;
    a.sort_by(f64::total_cmp);
    let s = a[0] + a[1];
    (a[2] - PI + s).abs() / (s * s)
}

#[derive(Debug, Clone, PartialEq)]
struct Partial {
    best: Vec<Sample>,
    evaluated: usize,
    violations: usize,
    case_min: [Option<f64>; 4],
    near_flat_max: Option<f64>,
}

impl Partial {
    fn new() -> Self {
        Self {
            best: Vec::new(),
            evaluated: 0,
            violations: 0,
            case_min: [None; 4],
            near_flat_max: None,
        }
    }

    fn add(&mut self, s: Sample, k: f64, thr: f64, keep: usize) {
        self.evaluated += 1;
        if s.d <= thr {
            self.violations += 1;
        }
        let tri = s.params.triangle().expect("evaluated triangles are valid");
        let case = case_classify(tri.diameter(), s.params.r(), k);
        let slot = &mut self.case_min[usize::from(case - 1)];
        *slot = Some(slot.map_or(s.d, |m| m.min(s.d)));
        if case == 4 {
            let q = near_flat_ratio(tri.angles());
            self.near_flat_max = Some(self.near_flat_max.map_or(q, |m| m.max(q)));
        }
        self.best.push(s);
        if self.best.len() >= 4 * keep.max(1) {
            self.trim(keep);
        }
    }

    fn trim(&mut self, keep: usize) {
        self.best.sort_by(Sample::cmp_key);
        self.best.truncate(keep.max(1));
    }

    fn merge(mut self, other: Partial, keep: usize) -> Partial {
        self.best.extend(other.best);
        self.trim(keep);
        self.evaluated += other.evaluated;
        self.violations += other.violations;
        for (a, b) in self.case_min.iter_mut().zip(other.case_min) {
            *a = match (*a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
        }
        self.near_flat_max = match (self.near_flat_max, other.near_flat_max) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationResult {
    pub family: Family,
    pub r_max: f64,
    pub threshold: f64,
    /// Smallest `D` found, after refinement.
    pub infimum: f64,
    pub argmin: TriangleParams,
    /// Smallest `D` on the grid and random samples.
    pub grid_min: f64,
    /// `infimum − threshold`.
    pub margin: f64,
    /// Smallest `D` per degeneracy regime (see [`case_classify`]).
    pub case_min: [Option<f64>; 4],
    /// Largest [`near_flat_ratio`] among regime-4 samples.
    pub near_flat_max: Option<f64>,
    pub evaluated: usize,
    /// Samples with `D ≤ threshold`.
    pub violations: usize,
    /// Best grid samples, ascending, that seeded the refinement.
    pub best: Vec<Sample>,
    pub refined: usize,
}

impl CertificationResult {
    pub fn argmin_sample(&self) -> Sample {
        Sample {
            params: self.argmin,
            d: self.infimum,
        }
    }
}

/// Radius, angle and offset nodes of the grid.
pub fn grid_axes(spec: &ScanSpec) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let top = spec.r_top();
    let radii = sorted_unique(densified(spec.n_r, top * 1e-4, top * 0.05, top));
    let mut phis = densified(spec.n_phi, spec.floor, 0.05, FRAC_PI_2 * (1.0 - 1e-3));
    phis.push(PI / 6.0);
    let phis = sorted_unique(phis);
    let fracs = sorted_unique(densified(spec.n_t, 1e-6, 0.05, 1.0));
    (radii, phis, fracs)
}

/// Radii where a side of the triangle `(·, φ, lead)` sits exactly at the
/// family's crossover.
fn crossover_radii(f: Family, phi: f64, lead: f64, top: f64) -> Vec<f64> {
    let Some(x) = f.crossover_chord() else {
        return Vec::new();
    };
    [lead.sin(), (2.0 * phi + lead).sin(), (2.0 * phi).sin()]
        .into_iter()
        .filter_map(|s| {
            let v = x / (2.0 * s);
            (v > 0.0 && v < 1.0).then(|| v.asin())
        })
        .filter(|&r| r < top)
        .collect()
}

fn random_params(spec: &ScanSpec) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let top = spec.r_top();
    let lf = spec.floor.ln();
    (0..spec.random_samples)
        .map(|_| {
            let r = top * (1.0 - rng.random::<f64>());
            let phi = (lf + (FRAC_PI_2.ln() - lf) * rng.random::<f64>())
                .exp()
                .min(FRAC_PI_2 - spec.floor);
            let span = FRAC_PI_2 - phi;
            let u = (lf + (-lf) * rng.random::<f64>()).exp();
            (r, phi, (u * span).max(spec.floor))
        })
        .collect()
}

pub fn scan_infimum(spec: &ScanSpec) -> Result<CertificationResult> {
    spec.validate()?;
    let f = spec.family;
    let thr = threshold(f);
    let k = f.k().unwrap_or(f64::INFINITY);
    let keep = spec.refine_starts.max(1);
    let top = spec.r_top();
    let (radii, phis, fracs) = grid_axes(spec);

    let grid = phis
        .par_iter()
        .map(|&phi| {
            let mut part = Partial::new();
            let span = FRAC_PI_2 - phi;
            let mut leads: Vec<f64> = fracs.iter().map(|u| (u * span).max(spec.floor)).collect();
            leads.dedup();
            for &lead in &leads {
                let mut rs = radii.clone();
                rs.extend(crossover_radii(f, phi, lead, top));
                for r in rs {
                    if let Some(s) = evaluate(f, r, phi, lead) {
                        part.add(s, k, thr, keep);
                    }
                }
            }
            part.trim(keep);
            part
        })
        .collect::<Vec<_>>();
    let random = random_params(spec)
        .par_chunks(256)
        .map(|chunk| {
            let mut part = Partial::new();
            for &(r, phi, lead) in chunk {
                if let Some(s) = evaluate(f, r, phi, lead) {
                    part.add(s, k, thr, keep);
                }
            }
            part.trim(keep);
            part
        })
        .collect::<Vec<_>>();
    let total = grid
        .into_iter()
        .chain(random)
        .fold(Partial::new(), |acc, p| acc.merge(p, keep));
    let Some(&grid_best) = total.best.first() else {
        return Err(Error::Input("the grid produced no valid triangle".into()));
    };

    let solver = Simplex {
        lower: vec![top * 1e-6, spec.floor.ln(), spec.floor.ln()],
        upper: vec![top, (FRAC_PI_2 - spec.floor).ln(), FRAC_PI_2.ln()],
        max_iter: spec.refine_iters,
        ftol: 1e-15,
    };
    let objective = |x: &[f64]| -> (f64, Option<Sample>) {
        let (r, phi) = (x[0], x[1].exp());
        let lead = x[2].exp().min(FRAC_PI_2 - phi);
        match evaluate(f, r, phi, lead) {
            Some(s) => (s.d, Some(s)),
            None => (f64::INFINITY, None),
        }
    };
    let refined: Vec<Sample> = total
        .best
        .par_iter()
        .map(|s| {
            let x0 = [s.params.r(), s.params.phi().ln(), s.params.offset().ln()];
            let step = [0.02 * top, 0.1, 0.1];
            let (x, _) = solver.minimize(|x| objective(x).0, &x0, &step);
            objective(&x)
                .1
                .filter(|r| r.cmp_key(s).is_lt())
                .unwrap_or(*s)
        })
        .collect();
    let best = refined
        .iter()
        .copied()
        .chain(std::iter::once(grid_best))
        .min_by(Sample::cmp_key)
        .expect("at least the grid minimum");

    Ok(CertificationResult {
        family: f,
        r_max: spec.r_max,
        threshold: thr,
        infimum: best.d,
        argmin: best.params,
        grid_min: grid_best.d,
        margin: best.d - thr,
        case_min: total.case_min,
        near_flat_max: total.near_flat_max,
        evaluated: total.evaluated,
        violations: total.violations + refined.iter().filter(|s| s.d <= thr).count(),
        refined: refined.len(),
        best: total.best,
    })
}

pub const CSV_COLUMNS: [&str; 14] = [
    "R", "phi", "t", "a", "b", "c", "alpha", "beta", "gamma", "alpha_t", "beta_t", "gamma_t", "D",
    "case",
];

/// One CSV record for a sample; angles in degrees when asked.
pub fn csv_record(f: Family, s: &Sample, degrees: bool) -> Result<Vec<String>> {
    let tri = s.params.triangle()?;
    let rep = angle_distortion(f, &tri)?;
    let k = f.k().unwrap_or(f64::INFINITY);
    let conv = |x: f64| if degrees { x.to_degrees() } else { x };
    let mut rec = vec![s.params.r(), s.params.phi(), s.params.t()]
        .into_iter()
        .map(conv)
        .chain(rep.sides)
        .chain(rep.angles.map(conv))
        .chain(rep.transformed_angles.map(conv))
        .chain([rep.d])
        .map(|x| x.to_string())
        .collect::<Vec<_>>();
    rec.push(case_classify(tri.diameter(), s.params.r(), k).to_string());
    Ok(rec)
}

/// CSV of the refined minimum followed by the best grid samples.
pub fn write_scan_csv<W: Write>(out: W, res: &CertificationResult, degrees: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(format!("writing CSV: {e}"));
    w.write_record(CSV_COLUMNS).map_err(io)?;
    let top = res.argmin_sample();
    let rest = res.best.iter().copied().filter(|s| *s != top);
    for s in std::iter::once(top).chain(rest) {
        w.write_record(csv_record(res.family, &s, degrees)?)
            .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Input(format!("writing CSV: {e}")))?;
    Ok(())
}

/// `D(f, Δ)` over `n` random spherical triangles with circumradius in
/// `(0, r_max]`. Shapes are drawn with `φ` and `t − φ` log-uniform down to
/// `10⁻⁶` so that thin and needle triangles are well represented.
pub fn spherical_sweep(f: Family, r_max: f64, n: usize, seed: u64) -> Result<SweepReport> {
    if f.domain() != Domain::Arc {
        return Err(Error::Input(format!(
            "{f} acts on plane lengths; expected an arc family"
        )));
    }
    if !(r_max > 0.0 && r_max < FRAC_PI_2) {
        return Err(domain("R_max", r_max, "(0, π/2)"));
    }
    let thr = threshold(f);
    let lf = 1e-6f64.ln();
    let parts = planar::chunked(n, seed, |rng, m| {
        let mut best = (f64::INFINITY, [0.0; 3]);
        let mut bad = 0;
        let mut count = 0;
        for _ in 0..m {
            let r = r_max * (1.0 - rng.random::<f64>());
            let phi = (lf + (FRAC_PI_2.ln() - lf) * rng.random::<f64>()).exp() * (1.0 - 1e-9);
            let lead = (FRAC_PI_2 - phi) * (lf * rng.random::<f64>()).exp();
            let Some(s) = evaluate(f, r, phi, lead) else {
                continue;
            };
            count += 1;
            if s.d <= thr {
                bad += 1;
            }
            if s.d < best.0 {
                best = (
                    s.d,
                    s.params.triangle().map_or([f64::NAN; 3], |t| t.sides()),
                );
            }
        }
        (best, bad, count)
    });
    let mut out = SweepReport {
        evaluated: 0,
        threshold: thr,
        min_d: f64::INFINITY,
        witness: [0.0; 3],
        violations: 0,
    };
    for ((d, w), bad, count) in parts {
        out.evaluated += count;
        out.violations += bad;
        if d < out.min_d {
            out.min_d = d;
            out.witness = w;
        }
    }
    Ok(out)
}
