use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::threshold;
use crate::distortion::{angle_distortion, transform, Domain, Family};
use crate::error::{Error, Result};
use crate::trig::{EuclideanTriangle, Triangle};

/// Plane triangle with angles `α ≤ β ≤ γ` and longest side `scale`.
fn from_angles(alpha: f64, beta: f64, scale: f64) -> Result<EuclideanTriangle> {
    let gamma = PI - alpha - beta;
    let k = scale / gamma.sin();
    EuclideanTriangle::new(k * alpha.sin(), k * beta.sin(), scale)
}

/// A random plane triangle: smallest angle log-uniform in `[10⁻⁶, π/3]`,
/// middle angle uniform over the admissible range, longest side
/// log-uniform in `[10⁻⁶, 10⁶]`.
pub fn random_euclidean<R: Rng + ?Sized>(rng: &mut R) -> EuclideanTriangle {
    let la = 1e-6f64.ln();
    loop {
        let alpha = (la + ((PI / 3.0).ln() - la) * rng.random::<f64>()).exp();
        let beta = alpha + ((PI - alpha) / 2.0 - alpha) * rng.random::<f64>();
        let scale = (la + (-2.0 * la) * rng.random::<f64>()).exp();
        if let Ok(t) = from_angles(alpha, beta, scale) {
            return t;
        }
    }
}

fn check_plane(f: Family) -> Result<()> {
    if f.domain() != Domain::HalfLine {
        return Err(Error::Input(format!(
            "{f} acts on arcs; expected a plane family"
        )));
    }
    Ok(())
}

const CHUNK: usize = 4096;

/// Run `body` over `n` random plane triangles in fixed chunks, each chunk
/// with its own stream of the seeded generator.
pub(super) fn chunked<T: Send, F>(n: usize, seed: u64, body: F) -> Vec<T>
where
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            body(&mut rng, CHUNK.min(n - c * CHUNK))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepReport {
    pub evaluated: usize,
    pub threshold: f64,
    pub min_d: f64,
    pub witness: [f64; 3],
    /// Triangles with `D ≤ threshold`.
    pub violations: usize,
}

/// `D(f, Δ)` over `n` random plane triangles.
pub fn planar_sweep(f: Family, n: usize, seed: u64) -> Result<SweepReport> {
    check_plane(f)?;
    let thr = threshold(f);
    let parts = chunked(n, seed, |rng, m| {
        let mut best = (f64::INFINITY, [0.0; 3]);
        let mut bad = 0;
        for _ in 0..m {
            let t = random_euclidean(rng);
            let d = angle_distortion(f, &t).map_or(f64::NAN, |r| r.d);
            if d.is_nan() || d <= thr {
                bad += 1;
            }
            if d < best.0 || d.is_nan() {
                best = (d, t.sides());
            }
        }
        (best, bad)
    });
    let mut out = SweepReport {
        evaluated: n,
        threshold: thr,
        min_d: f64::INFINITY,
        witness: [0.0; 3],
        violations: 0,
    };
    for ((d, w), bad) in parts {
        out.violations += bad;
        if d < out.min_d || d.is_nan() {
            out.min_d = d;
            out.witness = w;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusRow {
    pub mu: f64,
    /// `inf {D − threshold : α + β ≥ μ}` over the sampled triangles.
    pub g: f64,
}

/// Tabulate the empirical modulus of `f` (one of `g1`, `g1star`): for
/// each `μ`, the least margin of `D` above its threshold among plane
/// triangles whose two smaller angles sum to at least `μ`. Shapes run over
/// an `n × n` angle grid including the equilateral, sizes over `n`
/// log-spaced scales in `[10⁻⁶, 10⁶]`.
pub fn empirical_modulus(f: Family, mus: &[f64], n: usize) -> Result<Vec<ModulusRow>> {
    check_plane(f)?;
    if n < 2 {
        return Err(Error::Input("empirical modulus needs n ≥ 2".into()));
    }
    if let Some(&m) = mus
        .iter()
        .find(|&&m| !(m > 0.0 && m <= 2.0 * PI / 3.0 + 1e-12))
    {
        return Err(crate::error::domain("μ", m, "(0, 2π/3]"));
    }
    let thr = threshold(f);
    let third = PI / 3.0;
    let mut shapes = vec![(third, third)];
    for i in 0..n {
        let u = i as f64 / (n - 1) as f64;
        let alpha = 1e-4 * (third / 1e-4).powf(u);
        for j in 0..n {
            let v = j as f64 / (n - 1) as f64;
            shapes.push((alpha, alpha + ((PI - alpha) / 2.0 - alpha) * v));
        }
    }
    let scales: Vec<f64> = (0..n)
        .map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / (n - 1) as f64))
        .chain([1.0])
        .collect();
    let mut pts: Vec<(f64, f64)> = shapes
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            scales.iter().filter_map(move |&s| {
                let t = from_angles(a, b, s).ok()?;
                Some((a + b, angle_distortion(f, &t).ok()?.d - thr))
            })
        })
        .collect();
    pts.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.total_cmp(&y.1)));
    let mut running = Vec::with_capacity(pts.len());
    let mut m = f64::INFINITY;
    for &(mu, g) in &pts {
        m = m.min(g);
        running.push((mu, m));
    }
    Ok(mus
        .iter()
        .map(|&mu| {
            let g = running
                .iter()
                .take_while(|p| p.0 >= mu - 1e-12)
                .last()
                .map_or(f64::INFINITY, |p| p.1);
            ModulusRow { mu, g }
        })
        .collect())
}

/// Where the sides of a plane triangle sit against the crossover `1/k²`
/// of `G_k`: 1 all below, 2 only the longest above, 3 only the shortest
/// below, 4 all above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneCase {
    AllBelow,
    LongestAbove,
    ShortestBelow,
    AllAbove,
}

impl PlaneCase {
    pub fn of(sides: [f64; 3], k: f64) -> Self {
        let mut s = sides;
        s.sort_by(f64::total_cmp);
        let cut = 1.0 / (k * k);
        match s.iter().filter(|&&x| x > cut).count() {
            0 => PlaneCase::AllBelow,
            1 => PlaneCase::LongestAbove,
            2 => PlaneCase::ShortestBelow,
            _ => PlaneCase::AllAbove,
        }
    }

    pub fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport {
    /// Largest `(π/2 − γ̃)/(α + β)²` over the sweep.
    pub max_ratio: f64,
    pub case_max: [Option<f64>; 4],
    pub evaluated: usize,
}

/// Sweep plane triangles with `α + β ∈ [10⁻⁴, 10⁻¹]`, `α/(α+β) ∈ (0, 1/2]`
/// and `k² c ∈ [10⁻¹, 10⁴]`, all at resolution `n`, for
/// `k = 1, 2, …, 2¹⁰`, and record how far the largest angle under `G_k`
/// falls below `π/2` relative to `(α + β)²`.
pub fn small_angle_asymptotic(n: usize) -> Result<AsymptoticReport> {
    if n < 2 {
        return Err(Error::Input("sweep needs n ≥ 2".into()));
    }
    let lin = |lo: f64, hi: f64, i: usize| lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
    let cells: Vec<(f64, f64)> = (0..=10)
        .flat_map(|j| (0..n).map(move |i| (2f64.powi(j), i)))
        .map(|(k, i)| (k, lin(1e-4, 1e-1, i)))
        .collect();
    let parts: Vec<([Option<f64>; 4], usize)> = cells
        .par_iter()
        .map(|&(k, mu)| {
            let mut best = [None; 4];
            let mut count = 0;
            for iu in 1..=n {
                let u = 0.5 * iu as f64 / n as f64;
                for is in 0..n {
                    let c = lin(1e-1, 1e4, is) / (k * k);
                    let Ok(t) = from_angles(u * mu, (1.0 - u) * mu, c) else {
                        continue;
                    };
                    let Ok(tt) = transform(Family::Gk(k), &t) else {
                        continue;
                    };
                    let g = tt.angles().into_iter().fold(0.0, f64::max);
                    let q = (FRAC_PI_2 - g) / (mu * mu);
                    let slot = &mut best[PlaneCase::of(t.sides(), k).index()];
                    *slot = Some(slot.map_or(q, |m: f64| m.max(q)));
                    count += 1;
                }
            }
            (best, count)
        })
        .collect();
    let mut case_max = [None; 4];
    let mut evaluated = 0;
    for (b, c) in parts {
        evaluated += c;
        for (m, x) in case_max.iter_mut().zip(b) {
            *m = match (*m, x) {
                (Some(p), Some(q)) => Some(f64::max(p, q)),
                (p, q) => p.or(q),
            };
        }
    }
    let max_ratio = case_max
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(AsymptoticReport {
        max_ratio,
        case_max,
        evaluated,
    })
}

/// For the isosceles plane triangle with base angles `β` and all sides
/// above the crossover of `G_k`: `(cos γ̃, 2 sin²(β/2))`, which agree.
pub fn isosceles_case_four(beta: f64, k: f64) -> Result<(f64, f64)> {
    if !(beta > 0.0 && beta < PI / 3.0) {
        return Err(crate::error::domain("β", beta, "(0, π/3)"));
    }
    let cut = 1.0 / (k * k);
    let leg = 2.0 * cut;
    let t = EuclideanTriangle::new(leg, leg, 2.0 * leg * beta.cos())?;
    let tt = transform(Family::Gk(k), &t)?;
    let g = tt.angles()[2];
    Ok((g.cos(), 2.0 * (0.5 * beta).sin().powi(2)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargestAngleReport {
    pub evaluated: usize,
    /// Smallest `γ̃ − π/3` seen.
    pub min_excess: f64,
    pub witness: [f64; 3],
    pub k: f64,
}

/// Largest transformed angle under `G_k*`, `k = 2^j` with random
/// `j ∈ 0..=10`, over `n` random plane triangles.
pub fn largest_angle_check(n: usize, seed: u64) -> Result<LargestAngleReport> {
    let parts = chunked(n, seed, |rng, m| {
        let mut best = (f64::INFINITY, [0.0; 3], 1.0);
        for _ in 0..m {
            let t = random_euclidean(rng);
            let k = 2f64.powi(rng.random_range(0..=10));
            let Ok(tt) = transform(Family::GkStar(k), &t) else {
                continue;
            };
            let g = tt.angles().into_iter().fold(0.0, f64::max) - PI / 3.0;
            if g < best.0 {
                best = (g, t.sides(), k);
            }
        }
        best
    });
    let (min_excess, witness, k) =
        parts
            .into_iter()
            .fold((f64::INFINITY, [0.0; 3], 1.0), |a, b| {
                if b.0 < a.0 {
                    b
                } else {
                    a
                }
            });
    Ok(LargestAngleReport {
        evaluated: n,
        min_excess,
        witness,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_triangles_are_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let t = random_euclidean(&mut rng);
            let mut a = t.angles();
            a.sort_by(f64::total_cmp);
            assert!(a[0] >= 1e-6 * (1.0 - 1e-9) && a[0] <= PI / 3.0 + 1e-12);
            let c = t.diameter();
            assert!((1e-6 * (1.0 - 1e-9)..=1e6 * (1.0 + 1e-9)).contains(&c));
        }
    }

    #[test]
    fn sweeps_stay_above_thresholds() {
        let r = planar_sweep(Family::G1, 20_000, 3).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_d > 0.5);
        let r = planar_sweep(Family::G1Star, 20_000, 3).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.min_d > 1.0 / 3.0);
        assert!(planar_sweep(Family::Finf, 10, 0).is_err());
    }

    #[test]
    fn sweep_is_seeded() {
        let a = planar_sweep(Family::G1, 5000, 9).unwrap();
        let b = planar_sweep(Family::G1, 5000, 9).unwrap();
        let c = planar_sweep(Family::G1, 5000, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.witness, c.witness);
    }

    #[test]
    fn modulus_table() {
        let mus = [0.01, 0.1, 0.5, 1.0, 2.0, 2.0 * (PI / 3.0)];
        for f in [Family::G1, Family::G1Star] {
            let rows = empirical_modulus(f, &mus, 16).unwrap();
            let last = rows.last().unwrap().g;
            assert!((last - (1.0 - threshold(f))).abs() < 1e-12);
            assert!(rows.windows(2).all(|w| w[0].g <= w[1].g));
            assert!(rows.iter().all(|r| r.g > 0.0));
        }
        assert!(empirical_modulus(Family::G1, &[3.0], 8).is_err());
    }

    #[test]
    fn plane_cases() {
        let k = 2.0;
        assert_eq!(PlaneCase::of([0.1, 0.1, 0.15], k), PlaneCase::AllBelow);
        assert_eq!(PlaneCase::of([0.1, 0.2, 0.3], k), PlaneCase::LongestAbove);
        assert_eq!(PlaneCase::of([0.1, 0.3, 0.35], k), PlaneCase::ShortestBelow);
        assert_eq!(PlaneCase::of([0.3, 0.3, 0.3], k), PlaneCase::AllAbove);
    }

    #[test]
    fn case_four_closed_form() {
        for beta in [1e-3, 0.01, 0.2, 0.7] {
            for k in [1.0, 8.0, 1024.0] {
                let (x, y) = isosceles_case_four(beta, k).unwrap();
                assert!((x - y).abs() < 1e-12, "β = {beta}, k = {k}");
            }
        }
    }

    #[test]
    fn all_below_crossover_keeps_shape() {
        let t = from_angles(0.01, 0.02, 0.5).unwrap();
        let tt = transform(Family::Gk(1.0), &t).unwrap();
        let g = tt.angles()[2];
        assert!((g - (PI - 0.03)).abs() < 1e-12);
        assert!(FRAC_PI_2 - g < 0.0);
    }

    #[test]
    fn asymptotic_constant_is_finite() {
        let r = small_angle_asymptotic(6).unwrap();
        assert!(r.max_ratio.is_finite());
        assert!(r.case_max.iter().all(Option::is_some));
        assert!(r.case_max[0].unwrap() < 0.0);
    }

    #[test]
    fn largest_angle_at_least_a_third_of_pi() {
        let r = largest_angle_check(20_000, 4).unwrap();
        assert!(r.min_excess >= -1e-12);
        let eq = transform(
            Family::GkStar(4.0),
            &EuclideanTriangle::equilateral(0.7).unwrap(),
        )
        .unwrap();
        assert!((eq.angles()[2] - PI / 3.0).abs() < 1e-15);
        let thin = EuclideanTriangle::new(1e-6, 1.0, 1.0).unwrap();
        let tt = transform(Family::GkStar(1.0), &thin).unwrap();
        assert!(tt.angles().into_iter().fold(0.0, f64::max) >= FRAC_PI_2 - 1e-6);
    }
}
