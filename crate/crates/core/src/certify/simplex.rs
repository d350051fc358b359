//! Nelder–Mead on a box, with trial points clamped back into the box.

pub(crate) struct Simplex {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub max_iter: usize,
    pub ftol: f64,
}

impl Simplex {
    fn clamp(&self, x: &mut [f64]) {
        for ((v, lo), hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(*lo, *hi);
        }
    }

    /// Minimize `f` from `x0` with initial edge lengths `step`. Returns the
    /// best point and value seen; never worse than `f(x0)`.
    pub fn minimize<F: Fn(&[f64]) -> f64>(
        &self,
        f: F,
        x0: &[f64],
        step: &[f64],
    ) -> (Vec<f64>, f64) {
        let n = x0.len();
        let eval = |x: &mut Vec<f64>| {
            self.clamp(x);
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut pts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let mut start = x0.to_vec();
        let f0 = eval(&mut start);
        pts.push((start.clone(), f0));
        for i in 0..n {
            let mut x = start.clone();
            x[i] += step[i];
            if x[i] > self.upper[i] {
                x[i] = start[i] - step[i];
            }
            let v = eval(&mut x);
            pts.push((x, v));
        }
        let order = |pts: &mut Vec<(Vec<f64>, f64)>| {
            pts.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| cmp_vec(&a.0, &b.0)));
        };
        let combine = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
            c.iter().zip(w).map(|(ci, wi)| ci + t * (wi - ci)).collect()
        };
        for _ in 0..self.max_iter {
            order(&mut pts);
            let (best, worst) = (pts[0].1, pts[n].1);
            if worst.is_finite() && worst - best <= self.ftol * best.abs().max(1e-300) {
                break;
            }
            let mut centroid = vec![0.0; n];
            for (x, _) in &pts[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let mut xr = combine(&centroid, &pts[n].0, -1.0);
            let fr = eval(&mut xr);
            if fr < pts[0].1 {
                let mut xe = combine(&centroid, &pts[n].0, -2.0);
                let fe = eval(&mut xe);
                pts[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < pts[n - 1].1 {
                pts[n] = (xr, fr);
            } else {
                let (mut xc, outside) = if fr < pts[n].1 {
                    (combine(&centroid, &xr, 0.5), true)
                } else {
                    (combine(&centroid, &pts[n].0, 0.5), false)
                };
                let fc = eval(&mut xc);
                if (outside && fc <= fr) || (!outside && fc < pts[n].1) {
                    pts[n] = (xc, fc);
                } else {
                    let x0 = pts[0].0.clone();
                    for p in pts.iter_mut().skip(1) {
                        let mut xs = combine(&x0, &p.0, 0.5);
                        let fs = eval(&mut xs);
                        *p = (xs, fs);
                    }
                }
            }
        }
        order(&mut pts);
        let (x, v) = pts.swap_remove(0);
        if v <= f0 {
            (x, v)
        } else {
            (start, f0)
        }
    }
}

fn cmp_vec(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}
