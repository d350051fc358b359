//! Triangle complexes: triangles given by side lengths, glued along sides.
//!
//! Side `i` of a triangle runs from corner `(i+1) % 3` to corner
//! `(i+2) % 3`, and corner `i` is opposite side `i`. A `Reversed` gluing
//! identifies the start of one side with the end of the other, which is
//! how two consistently oriented neighbours meet; `Same` identifies start
//! with start.
//!
//! Vertices are classes of corners. They follow from the gluings, and a
//! fixture may coarsen them further so that triangles share a vertex
//! without sharing a side.

mod builtin;
mod cone;
mod fixture;

pub use builtin::{builtin, cyclic_cover, sphere_mesh, BUILTIN_NAMES};
pub use cone::{alpha_q_check, log_polar_curvature, AlphaQReport, ConeDensity};
pub use fixture::{parse_fixture, write_fixture};

use std::f64::consts::PI;

use crate::constants::{B0, GLUE_TOL};
use crate::distortion::{transform, Family};
use crate::error::{Error, Result};
use crate::trig::{EuclideanTriangle, SphericalTriangle, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Spherical,
    Euclidean,
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Spherical => "spherical",
            Geometry::Euclidean => "euclidean",
        }
    }

    /// Gaussian curvature of the faces.
    pub fn curvature(&self) -> f64 {
        match self {
            Geometry::Spherical => 1.0,
            Geometry::Euclidean => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub tri: usize,
    pub side: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub tri: usize,
    pub corner: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Reversed,
    Same,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub a: SideRef,
    pub b: SideRef,
    pub orientation: Orientation,
}

impl Gluing {
    pub fn reversed(a: SideRef, b: SideRef) -> Self {
        Self {
            a,
            b,
            orientation: Orientation::Reversed,
        }
    }

    /// Corner pairs identified by this gluing.
    fn corner_pairs(&self) -> [(Corner, Corner); 2] {
        let (f, i, g, j) = (self.a.tri, self.a.side, self.b.tri, self.b.side);
        let c = |tri, corner| Corner { tri, corner };
        match self.orientation {
            Orientation::Reversed => [
                (c(f, (i + 1) % 3), c(g, (j + 2) % 3)),
                (c(f, (i + 2) % 3), c(g, (j + 1) % 3)),
            ],
            Orientation::Same => [
                (c(f, (i + 1) % 3), c(g, (j + 1) % 3)),
                (c(f, (i + 2) % 3), c(g, (j + 2) % 3)),
            ],
        }
    }
}

/// Corners met walking around a vertex across glued sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub corners: Vec<Corner>,
    /// The walk returned to its start without meeting a free side.
    pub closed: bool,
}

/// Total angle at each vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexAngles {
    pub totals: Vec<f64>,
    /// All sides at the vertex are glued.
    pub interior: Vec<bool>,
}

impl VertexAngles {
    pub fn excess(&self, v: usize) -> f64 {
        self.totals[v] - 2.0 * PI
    }

    /// Smallest excess over `2π` among interior vertices.
    pub fn min_excess(&self) -> Option<(usize, f64)> {
        (0..self.totals.len())
            .filter(|&v| self.interior[v])
            .map(|v| (v, self.excess(v)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
    }
}

/// Face curvature plus vertex defects against `2πχ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussBonnet {
    pub face_term: f64,
    pub vertex_term: f64,
    pub euler: i64,
}

impl GaussBonnet {
    pub fn residual(&self) -> f64 {
        (self.face_term + self.vertex_term - 2.0 * PI * self.euler as f64).abs()
    }
}

/// Vertex angles of a complex before and after a side transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformReport {
    pub before: VertexAngles,
    pub after: VertexAngles,
}

impl TransformReport {
    /// Smallest `after / before` over interior vertices.
    pub fn min_ratio(&self) -> Option<f64> {
        (0..self.before.totals.len())
            .filter(|&v| self.before.interior[v])
            .map(|v| self.after.totals[v] / self.before.totals[v])
            .min_by(f64::total_cmp)
    }
}

/// The two radius/angle regimes of the covering hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Circumradii at most `b₀ − ε`, vertex angles at least `4π`.
    I,
    /// Circumradii at most `π/2 − ε`, vertex angles at least `6π`.
    II,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Variant::I),
            "ii" | "2" => Ok(Variant::II),
            _ => Err(Error::Input(format!(
                "unknown variant {s}; expected i or ii"
            ))),
        }
    }

    pub fn radius_cap(&self, eps: f64) -> f64 {
        match self {
            Variant::I => B0 - eps,
            Variant::II => PI / 2.0 - eps,
        }
    }

    pub fn min_angle(&self) -> f64 {
        match self {
            Variant::I => 4.0 * PI,
            Variant::II => 6.0 * PI,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Variant::I => "i",
            Variant::II => "ii",
        }
    }
}

/// Outcome of the covering hypotheses, with the first witnesses found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisReport {
    pub variant: Variant,
    pub eps: f64,
    pub closed: bool,
    pub radius_violation: Option<(usize, f64)>,
    pub angle_violation: Option<(usize, f64)>,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.closed && self.radius_violation.is_none() && self.angle_violation.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleComplex {
    geometry: Geometry,
    sides: Vec<[f64; 3]>,
    gluings: Vec<Gluing>,
    partner: Vec<[Option<SideRef>; 3]>,
    vertex_of: Vec<[usize; 3]>,
    classes: Vec<Vec<Corner>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl TriangleComplex {
    /// Validate and build. `classes`, if given, must partition all corners
    /// and coarsen the identifications made by the gluings.
    pub fn new(
        geometry: Geometry,
        sides: Vec<[f64; 3]>,
        gluings: Vec<Gluing>,
        classes: Option<Vec<Vec<Corner>>>,
    ) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::Input("complex has no triangles".into()));
        }
        for (n, s) in sides.iter().enumerate() {
            let check = match geometry {
                Geometry::Spherical => SphericalTriangle::new(s[0], s[1], s[2]).map(|_| ()),
                Geometry::Euclidean => EuclideanTriangle::new(s[0], s[1], s[2]).map(|_| ()),
            };
            check.map_err(|e| Error::Input(format!("triangle {n}: {e}")))?;
        }
        let f = sides.len();
        let mut partner = vec![[None; 3]; f];
        for g in &gluings {
            for r in [g.a, g.b] {
                if r.tri >= f || r.side >= 3 {
                    return Err(Error::Gluing(format!(
                        "side {}:{} does not exist",
                        r.tri, r.side
                    )));
                }
            }
            if g.a == g.b {
                return Err(Error::Gluing(format!(
                    "side {}:{} glued to itself",
                    g.a.tri, g.a.side
                )));
            }
            for (r, other) in [(g.a, g.b), (g.b, g.a)] {
                if partner[r.tri][r.side].is_some() {
                    return Err(Error::Gluing(format!(
                        "side {}:{} glued twice",
                        r.tri, r.side
                    )));
                }
                partner[r.tri][r.side] = Some(other);
            }
            let (la, lb) = (sides[g.a.tri][g.a.side], sides[g.b.tri][g.b.side]);
            if (la - lb).abs() > GLUE_TOL {
                return Err(Error::Gluing(format!(
                    "sides {}:{} and {}:{} have lengths {la} and {lb}",
                    g.a.tri, g.a.side, g.b.tri, g.b.side
                )));
            }
        }

        let idx = |c: Corner| 3 * c.tri + c.corner;
        let mut uf = UnionFind((0..3 * f).collect());
        for g in &gluings {
            for (x, y) in g.corner_pairs() {
                uf.union(idx(x), idx(y));
            }
        }
        let classes = match classes {
            None => {
                let mut out: Vec<Vec<Corner>> = Vec::new();
                let mut slot = vec![usize::MAX; 3 * f];
                for i in 0..3 * f {
                    let root = uf.find(i);
                    if slot[root] == usize::MAX {
                        slot[root] = out.len();
                        out.push(Vec::new());
                    }
                    out[slot[root]].push(Corner {
                        tri: i / 3,
                        corner: i % 3,
                    });
                }
                out
            }
            Some(given) => {
                let mut owner = vec![usize::MAX; 3 * f];
                for (v, class) in given.iter().enumerate() {
                    if class.is_empty() {
                        return Err(Error::Gluing(format!("vertex class {v} is empty")));
                    }
                    for &c in class {
                        if c.tri >= f || c.corner >= 3 {
                            return Err(Error::Gluing(format!(
                                "corner {}:{} does not exist",
                                c.tri, c.corner
                            )));
                        }
                        if owner[idx(c)] != usize::MAX {
                            return Err(Error::Gluing(format!(
                                "corner {}:{} in two classes",
                                c.tri, c.corner
                            )));
                        }
                        owner[idx(c)] = v;
                    }
                }
                if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
                    return Err(Error::Gluing(format!(
                        "corner {}:{} in no class",
                        i / 3,
                        i % 3
                    )));
                }
                for i in 0..3 * f {
                    let root = uf.find(i);
                    if owner[i] != owner[root] {
                        return Err(Error::Gluing(format!(
                            "corners {}:{} and {}:{} are identified by gluings but lie in different classes",
                            i / 3,
                            i % 3,
                            root / 3,
                            root % 3
                        )));
                    }
                }
                given
            }
        };
        let mut vertex_of = vec![[0; 3]; f];
        for (v, class) in classes.iter().enumerate() {
            for c in class {
                vertex_of[c.tri][c.corner] = v;
            }
        }
        Ok(Self {
            geometry,
            sides,
            gluings,
            partner,
            vertex_of,
            classes,
        })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn sides(&self) -> &[[f64; 3]] {
        &self.sides
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn classes(&self) -> &[Vec<Corner>] {
        &self.classes
    }

    pub fn num_faces(&self) -> usize {
        self.sides.len()
    }

    pub fn num_edges(&self) -> usize {
        3 * self.sides.len() - self.gluings.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.classes.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().flatten().all(Option::is_some)
    }

    pub fn vertex_of(&self, c: Corner) -> usize {
        self.vertex_of[c.tri][c.corner]
    }

    pub fn partner(&self, s: SideRef) -> Option<SideRef> {
        self.partner[s.tri][s.side]
    }

    fn gluing_of(&self, s: SideRef) -> Option<&Gluing> {
        self.gluings.iter().find(|g| g.a == s || g.b == s)
    }

    pub fn corner_angles(&self) -> Vec<[f64; 3]> {
        self.sides
            .iter()
            .map(|s| match self.geometry {
                Geometry::Spherical => SphericalTriangle::new(s[0], s[1], s[2]).map(|t| t.angles()),
                Geometry::Euclidean => EuclideanTriangle::new(s[0], s[1], s[2]).map(|t| t.angles()),
            })
            .map(|r| r.expect("validated at construction"))
            .collect()
    }

    /// Areas of the faces.
    pub fn face_areas(&self) -> Vec<f64> {
        self.sides
            .iter()
            .map(|s| match self.geometry {
                Geometry::Spherical => SphericalTriangle::new(s[0], s[1], s[2]).map(|t| t.area()),
                Geometry::Euclidean => EuclideanTriangle::new(s[0], s[1], s[2]).map(|t| t.area()),
            })
            .map(|r| r.expect("validated at construction"))
            .collect()
    }

    /// Circumradii of spherical faces.
    pub fn face_radii(&self) -> Result<Vec<f64>> {
        if self.geometry != Geometry::Spherical {
            return Err(Error::Input("circumradii need a spherical complex".into()));
        }
        Ok(self
            .sides
            .iter()
            .map(|s| {
                SphericalTriangle::new(s[0], s[1], s[2])
                    .expect("validated at construction")
                    .circumradius()
            })
            .collect())
    }

    pub fn total_angles(&self) -> VertexAngles {
        let ang = self.corner_angles();
        let mut totals = vec![0.0; self.classes.len()];
        let mut interior = vec![true; self.classes.len()];
        for (v, class) in self.classes.iter().enumerate() {
            for c in class {
                totals[v] += ang[c.tri][c.corner];
                for side in [(c.corner + 1) % 3, (c.corner + 2) % 3] {
                    if self.partner[c.tri][side].is_none() {
                        interior[v] = false;
                    }
                }
            }
        }
        VertexAngles { totals, interior }
    }

    /// Walk around the vertex at `start`, crossing glued sides.
    pub fn vertex_link(&self, start: Corner) -> VertexLink {
        let step = |c: Corner, exit: usize| -> Option<(Corner, usize)> {
            let here = SideRef {
                tri: c.tri,
                side: exit,
            };
            let g = self.gluing_of(here)?;
            let there = if g.a == here { g.b } else { g.a };
            let next = g
                .corner_pairs()
                .into_iter()
                .find_map(|(x, y)| {
                    if x == c && g.a == here {
                        Some(y)
                    } else if y == c && g.b == here {
                        Some(x)
                    } else {
                        None
                    }
                })
                .expect("a corner of a glued side has an image");
            let other = if (next.corner + 1) % 3 == there.side {
                (next.corner + 2) % 3
            } else {
                (next.corner + 1) % 3
            };
            Some((next, other))
        };
        let mut corners = vec![start];
        let mut cur = (start, (start.corner + 2) % 3);
        loop {
            match step(cur.0, cur.1) {
                Some((next, _)) if next == start => {
                    return VertexLink {
                        corners,
                        closed: true,
                    }
                }
                Some(n) => {
                    if corners.len() > 3 * self.sides.len() {
                        return VertexLink {
                            corners,
                            closed: false,
                        };
                    }
                    corners.push(n.0);
                    cur = n;
                }
                None => break,
            }
        }
        let mut cur = (start, (start.corner + 1) % 3);
        while let Some(n) = step(cur.0, cur.1) {
            if corners.contains(&n.0) {
                break;
            }
            corners.insert(0, n.0);
            cur = n;
        }
        VertexLink {
            corners,
            closed: false,
        }
    }

    pub fn gauss_bonnet(&self) -> Result<GaussBonnet> {
        if !self.is_closed() {
            return Err(Error::Input("Gauss-Bonnet needs a closed complex".into()));
        }
        let face_term = self.geometry.curvature() * self.face_areas().iter().sum::<f64>();
        let vertex_term = self
            .total_angles()
            .totals
            .iter()
            .map(|t| 2.0 * PI - t)
            .sum();
        Ok(GaussBonnet {
            face_term,
            vertex_term,
            euler: self.euler_characteristic(),
        })
    }

    /// Replace every triangle by the plane triangle with transformed sides,
    /// keeping the gluings and vertex classes.
    pub fn transform(&self, f: Family) -> Result<(TriangleComplex, TransformReport)> {
        let mut flat = Vec::with_capacity(self.sides.len());
        for s in &self.sides {
            let t = match self.geometry {
                Geometry::Spherical => transform(f, &SphericalTriangle::new(s[0], s[1], s[2])?)?,
                Geometry::Euclidean => transform(f, &EuclideanTriangle::new(s[0], s[1], s[2])?)?,
            };
            flat.push(t.sides());
        }
        let out = TriangleComplex::new(
            Geometry::Euclidean,
            flat,
            self.gluings.clone(),
            Some(self.classes.clone()),
        )?;
        let report = TransformReport {
            before: self.total_angles(),
            after: out.total_angles(),
        };
        Ok((out, report))
    }

    pub fn check_hypotheses(&self, eps: f64, variant: Variant) -> Result<HypothesisReport> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(crate::error::domain("ε", eps, "(0, ∞)"));
        }
        let cap = variant.radius_cap(eps);
        let radius_violation = self
            .face_radii()?
            .into_iter()
            .enumerate()
            .find(|&(_, r)| r > cap);
        let angles = self.total_angles();
        let angle_violation = angles
            .totals
            .iter()
            .enumerate()
            .find(|&(v, &t)| angles.interior[v] && t < variant.min_angle() - GLUE_TOL)
            .map(|(v, &t)| (v, t));
        Ok(HypothesisReport {
            variant,
            eps,
            closed: self.is_closed(),
            radius_violation,
            angle_violation,
        })
    }
}
