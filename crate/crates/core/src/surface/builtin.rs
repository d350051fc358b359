use std::collections::{HashMap, VecDeque};

use super::{Geometry, Gluing, Orientation, SideRef, TriangleComplex};
use crate::error::{Error, Result};
use crate::trig::embed::{arc_between, cross, dot, norm, scale, Vec3};

pub const BUILTIN_NAMES: [&str; 7] = [
    "weierstrass",
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "octa2",
    "icosa2",
    "icosa3",
];

/// A named complex.
///
/// `weierstrass` is the double cover of the tetrahedral sphere branched
/// over its four vertices: eight equilateral triangles with angles `2π/3`
/// on a torus. The `*2`/`*3` names are cyclic covers of the octahedral and
/// icosahedral triangulations branched over every vertex.
pub fn builtin(name: &str) -> Result<TriangleComplex> {
    match name {
        "weierstrass" => cyclic_cover(&builtin("tetrahedron")?, 2),
        "tetrahedron" => Ok(sphere_mesh(&tetrahedron_points())?),
        "octahedron" => Ok(sphere_mesh(&octahedron_points())?),
        "icosahedron" => Ok(sphere_mesh(&icosahedron_points())?),
        "octa2" => cyclic_cover(&builtin("octahedron")?, 2),
        "icosa2" => cyclic_cover(&builtin("icosahedron")?, 2),
        "icosa3" => cyclic_cover(&builtin("icosahedron")?, 3),
        _ => Err(Error::Input(format!(
            "unknown builtin {name}; expected one of {}",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}

fn tetrahedron_points() -> Vec<Vec3> {
    vec![
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
}

fn octahedron_points() -> Vec<Vec3> {
    let mut out = Vec::new();
    for i in 0..3 {
        for s in [1.0, -1.0] {
            let mut p = [0.0; 3];
            p[i] = s;
            out.push(p);
        }
    }
    out
}

fn icosahedron_points() -> Vec<Vec3> {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let (u, v) = (s1, s2 * g);
            out.push([0.0, u, v]);
            out.push([u, v, 0.0]);
            out.push([v, 0.0, u]);
        }
    }
    out
}

/// Triangulate the convex hull of points on a sphere whose faces are
/// triples of mutual nearest neighbours, as for the regular solids.
/// Faces are oriented outward and glued along shared edges.
pub fn sphere_mesh(points: &[Vec3]) -> Result<TriangleComplex> {
    let p: Vec<Vec3> = points.iter().map(|&q| scale(1.0 / norm(q), q)).collect();
    let n = p.len();
    let dist = |i: usize, j: usize| arc_between(p[i], p[j]);
    let dmin = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| dist(i, j))
        .fold(f64::INFINITY, f64::min);
    let adj = |i: usize, j: usize| dist(i, j) <= dmin * (1.0 + 1e-9);
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adj(i, j) && adj(j, k) && adj(i, k) {
                    if dot(cross(p[i], p[j]), p[k]) > 0.0 {
                        faces.push([i, j, k]);
                    } else {
                        faces.push([i, k, j]);
                    }
                }
            }
        }
    }
    let sides: Vec<[f64; 3]> = faces
        .iter()
        .map(|f| [0, 1, 2].map(|s| dist(f[(s + 1) % 3], f[(s + 2) % 3])))
        .collect();
    let mut directed = HashMap::new();
    for (t, f) in faces.iter().enumerate() {
        for s in 0..3 {
            directed.insert(
                (f[(s + 1) % 3], f[(s + 2) % 3]),
                SideRef { tri: t, side: s },
            );
        }
    }
    let mut gluings = Vec::new();
    for (t, f) in faces.iter().enumerate() {
        for s in 0..3 {
            let here = SideRef { tri: t, side: s };
            if let Some(&there) = directed.get(&(f[(s + 2) % 3], f[(s + 1) % 3])) {
                if here < there {
                    gluings.push(Gluing::reversed(here, there));
                }
            }
        }
    }
    TriangleComplex::new(Geometry::Spherical, sides, gluings, None)
}

/// The `n`-sheeted cyclic cover of a closed oriented complex branched
/// over every vertex, so that each vertex has `n` times its total angle.
///
/// Each glued side gets a sheet shift; a loop around a vertex must shift
/// by 1 mod `n`. The shifts are solved on a spanning tree of the vertex
/// graph, which succeeds exactly when the vertex count is divisible by
/// `n`.
pub fn cyclic_cover(base: &TriangleComplex, n: usize) -> Result<TriangleComplex> {
    if n < 2 {
        return Err(Error::Input(format!("cover degree {n} must be at least 2")));
    }
    if !base.is_closed() {
        return Err(Error::Input("branched cover needs a closed complex".into()));
    }
    if base
        .gluings()
        .iter()
        .any(|g| g.orientation != Orientation::Reversed)
    {
        return Err(Error::Input(
            "branched cover needs an oriented complex".into(),
        ));
    }
    let nv = base.num_vertices();
    if nv % n != 0 {
        return Err(Error::Input(format!(
            "{nv} branch points cannot close up an {n}-sheeted cyclic cover"
        )));
    }
    let ends: Vec<(usize, usize)> = base
        .gluings()
        .iter()
        .map(|g| {
            let c = |corner| super::Corner {
                tri: g.a.tri,
                corner,
            };
            (
                base.vertex_of(c((g.a.side + 1) % 3)),
                base.vertex_of(c((g.a.side + 2) % 3)),
            )
        })
        .collect();

    let mut incident = vec![Vec::new(); nv];
    for (e, &(u, w)) in ends.iter().enumerate() {
        if u != w {
            incident[u].push(e);
            incident[w].push(e);
        }
    }
    let mut parent = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut order = Vec::with_capacity(nv);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in &incident[v] {
            let (u, w) = ends[e];
            let other = if u == v { w } else { u };
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some(e);
                queue.push_back(other);
            }
        }
    }
    if order.len() != nv {
        return Err(Error::Input("complex is not connected".into()));
    }

    let modn = |x: i64| x.rem_euclid(n as i64);
    let sign = |v: usize, e: usize| if ends[e].0 == v { 1 } else { -1 };
    let mut shift = vec![0i64; ends.len()];
    let mut sums = vec![0i64; nv];
    for &v in order.iter().rev() {
        let Some(e) = parent[v] else { continue };
        let x = modn(sign(v, e) * (1 - sums[v]));
        shift[e] = x;
        let (u, w) = ends[e];
        sums[u] = modn(sums[u] + x);
        sums[w] = modn(sums[w] - x);
    }
    if sums[0] != modn(1) {
        return Err(Error::Invariant(
            "sheet shifts do not close at the root".into(),
        ));
    }

    let sides = base
        .sides()
        .iter()
        .flat_map(|s| std::iter::repeat(*s).take(n))
        .collect();
    let mut gluings = Vec::with_capacity(n * base.gluings().len());
    for (g, &x) in base.gluings().iter().zip(&shift) {
        for k in 0..n {
            let k2 = (k + x as usize) % n;
            gluings.push(Gluing::reversed(
                SideRef {
                    tri: g.a.tri * n + k,
                    side: g.a.side,
                },
                SideRef {
                    tri: g.b.tri * n + k2,
                    side: g.b.side,
                },
            ));
        }
    }
    TriangleComplex::new(base.geometry(), sides, gluings, None)
}
