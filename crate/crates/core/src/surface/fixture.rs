//! Plain-text complex fixtures.
//!
//! ```text
//! # comment, also allowed after a record
//! geometry spherical          # or euclidean; first record, default spherical
//! tri 1.2 1.3 1.4             # sides a b c of the next triangle
//! glue 0:2 1:0 reversed       # tri:side tri:side [reversed|same]
//! vertex 0:0 1:1              # optional; tri:corner ... one class per line
//! ```
//!
//! Triangles are numbered from 0 in order of appearance. If any `vertex`
//! line is present, the lines must partition all corners.

use std::fmt::Write as _;

use super::{Corner, Geometry, Gluing, Orientation, SideRef, TriangleComplex};
use crate::error::{Error, Result};

fn pair(tok: &str, line: usize, what: &str) -> Result<(usize, usize)> {
    let err = || Error::Parse {
        line,
        msg: format!("expected {what} as n:i, found {tok:?}"),
    };
    let (x, y) = tok.split_once(':').ok_or_else(err)?;
    let x = x.parse().map_err(|_| err())?;
    let y: usize = y.parse().map_err(|_| err())?;
    if y > 2 {
        return Err(Error::Parse {
            line,
            msg: format!("index {y} in {tok:?} must be 0, 1 or 2"),
        });
    }
    Ok((x, y))
}

pub fn parse_fixture(text: &str) -> Result<TriangleComplex> {
    let mut geometry = None;
    let mut sides = Vec::new();
    let mut gluings = Vec::new();
    let mut classes: Vec<Vec<Corner>> = Vec::new();
    let mut last = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        let bad = |msg: String| Error::Parse { line, msg };
        match head {
            "geometry" => {
                if geometry.is_some() || !sides.is_empty() {
                    return Err(bad(
                        "geometry must be the first record and appear once".into()
                    ));
                }
                geometry = Some(match rest {
                    ["spherical"] => Geometry::Spherical,
                    ["euclidean"] => Geometry::Euclidean,
                    _ => return Err(bad(format!("unknown geometry {:?}", rest.join(" ")))),
                });
            }
            "tri" => {
                if rest.len() != 3 {
                    return Err(bad(format!(
                        "tri takes 3 side lengths, found {}",
                        rest.len()
                    )));
                }
                let mut s = [0.0; 3];
                for (x, t) in s.iter_mut().zip(rest) {
                    *x = t
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| bad(format!("bad side length {t:?}")))?;
                }
                sides.push(s);
            }
            "glue" => {
                let orientation = match rest {
                    [_, _] | [_, _, "reversed"] => Orientation::Reversed,
                    [_, _, "same"] => Orientation::Same,
                    _ => return Err(bad("glue takes tri:side tri:side [reversed|same]".into())),
                };
                let (t1, s1) = pair(rest[0], line, "tri:side")?;
                let (t2, s2) = pair(rest[1], line, "tri:side")?;
                gluings.push(Gluing {
                    a: SideRef { tri: t1, side: s1 },
                    b: SideRef { tri: t2, side: s2 },
                    orientation,
                });
            }
            "vertex" => {
                if rest.is_empty() {
                    return Err(bad("vertex needs at least one tri:corner".into()));
                }
                let class = rest
                    .iter()
                    .map(|t| {
                        pair(t, line, "tri:corner").map(|(tri, corner)| Corner { tri, corner })
                    })
                    .collect::<Result<Vec<_>>>()?;
                classes.push(class);
            }
            _ => return Err(bad(format!("unknown record {head:?}"))),
        }
    }
    if sides.is_empty() {
        return Err(Error::Parse {
            line: last,
            msg: "no triangles".into(),
        });
    }
    let classes = if classes.is_empty() {
        None
    } else {
        Some(classes)
    };
    TriangleComplex::new(
        geometry.unwrap_or(Geometry::Spherical),
        sides,
        gluings,
        classes,
    )
}

/// Serialize a complex; side lengths round-trip exactly.
pub fn write_fixture(c: &TriangleComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "geometry {}", c.geometry().name());
    for s in c.sides() {
        let _ = writeln!(out, "tri {:?} {:?} {:?}", s[0], s[1], s[2]);
    }
    for g in c.gluings() {
        let o = match g.orientation {
            Orientation::Reversed => "reversed",
            Orientation::Same => "same",
        };
        let _ = writeln!(
            out,
            "glue {}:{} {}:{} {o}",
            g.a.tri, g.a.side, g.b.tri, g.b.side
        );
    }
    for class in c.classes() {
        let cs: Vec<String> = class
            .iter()
            .map(|k| format!("{}:{}", k.tri, k.corner))
            .collect();
        let _ = writeln!(out, "vertex {}", cs.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::builtin;

    #[test]
    fn round_trip() {
        for name in ["weierstrass", "icosa2"] {
            let c = builtin(name).unwrap();
            let back = parse_fixture(&write_fixture(&c)).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn minimal_fixture() {
        let c = parse_fixture("tri 0.5 0.6 0.7\n").unwrap();
        assert_eq!(c.geometry(), Geometry::Spherical);
        assert_eq!(c.num_faces(), 1);
        let c = parse_fixture("geometry euclidean\ntri 3 4 5 # right\n").unwrap();
        assert_eq!(c.geometry(), Geometry::Euclidean);
    }

    fn line_of(text: &str) -> usize {
        match parse_fixture(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("tri 1 1 1\n\ntri 1 1\n"), 3);
        assert_eq!(line_of("tri 1 1 1\nglue 0:0 0-1\n"), 2);
        assert_eq!(line_of("tri 1 1 1\nglue 0:0 0:3\n"), 2);
        assert_eq!(line_of("# only\nfoo 1\n"), 2);
        assert_eq!(line_of("tri 1 x 1\n"), 1);
        assert_eq!(line_of("tri 1 1 1\ngeometry euclidean\n"), 2);
        assert_eq!(line_of("# nothing\n"), 1);
    }

    #[test]
    fn semantic_errors_are_not_parse_errors() {
        let r = parse_fixture("tri 0.5 0.6 0.7\ntri 0.5 0.6 0.7\nglue 0:0 1:1\n");
        assert!(matches!(r, Err(Error::Gluing(_))));
    }
}
