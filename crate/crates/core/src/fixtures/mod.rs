//! Bundled example diagrams.
//!
//! Torus fixtures are drawn as polylines on a square torus and assembled by
//! [`torus::TorusLayout`]; the genus-2 fixture is a connected sum. The same
//! data ships as JSON files under `fixtures/` in the repository.

pub mod isotopy;
pub mod torus;

use std::collections::BTreeMap;

use crate::builder::{connected_sum, fill_corners, order_regions};
use crate::diagram::{DiagramData, HeegaardDiagram};
use torus::{pt, pt_frac, Point, TorusCurve, TorusDiagram, TorusLayout};

/// A named fixture.
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    build: fn() -> DiagramData,
}

impl Fixture {
    pub fn data(&self) -> DiagramData {
        (self.build)()
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "s3_genus1",
        summary: "torus, one α and one β meeting once in x; one square region R",
        build: s3_genus1,
    },
    Fixture {
        name: "torus_triple",
        summary: "torus, slopes 0, ∞, 1 meeting pairwise once in x, y, z; triangles T1, T2 and hexagon H with w",
        build: torus_triple,
    },
    Fixture {
        name: "torus_triple_double",
        summary: "genus 2, two torus triples summed along their hexagons; k = 2",
        build: torus_triple_double,
    },
    Fixture {
        name: "skew_triple",
        summary: "torus, γ of slope 1/2 meeting β twice in y1, y2; triangles U, L",
        build: skew_triple,
    },
    Fixture {
        name: "nice_double",
        summary: "torus, n = 2: β with a finger across α; bigons B1, B2, rectangle Q, octagon W with w",
        build: nice_double,
    },
    Fixture {
        name: "isotopy_finger",
        summary: "skew_triple after an α finger crosses β (bigon move)",
        build: || isotopy::stage(1).data,
    },
    Fixture {
        name: "isotopy_deep",
        summary: "isotopy_finger after the finger tip crosses γ (bigon move)",
        build: || isotopy::stage(2).data,
    },
    Fixture {
        name: "isotopy_flip",
        summary: "isotopy_deep after the finger passes the crossing y1 (triangle move)",
        build: || isotopy::stage(3).data,
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Validates bundled data; panics if a fixture is broken.
pub fn load(data: DiagramData) -> HeegaardDiagram {
    HeegaardDiagram::new(data).expect("bundled fixture validates")
}

/// Loads a fixture by name.
pub fn named(name: &str) -> HeegaardDiagram {
    load(fixture(name).unwrap_or_else(|| panic!("unknown fixture {name}")).data())
}

fn line(family: usize, index: usize, label: &str, points: &[(i64, i64)], class: (i64, i64)) -> TorusCurve {
    TorusCurve { family, index, label: label.into(), points: points.to_vec(), class }
}

fn finish(mut data: DiagramData, order: &[&str], basepoints: &[(&str, &str)]) -> DiagramData {
    order_regions(&mut data, order);
    fill_corners(&mut data);
    data.basepoints = basepoints
        .iter()
        .map(|(l, r)| (l.to_string(), r.to_string()))
        .collect::<BTreeMap<_, _>>();
    data
}

fn build(layout: &TorusLayout, vertices: &[(Point, &str)], regions: &[(Point, &str)]) -> TorusDiagram {
    layout.build(vertices, regions).expect("fixture layout is in general position")
}

pub fn s3_genus1() -> DiagramData {
    let layout = TorusLayout {
        size: 2,
        families: 2,
        curves_per_family: 1,
        curves: vec![line(1, 1, "a", &[(0, 1)], (1, 0)), line(2, 1, "b", &[(1, 0)], (0, 1))],
    };
    let built = build(&layout, &[(pt(1, 1), "x")], &[(pt(0, 0), "R")]);
    finish(built.data, &["R"], &[("w", "R")])
}

pub fn torus_triple() -> DiagramData {
    let layout = TorusLayout {
        size: 6,
        families: 3,
        curves_per_family: 1,
        curves: vec![
            line(1, 1, "a", &[(0, 1)], (1, 0)),
            line(2, 1, "b", &[(1, 0)], (0, 1)),
            line(3, 1, "c", &[(0, 3)], (1, 1)),
        ],
    };
    let built = build(
        &layout,
        &[(pt(1, 1), "x"), (pt(1, 4), "y"), (pt(4, 1), "z")],
        &[(pt(0, 2), "T1"), (pt(2, 0), "T2"), (pt(3, 3), "H")],
    );
    finish(built.data, &["T1", "T2", "H"], &[("w", "H")])
}

/// Two copies of [`torus_triple`] joined by a tube between the hexagons,
/// which merge into an annulus `H` carrying the only basepoint.
pub fn torus_triple_double() -> DiagramData {
    let mut one = torus_triple();
    one.basepoints.clear();
    let mut sum = connected_sum(&one, "H", &one, "H", "'", "H").expect("same family count");
    sum.basepoints = BTreeMap::from([("w".to_string(), "H".to_string())]);
    sum
}

pub(crate) fn skew_layout(alpha: &[(i64, i64)]) -> TorusLayout {
    TorusLayout {
        size: 120,
        families: 3,
        curves_per_family: 1,
        curves: vec![
            line(1, 1, "a", alpha, (1, 0)),
            line(2, 1, "b", &[(10, 0)], (0, 1)),
            line(3, 1, "c", &[(0, 30)], (2, 1)),
        ],
    }
}

pub(crate) const SKEW_VERTICES: [((i64, i64), &str); 4] =
    [((10, 10), "x"), ((10, 35), "y1"), ((10, 95), "y2"), ((80, 10), "z")];

pub(crate) fn skew_vertices() -> Vec<(Point, &'static str)> {
    SKEW_VERTICES.iter().map(|&((x, y), n)| (pt(x, y), n)).collect()
}

pub fn skew_triple() -> DiagramData {
    isotopy::stage(0).data
}

pub fn nice_double() -> DiagramData {
    let layout = TorusLayout {
        size: 12,
        families: 2,
        curves_per_family: 1,
        curves: vec![
            line(1, 1, "a", &[(0, 6)], (1, 0)),
            line(2, 1, "b", &[(1, 0), (4, 3), (4, 9), (5, 9), (5, 4), (6, 4), (6, 9), (7, 9), (7, 15)], (1, 2)),
        ],
    };
    let built = build(
        &layout,
        &[(pt(4, 6), "p1"), (pt(5, 6), "p2"), (pt(6, 6), "p3"), (pt(9, 6), "p4")],
        &[(pt_frac(9, 14, 2), "B1"), (pt_frac(11, 10, 2), "B2"), (pt(8, 8), "Q"), (pt(1, 8), "W")],
    );
    finish(built.data, &["B1", "B2", "Q", "W"], &[("w", "W")])
}
