//! A chain of isotopies of the α curve of `skew_triple`.
//!
//! A finger of α starts on the arc from `x` to `z`, runs up and left across
//! β into the triangle `L` (a bigon move), then its tip crosses γ (another
//! bigon move), then it passes over the crossing `y1` of β and γ (a
//! triangle move). Nothing changes near `x`, `y2` or `z`, so domains joining
//! `(x, y2, z)` can be transported between stages.

use thiserror::Error;

use super::torus::{pt, pt_frac, TorusDiagram};
use super::{build, finish, skew_layout, skew_vertices};
use crate::chains::{Domain, Polygon};
use crate::diagram::HeegaardDiagram;
use crate::gen_domains::{solve_domains_fixing, SolveError};

/// Local move relating consecutive stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// A curve is pushed across another, creating a bigon.
    Bigon,
    /// A curve is pushed across a crossing of two others.
    Triangle,
}

/// Consecutive fixture pairs and the move between them.
pub const PAIRS: [(&str, &str, Move); 3] = [
    ("skew_triple", "isotopy_finger", Move::Bigon),
    ("isotopy_finger", "isotopy_deep", Move::Bigon),
    ("isotopy_deep", "isotopy_flip", Move::Triangle),
];

/// Vertices whose neighbourhoods are untouched by every move.
pub const ANCHORS: [&str; 3] = ["x", "y2", "z"];

const ALPHA: [&[(i64, i64)]; 4] = [
    &[(0, 10)],
    &[(55, 10), (55, 20), (5, 20), (5, 25), (65, 25), (65, 10)],
    &[(55, 10), (55, 20), (5, 20), (5, 34), (65, 34), (65, 10)],
    &[(55, 10), (55, 20), (5, 20), (5, 36), (65, 36), (65, 10)],
];

/// Stage `i` of the chain; stage 0 is `skew_triple`.
pub fn stage(i: usize) -> TorusDiagram {
    let mut regions = vec![(pt(20, 125), "U"), (pt(5, 15), "L"), (pt(60, 100), "P"), (pt(100, 40), "Q")];
    let extra: &[_] = match i {
        0 => &[],
        1 => &[(pt(7, 22), "F"), (pt(30, 15), "E")],
        2 => &[(pt(7, 22), "F"), (pt(30, 15), "E"), (pt_frac(12, 67, 2), "G"), (pt_frac(38, 137, 4), "D")],
        _ => &[(pt(7, 22), "F"), (pt(30, 15), "E"), (pt_frac(12, 67, 2), "G"), (pt_frac(210, 712, 20), "D")],
    };
    regions.extend_from_slice(extra);
    let built = build(&skew_layout(ALPHA[i]), &skew_vertices(), &regions);
    let order: Vec<&str> = regions.iter().map(|r| r.1).collect();
    TorusDiagram { data: finish(built.data, &order, &[("w", "P")]), positions: built.positions }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransportError {
    #[error("anchor vertex `{0}` missing")]
    MissingAnchor(String),
    #[error("no domain matches the anchor coefficients")]
    NoMatch,
    #[error("anchor coefficients do not determine the domain")]
    Ambiguous,
}

/// The domain of `to` joining `polygon` that agrees with `d` in the four
/// corners of every anchor vertex.
pub fn transport<'b>(
    d: &Domain<'_>,
    to: &'b HeegaardDiagram,
    polygon: &Polygon,
    anchors: &[&str],
) -> Result<Domain<'b>, TransportError> {
    let from = d.diagram();
    let mut fixed = Vec::new();
    for name in anchors {
        let missing = || TransportError::MissingAnchor(name.to_string());
        let old = from.vertex_by_name(name).ok_or_else(missing)?;
        let new = to.vertex_by_name(name).ok_or_else(missing)?;
        for (r_old, r_new) in from.quadrant_regions(old).into_iter().zip(to.quadrant_regions(new)) {
            fixed.push((r_new, d.coeff(r_old)));
        }
    }
    match solve_domains_fixing(to, polygon, &fixed) {
        Ok(sol) if sol.lattice_basis.is_empty() => Ok(sol.particular),
        Ok(_) => Err(TransportError::Ambiguous),
        Err(SolveError::Infeasible) => Err(TransportError::NoMatch),
        Err(SolveError::Chain(_)) => Err(TransportError::NoMatch),
    }
}
