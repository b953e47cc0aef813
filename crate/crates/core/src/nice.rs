//! Nice diagrams: the positivity bound for triangle domains and the
//! combinatorial count of index-zero triangles.

use rayon::prelude::*;
use thiserror::Error;

use crate::chains::{s_count, Domain, Polygon};
use crate::diagram::{CurveId, HalfEdge, HeegaardDiagram, RegionId, Sides, VertexId};
use crate::gen_domains::{enumerate_positive_domains, solve_domains, Bounds, SolveError};
use crate::maslov::{mu_iota, MaslovError};
use crate::measures::euler_measure;
use crate::quarter::Quarter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NiceError {
    #[error("needs a triangle domain, got a {0}-gon")]
    NotTriangle(usize),
    #[error("domain is not positive")]
    NotPositive,
    #[error("domain is supported on region `{0}`, which is not a disk with at most 4 sides")]
    UnsupportedRegion(String),
    #[error("iota = {0} is negative")]
    NegativeIota(Quarter),
    #[error("iota = {0} is not zero")]
    NonzeroIota(Quarter),
    #[error("diagram is not nice: region `{0}` has no basepoint and is not a disk with at most 4 sides")]
    NotNice(String),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
}

/// Whether every basepoint-free region is a disk with at most 4 sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Niceness {
    pub nice: bool,
    /// First offending region in region order.
    pub witness: Option<RegionId>,
}

pub fn is_nice(diagram: &HeegaardDiagram, basepoints: &[RegionId]) -> Niceness {
    let witness = diagram
        .region_ids()
        .filter(|r| !basepoints.contains(r))
        .find(|&r| !matches!(diagram.region_sides(r), Sides::Disk(m) if m <= 4));
    Niceness { nice: witness.is_none(), witness }
}

/// Region multiplicities of a positive domain by number of sides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Census {
    pub two_sided: i64,
    pub three_sided: i64,
    pub four_sided: i64,
    /// Three-sided regions in the support whose s-count is not `+1`.
    pub three_sided_off_sign: i64,
}

/// Outcome of [`check_positivity_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub mu: Quarter,
    pub iota: Quarter,
    pub euler: Quarter,
    pub census: Census,
    /// `μ ≥ 0`.
    pub bound_satisfied: bool,
    /// For `μ = 0`: `ι = 0`, `e = k/4`, exactly `k` three-sided regions
    /// each with s-count `+1`, and no two-sided region.
    pub equality_census: Option<bool>,
}

/// Evaluates the positivity bound for a positive triangle domain supported
/// on regions with at most four sides.
pub fn check_positivity_bound(d: &Domain<'_>, polygon: &Polygon) -> Result<PositivityReport, NiceError> {
    if polygon.len() != 3 {
        return Err(NiceError::NotTriangle(polygon.len()));
    }
    let diagram = d.diagram();
    if !d.is_positive() {
        return Err(NiceError::NotPositive);
    }
    let mut census = Census::default();
    for r in diagram.region_ids() {
        let c = d.coeff(r);
        if c == 0 {
            continue;
        }
        match diagram.region_sides(r) {
            Sides::Disk(2) => census.two_sided += c,
            Sides::Disk(3) => {
                census.three_sided += c;
                let region = Domain::from_coeffs(diagram, unit(diagram, r)).expect("unit domain");
                let (a, b) = (polygon.families()[0], polygon.families()[1]);
                if s_count(&region, a, b) != 1 {
                    census.three_sided_off_sign += c;
                }
            }
            Sides::Disk(4) => census.four_sided += c,
            _ => return Err(NiceError::UnsupportedRegion(diagram.region(r).name.clone())),
        }
    }
    let (mu, iota) = mu_iota(d, polygon)?;
    if iota.is_negative() {
        return Err(NiceError::NegativeIota(iota));
    }
    let euler = euler_measure(d);
    let k = diagram.curves_per_family() as i64;
    let equality_census = mu.is_zero().then(|| {
        iota.is_zero()
            && euler == Quarter::from_quarters(k)
            && census.three_sided == k
            && census.three_sided_off_sign == 0
            && census.two_sided == 0
    });
    Ok(PositivityReport { mu, iota, euler, census, bound_satisfied: !mu.is_negative(), equality_census })
}

fn unit(diagram: &HeegaardDiagram, r: RegionId) -> Vec<i64> {
    let mut v = vec![0; diagram.regions().len()];
    v[r.0] = 1;
    v
}

/// Curves `(α, β, γ)` of one triangle with its corners `(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CurveTriple {
    curves: [CurveId; 3],
    corners: [VertexId; 3],
}

/// Follows the generator matchings `α →x β →y γ →z α`. `None` when some
/// cycle fails to close after one step around.
fn curve_triples(diagram: &HeegaardDiagram, polygon: &Polygon) -> Option<Vec<CurveTriple>> {
    let gens = polygon.gens();
    let fams = polygon.families();
    // Coordinate of generator `g` on curve `c`, and the other curve there.
    let step = |g: usize, c: CurveId| -> (VertexId, CurveId) {
        let v = *gens[g]
            .coords()
            .iter()
            .find(|&&v| diagram.vertex(v).strand_of(c).is_some())
            .expect("generator meets every curve of its families");
        let other = *diagram.vertex(v).curves.iter().find(|&&o| o != c).unwrap();
        (v, other)
    };
    let mut out = Vec::new();
    for &a in diagram.family_curves(fams[0]) {
        let (x, b) = step(0, a);
        let (y, c) = step(1, b);
        let (z, back) = step(2, c);
        if back != a {
            return None;
        }
        out.push(CurveTriple { curves: [a, b, c], corners: [x, y, z] });
    }
    Some(out)
}

/// Path along `curve` from vertex `from` to vertex `to`, in the stored
/// direction when `forward`, otherwise against it.
fn side_path(diagram: &HeegaardDiagram, curve: CurveId, from: VertexId, to: VertexId, forward: bool) -> Vec<HalfEdge> {
    let arcs = &diagram.curve(curve).arcs;
    let m = arcs.len();
    let start = if forward {
        arcs.iter().position(|&a| diagram.arc(a).tail.vertex == from)
    } else {
        arcs.iter().position(|&a| diagram.arc(a).head.vertex == from)
    }
    .expect("vertex lies on curve");
    let mut path = Vec::new();
    let mut i = start;
    loop {
        let a = arcs[i];
        path.push(HalfEdge { arc: a, forward });
        let arc = diagram.arc(a);
        let end = if forward { arc.head.vertex } else { arc.tail.vertex };
        if end == to {
            return path;
        }
        i = if forward { (i + 1) % m } else { (i + m - 1) % m };
    }
}

/// Embedded triangles with the given curves and corners whose coefficients
/// fit under `budget`.
fn candidate_triangles<'a>(diagram: &'a HeegaardDiagram, t: &CurveTriple, budget: &[i64]) -> Vec<Domain<'a>> {
    let [a, b, c] = t.curves;
    let [x, y, z] = t.corners;
    let mut out = Vec::new();
    for mask in 0..8u8 {
        let dir = |bit: u8| mask & (1 << bit) == 0;
        let mut boundary = side_path(diagram, a, z, x, dir(0));
        boundary.extend(side_path(diagram, b, x, y, dir(1)));
        boundary.extend(side_path(diagram, c, y, z, dir(2)));
        if let Some(tri) = fill_triangle(diagram, &boundary, [x, y, z], budget) {
            if !out.contains(&tri) {
                out.push(tri);
            }
        }
    }
    out
}

/// The 2-chain on the left of a closed boundary path, if it is an embedded
/// triangle with convex corners at `corners`.
fn fill_triangle<'a>(
    diagram: &'a HeegaardDiagram,
    boundary: &[HalfEdge],
    corners: [VertexId; 3],
    budget: &[i64],
) -> Option<Domain<'a>> {
    let na = diagram.arcs().len();
    let nr = diagram.regions().len();
    let mut chain = vec![0i64; na];
    let mut visits = vec![0usize; diagram.vertices().len()];
    for he in boundary {
        chain[he.arc.0] += if he.forward { 1 } else { -1 };
        let arc = diagram.arc(he.arc);
        let end = if he.forward { arc.head.vertex } else { arc.tail.vertex };
        visits[end.0] += 1;
    }
    if visits.iter().any(|&n| n > 1) {
        return None;
    }

    // Flood from the left of the first side without crossing the boundary.
    let left = |he: &HalfEdge| {
        let arc = diagram.arc(he.arc);
        if he.forward {
            arc.left
        } else {
            arc.right
        }
    };
    let mut inside = vec![false; nr];
    let mut stack = vec![left(&boundary[0])];
    inside[stack[0].0] = true;
    while let Some(r) = stack.pop() {
        for a in diagram.arc_ids() {
            if chain[a.0] != 0 {
                continue;
            }
            let arc = diagram.arc(a);
            for (p, q) in [(arc.left, arc.right), (arc.right, arc.left)] {
                if p == r && !inside[q.0] {
                    inside[q.0] = true;
                    stack.push(q);
                }
            }
        }
    }
    let coeffs: Vec<i64> = inside.iter().map(|&i| i64::from(i)).collect();
    if coeffs.iter().zip(budget).any(|(c, b)| c > b) {
        return None;
    }
    // The filled chain must have exactly the path as boundary.
    for a in diagram.arc_ids() {
        let arc = diagram.arc(a);
        if coeffs[arc.left.0] - coeffs[arc.right.0] != chain[a.0] {
            return None;
        }
    }
    for v in corners {
        let quads = diagram.quadrant_regions(v);
        if quads.iter().filter(|r| inside[r.0]).count() != 1 {
            return None;
        }
    }
    if closure_euler(diagram, &inside) != 1 {
        return None;
    }
    Domain::from_coeffs(diagram, coeffs).ok()
}

/// Euler characteristic of the closure of a union of regions.
fn closure_euler(diagram: &HeegaardDiagram, inside: &[bool]) -> i64 {
    let faces: i64 = diagram.region_ids().filter(|r| inside[r.0]).map(|r| diagram.region(r).euler_char).sum();
    let edges = diagram
        .arcs()
        .iter()
        .filter(|a| inside[a.left.0] || inside[a.right.0])
        .count() as i64;
    let verts = diagram
        .vertex_ids()
        .filter(|&v| diagram.quadrant_regions(v).iter().any(|r| inside[r.0]))
        .count() as i64;
    verts - edges + faces
}

/// Writes `D` as a sum of `k` embedded triangles, one on each curve triple
/// matched by the generators, or returns `None` when that is impossible.
pub fn triangle_decomposition<'a>(d: &Domain<'a>, polygon: &Polygon) -> Result<Option<Vec<Domain<'a>>>, NiceError> {
    if polygon.len() != 3 {
        return Err(NiceError::NotTriangle(polygon.len()));
    }
    let (_, iota) = mu_iota(d, polygon)?;
    if !iota.is_zero() {
        return Err(NiceError::NonzeroIota(iota));
    }
    let diagram = d.diagram();
    let Some(triples) = curve_triples(diagram, polygon) else {
        return Ok(None);
    };
    let mut chosen = Vec::new();
    let found = decompose(diagram, &triples, d.coeffs().to_vec(), &mut chosen);
    Ok(found.then_some(chosen))
}

fn decompose<'a>(
    diagram: &'a HeegaardDiagram,
    triples: &[CurveTriple],
    remaining: Vec<i64>,
    chosen: &mut Vec<Domain<'a>>,
) -> bool {
    let Some((first, rest)) = triples.split_first() else {
        return remaining.iter().all(|&c| c == 0);
    };
    for tri in candidate_triangles(diagram, first, &remaining) {
        let left: Vec<i64> = remaining.iter().zip(tri.coeffs()).map(|(r, t)| r - t).collect();
        chosen.push(tri);
        if decompose(diagram, rest, left, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Basepoint-avoiding domains in `𝒟(x, y, z)` with coefficients in
/// `[0, max_coeff]`, `μ = ι = 0` and a decomposition into embedded
/// triangles. Each one carries exactly one holomorphic triangle.
pub fn index_zero_triangle_domains<'a>(
    diagram: &'a HeegaardDiagram,
    polygon: &Polygon,
    max_coeff: i64,
) -> Result<Vec<Domain<'a>>, NiceError> {
    if polygon.len() != 3 {
        return Err(NiceError::NotTriangle(polygon.len()));
    }
    let avoid = diagram.basepoint_regions();
    let niceness = is_nice(diagram, &avoid);
    if let Some(w) = niceness.witness {
        return Err(NiceError::NotNice(diagram.region(w).name.clone()));
    }
    let solution = match solve_domains(diagram, polygon) {
        Ok(s) => s,
        Err(SolveError::Infeasible) => return Ok(Vec::new()),
        Err(SolveError::Chain(e)) => unreachable!("polygon already validated: {e}"),
    };
    let candidates = enumerate_positive_domains(&solution, &Bounds { max_coeff, avoid, require_nonzero: true });
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|d| {
            matches!(mu_iota(d, polygon), Ok((mu, iota)) if mu.is_zero() && iota.is_zero())
                && matches!(triangle_decomposition(d, polygon), Ok(Some(_)))
        })
        .collect();
    Ok(candidates.into_iter().zip(keep).filter_map(|(d, k)| k.then_some(d)).collect())
}

/// Number of index-zero holomorphic triangles counted combinatorially.
pub fn count_index_zero_triangles(diagram: &HeegaardDiagram, polygon: &Polygon, max_coeff: i64) -> Result<usize, NiceError> {
    index_zero_triangle_domains(diagram, polygon, max_coeff).map(|v| v.len())
}

#[cfg(test)]
fn arcs_between(diagram: &HeegaardDiagram, inside: &[bool]) -> Vec<crate::diagram::ArcId> {
    diagram.arc_ids().filter(|&a| inside[diagram.arc(a).left.0] != inside[diagram.arc(a).right.0]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, torus_triple};
    use std::collections::BTreeMap;

    fn triangle(d: &HeegaardDiagram) -> Polygon {
        Polygon::from_names(d, &[vec!["x"], vec!["y"], vec!["z"]]).unwrap()
    }

    #[test]
    fn triple_is_nice_only_with_hexagon_basepoint() {
        let d = load(torus_triple());
        assert!(is_nice(&d, &d.basepoint_regions()).nice);
        let moved = d.with_basepoints(BTreeMap::from([("w".into(), "T1".into())])).unwrap();
        let n = is_nice(&moved, &moved.basepoint_regions());
        assert_eq!(n.witness, moved.region_by_name("H"));
    }

    #[test]
    fn triangle_census() {
        let d = load(torus_triple());
        let t = Domain::from_named(&d, &[("T1", 1)]).unwrap();
        let r = check_positivity_bound(&t, &triangle(&d)).unwrap();
        assert_eq!((r.mu, r.iota), (Quarter::ZERO, Quarter::ZERO));
        assert_eq!(r.census.three_sided, 1);
        assert_eq!(r.census.two_sided, 0);
        assert_eq!(r.equality_census, Some(true));
        let h = Domain::from_named(&d, &[("T1", 1), ("H", 1)]).unwrap();
        assert_eq!(
            check_positivity_bound(&h, &triangle(&d)).unwrap_err(),
            NiceError::UnsupportedRegion("H".into())
        );
    }

    #[test]
    fn triangles_decompose_as_themselves() {
        let d = load(torus_triple());
        for name in ["T1", "T2"] {
            let t = Domain::from_named(&d, &[(name, 1)]).unwrap();
            let parts = triangle_decomposition(&t, &triangle(&d)).unwrap().unwrap();
            assert_eq!(parts, vec![t.clone()]);
            let inside: Vec<bool> = t.coeffs().iter().map(|&c| c == 1).collect();
            assert_eq!(arcs_between(&d, &inside).len(), 3);
        }
        let lifted = Domain::from_named(&d, &[("T1", 2), ("T2", 1), ("H", 1)]).unwrap();
        assert_eq!(
            triangle_decomposition(&lifted, &triangle(&d)).unwrap_err(),
            NiceError::NonzeroIota(Quarter::from_int(2))
        );
    }

    #[test]
    fn count_on_triple() {
        let d = load(torus_triple());
        assert_eq!(count_index_zero_triangles(&d, &triangle(&d), 2).unwrap(), 2);
    }
}
