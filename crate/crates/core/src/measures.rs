//! Point measure, Euler measure and the pairing of boundary 1-chains.

use crate::chains::{CurveOneChain, Domain, Generator};
use crate::diagram::{HeegaardDiagram, VertexId};
use crate::quarter::Quarter;

/// Average of the coefficients of `D` in the four corners at `v`.
pub fn point_measure_at(d: &Domain<'_>, v: VertexId) -> Quarter {
    let quads = d.diagram().quadrant_regions(v);
    Quarter::from_quarters(quads.iter().map(|&r| d.coeff(r)).sum())
}

/// Sum of [`point_measure_at`] over the coordinates of a generator.
pub fn point_measure(d: &Domain<'_>, p: &Generator) -> Quarter {
    p.coords().iter().map(|&v| point_measure_at(d, v)).sum()
}

/// `Σ_R a(R) (χ(R) − corners(R)/4)`.
pub fn euler_measure(d: &Domain<'_>) -> Quarter {
    let diagram = d.diagram();
    diagram
        .region_ids()
        .map(|r| diagram.region_euler_measure(r) * d.coeff(r))
        .sum()
}

/// Intersection number `a · b` of two boundary chains, the average over the
/// four diagonal push-offs of `a`.
///
/// At a crossing of the two families each chain has a flux `t`, the sum of
/// its multiplicities on the incoming and outgoing arc of its curve. The
/// crossing contributes `±t_a t_b / 4`, positive when the stored directions
/// of `a`'s curve and `b`'s curve form a positive frame. Chains on the same
/// family pair to zero.
pub fn pair_one_chains(diagram: &HeegaardDiagram, a: &CurveOneChain, b: &CurveOneChain) -> Quarter {
    let (fa, fb) = (a.family(), b.family());
    if fa == fb {
        return Quarter::ZERO;
    }
    let mut quarters = 0;
    for v in diagram.vertices() {
        let (f0, f1) = v.family_pair(diagram);
        let (sa, sb) = match (f0, f1) {
            _ if (f0, f1) == (fa, fb) => (0, 1),
            _ if (f0, f1) == (fb, fa) => (1, 0),
            _ => continue,
        };
        let ta = a.mult(v.in_arc(sa)) + a.mult(v.out_arc(sa));
        let tb = b.mult(v.in_arc(sb)) + b.mult(v.out_arc(sb));
        let sign = if v.out_slot(sb) == (v.out_slot(sa) + 1) % 4 { 1 } else { -1 };
        quarters += sign * ta * tb;
    }
    Quarter::from_quarters(quarters)
}
