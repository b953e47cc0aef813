//! Generators of `T_i ∩ T_j` and integer solutions of the domain system.

use rayon::prelude::*;
use thiserror::Error;

use crate::chains::{ChainError, Domain, Generator, Polygon, PointSum};
use crate::diagram::{HeegaardDiagram, RegionId, VertexId};
use crate::lattice::{self, pivot_columns};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("no integer domain joins the given generators")]
    Infeasible,
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// All points of `T_i ∩ T_j`, sorted by coordinates.
pub fn enumerate_generators(diagram: &HeegaardDiagram, families: (usize, usize)) -> Vec<Generator> {
    let (fi, fj) = families;
    if fi == fj || fi >= diagram.family_count() || fj >= diagram.family_count() {
        return Vec::new();
    }
    // For each family-i curve, the (vertex, family-j curve) pairs on it.
    let options: Vec<Vec<(VertexId, usize)>> = diagram
        .family_curves(fi)
        .iter()
        .map(|&c| {
            diagram
                .vertex_ids()
                .filter(|&v| diagram.vertex_joins(v, fi, fj) && diagram.vertex(v).strand_of(c).is_some())
                .map(|v| {
                    let other = diagram.vertex(v).curves.iter().find(|&&o| o != c).copied().unwrap();
                    (v, other.0)
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut used = vec![false; diagram.curves().len()];
    let mut chosen = Vec::new();
    fn walk(
        level: usize,
        options: &[Vec<(VertexId, usize)>],
        used: &mut [bool],
        chosen: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if level == options.len() {
            out.push(chosen.clone());
            return;
        }
        for &(v, other) in &options[level] {
            if !used[other] {
                used[other] = true;
                chosen.push(v);
                walk(level + 1, options, used, chosen, out);
                chosen.pop();
                used[other] = false;
            }
        }
    }
    walk(0, &options, &mut used, &mut chosen, &mut out);
    let mut gens: Vec<Generator> = out
        .into_iter()
        .map(|coords| Generator::new(diagram, families, coords).expect("matching by construction"))
        .collect();
    gens.sort_by(|a, b| a.coords().cmp(b.coords()));
    gens
}

/// `𝒟(gens)` as a particular domain plus a lattice of periodic domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSolution<'a> {
    pub particular: Domain<'a>,
    /// Canonical basis: echelon in region order, positive pivots, entries
    /// above each pivot reduced.
    pub lattice_basis: Vec<Domain<'a>>,
}

/// Linear system `A x = b` over region coefficients expressing the corner
/// conditions, with zero boundary on families outside the polygon.
fn domain_system(diagram: &HeegaardDiagram, polygon: &Polygon) -> (lattice::Matrix, Vec<i128>) {
    let nr = diagram.regions().len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (c, &f) in polygon.families().iter().enumerate() {
        let (before, after) = polygon.around(c);
        let expected = PointSum::of_generator(after) - PointSum::of_generator(before);
        let mut per_vertex = vec![vec![0i128; nr]; diagram.vertices().len()];
        for a in diagram.arc_ids().filter(|&a| diagram.arc_family(a) == f) {
            let arc = diagram.arc(a);
            for (v, s) in [(arc.head.vertex, 1), (arc.tail.vertex, -1)] {
                per_vertex[v.0][arc.left.0] += s;
                per_vertex[v.0][arc.right.0] -= s;
            }
        }
        for (v, row) in per_vertex.into_iter().enumerate() {
            if diagram.vertex_on_family(VertexId(v), f) {
                rhs.push(expected.coeff(VertexId(v)) as i128);
                rows.push(row);
            }
        }
    }
    for f in (0..diagram.family_count()).filter(|f| !polygon.families().contains(f)) {
        for a in diagram.arc_ids().filter(|&a| diagram.arc_family(a) == f) {
            let arc = diagram.arc(a);
            let mut row = vec![0i128; nr];
            row[arc.left.0] += 1;
            row[arc.right.0] -= 1;
            rows.push(row);
            rhs.push(0);
        }
    }
    (rows, rhs)
}

fn to_domain<'a>(diagram: &'a HeegaardDiagram, v: &[i128]) -> Domain<'a> {
    let coeffs = v.iter().map(|&x| i64::try_from(x).expect("coefficient fits in i64")).collect();
    Domain::from_coeffs(diagram, coeffs).expect("one coefficient per region")
}

/// Solves for every domain joining the polygon's generators.
pub fn solve_domains<'a>(diagram: &'a HeegaardDiagram, polygon: &Polygon) -> Result<DomainSolution<'a>, SolveError> {
    solve_domains_fixing(diagram, polygon, &[])
}

/// Like [`solve_domains`], with some region coefficients prescribed.
pub fn solve_domains_fixing<'a>(
    diagram: &'a HeegaardDiagram,
    polygon: &Polygon,
    fixed: &[(RegionId, i64)],
) -> Result<DomainSolution<'a>, SolveError> {
    let (mut a, mut b) = domain_system(diagram, polygon);
    let nr = diagram.regions().len();
    for &(r, c) in fixed {
        let mut row = vec![0i128; nr];
        row[r.0] = 1;
        a.push(row);
        b.push(c as i128);
    }
    let sol = lattice::solve(&a, &b, nr);
    let particular = sol.particular.ok_or(SolveError::Infeasible)?;
    Ok(DomainSolution {
        particular: to_domain(diagram, &particular),
        lattice_basis: sol.kernel.iter().map(|k| to_domain(diagram, k)).collect(),
    })
}

/// Filters for [`enumerate_positive_domains`].
#[derive(Clone, Debug, Default)]
pub struct Bounds {
    /// Every coefficient lies in `[0, max_coeff]`.
    pub max_coeff: i64,
    /// Regions forced to coefficient zero.
    pub avoid: Vec<RegionId>,
    /// Drop the zero domain.
    pub require_nonzero: bool,
}

/// All domains of a solution set with coefficients inside the bounds, in
/// lexicographic order of their lattice coordinates.
pub fn enumerate_positive_domains<'a>(solution: &DomainSolution<'a>, bounds: &Bounds) -> Vec<Domain<'a>> {
    let diagram = solution.particular.diagram();
    let nr = diagram.regions().len();
    let mut lo = vec![0i128; nr];
    let mut hi = vec![bounds.max_coeff.max(-1) as i128; nr];
    for r in &bounds.avoid {
        hi[r.0] = hi[r.0].min(0);
        lo[r.0] = 0;
    }
    let basis: lattice::Matrix = solution
        .lattice_basis
        .iter()
        .map(|d| d.coeffs().iter().map(|&c| c as i128).collect())
        .collect();
    let pivots = pivot_columns(&basis);
    let start: Vec<i128> = solution.particular.coeffs().iter().map(|&c| c as i128).collect();
    let search = Search { basis: &basis, pivots: &pivots, lo: &lo, hi: &hi };

    // Columns before the first pivot are fixed by the particular solution.
    let first_free = pivots.first().copied().unwrap_or(nr);
    if !search.columns_ok(&start, 0, first_free) {
        return Vec::new();
    }
    let mut found: Vec<Vec<i128>> = if basis.is_empty() {
        vec![start]
    } else {
        let range = search.range(&start, 0);
        range
            .into_par_iter()
            .flat_map_iter(|c| {
                let mut x = start.clone();
                let mut out = Vec::new();
                search.descend(&mut x, 0, c, &mut out);
                out
            })
            .collect()
    };
    if bounds.require_nonzero {
        found.retain(|x| x.iter().any(|&c| c != 0));
    }
    found.iter().map(|x| to_domain(diagram, x)).collect()
}

struct Search<'s> {
    basis: &'s lattice::Matrix,
    pivots: &'s [usize],
    lo: &'s [i128],
    hi: &'s [i128],
}

impl Search<'_> {
    fn columns_ok(&self, x: &[i128], from: usize, to: usize) -> bool {
        (from..to).all(|c| self.lo[c] <= x[c] && x[c] <= self.hi[c])
    }

    /// Admissible multipliers of basis row `level` given earlier choices.
    fn range(&self, x: &[i128], level: usize) -> std::ops::RangeInclusive<i128> {
        let p = self.pivots[level];
        let piv = self.basis[level][p];
        let lo = (self.lo[p] - x[p]).div_euclid(piv) + i128::from((self.lo[p] - x[p]).rem_euclid(piv) != 0);
        let hi = (self.hi[p] - x[p]).div_euclid(piv);
        lo..=hi
    }

    fn descend(&self, x: &mut Vec<i128>, level: usize, c: i128, out: &mut Vec<Vec<i128>>) {
        let row = &self.basis[level];
        for (xi, r) in x.iter_mut().zip(row) {
            *xi += c * r;
        }
        let next = self.pivots.get(level + 1).copied().unwrap_or(x.len());
        if self.columns_ok(x, self.pivots[level], next) {
            if level + 1 == self.basis.len() {
                out.push(x.clone());
            } else {
                for c2 in self.range(x, level + 1) {
                    self.descend(x, level + 1, c2, out);
                }
            }
        }
        for (xi, r) in x.iter_mut().zip(row) {
            *xi -= c * r;
        }
    }
}
