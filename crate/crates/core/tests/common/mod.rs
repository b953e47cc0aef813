//! Shared samplers and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use heegaard::chains::{Domain, Generator, Polygon};
use heegaard::diagram::{RegionId, Sides, VertexId};
use heegaard::fixtures::{named, FIXTURES};
use heegaard::gen_domains::{enumerate_generators, solve_domains, DomainSolution};
use heegaard::{HeegaardDiagram, Quarter};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn all_fixtures() -> Vec<(&'static str, HeegaardDiagram)> {
    FIXTURES.iter().map(|f| (f.name, named(f.name))).collect()
}

/// Every polygon on the given family sequence.
pub fn polygons_on(d: &HeegaardDiagram, families: &[usize]) -> Vec<Polygon> {
    let m = families.len();
    let choices: Vec<Vec<Generator>> =
        (0..m).map(|c| enumerate_generators(d, (families[c], families[(c + 1) % m]))).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    if choices.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let gens = (0..m).map(|c| choices[c][idx[c]].clone()).collect();
        out.push(Polygon::new(families.to_vec(), gens).expect("consecutive families"));
        let mut c = 0;
        loop {
            if c == m {
                return out;
            }
            idx[c] += 1;
            if idx[c] < choices[c].len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// Polygons using every family in order `0, 1, …, n−1`.
pub fn standard_polygons(d: &HeegaardDiagram) -> Vec<Polygon> {
    polygons_on(d, &(0..d.family_count()).collect::<Vec<_>>())
}

/// Polygons on every ordered list of `m` distinct families.
pub fn polygons_of_len(d: &HeegaardDiagram, m: usize) -> Vec<Polygon> {
    let n = d.family_count();
    let mut out = Vec::new();
    let mut seq = Vec::new();
    fn walk(n: usize, m: usize, seq: &mut Vec<usize>, d: &HeegaardDiagram, out: &mut Vec<Polygon>) {
        if seq.len() == m {
            out.extend(polygons_on(d, seq));
            return;
        }
        for f in 0..n {
            if !seq.contains(&f) {
                seq.push(f);
                walk(n, m, seq, d, out);
                seq.pop();
            }
        }
    }
    walk(n, m, &mut seq, d, &mut out);
    out
}

/// A random element of `𝒟(polygon)`: the particular solution plus a random
/// combination of periodic domains.
pub fn random_domain<'a>(sol: &DomainSolution<'a>, rng: &mut StdRng, spread: i64) -> Domain<'a> {
    let mut d = sol.particular.clone();
    for b in &sol.lattice_basis {
        d = d.checked_add(&b.scaled(rng.random_range(-spread..=spread))).unwrap();
    }
    d
}

/// Any 2-chain with coefficients in `[−bound, bound]`.
pub fn random_chain<'a>(d: &'a HeegaardDiagram, rng: &mut StdRng, bound: i64) -> Domain<'a> {
    let coeffs = (0..d.regions().len()).map(|_| rng.random_range(-bound..=bound)).collect();
    Domain::from_coeffs(d, coeffs).unwrap()
}

/// Fixture domains with their polygons: `per_polygon` random samples for
/// every polygon of length `len` on every fixture.
pub fn sampled_domains<'a>(
    fixtures: &'a [(&'static str, HeegaardDiagram)],
    len: impl Fn(&HeegaardDiagram) -> Vec<usize>,
    per_polygon: usize,
    rng: &mut StdRng,
) -> Vec<(&'static str, Polygon, Domain<'a>)> {
    let mut out = Vec::new();
    for (name, d) in fixtures {
        for m in len(d) {
            for p in polygons_of_len(d, m) {
                let Ok(sol) = solve_domains(d, &p) else { continue };
                for _ in 0..per_polygon {
                    out.push((*name, p.clone(), random_domain(&sol, rng, 2)));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

/// For each family, the point sum `∂(∂_f D)` as a dense vector over
/// vertices, computed straight from arc sides and endpoints.
pub fn corner_sums(d: &HeegaardDiagram, coeffs: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; d.vertices().len()]; d.family_count()];
    for (i, arc) in d.arcs().iter().enumerate() {
        let f = d.arc_family(heegaard::diagram::ArcId(i));
        let m = coeffs[arc.left.0] - coeffs[arc.right.0];
        out[f][arc.head.vertex.0] += m;
        out[f][arc.tail.vertex.0] -= m;
    }
    out
}

/// Per family, whether `∂_f D` vanishes on every arc.
pub fn family_boundary_vanishes(d: &HeegaardDiagram, coeffs: &[i64]) -> Vec<bool> {
    let mut out = vec![true; d.family_count()];
    for (i, arc) in d.arcs().iter().enumerate() {
        if coeffs[arc.left.0] != coeffs[arc.right.0] {
            out[d.arc_family(heegaard::diagram::ArcId(i))] = false;
        }
    }
    out
}

fn point_vec(d: &HeegaardDiagram, g: &Generator) -> Vec<i64> {
    let mut v = vec![0i64; d.vertices().len()];
    for c in g.coords() {
        v[c.0] += 1;
    }
    v
}

/// Expected `∂(∂_f D)` for each family of a polygon, zero elsewhere.
pub fn expected_corner_sums(d: &HeegaardDiagram, p: &Polygon) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; d.vertices().len()]; d.family_count()];
    let m = p.len();
    for c in 0..m {
        let after = point_vec(d, &p.gens()[c]);
        let before = point_vec(d, &p.gens()[(c + m - 1) % m]);
        out[p.families()[c]] = after.iter().zip(&before).map(|(a, b)| a - b).collect();
    }
    out
}

/// Direct check that a coefficient vector is a domain joining the polygon.
pub fn oracle_joins(d: &HeegaardDiagram, p: &Polygon, coeffs: &[i64]) -> bool {
    let vanish = family_boundary_vanishes(d, coeffs);
    let strays_ok = (0..d.family_count()).filter(|f| !p.families().contains(f)).all(|f| vanish[f]);
    strays_ok && corner_sums(d, coeffs) == expected_corner_sums(d, p)
}

/// `Σ a(R) (χ(R) − corners(R)/4)` from region data.
pub fn oracle_euler(d: &HeegaardDiagram, coeffs: &[i64]) -> Quarter {
    let mut q = 0;
    for (r, reg) in d.regions().iter().enumerate() {
        q += coeffs[r] * (4 * reg.euler_char - reg.corners.len() as i64);
    }
    Quarter::from_quarters(q)
}

/// A 0/1 region set is an embedded triangle with corners on three
/// distinct curves: it joins single points `a → b → c`, its corners are
/// convex, and its interior is an open disk.
pub fn oracle_embedded_triangle(d: &HeegaardDiagram, p: &Polygon, set: &[bool]) -> Option<[VertexId; 3]> {
    let coeffs: Vec<i64> = set.iter().map(|&b| i64::from(b)).collect();
    let sums = corner_sums(d, &coeffs);
    let vanish = family_boundary_vanishes(d, &coeffs);
    let fams = p.families();
    if fams.len() != 3 || (0..d.family_count()).any(|f| !fams.contains(&f) && !vanish[f]) {
        return None;
    }
    // On side c: +1 at the corner ending it, −1 at the corner starting it.
    let mut corners = [None; 3];
    for c in 0..3 {
        let s = &sums[fams[c]];
        let plus: Vec<usize> = (0..s.len()).filter(|&v| s[v] == 1).collect();
        let minus: Vec<usize> = (0..s.len()).filter(|&v| s[v] == -1).collect();
        if plus.len() != 1 || minus.len() != 1 || s.iter().any(|&x| x.abs() > 1) {
            return None;
        }
        corners[c] = Some((VertexId(minus[0]), VertexId(plus[0])));
    }
    let [(a0, a1), (b0, b1), (c0, c1)] = corners.map(Option::unwrap);
    if a1 != b0 || b1 != c0 || c1 != a0 {
        return None;
    }
    let tri = [a1, b1, c1];
    for (c, &v) in tri.iter().enumerate() {
        if !p.gens()[c].coords().contains(&v) {
            return None;
        }
    }
    // Three distinct curves.
    let mut curves: Vec<usize> = tri.iter().flat_map(|&v| d.vertex(v).curves.map(|c| c.0)).collect();
    curves.sort();
    curves.dedup();
    if curves.len() != 3 {
        return None;
    }
    // Convex corners: one quadrant inside; elsewhere 0, 2 adjacent or 4.
    let mut interior_vertices = 0;
    for v in d.vertex_ids() {
        let q = d.quadrant_regions(v).map(|r| set[r.0]);
        let inside = q.iter().filter(|&&b| b).count();
        if tri.contains(&v) {
            if inside != 1 {
                return None;
            }
        } else {
            match inside {
                0 => {}
                4 => interior_vertices += 1,
                2 if (0..4).any(|i| q[i] && q[(i + 1) % 4]) => {}
                _ => return None,
            }
        }
    }
    if !connected(d, set) {
        return None;
    }
    let regions_chi: i64 = (0..set.len()).filter(|&r| set[r]).map(|r| d.regions()[r].euler_char).sum();
    let interior_arcs = d.arcs().iter().filter(|a| set[a.left.0] && set[a.right.0]).count() as i64;
    (regions_chi - interior_arcs + interior_vertices == 1).then_some(tri)
}

fn connected(d: &HeegaardDiagram, set: &[bool]) -> bool {
    let Some(start) = set.iter().position(|&b| b) else { return false };
    let mut seen = vec![false; set.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(r) = stack.pop() {
        for a in d.arcs() {
            for (x, y) in [(a.left.0, a.right.0), (a.right.0, a.left.0)] {
                if x == r && set[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    (0..set.len()).all(|r| !set[r] || seen[r])
}

/// Whether `coeffs` is a sum of `k` embedded triangles whose `3k` sides lie
/// on distinct curves, found by exhaustive search over region subsets.
pub fn oracle_decomposes(d: &HeegaardDiagram, p: &Polygon, coeffs: &[i64]) -> bool {
    let nr = d.regions().len();
    let triangles: Vec<(Vec<bool>, Vec<usize>)> = (1u64..(1 << nr))
        .filter_map(|mask| {
            let set: Vec<bool> = (0..nr).map(|r| mask >> r & 1 == 1).collect();
            let tri = oracle_embedded_triangle(d, p, &set)?;
            let mut curves: Vec<usize> = tri.iter().flat_map(|&v| d.vertex(v).curves.map(|c| c.0)).collect();
            curves.sort();
            curves.dedup();
            Some((set, curves))
        })
        .collect();
    let k = d.curves_per_family();
    fn search(
        triangles: &[(Vec<bool>, Vec<usize>)],
        from: usize,
        left: usize,
        remaining: &mut Vec<i64>,
        used: &mut HashSet<usize>,
    ) -> bool {
        if left == 0 {
            return remaining.iter().all(|&c| c == 0);
        }
        for t in from..triangles.len() {
            let (set, curves) = &triangles[t];
            if curves.iter().any(|c| used.contains(c)) {
                continue;
            }
            if set.iter().zip(remaining.iter()).any(|(&s, &r)| s && r < 1) {
                continue;
            }
            for (r, &s) in set.iter().enumerate() {
                remaining[r] -= i64::from(s);
            }
            used.extend(curves.iter().copied());
            let ok = search(triangles, t, left - 1, remaining, used);
            for c in curves {
                used.remove(c);
            }
            for (r, &s) in set.iter().enumerate() {
                remaining[r] += i64::from(s);
            }
            if ok {
                return true;
            }
        }
        false
    }
    search(&triangles, 0, k, &mut coeffs.to_vec(), &mut HashSet::new())
}

/// Number of corners of each side count in the support, with multiplicity.
pub fn side_census(d: &HeegaardDiagram, coeffs: &[i64], sides: usize) -> i64 {
    (0..coeffs.len())
        .filter(|&r| d.region_sides(RegionId(r)) == Sides::Disk(sides))
        .map(|r| coeffs[r])
        .sum()
}

/// All vectors in `[lo, hi]^n`, visited by an odometer; `visit` receives
/// the vector and the index changed since the previous call (`None` at the
/// start and after a carry reset).
pub fn odometer(n: usize, lo: i64, hi: i64, mut visit: impl FnMut(&[i64], &[(usize, i64)])) {
    let mut x = vec![lo; n];
    let mut changes = Vec::new();
    visit(&x, &[]);
    loop {
        changes.clear();
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if x[i] < hi {
                x[i] += 1;
                changes.push((i, 1));
                break;
            }
            changes.push((i, lo - hi));
            x[i] = lo;
            i += 1;
        }
        visit(&x, &changes);
    }
}
