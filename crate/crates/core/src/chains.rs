//! Domains, boundary 1-chains, corner sums and generators.
//!
//! Families are 0-based throughout the library.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::diagram::{ArcId, HeegaardDiagram, RegionId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("domains belong to different diagrams")]
    DiagramMismatch,
    #[error("expected {expected} coefficients, got {got}")]
    Length { expected: usize, got: usize },
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("family {0} out of range")]
    FamilyRange(usize),
    #[error("vertex `{vertex}` is not a crossing of families {} and {}", .families.0 + 1, .families.1 + 1)]
    WrongPair { vertex: String, families: (usize, usize) },
    #[error("generator for families {} and {} needs {expected} points, got {got}", .families.0 + 1, .families.1 + 1)]
    GeneratorSize { families: (usize, usize), expected: usize, got: usize },
    #[error("curve {0} carries {1} generator points")]
    NotMatching(String, usize),
    #[error("polygon needs at least two families")]
    PolygonTooShort,
    #[error("polygon lists family {} twice", .0 + 1)]
    RepeatedFamily(usize),
    #[error("generator {position} joins families {} and {}, expected {} and {}", .found.0 + 1, .found.1 + 1, .expected.0 + 1, .expected.1 + 1)]
    PairMismatch { position: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("polygons do not share the splice generator")]
    SpliceMismatch,
}

/// An integer 2-chain on the regions of a diagram.
#[derive(Clone)]
pub struct Domain<'a> {
    diagram: &'a HeegaardDiagram,
    coeffs: Vec<i64>,
}

impl PartialEq for Domain<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.diagram, other.diagram) && self.coeffs == other.coeffs
    }
}

impl Eq for Domain<'_> {}

impl fmt::Debug for Domain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Domain({self})")
    }
}

/// `T1:1,H:-2`, listing nonzero coefficients in region order; `0` if none.
impl fmt::Display for Domain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}:{}", self.diagram.region(RegionId(r)).name, c)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<'a> Domain<'a> {
    pub fn zero(diagram: &'a HeegaardDiagram) -> Self {
        Domain { diagram, coeffs: vec![0; diagram.regions().len()] }
    }

    pub fn from_coeffs(diagram: &'a HeegaardDiagram, coeffs: Vec<i64>) -> Result<Self, ChainError> {
        let expected = diagram.regions().len();
        if coeffs.len() != expected {
            return Err(ChainError::Length { expected, got: coeffs.len() });
        }
        Ok(Domain { diagram, coeffs })
    }

    /// Builds a domain from (region id, coefficient) pairs; repeated ids add.
    pub fn from_named(diagram: &'a HeegaardDiagram, terms: &[(&str, i64)]) -> Result<Self, ChainError> {
        let mut d = Domain::zero(diagram);
        for &(name, c) in terms {
            let r = diagram
                .region_by_name(name)
                .ok_or_else(|| ChainError::UnknownRegion(name.to_string()))?;
            d.coeffs[r.0] += c;
        }
        Ok(d)
    }

    /// The whole surface `[Σ]`, every region with coefficient 1.
    pub fn surface(diagram: &'a HeegaardDiagram) -> Self {
        Domain { diagram, coeffs: vec![1; diagram.regions().len()] }
    }

    pub fn diagram(&self) -> &'a HeegaardDiagram {
        self.diagram
    }

    pub fn coeff(&self, r: RegionId) -> i64 {
        self.coeffs[r.0]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// No negative coefficient and at least one positive one.
    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0) && self.coeffs.iter().any(|&c| c > 0)
    }

    pub fn scaled(&self, m: i64) -> Self {
        Domain { diagram: self.diagram, coeffs: self.coeffs.iter().map(|c| c * m).collect() }
    }

    pub fn checked_add(&self, other: &Domain<'a>) -> Result<Self, ChainError> {
        if !std::ptr::eq(self.diagram, other.diagram) {
            return Err(ChainError::DiagramMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Domain { diagram: self.diagram, coeffs })
    }

    pub fn checked_sub(&self, other: &Domain<'a>) -> Result<Self, ChainError> {
        self.checked_add(&other.scaled(-1))
    }

    /// The same coefficients on another diagram with the same regions, such
    /// as one with a curve orientation reversed.
    pub fn transfer<'b>(&self, diagram: &'b HeegaardDiagram) -> Result<Domain<'b>, ChainError> {
        Domain::from_coeffs(diagram, self.coeffs.clone())
    }
}

/// Coefficient-wise sum of two domains on the same diagram.
pub fn add_domains<'a>(d1: &Domain<'a>, d2: &Domain<'a>) -> Result<Domain<'a>, ChainError> {
    d1.checked_add(d2)
}

/// An integer 1-chain on the arcs of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveOneChain {
    family: usize,
    mults: Vec<i64>,
}

impl CurveOneChain {
    pub fn zero(diagram: &HeegaardDiagram, family: usize) -> Self {
        CurveOneChain { family, mults: vec![0; diagram.arcs().len()] }
    }

    /// Builds a chain from per-arc multiplicities, dropping arcs of other
    /// families.
    pub fn from_arcs(diagram: &HeegaardDiagram, family: usize, terms: &[(ArcId, i64)]) -> Self {
        let mut c = CurveOneChain::zero(diagram, family);
        for &(a, m) in terms {
            if diagram.arc_family(a) == family {
                c.mults[a.0] += m;
            }
        }
        c
    }

    pub fn family(&self) -> usize {
        self.family
    }

    pub fn mult(&self, arc: ArcId) -> i64 {
        self.mults[arc.0]
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    /// Nonzero (arc, multiplicity) terms in arc order.
    pub fn terms(&self) -> impl Iterator<Item = (ArcId, i64)> + '_ {
        self.mults.iter().enumerate().filter(|(_, &m)| m != 0).map(|(a, &m)| (ArcId(a), m))
    }
}

/// A formal integer combination of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSum(BTreeMap<VertexId, i64>);

impl PointSum {
    pub fn new() -> Self {
        PointSum::default()
    }

    pub fn add_term(&mut self, v: VertexId, c: i64) {
        let e = self.0.entry(v).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&v);
        }
    }

    pub fn coeff(&self, v: VertexId) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (VertexId, i64)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    /// The sum of the coordinates of a generator.
    pub fn of_generator(g: &Generator) -> Self {
        let mut s = PointSum::new();
        for &v in g.coords() {
            s.add_term(v, 1);
        }
        s
    }

    /// Keeps only the vertices satisfying `keep`.
    pub fn restricted(&self, keep: impl Fn(VertexId) -> bool) -> Self {
        PointSum(self.0.iter().filter(|(v, _)| keep(**v)).map(|(&v, &c)| (v, c)).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }
}

impl Add for PointSum {
    type Output = PointSum;
    fn add(mut self, rhs: PointSum) -> PointSum {
        for (v, c) in rhs.0 {
            self.add_term(v, c);
        }
        self
    }
}

impl Neg for PointSum {
    type Output = PointSum;
    fn neg(self) -> PointSum {
        PointSum(self.0.into_iter().map(|(v, c)| (v, -c)).collect())
    }
}

impl Sub for PointSum {
    type Output = PointSum;
    fn sub(self, rhs: PointSum) -> PointSum {
        self + (-rhs)
    }
}

/// A point of `T_i ∩ T_j`: one vertex on each curve of both families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    families: (usize, usize),
    coords: Vec<VertexId>,
}

impl Generator {
    /// Checks the matching property. Coordinates are stored sorted.
    pub fn new(
        diagram: &HeegaardDiagram,
        families: (usize, usize),
        coords: Vec<VertexId>,
    ) -> Result<Self, ChainError> {
        let n = diagram.family_count();
        for f in [families.0, families.1] {
            if f >= n {
                return Err(ChainError::FamilyRange(f + 1));
            }
        }
        let k = diagram.curves_per_family();
        if coords.len() != k {
            return Err(ChainError::GeneratorSize { families, expected: k, got: coords.len() });
        }
        let mut hits = vec![0usize; diagram.curves().len()];
        for &v in &coords {
            if !diagram.vertex_joins(v, families.0, families.1) {
                return Err(ChainError::WrongPair { vertex: diagram.vertex(v).name.clone(), families });
            }
            for c in diagram.vertex(v).curves {
                hits[c.0] += 1;
            }
        }
        for f in [families.0, families.1] {
            for &c in diagram.family_curves(f) {
                if hits[c.0] != 1 {
                    return Err(ChainError::NotMatching(diagram.curve_label(c), hits[c.0]));
                }
            }
        }
        let mut coords = coords;
        coords.sort();
        Ok(Generator { families, coords })
    }

    /// Parses vertex ids for a generator of the given families.
    pub fn from_names(
        diagram: &HeegaardDiagram,
        families: (usize, usize),
        names: &[&str],
    ) -> Result<Self, ChainError> {
        let coords = names
            .iter()
            .map(|n| diagram.vertex_by_name(n).ok_or_else(|| ChainError::UnknownVertex(n.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Generator::new(diagram, families, coords)
    }

    pub fn families(&self) -> (usize, usize) {
        self.families
    }

    pub fn coords(&self) -> &[VertexId] {
        &self.coords
    }

    /// Whether the generator joins the unordered family pair `{a, b}`.
    pub fn joins(&self, a: usize, b: usize) -> bool {
        self.families == (a, b) || self.families == (b, a)
    }

    /// Vertex ids joined by `+`, such as `x1+x2`.
    pub fn label(&self, diagram: &HeegaardDiagram) -> String {
        self.coords.iter().map(|&v| diagram.vertex(v).name.as_str()).collect::<Vec<_>>().join("+")
    }
}

/// Corner data of a Whitney polygon: a cyclic list of distinct families
/// `f_0, …, f_{m−1}` and generators `gens[c] ∈ T_{f_c} ∩ T_{f_{c+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    families: Vec<usize>,
    gens: Vec<Generator>,
}

impl Polygon {
    pub fn new(families: Vec<usize>, gens: Vec<Generator>) -> Result<Self, ChainError> {
        let m = families.len();
        if m < 2 {
            return Err(ChainError::PolygonTooShort);
        }
        for (i, f) in families.iter().enumerate() {
            if families[..i].contains(f) {
                return Err(ChainError::RepeatedFamily(*f));
            }
        }
        if gens.len() != m {
            return Err(ChainError::Length { expected: m, got: gens.len() });
        }
        for (c, g) in gens.iter().enumerate() {
            let expected = (families[c], families[(c + 1) % m]);
            if !g.joins(expected.0, expected.1) {
                return Err(ChainError::PairMismatch { position: c, expected, found: g.families });
            }
        }
        Ok(Polygon { families, gens })
    }

    /// Uses every family of the diagram in order: `gens[i] ∈ T_i ∩ T_{i+1}`.
    pub fn standard(diagram: &HeegaardDiagram, gens: Vec<Generator>) -> Result<Self, ChainError> {
        Polygon::new((0..diagram.family_count()).collect(), gens)
    }

    /// Reads generators of a standard polygon from vertex id lists.
    pub fn from_names(diagram: &HeegaardDiagram, gens: &[Vec<&str>]) -> Result<Self, ChainError> {
        let n = diagram.family_count();
        if gens.len() != n {
            return Err(ChainError::Length { expected: n, got: gens.len() });
        }
        let gens = gens
            .iter()
            .enumerate()
            .map(|(i, names)| Generator::from_names(diagram, (i, (i + 1) % n), names))
            .collect::<Result<Vec<_>, _>>()?;
        Polygon::standard(diagram, gens)
    }

    pub fn families(&self) -> &[usize] {
        &self.families
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    /// Number of sides.
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    /// Generator before and after side `c`: `(gens[c−1], gens[c])`.
    pub fn around(&self, c: usize) -> (&Generator, &Generator) {
        let m = self.len();
        (&self.gens[(c + m - 1) % m], &self.gens[c])
    }

    /// Relabels so that side `shift` comes first.
    pub fn rotated(&self, shift: usize) -> Polygon {
        let mut families = self.families.clone();
        let mut gens = self.gens.clone();
        families.rotate_left(shift % self.len());
        gens.rotate_left(shift % self.len());
        Polygon { families, gens }
    }

    /// Joins `self`, on families `f_0, …, f_{m−1}` with last generator `q`,
    /// to `other`, on families `f_0, f_{m−1}, …, f_{n−1}` with first
    /// generator `q`, giving the polygon on `f_0, …, f_{n−1}`.
    pub fn splice(&self, other: &Polygon) -> Result<Polygon, ChainError> {
        let m = self.len();
        if other.len() < 2
            || other.families[0] != self.families[0]
            || other.families[1] != self.families[m - 1]
            || other.gens[0].coords != self.gens[m - 1].coords
        {
            return Err(ChainError::SpliceMismatch);
        }
        let mut families = self.families.clone();
        families.extend_from_slice(&other.families[2..]);
        let mut gens = self.gens[..m - 1].to_vec();
        gens.extend_from_slice(&other.gens[1..]);
        Polygon::new(families, gens)
    }
}

/// `∂_i D`: on each arc of family `i`, the coefficient on its left minus the
/// coefficient on its right.
pub fn boundary_on_family(d: &Domain<'_>, family: usize) -> CurveOneChain {
    let diagram = d.diagram();
    let mut c = CurveOneChain::zero(diagram, family);
    for (a, arc) in diagram.arcs().iter().enumerate() {
        if diagram.arc_family(ArcId(a)) == family {
            c.mults[a] = d.coeff(arc.left) - d.coeff(arc.right);
        }
    }
    c
}

/// `∂` of a 1-chain: heads minus tails.
pub fn corner_boundary(diagram: &HeegaardDiagram, c: &CurveOneChain) -> PointSum {
    let mut s = PointSum::new();
    for (a, m) in c.terms() {
        let arc = diagram.arc(a);
        s.add_term(arc.head.vertex, m);
        s.add_term(arc.tail.vertex, -m);
    }
    s
}

/// The corner condition failing first, as a polygon side index, or `None`
/// when `D` joins the polygon's generators. Families outside the polygon
/// must carry no boundary at all.
pub fn first_failing_side(d: &Domain<'_>, polygon: &Polygon) -> Option<usize> {
    let diagram = d.diagram();
    for (c, &f) in polygon.families.iter().enumerate() {
        let (before, after) = polygon.around(c);
        let expected = PointSum::of_generator(after) - PointSum::of_generator(before);
        if corner_boundary(diagram, &boundary_on_family(d, f)) != expected {
            return Some(c);
        }
    }
    None
}

/// Family (0-based) outside the polygon that carries boundary of `D`.
pub fn stray_family(d: &Domain<'_>, polygon: &Polygon) -> Option<usize> {
    (0..d.diagram().family_count())
        .filter(|f| !polygon.families.contains(f))
        .find(|&f| !boundary_on_family(d, f).is_zero())
}

/// Whether `D ∈ 𝒟(gens)`.
pub fn is_domain_joining(d: &Domain<'_>, polygon: &Polygon) -> bool {
    first_failing_side(d, polygon).is_none() && stray_family(d, polygon).is_none()
}

/// Sum of the coefficients of `∂(∂_a D)` over crossings of families `a`, `b`.
pub fn s_count(d: &Domain<'_>, a: usize, b: usize) -> i64 {
    let diagram = d.diagram();
    corner_boundary(diagram, &boundary_on_family(d, a))
        .restricted(|v| diagram.vertex_joins(v, a, b))
        .total()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load, s3_genus1, torus_triple};

    fn triangle_gens(d: &HeegaardDiagram) -> Polygon {
        Polygon::from_names(d, &[vec!["x"], vec!["y"], vec!["z"]]).unwrap()
    }

    #[test]
    fn triangle_boundary_on_second_family_is_one_arc() {
        let d = load(torus_triple());
        let t = Domain::from_named(&d, &[("T1", 1)]).unwrap();
        let c = boundary_on_family(&t, 1);
        let terms: Vec<_> = c.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1.abs(), 1);
        let x = d.vertex_by_name("x").unwrap();
        let y = d.vertex_by_name("y").unwrap();
        let corners = corner_boundary(&d, &c);
        assert_eq!(corners.coeff(y), 1);
        assert_eq!(corners.coeff(x), -1);
    }

    #[test]
    fn full_surface_has_no_boundary() {
        let d = load(s3_genus1());
        let s = Domain::surface(&d);
        assert!(boundary_on_family(&s, 0).is_zero());
        assert!(boundary_on_family(&s, 1).is_zero());
        assert!(boundary_on_family(&Domain::zero(&d), 0).is_zero());
    }

    #[test]
    fn triangles_join_their_corners() {
        let d = load(torus_triple());
        let p = triangle_gens(&d);
        for name in ["T1", "T2"] {
            assert!(is_domain_joining(&Domain::from_named(&d, &[(name, 1)]).unwrap(), &p));
        }
        assert!(!is_domain_joining(&Domain::from_named(&d, &[("H", 1)]).unwrap(), &p));
        assert!(!is_domain_joining(&Domain::zero(&d), &p));
    }

    #[test]
    fn surface_multiples_join_constant_bigon() {
        let d = load(s3_genus1());
        let p = Polygon::from_names(&d, &[vec!["x"], vec!["x"]]).unwrap();
        for m in -3..=3 {
            assert!(is_domain_joining(&Domain::surface(&d).scaled(m), &p));
        }
    }

    #[test]
    fn s_count_on_triangles_and_regions() {
        let d = load(torus_triple());
        let t = Domain::from_named(&d, &[("T1", 1)]).unwrap();
        assert_eq!(s_count(&t, 0, 1), 1);
        assert_eq!(s_count(&Domain::zero(&d), 0, 1), 0);
        let h = Domain::from_named(&d, &[("H", 1)]).unwrap();
        let t2 = Domain::from_named(&d, &[("T2", 1)]).unwrap();
        assert_eq!(s_count(&t2, 0, 1).abs(), 1);
        let sum = t.checked_add(&h).unwrap();
        assert_eq!(s_count(&sum, 0, 1), s_count(&t, 0, 1) + s_count(&h, 0, 1));
    }

    #[test]
    fn generator_rejects_non_matching() {
        let d = load(torus_triple());
        let e = Generator::from_names(&d, (0, 1), &["y"]).unwrap_err();
        assert!(matches!(e, ChainError::WrongPair { .. }));
        let e = Generator::from_names(&d, (0, 1), &["x", "x"]).unwrap_err();
        assert!(matches!(e, ChainError::GeneratorSize { .. }));
    }

    #[test]
    fn polygon_rejects_pair_mismatch() {
        let d = load(torus_triple());
        let g = |n: &str, f| Generator::from_names(&d, f, &[n]).unwrap();
        let e = Polygon::standard(&d, vec![g("x", (0, 1)), g("z", (2, 0)), g("y", (1, 2))]).unwrap_err();
        assert!(matches!(e, ChainError::PairMismatch { position: 1, .. }));
    }

    #[test]
    fn domains_from_different_diagrams_do_not_add() {
        let a = load(torus_triple());
        let b = load(torus_triple());
        let e = add_domains(&Domain::zero(&a), &Domain::zero(&b)).unwrap_err();
        assert_eq!(e, ChainError::DiagramMismatch);
    }
}
