//! Combinatorial Heegaard diagrams.
//!
//! A diagram is stored as a rotation system: every vertex is a transverse
//! crossing of two curves from different families and lists its four arc
//! ends in counterclockwise order, alternating between the two curves.
//! Quadrant `q` of a vertex is the corner lying counterclockwise between
//! `ends[q]` and `ends[(q + 1) % 4]`. Regions are explicit records carrying
//! their Euler characteristic and boundary cycles, so non-disk regions are
//! representable.
//!
//! [`DiagramData`] is the plain, unvalidated form (and the on-disk schema).
//! [`HeegaardDiagram`] is the validated, indexed form every other module
//! works with; it is immutable once built.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quarter::Quarter;

pub const FORMAT_VERSION: u32 = 1;

macro_rules! id_type {
    ($name:ident) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            pub fn index(self) -> usize {
                self.0
            }
        }
    };
}

id_type!(VertexId);
id_type!(ArcId);
id_type!(RegionId);
id_type!(CurveId);

/// Which end of an arc meets a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndKind {
    Tail,
    Head,
}

// ---------------------------------------------------------------------------
// Unvalidated data (file schema)
// ---------------------------------------------------------------------------

/// Serializable description of a diagram. All cross references are by
/// string id; families and curve indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramData {
    pub format_version: u32,
    pub genus: u32,
    /// Number of curve families `n`.
    pub families: usize,
    /// Curves per family `k`.
    pub curves_per_family: usize,
    pub curves: Vec<CurveData>,
    pub vertices: Vec<VertexData>,
    pub arcs: Vec<ArcData>,
    pub regions: Vec<RegionData>,
    /// Basepoint label to region id.
    #[serde(default)]
    pub basepoints: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveData {
    pub family: usize,
    pub index: usize,
    /// Arc ids in traversal order.
    pub arcs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexData {
    pub id: String,
    /// Families of the curves at positions (0, 2) and (1, 3).
    pub families: [usize; 2],
    /// Counterclockwise arc ends, each written `arc:tail` or `arc:head`.
    pub ends: [String; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcData {
    pub id: String,
    pub family: usize,
    pub curve: usize,
    /// `vertex:slot`
    pub tail: String,
    /// `vertex:slot`
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionData {
    pub id: String,
    pub euler_char: i64,
    /// Boundary cycles, each a sequence of `+arc` / `-arc` traversed with
    /// the region on the left.
    pub boundary: Vec<Vec<String>>,
    /// Corner claims `vertex:quadrant`. Derived from the boundary when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corners: Option<Vec<String>>,
}

// ---------------------------------------------------------------------------
// Validated form
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArcEnd {
    pub arc: ArcId,
    pub kind: EndKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub vertex: VertexId,
    pub slot: usize,
}

/// An arc traversed forward (along the curve orientation) or backward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub arc: ArcId,
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub vertex: VertexId,
    pub quadrant: usize,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub family: usize,
    pub index: usize,
    pub arcs: Vec<ArcId>,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub name: String,
    pub ends: [ArcEnd; 4],
    /// Curve at positions (0, 2) and curve at positions (1, 3).
    pub curves: [CurveId; 2],
    /// Region claiming each quadrant.
    pub quadrants: [RegionId; 4],
}

#[derive(Clone, Debug)]
pub struct Arc {
    pub name: String,
    pub curve: CurveId,
    pub tail: Slot,
    pub head: Slot,
    pub left: RegionId,
    pub right: RegionId,
}

#[derive(Clone, Debug)]
pub struct Region {
    pub name: String,
    pub euler_char: i64,
    pub boundary: Vec<Vec<HalfEdge>>,
    pub corners: Vec<Corner>,
}

#[derive(Clone, Debug)]
pub struct Basepoint {
    pub label: String,
    pub region: RegionId,
}

/// A validated Heegaard diagram.
#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    data: DiagramData,
    curves: Vec<Curve>,
    vertices: Vec<Vertex>,
    arcs: Vec<Arc>,
    regions: Vec<Region>,
    basepoints: Vec<Basepoint>,
    vertex_ids: HashMap<String, VertexId>,
    region_ids: HashMap<String, RegionId>,
    arc_ids: HashMap<String, ArcId>,
    family_curves: Vec<Vec<CurveId>>,
}

/// Number of boundary arcs of a region, or `NonDisk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    Disk(usize),
    NonDisk,
}

impl Vertex {
    /// Families of the curves at positions (0, 2) and (1, 3), 0-based.
    pub fn family_pair(&self, diagram: &HeegaardDiagram) -> (usize, usize) {
        (
            diagram.curve(self.curves[0]).family,
            diagram.curve(self.curves[1]).family,
        )
    }

    /// Which of the two strands (0 or 1) lies on `curve`.
    pub fn strand_of(&self, curve: CurveId) -> Option<usize> {
        self.curves.iter().position(|&c| c == curve)
    }

    /// Slot of the outgoing end of a strand.
    pub fn out_slot(&self, strand: usize) -> usize {
        if self.ends[strand].kind == EndKind::Tail {
            strand
        } else {
            strand + 2
        }
    }

    /// Arc leaving the vertex along a strand.
    pub fn out_arc(&self, strand: usize) -> ArcId {
        self.ends[self.out_slot(strand)].arc
    }

    /// Arc arriving at the vertex along a strand.
    pub fn in_arc(&self, strand: usize) -> ArcId {
        self.ends[(self.out_slot(strand) + 2) % 4].arc
    }

    /// `true` when (direction of strand 0, direction of strand 1) is a
    /// positively oriented frame.
    pub fn positive_frame(&self) -> bool {
        self.out_slot(1) == (self.out_slot(0) + 1) % 4
    }
}

impl HeegaardDiagram {
    /// Validates and indexes `data`.
    pub fn new(data: DiagramData) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        let built = build(&data, &mut report);
        match built {
            Some(tables) if report.is_valid() => Ok(HeegaardDiagram { data, ..tables }),
            _ => Err(report),
        }
    }

    pub fn data(&self) -> &DiagramData {
        &self.data
    }

    pub fn genus(&self) -> u32 {
        self.data.genus
    }

    /// Number of families `n`.
    pub fn family_count(&self) -> usize {
        self.data.families
    }

    /// Curves per family `k`.
    pub fn curves_per_family(&self) -> usize {
        self.data.curves_per_family
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn curve(&self, id: CurveId) -> &Curve {
        &self.curves[id.0]
    }

    /// Curves of a 0-based family, by curve index.
    pub fn family_curves(&self, family: usize) -> &[CurveId] {
        &self.family_curves[family]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id.0]
    }

    pub fn arc_family(&self, id: ArcId) -> usize {
        self.curve(self.arc(id).curve).family
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, id: RegionId) -> &Region {
        &self.regions[id.0]
    }

    pub fn basepoints(&self) -> &[Basepoint] {
        &self.basepoints
    }

    pub fn basepoint_regions(&self) -> Vec<RegionId> {
        let mut out: Vec<RegionId> = self.basepoints.iter().map(|b| b.region).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_ids.get(name).copied()
    }

    pub fn region_by_name(&self, name: &str) -> Option<RegionId> {
        self.region_ids.get(name).copied()
    }

    pub fn arc_by_name(&self, name: &str) -> Option<ArcId> {
        self.arc_ids.get(name).copied()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn region_ids(&self) -> impl Iterator<Item = RegionId> {
        (0..self.regions.len()).map(RegionId)
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.arcs.len()).map(ArcId)
    }

    /// Whether a vertex lies on a curve of `family`.
    pub fn vertex_on_family(&self, v: VertexId, family: usize) -> bool {
        let vx = self.vertex(v);
        vx.curves.iter().any(|&c| self.curve(c).family == family)
    }

    /// Whether a vertex is a crossing of families `a` and `b`.
    pub fn vertex_joins(&self, v: VertexId, a: usize, b: usize) -> bool {
        let (f0, f1) = self.vertex(v).family_pair(self);
        (f0, f1) == (a, b) || (f0, f1) == (b, a)
    }

    /// Number of boundary arcs of a disk region.
    pub fn region_sides(&self, region: RegionId) -> Sides {
        let r = self.region(region);
        if r.euler_char == 1 && r.boundary.len() == 1 {
            Sides::Disk(r.boundary[0].len())
        } else {
            Sides::NonDisk
        }
    }

    /// The regions in quadrants 0..3 of a vertex.
    pub fn quadrant_regions(&self, vertex: VertexId) -> [RegionId; 4] {
        self.vertex(vertex).quadrants
    }

    /// Euler measure of a single region: `χ(R) − corners(R)/4`.
    pub fn region_euler_measure(&self, region: RegionId) -> Quarter {
        let r = self.region(region);
        Quarter::from_quarters(4 * r.euler_char - r.corners.len() as i64)
    }

    /// The same diagram with the stored orientation of one curve reversed.
    pub fn with_curve_reversed(&self, curve: CurveId) -> HeegaardDiagram {
        let mut data = self.data.clone();
        reverse_curve(&mut data, self, curve);
        HeegaardDiagram::new(data).expect("reversing a curve preserves validity")
    }

    /// The same diagram with a different basepoint placement.
    pub fn with_basepoints(
        &self,
        basepoints: BTreeMap<String, String>,
    ) -> Result<HeegaardDiagram, ValidationReport> {
        let mut data = self.data.clone();
        data.basepoints = basepoints;
        HeegaardDiagram::new(data)
    }

    /// Label of a curve, such as `η2_1` (1-based family and index).
    pub fn curve_label(&self, curve: CurveId) -> String {
        let c = self.curve(curve);
        format!("η{}_{}", c.family + 1, c.index + 1)
    }
}

fn reverse_curve(data: &mut DiagramData, diagram: &HeegaardDiagram, curve: CurveId) {
    let c = diagram.curve(curve);
    let names: Vec<String> = c.arcs.iter().map(|&a| diagram.arc(a).name.clone()).collect();
    let flipped: std::collections::HashSet<&str> = names.iter().map(String::as_str).collect();

    for cd in data.curves.iter_mut() {
        if cd.family == c.family + 1 && cd.index == c.index + 1 {
            cd.arcs.reverse();
        }
    }
    for ad in data.arcs.iter_mut() {
        if flipped.contains(ad.id.as_str()) {
            std::mem::swap(&mut ad.tail, &mut ad.head);
        }
    }
    for vd in data.vertices.iter_mut() {
        for end in vd.ends.iter_mut() {
            if let Some((arc, kind)) = end.rsplit_once(':') {
                if flipped.contains(arc) {
                    let k = match kind {
                        "tail" => EndKind::Head,
                        _ => EndKind::Tail,
                    };
                    *end = format_end(arc, k);
                }
            }
        }
    }
    for rd in data.regions.iter_mut() {
        for cycle in rd.boundary.iter_mut() {
            for he in cycle.iter_mut() {
                let (sign, arc) = he.split_at(1);
                if flipped.contains(arc) {
                    let s = if sign == "+" { "-" } else { "+" };
                    *he = format!("{s}{arc}");
                }
            }
        }
    }
}

pub(crate) fn format_end(arc: &str, kind: EndKind) -> String {
    match kind {
        EndKind::Tail => format!("{arc}:tail"),
        EndKind::Head => format!("{arc}:head"),
    }
}

// A half-edge leaving slot `s` has quadrant `s` of its start vertex on its
// left. Arriving at slot `t`, the boundary of that region continues out of
// slot `t - 1`, and the corner it turns through is quadrant `t - 1`.
pub(crate) fn half_edge_start(arc: &Arc, he: HalfEdge) -> Slot {
    if he.forward {
        arc.tail
    } else {
        arc.head
    }
}

pub(crate) fn half_edge_end(arc: &Arc, he: HalfEdge) -> Slot {
    if he.forward {
        arc.head
    } else {
        arc.tail
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// One violated invariant, naming the offending element.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationIssue {
    #[error("unsupported format version {0}")]
    FormatVersion(u32),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("{element}: malformed reference `{text}`")]
    Malformed { element: String, text: String },
    #[error("{element}: dangling reference to `{target}`")]
    DanglingReference { element: String, target: String },
    #[error("family count must be at least 1")]
    NoFamilies,
    #[error("family {family}: expected {expected} curves, found {found}")]
    CurveCount { family: usize, expected: usize, found: usize },
    #[error("curve ({family}, {index}) is out of range or repeated")]
    BadCurve { family: usize, index: usize },
    #[error("curve ({family}, {index}) has no arcs")]
    EmptyCurve { family: usize, index: usize },
    #[error("curve ({family}, {index}): {detail}")]
    CurveCycle { family: usize, index: usize, detail: String },
    #[error("arc {arc}: {detail}")]
    ArcEnd { arc: String, detail: String },
    #[error("vertex {vertex}: {detail}")]
    VertexShape { vertex: String, detail: String },
    #[error("vertex {vertex}: same-family intersection on family {family}")]
    SameFamilyIntersection { vertex: String, family: usize },
    #[error("region {region}: {detail}")]
    BoundaryCycle { region: String, detail: String },
    #[error("arc {arc}: {side} side claimed {count} times")]
    ArcSide { arc: String, side: &'static str, count: usize },
    #[error("vertex {vertex}: quadrant {quadrant} unclaimed")]
    UnclaimedQuadrant { vertex: String, quadrant: usize },
    #[error("vertex {vertex}: quadrant {quadrant} claimed more than once")]
    QuadrantClaimedTwice { vertex: String, quadrant: usize },
    #[error("region {region}: declared corners do not match its boundary")]
    CornerMismatch { region: String },
    #[error("region {region}: euler characteristic {euler_char} impossible with {cycles} boundary cycles")]
    RegionTopology { region: String, euler_char: i64, cycles: usize },
    #[error("Euler characteristic mismatch: V - E + sum chi(R) = {computed}, expected {expected}")]
    EulerMismatch { computed: i64, expected: i64 },
    #[error("surface is disconnected: {components} region components")]
    Disconnected { components: usize },
    #[error("family {family}: complement has {found} components, expected {expected}")]
    FamilyComplement { family: usize, found: usize, expected: usize },
    #[error("expected {expected} basepoints, found {found}")]
    BasepointCount { expected: usize, found: usize },
    #[error("family {family}: complement component containing region {region} holds {count} basepoints")]
    BasepointPlacement { family: usize, region: String, count: usize },
}

/// All invariant violations of a diagram; empty when valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, issue: ValidationIssue) {
        self.issues.push(issue);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Checks every diagram invariant and reports all violations.
pub fn validate(data: &DiagramData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let _ = build(data, &mut report);
    report
}

fn parse_end(text: &str) -> Option<(&str, EndKind)> {
    let (arc, kind) = text.rsplit_once(':')?;
    let kind = match kind {
        "tail" => EndKind::Tail,
        "head" => EndKind::Head,
        _ => return None,
    };
    Some((arc, kind))
}

fn parse_slot(text: &str) -> Option<(&str, usize)> {
    let (v, s) = text.rsplit_once(':')?;
    let s: usize = s.parse().ok()?;
    (s < 4).then_some((v, s))
}

fn parse_half_edge(text: &str) -> Option<(&str, bool)> {
    if let Some(rest) = text.strip_prefix('+') {
        Some((rest, true))
    } else {
        text.strip_prefix('-').map(|rest| (rest, false))
    }
}

fn index_ids<'a>(
    ids: impl Iterator<Item = &'a str>,
    report: &mut ValidationReport,
) -> HashMap<String, usize> {
    let mut map = HashMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id.to_string(), i).is_some() {
            report.push(ValidationIssue::DuplicateId(id.to_string()));
        }
    }
    map
}

/// Builds the indexed tables, pushing every violation into `report`.
/// Returns `None` when references are too broken to continue.
fn build(data: &DiagramData, report: &mut ValidationReport) -> Option<HeegaardDiagram> {
    use ValidationIssue as I;

    if data.format_version != FORMAT_VERSION {
        report.push(I::FormatVersion(data.format_version));
    }
    let n = data.families;
    let k = data.curves_per_family;
    if n == 0 {
        report.push(I::NoFamilies);
        return None;
    }

    // Curves.
    let mut curve_slot: HashMap<(usize, usize), CurveId> = HashMap::new();
    let mut family_curves: Vec<Vec<CurveId>> = vec![Vec::new(); n];
    let mut curves = Vec::new();
    for cd in &data.curves {
        let ok = (1..=n).contains(&cd.family)
            && (1..=k).contains(&cd.index)
            && !curve_slot.contains_key(&(cd.family, cd.index));
        if !ok {
            report.push(I::BadCurve { family: cd.family, index: cd.index });
            continue;
        }
        let id = CurveId(curves.len());
        curve_slot.insert((cd.family, cd.index), id);
        curves.push(Curve { family: cd.family - 1, index: cd.index - 1, arcs: Vec::new() });
    }
    // Canonical order: by (family, index).
    let mut order: Vec<CurveId> = (0..curves.len()).map(CurveId).collect();
    order.sort_by_key(|&c| (curves[c.0].family, curves[c.0].index));
    let remap: HashMap<CurveId, CurveId> =
        order.iter().enumerate().map(|(new, &old)| (old, CurveId(new))).collect();
    let curves: Vec<Curve> = order.iter().map(|&c| curves[c.0].clone()).collect();
    for v in curve_slot.values_mut() {
        *v = remap[v];
    }
    for (i, c) in curves.iter().enumerate() {
        family_curves[c.family].push(CurveId(i));
    }
    for (f, list) in family_curves.iter().enumerate() {
        if list.len() != k {
            report.push(I::CurveCount { family: f + 1, expected: k, found: list.len() });
        }
    }

    let vertex_ids = index_ids(data.vertices.iter().map(|v| v.id.as_str()), report);
    let arc_ids = index_ids(data.arcs.iter().map(|a| a.id.as_str()), report);
    let region_ids = index_ids(data.regions.iter().map(|r| r.id.as_str()), report);
    for id in vertex_ids.keys() {
        if arc_ids.contains_key(id) || region_ids.contains_key(id) {
            report.push(I::DuplicateId(id.clone()));
        }
    }
    for id in arc_ids.keys() {
        if region_ids.contains_key(id) {
            report.push(I::DuplicateId(id.clone()));
        }
    }

    let mut broken = !report.is_valid();

    // Arcs.
    let mut arcs: Vec<Arc> = Vec::with_capacity(data.arcs.len());
    for ad in &data.arcs {
        let curve = match curve_slot.get(&(ad.family, ad.curve)) {
            Some(&c) => c,
            None => {
                report.push(I::DanglingReference {
                    element: format!("arc {}", ad.id),
                    target: format!("curve ({}, {})", ad.family, ad.curve),
                });
                broken = true;
                CurveId(0)
            }
        };
        let mut ends = [Slot { vertex: VertexId(0), slot: 0 }; 2];
        for (i, text) in [&ad.tail, &ad.head].into_iter().enumerate() {
            match parse_slot(text) {
                None => {
                    report.push(I::Malformed { element: format!("arc {}", ad.id), text: text.clone() });
                    broken = true;
                }
                Some((v, s)) => match vertex_ids.get(v) {
                    Some(&vi) => ends[i] = Slot { vertex: VertexId(vi), slot: s },
                    None => {
                        report.push(I::DanglingReference {
                            element: format!("arc {}", ad.id),
                            target: v.to_string(),
                        });
                        broken = true;
                    }
                },
            }
        }
        arcs.push(Arc {
            name: ad.id.clone(),
            curve,
            tail: ends[0],
            head: ends[1],
            left: RegionId(usize::MAX),
            right: RegionId(usize::MAX),
        });
    }

    // Vertices.
    let mut vertices: Vec<Vertex> = Vec::with_capacity(data.vertices.len());
    for vd in &data.vertices {
        let mut ends = [ArcEnd { arc: ArcId(0), kind: EndKind::Tail }; 4];
        for (i, text) in vd.ends.iter().enumerate() {
            match parse_end(text) {
                None => {
                    report.push(I::Malformed { element: format!("vertex {}", vd.id), text: text.clone() });
                    broken = true;
                }
                Some((a, kind)) => match arc_ids.get(a) {
                    Some(&ai) => ends[i] = ArcEnd { arc: ArcId(ai), kind },
                    None => {
                        report.push(I::DanglingReference {
                            element: format!("vertex {}", vd.id),
                            target: a.to_string(),
                        });
                        broken = true;
                    }
                },
            }
        }
        vertices.push(Vertex {
            name: vd.id.clone(),
            ends,
            curves: [CurveId(0); 2],
            quadrants: [RegionId(usize::MAX); 4],
        });
    }
    if broken {
        return None;
    }

    // Curve membership of arcs, in declared traversal order.
    let mut curves = curves;
    for cd in &data.curves {
        let Some(&cid) = curve_slot.get(&(cd.family, cd.index)) else { continue };
        for a in &cd.arcs {
            match arc_ids.get(a) {
                Some(&ai) => curves[cid.0].arcs.push(ArcId(ai)),
                None => {
                    report.push(I::DanglingReference {
                        element: format!("curve ({}, {})", cd.family, cd.index),
                        target: a.clone(),
                    });
                    broken = true;
                }
            }
        }
    }
    if broken {
        return None;
    }

    // Arc ends agree with vertex ends.
    for (ai, arc) in arcs.iter().enumerate() {
        for (slot, kind) in [(arc.tail, EndKind::Tail), (arc.head, EndKind::Head)] {
            let end = vertices[slot.vertex.0].ends[slot.slot];
            if end != (ArcEnd { arc: ArcId(ai), kind }) {
                report.push(I::ArcEnd {
                    arc: arc.name.clone(),
                    detail: format!(
                        "{kind:?} at {}:{} is not listed there",
                        vertices[slot.vertex.0].name, slot.slot
                    ),
                });
            }
        }
    }
    for (vi, vx) in vertices.iter().enumerate() {
        for (s, end) in vx.ends.iter().enumerate() {
            let arc = &arcs[end.arc.0];
            let slot = match end.kind {
                EndKind::Tail => arc.tail,
                EndKind::Head => arc.head,
            };
            if slot != (Slot { vertex: VertexId(vi), slot: s }) {
                report.push(I::VertexShape {
                    vertex: vx.name.clone(),
                    detail: format!("end {s} names arc {} but the arc does not end there", arc.name),
                });
            }
        }
    }
    if !report.is_valid() {
        return None;
    }

    // Vertex shape: alternating curves, one in / one out per strand.
    for (vi, vd) in data.vertices.iter().enumerate() {
        let vx = &mut vertices[vi];
        let c = vx.ends.map(|e| arcs[e.arc.0].curve);
        if c[0] != c[2] || c[1] != c[3] {
            report.push(I::VertexShape {
                vertex: vx.name.clone(),
                detail: "positions 0,2 and 1,3 must each lie on one curve".into(),
            });
            continue;
        }
        let (f0, f1) = (curves[c[0].0].family, curves[c[1].0].family);
        if f0 == f1 {
            report.push(I::SameFamilyIntersection { vertex: vx.name.clone(), family: f0 + 1 });
            continue;
        }
        if vd.families != [f0 + 1, f1 + 1] {
            report.push(I::VertexShape {
                vertex: vx.name.clone(),
                detail: format!(
                    "declared families {:?} but arcs lie on families [{}, {}]",
                    vd.families,
                    f0 + 1,
                    f1 + 1
                ),
            });
        }
        for strand in 0..2 {
            if vx.ends[strand].kind == vx.ends[strand + 2].kind {
                report.push(I::VertexShape {
                    vertex: vx.name.clone(),
                    detail: format!("strand {strand} needs one incoming and one outgoing end"),
                });
            }
        }
        vx.curves = [c[0], c[1]];
    }
    if !report.is_valid() {
        return None;
    }

    // Curve cycles.
    for (ci, curve) in curves.iter().enumerate() {
        let (fam, idx) = (curve.family + 1, curve.index + 1);
        if curve.arcs.is_empty() {
            report.push(I::EmptyCurve { family: fam, index: idx });
            continue;
        }
        let mut seen = vec![false; arcs.len()];
        let m = curve.arcs.len();
        for (t, &a) in curve.arcs.iter().enumerate() {
            if arcs[a.0].curve != CurveId(ci) {
                report.push(I::CurveCycle {
                    family: fam,
                    index: idx,
                    detail: format!("arc {} belongs to another curve", arcs[a.0].name),
                });
                continue;
            }
            if std::mem::replace(&mut seen[a.0], true) {
                report.push(I::CurveCycle {
                    family: fam,
                    index: idx,
                    detail: format!("arc {} listed twice", arcs[a.0].name),
                });
            }
            let head = arcs[a.0].head;
            let next = curve.arcs[(t + 1) % m];
            let expect = Slot { vertex: head.vertex, slot: (head.slot + 2) % 4 };
            if arcs[next.0].tail != expect {
                report.push(I::CurveCycle {
                    family: fam,
                    index: idx,
                    detail: format!(
                        "arc {} does not continue through its head into arc {}",
                        arcs[a.0].name, arcs[next.0].name
                    ),
                });
            }
        }
        for (ai, arc) in arcs.iter().enumerate() {
            if arc.curve == CurveId(ci) && !seen[ai] {
                report.push(I::CurveCycle {
                    family: fam,
                    index: idx,
                    detail: format!("arc {} is not in the cycle", arc.name),
                });
            }
        }
    }
    if !report.is_valid() {
        return None;
    }

    // Regions: boundary cycles, sides and corners.
    let mut regions: Vec<Region> = Vec::with_capacity(data.regions.len());
    let mut side_claims: Vec<[usize; 2]> = vec![[0, 0]; arcs.len()];
    let mut quadrant_claims: Vec<[usize; 4]> = vec![[0; 4]; vertices.len()];
    for (ri, rd) in data.regions.iter().enumerate() {
        let mut boundary = Vec::new();
        let mut corners = Vec::new();
        for cycle in &rd.boundary {
            let mut hes = Vec::new();
            for text in cycle {
                match parse_half_edge(text) {
                    None => report.push(I::Malformed { element: format!("region {}", rd.id), text: text.clone() }),
                    Some((a, forward)) => match arc_ids.get(a) {
                        Some(&ai) => hes.push(HalfEdge { arc: ArcId(ai), forward }),
                        None => report.push(I::DanglingReference {
                            element: format!("region {}", rd.id),
                            target: a.to_string(),
                        }),
                    },
                }
            }
            if hes.is_empty() {
                report.push(I::BoundaryCycle { region: rd.id.clone(), detail: "empty boundary cycle".into() });
                continue;
            }
            for (t, &he) in hes.iter().enumerate() {
                let arc = &mut arcs[he.arc.0];
                let side = if he.forward { 0 } else { 1 };
                side_claims[he.arc.0][side] += 1;
                if he.forward {
                    arc.left = RegionId(ri);
                } else {
                    arc.right = RegionId(ri);
                }
                let end = half_edge_end(arc, he);
                let next = hes[(t + 1) % hes.len()];
                let next_start = half_edge_start(&arcs[next.arc.0], next);
                let turn = Slot { vertex: end.vertex, slot: (end.slot + 3) % 4 };
                if next_start != turn {
                    report.push(I::BoundaryCycle {
                        region: rd.id.clone(),
                        detail: format!(
                            "{} is not followed by the next arc counterclockwise",
                            text_half_edge(&arcs, he)
                        ),
                    });
                } else {
                    corners.push(Corner { vertex: turn.vertex, quadrant: turn.slot });
                }
            }
            boundary.push(hes);
        }
        if rd.boundary.is_empty() {
            report.push(I::BoundaryCycle { region: rd.id.clone(), detail: "region has no boundary".into() });
        }
        corners.sort();
        if let Some(declared) = &rd.corners {
            let mut parsed = Vec::new();
            for text in declared {
                match parse_slot(text) {
                    Some((v, q)) => match vertex_ids.get(v) {
                        Some(&vi) => parsed.push(Corner { vertex: VertexId(vi), quadrant: q }),
                        None => report.push(I::DanglingReference {
                            element: format!("region {}", rd.id),
                            target: v.to_string(),
                        }),
                    },
                    None => report.push(I::Malformed { element: format!("region {}", rd.id), text: text.clone() }),
                }
            }
            parsed.sort();
            if parsed != corners {
                report.push(I::CornerMismatch { region: rd.id.clone() });
            }
        }
        for c in &corners {
            quadrant_claims[c.vertex.0][c.quadrant] += 1;
            vertices[c.vertex.0].quadrants[c.quadrant] = RegionId(ri);
        }
        let b = boundary.len() as i64;
        let chi = rd.euler_char;
        if !rd.boundary.is_empty() && (chi > 2 - b || (2 - b - chi) % 2 != 0) {
            report.push(I::RegionTopology { region: rd.id.clone(), euler_char: chi, cycles: boundary.len() });
        }
        regions.push(Region { name: rd.id.clone(), euler_char: chi, boundary, corners });
    }
    for (ai, claims) in side_claims.iter().enumerate() {
        for (side, &count) in claims.iter().enumerate() {
            if count != 1 {
                report.push(I::ArcSide {
                    arc: arcs[ai].name.clone(),
                    side: if side == 0 { "left" } else { "right" },
                    count,
                });
            }
        }
    }
    for (vi, claims) in quadrant_claims.iter().enumerate() {
        for (q, &count) in claims.iter().enumerate() {
            match count {
                0 => report.push(I::UnclaimedQuadrant { vertex: vertices[vi].name.clone(), quadrant: q }),
                1 => {}
                _ => report.push(I::QuadrantClaimedTwice { vertex: vertices[vi].name.clone(), quadrant: q }),
            }
        }
    }

    // Euler characteristic.
    let chi_sum: i64 = data.regions.iter().map(|r| r.euler_char).sum();
    let computed = vertices.len() as i64 - arcs.len() as i64 + chi_sum;
    let expected = 2 - 2 * data.genus as i64;
    if computed != expected {
        report.push(I::EulerMismatch { computed, expected });
    }
    if !report.is_valid() {
        return None;
    }

    // Connectivity of the surface, and of each family's complement.
    let comps = |skip_family: Option<usize>| -> Vec<usize> {
        let mut uf = UnionFind::new(regions.len());
        for arc in &arcs {
            let fam = curves[arc.curve.0].family;
            if Some(fam) != skip_family {
                uf.union(arc.left.0, arc.right.0);
            }
        }
        (0..regions.len()).map(|r| uf.find(r)).collect()
    };
    let all = comps(None);
    let mut roots: Vec<usize> = all.clone();
    roots.sort();
    roots.dedup();
    if roots.len() != 1 {
        report.push(I::Disconnected { components: roots.len() });
    }

    let mut basepoints = Vec::new();
    for (label, region) in &data.basepoints {
        match region_ids.get(region) {
            Some(&r) => basepoints.push(Basepoint { label: label.clone(), region: RegionId(r) }),
            None => report.push(I::DanglingReference {
                element: format!("basepoint {label}"),
                target: region.clone(),
            }),
        }
    }

    let g = data.genus as usize;
    if k >= g {
        let expected = k - g + 1;
        if !basepoints.is_empty() && basepoints.len() != expected {
            report.push(I::BasepointCount { expected, found: basepoints.len() });
        }
        for f in 0..n {
            let labels = comps(Some(f));
            let mut roots: Vec<usize> = labels.clone();
            roots.sort();
            roots.dedup();
            if roots.len() != expected {
                report.push(I::FamilyComplement { family: f + 1, found: roots.len(), expected });
            }
            if !basepoints.is_empty() {
                for &root in &roots {
                    let count = basepoints.iter().filter(|b| labels[b.region.0] == root).count();
                    if count != 1 {
                        let region = (0..regions.len()).find(|&r| labels[r] == root).unwrap();
                        report.push(I::BasepointPlacement {
                            family: f + 1,
                            region: regions[region].name.clone(),
                            count,
                        });
                    }
                }
            }
        }
    }

    Some(HeegaardDiagram {
        data: data.clone(),
        curves,
        vertices,
        arcs,
        regions,
        basepoints,
        vertex_ids: vertex_ids.into_iter().map(|(k, v)| (k, VertexId(v))).collect(),
        region_ids: region_ids.into_iter().map(|(k, v)| (k, RegionId(v))).collect(),
        arc_ids: arc_ids.into_iter().map(|(k, v)| (k, ArcId(v))).collect(),
        family_curves,
    })
}

fn text_half_edge(arcs: &[Arc], he: HalfEdge) -> String {
    let sign = if he.forward { '+' } else { '-' };
    format!("{sign}{}", arcs[he.arc.0].name)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
