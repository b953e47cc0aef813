//! Assembling diagram files from a bare rotation system.
//!
//! Writing a [`DiagramData`] by hand means keeping arc ends, vertex ends and
//! region boundaries mutually consistent. [`RotationSystem`] needs only each
//! curve's crossing sequence and the sign of each crossing; arcs, slots and
//! faces are derived from those. Every traced face becomes a disk region.
//! [`connected_sum`] then glues two diagrams along a region of each.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::diagram::{
    format_end, ArcData, CurveData, DiagramData, EndKind, RegionData, VertexData, FORMAT_VERSION,
};

#[derive(Clone, Debug)]
pub struct CurveSpec {
    /// 1-based family.
    pub family: usize,
    /// 1-based index within the family.
    pub index: usize,
    /// Prefix for arc ids of this curve.
    pub label: String,
    /// Vertices met along the curve, in order.
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CrossingSpec {
    pub name: String,
    /// `true` when (direction of the lower curve, direction of the higher
    /// curve) is positively oriented, curves ordered by (family, index).
    pub positive: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RotationSystem {
    pub families: usize,
    pub curves_per_family: usize,
    pub curves: Vec<CurveSpec>,
    pub crossings: Vec<CrossingSpec>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("crossing {0} is not visited by exactly two distinct curves")]
    CrossingVisits(String),
    #[error("curve ({0}, {1}) has no crossings")]
    EmptyCurve(usize, usize),
    #[error("rotation system gives odd Euler characteristic {0}")]
    OddEuler(i64),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("family/curve counts differ between summands")]
    SummandShape,
}

/// A traced face: its boundary cycle as (arc index, forward) pairs.
#[derive(Clone, Debug)]
pub struct Face {
    pub boundary: Vec<(usize, bool)>,
}

/// Output of [`RotationSystem::assemble`].
#[derive(Clone, Debug)]
pub struct Assembled {
    pub data: DiagramData,
    /// Geometric bookkeeping for each arc: (curve position, crossing index
    /// along the curve where the arc starts).
    pub arc_origin: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
}

impl RotationSystem {
    /// Derives arcs and faces. Region ids are `R0`, `R1`, … in face-trace
    /// order; rename them afterwards with [`rename_regions`].
    pub fn assemble(&self) -> Result<Assembled, BuildError> {
        let nv = self.crossings.len();
        // Visits per crossing: (curve position, position along the curve).
        let mut visits: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (ci, c) in self.curves.iter().enumerate() {
            if c.crossings.is_empty() {
                return Err(BuildError::EmptyCurve(c.family, c.index));
            }
            for (t, &v) in c.crossings.iter().enumerate() {
                visits[v].push((ci, t));
            }
        }
        for (v, vis) in visits.iter().enumerate() {
            if vis.len() != 2 || vis[0].0 == vis[1].0 {
                return Err(BuildError::CrossingVisits(self.crossings[v].name.clone()));
            }
        }

        // Arc t of a curve runs from crossing t to crossing t + 1.
        let mut arc_names = Vec::new();
        let mut arc_origin = Vec::new();
        let mut arc_index: HashMap<(usize, usize), usize> = HashMap::new();
        for (ci, c) in self.curves.iter().enumerate() {
            for t in 0..c.crossings.len() {
                arc_index.insert((ci, t), arc_names.len());
                arc_names.push(format!("{}.{}", c.label, t));
                arc_origin.push((ci, t));
            }
        }

        let key = |ci: usize| (self.curves[ci].family, self.curves[ci].index);
        // ends[v][slot] = (arc, kind)
        let mut ends: Vec<[(usize, EndKind); 4]> = vec![[(0, EndKind::Tail); 4]; nv];
        let mut arc_tail = vec![(0usize, 0usize); arc_names.len()];
        let mut arc_head = vec![(0usize, 0usize); arc_names.len()];
        let mut vertex_families = vec![[0usize; 2]; nv];
        for (v, vis) in visits.iter_mut().enumerate() {
            vis.sort_by_key(|&(ci, _)| key(ci));
            let positive = self.crossings[v].positive;
            for (strand, &(ci, t)) in vis.iter().enumerate() {
                let m = self.curves[ci].crossings.len();
                let out_arc = arc_index[&(ci, t)];
                let in_arc = arc_index[&(ci, (t + m - 1) % m)];
                let out_slot = match (strand, positive) {
                    (0, _) => 0,
                    (_, true) => 1,
                    (_, false) => 3,
                };
                let in_slot = (out_slot + 2) % 4;
                ends[v][out_slot] = (out_arc, EndKind::Tail);
                ends[v][in_slot] = (in_arc, EndKind::Head);
                arc_tail[out_arc] = (v, out_slot);
                arc_head[in_arc] = (v, in_slot);
                vertex_families[v][strand] = self.curves[ci].family;
            }
        }

        // Face tracing over half-edges.
        let na = arc_names.len();
        let mut used = vec![[false; 2]; na];
        let mut faces = Vec::new();
        for start in 0..na {
            for dir in [true, false] {
                let side = if dir { 0 } else { 1 };
                if used[start][side] {
                    continue;
                }
                let mut boundary = Vec::new();
                let (mut arc, mut fwd) = (start, dir);
                loop {
                    let s = if fwd { 0 } else { 1 };
                    if used[arc][s] {
                        break;
                    }
                    used[arc][s] = true;
                    boundary.push((arc, fwd));
                    let (v, slot) = if fwd { arc_head[arc] } else { arc_tail[arc] };
                    let (next_arc, kind) = ends[v][(slot + 3) % 4];
                    arc = next_arc;
                    fwd = kind == EndKind::Tail;
                }
                faces.push(Face { boundary });
            }
        }

        let chi = nv as i64 - na as i64 + faces.len() as i64;
        if chi % 2 != 0 || chi > 2 {
            return Err(BuildError::OddEuler(chi));
        }
        let genus = ((2 - chi) / 2) as u32;

        let curves = self
            .curves
            .iter()
            .enumerate()
            .map(|(ci, c)| CurveData {
                family: c.family,
                index: c.index,
                arcs: (0..c.crossings.len()).map(|t| arc_names[arc_index[&(ci, t)]].clone()).collect(),
            })
            .collect();
        let vertices = (0..nv)
            .map(|v| VertexData {
                id: self.crossings[v].name.clone(),
                families: vertex_families[v],
                ends: ends[v].map(|(a, kind)| format_end(&arc_names[a], kind)),
            })
            .collect();
        let arcs = (0..na)
            .map(|a| {
                let (ci, _) = arc_origin[a];
                let c = &self.curves[ci];
                ArcData {
                    id: arc_names[a].clone(),
                    family: c.family,
                    curve: c.index,
                    tail: format!("{}:{}", self.crossings[arc_tail[a].0].name, arc_tail[a].1),
                    head: format!("{}:{}", self.crossings[arc_head[a].0].name, arc_head[a].1),
                }
            })
            .collect();
        let regions = faces
            .iter()
            .enumerate()
            .map(|(i, f)| RegionData {
                id: format!("R{i}"),
                euler_char: 1,
                boundary: vec![f
                    .boundary
                    .iter()
                    .map(|&(a, fwd)| format!("{}{}", if fwd { '+' } else { '-' }, arc_names[a]))
                    .collect()],
                corners: None,
            })
            .collect();

        Ok(Assembled {
            data: DiagramData {
                format_version: FORMAT_VERSION,
                genus,
                families: self.families,
                curves_per_family: self.curves_per_family,
                curves,
                vertices,
                arcs,
                regions,
                basepoints: BTreeMap::new(),
            },
            arc_origin,
            faces,
        })
    }
}

/// Renames regions, keeping their order; unmentioned regions keep their id.
pub fn rename_regions(data: &mut DiagramData, names: &HashMap<String, String>) {
    for r in data.regions.iter_mut() {
        if let Some(new) = names.get(&r.id) {
            r.id = new.clone();
        }
    }
    for target in data.basepoints.values_mut() {
        if let Some(new) = names.get(target) {
            *target = new.clone();
        }
    }
}

/// Moves the named regions to the front, in the given order.
pub fn order_regions(data: &mut DiagramData, first: &[&str]) {
    data.regions.sort_by_key(|r| first.iter().position(|f| *f == r.id).unwrap_or(first.len()));
}

/// Fills in explicit corner lists derived from each region's boundary.
pub fn fill_corners(data: &mut DiagramData) {
    let heads: HashMap<&str, (&str, usize)> = data
        .arcs
        .iter()
        .map(|a| {
            let (v, s) = a.head.rsplit_once(':').unwrap();
            (a.id.as_str(), (v, s.parse().unwrap()))
        })
        .collect();
    let tails: HashMap<&str, (&str, usize)> = data
        .arcs
        .iter()
        .map(|a| {
            let (v, s) = a.tail.rsplit_once(':').unwrap();
            (a.id.as_str(), (v, s.parse().unwrap()))
        })
        .collect();
    let mut all = Vec::new();
    for r in &data.regions {
        let mut corners = Vec::new();
        for cycle in &r.boundary {
            for he in cycle {
                let (sign, arc) = he.split_at(1);
                let (v, s) = if sign == "+" { heads[arc] } else { tails[arc] };
                corners.push(format!("{}:{}", v, (s + 3) % 4));
            }
        }
        all.push(corners);
    }
    for (r, corners) in data.regions.iter_mut().zip(all) {
        r.corners = Some(corners);
    }
}

/// Connected sum of two diagrams with the same `n`, joining `region_a` of
/// `a` to `region_b` of `b` by a tube. Ids of `b` get `suffix` appended;
/// its curves are renumbered after those of `a`.
pub fn connected_sum(
    a: &DiagramData,
    region_a: &str,
    b: &DiagramData,
    region_b: &str,
    suffix: &str,
    merged_name: &str,
) -> Result<DiagramData, BuildError> {
    if a.families != b.families {
        return Err(BuildError::SummandShape);
    }
    let ka = a.curves_per_family;
    let rn = |s: &str| format!("{s}{suffix}");
    let rename_ref = |s: &str| -> String {
        let (id, rest) = s.rsplit_once(':').unwrap();
        format!("{}:{}", rn(id), rest)
    };

    let mut out = a.clone();
    out.genus = a.genus + b.genus;
    out.curves_per_family = a.curves_per_family + b.curves_per_family;
    out.basepoints.clear();
    for c in &b.curves {
        out.curves.push(CurveData {
            family: c.family,
            index: c.index + ka,
            arcs: c.arcs.iter().map(|s| rn(s)).collect(),
        });
    }
    for v in &b.vertices {
        out.vertices.push(VertexData {
            id: rn(&v.id),
            families: v.families,
            ends: v.ends.clone().map(|e| rename_ref(&e)),
        });
    }
    for arc in &b.arcs {
        out.arcs.push(ArcData {
            id: rn(&arc.id),
            family: arc.family,
            curve: arc.curve + ka,
            tail: rename_ref(&arc.tail),
            head: rename_ref(&arc.head),
        });
    }
    let ra = a
        .regions
        .iter()
        .position(|r| r.id == region_a)
        .ok_or_else(|| BuildError::UnknownRegion(region_a.into()))?;
    let rb = b
        .regions
        .iter()
        .find(|r| r.id == region_b)
        .ok_or_else(|| BuildError::UnknownRegion(region_b.into()))?;
    for r in &b.regions {
        if r.id == region_b {
            continue;
        }
        out.regions.push(rename_region(r, &rn, &rename_ref));
    }
    let moved = rename_region(rb, &rn, &rename_ref);
    let target = &mut out.regions[ra];
    target.id = merged_name.to_string();
    target.euler_char += moved.euler_char - 2;
    target.boundary.extend(moved.boundary);
    if let (Some(mine), Some(theirs)) = (&mut target.corners, moved.corners) {
        mine.extend(theirs);
    } else {
        target.corners = None;
    }
    Ok(out)
}

fn rename_region(
    r: &RegionData,
    rn: &impl Fn(&str) -> String,
    rename_ref: &impl Fn(&str) -> String,
) -> RegionData {
    RegionData {
        id: rn(&r.id),
        euler_char: r.euler_char,
        boundary: r
            .boundary
            .iter()
            .map(|cycle| {
                cycle
                    .iter()
                    .map(|he| {
                        let (sign, arc) = he.split_at(1);
                        format!("{sign}{}", rn(arc))
                    })
                    .collect()
            })
            .collect(),
        corners: r.corners.as_ref().map(|cs| cs.iter().map(|c| rename_ref(c)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate, HeegaardDiagram, Sides};

    /// One α and one β on a torus crossing once.
    fn single_crossing() -> RotationSystem {
        RotationSystem {
            families: 2,
            curves_per_family: 1,
            curves: vec![
                CurveSpec { family: 1, index: 1, label: "a".into(), crossings: vec![0] },
                CurveSpec { family: 2, index: 1, label: "b".into(), crossings: vec![0] },
            ],
            crossings: vec![CrossingSpec { name: "x".into(), positive: true }],
        }
    }

    #[test]
    fn single_crossing_is_a_torus_with_one_square() {
        let asm = single_crossing().assemble().unwrap();
        assert_eq!(asm.data.genus, 1);
        assert_eq!(asm.faces.len(), 1);
        assert_eq!(asm.faces[0].boundary.len(), 4);
        let d = HeegaardDiagram::new(asm.data).unwrap();
        assert_eq!(d.region_sides(crate::diagram::RegionId(0)), Sides::Disk(4));
    }

    #[test]
    fn connected_sum_adds_genus_and_merges_regions() {
        let mut a = single_crossing().assemble().unwrap().data;
        fill_corners(&mut a);
        let sum = connected_sum(&a, "R0", &a, "R0", "'", "M").unwrap();
        assert_eq!(sum.genus, 2);
        assert_eq!(sum.curves_per_family, 2);
        assert_eq!(sum.regions.len(), 1);
        assert_eq!(sum.regions[0].euler_char, 0);
        assert_eq!(sum.regions[0].boundary.len(), 2);
        let report = validate(&sum);
        assert!(report.is_valid(), "{report}");
    }
}
