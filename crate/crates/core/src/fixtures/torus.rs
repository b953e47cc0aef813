//! Diagrams on the torus from piecewise-linear curves.
//!
//! Curves are closed polylines on `ℝ² / (sℤ)²` with integer corner points,
//! given in the universal cover together with their homology class. Crossings
//! are found exactly, the rotation system is read off from segment
//! directions, and regions are named by exact point location.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::builder::{rename_regions, BuildError, CrossingSpec, CurveSpec, RotationSystem};
use crate::diagram::DiagramData;

pub type Rat = Ratio<i128>;
pub type Point = (Rat, Rat);

pub fn pt(x: i64, y: i64) -> Point {
    (Rat::from_integer(x as i128), Rat::from_integer(y as i128))
}

/// Point with coordinates `x/den`, `y/den`.
pub fn pt_frac(x: i64, y: i64, den: i64) -> Point {
    (Rat::new(x as i128, den as i128), Rat::new(y as i128, den as i128))
}

#[derive(Clone, Debug)]
pub struct TorusCurve {
    pub family: usize,
    pub index: usize,
    pub label: String,
    /// Corner points in the universal cover.
    pub points: Vec<(i64, i64)>,
    /// Homology class; the polyline closes from its last point to
    /// `points[0] + size * class`.
    pub class: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct TorusLayout {
    pub size: i64,
    pub families: usize,
    pub curves_per_family: usize,
    pub curves: Vec<TorusCurve>,
}

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("curves {0} and {1} are not in general position near {2}")]
    Degenerate(String, String, String),
    #[error("curves {0} and {1} of the same family intersect")]
    SameFamily(String, String),
    #[error("face {0} does not lift to a closed polygon")]
    NonDiskFace(usize),
    #[error("sample point {0} lies in {1} faces")]
    SamplePoint(String, usize),
    #[error("no crossing at {0}")]
    NoCrossing(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Built torus diagram plus the crossing positions.
#[derive(Clone, Debug)]
pub struct TorusDiagram {
    pub data: DiagramData,
    /// Vertex id to its position, reduced into `[0, size)²`.
    pub positions: Vec<(String, Point)>,
}

/// (curve, segment, parameter, position on that curve's lift, direction)
type Strand = (usize, usize, Rat, Point, (i128, i128));

#[derive(Clone, Debug)]
struct Crossing {
    strands: [Strand; 2],
}

fn fmt_point(p: &Point) -> String {
    format!("({}, {})", p.0, p.1)
}

fn cross(a: (Rat, Rat), b: (Rat, Rat)) -> Rat {
    a.0 * b.1 - a.1 * b.0
}

fn reduce(p: &Point, size: i128) -> Point {
    let m = |x: &Rat| {
        let s = Rat::from_integer(size);
        let q = (x / s).floor();
        x - q * s
    };
    (m(&p.0), m(&p.1))
}

impl TorusLayout {
    fn segments(&self, ci: usize) -> Vec<((i128, i128), (i128, i128))> {
        let c = &self.curves[ci];
        let s = self.size as i128;
        let m = c.points.len();
        (0..m)
            .map(|j| {
                let a = c.points[j];
                let b = if j + 1 < m {
                    c.points[j + 1]
                } else {
                    (c.points[0].0 + self.size * c.class.0, c.points[0].1 + self.size * c.class.1)
                };
                let _ = s;
                ((a.0 as i128, a.1 as i128), (b.0 as i128, b.1 as i128))
            })
            .collect()
    }

    /// Builds the diagram. `vertex_names` maps crossing positions (reduced
    /// into the fundamental square) to ids; unnamed crossings get `v{i}`.
    /// `region_samples` names the region containing each sample point.
    pub fn build(
        &self,
        vertex_names: &[(Point, &str)],
        region_samples: &[(Point, &str)],
    ) -> Result<TorusDiagram, LayoutError> {
        let size = self.size as i128;
        let segs: Vec<_> = (0..self.curves.len()).map(|c| self.segments(c)).collect();
        let mut crossings: Vec<Crossing> = Vec::new();
        let key = |ci: usize| (self.curves[ci].family, self.curves[ci].index);

        for a in 0..self.curves.len() {
            for b in a..self.curves.len() {
                for (ja, &(pa, qa)) in segs[a].iter().enumerate() {
                    for (jb, &(pb, qb)) in segs[b].iter().enumerate() {
                        let (ax0, ax1) = (pa.0.min(qa.0), pa.0.max(qa.0));
                        let (ay0, ay1) = (pa.1.min(qa.1), pa.1.max(qa.1));
                        let (bx0, bx1) = (pb.0.min(qb.0), pb.0.max(qb.0));
                        let (by0, by1) = (pb.1.min(qb.1), pb.1.max(qb.1));
                        let tx_lo = (ax0 - bx1).div_euclid(size) - 1;
                        let tx_hi = (ax1 - bx0).div_euclid(size) + 1;
                        let ty_lo = (ay0 - by1).div_euclid(size) - 1;
                        let ty_hi = (ay1 - by0).div_euclid(size) + 1;
                        for tx in tx_lo..=tx_hi {
                            for ty in ty_lo..=ty_hi {
                                if a == b && ja == jb && tx == 0 && ty == 0 {
                                    continue;
                                }
                                let shift = (tx * size, ty * size);
                                let p = (Rat::from_integer(pa.0), Rat::from_integer(pa.1));
                                let r = (Rat::from_integer(qa.0 - pa.0), Rat::from_integer(qa.1 - pa.1));
                                let q = (
                                    Rat::from_integer(pb.0 + shift.0),
                                    Rat::from_integer(pb.1 + shift.1),
                                );
                                let w = (Rat::from_integer(qb.0 - pb.0), Rat::from_integer(qb.1 - pb.1));
                                let denom = cross(r, w);
                                let qp = (q.0 - p.0, q.1 - p.1);
                                let name = |pt: Point| {
                                    LayoutError::Degenerate(
                                        self.curves[a].label.clone(),
                                        self.curves[b].label.clone(),
                                        fmt_point(&reduce(&pt, size)),
                                    )
                                };
                                if denom.is_zero() {
                                    if !cross(qp, r).is_zero() {
                                        continue;
                                    }
                                    // Collinear: overlapping interiors are degenerate.
                                    let rr = r.0 * r.0 + r.1 * r.1;
                                    let t0 = (qp.0 * r.0 + qp.1 * r.1) / rr;
                                    let t1 = ((qp.0 + w.0) * r.0 + (qp.1 + w.1) * r.1) / rr;
                                    let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
                                    let one = Rat::from_integer(1);
                                    let zero = Rat::zero();
                                    let adjacent = a == b
                                        && tx == 0
                                        && ty == 0
                                        && (hi == zero || lo == one);
                                    if hi >= zero && lo <= one && !adjacent {
                                        if a == b && (hi == zero || lo == one) {
                                            continue;
                                        }
                                        return Err(name(p));
                                    }
                                    continue;
                                }
                                let s = cross(qp, w) / denom;
                                let u = cross(qp, r) / denom;
                                let zero = Rat::zero();
                                let one = Rat::from_integer(1);
                                let inside = |t: &Rat| *t > zero && *t < one;
                                let closed = |t: &Rat| *t >= zero && *t <= one;
                                if !(closed(&s) && closed(&u)) {
                                    continue;
                                }
                                let at = (p.0 + s * r.0, p.1 + s * r.1);
                                if a == b {
                                    // Consecutive segments share an endpoint.
                                    let m = segs[a].len();
                                    let consecutive = (ja + 1) % m == jb || (jb + 1) % m == ja;
                                    let endpoint = !inside(&s) && !inside(&u);
                                    if consecutive && endpoint {
                                        continue;
                                    }
                                    if ja > jb || (ja == jb && (tx, ty) < (0, 0)) {
                                        continue;
                                    }
                                    return Err(LayoutError::SameFamily(
                                        self.curves[a].label.clone(),
                                        self.curves[b].label.clone(),
                                    ));
                                }
                                if !(inside(&s) && inside(&u)) {
                                    return Err(name(at));
                                }
                                if self.curves[a].family == self.curves[b].family {
                                    return Err(LayoutError::SameFamily(
                                        self.curves[a].label.clone(),
                                        self.curves[b].label.clone(),
                                    ));
                                }
                                let at_b = (at.0 - Rat::from_integer(shift.0), at.1 - Rat::from_integer(shift.1));
                                crossings.push(Crossing {
                                    strands: [
                                        (a, ja, s, at, (qa.0 - pa.0, qa.1 - pa.1)),
                                        (b, jb, u, at_b, (qb.0 - pb.0, qb.1 - pb.1)),
                                    ],
                                });
                            }
                        }
                    }
                }
            }
        }

        // Named crossings first, in the order given.
        let rank = |c: &Crossing| {
            let pos = reduce(&c.strands[0].3, size);
            let named = vertex_names.iter().position(|(p, _)| reduce(p, size) == pos);
            (named.unwrap_or(usize::MAX), pos)
        };
        crossings.sort_by_cached_key(rank);

        // Order strands by curve key; sign from the frame of directions.
        let mut specs = Vec::new();
        let mut positions = Vec::new();
        let mut names_used: HashMap<String, usize> = HashMap::new();
        for (i, c) in crossings.iter_mut().enumerate() {
            if key(c.strands[0].0) > key(c.strands[1].0) {
                c.strands.swap(0, 1);
            }
            let d0 = c.strands[0].4;
            let d1 = c.strands[1].4;
            let positive = d0.0 * d1.1 - d0.1 * d1.0 > 0;
            let pos = reduce(&c.strands[0].3, size);
            let name = vertex_names
                .iter()
                .find(|(p, _)| reduce(p, size) == pos)
                .map(|(_, n)| n.to_string())
                .unwrap_or_else(|| format!("v{i}"));
            *names_used.entry(name.clone()).or_default() += 1;
            positions.push((name.clone(), pos));
            specs.push(CrossingSpec { name, positive });
        }
        for (p, n) in vertex_names {
            if !names_used.contains_key(*n) {
                return Err(LayoutError::NoCrossing(format!("{n} at {}", fmt_point(p))));
            }
        }

        // Crossing sequence along each curve.
        let mut curve_specs = Vec::new();
        for (ci, c) in self.curves.iter().enumerate() {
            let mut along: Vec<(usize, Rat, usize)> = Vec::new();
            for (vi, x) in crossings.iter().enumerate() {
                for st in &x.strands {
                    if st.0 == ci {
                        along.push((st.1, st.2, vi));
                    }
                }
            }
            along.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            curve_specs.push(CurveSpec {
                family: c.family,
                index: c.index,
                label: c.label.clone(),
                crossings: along.iter().map(|t| t.2).collect(),
            });
        }

        let rs = RotationSystem {
            families: self.families,
            curves_per_family: self.curves_per_family,
            curves: curve_specs.clone(),
            crossings: specs,
        };
        let asm = rs.assemble()?;

        // Arc polylines in the lift of their curve.
        let crossing_pos = |vi: usize, ci: usize| -> (usize, Rat, Point) {
            let st = crossings[vi].strands.iter().find(|s| s.0 == ci).unwrap();
            (st.1, st.2, st.3)
        };
        let mut arc_paths: Vec<Vec<Point>> = Vec::new();
        for &(ci, t) in &asm.arc_origin {
            let c = &self.curves[ci];
            let seq = &curve_specs[ci].crossings;
            let m = seq.len();
            let (seg0, _, p0) = crossing_pos(seq[t], ci);
            let (seg1, _, mut p1) = crossing_pos(seq[(t + 1) % m], ci);
            let mut path = vec![p0];
            let npts = c.points.len();
            let wraps = t + 1 == m;
            let end_seg = if wraps { seg1 + npts } else { seg1 };
            for j in seg0 + 1..=end_seg {
                let idx = j % npts;
                let lap = (j / npts) as i128;
                let (x, y) = c.points[idx];
                let off = (lap * size * c.class.0 as i128, lap * size * c.class.1 as i128);
                path.push((Rat::from_integer(x as i128 + off.0), Rat::from_integer(y as i128 + off.1)));
            }
            if wraps {
                p1 = (
                    p1.0 + Rat::from_integer(size * c.class.0 as i128),
                    p1.1 + Rat::from_integer(size * c.class.1 as i128),
                );
            }
            path.push(p1);
            arc_paths.push(path);
        }

        // Face polygons.
        let mut polygons: Vec<Vec<Point>> = Vec::new();
        for (fi, face) in asm.faces.iter().enumerate() {
            let mut poly: Vec<Point> = Vec::new();
            for &(arc, fwd) in &face.boundary {
                let mut pts = arc_paths[arc].clone();
                if !fwd {
                    pts.reverse();
                }
                if let Some(last) = poly.last().cloned() {
                    let dx = last.0 - pts[0].0;
                    let dy = last.1 - pts[0].1;
                    for p in pts.iter_mut() {
                        p.0 += dx;
                        p.1 += dy;
                    }
                    poly.extend(pts.into_iter().skip(1));
                } else {
                    poly.extend(pts);
                }
            }
            let first = poly[0];
            let last = poly.pop().unwrap();
            if first != last {
                return Err(LayoutError::NonDiskFace(fi));
            }
            polygons.push(poly);
        }

        let mut data = asm.data;
        let mut renames = HashMap::new();
        for (sample, name) in region_samples {
            let mut hits = Vec::new();
            for (fi, poly) in polygons.iter().enumerate() {
                if contains(poly, sample, size) {
                    hits.push(fi);
                }
            }
            if hits.len() != 1 {
                return Err(LayoutError::SamplePoint(name.to_string(), hits.len()));
            }
            renames.insert(format!("R{}", hits[0]), name.to_string());
        }
        rename_regions(&mut data, &renames);
        Ok(TorusDiagram { data, positions })
    }
}

/// Whether some translate of `p` has winding number 1 for `poly`.
fn contains(poly: &[Point], p: &Point, size: i128) -> bool {
    let s = Rat::from_integer(size);
    let (mut xmin, mut xmax) = (poly[0].0, poly[0].0);
    let (mut ymin, mut ymax) = (poly[0].1, poly[0].1);
    for q in poly {
        xmin = xmin.min(q.0);
        xmax = xmax.max(q.0);
        ymin = ymin.min(q.1);
        ymax = ymax.max(q.1);
    }
    let tx0 = ((xmin - p.0) / s).floor().to_integer() - 1;
    let tx1 = ((xmax - p.0) / s).ceil().to_integer() + 1;
    let ty0 = ((ymin - p.1) / s).floor().to_integer() - 1;
    let ty1 = ((ymax - p.1) / s).ceil().to_integer() + 1;
    let mut total = 0;
    for tx in tx0..=tx1 {
        for ty in ty0..=ty1 {
            let q = (p.0 + s * Rat::from_integer(tx), p.1 + s * Rat::from_integer(ty));
            total += winding(poly, &q);
        }
    }
    total == 1
}

fn winding(poly: &[Point], p: &Point) -> i64 {
    let mut wn = 0;
    let n = poly.len();
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let is_left = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
        if a.1 <= p.1 {
            if b.1 > p.1 && is_left.is_positive() {
                wn += 1;
            }
        } else if b.1 <= p.1 && is_left.is_negative() {
            wn -= 1;
        }
    }
    wn
}
