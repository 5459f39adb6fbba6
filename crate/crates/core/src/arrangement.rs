//! Self-intersection structure of a scene: double segments, the closed double
//! curves they stitch into, and triple points. PL genericity is decided here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::bvh::{Aabb, Bvh};
use crate::error::{Error, Result};
use crate::exactgeom::{
    det3, orient2d, orient3d, point_on_closed_triangle, segment_triangle, triangle_normal,
    triangle_triangle_intersection, Point3, Rational, SegmentHit, Sign, TriTriIntersection, Triangle, Vector3,
};
use crate::surface::{Scene, SceneTriangle};

/// Triangles of a scene with a BVH over them; shared by every module that
/// queries the surface.
#[derive(Clone, Debug)]
pub struct SceneGeometry {
    pub triangles: Vec<SceneTriangle>,
    pub points: Vec<Triangle>,
    pub normals: Vec<Vector3>,
    pub bvh: Bvh,
}

impl SceneGeometry {
    pub fn new(scene: &Scene) -> Self {
        let triangles = scene.triangles();
        let points: Vec<Triangle> = triangles.iter().map(|t| t.points.clone()).collect();
        let normals = points.iter().map(triangle_normal).collect();
        let bvh = Bvh::build(&points);
        Self {
            triangles,
            points,
            normals,
            bvh,
        }
    }

    /// Ids of triangles whose closure contains `p`.
    pub fn triangles_containing(&self, p: &Point3) -> Vec<usize> {
        self.bvh
            .query(&Aabb::around([p]))
            .into_iter()
            .filter(|&i| point_on_closed_triangle(p, &self.points[i]))
            .collect()
    }

    /// Ids of triangles that the closed segment `[p, q]` touches in any way.
    pub fn segment_contacts(&self, p: &Point3, q: &Point3) -> Vec<(usize, SegmentHit)> {
        self.bvh
            .query(&Aabb::around([p, q]))
            .into_iter()
            .map(|i| (i, segment_triangle(p, q, &self.points[i])))
            .filter(|(_, h)| *h != SegmentHit::Miss)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSegment {
    pub endpoints: (Point3, Point3),
    /// Scene triangle ids, smaller first.
    pub triangle_pair: (usize, usize),
}

impl DoubleSegment {
    pub fn other(&self, tri: usize) -> usize {
        if self.triangle_pair.0 == tri {
            self.triangle_pair.1
        } else {
            self.triangle_pair.0
        }
    }
}

/// A closed loop of double segments, in walking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCurve {
    pub segments: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePoint {
    pub location: Point3,
    /// Scene triangle ids in increasing order.
    pub triangle_triple: (usize, usize, usize),
    /// Coorientation normals of the three triangles, same order.
    pub plane_normals: [Vector3; 3],
}

impl TriplePoint {
    pub fn triangles(&self) -> [usize; 3] {
        [self.triangle_triple.0, self.triangle_triple.1, self.triangle_triple.2]
    }
}

/// Evidence that a scene is not a generic immersion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub reason: String,
    pub point: Option<Point3>,
    pub triangles: Vec<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (triangles {:?}", self.reason, self.triangles)?;
        if let Some(p) = &self.point {
            write!(f, " at {p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Generic,
    NonGeneric(Vec<Witness>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub verdict: Verdict,
}

impl GenericityReport {
    pub fn is_generic(&self) -> bool {
        self.verdict == Verdict::Generic
    }
}

/// The complete self-intersection structure of a generic scene.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub geometry: SceneGeometry,
    pub segments: Vec<DoubleSegment>,
    pub curves: Vec<DoubleCurve>,
    pub triple_points: Vec<TriplePoint>,
}

impl Arrangement {
    /// Builds the arrangement, failing with [`Error::NonGeneric`] on any
    /// non-generic contact.
    pub fn build(scene: &Scene) -> Result<Self> {
        let geometry = SceneGeometry::new(scene);
        let raw = analyze(&geometry);
        if !raw.witnesses.is_empty() {
            return Err(Error::NonGeneric {
                witnesses: raw.witnesses,
            });
        }
        let curves = stitch_curves(&raw.segments)?;
        Ok(Self {
            geometry,
            segments: raw.segments,
            curves,
            triple_points: raw.triple_points,
        })
    }
}

struct RawArrangement {
    segments: Vec<DoubleSegment>,
    triple_points: Vec<TriplePoint>,
    witnesses: Vec<Witness>,
}

fn witness(reason: &str, point: Option<Point3>, triangles: Vec<usize>) -> Witness {
    Witness {
        reason: reason.to_string(),
        point,
        triangles,
    }
}

/// Contacts between triangles that share mesh vertices, which the pairwise
/// intersection pass skips.
fn adjacent_pair_witness(g: &SceneGeometry, i: usize, j: usize) -> Option<Witness> {
    let (ti, tj) = (&g.triangles[i], &g.triangles[j]);
    let shared: Vec<usize> = ti
        .vertex_ids
        .iter()
        .copied()
        .filter(|v| tj.vertex_ids.contains(v))
        .collect();
    let (pi, pj) = (&g.points[i], &g.points[j]);
    match shared.len() {
        1 => {
            // The edge opposite the shared vertex must stay clear of the other
            // triangle; otherwise the two triangles fold through each other.
            let opposite = |t: &SceneTriangle, p: &Triangle| {
                let k = t.vertex_ids.iter().position(|v| *v == shared[0]).unwrap();
                (p[(k + 1) % 3].clone(), p[(k + 2) % 3].clone())
            };
            let (a, b) = opposite(ti, pi);
            let (c, d) = opposite(tj, pj);
            (segment_triangle(&a, &b, pj) != SegmentHit::Miss || segment_triangle(&c, &d, pi) != SegmentHit::Miss)
                .then(|| witness("triangles sharing a vertex intersect", None, vec![i, j]))
        }
        2 => {
            let far = |t: &SceneTriangle, p: &Triangle| {
                let k = t.vertex_ids.iter().position(|v| !shared.contains(v)).unwrap();
                p[k].clone()
            };
            let (wi, wj) = (far(ti, pi), far(tj, pj));
            if orient3d(&pi[0], &pi[1], &pi[2], &wj) != Sign::Zero {
                return None;
            }
            // Coplanar neighbours: only the flat (unfolded) configuration is allowed.
            let axis = g.normals[i].dominant_axis();
            let a = &g.triangles[i].vertex_ids;
            let ka = a.iter().position(|v| *v == shared[0]).unwrap();
            let kb = a.iter().position(|v| *v == shared[1]).unwrap();
            let proj = |p: &Point3| match axis {
                0 => (p.y.clone(), p.z.clone()),
                1 => (p.z.clone(), p.x.clone()),
                _ => (p.x.clone(), p.y.clone()),
            };
            let (e0, e1, x, y) = (proj(&pi[ka]), proj(&pi[kb]), proj(&wi), proj(&wj));
            let side = |p: &(Rational, Rational)| orient2d((&e0.0, &e0.1), (&e1.0, &e1.1), (&p.0, &p.1));
            (side(&x) == side(&y)).then(|| witness("adjacent triangles fold onto each other", None, vec![i, j]))
        }
        _ => None,
    }
}

type PairResult = (usize, usize, std::result::Result<Option<(Point3, Point3)>, Witness>);

fn analyze(g: &SceneGeometry) -> RawArrangement {
    let pairs = g.bvh.overlapping_pairs();
    let results: Vec<PairResult> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if g.triangles[i].is_adjacent(&g.triangles[j]) {
                let r = adjacent_pair_witness(g, i, j).map_or(Ok(None), Err);
                return (i, j, r);
            }
            let r = match triangle_triangle_intersection(&g.points[i], &g.points[j]) {
                TriTriIntersection::Empty => Ok(None),
                TriTriIntersection::Segment(p, q) => Ok(Some((p, q))),
                TriTriIntersection::NonGenericContact => {
                    Err(witness("non-transverse contact between triangles", None, vec![i, j]))
                }
            };
            (i, j, r)
        })
        .collect();

    let mut segments = Vec::new();
    let mut witnesses = Vec::new();
    for (i, j, r) in results {
        match r {
            Ok(Some(ends)) => segments.push(DoubleSegment {
                endpoints: ends,
                triangle_pair: (i, j),
            }),
            Ok(None) => {}
            Err(w) => witnesses.push(w),
        }
    }

    // Each segment endpoint sits on one mesh edge (two triangles) and inside
    // one other triangle, so exactly three closures contain it.
    let endpoints: BTreeSet<&Point3> = segments.iter().flat_map(|s| [&s.endpoints.0, &s.endpoints.1]).collect();
    let endpoint_witnesses: Vec<Witness> = endpoints
        .par_iter()
        .filter_map(|p| {
            let hits = g.triangles_containing(p);
            (hits.len() != 3).then(|| witness("double-curve endpoint meets another sheet", Some((*p).clone()), hits))
        })
        .collect();
    witnesses.extend(endpoint_witnesses);

    let mut by_triangle: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (si, s) in segments.iter().enumerate() {
        by_triangle.entry(s.triangle_pair.0).or_default().push(si);
        by_triangle.entry(s.triangle_pair.1).or_default().push(si);
    }
    let per_triangle: Vec<(Vec<TriplePoint>, Vec<Witness>)> = by_triangle
        .par_iter()
        .map(|(&a, segs)| crossings_in_triangle(g, a, segs, &segments))
        .collect();
    let mut triple_points = Vec::new();
    for (tps, ws) in per_triangle {
        triple_points.extend(tps);
        witnesses.extend(ws);
    }
    triple_points.sort_by_key(|t| t.triangle_triple);

    let tp_witnesses: Vec<Witness> = triple_points
        .par_iter()
        .filter_map(|t| {
            let hits = g.triangles_containing(&t.location);
            if hits.len() != 3 {
                return Some(witness(
                    "four or more sheets meet at one point",
                    Some(t.location.clone()),
                    hits,
                ));
            }
            let [n1, n2, n3] = &t.plane_normals;
            let o = Point3::zero();
            det3(&o, n1, n2, n3).is_zero().then(|| {
                witness(
                    "triple point sheets are not transverse",
                    Some(t.location.clone()),
                    t.triangles().to_vec(),
                )
            })
        })
        .collect();
    witnesses.extend(tp_witnesses);
    witnesses.sort_by(|a, b| a.triangles.cmp(&b.triangles).then(a.reason.cmp(&b.reason)));
    witnesses.dedup();

    RawArrangement {
        segments,
        triple_points,
        witnesses,
    }
}

/// Crossings between pairs of double segments lying in triangle `a`. A
/// triple point is emitted only from its smallest triangle.
fn r(v: &(Rational, Rational)) -> (&Rational, &Rational) {
    (&v.0, &v.1)
}

fn crossings_in_triangle(
    g: &SceneGeometry,
    a: usize,
    segs: &[usize],
    all: &[DoubleSegment],
) -> (Vec<TriplePoint>, Vec<Witness>) {
    let axis = g.normals[a].dominant_axis();
    let proj = |p: &Point3| -> (Rational, Rational) {
        match axis {
            0 => (p.y.clone(), p.z.clone()),
            1 => (p.z.clone(), p.x.clone()),
            _ => (p.x.clone(), p.y.clone()),
        }
    };
    let mut out = Vec::new();
    let mut witnesses = Vec::new();
    for (k, &s1) in segs.iter().enumerate() {
        for &s2 in &segs[k + 1..] {
            let (b, c) = (all[s1].other(a), all[s2].other(a));
            if b == c {
                continue;
            }
            let (p0, p1) = (&all[s1].endpoints.0, &all[s1].endpoints.1);
            let (q0, q1) = (&all[s2].endpoints.0, &all[s2].endpoints.1);
            let (a0, a1, c0, c1) = (proj(p0), proj(p1), proj(q0), proj(q1));
            let o1 = orient2d(r(&a0), r(&a1), r(&c0));
            let o2 = orient2d(r(&a0), r(&a1), r(&c1));
            let o3 = orient2d(r(&c0), r(&c1), r(&a0));
            let o4 = orient2d(r(&c0), r(&c1), r(&a1));
            let proper = o1.as_i32() * o2.as_i32() < 0 && o3.as_i32() * o4.as_i32() < 0;
            if proper {
                if a < b && a < c {
                    let cross2 = |u: (Rational, Rational), v: (Rational, Rational)| &u.0 * &v.1 - &u.1 * &v.0;
                    let dc = (&c1.0 - &c0.0, &c1.1 - &c0.1);
                    let num = cross2((&c0.0 - &a0.0, &c0.1 - &a0.1), dc.clone());
                    let den = cross2((&a1.0 - &a0.0, &a1.1 - &a0.1), dc);
                    let t = num / den;
                    let location = p0 + &(p1 - p0).scale(&t);
                    let mut ids = [a, b, c];
                    ids.sort_unstable();
                    out.push(TriplePoint {
                        location,
                        triangle_triple: (ids[0], ids[1], ids[2]),
                        plane_normals: ids.map(|i| g.normals[i].clone()),
                    });
                }
                continue;
            }
            let within = |lo: &Rational, hi: &Rational, v: &Rational| (lo <= v && v <= hi) || (hi <= v && v <= lo);
            let on = |x: &(Rational, Rational), y: &(Rational, Rational), p: &(Rational, Rational)| {
                within(&x.0, &y.0, &p.0) && within(&x.1, &y.1, &p.1)
            };
            let touch = (o1 == Sign::Zero && on(&a0, &a1, &c0))
                || (o2 == Sign::Zero && on(&a0, &a1, &c1))
                || (o3 == Sign::Zero && on(&c0, &c1, &a0))
                || (o4 == Sign::Zero && on(&c0, &c1, &a1));
            // Consecutive pieces of one double curve meet where it crosses the
            // edge between two neighbouring triangles.
            // Neighbours in one plane give collinear pieces; those must not overlap.
            let shared = p0 == q0 || p0 == q1 || p1 == q0 || p1 == q1;
            let overlap = (o1 == Sign::Zero && on(&a0, &a1, &c0) && q0 != p0 && q0 != p1)
                || (o2 == Sign::Zero && on(&a0, &a1, &c1) && q1 != p0 && q1 != p1)
                || (o3 == Sign::Zero && on(&c0, &c1, &a0) && p0 != q0 && p0 != q1)
                || (o4 == Sign::Zero && on(&c0, &c1, &a1) && p1 != q0 && p1 != q1);
            let continuation = shared && !overlap && g.triangles[b].is_adjacent(&g.triangles[c]);
            if touch && !continuation {
                let mut ids = vec![a, b, c];
                ids.sort_unstable();
                witnesses.push(witness("double segments touch without crossing", None, ids));
            }
        }
    }
    (out, witnesses)
}

pub fn genericity_check(scene: &Scene) -> GenericityReport {
    let raw = analyze(&SceneGeometry::new(scene));
    GenericityReport {
        verdict: if raw.witnesses.is_empty() {
            Verdict::Generic
        } else {
            Verdict::NonGeneric(raw.witnesses)
        },
    }
}

pub fn double_segments(scene: &Scene) -> Result<Vec<DoubleSegment>> {
    Ok(Arrangement::build(scene)?.segments)
}

pub fn triple_points(scene: &Scene) -> Result<Vec<TriplePoint>> {
    Ok(Arrangement::build(scene)?.triple_points)
}

/// Partitions double segments into closed loops.
pub fn stitch_curves(segs: &[DoubleSegment]) -> Result<Vec<DoubleCurve>> {
    let mut at: BTreeMap<&Point3, Vec<usize>> = BTreeMap::new();
    for (i, s) in segs.iter().enumerate() {
        at.entry(&s.endpoints.0).or_default().push(i);
        at.entry(&s.endpoints.1).or_default().push(i);
    }
    if let Some((p, ids)) = at.iter().find(|(_, ids)| ids.len() != 2) {
        return Err(Error::Inconsistent(format!(
            "double curve is not a closed loop at {p}: {} segment ends meet there",
            ids.len()
        )));
    }
    let mut used = vec![false; segs.len()];
    let mut curves = Vec::new();
    for start in 0..segs.len() {
        if used[start] {
            continue;
        }
        let mut loop_ids = vec![start];
        used[start] = true;
        let mut current = start;
        let mut tip = &segs[start].endpoints.1;
        loop {
            let ids = &at[tip];
            let next = if ids[0] == current { ids[1] } else { ids[0] };
            if next == start {
                break;
            }
            if used[next] {
                return Err(Error::Inconsistent(format!("double curve revisits segment {next}")));
            }
            used[next] = true;
            loop_ids.push(next);
            let s = &segs[next];
            tip = if &s.endpoints.0 == tip {
                &s.endpoints.1
            } else {
                &s.endpoints.0
            };
            current = next;
        }
        curves.push(DoubleCurve { segments: loop_ids });
    }
    Ok(curves)
}
