//! Piecewise-linear immersed surfaces: oriented closed triangle meshes and
//! scenes built from one or more of them.
//!
//! A [`Scene`] is the image of a single immersion of the disjoint union of
//! its meshes. Each triangle's coorientation normal is `(b-a)×(c-a)` for its
//! ordered vertex cycle `(a, b, c)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactgeom::{int, is_degenerate_triangle, orient2d, rat, Point3, Rational, Sign, Triangle, Vector3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub label: String,
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange { triangle: usize },
    DegenerateTriangle { triangle: usize },
    CollinearTriangle { triangle: usize },
    CoincidentVertices { first: usize, second: usize },
    EdgeSameDirection { from: usize, to: usize },
    EdgeIncidence { a: usize, b: usize, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { triangle } => {
                write!(f, "triangle {triangle}: vertex index out of range")
            }
            Violation::DegenerateTriangle { triangle } => {
                write!(f, "triangle {triangle}: degenerate triangle (repeated vertex index)")
            }
            Violation::CollinearTriangle { triangle } => {
                write!(f, "triangle {triangle}: collinear vertices")
            }
            Violation::CoincidentVertices { first, second } => {
                write!(f, "vertices {first} and {second} coincide")
            }
            Violation::EdgeSameDirection { from, to } => {
                write!(f, "edge {from}->{to} used twice with same direction")
            }
            Violation::EdgeIncidence { a, b, count } => {
                write!(f, "edge {a}-{b} is used by {count} triangles (expected 2)")
            }
        }
    }
}

impl Mesh {
    pub fn new(label: impl Into<String>, vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Self {
        Self {
            label: label.into(),
            vertices,
            triangles,
        }
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        let [a, b, c] = self.triangles[i];
        [
            self.vertices[a].clone(),
            self.vertices[b].clone(),
            self.vertices[c].clone(),
        ]
    }

    pub fn edge_count(&self) -> usize {
        let edges: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.triangles.len() as i64
    }

    pub fn reversed(&self) -> Mesh {
        Mesh {
            label: self.label.clone(),
            vertices: self.vertices.clone(),
            triangles: self.triangles.iter().map(|&[a, b, c]| [a, c, b]).collect(),
        }
    }
}

/// Checks every mesh invariant; an empty list means the mesh is valid.
pub fn validate(mesh: &Mesh) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = mesh.vertices.len();
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ti, tri) in mesh.triangles.iter().enumerate() {
        if tri.iter().any(|&v| v >= n) {
            out.push(Violation::IndexOutOfRange { triangle: ti });
            continue;
        }
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            out.push(Violation::DegenerateTriangle { triangle: ti });
            continue;
        }
        if is_degenerate_triangle(&mesh.triangle(ti)) {
            out.push(Violation::CollinearTriangle { triangle: ti });
        }
        for k in 0..3 {
            *directed.entry((tri[k], tri[(k + 1) % 3])).or_default() += 1;
        }
    }
    let mut undirected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(a, b), &count) in &directed {
        if count > 1 {
            out.push(Violation::EdgeSameDirection { from: a, to: b });
        }
        *undirected.entry((a.min(b), a.max(b))).or_default() += count;
    }
    for (&(a, b), &count) in &undirected {
        if count != 2 {
            out.push(Violation::EdgeIncidence { a, b, count });
        }
    }
    let mut seen: BTreeMap<&Point3, usize> = BTreeMap::new();
    for (i, v) in mesh.vertices.iter().enumerate() {
        if let Some(&first) = seen.get(v) {
            out.push(Violation::CoincidentVertices { first, second: i });
        } else {
            seen.insert(v, i);
        }
    }
    out
}

/// A triangle of a scene together with where it came from.
#[derive(Clone, Debug)]
pub struct SceneTriangle {
    pub mesh: usize,
    pub local: usize,
    pub vertex_ids: [usize; 3],
    pub points: Triangle,
}

impl SceneTriangle {
    /// True iff both triangles belong to the same mesh and share a vertex.
    pub fn is_adjacent(&self, other: &SceneTriangle) -> bool {
        self.mesh == other.mesh && self.vertex_ids.iter().any(|v| other.vertex_ids.contains(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    meshes: Vec<Mesh>,
}

impl Scene {
    /// Validates every mesh; the scene must be nonempty.
    pub fn new(meshes: Vec<Mesh>) -> Result<Self> {
        if meshes.is_empty() {
            return Err(Error::InvalidArgument("a scene needs at least one mesh".into()));
        }
        for mesh in &meshes {
            let violations = validate(mesh);
            if !violations.is_empty() {
                return Err(Error::Validation {
                    label: mesh.label.clone(),
                    violations: violations.iter().map(|v| v.to_string()).collect(),
                });
            }
        }
        Ok(Self { meshes })
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.meshes
    }

    pub fn vertex_count(&self) -> usize {
        self.meshes.iter().map(|m| m.vertices.len()).sum()
    }

    pub fn triangle_count(&self) -> usize {
        self.meshes.iter().map(|m| m.triangles.len()).sum()
    }

    /// All triangles in mesh order; the position in this list is the
    /// triangle id used throughout the arrangement.
    pub fn triangles(&self) -> Vec<SceneTriangle> {
        let mut out = Vec::with_capacity(self.triangle_count());
        for (mi, mesh) in self.meshes.iter().enumerate() {
            for (ti, &ids) in mesh.triangles.iter().enumerate() {
                out.push(SceneTriangle {
                    mesh: mi,
                    local: ti,
                    vertex_ids: ids,
                    points: mesh.triangle(ti),
                });
            }
        }
        out
    }

    /// Axis-aligned box `(min, max)` containing every vertex.
    pub fn bounding_box(&self) -> (Point3, Point3) {
        let mut lo = self.meshes[0].vertices[0].clone();
        let mut hi = lo.clone();
        for v in self.meshes.iter().flat_map(|m| m.vertices.iter()) {
            for axis in 0..3 {
                if v.coord(axis) < lo.coord(axis) {
                    *lo.coord_mut(axis) = v.coord(axis).clone();
                }
                if v.coord(axis) > hi.coord(axis) {
                    *hi.coord_mut(axis) = v.coord(axis).clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn with_mesh(&self, mesh: Mesh) -> Result<Scene> {
        let mut meshes = self.meshes.clone();
        meshes.push(mesh);
        Scene::new(meshes)
    }

    /// Every mesh with its orientation reversed.
    pub fn reversed(&self) -> Scene {
        Scene {
            meshes: self.meshes.iter().map(Mesh::reversed).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SceneTransform {
    Translate(Vector3),
    Scale(Rational),
    ReverseOrientation(usize),
    Perturb { seed: u64, magnitude: Rational },
}

const PERTURB_STEPS: i64 = 1 << 20;

/// Applies one transform, returning a new validated scene.
pub fn apply(t: &SceneTransform, s: &Scene) -> Result<Scene> {
    let map_vertices = |f: &dyn Fn(&Point3) -> Point3| -> Vec<Mesh> {
        s.meshes
            .iter()
            .map(|m| Mesh {
                label: m.label.clone(),
                vertices: m.vertices.iter().map(f).collect(),
                triangles: m.triangles.clone(),
            })
            .collect()
    };
    let meshes = match t {
        SceneTransform::Translate(v) => map_vertices(&|p| p + v),
        SceneTransform::Scale(r) => {
            if !r.is_positive() {
                return Err(Error::InvalidArgument("scale factor must be positive".into()));
            }
            map_vertices(&|p| p.scale(r))
        }
        SceneTransform::ReverseOrientation(index) => {
            if *index >= s.meshes.len() {
                return Err(Error::IndexOutOfRange {
                    what: "mesh",
                    index: *index,
                    len: s.meshes.len(),
                });
            }
            let mut meshes = s.meshes.clone();
            meshes[*index] = meshes[*index].reversed();
            meshes
        }
        SceneTransform::Perturb { seed, magnitude } => {
            if !magnitude.is_positive() {
                return Err(Error::InvalidArgument("perturbation magnitude must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let step = magnitude / int(PERTURB_STEPS);
            s.meshes
                .iter()
                .map(|m| Mesh {
                    label: m.label.clone(),
                    vertices: m
                        .vertices
                        .iter()
                        .map(|p| {
                            let mut q = p.clone();
                            for axis in 0..3 {
                                let k = rng.gen_range(-PERTURB_STEPS..=PERTURB_STEPS);
                                *q.coord_mut(axis) += &step * int(k);
                            }
                            q
                        })
                        .collect(),
                    triangles: m.triangles.clone(),
                })
                .collect()
        }
    };
    Scene::new(meshes)
}

fn box_mesh(label: &str, center: &Point3, half: [&Rational; 3]) -> Mesh {
    let mut vertices = Vec::with_capacity(8);
    for idx in 0..8usize {
        let mut v = center.clone();
        for (axis, h) in half.iter().enumerate() {
            if idx >> axis & 1 == 1 {
                *v.coord_mut(axis) += *h;
            } else {
                *v.coord_mut(axis) -= *h;
            }
        }
        vertices.push(v);
    }
    let quads = [
        [0, 4, 6, 2],
        [1, 3, 7, 5],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 2, 3, 1],
        [4, 5, 7, 6],
    ];
    let triangles = quads.iter().flat_map(|&[a, b, c, d]| [[a, b, c], [a, c, d]]).collect();
    Mesh::new(label, vertices, triangles)
}

/// A thin closed box whose two large faces are perpendicular to
/// `normal_axis` (0 = x, 1 = y, 2 = z). Cooriented outward.
pub fn gen_slab(center: &Point3, normal_axis: usize, half_thickness: &Rational, half_width: &Rational) -> Result<Mesh> {
    if normal_axis > 2 {
        return Err(Error::InvalidArgument(format!(
            "normal axis {normal_axis} out of range"
        )));
    }
    if !half_thickness.is_positive() || half_thickness >= half_width {
        return Err(Error::InvalidArgument(
            "slab needs 0 < half_thickness < half_width".into(),
        ));
    }
    let mut half = [half_width; 3];
    half[normal_axis] = half_thickness;
    let name = ["x", "y", "z"][normal_axis];
    Ok(box_mesh(&format!("slab-{name}"), center, half))
}

/// An axis-aligned closed box with the given half extents, cooriented outward.
pub fn gen_box(label: &str, center: &Point3, half_extents: [&Rational; 3]) -> Result<Mesh> {
    if half_extents.iter().any(|h| !h.is_positive()) {
        return Err(Error::InvalidArgument("box half extents must be positive".into()));
    }
    Ok(box_mesh(label, center, half_extents))
}

const SPHERE_SNAP: i64 = 4096;

/// A convex triangulated sphere: the octahedron with `subdivisions` rounds
/// of midpoint subdivision, each vertex pushed out radially to a rational
/// point within about `radius/4096` of the true sphere. Cooriented outward.
pub fn gen_sphere(center: &Point3, radius: &Rational, subdivisions: u32) -> Result<Mesh> {
    if !radius.is_positive() {
        return Err(Error::InvalidArgument("sphere radius must be positive".into()));
    }
    if subdivisions > 5 {
        return Err(Error::InvalidArgument(
            "at most 5 sphere subdivisions are supported".into(),
        ));
    }
    let mut verts: Vec<Point3> = vec![
        Point3::from_ints(1, 0, 0),
        Point3::from_ints(-1, 0, 0),
        Point3::from_ints(0, 1, 0),
        Point3::from_ints(0, -1, 0),
        Point3::from_ints(0, 0, 1),
        Point3::from_ints(0, 0, -1),
    ];
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for &(x, sx) in &[(0usize, 1i32), (1, -1)] {
        for &(y, sy) in &[(2usize, 1i32), (3, -1)] {
            for &(z, sz) in &[(4usize, 1i32), (5, -1)] {
                if sx * sy * sz > 0 {
                    tris.push([x, y, z]);
                } else {
                    tris.push([x, z, y]);
                }
            }
        }
    }
    let half = rat(1, 2);
    for _ in 0..subdivisions {
        let mut midpoints: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Point3>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                verts.push((&verts[a] + &verts[b]).scale(&half));
                verts.len() - 1
            })
        };
        for &[a, b, c] in &tris {
            let ab = mid(a, b, &mut verts);
            let bc = mid(b, c, &mut verts);
            let ca = mid(c, a, &mut verts);
            next.extend([[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]);
        }
        tris = next;
    }
    let vertices = verts
        .iter()
        .map(|v| {
            let [x, y, z] = v.to_f64();
            let norm = (x * x + y * y + z * z).sqrt();
            let snapped = ((SPHERE_SNAP as f64) / norm).round() as i64;
            let factor = if snapped == SPHERE_SNAP {
                Rational::one()
            } else {
                rat(snapped, SPHERE_SNAP)
            };
            center + &v.scale(&(&factor * radius))
        })
        .collect();
    Ok(Mesh::new("sphere", vertices, tris))
}

/// Ear-clipping triangulation of a simple counterclockwise polygon.
fn triangulate_polygon(poly: &[(Rational, Rational)]) -> Result<Vec<[usize; 3]>> {
    let pt = |i: usize| (&poly[i].0, &poly[i].1);
    let mut remaining: Vec<usize> = (0..poly.len()).collect();
    let mut out = Vec::with_capacity(poly.len().saturating_sub(2));
    while remaining.len() > 3 {
        let m = remaining.len();
        let ear = (0..m).find(|&k| {
            let (a, b, c) = (remaining[(k + m - 1) % m], remaining[k], remaining[(k + 1) % m]);
            if orient2d(pt(a), pt(b), pt(c)) != Sign::Positive {
                return false;
            }
            remaining.iter().all(|&o| {
                if o == a || o == b || o == c {
                    return true;
                }
                let s = [
                    orient2d(pt(a), pt(b), pt(o)),
                    orient2d(pt(b), pt(c), pt(o)),
                    orient2d(pt(c), pt(a), pt(o)),
                ];
                s.contains(&Sign::Negative)
            })
        });
        let Some(k) = ear else {
            return Err(Error::InvalidArgument(
                "profile polygon is not simple and counterclockwise".into(),
            ));
        };
        let m = remaining.len();
        out.push([remaining[(k + m - 1) % m], remaining[k], remaining[(k + 1) % m]]);
        remaining.remove(k);
    }
    if orient2d(pt(remaining[0]), pt(remaining[1]), pt(remaining[2])) != Sign::Positive {
        return Err(Error::InvalidArgument(
            "profile polygon is not simple and counterclockwise".into(),
        ));
    }
    out.push([remaining[0], remaining[1], remaining[2]]);
    Ok(out)
}

/// Extrudes a simple counterclockwise polygon along `axis` from `lo` to `hi`.
///
/// Profile coordinates `(u, v)` are the two axes following `axis`
/// cyclically, so that `u × v` points along `axis`.
pub fn gen_prism(
    label: &str,
    profile: &[(Rational, Rational)],
    axis: usize,
    lo: &Rational,
    hi: &Rational,
) -> Result<Mesh> {
    if axis > 2 || profile.len() < 3 || lo >= hi {
        return Err(Error::InvalidArgument(
            "prism needs axis in 0..3, 3+ profile points and lo < hi".into(),
        ));
    }
    let cap = triangulate_polygon(profile)?;
    let n = profile.len();
    let (u_axis, v_axis) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut vertices = Vec::with_capacity(2 * n);
    for w in [lo, hi] {
        for (u, v) in profile {
            let mut p = Point3::zero();
            *p.coord_mut(axis) = w.clone();
            *p.coord_mut(u_axis) = u.clone();
            *p.coord_mut(v_axis) = v.clone();
            vertices.push(p);
        }
    }
    let mut triangles = Vec::with_capacity(2 * cap.len() + 2 * n);
    for &[a, b, c] in &cap {
        triangles.push([n + a, n + b, n + c]);
        triangles.push([a, c, b]);
    }
    for i in 0..n {
        let j = (i + 1) % n;
        triangles.push([i, j, n + j]);
        triangles.push([i, n + j, n + i]);
    }
    Ok(Mesh::new(label, vertices, triangles))
}

fn parse_rational(tok: &str) -> Option<Rational> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (tok.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!d.is_zero()).then(|| Rational::new(n, d))
}

pub(crate) fn parse_rational_token(tok: &str, line: usize) -> Result<Rational> {
    parse_rational(tok).ok_or_else(|| Error::Parse {
        line,
        message: format!("bad rational `{tok}`"),
    })
}

pub const SCENE_HEADER: &str = "IMMV1";

/// Parses the `IMMV1` text format without validating meshes.
pub fn parse_meshes(text: &str) -> Result<Vec<Mesh>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, SCENE_HEADER)) => {}
        Some((line, other)) => {
            return Err(Error::Parse {
                line,
                message: format!("expected header `{SCENE_HEADER}`, found `{other}`"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty scene file".into(),
            })
        }
    }
    let mut meshes: Vec<Mesh> = Vec::new();
    for (line, content) in lines {
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        let rest: Vec<&str> = toks.collect();
        let current = meshes.last_mut();
        match (keyword, current) {
            ("mesh", _) => {
                let label = rest.join(" ");
                meshes.push(Mesh::new(
                    if label.is_empty() { "mesh".to_string() } else { label },
                    vec![],
                    vec![],
                ));
            }
            ("v", Some(mesh)) if rest.len() == 3 => {
                let c: Vec<Rational> = rest
                    .iter()
                    .map(|t| parse_rational_token(t, line))
                    .collect::<Result<_>>()?;
                let [x, y, z]: [Rational; 3] = c.try_into().expect("three coordinates");
                mesh.vertices.push(Point3::new(x, y, z));
            }
            ("f", Some(mesh)) if rest.len() == 3 => {
                let mut ids = [0usize; 3];
                for (slot, t) in ids.iter_mut().zip(&rest) {
                    *slot = t.parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad vertex index `{t}`"),
                    })?;
                }
                mesh.triangles.push(ids);
            }
            ("v" | "f", None) => {
                return Err(Error::Parse {
                    line,
                    message: format!("`{keyword}` before any `mesh` line"),
                })
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unrecognised line `{content}`"),
                })
            }
        }
    }
    if meshes.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no meshes in scene".into(),
        });
    }
    Ok(meshes)
}

pub fn parse_scene(text: &str) -> Result<Scene> {
    Scene::new(parse_meshes(text)?)
}

pub fn write_scene(scene: &Scene) -> String {
    let mut out = String::from(SCENE_HEADER);
    out.push('\n');
    let r = crate::exactgeom::fmt_rational;
    for mesh in &scene.meshes {
        out.push_str(&format!("mesh {}\n", mesh.label));
        for v in &mesh.vertices {
            out.push_str(&format!("v {} {} {}\n", r(&v.x), r(&v.y), r(&v.z)));
        }
        for [a, b, c] in &mesh.triangles {
            out.push_str(&format!("f {a} {b} {c}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{orient3d, triangle_normal};

    fn octahedron() -> Mesh {
        gen_sphere(&Point3::zero(), &int(1), 0).unwrap()
    }

    #[test]
    fn octahedron_is_valid() {
        let m = octahedron();
        assert_eq!(m.triangles.len(), 8);
        assert!(validate(&m).is_empty());
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn flipped_triangle_reported() {
        let mut m = octahedron();
        let [a, b, c] = m.triangles[3];
        m.triangles[3] = [a, c, b];
        let v = validate(&m);
        assert!(
            v.iter()
                .any(|v| v.to_string().contains("used twice with same direction")),
            "{v:?}"
        );
    }

    #[test]
    fn repeated_index_reported() {
        let mut m = octahedron();
        m.triangles[0] = [0, 0, 2];
        let v = validate(&m);
        assert!(v.iter().any(|v| v.to_string().contains("degenerate triangle")), "{v:?}");
    }

    #[test]
    fn coincident_vertices_reported() {
        let mut m = octahedron();
        m.vertices.push(m.vertices[0].clone());
        assert!(validate(&m).contains(&Violation::CoincidentVertices { first: 0, second: 6 }));
    }

    fn strictly_convex_outward(m: &Mesh) -> bool {
        (0..m.triangles.len()).all(|ti| {
            let t = m.triangle(ti);
            m.vertices
                .iter()
                .enumerate()
                .filter(|(vi, _)| !m.triangles[ti].contains(vi))
                .all(|(_, v)| orient3d(&t[0], &t[1], &t[2], v) == Sign::Negative)
        })
    }

    #[test]
    fn subdivided_spheres_are_valid_and_convex() {
        for sub in 0..=3 {
            let m = gen_sphere(&Point3::from_ints(1, 2, 3), &rat(3, 2), sub).unwrap();
            assert!(validate(&m).is_empty(), "subdivision {sub}");
            assert_eq!(m.triangles.len(), 8 * 4usize.pow(sub));
            assert_eq!(m.euler_characteristic(), 2);
            assert!(strictly_convex_outward(&m), "subdivision {sub}");
        }
    }

    #[test]
    fn slab_is_closed_box() {
        let m = gen_slab(&Point3::zero(), 2, &rat(1, 4), &int(10)).unwrap();
        assert_eq!(m.triangles.len(), 12);
        assert!(validate(&m).is_empty());
        assert_eq!(m.euler_characteristic(), 2);
        // Box faces are split into coplanar pairs, so outwardness is weak.
        assert!((0..12).all(|ti| {
            let t = m.triangle(ti);
            m.vertices
                .iter()
                .all(|v| orient3d(&t[0], &t[1], &t[2], v) != Sign::Positive)
        }));
        assert!(gen_slab(&Point3::zero(), 2, &int(10), &int(10)).is_err());
    }

    #[test]
    fn reversing_flips_every_normal() {
        let m = gen_slab(&Point3::zero(), 0, &rat(1, 4), &int(10)).unwrap();
        let r = m.reversed();
        for ti in 0..12 {
            assert_eq!(triangle_normal(&r.triangle(ti)), -&triangle_normal(&m.triangle(ti)));
        }
    }

    #[test]
    fn u_prism_is_valid() {
        let u: Vec<(Rational, Rational)> = [(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(a, b)| (int(a), int(b)))
            .collect();
        let m = gen_prism("u", &u, 1, &int(0), &int(1)).unwrap();
        assert!(validate(&m).is_empty(), "{:?}", validate(&m));
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn transforms() {
        let s = Scene::new(vec![octahedron()]).unwrap();
        let v = Point3::new(rat(1, 3), int(-2), rat(5, 7));
        let there = apply(&SceneTransform::Translate(v.clone()), &s).unwrap();
        let back = apply(&SceneTransform::Translate(-&v), &there).unwrap();
        assert_eq!(back, s);
        let p = SceneTransform::Perturb {
            seed: 9,
            magnitude: rat(1, 100),
        };
        assert_eq!(apply(&p, &s).unwrap(), apply(&p, &s).unwrap());
        assert_ne!(apply(&p, &s).unwrap(), s);
        assert!(matches!(
            apply(&SceneTransform::ReverseOrientation(3), &s),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(apply(&SceneTransform::Scale(int(0)), &s).is_err());
    }

    #[test]
    fn scene_file_roundtrip_and_errors() {
        let s = Scene::new(vec![
            octahedron(),
            gen_slab(&Point3::zero(), 1, &rat(1, 4), &int(3)).unwrap(),
        ])
        .unwrap();
        let text = write_scene(&s);
        assert!(text.starts_with("IMMV1\nmesh sphere\nv 1/1 0/1 0/1\n"));
        assert_eq!(parse_scene(&text).unwrap(), s);
        let short =
            "IMMV1\n# comment\nmesh t\nv 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 0 2 1\nf 0 1 3\nf 0 3 2\nf 1 2 3\n";
        let tet = parse_scene(short).unwrap();
        assert_eq!(tet.triangle_count(), 4);
        assert!(matches!(parse_scene("IMMV2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_scene("IMMV1\nmesh a\nv 1/0 0 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_scene("IMMV1\nv 0 0 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scene("IMMV1\nmesh a\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n"),
            Err(Error::Validation { .. })
        ));
    }
}
