//! Exact rational arithmetic and the geometric predicates built on it.
//!
//! Every coordinate in the crate is a [`Rational`]. There is no floating
//! point path through any predicate; `f64` only appears in bounding-box
//! filters that are inflated so they can never reject a true contact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| if r.is_negative() { f64::MIN } else { f64::MAX })
}

/// A value in ℤ − ½, stored as its (odd) double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    doubled: i64,
}

impl HalfInteger {
    pub const MINUS_HALF: HalfInteger = HalfInteger { doubled: -1 };

    /// Returns `None` unless `doubled` is odd.
    pub fn from_doubled(doubled: i64) -> Option<Self> {
        (doubled.rem_euclid(2) == 1).then_some(Self { doubled })
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn shift(self, steps: i64) -> Self {
        Self {
            doubled: self.doubled + 2 * steps,
        }
    }

    /// `self - other`, which is always an integer.
    pub fn diff(self, other: HalfInteger) -> i64 {
        (self.doubled - other.doubled) / 2
    }

    pub fn to_rational(self) -> Rational {
        rat(self.doubled, 2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.doubled)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// A point or vector with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vec3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

pub type Point3 = Vec3;
pub type Vector3 = Vec3;

/// An oriented triangle; its coorientation normal is `(b-a)×(c-a)`.
pub type Triangle = [Point3; 3];

impl Vec3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Self { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Self::new(int(x), int(y), int(z))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn axis(axis: usize) -> Self {
        let mut v = Self::zero();
        *v.coord_mut(axis) = Rational::one();
        v
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn coord_mut(&mut self, axis: usize) -> &mut Rational {
        match axis {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("axis {axis} out of range"),
        }
    }

    pub fn dot(&self, o: &Vec3) -> Rational {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn scale(&self, s: &Rational) -> Vec3 {
        Vec3::new(&self.x * s, &self.y * s, &self.z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn norm_squared(&self) -> Rational {
        self.dot(self)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }

    /// Index of the coordinate with the largest magnitude (first on ties).
    pub fn dominant_axis(&self) -> usize {
        let (ax, ay, az) = (self.x.abs(), self.y.abs(), self.z.abs());
        if ax >= ay && ax >= az {
            0
        } else if ay >= az {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_rational(&self.x),
            fmt_rational(&self.y),
            fmt_rational(&self.z)
        )
    }
}

impl<'a> Add<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl<'a> Sub<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-&self.x, -&self.y, -&self.z)
    }
}

impl<'a> Mul<&'a Rational> for &'a Vec3 {
    type Output = Vec3;
    fn mul(self, s: &Rational) -> Vec3 {
        self.scale(s)
    }
}

/// `det(b-a, c-a, d-a)`, equal to `(d-a)·((b-a)×(c-a))`.
pub fn det3(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Rational {
    let n = (b - a).cross(&(c - a));
    (d - a).dot(&n)
}

pub fn orient3d(a: &Point3, b: &Point3, c: &Point3, d: &Point3) -> Sign {
    Sign::of(&det3(a, b, c, d))
}

pub fn triangle_normal(t: &Triangle) -> Vector3 {
    (&t[1] - &t[0]).cross(&(&t[2] - &t[0]))
}

pub fn is_degenerate_triangle(t: &Triangle) -> bool {
    triangle_normal(t).is_zero()
}

/// Drops coordinate `axis`: the remaining two in cyclic order.
fn project(p: &Point3, axis: usize) -> (&Rational, &Rational) {
    match axis {
        0 => (&p.y, &p.z),
        1 => (&p.z, &p.x),
        _ => (&p.x, &p.y),
    }
}

pub(crate) fn orient2d(a: (&Rational, &Rational), b: (&Rational, &Rational), c: (&Rational, &Rational)) -> Sign {
    let v = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    Sign::of(&v)
}

/// Closed containment of a coplanar point in a triangle, decided in the
/// projection that drops the normal's dominant axis.
fn coplanar_point_in_closed_triangle(p: &Point3, t: &Triangle, axis: usize) -> bool {
    let pp = project(p, axis);
    let (a, b, c) = (project(&t[0], axis), project(&t[1], axis), project(&t[2], axis));
    let s = [orient2d(a, b, pp), orient2d(b, c, pp), orient2d(c, a, pp)];
    let has_pos = s.contains(&Sign::Positive);
    let has_neg = s.contains(&Sign::Negative);
    !(has_pos && has_neg)
}

/// True iff `p` lies in the closed triangle `t` (plane test included).
pub fn point_on_closed_triangle(p: &Point3, t: &Triangle) -> bool {
    if orient3d(&t[0], &t[1], &t[2], p) != Sign::Zero {
        return false;
    }
    let axis = triangle_normal(t).dominant_axis();
    coplanar_point_in_closed_triangle(p, t, axis)
}

fn on_closed_segment_2d(a: (&Rational, &Rational), b: (&Rational, &Rational), p: (&Rational, &Rational)) -> bool {
    let within = |lo: &Rational, hi: &Rational, v: &Rational| (lo <= v && v <= hi) || (hi <= v && v <= lo);
    within(a.0, b.0, p.0) && within(a.1, b.1, p.1)
}

/// Closed 2D segment intersection test.
fn segments_touch_2d(
    a: (&Rational, &Rational),
    b: (&Rational, &Rational),
    c: (&Rational, &Rational),
    d: (&Rational, &Rational),
) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        return true;
    }
    (o1 == Sign::Zero && on_closed_segment_2d(a, b, c))
        || (o2 == Sign::Zero && on_closed_segment_2d(a, b, d))
        || (o3 == Sign::Zero && on_closed_segment_2d(c, d, a))
        || (o4 == Sign::Zero && on_closed_segment_2d(c, d, b))
}

fn coplanar_closed_overlap(t1: &Triangle, t2: &Triangle, axis: usize) -> bool {
    if t1.iter().any(|p| coplanar_point_in_closed_triangle(p, t2, axis))
        || t2.iter().any(|p| coplanar_point_in_closed_triangle(p, t1, axis))
    {
        return true;
    }
    for i in 0..3 {
        for j in 0..3 {
            if segments_touch_2d(
                project(&t1[i], axis),
                project(&t1[(i + 1) % 3], axis),
                project(&t2[j], axis),
                project(&t2[(j + 1) % 3], axis),
            ) {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    origin: Point3,
    direction: Vector3,
}

impl Ray {
    /// Returns `None` for a zero direction.
    pub fn new(origin: Point3, direction: Vector3) -> Option<Self> {
        (!direction.is_zero()).then_some(Self { origin, direction })
    }

    pub fn origin(&self) -> &Point3 {
        &self.origin
    }

    pub fn direction(&self) -> &Vector3 {
        &self.direction
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RayHit {
    Miss,
    /// `agree` is true iff the ray direction points along the coorientation.
    InteriorCrossing {
        t: Rational,
        agree: bool,
    },
    Degenerate,
}

/// Exact ray / triangle classification.
///
/// Any contact with the triangle boundary, a ray lying in the triangle's
/// plane, or an origin on the closed triangle is reported as `Degenerate`.
pub fn ray_triangle_crossing(ray: &Ray, tri: &Triangle) -> RayHit {
    let n = triangle_normal(tri);
    let dn = ray.direction.dot(&n);
    let offset = (&tri[0] - &ray.origin).dot(&n);
    if dn.is_zero() {
        return if offset.is_zero() {
            RayHit::Degenerate
        } else {
            RayHit::Miss
        };
    }
    let t = &offset / &dn;
    if t.is_negative() {
        return RayHit::Miss;
    }
    if t.is_zero() {
        let axis = n.dominant_axis();
        return if coplanar_point_in_closed_triangle(&ray.origin, tri, axis) {
            RayHit::Degenerate
        } else {
            RayHit::Miss
        };
    }
    let q = &ray.origin + &ray.direction;
    let p = &ray.origin;
    let s = [
        orient3d(p, &q, &tri[0], &tri[1]),
        orient3d(p, &q, &tri[1], &tri[2]),
        orient3d(p, &q, &tri[2], &tri[0]),
    ];
    let has_pos = s.contains(&Sign::Positive);
    let has_neg = s.contains(&Sign::Negative);
    if has_pos && has_neg {
        RayHit::Miss
    } else if s.contains(&Sign::Zero) {
        RayHit::Degenerate
    } else {
        RayHit::InteriorCrossing {
            t,
            agree: dn.is_positive(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentHit {
    Miss,
    Crossing { agree: bool },
    Degenerate,
}

/// Exact closed segment `[p, q]` / closed triangle classification.
/// `Crossing` means the open segment pierces the open triangle and neither
/// endpoint is on the triangle's plane; any other contact is `Degenerate`.
pub fn segment_triangle(p: &Point3, q: &Point3, tri: &Triangle) -> SegmentHit {
    let op = orient3d(&tri[0], &tri[1], &tri[2], p);
    let oq = orient3d(&tri[0], &tri[1], &tri[2], q);
    match (op, oq) {
        (Sign::Zero, Sign::Zero) => {
            let axis = triangle_normal(tri).dominant_axis();
            let pp = project(p, axis);
            let qq = project(q, axis);
            let touches = coplanar_point_in_closed_triangle(p, tri, axis)
                || coplanar_point_in_closed_triangle(q, tri, axis)
                || (0..3).any(|i| segments_touch_2d(pp, qq, project(&tri[i], axis), project(&tri[(i + 1) % 3], axis)));
            if touches {
                SegmentHit::Degenerate
            } else {
                SegmentHit::Miss
            }
        }
        (Sign::Zero, _) => {
            if point_on_closed_triangle(p, tri) {
                SegmentHit::Degenerate
            } else {
                SegmentHit::Miss
            }
        }
        (_, Sign::Zero) => {
            if point_on_closed_triangle(q, tri) {
                SegmentHit::Degenerate
            } else {
                SegmentHit::Miss
            }
        }
        (a, b) if a == b => SegmentHit::Miss,
        (a, _) => {
            let s = [
                orient3d(p, q, &tri[0], &tri[1]),
                orient3d(p, q, &tri[1], &tri[2]),
                orient3d(p, q, &tri[2], &tri[0]),
            ];
            let has_pos = s.contains(&Sign::Positive);
            let has_neg = s.contains(&Sign::Negative);
            if has_pos && has_neg {
                SegmentHit::Miss
            } else if s.contains(&Sign::Zero) {
                SegmentHit::Degenerate
            } else {
                SegmentHit::Crossing {
                    agree: a == Sign::Negative,
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriTriIntersection {
    Empty,
    Segment(Point3, Point3),
    NonGenericContact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EndKind {
    Vertex,
    EdgeInterior,
}

struct PlaneSection {
    ends: Vec<(Rational, Point3, EndKind)>,
    edge_in_plane: bool,
}

/// Intersection of a triangle with the other triangle's plane, given the
/// signed plane offsets of its vertices. Endpoints are sorted by `param`.
fn plane_section(t: &Triangle, offsets: &[Rational; 3], dir: &Vector3) -> PlaneSection {
    let signs: Vec<Sign> = offsets.iter().map(Sign::of).collect();
    let mut ends = Vec::with_capacity(2);
    for i in 0..3 {
        if signs[i] == Sign::Zero {
            ends.push((t[i].dot(dir), t[i].clone(), EndKind::Vertex));
        }
    }
    for i in 0..3 {
        let j = (i + 1) % 3;
        if signs[i].as_i32() * signs[j].as_i32() < 0 {
            let w = &offsets[i] / (&offsets[i] - &offsets[j]);
            let p = &t[i] + &(&t[j] - &t[i]).scale(&w);
            ends.push((p.dot(dir), p, EndKind::EdgeInterior));
        }
    }
    let zeros = signs.iter().filter(|s| **s == Sign::Zero).count();
    ends.sort_by(|a, b| a.0.cmp(&b.0));
    PlaneSection {
        ends,
        edge_in_plane: zeros == 2,
    }
}

/// Exact intersection of two closed triangles, classified for genericity.
pub fn triangle_triangle_intersection(t1: &Triangle, t2: &Triangle) -> TriTriIntersection {
    let n1 = triangle_normal(t1);
    let n2 = triangle_normal(t2);
    let off2: [Rational; 3] = std::array::from_fn(|i| (&t2[i] - &t1[0]).dot(&n1));
    let s2: Vec<Sign> = off2.iter().map(Sign::of).collect();
    if s2.iter().all(|s| *s == Sign::Positive) || s2.iter().all(|s| *s == Sign::Negative) {
        return TriTriIntersection::Empty;
    }
    let off1: [Rational; 3] = std::array::from_fn(|i| (&t1[i] - &t2[0]).dot(&n2));
    let s1: Vec<Sign> = off1.iter().map(Sign::of).collect();
    if s1.iter().all(|s| *s == Sign::Positive) || s1.iter().all(|s| *s == Sign::Negative) {
        return TriTriIntersection::Empty;
    }
    if s2.iter().all(|s| *s == Sign::Zero) {
        return if coplanar_closed_overlap(t1, t2, n1.dominant_axis()) {
            TriTriIntersection::NonGenericContact
        } else {
            TriTriIntersection::Empty
        };
    }

    let dir = n1.cross(&n2);
    let sec1 = plane_section(t1, &off1, &dir);
    let sec2 = plane_section(t2, &off2, &dir);
    let (lo1, hi1) = (&sec1.ends[0], sec1.ends.last().unwrap());
    let (lo2, hi2) = (&sec2.ends[0], sec2.ends.last().unwrap());
    let lo = if lo1.0 >= lo2.0 { &lo1.0 } else { &lo2.0 };
    let hi = if hi1.0 <= hi2.0 { &hi1.0 } else { &hi2.0 };
    if lo > hi {
        return TriTriIntersection::Empty;
    }
    if lo == hi || sec1.edge_in_plane || sec2.edge_in_plane {
        return TriTriIntersection::NonGenericContact;
    }

    let pick = |a: &(Rational, Point3, EndKind), b: &(Rational, Point3, EndKind), at: &Rational| match (
        &a.0 == at,
        &b.0 == at,
    ) {
        (true, true) => None,
        (true, false) => (a.2 == EndKind::EdgeInterior).then(|| a.1.clone()),
        (false, true) => (b.2 == EndKind::EdgeInterior).then(|| b.1.clone()),
        (false, false) => unreachable!("overlap end comes from one of the sections"),
    };
    match (pick(lo1, lo2, lo), pick(hi1, hi2, hi)) {
        (Some(p), Some(q)) => TriTriIntersection::Segment(p, q),
        _ => TriTriIntersection::NonGenericContact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    #[test]
    fn orient3d_unit_tetrahedron() {
        assert_eq!(
            orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)),
            Sign::Positive
        );
        assert_eq!(
            orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(0, 0, -1)),
            Sign::Negative
        );
        assert_eq!(orient3d(&p(0, 0, 0), &p(1, 0, 0), &p(0, 1, 0), &p(5, 7, 0)), Sign::Zero);
    }

    #[test]
    fn half_integer_requires_odd() {
        assert!(HalfInteger::from_doubled(4).is_none());
        assert_eq!(HalfInteger::from_doubled(-3).unwrap().to_string(), "-3/2");
        assert_eq!(HalfInteger::MINUS_HALF.shift(1).doubled(), 1);
        assert_eq!(HalfInteger::MINUS_HALF.shift(2).diff(HalfInteger::MINUS_HALF), 2);
    }

    fn half_plane_tri() -> Triangle {
        let h = rat(1, 2);
        [
            Point3::new(int(-1), int(-1), h.clone()),
            Point3::new(int(2), int(-1), h.clone()),
            Point3::new(int(-1), int(2), h),
        ]
    }

    #[test]
    fn ray_crossing_axis_aligned() {
        let ray = Ray::new(p(0, 0, 0), p(0, 0, 1)).unwrap();
        let tri = half_plane_tri();
        assert_eq!(
            ray_triangle_crossing(&ray, &tri),
            RayHit::InteriorCrossing {
                t: rat(1, 2),
                agree: true
            }
        );
        let swapped = [tri[0].clone(), tri[2].clone(), tri[1].clone()];
        assert_eq!(
            ray_triangle_crossing(&ray, &swapped),
            RayHit::InteriorCrossing {
                t: rat(1, 2),
                agree: false
            }
        );
    }

    #[test]
    fn ray_through_vertex_is_degenerate() {
        let tri = half_plane_tri();
        let ray = Ray::new(p(0, 0, 0), &tri[0] - &p(0, 0, 0)).unwrap();
        assert_eq!(ray_triangle_crossing(&ray, &tri), RayHit::Degenerate);
        // Along an edge interior.
        let mid = Point3::new(rat(1, 2), int(-1), rat(1, 2));
        let ray = Ray::new(p(0, 0, 0), mid).unwrap();
        assert_eq!(ray_triangle_crossing(&ray, &tri), RayHit::Degenerate);
    }

    #[test]
    fn ray_in_plane_and_origin_on_triangle() {
        let tri = half_plane_tri();
        let in_plane = Ray::new(Point3::new(int(-5), int(0), rat(1, 2)), p(1, 0, 0)).unwrap();
        assert_eq!(ray_triangle_crossing(&in_plane, &tri), RayHit::Degenerate);
        let on_tri = Ray::new(Point3::new(int(0), int(0), rat(1, 2)), p(0, 0, 1)).unwrap();
        assert_eq!(ray_triangle_crossing(&on_tri, &tri), RayHit::Degenerate);
        let behind = Ray::new(p(0, 0, 0), p(0, 0, -1)).unwrap();
        assert_eq!(ray_triangle_crossing(&behind, &tri), RayHit::Miss);
        assert!(Ray::new(p(0, 0, 0), Point3::zero()).is_none());
    }

    #[test]
    fn coordinate_plane_triangles_meet_in_segment() {
        // t1 in z = 0, t2 in x = 0, both containing a neighborhood of the
        // y-axis segment from 0 to 1 once clipped.
        let t1 = [p(-1, -1, 0), p(3, -1, 0), p(-1, 3, 0)];
        let t2 = [p(0, 0, -1), p(0, 1, -1), p(0, 1, 1)];
        match triangle_triangle_intersection(&t1, &t2) {
            TriTriIntersection::Segment(a, b) => {
                let mut ends = [a, b];
                ends.sort();
                assert_eq!(ends[0], Point3::new(int(0), rat(1, 2), int(0)));
                assert_eq!(ends[1], p(0, 1, 0));
            }
            other => panic!("expected segment, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_and_coplanar_triangles() {
        let t1 = [p(0, 0, 0), p(1, 0, 0), p(0, 1, 0)];
        let far = [p(0, 0, 5), p(1, 0, 5), p(0, 1, 6)];
        assert_eq!(triangle_triangle_intersection(&t1, &far), TriTriIntersection::Empty);
        let overlap = [p(0, 0, 0), p(2, 1, 0), p(1, 2, 0)];
        assert_eq!(
            triangle_triangle_intersection(&t1, &overlap),
            TriTriIntersection::NonGenericContact
        );
        let apart = [p(5, 5, 0), p(6, 5, 0), p(5, 6, 0)];
        assert_eq!(triangle_triangle_intersection(&t1, &apart), TriTriIntersection::Empty);
    }

    #[test]
    fn vertex_touching_is_non_generic() {
        let t1 = [p(-2, -2, 0), p(2, -2, 0), p(-2, 2, 0)];
        // Apex (0,0,0) sits on t1's interior; the rest lies above.
        let t2 = [p(-1, -1, 0), p(1, 0, 3), p(0, 1, 3)];
        assert_eq!(
            triangle_triangle_intersection(&t1, &t2),
            TriTriIntersection::NonGenericContact
        );
        // Edge lying in the other triangle's plane.
        let t3 = [p(-1, -1, 0), p(1, -1, 0), p(0, 0, 4)];
        assert_eq!(
            triangle_triangle_intersection(&t1, &t3),
            TriTriIntersection::NonGenericContact
        );
    }

    #[test]
    fn segment_triangle_cases() {
        let tri = half_plane_tri();
        assert_eq!(
            segment_triangle(&p(0, 0, 0), &p(0, 0, 1), &tri),
            SegmentHit::Crossing { agree: true }
        );
        assert_eq!(
            segment_triangle(&p(0, 0, 1), &p(0, 0, 0), &tri),
            SegmentHit::Crossing { agree: false }
        );
        assert_eq!(segment_triangle(&p(0, 0, 1), &p(0, 0, 2), &tri), SegmentHit::Miss);
        let on = Point3::new(int(0), int(0), rat(1, 2));
        assert_eq!(segment_triangle(&p(0, 0, 0), &on, &tri), SegmentHit::Degenerate);
        assert_eq!(segment_triangle(&p(5, 5, 0), &p(5, 5, 1), &tri), SegmentHit::Miss);
    }
}
