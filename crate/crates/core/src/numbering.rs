//! Alexander numbering of complement regions, triple-point indices, and the
//! invariant `St₂ = Σ ind(t)`.
//!
//! Sign convention: walking from a point out to infinity, crossing a sheet
//! in the direction of its coorientation normal contributes `+1`. The
//! unbounded region has index `-1/2`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arrangement::{Arrangement, SceneGeometry, TriplePoint};
use crate::error::{Error, Result};
use crate::exactgeom::{int, ray_triangle_crossing, HalfInteger, Point3, Rational, Ray, RayHit, Vector3};
use crate::surface::Scene;

pub const DEFAULT_RAY_SEED: u64 = 20_240_601;
const MAX_RAY_ATTEMPTS: usize = 64;
const DIRECTION_RANGE: i64 = 4096;
const MAX_EPSILON_HALVINGS: usize = 80;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSample {
    pub point: Point3,
    pub index: HalfInteger,
}

/// Alexander index of an off-surface point in a scene.
pub fn alexander_index(p: &Point3, scene: &Scene, ray_seed: u64) -> Result<HalfInteger> {
    alexander_index_in(p, &SceneGeometry::new(scene), ray_seed)
}

/// Casts seeded rays until one avoids every boundary contact, then sums the
/// signed crossings.
pub fn alexander_index_in(p: &Point3, geometry: &SceneGeometry, ray_seed: u64) -> Result<HalfInteger> {
    if !geometry.triangles_containing(p).is_empty() {
        return Err(Error::OnSurface(p.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ray_seed);
    'attempt: for _ in 0..MAX_RAY_ATTEMPTS {
        let dir = loop {
            let d = Point3::from_ints(
                rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE),
                rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE),
                rng.gen_range(-DIRECTION_RANGE..=DIRECTION_RANGE),
            );
            if !d.is_zero() {
                break d;
            }
        };
        let ray = Ray::new(p.clone(), dir).expect("nonzero direction");
        let mut steps = 0i64;
        for tri in geometry.bvh.query_ray(ray.origin(), ray.direction()) {
            match ray_triangle_crossing(&ray, &geometry.points[tri]) {
                RayHit::Miss => {}
                RayHit::InteriorCrossing { agree, .. } => steps += if agree { 1 } else { -1 },
                RayHit::Degenerate => continue 'attempt,
            }
        }
        return Ok(HalfInteger::MINUS_HALF.shift(steps));
    }
    Err(Error::DegenerateSampling(format!(
        "no clean ray from {p} after {MAX_RAY_ATTEMPTS} attempts"
    )))
}

/// Sign pattern `(s₁, s₂, s₃)` of an octant at a triple point, relative to
/// the three coorientation normals; bit `i` is set iff `sᵢ = +`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Octant(u8);

impl Octant {
    pub const ALL: [Octant; 8] = [
        Octant(0),
        Octant(1),
        Octant(2),
        Octant(3),
        Octant(4),
        Octant(5),
        Octant(6),
        Octant(7),
    ];

    pub fn from_signs(signs: [bool; 3]) -> Self {
        Octant(signs.iter().enumerate().map(|(i, &s)| (s as u8) << i).sum())
    }

    pub fn signs(self) -> [bool; 3] {
        [self.0 & 1 != 0, self.0 & 2 != 0, self.0 & 4 != 0]
    }

    pub fn opposite(self) -> Self {
        Octant(!self.0 & 7)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn minus_count(self) -> i64 {
        3 - self.0.count_ones() as i64
    }
}

impl fmt::Display for Octant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.signs().map(|b| if b { '+' } else { '-' });
        write!(f, "({},{},{})", s[0], s[1], s[2])
    }
}

/// The four ordered level changes between opposite regions at a triple
/// point, `d` being the smallest of the eight indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transition {
    /// `d → d+3`
    ThreeUp,
    /// `d+1 → d+2`
    OneUp,
    /// `d+2 → d+1`
    OneDown,
    /// `d+3 → d`
    ThreeDown,
}

impl Transition {
    /// From the level `ind(r) - d` of the starting region.
    pub fn from_level(level: i64) -> Option<Self> {
        match level {
            0 => Some(Transition::ThreeUp),
            1 => Some(Transition::OneUp),
            2 => Some(Transition::OneDown),
            3 => Some(Transition::ThreeDown),
            _ => None,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transition::ThreeUp => "d->d+3",
            Transition::OneUp => "d+1->d+2",
            Transition::OneDown => "d+2->d+1",
            Transition::ThreeDown => "d+3->d",
        })
    }
}

/// The dual basis of three linearly independent normals: `dᵢ·nⱼ = δᵢⱼ`.
pub fn dual_basis(normals: &[Vector3; 3]) -> Option<[Vector3; 3]> {
    let [n1, n2, n3] = normals;
    let c23 = n2.cross(n3);
    let det = n1.dot(&c23);
    if det == int(0) {
        return None;
    }
    let inv = int(1) / det;
    Some([c23.scale(&inv), n3.cross(n1).scale(&inv), n1.cross(n2).scale(&inv)])
}

fn power_of_two(exp: i32) -> Rational {
    let p = Rational::from_integer(num_traits::pow(
        num_bigint::BigInt::from(2),
        exp.unsigned_abs() as usize,
    ));
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Initial octant offset scale, refined by [`octant_samples_with`].
fn initial_epsilon(dual: &[Vector3; 3], geometry: &SceneGeometry) -> i32 {
    let reach: f64 = dual
        .iter()
        .map(|d| d.to_f64().iter().map(|c| c * c).sum::<f64>().sqrt())
        .sum();
    let extent = (0..geometry.bvh.len())
        .map(|i| {
            let b = geometry.bvh.bounds(i);
            (0..3).map(|k| b.max[k] - b.min[k]).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
        .max(1e-6);
    ((extent / (64.0 * reach)).log2().floor() as i32).clamp(-60, 60)
}

/// Eight points, one in each octant region adjacent to `t`, keyed by
/// [`Octant`]. Each sample's segment back to `t` touches only the three
/// sheets through `t`, and only at `t`.
pub fn octant_samples(t: &TriplePoint, scene: &Scene) -> Result<[Point3; 8]> {
    octant_samples_with(t, &SceneGeometry::new(scene), None).map(|(s, _)| s)
}

/// As [`octant_samples`]; `start_exp` overrides the initial `ε = 2^exp`.
/// Returns the samples and the certified exponent.
pub fn octant_samples_with(
    t: &TriplePoint,
    geometry: &SceneGeometry,
    start_exp: Option<i32>,
) -> Result<([Point3; 8], i32)> {
    let dual = dual_basis(&t.plane_normals)
        .ok_or_else(|| Error::Inconsistent(format!("triple point {} has dependent normals", t.location)))?;
    let own = t.triangles();
    let mut exp = start_exp.unwrap_or_else(|| initial_epsilon(&dual, geometry));
    for _ in 0..MAX_EPSILON_HALVINGS {
        let eps = power_of_two(exp);
        let samples: [Point3; 8] = Octant::ALL.map(|o| {
            let mut offset = Point3::zero();
            for (d, s) in dual.iter().zip(o.signs()) {
                offset = if s { &offset + d } else { &offset - d };
            }
            &t.location + &offset.scale(&eps)
        });
        let clear = samples.iter().all(|s| {
            geometry
                .segment_contacts(&t.location, s)
                .iter()
                .all(|(tri, _)| own.contains(tri))
        });
        if clear {
            return Ok((samples, exp));
        }
        exp -= 1;
    }
    Err(Error::DegenerateSampling(format!(
        "could not certify octant samples around {}",
        t.location
    )))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointIndex {
    /// Position of the triple point in the arrangement's list.
    pub triple_point: usize,
    /// Indexed by [`Octant::index`].
    pub octant_indices: [HalfInteger; 8],
    pub samples: [Point3; 8],
    /// Smallest of the eight octant indices.
    pub min: HalfInteger,
    pub ind: i64,
}

impl TriplePointIndex {
    pub fn octant(&self, o: Octant) -> HalfInteger {
        self.octant_indices[o.index()]
    }
}

/// Verifies the eight-region law and returns `(d, ind)`.
pub fn eight_region_law(values: &[HalfInteger; 8]) -> Result<(HalfInteger, i64)> {
    let mut sorted = *values;
    sorted.sort();
    let d = sorted[0];
    let expected = [0, 1, 1, 1, 2, 2, 2, 3].map(|k| d.shift(k));
    if sorted != expected {
        return Err(Error::Inconsistent(format!(
            "octant indices {:?} violate the eight-region law",
            sorted.map(|h| h.to_string())
        )));
    }
    let doubled_sum: i64 = values.iter().map(|h| h.doubled()).sum();
    if doubled_sum.rem_euclid(16) != 0 {
        return Err(Error::Inconsistent(format!(
            "octant average {doubled_sum}/16 is not an integer"
        )));
    }
    Ok((d, doubled_sum / 16))
}

pub fn triple_point_index(
    id: usize,
    t: &TriplePoint,
    geometry: &SceneGeometry,
    ray_seed: u64,
) -> Result<TriplePointIndex> {
    let (samples, _) = octant_samples_with(t, geometry, None)?;
    let mut octant_indices = [HalfInteger::MINUS_HALF; 8];
    for (slot, s) in octant_indices.iter_mut().zip(&samples) {
        *slot = alexander_index_in(s, geometry, ray_seed)?;
    }
    let (min, ind) = eight_region_law(&octant_indices)?;
    Ok(TriplePointIndex {
        triple_point: id,
        octant_indices,
        samples,
        min,
        ind,
    })
}

/// Average of the indices of the opposite octants `key` and `-key`, with
/// the ordered transition class from `key` to `-key`.
pub fn index_opposite_pair(t: &TriplePointIndex, key: Octant) -> (i64, Transition) {
    let (r, r_hat) = (t.octant(key), t.octant(key.opposite()));
    let average = (r.doubled() + r_hat.doubled()) / 4;
    let class = Transition::from_level(r.diff(t.min)).expect("eight-region law bounds the level");
    (average, class)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct St2Result {
    pub value: i64,
    pub parity: u8,
    pub per_triple_point: Vec<TriplePointIndex>,
}

/// Arrangement plus invariant of one scene.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub arrangement: Arrangement,
    pub st2: St2Result,
}

pub fn analyze(scene: &Scene, ray_seed: u64) -> Result<Analysis> {
    let arrangement = Arrangement::build(scene)?;
    let st2 = st2_of(&arrangement, ray_seed)?;
    Ok(Analysis { arrangement, st2 })
}

pub fn st2_of(arrangement: &Arrangement, ray_seed: u64) -> Result<St2Result> {
    let per_triple_point: Vec<TriplePointIndex> = arrangement
        .triple_points
        .par_iter()
        .enumerate()
        .map(|(i, t)| triple_point_index(i, t, &arrangement.geometry, ray_seed))
        .collect::<Result<_>>()?;
    let value: i64 = per_triple_point.iter().map(|t| t.ind).sum();
    Ok(St2Result {
        value,
        parity: value.rem_euclid(2) as u8,
        per_triple_point,
    })
}

pub fn st2(scene: &Scene) -> Result<St2Result> {
    st2_with_seed(scene, DEFAULT_RAY_SEED)
}

pub fn st2_with_seed(scene: &Scene, ray_seed: u64) -> Result<St2Result> {
    Ok(analyze(scene, ray_seed)?.st2)
}

/// Squared distance, for picking nearby triple points.
pub(crate) fn distance_squared(a: &Point3, b: &Point3) -> Rational {
    (a - b).norm_squared()
}
