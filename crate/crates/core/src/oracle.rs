//! Brute-force voxel recomputation of complement regions and Alexander
//! indices, used to cross-check the ray-casting path.
//!
//! Cell centers ("nodes") form a lattice. The axis-aligned segment between
//! two neighbouring nodes is classified exactly by rasterizing every
//! triangle along each axis. Indices spread from the outer layer (`-1/2`)
//! across segments that meet no triangle or pierce exactly one. Cells are
//! free when an exact separating-axis test shows that no triangle touches
//! the closed cell, and free cells sharing a face get the same label.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::arrangement::SceneGeometry;
use crate::error::{Error, Result};
use crate::exactgeom::{int, orient2d, rat, HalfInteger, Point3, Rational, SegmentHit, Sign, Triangle};
use crate::surface::Scene;

/// Cells of margin around the scene's bounding box on every side.
const MARGIN: i64 = 2;
/// The grid origin is nudged by `step / ORIGIN_NUDGE` so lattice lines avoid
/// the round coordinates that catalogue scenes use.
const ORIGIN_NUDGE: i64 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Clear,
    Single(i8),
    Blocked,
}

#[derive(Clone, Debug)]
pub struct VoxelGrid {
    pub origin: Point3,
    pub step: [Rational; 3],
    pub resolution: usize,
    /// Per cell, in `x + n·(y + n·z)` order.
    pub free: Vec<bool>,
    /// Region label of each free cell.
    pub labels: Vec<Option<u32>>,
    pub label_count: u32,
    /// Index at each cell center, when the spreading pass reached it.
    node_index: Vec<Option<HalfInteger>>,
}

pub type Cell = [usize; 3];

impl VoxelGrid {
    pub fn cell_id(&self, c: Cell) -> usize {
        let n = self.resolution;
        c[0] + n * (c[1] + n * c[2])
    }

    pub fn cell_of_id(&self, id: usize) -> Cell {
        let n = self.resolution;
        [id % n, (id / n) % n, id / (n * n)]
    }

    pub fn center(&self, c: Cell) -> Point3 {
        let coord = |k: usize| self.origin.coord(k) + &self.step[k] * rat(2 * c[k] as i64 + 1, 2);
        Point3::new(coord(0), coord(1), coord(2))
    }

    /// Cell whose half-open box contains `p`, if inside the grid.
    pub fn cell_containing(&self, p: &Point3) -> Option<Cell> {
        let mut out = [0usize; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = (p.coord(k) - self.origin.coord(k)) / &self.step[k];
            let i = t.floor().to_integer();
            let i: i64 = i.try_into().ok()?;
            if i < 0 || i >= self.resolution as i64 {
                return None;
            }
            *slot = i as usize;
        }
        Some(out)
    }

    pub fn is_free(&self, c: Cell) -> bool {
        self.free[self.cell_id(c)]
    }

    pub fn label(&self, c: Cell) -> Option<u32> {
        self.labels[self.cell_id(c)]
    }

    pub fn node_index(&self, c: Cell) -> Option<HalfInteger> {
        self.node_index[self.cell_id(c)]
    }
}

/// Builds the grid: free cells, region labels and node indices.
pub fn label_regions(scene: &Scene, resolution: usize) -> Result<VoxelGrid> {
    if resolution <= 2 * MARGIN as usize {
        return Err(Error::InvalidArgument(format!("resolution must exceed {}", 2 * MARGIN)));
    }
    let (lo, hi) = scene.bounding_box();
    let inner = int(resolution as i64 - 2 * MARGIN);
    let step: [Rational; 3] = std::array::from_fn(|k| {
        let extent = hi.coord(k) - lo.coord(k);
        let extent = if extent.is_zero() { int(1) } else { extent };
        extent / &inner
    });
    let origin = Point3::new(
        lo.coord(0) - &step[0] * int(MARGIN) + &step[0] / int(ORIGIN_NUDGE),
        lo.coord(1) - &step[1] * int(MARGIN) + &step[1] / int(ORIGIN_NUDGE),
        lo.coord(2) - &step[2] * int(MARGIN) + &step[2] / int(ORIGIN_NUDGE),
    );
    let n = resolution;
    let mut grid = VoxelGrid {
        origin,
        step,
        resolution: n,
        free: vec![true; n * n * n],
        labels: vec![None; n * n * n],
        label_count: 0,
        node_index: vec![None; n * n * n],
    };
    let geometry = SceneGeometry::new(scene);
    mark_cut_cells(&mut grid, &geometry.points);
    let edges = rasterize_edges(&grid, &geometry.points);
    flood_labels(&mut grid);
    spread_indices(&mut grid, &edges)?;
    Ok(grid)
}

fn index_range(grid: &VoxelGrid, k: usize, lo: f64, hi: f64, offset: f64) -> (usize, usize) {
    let o = crate::exactgeom::to_f64(grid.origin.coord(k));
    let s = crate::exactgeom::to_f64(&grid.step[k]);
    let a = ((lo - o) / s - offset).floor() as i64 - 1;
    let b = ((hi - o) / s - offset).ceil() as i64 + 1;
    let n = grid.resolution as i64;
    (a.clamp(0, n - 1) as usize, b.clamp(0, n - 1) as usize)
}

fn bounds_f64(t: &Triangle) -> ([f64; 3], [f64; 3]) {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in t {
        let c = p.to_f64();
        for k in 0..3 {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
    }
    (lo, hi)
}

fn mark_cut_cells(grid: &mut VoxelGrid, triangles: &[Triangle]) {
    let half: [Rational; 3] = std::array::from_fn(|k| &grid.step[k] / int(2));
    let half_f = half.each_ref().map(crate::exactgeom::to_f64);
    let origin_f = grid.origin.to_f64();
    let step_f = grid.step.each_ref().map(crate::exactgeom::to_f64);
    for tri in triangles {
        let tri_f = tri.each_ref().map(|p| p.to_f64());
        let axes_f: Vec<[f64; 3]> = separating_axes(tri).iter().map(|a| a.to_f64()).collect();
        let (lo, hi) = bounds_f64(tri);
        let r: [(usize, usize); 3] = std::array::from_fn(|k| index_range(grid, k, lo[k], hi[k], 0.0));
        for z in r[2].0..=r[2].1 {
            for y in r[1].0..=r[1].1 {
                for x in r[0].0..=r[0].1 {
                    let id = grid.cell_id([x, y, z]);
                    if !grid.free[id] {
                        continue;
                    }
                    let c = [x, y, z];
                    let center_f: [f64; 3] = std::array::from_fn(|k| origin_f[k] + (c[k] as f64 + 0.5) * step_f[k]);
                    let touches = match quick_box_triangle(&center_f, &half_f, &tri_f, &axes_f) {
                        Some(t) => t,
                        None => box_touches_triangle(&grid.center(c), &half, tri),
                    };
                    if touches {
                        grid.free[id] = false;
                    }
                }
            }
        }
    }
}

fn sub3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The nonzero candidate separating axes of a box/triangle pair: the box
/// normals, the triangle normal and the nine edge cross products.
fn separating_axes(tri: &Triangle) -> Vec<Point3> {
    let e = [&tri[1] - &tri[0], &tri[2] - &tri[1], &tri[0] - &tri[2]];
    let mut axes: Vec<Point3> = (0..3).map(Point3::axis).collect();
    axes.push(e[0].cross(&e[1]));
    for k in 0..3 {
        for edge in &e {
            axes.push(Point3::axis(k).cross(edge));
        }
    }
    axes.retain(|a| !a.is_zero());
    axes
}

/// Floating-point separating-axis test over exactly derived axes. It
/// answers only when every axis clears its decision by a wide relative
/// margin; `None` defers to the exact test.
fn quick_box_triangle(center: &[f64; 3], half: &[f64; 3], tri: &[[f64; 3]; 3], axes: &[[f64; 3]]) -> Option<bool> {
    const SLACK: f64 = 1e-9;
    let v = [sub3(&tri[0], center), sub3(&tri[1], center), sub3(&tri[2], center)];
    let reach = v
        .iter()
        .chain(std::iter::once(half))
        .flatten()
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut certain = true;
    for a in axes {
        let size = a.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let tol = SLACK * size * reach * 3.0;
        let p = [dot3(&v[0], a), dot3(&v[1], a), dot3(&v[2], a)];
        let r = half[0] * a[0].abs() + half[1] * a[1].abs() + half[2] * a[2].abs();
        let min = p[0].min(p[1]).min(p[2]);
        let max = p[0].max(p[1]).max(p[2]);
        if min > r + tol || max < -r - tol {
            return Some(false);
        }
        if !size.is_normal() || min > r - tol || max < -r + tol {
            certain = false;
        }
    }
    certain.then_some(true)
}

/// Exact separating-axis test between a closed box and a closed triangle.
pub fn box_touches_triangle(center: &Point3, half: &[Rational; 3], tri: &Triangle) -> bool {
    let v = [&tri[0] - center, &tri[1] - center, &tri[2] - center];
    separating_axes(tri).iter().all(|a| {
        let p = [v[0].dot(a), v[1].dot(a), v[2].dot(a)];
        let radius = (0..3).fold(Rational::zero(), |acc, k| acc + &half[k] * a.coord(k).abs());
        let min = p.iter().min().unwrap();
        let max = p.iter().max().unwrap();
        !(*min > radius || *max < -radius)
    })
}

type EdgeKey = (usize, usize);

/// Exact classification of every lattice segment that some triangle touches.
/// Indexed by `axis · n³ + id of the lower node`.
fn rasterize_edges(grid: &VoxelGrid, triangles: &[Triangle]) -> Vec<Edge> {
    let mut hits: HashMap<EdgeKey, Vec<Option<i8>>> = HashMap::new();
    let n = grid.resolution;
    let node = |k: usize, i: usize| grid.origin.coord(k) + &grid.step[k] * rat(2 * i as i64 + 1, 2);
    let origin_f = grid.origin.to_f64();
    let step_f = grid.step.each_ref().map(crate::exactgeom::to_f64);
    for tri in triangles {
        let tri_f = tri.each_ref().map(|p| p.to_f64());
        let (lo, hi) = bounds_f64(tri);
        let normal = crate::exactgeom::triangle_normal(tri);
        let normal_f = normal.to_f64();
        for k in 0..3 {
            let (u, v) = ((k + 1) % 3, (k + 2) % 3);
            let ru = index_range(grid, u, lo[u], hi[u], 0.5);
            let rv = index_range(grid, v, lo[v], hi[v], 0.5);
            let rk = index_range(grid, k, lo[k], hi[k], 0.5);
            let proj: [(Rational, Rational); 3] =
                std::array::from_fn(|m| (tri[m].coord(u).clone(), tri[m].coord(v).clone()));
            let orientation = orient2d(p2(&proj[0]), p2(&proj[1]), p2(&proj[2]));
            let proj_f: [[f64; 2]; 3] = std::array::from_fn(|m| [tri_f[m][u], tri_f[m][v]]);
            for j in rv.0..=rv.1 {
                let cv_f = origin_f[v] + (j as f64 + 0.5) * step_f[v];
                for i in ru.0..=ru.1 {
                    let cu_f = origin_f[u] + (i as f64 + 0.5) * step_f[u];
                    let mut line_key = [0usize; 3];
                    line_key[u] = i;
                    line_key[v] = j;
                    match quick_line(&proj_f, [cu_f, cv_f], orientation) {
                        QuickLine::Miss => continue,
                        QuickLine::Inside => {
                            let w = tri_f[0][k]
                                - (normal_f[u] * (cu_f - tri_f[0][u]) + normal_f[v] * (cv_f - tri_f[0][v]))
                                    / normal_f[k];
                            let t = (w - origin_f[k]) / step_f[k] - 0.5;
                            let frac = t - t.floor();
                            if frac > 1e-6 && frac < 1.0 - 1e-6 {
                                let m = t.floor() as i64;
                                if m >= 0 && m + 1 < n as i64 {
                                    line_key[k] = m as usize;
                                    let sign = if normal_f[k] > 0.0 { 1 } else { -1 };
                                    hits.entry((k, cell_key(n, line_key))).or_default().push(Some(sign));
                                }
                                continue;
                            }
                        }
                        QuickLine::Unknown => {}
                    }
                    let (cu, cv) = (node(u, i), node(v, j));
                    let q = (cu.clone(), cv.clone());
                    if orientation == Sign::Zero {
                        if on_projected_edge(&proj, &q) {
                            // The lattice line lies in the triangle's plane and meets it.
                            for m in rk.0..rk.1.min(n - 1) {
                                line_key[k] = m;
                                hits.entry((k, cell_key(n, line_key))).or_default().push(None);
                            }
                        }
                        continue;
                    }
                    let s: Vec<Sign> = (0..3)
                        .map(|m| orient2d(p2(&proj[m]), p2(&proj[(m + 1) % 3]), p2(&q)))
                        .collect();
                    let opposite = match orientation {
                        Sign::Positive => Sign::Negative,
                        _ => Sign::Positive,
                    };
                    if s.contains(&opposite) {
                        continue;
                    }
                    let boundary = s.contains(&Sign::Zero);
                    let w = tri[0].coord(k)
                        - (normal.coord(u) * (&cu - tri[0].coord(u)) + normal.coord(v) * (&cv - tri[0].coord(v)))
                            / normal.coord(k);
                    let t = (&w - grid.origin.coord(k)) / &grid.step[k] - rat(1, 2);
                    let f = t.floor();
                    let below: i64 = f.to_integer().try_into().unwrap_or(i64::MIN);
                    let mut push = |m: i64, value: Option<i8>| {
                        if m >= 0 && m + 1 < n as i64 {
                            line_key[k] = m as usize;
                            hits.entry((k, cell_key(n, line_key))).or_default().push(value);
                        }
                    };
                    if t == f {
                        push(below - 1, None);
                        push(below, None);
                    } else if boundary {
                        push(below, None);
                    } else {
                        push(below, Some(if normal.coord(k).is_positive() { 1 } else { -1 }));
                    }
                }
            }
        }
    }
    let cells = n * n * n;
    let mut edges = vec![Edge::Clear; 3 * cells];
    for ((k, lower), v) in hits {
        edges[k * cells + lower] = match v.as_slice() {
            [Some(s)] => Edge::Single(*s),
            _ => Edge::Blocked,
        };
    }
    edges
}

enum QuickLine {
    Miss,
    Inside,
    Unknown,
}

/// Floating-point shortcut for a lattice line against a projected triangle:
/// certainly outside, certainly strictly inside, or undecided. Edge-on
/// triangles are only ever certainly missed.
fn quick_line(proj: &[[f64; 2]; 3], q: [f64; 2], orientation: Sign) -> QuickLine {
    const SLACK: f64 = 1e-9;
    let scale = proj
        .iter()
        .flat_map(|p| [(p[0] - q[0]).abs(), (p[1] - q[1]).abs()])
        .fold(0.0f64, f64::max);
    let tol = SLACK * scale * scale * 4.0;
    let o: [f64; 3] = std::array::from_fn(|m| {
        let (a, b) = (proj[m], proj[(m + 1) % 3]);
        (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0])
    });
    let sign = match orientation {
        Sign::Zero => {
            return if o.iter().all(|x| x.abs() > tol) {
                QuickLine::Miss
            } else {
                QuickLine::Unknown
            }
        }
        Sign::Positive => 1.0,
        Sign::Negative => -1.0,
    };
    if o.iter().any(|&x| x * sign < -tol) {
        QuickLine::Miss
    } else if o.iter().all(|&x| x * sign > tol) {
        QuickLine::Inside
    } else {
        QuickLine::Unknown
    }
}

fn cell_key(n: usize, c: [usize; 3]) -> usize {
    c[0] + n * (c[1] + n * c[2])
}

fn p2(p: &(Rational, Rational)) -> (&Rational, &Rational) {
    (&p.0, &p.1)
}

/// Whether `q` lies on the closed 2D hull of a collinear projected triangle.
fn on_projected_edge(proj: &[(Rational, Rational); 3], q: &(Rational, Rational)) -> bool {
    (0..3).any(|m| {
        let (a, b) = (&proj[m], &proj[(m + 1) % 3]);
        orient2d(p2(a), p2(b), p2(q)) == Sign::Zero && between(&a.0, &b.0, &q.0) && between(&a.1, &b.1, &q.1)
    })
}

fn between(a: &Rational, b: &Rational, x: &Rational) -> bool {
    (a <= x && x <= b) || (b <= x && x <= a)
}

fn neighbours(n: usize, c: Cell) -> impl Iterator<Item = (usize, bool, Cell)> {
    (0..6).filter_map(move |m| {
        let (k, upward) = (m / 2, m % 2 == 0);
        let mut d = c;
        if upward && c[k] + 1 < n {
            d[k] += 1;
        } else if !upward && c[k] > 0 {
            d[k] -= 1;
        } else {
            return None;
        }
        Some((k, upward, d))
    })
}

fn is_outer(n: usize, c: Cell) -> bool {
    c.iter().any(|&i| i == 0 || i + 1 == n)
}

fn flood_labels(grid: &mut VoxelGrid) {
    let n = grid.resolution;
    let mut next = 0u32;
    for start in 0..grid.free.len() {
        if !grid.free[start] || grid.labels[start].is_some() {
            continue;
        }
        grid.labels[start] = Some(next);
        let mut queue = VecDeque::from([start]);
        while let Some(id) = queue.pop_front() {
            for (_, _, d) in neighbours(n, grid.cell_of_id(id)) {
                let did = grid.cell_id(d);
                if grid.free[did] && grid.labels[did].is_none() {
                    grid.labels[did] = Some(next);
                    queue.push_back(did);
                }
            }
        }
        next += 1;
    }
    grid.label_count = next;
}

/// Breadth-first spreading of node indices from the outer layer, with a
/// consistency check whenever a node is reached again.
fn spread_indices(grid: &mut VoxelGrid, edges: &[Edge]) -> Result<()> {
    let n = grid.resolution;
    let cells = n * n * n;
    let mut queue = VecDeque::new();
    for id in 0..grid.node_index.len() {
        if is_outer(n, grid.cell_of_id(id)) {
            grid.node_index[id] = Some(HalfInteger::MINUS_HALF);
            queue.push_back(id);
        }
    }
    while let Some(id) = queue.pop_front() {
        let c = grid.cell_of_id(id);
        let here = grid.node_index[id].expect("queued nodes are indexed");
        for (k, upward, d) in neighbours(n, c) {
            let lower = if upward { id } else { grid.cell_id(d) };
            // Stepping +k across a sheet with normal component n_k lowers the
            // index by sign(n_k).
            let there = match edges[k * cells + lower] {
                Edge::Clear => here,
                Edge::Blocked => continue,
                Edge::Single(s) => here.shift(if upward { -s as i64 } else { s as i64 }),
            };
            let did = grid.cell_id(d);
            match grid.node_index[did] {
                None => {
                    grid.node_index[did] = Some(there);
                    queue.push_back(did);
                }
                Some(known) if known != there => {
                    return Err(Error::Inconsistent(format!(
                        "voxel spreading reached {} with {known} and {there}",
                        grid.center(d)
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

/// Index of a free cell, from the spreading pass.
pub fn oracle_index(grid: &VoxelGrid, cell: Cell) -> Result<HalfInteger> {
    if !grid.is_free(cell) {
        return Err(Error::InvalidArgument(format!("cell {cell:?} is cut by the surface")));
    }
    grid.node_index(cell)
        .ok_or_else(|| Error::Inconsistent(format!("free cell {cell:?} was never reached")))
}

/// Index of an arbitrary off-surface point: walk a straight segment to a
/// nearby indexed node and add the signed crossings along it.
pub fn oracle_point_index(grid: &VoxelGrid, geometry: &SceneGeometry, p: &Point3) -> Result<HalfInteger> {
    if !geometry.triangles_containing(p).is_empty() {
        return Err(Error::OnSurface(p.to_string()));
    }
    let c = grid
        .cell_containing(p)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} lies outside the voxel grid")))?;
    let n = grid.resolution as i64;
    let mut candidates = Vec::new();
    for dz in -1..=1i64 {
        for dy in -1..=1i64 {
            for dx in -1..=1i64 {
                let d = [c[0] as i64 + dx, c[1] as i64 + dy, c[2] as i64 + dz];
                if d.iter().all(|&i| (0..n).contains(&i)) {
                    candidates.push((
                        [d[0] as usize, d[1] as usize, d[2] as usize],
                        dx.abs() + dy.abs() + dz.abs(),
                    ));
                }
            }
        }
    }
    candidates.sort_by_key(|(_, l1)| *l1);
    'node: for (cell, _) in candidates {
        let Some(base) = grid.node_index(cell) else { continue };
        let target = grid.center(cell);
        let mut steps = 0i64;
        for (_, hit) in geometry.segment_contacts(p, &target) {
            match hit {
                SegmentHit::Crossing { agree } => steps += if agree { 1 } else { -1 },
                _ => continue 'node,
            }
        }
        return Ok(base.shift(steps));
    }
    Err(Error::DegenerateSampling(format!(
        "no clean walk from {p} to an indexed voxel node"
    )))
}

/// Label-consistency: every free cell of one label carries one index.
pub fn check_label_consistency(grid: &VoxelGrid) -> Result<Vec<Option<HalfInteger>>> {
    let mut per_label: Vec<Option<HalfInteger>> = vec![None; grid.label_count as usize];
    for id in 0..grid.free.len() {
        let (Some(label), Some(index)) = (grid.labels[id], grid.node_index[id]) else {
            continue;
        };
        match per_label[label as usize] {
            None => per_label[label as usize] = Some(index),
            Some(known) if known != index => {
                return Err(Error::Inconsistent(format!(
                    "region label {label} carries indices {known} and {index}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(per_label)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub agree: usize,
    pub disagree: usize,
    /// First point where the two paths differ: `(point, ray index, voxel index)`.
    pub first_disagreement: Option<(Point3, HalfInteger, HalfInteger)>,
}

/// Compares ray-cast and voxel indices at the given points.
pub fn compare_at(
    grid: &VoxelGrid,
    geometry: &SceneGeometry,
    points: &[Point3],
    ray_seed: u64,
) -> Result<OracleComparison> {
    use rayon::prelude::*;
    let pairs: Vec<(Point3, HalfInteger, HalfInteger)> = points
        .par_iter()
        .map(|p| {
            let ray = crate::numbering::alexander_index_in(p, geometry, ray_seed)?;
            let voxel = oracle_point_index(grid, geometry, p)?;
            Ok((p.clone(), ray, voxel))
        })
        .collect::<Result<_>>()?;
    let mut out = OracleComparison {
        agree: 0,
        disagree: 0,
        first_disagreement: None,
    };
    for (p, ray, voxel) in pairs {
        if ray == voxel {
            out.agree += 1;
        } else {
            out.disagree += 1;
            out.first_disagreement.get_or_insert((p, ray, voxel));
        }
    }
    Ok(out)
}

/// Number of voxel cells per axis needed for `per_unit` cells per scene unit.
pub fn suggested_resolution(scene: &Scene, per_unit: i64) -> usize {
    let (lo, hi) = scene.bounding_box();
    let extent = (0..3)
        .map(|k| hi.coord(k) - lo.coord(k))
        .max()
        .unwrap_or_else(|| int(1));
    let cells = (extent * int(per_unit)).ceil().to_integer();
    let cells: i64 = cells.try_into().unwrap_or(i64::MAX);
    (cells.max(1) + 2 * MARGIN) as usize
}

/// Seeded pseudo-random rational points in the scene's bounding box,
/// skipping any that land on the surface.
pub fn random_off_surface_points(scene: &Scene, geometry: &SceneGeometry, count: usize, seed: u64) -> Vec<Point3> {
    use rand::{Rng, SeedableRng};
    const DENOMINATOR: i64 = 1 << 16;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = scene.bounding_box();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coord = |k: usize, rng: &mut rand_chacha::ChaCha8Rng| {
            let t = rat(rng.gen_range(0..=DENOMINATOR), DENOMINATOR);
            let (a, b) = (lo.coord(k).clone(), hi.coord(k).clone());
            &a + &(&(&b - &a) * &t)
        };
        let x = coord(0, &mut rng);
        let y = coord(1, &mut rng);
        let z = coord(2, &mut rng);
        let p = Point3::new(x, y, z);
        if geometry.triangles_containing(&p).is_empty() {
            out.push(p);
        }
    }
    out
}

/// Octant samples of every triple point plus `extra` random points, each
/// indexed by both paths.
pub fn oracle_check(scene: &Scene, resolution: usize, ray_seed: u64, extra: usize) -> Result<OracleComparison> {
    let analysis = crate::numbering::analyze(scene, ray_seed)?;
    let geometry = &analysis.arrangement.geometry;
    let grid = label_regions(scene, resolution)?;
    check_label_consistency(&grid)?;
    let mut points: Vec<Point3> = analysis
        .st2
        .per_triple_point
        .iter()
        .flat_map(|t| t.samples.iter().cloned())
        .collect();
    points.extend(random_off_surface_points(scene, geometry, extra, ray_seed));
    compare_at(&grid, geometry, &points, ray_seed)
}
