//! Independent oracles shared by the integration tests. Nothing here calls
//! into the arrangement code under test.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use st2::catalogue::{scene_named, NON_GENERIC_NAMES, SCENE_NAMES};
use st2::exactgeom::{to_f64, Point3, Rational, Triangle, Vector3};
use st2::surface::Scene;

fn normal(t: &Triangle) -> Vector3 {
    (&t[1] - &t[0]).cross(&(&t[2] - &t[0]))
}

fn bounds(t: &Triangle) -> ([f64; 3], [f64; 3]) {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in t {
        for k in 0..3 {
            let v = to_f64(p.coord(k));
            lo[k] = lo[k].min(v - 1e-9 * (1.0 + v.abs()));
            hi[k] = hi[k].max(v + 1e-9 * (1.0 + v.abs()));
        }
    }
    (lo, hi)
}

fn overlap(a: &([f64; 3], [f64; 3]), b: &([f64; 3], [f64; 3])) -> bool {
    (0..3).all(|k| a.0[k] <= b.1[k] && b.0[k] <= a.1[k])
}

fn det(a: &Vector3, b: &Vector3, c: &Vector3) -> Rational {
    a.dot(&b.cross(c))
}

/// Strict interior test for a point already known to lie in the plane.
fn strictly_inside(p: &Point3, t: &Triangle, n: &Vector3) -> bool {
    (0..3).all(|i| {
        let a = &t[i];
        let b = &t[(i + 1) % 3];
        (b - a).cross(&(p - a)).dot(n).is_positive()
    })
}

/// Every point interior to three triangles from pairwise distinct vertex
/// sets, by solving each triple's plane system with Cramer's rule.
pub fn brute_triple_points(scene: &Scene) -> Vec<Point3> {
    let tris = scene.triangles();
    let boxes: Vec<_> = tris.iter().map(|t| bounds(&t.points)).collect();
    let normals: Vec<Vector3> = tris.iter().map(|t| normal(&t.points)).collect();
    let apart = |i: usize, j: usize| {
        tris[i].mesh != tris[j].mesh || !tris[i].vertex_ids.iter().any(|v| tris[j].vertex_ids.contains(v))
    };
    let n = tris.len();
    let mut found = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !overlap(&boxes[i], &boxes[j]) || !apart(i, j) {
                continue;
            }
            for k in j + 1..n {
                if !overlap(&boxes[i], &boxes[k]) || !overlap(&boxes[j], &boxes[k]) || !apart(i, k) || !apart(j, k) {
                    continue;
                }
                let (a, b, c) = (&normals[i], &normals[j], &normals[k]);
                let d = det(a, b, c);
                if d.is_zero() {
                    continue;
                }
                let rhs = [
                    a.dot(&tris[i].points[0]),
                    b.dot(&tris[j].points[0]),
                    c.dot(&tris[k].points[0]),
                ];
                // Solution is (rhs0 (b×c) + rhs1 (c×a) + rhs2 (a×b)) / det.
                let p = &(&(&b.cross(c) * &rhs[0]) + &(&c.cross(a) * &rhs[1])) + &(&a.cross(b) * &rhs[2]);
                let p = &p * &(Rational::from_integer(1.into()) / &d);
                if strictly_inside(&p, &tris[i].points, a)
                    && strictly_inside(&p, &tris[j].points, b)
                    && strictly_inside(&p, &tris[k].points, c)
                {
                    found.push(p);
                }
            }
        }
    }
    found.sort_by_key(|p| p.to_string());
    found
}

/// Connected components of a set of segments joined at shared endpoints.
pub fn segment_components(segments: &[(Point3, Point3)]) -> usize {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut parent: Vec<usize> = Vec::new();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut id = |p: &Point3, parent: &mut Vec<usize>| {
        let next = ids.len();
        let i = *ids.entry(p.to_string()).or_insert(next);
        if i == parent.len() {
            parent.push(i);
        }
        i
    };
    for (p, q) in segments {
        let a = id(p, &mut parent);
        let b = id(q, &mut parent);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..parent.len()).filter(|&x| find(&mut parent, x) == x).count()
}

/// Catalogue scenes expected to be generic, by name.
pub fn generic_catalogue() -> Vec<(&'static str, Scene)> {
    SCENE_NAMES
        .iter()
        .filter(|n| !NON_GENERIC_NAMES.contains(n))
        .map(|&n| (n, scene_named(n).expect("catalogue scene")))
        .collect()
}
