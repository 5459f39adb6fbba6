mod common;

use common::{brute_triple_points, generic_catalogue, segment_components};
use st2::arrangement::{genericity_check, Arrangement, Verdict};
use st2::catalogue::{scene_named, NON_GENERIC_NAMES};
use st2::exactgeom::{point_on_closed_triangle, rat, triangle_triangle_intersection, Point3, TriTriIntersection};
use std::collections::BTreeSet;

use st2::exactgeom::HalfInteger;
use st2::oracle::label_regions;
use st2::surface::{apply, gen_sphere, Scene, SceneTransform};

fn build(name: &str) -> Arrangement {
    Arrangement::build(&scene_named(name).unwrap()).unwrap()
}

fn sorted_locations(a: &Arrangement) -> Vec<Point3> {
    let mut v: Vec<Point3> = a.triple_points.iter().map(|t| t.location.clone()).collect();
    v.sort_by_key(|p| p.to_string());
    v
}

fn segment_pairs(a: &Arrangement) -> Vec<(Point3, Point3)> {
    a.segments.iter().map(|s| s.endpoints.clone()).collect()
}

#[test]
fn triple_points_match_brute_force_on_catalogue() {
    for (name, scene) in generic_catalogue() {
        let a = Arrangement::build(&scene).unwrap();
        assert_eq!(sorted_locations(&a), brute_triple_points(&scene), "{name}");
    }
}

#[test]
fn three_slabs_have_eight_corner_triple_points() {
    let a = build("three-slabs");
    assert_eq!(a.triple_points.len(), 8);
    // The corners of the central cuboid, one coordinate from each slab.
    let mut expected = Vec::new();
    for sx in [-1, 1] {
        for sy in [-1, 1] {
            for sz in [-1, 1] {
                expected.push(Point3::new(rat(sx, 1), rat(sy, 1), rat(sz, 1)));
            }
        }
    }
    expected.sort_by_key(|p| p.to_string());
    assert_eq!(sorted_locations(&a), expected);
    assert_eq!(a.curves.len(), 3);
    assert_eq!(segment_components(&segment_pairs(&a)), 3);
}

#[test]
fn overlapping_spheres_stitch_into_one_curve() {
    let a = build("two-spheres");
    assert!(!a.segments.is_empty());
    assert_eq!(segment_components(&segment_pairs(&a)), 1);
    assert_eq!(a.curves.len(), 1);
    assert!(a.triple_points.is_empty());
}

#[test]
fn three_spheres_have_two_triple_points() {
    let scene = scene_named("three-spheres").unwrap();
    let a = Arrangement::build(&scene).unwrap();
    assert_eq!(brute_triple_points(&scene).len(), 2);
    assert_eq!(a.triple_points.len(), 2);
    assert_eq!(segment_components(&segment_pairs(&a)), a.curves.len());
}

#[test]
fn disjoint_spheres_have_no_double_locus() {
    let s = Scene::new(vec![
        gen_sphere(&Point3::zero(), &rat(1, 1), 1).unwrap(),
        gen_sphere(&Point3::from_ints(5, 1, 0), &rat(1, 1), 1).unwrap(),
    ])
    .unwrap();
    let a = Arrangement::build(&s).unwrap();
    assert!(a.segments.is_empty() && a.curves.is_empty() && a.triple_points.is_empty());
}

#[test]
fn curves_match_segment_graph_on_catalogue() {
    for (name, scene) in generic_catalogue() {
        let a = Arrangement::build(&scene).unwrap();
        assert_eq!(a.curves.len(), segment_components(&segment_pairs(&a)), "{name}");
        let total: usize = a.curves.iter().map(|c| c.segments.len()).sum();
        assert_eq!(total, a.segments.len(), "{name}");
    }
}

#[test]
fn segments_match_all_pairs_scan() {
    for name in ["three-slabs", "two-spheres", "q2-before", "h-move-after"] {
        let scene = scene_named(name).unwrap();
        let a = Arrangement::build(&scene).unwrap();
        let tris = scene.triangles();
        let mut brute = 0;
        for i in 0..tris.len() {
            for j in i + 1..tris.len() {
                if tris[i].is_adjacent(&tris[j]) {
                    continue;
                }
                match triangle_triangle_intersection(&tris[i].points, &tris[j].points) {
                    TriTriIntersection::Segment(..) => brute += 1,
                    TriTriIntersection::Empty => {}
                    TriTriIntersection::NonGenericContact => panic!("{name}: contact between {i} and {j}"),
                }
            }
        }
        assert_eq!(a.segments.len(), brute, "{name}");
    }
}

#[test]
fn every_triple_point_lies_on_three_segments() {
    for name in ["three-slabs", "three-spheres", "q0-after", "t-move-after"] {
        let a = build(name);
        for t in &a.triple_points {
            let [i, j, k] = t.triangles();
            let pairs = [(i, j), (i, k), (j, k)];
            let on: usize = a
                .segments
                .iter()
                .filter(|s| pairs.contains(&s.triangle_pair))
                .filter(|s| {
                    let (p, q) = &s.endpoints;
                    let d = q - p;
                    let w = &t.location - p;
                    d.cross(&w).is_zero() && w.dot(&d) > rat(0, 1) && w.dot(&d) < d.dot(&d)
                })
                .count();
            assert_eq!(on, 3, "{name} at {}", t.location);
            for (n, id) in t.plane_normals.iter().zip(t.triangles()) {
                assert_eq!(n, &a.geometry.normals[id]);
                assert!(point_on_closed_triangle(&t.location, &a.geometry.points[id]));
            }
        }
    }
}

#[test]
fn genericity_verdicts() {
    assert!(genericity_check(&scene_named("sphere").unwrap()).is_generic());
    for name in NON_GENERIC_NAMES {
        match genericity_check(&scene_named(name).unwrap()).verdict {
            Verdict::NonGeneric(w) => assert!(!w.is_empty(), "{name}"),
            Verdict::Generic => panic!("{name} should not be generic"),
        }
    }
}

#[test]
fn similarities_move_triple_points_along() {
    let s = scene_named("three-slabs").unwrap();
    let base = sorted_locations(&Arrangement::build(&s).unwrap());
    let three = rat(3, 1);
    let scaled = apply(&SceneTransform::Scale(three.clone()), &s).unwrap();
    let mut expected: Vec<Point3> = base.iter().map(|p| p * &three).collect();
    expected.sort_by_key(|p| p.to_string());
    assert_eq!(sorted_locations(&Arrangement::build(&scaled).unwrap()), expected);
    let v = Point3::new(rat(1, 3), rat(-2, 5), rat(7, 11));
    let moved = apply(&SceneTransform::Translate(v.clone()), &s).unwrap();
    let mut expected: Vec<Point3> = base.iter().map(|p| p + &v).collect();
    expected.sort_by_key(|p| p.to_string());
    assert_eq!(sorted_locations(&Arrangement::build(&moved).unwrap()), expected);
}

#[test]
fn build_is_deterministic() {
    let s = scene_named("q1-after").unwrap();
    let a = Arrangement::build(&s).unwrap();
    let b = Arrangement::build(&s).unwrap();
    assert_eq!(a.segments, b.segments);
    assert_eq!(a.curves, b.curves);
    assert_eq!(a.triple_points, b.triple_points);
}

fn voxel_index_values(scene: &Scene, resolution: usize) -> (BTreeSet<HalfInteger>, u32) {
    let grid = label_regions(scene, resolution).unwrap();
    let n = grid.resolution;
    let mut seen = BTreeSet::new();
    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                if let Some(h) = grid.node_index([x, y, z]) {
                    seen.insert(h);
                }
            }
        }
    }
    (seen, grid.label_count)
}

#[test]
fn voxel_index_values_per_scene() {
    // (scene, complement regions, doubled index values present)
    let cases: [(&str, u32, &[i64]); 5] = [
        ("sphere", 2, &[-1, 1]),
        ("nested-spheres", 3, &[-1, 1, 3]),
        ("two-spheres", 4, &[-1, 1, 3]),
        ("three-spheres", 8, &[-1, 1, 3, 5]),
        ("three-slabs", 2, &[-1, 1, 3, 5]),
    ];
    for (name, regions, doubled) in cases {
        let scene = scene_named(name).unwrap();
        let expected: BTreeSet<HalfInteger> = doubled.iter().map(|&d| HalfInteger::from_doubled(d).unwrap()).collect();
        for resolution in [40, 56] {
            let (seen, labels) = voxel_index_values(&scene, resolution);
            assert_eq!(seen, expected, "{name} at {resolution}");
            // Thin regions may split into several face-connected pieces of
            // free cells, so labels only bound the region count from above.
            assert!(labels >= regions, "{name} at {resolution}: {labels} labels");
        }
    }
}
