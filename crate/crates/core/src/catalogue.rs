//! Named scenes and scripts: concrete meshes for each local jump.
//!
//! Every move is staged on three mutually transverse slabs whose faces
//! `x = 1`, `y = 1`, `z = 1` meet at the corner `(1, 1, 1)`. Slab centers are
//! offset within their planes so no face diagonal passes through a corner.

use crate::error::{Error, Result};
use crate::exactgeom::{int, rat, Point3, Rational};
use crate::moves::{EventSpec, Locus, MoveEvent, MoveKind, MoveScript, QClass};
use crate::surface::{gen_prism, gen_slab, gen_sphere, Mesh, Scene};

pub const SCENE_NAMES: &[&str] = &[
    "sphere",
    "two-spheres",
    "three-spheres",
    "nested-spheres",
    "three-slabs",
    "tangent-spheres",
    "q-wall",
    "e-move-before",
    "e-move-after",
    "h-move-before",
    "h-move-after",
    "t-move-before",
    "t-move-after",
    "q3-before",
    "q3-after",
    "q2-before",
    "q2-after",
    "q1-before",
    "q1-after",
    "q0-before",
    "q0-after",
];

pub const SCRIPT_NAMES: &[&str] = &["demo-eversion-ledger"];

/// Names of catalogue scenes that are deliberately not generic.
pub const NON_GENERIC_NAMES: &[&str] = &["tangent-spheres", "q-wall"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canned {
    Scene(Scene),
    Script(MoveScript),
}

fn p(x: Rational, y: Rational, z: Rational) -> Point3 {
    Point3::new(x, y, z)
}

fn labelled(mut m: Mesh, label: &str) -> Mesh {
    m.label = label.to_string();
    m
}

fn orient(m: Mesh, reversed: bool) -> Mesh {
    if reversed {
        m.reversed()
    } else {
        m
    }
}

/// Slabs of half thickness 1 and half width 10 around the three
/// coordinate planes; `reversed[i]` flips slab `i`'s coorientation.
pub fn slabs(reversed: [bool; 3]) -> Vec<Mesh> {
    let centers = [
        p(int(0), rat(3, 7), rat(-2, 9)),
        p(rat(-2, 9), int(0), rat(3, 7)),
        p(rat(3, 7), rat(-2, 9), int(0)),
    ];
    centers
        .iter()
        .enumerate()
        .map(|(axis, c)| {
            orient(
                gen_slab(c, axis, &int(1), &int(10)).expect("valid slab"),
                reversed[axis],
            )
        })
        .collect()
}

fn octahedron(center: Point3, radius: Rational, label: &str) -> Mesh {
    labelled(gen_sphere(&center, &radius, 0).expect("valid octahedron"), label)
}

/// The moving sheet of a Q move: an octahedron whose `(-,-,-)` face sweeps
/// over the corner as `offset` drops through `1/10`.
fn q_sheet(offset: Rational) -> Mesh {
    let c = int(1) + offset;
    octahedron(p(c.clone(), c.clone(), c), rat(3, 10), "sheet-a")
}

fn q_offset(after: bool) -> Rational {
    if after {
        rat(1, 20)
    } else {
        rat(1, 8)
    }
}

/// An octahedron near the double line `x = y = 1` at height 5; it pierces
/// the line only after the move.
fn t_sheet(after: bool, reversed: bool) -> Mesh {
    let s = if after { rat(1, 5) } else { rat(3, 10) };
    let c = int(1) + s;
    orient(octahedron(p(c.clone(), c, int(5)), rat(1, 2), "t-sheet"), reversed)
}

/// An octahedron pushed into the face `x = 1` far from other sheets.
fn e_sheet(after: bool) -> Mesh {
    let x = if after { rat(13, 10) } else { rat(8, 5) };
    octahedron(p(x, int(5), int(5)), rat(1, 2), "e-sheet")
}

/// A U-shaped prism (two prongs on a bar) and a thin horizontal slab that
/// cuts both prongs before the move and the bar plus both prongs after it.
fn h_pieces(after: bool) -> Vec<Mesh> {
    let u_profile_xz = [(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)];
    // Extruded along y, profile coordinates are (z, x); swapping reverses
    // the winding, so walk the outline backwards.
    let profile: Vec<(Rational, Rational)> = u_profile_xz.iter().rev().map(|&(x, z)| (int(z), int(x + 20))).collect();
    let prism = gen_prism("h-prism", &profile, 1, &int(0), &int(1)).expect("valid prism");
    let z = if after { int(1) } else { rat(5, 4) };
    let slab = gen_slab(
        &p(rat(43, 2) + rat(1, 7), rat(1, 2) + rat(1, 11), z),
        2,
        &rat(1, 8),
        &int(3),
    )
    .expect("valid slab");
    vec![prism, labelled(slab, "h-slab")]
}

fn scene(meshes: Vec<Mesh>) -> Scene {
    Scene::new(meshes).expect("catalogue scenes validate")
}

fn q_reversals(class: QClass) -> [bool; 3] {
    match class {
        QClass::Q3 => [false, false, false],
        QClass::Q2 => [true, false, false],
        QClass::Q1 => [true, true, false],
        QClass::Q0 => [true, true, true],
    }
}

fn q_scene(class: QClass, after: bool) -> Scene {
    let mut meshes = slabs(q_reversals(class));
    meshes.push(q_sheet(q_offset(after)));
    scene(meshes)
}

/// Witness points: just outside the corner before the move, and just
/// inside its opposite octant after.
pub fn q_witness() -> (Point3, Point3) {
    let a = rat(51, 50);
    let b = rat(49, 50);
    (p(a.clone(), a.clone(), a), p(b.clone(), b.clone(), b))
}

pub fn q_locus() -> Locus {
    Locus {
        center: Point3::from_ints(1, 1, 1),
        radius: rat(3, 4),
    }
}

pub fn t_locus() -> Locus {
    Locus {
        center: Point3::from_ints(1, 1, 5),
        radius: rat(1, 2),
    }
}

fn q_spec(class: QClass) -> EventSpec {
    EventSpec {
        kind: MoveKind::Q,
        claimed_q_class: Some(class),
        witness: Some(q_witness()),
        locus: Some(q_locus()),
    }
}

fn t_spec() -> EventSpec {
    EventSpec {
        locus: Some(t_locus()),
        ..EventSpec::new(MoveKind::T)
    }
}

fn sphere_center() -> Point3 {
    p(rat(1, 7), rat(1, 11), rat(-1, 13))
}

fn spheres(centers: &[(i64, i64, i64)], radius: Rational, denominator: i64) -> Vec<Mesh> {
    let o = sphere_center();
    centers
        .iter()
        .map(|&(x, y, z)| {
            let c = &o + &p(rat(x, denominator), rat(y, denominator), rat(z, denominator));
            gen_sphere(&c, &radius, 2).expect("valid sphere")
        })
        .collect()
}

pub fn canned_scene(name: &str) -> Result<Canned> {
    let s = match name {
        "sphere" => scene(spheres(&[(0, 0, 0)], int(1), 1)),
        // (2, 1, 2)/3 and (-2, 3, 6)/7 are unit vectors off the lattice axes.
        "two-spheres" => scene(spheres(&[(0, 0, 0), (14, 7, 14)], int(1), 21)),
        "three-spheres" => scene(spheres(&[(0, 0, 0), (14, 7, 14), (-6, 9, 18)], int(1), 21)),
        "nested-spheres" => {
            let outer = gen_sphere(&sphere_center(), &int(2), 2).expect("valid sphere");
            let inner = gen_sphere(&(&sphere_center() + &p(rat(1, 5), rat(1, 7), rat(1, 9))), &int(1), 2)
                .expect("valid sphere");
            scene(vec![outer, inner])
        }
        "three-slabs" => scene(slabs([false; 3])),
        "tangent-spheres" => scene(vec![
            octahedron(Point3::zero(), int(1), "sphere"),
            octahedron(Point3::from_ints(2, 0, 0), int(1), "sphere"),
        ]),
        "q-wall" => {
            let mut m = slabs([false; 3]);
            m.push(q_sheet(rat(1, 10)));
            scene(m)
        }
        "e-move-before" | "e-move-after" => {
            let mut m = slabs([false; 3]);
            m.push(e_sheet(name.ends_with("after")));
            scene(m)
        }
        "h-move-before" | "h-move-after" => {
            let mut m = slabs([false; 3]);
            m.extend(h_pieces(name.ends_with("after")));
            scene(m)
        }
        "t-move-before" | "t-move-after" => {
            let mut m = slabs([false; 3]);
            m.push(t_sheet(name.ends_with("after"), true));
            scene(m)
        }
        "demo-eversion-ledger" => return Ok(Canned::Script(demo_script())),
        _ => {
            let class = q_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
            q_scene(class, name.ends_with("after"))
        }
    };
    Ok(Canned::Scene(s))
}

fn q_name(name: &str) -> Option<QClass> {
    let (class, side) = name.split_once('-')?;
    if side != "before" && side != "after" {
        return None;
    }
    class.to_uppercase().parse().ok()
}

/// A catalogue scene by name, rejecting script names.
pub fn scene_named(name: &str) -> Result<Scene> {
    match canned_scene(name)? {
        Canned::Scene(s) => Ok(s),
        Canned::Script(_) => Err(Error::InvalidArgument(format!("`{name}` names a script, not a scene"))),
    }
}

/// The canned before/after pair for `e`, `h`, `t`, `q3`, `q2`, `q1` or `q0`,
/// with its event metadata.
pub fn canned_move(name: &str) -> Result<MoveEvent> {
    let spec = match name {
        "e" => EventSpec::new(MoveKind::E),
        "h" => EventSpec::new(MoveKind::H),
        "t" => t_spec(),
        _ => q_spec(
            name.to_uppercase()
                .parse()
                .map_err(|_| Error::UnknownName(name.to_string()))?,
        ),
    };
    let stem = match name {
        "e" | "h" | "t" => format!("{name}-move"),
        _ => name.to_string(),
    };
    Ok(MoveEvent {
        spec,
        before: scene_named(&format!("{stem}-before"))?,
        after: scene_named(&format!("{stem}-after"))?,
    })
}

pub const MOVE_NAMES: &[&str] = &["e", "h", "t", "q3", "q2", "q1", "q0"];

/// One world holding every move's pieces, with slab `x` reversed so the Q
/// piece is a Q2 move; the script runs E, T, Q2, H in that order.
fn demo_script() -> MoveScript {
    let world = |e: bool, t: bool, q: bool, h: bool| {
        let mut m = slabs(q_reversals(QClass::Q2));
        m.push(q_sheet(q_offset(q)));
        // With slab x reversed the new triple points already have index 0
        // on the outward octahedron.
        m.push(t_sheet(t, false));
        m.push(e_sheet(e));
        m.extend(h_pieces(h));
        scene(m)
    };
    let scenes = vec![
        world(false, false, false, false),
        world(true, false, false, false),
        world(true, true, false, false),
        world(true, true, true, false),
        world(true, true, true, true),
    ];
    let events = vec![
        EventSpec::new(MoveKind::E),
        t_spec(),
        q_spec(QClass::Q2),
        EventSpec::new(MoveKind::H),
    ];
    MoveScript::new("demo eversion ledger", scenes, events).expect("consistent demo script")
}
