//! Acceptance suite: one PASS/FAIL line per criterion on standard output.
//! Runs without the libtest harness so the lines always print; exits
//! nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::generic_catalogue;
use st2::catalogue::{canned_move, canned_scene, Canned};
use st2::exactgeom::rat;
use st2::moves::{run_script, verify_event, EventVerdict, MoveKind, QClass};
use st2::numbering::{analyze, index_opposite_pair, st2_with_seed, Analysis, Octant, DEFAULT_RAY_SEED};
use st2::oracle::oracle_check;
use st2::surface::{apply, Scene, SceneTransform};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn analyses(scenes: &[(&'static str, Scene)]) -> Vec<(&'static str, st2::Result<Analysis>)> {
    scenes.iter().map(|(n, s)| (*n, analyze(s, DEFAULT_RAY_SEED))).collect()
}

/// Sorted octant indices are `d, d+1 (x3), d+2 (x3), d+3` and `2 ind = 2d + 3`.
fn eight_region_law(scenes: &[(&'static str, Scene)]) -> Outcome {
    let start = Instant::now();
    let all = analyses(scenes);
    let elapsed = start.elapsed();
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, a) in &all {
        let a = match a {
            Ok(a) => a,
            Err(e) => {
                bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        for t in &a.st2.per_triple_point {
            checked += 1;
            let mut d: Vec<i64> = t.octant_indices.iter().map(|h| h.doubled()).collect();
            d.sort();
            let expected: Vec<i64> = [0, 2, 2, 2, 4, 4, 4, 6].iter().map(|k| d[0] + k).collect();
            if d != expected || 2 * t.ind != d[0] + 3 {
                bad.push(format!("{name}: octants {d:?} ind {}", t.ind));
            }
        }
    }
    let budget = Duration::from_secs(5);
    Outcome::new(
        bad.is_empty() && checked >= 12 && elapsed < budget,
        format!(
            "{checked} triple points over {} scenes, {} violations, analysis {} (budget {}){}",
            scenes.len(),
            bad.len(),
            secs(elapsed),
            secs(budget),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

fn opposite_pair_law(scenes: &[(&'static str, Scene)]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, a) in analyses(scenes) {
        let Ok(a) = a else {
            bad.push(format!("{name}: analysis failed"));
            continue;
        };
        for t in &a.st2.per_triple_point {
            for o in Octant::ALL {
                checked += 1;
                let (avg, _) = index_opposite_pair(t, o);
                // Independent of the library's rounding: the exact mean.
                let doubled = t.octant(o).doubled() + t.octant(o.opposite()).doubled();
                if avg != t.ind || doubled != 4 * t.ind {
                    bad.push(format!("{name}: pair {o} mean {doubled}/4 vs ind {}", t.ind));
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty() && checked > 0,
        format!("{checked} opposite pairs (both orders), {} violations", bad.len()),
    )
}

fn q_delta_table() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, class) in [
        ("q3", QClass::Q3),
        ("q2", QClass::Q2),
        ("q1", QClass::Q1),
        ("q0", QClass::Q0),
    ] {
        match verify_event(&canned_move(name).unwrap()) {
            Ok(e) => {
                let hit = e.delta == class.delta() && e.delta.rem_euclid(2) == 1;
                ok &= hit;
                parts.push(format!(
                    "{class}: delta {} (want {}), moving sheet {}, static shift {}",
                    e.delta,
                    class.delta(),
                    e.moving_sheet_delta.map_or("?".into(), |d| d.to_string()),
                    e.static_shift.map_or("?".into(), |d| d.to_string()),
                ));
            }
            Err(err) => {
                ok = false;
                parts.push(format!("{class}: {err}"));
            }
        }
    }
    Outcome::new(ok, parts.join("; "))
}

fn tangency_invariance() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["e", "h", "t"] {
        match verify_event(&canned_move(name).unwrap()) {
            Ok(e) => {
                let mut hit = e.delta == 0;
                let mut part = format!("{}: delta {}", e.event.kind, e.delta);
                if e.event.kind == MoveKind::T {
                    let pair = e.t_pair_indices.clone().unwrap_or_default();
                    hit &= pair.len() == 2 && pair[0] == pair[1];
                    part += &format!(", created pair ind {pair:?}");
                }
                ok &= hit;
                parts.push(part);
            }
            Err(err) => {
                ok = false;
                parts.push(format!("{name}: {err}"));
            }
        }
    }
    Outcome::new(ok, parts.join("; "))
}

fn integrality(scenes: &[(&'static str, Scene)]) -> Outcome {
    const PERTURBATIONS: usize = 50;
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut check = |label: String, s: &Scene| -> bool {
        match st2_with_seed(s, DEFAULT_RAY_SEED) {
            Ok(r) => {
                checked += 1;
                // The sum over all 8|T| octants must be a multiple of 16
                // in doubled units for the total to be an integer.
                let doubled: i64 = r
                    .per_triple_point
                    .iter()
                    .flat_map(|t| t.octant_indices)
                    .map(|h| h.doubled())
                    .sum();
                if doubled.rem_euclid(16) != 0 || doubled / 16 != r.value {
                    bad.push(format!("{label}: doubled octant sum {doubled}"));
                }
                true
            }
            Err(st2::Error::NonGeneric { .. }) => false,
            Err(e) => {
                bad.push(format!("{label}: {e}"));
                true
            }
        }
    };
    for (name, s) in scenes {
        check(name.to_string(), s);
    }
    let mut perturbed = 0;
    let mut skipped = 0;
    let mut seed = 0u64;
    while perturbed < PERTURBATIONS && seed < 4 * PERTURBATIONS as u64 {
        let (name, s) = &scenes[seed as usize % scenes.len()];
        let t = SceneTransform::Perturb {
            seed,
            magnitude: rat(1, 1000),
        };
        let p = apply(&t, s).unwrap();
        if check(format!("{name} perturbed with seed {seed}"), &p) {
            perturbed += 1;
        } else {
            skipped += 1;
        }
        seed += 1;
    }
    Outcome::new(
        bad.is_empty() && perturbed == PERTURBATIONS,
        format!(
            "{checked} scenes ({} catalogue, {perturbed} perturbed, {skipped} non-generic perturbations skipped), {} failures",
            scenes.len(),
            bad.len()
        ),
    )
}

fn oracle_equivalence(scenes: &[(&'static str, Scene)]) -> Outcome {
    const RESOLUTIONS: [usize; 2] = [48, 96];
    let random_per_scene = 1000usize.div_ceil(scenes.len());
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for resolution in RESOLUTIONS {
        let (mut agree, mut disagree) = (0, 0);
        for (name, s) in scenes {
            match oracle_check(s, resolution, DEFAULT_RAY_SEED, random_per_scene) {
                Ok(c) => {
                    agree += c.agree;
                    disagree += c.disagree;
                    if let Some((p, ray, voxel)) = c.first_disagreement {
                        parts.push(format!("{name}@{resolution}: ray {ray} voxel {voxel} at {p}"));
                    }
                }
                Err(e) => {
                    ok = false;
                    parts.push(format!("{name}@{resolution}: {e}"));
                }
            }
        }
        ok &= disagree == 0;
        parts.push(format!("resolution {resolution}: {agree} agree, {disagree} disagree"));
    }
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(120);
    ok &= elapsed < budget;
    parts.push(format!(
        "{} random points per resolution, {} (budget {})",
        random_per_scene * scenes.len(),
        secs(elapsed),
        secs(budget)
    ));
    Outcome::new(ok, parts.join("; "))
}

fn convention_robustness(scenes: &[(&'static str, Scene)]) -> Outcome {
    const SEEDS: u64 = 10;
    let (mut negated, mut parity, mut seed_stable, mut identity) = (0, 0, 0, 0);
    let mut notes = Vec::new();
    for (name, s) in scenes {
        let base = st2_with_seed(s, DEFAULT_RAY_SEED).unwrap();
        let rev = st2_with_seed(&s.reversed(), DEFAULT_RAY_SEED).unwrap();
        let count = base.per_triple_point.len() as i64;
        negated += (rev.value == -base.value) as usize;
        parity += (rev.parity == base.parity) as usize;
        // Each index x maps to -1 - x, so every ind maps to -1 - ind.
        identity += (rev.value == -base.value - count) as usize;
        if rev.value != -base.value && notes.len() < 3 {
            notes.push(format!("{name}: {} -> {}", base.value, rev.value));
        }
        let stable = (0..SEEDS).all(|seed| {
            let r = st2_with_seed(s, seed).unwrap();
            r.per_triple_point
                .iter()
                .map(|t| t.octant_indices)
                .eq(base.per_triple_point.iter().map(|t| t.octant_indices))
        });
        seed_stable += stable as usize;
    }
    let n = scenes.len();
    Outcome::new(
        negated == n && parity == n && seed_stable == n,
        format!(
            "negated on {negated}/{n}, parity kept on {parity}/{n}, St' = -St - |T| on {identity}/{n}, \
             indices seed-stable over {SEEDS} seeds on {seed_stable}/{n}{}",
            if notes.is_empty() {
                String::new()
            } else {
                format!("; e.g. {}", notes.join(", "))
            }
        ),
    )
}

fn ledger_detection() -> Outcome {
    let Canned::Script(m) = canned_scene("demo-eversion-ledger").unwrap() else {
        return Outcome::new(false, "demo is not a script");
    };
    let first_q = m.events.iter().position(|e| e.kind == MoveKind::Q);
    match run_script(&m) {
        Ok(l) => {
            let deltas: Vec<String> = l
                .entries
                .iter()
                .map(|e| format!("{}:{}", e.event.kind, e.delta))
                .collect();
            Outcome::new(
                l.first_parity_flip.is_some() && l.first_parity_flip == first_q,
                format!(
                    "first Q event {first_q:?}, first_parity_flip {:?}, deltas [{}], verdict {}",
                    l.first_parity_flip,
                    deltas.join(" "),
                    match l.verdict {
                        EventVerdict::Consistent => "Consistent".to_string(),
                        EventVerdict::Inconsistent(_) => "Inconsistent".to_string(),
                    }
                ),
            )
        }
        Err(e) => Outcome::new(false, e.to_string()),
    }
}

fn main() {
    let scenes = generic_catalogue();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("eight-region law", Box::new(|| eight_region_law(&scenes))),
        ("opposite-pair law", Box::new(|| opposite_pair_law(&scenes))),
        ("Q-delta table", Box::new(q_delta_table)),
        ("E/H/T invariance", Box::new(tangency_invariance)),
        ("integrality", Box::new(|| integrality(&scenes))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&scenes))),
        ("convention robustness", Box::new(|| convention_robustness(&scenes))),
        ("ledger detection", Box::new(ledger_detection)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failures += (!o.pass) as usize;
        println!(
            "{} criterion {} {name}: {} [{}]",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            secs(start.elapsed())
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
