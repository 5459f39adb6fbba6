//! Verification of the four codimension-one jumps from before/after
//! snapshots, and ledgers over scripted sequences of them.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::{fmt_rational, Point3, Rational, Sign};
use crate::numbering::{alexander_index_in, analyze, distance_squared, Analysis, Octant, Transition, DEFAULT_RAY_SEED};
use crate::surface::{parse_rational_token, parse_scene, write_scene, Scene};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    E,
    H,
    T,
    Q,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::E => "E",
            MoveKind::H => "H",
            MoveKind::T => "T",
            MoveKind::Q => "Q",
        })
    }
}

impl FromStr for MoveKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(MoveKind::E),
            "H" => Ok(MoveKind::H),
            "T" => Ok(MoveKind::T),
            "Q" => Ok(MoveKind::Q),
            _ => Err(Error::InvalidArgument(format!("unknown move kind `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QClass {
    Q0,
    Q1,
    Q2,
    Q3,
}

impl QClass {
    /// Tabulated change of `St₂` under a move of this class.
    pub fn delta(self) -> i64 {
        match self {
            QClass::Q3 => 3,
            QClass::Q2 => 1,
            QClass::Q1 => -1,
            QClass::Q0 => -3,
        }
    }

    pub fn from_transition(t: Transition) -> Self {
        match t {
            Transition::ThreeUp => QClass::Q3,
            Transition::OneUp => QClass::Q2,
            Transition::OneDown => QClass::Q1,
            Transition::ThreeDown => QClass::Q0,
        }
    }

    /// The class obtained by reversing all three static sheets.
    pub fn reversed(self) -> Self {
        match self {
            QClass::Q0 => QClass::Q3,
            QClass::Q1 => QClass::Q2,
            QClass::Q2 => QClass::Q1,
            QClass::Q3 => QClass::Q0,
        }
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", *self as u8)
    }
}

impl FromStr for QClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q0" => Ok(QClass::Q0),
            "Q1" => Ok(QClass::Q1),
            "Q2" => Ok(QClass::Q2),
            "Q3" => Ok(QClass::Q3),
            _ => Err(Error::InvalidArgument(format!("unknown Q class `{s}`"))),
        }
    }
}

/// A closed ball bounding where an event happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub center: Point3,
    pub radius: Rational,
}

impl Locus {
    pub fn contains(&self, p: &Point3) -> bool {
        distance_squared(p, &self.center) <= &self.radius * &self.radius
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", compact_point(&self.center), fmt_rational(&self.radius))
    }
}

/// Declared metadata of one event, independent of the scenes it joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventSpec {
    pub kind: MoveKind,
    pub claimed_q_class: Option<QClass>,
    /// `(r_before, r_after)`: the region the moving sheet leaves, and the
    /// opposite region it enters.
    pub witness: Option<(Point3, Point3)>,
    pub locus: Option<Locus>,
}

impl EventSpec {
    pub fn new(kind: MoveKind) -> Self {
        Self {
            kind,
            claimed_q_class: None,
            witness: None,
            locus: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.claimed_q_class.is_some() && self.kind != MoveKind::Q {
            return Err(Error::InvalidArgument(
                "a Q class can only be claimed for Q events".into(),
            ));
        }
        if self.claimed_q_class.is_some() && self.witness.is_none() {
            return Err(Error::InvalidArgument(
                "a claimed Q class requires witness points".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for EventSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(q) = self.claimed_q_class {
            write!(f, " qclass={q}")?;
        }
        if let Some((a, b)) = &self.witness {
            write!(f, " witness={}->{}", compact_point(a), compact_point(b))?;
        }
        if let Some(l) = &self.locus {
            write!(f, " locus={l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveEvent {
    pub spec: EventSpec,
    pub before: Scene,
    pub after: Scene,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventVerdict {
    Consistent,
    Inconsistent(String),
}

impl EventVerdict {
    pub fn is_consistent(&self) -> bool {
        *self == EventVerdict::Consistent
    }
}

impl fmt::Display for EventVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventVerdict::Consistent => f.write_str("Consistent"),
            EventVerdict::Inconsistent(r) => write!(f, "Inconsistent({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub event: EventSpec,
    pub st_before: i64,
    pub st_after: i64,
    pub delta: i64,
    pub verdict: EventVerdict,
    pub triple_points_before: usize,
    pub triple_points_after: usize,
    pub curves_before: usize,
    pub curves_after: usize,
    /// Class read off the witness points, for Q events that carry them.
    pub observed_q_class: Option<QClass>,
    /// Change of `ind` at the static triple point inside the locus.
    pub static_shift: Option<i64>,
    /// Change of `Σ ind` over the remaining triple points inside the locus.
    pub moving_sheet_delta: Option<i64>,
    /// Indices of the triple points that a T event creates or removes.
    pub t_pair_indices: Option<Vec<i64>>,
}

pub fn verify_event(e: &MoveEvent) -> Result<LedgerEntry> {
    verify_event_with_seed(e, DEFAULT_RAY_SEED)
}

pub fn verify_event_with_seed(e: &MoveEvent, ray_seed: u64) -> Result<LedgerEntry> {
    e.spec.validate()?;
    let (before, after) = rayon::join(|| analyze(&e.before, ray_seed), || analyze(&e.after, ray_seed));
    verify_analyzed(&e.spec, &before?, &after?, ray_seed)
}

fn locus_summary(a: &Analysis, locus: &Locus) -> Vec<(Point3, i64)> {
    a.st2
        .per_triple_point
        .iter()
        .map(|ti| (a.arrangement.triple_points[ti.triple_point].location.clone(), ti.ind))
        .filter(|(p, _)| locus.contains(p))
        .collect()
}

/// Splits the change inside the locus into the part carried by triple
/// points present at the same place on both sides and the rest.
fn split_locus_delta(before: &Analysis, after: &Analysis, locus: &Locus) -> (i64, i64, Vec<i64>, Vec<i64>) {
    let b = locus_summary(before, locus);
    let a = locus_summary(after, locus);
    let mut static_shift = 0;
    let mut gone = Vec::new();
    let mut born = Vec::new();
    for (p, ind) in &b {
        match a.iter().find(|(q, _)| q == p) {
            Some((_, j)) => static_shift += j - ind,
            None => gone.push(*ind),
        }
    }
    for (p, ind) in &a {
        if !b.iter().any(|(q, _)| q == p) {
            born.push(*ind);
        }
    }
    let moving = born.iter().sum::<i64>() - gone.iter().sum::<i64>();
    (static_shift, moving, gone, born)
}

/// Ledger entry from analyses already computed for both scenes.
pub fn verify_analyzed(spec: &EventSpec, before: &Analysis, after: &Analysis, ray_seed: u64) -> Result<LedgerEntry> {
    spec.validate()?;
    let (st_before, st_after) = (before.st2.value, after.st2.value);
    let delta = st_after - st_before;
    let (tb, ta) = (
        before.arrangement.triple_points.len(),
        after.arrangement.triple_points.len(),
    );
    let mut entry = LedgerEntry {
        event: spec.clone(),
        st_before,
        st_after,
        delta,
        verdict: EventVerdict::Consistent,
        triple_points_before: tb,
        triple_points_after: ta,
        curves_before: before.arrangement.curves.len(),
        curves_after: after.arrangement.curves.len(),
        observed_q_class: None,
        static_shift: None,
        moving_sheet_delta: None,
        t_pair_indices: None,
    };
    let mut problems = Vec::new();
    match spec.kind {
        MoveKind::E | MoveKind::H => {
            if delta != 0 {
                problems.push(format!("delta {delta} under {}", spec.kind));
            }
            if tb != ta {
                problems.push(format!("triple points changed from {tb} to {ta}"));
            }
        }
        MoveKind::T => {
            if delta.rem_euclid(2) != 0 {
                problems.push(format!("odd delta {delta} under T"));
            }
            if let Some(locus) = &spec.locus {
                let (_, _, gone, born) = split_locus_delta(before, after, locus);
                let pair = if born.is_empty() { gone } else { born };
                if pair.len() != 2 {
                    problems.push(format!(
                        "T locus holds {} created/removed triple points, not 2",
                        pair.len()
                    ));
                } else if pair[0] != pair[1] {
                    problems.push(format!("T pair has unequal indices {} and {}", pair[0], pair[1]));
                }
                entry.t_pair_indices = Some(pair);
            }
        }
        MoveKind::Q => {
            if ![3, 1, -1, -3].contains(&delta) {
                problems.push(format!("delta {delta} is not in the Q table"));
            }
            if let Some(claimed) = spec.claimed_q_class {
                if delta != claimed.delta() {
                    problems.push(format!(
                        "claimed {claimed} expects delta {}, observed {delta}",
                        claimed.delta()
                    ));
                }
            }
            if spec.witness.is_some() {
                let observed = classify_analyzed(spec, before, after, ray_seed)?;
                if let Some(claimed) = spec.claimed_q_class {
                    if claimed != observed {
                        problems.push(format!("claimed {claimed} but witnesses show {observed}"));
                    }
                }
                entry.observed_q_class = Some(observed);
            }
            if let Some(locus) = &spec.locus {
                let (shift, moving, _, _) = split_locus_delta(before, after, locus);
                entry.static_shift = Some(shift);
                entry.moving_sheet_delta = Some(moving);
            }
        }
    }
    if !problems.is_empty() {
        entry.verdict = EventVerdict::Inconsistent(problems.join("; "));
    }
    Ok(entry)
}

pub fn classify_q(e: &MoveEvent) -> Result<QClass> {
    let (before, after) = rayon::join(
        || analyze(&e.before, DEFAULT_RAY_SEED),
        || analyze(&e.after, DEFAULT_RAY_SEED),
    );
    classify_analyzed(&e.spec, &before?, &after?, DEFAULT_RAY_SEED)
}

fn sign_pattern(p: &Point3, t: &Point3, normals: &[Point3; 3]) -> Result<Octant> {
    let d = p - t;
    let mut signs = [false; 3];
    for (s, n) in signs.iter_mut().zip(normals) {
        *s = match Sign::of(&d.dot(n)) {
            Sign::Positive => true,
            Sign::Negative => false,
            Sign::Zero => {
                return Err(Error::InvalidArgument(format!(
                    "witness {p} lies on a static sheet plane through {t}"
                )))
            }
        };
    }
    Ok(Octant::from_signs(signs))
}

/// Q class read from the witness regions around the static triple point.
pub fn classify_analyzed(spec: &EventSpec, before: &Analysis, after: &Analysis, ray_seed: u64) -> Result<QClass> {
    if spec.kind != MoveKind::Q {
        return Err(Error::InvalidArgument("classification applies to Q events only".into()));
    }
    let (r_before, r_after) = spec
        .witness
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("Q classification needs witness points".into()))?;
    let after_points = &after.arrangement.triple_points;
    let (id, t) = before
        .arrangement
        .triple_points
        .iter()
        .enumerate()
        .filter(|(_, t)| after_points.iter().any(|u| u.location == t.location))
        .min_by(|a, b| distance_squared(&a.1.location, r_before).cmp(&distance_squared(&b.1.location, r_before)))
        .ok_or_else(|| Error::Inconsistent("no static triple point survives the Q event".into()))?;
    let after_id = after_points
        .iter()
        .position(|u| u.location == t.location)
        .expect("filtered above");
    let before_index = &before.st2.per_triple_point[id];
    let after_index = &after.st2.per_triple_point[after_id];
    let leave = sign_pattern(r_before, &t.location, &t.plane_normals)?;
    let enter = sign_pattern(r_after, &t.location, &after_points[after_id].plane_normals)?;
    if enter != leave.opposite() {
        return Err(Error::Inconsistent(format!(
            "witness regions {leave} and {enter} are not opposite at {}",
            t.location
        )));
    }
    let seen_before = alexander_index_in(r_before, &before.arrangement.geometry, ray_seed)?;
    let seen_after = alexander_index_in(r_after, &after.arrangement.geometry, ray_seed)?;
    if seen_before != before_index.octant(leave) || seen_after != after_index.octant(enter) {
        return Err(Error::Inconsistent(format!(
            "witness points are not in the octant regions of the triple point at {}",
            t.location
        )));
    }
    let level = before_index.octant(leave).diff(before_index.min);
    Transition::from_level(level)
        .map(QClass::from_transition)
        .ok_or_else(|| Error::Inconsistent(format!("octant level {level} is not a Q transition")))
}

/// Scenes with events between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveScript {
    pub title: String,
    pub seed: u64,
    pub scenes: Vec<Scene>,
    pub events: Vec<EventSpec>,
}

impl MoveScript {
    pub fn new(title: impl Into<String>, scenes: Vec<Scene>, events: Vec<EventSpec>) -> Result<Self> {
        let s = Self {
            title: title.into(),
            seed: DEFAULT_RAY_SEED,
            scenes,
            events,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let expected = self.scenes.len().saturating_sub(1);
        if self.events.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "{} scenes need {expected} events, found {}",
                self.scenes.len(),
                self.events.len()
            )));
        }
        self.events.iter().try_for_each(EventSpec::validate)
    }

    pub fn event(&self, i: usize) -> Result<MoveEvent> {
        let spec = self.events.get(i).ok_or(Error::IndexOutOfRange {
            what: "event",
            index: i,
            len: self.events.len(),
        })?;
        Ok(MoveEvent {
            spec: spec.clone(),
            before: self.scenes[i].clone(),
            after: self.scenes[i + 1].clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptLedger {
    pub entries: Vec<LedgerEntry>,
    pub first_parity_flip: Option<usize>,
    pub verdict: EventVerdict,
}

pub fn run_script(m: &MoveScript) -> Result<ScriptLedger> {
    m.validate()?;
    let analyses: Vec<Analysis> = m.scenes.par_iter().map(|s| analyze(s, m.seed)).collect::<Result<_>>()?;
    let entries: Vec<LedgerEntry> = m
        .events
        .par_iter()
        .enumerate()
        .map(|(i, spec)| verify_analyzed(spec, &analyses[i], &analyses[i + 1], m.seed))
        .collect::<Result<_>>()?;
    let first_parity_flip = first_parity_flip(&entries);
    let mut problems: Vec<String> = entries
        .iter()
        .enumerate()
        .filter_map(|(i, e)| match &e.verdict {
            EventVerdict::Inconsistent(r) => Some(format!("event {i}: {r}")),
            EventVerdict::Consistent => None,
        })
        .collect();
    for (i, e) in entries.iter().enumerate() {
        let flips = e.delta.rem_euclid(2) == 1;
        let is_q = e.event.kind == MoveKind::Q;
        if flips != is_q {
            problems.push(format!(
                "event {i} ({}) {} parity",
                e.event.kind,
                if flips { "flips" } else { "keeps" }
            ));
        }
    }
    let verdict = if problems.is_empty() {
        EventVerdict::Consistent
    } else {
        EventVerdict::Inconsistent(problems.join("; "))
    };
    Ok(ScriptLedger {
        entries,
        first_parity_flip,
        verdict,
    })
}

pub const SCRIPT_HEADER: &str = "IMMS1";

fn compact_point(p: &Point3) -> String {
    format!("({},{},{})", fmt_rational(&p.x), fmt_rational(&p.y), fmt_rational(&p.z))
}

pub fn parse_point(tok: &str, line: usize) -> Result<Point3> {
    let bad = || Error::Parse {
        line,
        message: format!("bad point `{tok}`"),
    };
    let inner = tok
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok(Point3::new(
        parse_rational_token(parts[0], line)?,
        parse_rational_token(parts[1], line)?,
        parse_rational_token(parts[2], line)?,
    ))
}

/// `(x,y,z)->(x,y,z)`
pub fn parse_witness(tok: &str, line: usize) -> Result<(Point3, Point3)> {
    let (a, b) = tok.split_once("->").ok_or_else(|| Error::Parse {
        line,
        message: format!("witness `{tok}` needs the form (x,y,z)->(x,y,z)"),
    })?;
    Ok((parse_point(a, line)?, parse_point(b, line)?))
}

/// `(x,y,z),r`
pub fn parse_locus(tok: &str, line: usize) -> Result<Locus> {
    let (c, r) = tok.rsplit_once(',').ok_or_else(|| Error::Parse {
        line,
        message: format!("locus `{tok}` needs the form (x,y,z),r"),
    })?;
    let radius = parse_rational_token(r, line)?;
    if radius <= Rational::from_integer(0.into()) {
        return Err(Error::Parse {
            line,
            message: "locus radius must be positive".into(),
        });
    }
    Ok(Locus {
        center: parse_point(c, line)?,
        radius,
    })
}

pub fn parse_event(words: &[&str], line: usize) -> Result<EventSpec> {
    let kind_tok = words.first().ok_or_else(|| Error::Parse {
        line,
        message: "event needs a kind".into(),
    })?;
    let kind = kind_tok.parse::<MoveKind>().map_err(|_| Error::Parse {
        line,
        message: format!("unknown move kind `{kind_tok}`"),
    })?;
    let mut spec = EventSpec::new(kind);
    for w in &words[1..] {
        let (key, value) = w.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected key=value, found `{w}`"),
        })?;
        match key {
            "qclass" => {
                spec.claimed_q_class = Some(value.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("unknown Q class `{value}`"),
                })?)
            }
            "witness" => spec.witness = Some(parse_witness(value, line)?),
            "locus" => spec.locus = Some(parse_locus(value, line)?),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown event field `{key}`"),
                })
            }
        }
    }
    spec.validate().map_err(|e| Error::Parse {
        line,
        message: e.to_string(),
    })?;
    Ok(spec)
}

/// A script file before its scene files are loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptFile {
    pub title: String,
    pub seed: u64,
    pub scene_paths: Vec<String>,
    pub events: Vec<EventSpec>,
}

pub fn parse_script_text(text: &str) -> Result<ScriptFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, SCRIPT_HEADER)) => {}
        Some((n, other)) => {
            return Err(Error::Parse {
                line: n,
                message: format!("expected header {SCRIPT_HEADER}, found `{other}`"),
            })
        }
        None => {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing header {SCRIPT_HEADER}"),
            })
        }
    }
    let mut out = ScriptFile {
        title: String::new(),
        seed: DEFAULT_RAY_SEED,
        scene_paths: Vec::new(),
        events: Vec::new(),
    };
    let mut expect_scene = true;
    for (n, l) in lines {
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match head {
            "title" => out.title = rest.to_string(),
            "seed" => {
                out.seed = rest.parse().map_err(|_| Error::Parse {
                    line: n,
                    message: format!("bad seed `{rest}`"),
                })?
            }
            "scene" => {
                if !expect_scene {
                    return Err(Error::Parse {
                        line: n,
                        message: "two scenes without an event between them".into(),
                    });
                }
                if rest.is_empty() {
                    return Err(Error::Parse {
                        line: n,
                        message: "scene needs a path".into(),
                    });
                }
                out.scene_paths.push(rest.to_string());
                expect_scene = false;
            }
            "event" => {
                if expect_scene {
                    return Err(Error::Parse {
                        line: n,
                        message: "event must follow a scene".into(),
                    });
                }
                let words: Vec<&str> = rest.split_whitespace().collect();
                out.events.push(parse_event(&words, n)?);
                expect_scene = true;
            }
            other => {
                return Err(Error::Parse {
                    line: n,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    if expect_scene && !out.events.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "script ends with an event".into(),
        });
    }
    Ok(out)
}

/// Reads a script and the scene files it names, relative to its directory.
pub fn load_script(path: &Path) -> Result<MoveScript> {
    let file = parse_script_text(&std::fs::read_to_string(path)?)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let scenes = file
        .scene_paths
        .iter()
        .map(|p| parse_scene(&std::fs::read_to_string(dir.join(p))?))
        .collect::<Result<Vec<_>>>()?;
    let mut script = MoveScript::new(file.title, scenes, file.events)?;
    script.seed = file.seed;
    Ok(script)
}

pub fn write_script_text(title: &str, seed: u64, scene_paths: &[String], events: &[EventSpec]) -> String {
    let mut out = format!("{SCRIPT_HEADER}\n");
    if !title.is_empty() {
        out += &format!("title {title}\n");
    }
    out += &format!("seed {seed}\n");
    for (i, p) in scene_paths.iter().enumerate() {
        out += &format!("scene {p}\n");
        if let Some(e) = events.get(i) {
            out += &format!("event {e}\n");
        }
    }
    out
}

/// Writes the script to `path` and its scenes as sibling files
/// `<stem>-<i>.immv`.
pub fn save_script(m: &MoveScript, path: &Path) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("script");
    let mut names = Vec::with_capacity(m.scenes.len());
    for (i, s) in m.scenes.iter().enumerate() {
        let name = format!("{stem}-{i}.immv");
        std::fs::write(dir.join(&name), write_scene(s))?;
        names.push(name);
    }
    std::fs::write(path, write_script_text(&m.title, m.seed, &names, &m.events))?;
    Ok(())
}

/// Index of the first odd delta in a ledger.
pub fn first_parity_flip(entries: &[LedgerEntry]) -> Option<usize> {
    entries.iter().position(|e| e.delta.rem_euclid(2) == 1)
}
