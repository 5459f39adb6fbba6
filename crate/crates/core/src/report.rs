//! Deterministic text and JSON renderings of analyses and ledgers.

use serde::Serialize;

use crate::arrangement::Witness;
use crate::exactgeom::{fmt_rational, Point3};
use crate::moves::{LedgerEntry, ScriptLedger};
use crate::numbering::{Analysis, Octant};
use crate::surface::Scene;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

pub fn point_string(p: &Point3) -> String {
    format!(
        "({}, {}, {})",
        fmt_rational(&p.x),
        fmt_rational(&p.y),
        fmt_rational(&p.z)
    )
}

#[derive(Debug, Serialize)]
pub struct SceneStats {
    pub meshes: usize,
    pub vertices: usize,
    pub triangles: usize,
    pub double_segments: usize,
    pub double_curves: usize,
    pub triple_points: usize,
}

#[derive(Debug, Serialize)]
pub struct OctantRecord {
    pub signs: String,
    pub index: String,
}

#[derive(Debug, Serialize)]
pub struct TriplePointRecord {
    pub location: String,
    pub triangles: [usize; 3],
    pub octants: Vec<OctantRecord>,
    pub ind: i64,
}

#[derive(Debug, Serialize)]
pub struct WitnessRecord {
    pub reason: String,
    pub point: Option<String>,
    pub triangles: Vec<usize>,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        Self {
            reason: w.reason.clone(),
            point: w.point.as_ref().map(point_string),
            triangles: w.triangles.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct St2Record {
    pub value: i64,
    pub parity: u8,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub genericity: String,
    pub witnesses: Vec<WitnessRecord>,
    pub stats: Option<SceneStats>,
    pub triple_points: Vec<TriplePointRecord>,
    pub st2: Option<St2Record>,
}

impl Report {
    pub fn generic(scene: &Scene, a: &Analysis) -> Self {
        let arr = &a.arrangement;
        let triple_points = a
            .st2
            .per_triple_point
            .iter()
            .map(|ti| {
                let t = &arr.triple_points[ti.triple_point];
                TriplePointRecord {
                    location: point_string(&t.location),
                    triangles: t.triangles(),
                    octants: Octant::ALL
                        .iter()
                        .map(|&o| OctantRecord {
                            signs: o.to_string(),
                            index: ti.octant(o).to_string(),
                        })
                        .collect(),
                    ind: ti.ind,
                }
            })
            .collect();
        Self {
            report_version: REPORT_VERSION,
            genericity: "Generic".into(),
            witnesses: vec![],
            stats: Some(SceneStats {
                meshes: scene.meshes().len(),
                vertices: scene.vertex_count(),
                triangles: scene.triangle_count(),
                double_segments: arr.segments.len(),
                double_curves: arr.curves.len(),
                triple_points: arr.triple_points.len(),
            }),
            triple_points,
            st2: Some(St2Record {
                value: a.st2.value,
                parity: a.st2.parity,
            }),
        }
    }

    pub fn non_generic(witnesses: &[Witness]) -> Self {
        Self {
            report_version: REPORT_VERSION,
            genericity: "NonGeneric".into(),
            witnesses: witnesses.iter().map(WitnessRecord::from).collect(),
            stats: None,
            triple_points: vec![],
            st2: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => json(self),
            Format::Text => {
                let mut out = format!(
                    "report_version={}\ngenericity={}\n",
                    self.report_version, self.genericity
                );
                for w in &self.witnesses {
                    out += &format!(
                        "witness reason=\"{}\" triangles={:?}{}\n",
                        w.reason,
                        w.triangles,
                        w.point.as_ref().map(|p| format!(" point={p}")).unwrap_or_default()
                    );
                }
                if let Some(s) = &self.stats {
                    out += &format!(
                        "meshes={} vertices={} triangles={} double_segments={} double_curves={} triple_points={}\n",
                        s.meshes, s.vertices, s.triangles, s.double_segments, s.double_curves, s.triple_points
                    );
                }
                for (i, t) in self.triple_points.iter().enumerate() {
                    let octants: Vec<String> = t.octants.iter().map(|o| format!("{}:{}", o.signs, o.index)).collect();
                    out += &format!(
                        "triple_point {i} location={} octants=[{}] ind={}\n",
                        t.location,
                        octants.join(" "),
                        t.ind
                    );
                }
                if let Some(s) = &self.st2 {
                    out += &format!("st2={} parity={}\n", s.value, s.parity);
                }
                out
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EntryRecord {
    pub kind: String,
    pub event: String,
    pub st_before: i64,
    pub st_after: i64,
    pub delta: i64,
    pub parity_flip: bool,
    pub verdict: String,
    pub triple_points_before: usize,
    pub triple_points_after: usize,
    pub double_curves_before: usize,
    pub double_curves_after: usize,
    pub observed_q_class: Option<String>,
    pub static_shift: Option<i64>,
    pub moving_sheet_delta: Option<i64>,
    pub t_pair_indices: Option<Vec<i64>>,
}

impl From<&LedgerEntry> for EntryRecord {
    fn from(e: &LedgerEntry) -> Self {
        Self {
            kind: e.event.kind.to_string(),
            event: e.event.to_string(),
            st_before: e.st_before,
            st_after: e.st_after,
            delta: e.delta,
            parity_flip: e.delta.rem_euclid(2) == 1,
            verdict: e.verdict.to_string(),
            triple_points_before: e.triple_points_before,
            triple_points_after: e.triple_points_after,
            double_curves_before: e.curves_before,
            double_curves_after: e.curves_after,
            observed_q_class: e.observed_q_class.map(|q| q.to_string()),
            static_shift: e.static_shift,
            moving_sheet_delta: e.moving_sheet_delta,
            t_pair_indices: e.t_pair_indices.clone(),
        }
    }
}

impl EntryRecord {
    fn text_line(&self) -> String {
        let mut out = format!(
            "kind={} st_before={} st_after={} delta={} verdict={}",
            self.kind, self.st_before, self.st_after, self.delta, self.verdict
        );
        out += &format!(
            " triple_points={}->{} double_curves={}->{}",
            self.triple_points_before, self.triple_points_after, self.double_curves_before, self.double_curves_after
        );
        if let Some(q) = &self.observed_q_class {
            out += &format!(" observed_class={q}");
        }
        if let (Some(s), Some(m)) = (self.static_shift, self.moving_sheet_delta) {
            out += &format!(" static_shift={s} moving_sheet_delta={m}");
        }
        if let Some(p) = &self.t_pair_indices {
            out += &format!(" t_pair_indices={p:?}");
        }
        out
    }
}

#[derive(Debug, Serialize)]
struct EntryReport<'a> {
    report_version: u32,
    #[serde(flatten)]
    entry: &'a EntryRecord,
}

pub fn render_entry(e: &LedgerEntry, format: Format) -> String {
    let rec = EntryRecord::from(e);
    match format {
        Format::Text => rec.text_line() + "\n",
        Format::Structured => json(&EntryReport {
            report_version: REPORT_VERSION,
            entry: &rec,
        }),
    }
}

#[derive(Debug, Serialize)]
struct LedgerReport {
    report_version: u32,
    title: String,
    entries: Vec<EntryRecord>,
    first_parity_flip: Option<usize>,
    verdict: String,
}

pub fn render_ledger(title: &str, l: &ScriptLedger, format: Format) -> String {
    let entries: Vec<EntryRecord> = l.entries.iter().map(EntryRecord::from).collect();
    match format {
        Format::Text => {
            let mut out = String::new();
            for (i, e) in entries.iter().enumerate() {
                out += &format!("event {i} {}\n", e.text_line());
            }
            out += &format!(
                "first_parity_flip={}\n",
                l.first_parity_flip.map_or("none".to_string(), |i| i.to_string())
            );
            out += &format!("verdict={}\n", l.verdict);
            out
        }
        Format::Structured => json(&LedgerReport {
            report_version: REPORT_VERSION,
            title: title.to_string(),
            entries,
            first_parity_flip: l.first_parity_flip,
            verdict: l.verdict.to_string(),
        }),
    }
}

pub fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize") + "\n"
}
