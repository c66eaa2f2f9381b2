//! Mechanical execution of the two-round discharging procedure on an
//! embedded plane graph, with exact rational charges and an auditable
//! transfer ledger.
//!
//! Round one applies R1-R5 per vertex/face incidence, round two moves the
//! surplus of rich vertices to nearby poor vertices along nice paths.
//! Degenerate inputs (minimum degree below 4, hypothesis violations) are
//! simulated anyway and reported through diagnostics.

use std::collections::BTreeMap;

use num_rational::Rational64;
use thiserror::Error;

use crate::graph::{CycleList, Graph, HypothesisVerdict};
use crate::plane::{face_of_dart, Face, PlaneGraph};

pub type Charge = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DischargeError {
    #[error("plane graph is disconnected; initial charges are defined for connected inputs only")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{}", v),
            Element::Face(i) => write!(f, "f{}", i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    R1,
    R21,
    R22,
    R3,
    R4,
    R5,
    R6,
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::R1 => "R1",
            Rule::R21 => "R2.1",
            Rule::R22 => "R2.2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    pub rule: Rule,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransferLedger {
    pub transfers: Vec<Transfer>,
}

impl TransferLedger {
    pub fn len(&self) -> usize {
        self.transfers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transfers.is_empty()
    }

    /// Applies every record to a charge state; transfers conserve total
    /// charge by construction.
    pub fn replay(&self, state: &ChargeState) -> ChargeState {
        let mut out = state.clone();
        for t in &self.transfers {
            match t.from {
                Element::Vertex(v) => out.vertex_charge[v] -= t.amount,
                Element::Face(f) => out.face_charge[f] -= t.amount,
            }
            match t.to {
                Element::Vertex(v) => out.vertex_charge[v] += t.amount,
                Element::Face(f) => out.face_charge[f] += t.amount,
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeState {
    pub stage: u8,
    pub vertex_charge: Vec<Charge>,
    pub face_charge: Vec<Charge>,
}

impl ChargeState {
    pub fn total(&self) -> Charge {
        self.vertex_charge.iter().sum::<Charge>() + self.face_charge.iter().sum::<Charge>()
    }
}

/// Per-face counts of incident k-vertices. Counts are per boundary-walk
/// incidence, so a vertex met twice on the walk contributes twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStats {
    pub degree: usize,
    pub n4: usize,
    pub n5: usize,
    pub n6p: usize,
    pub n5p: usize,
    pub bad5: bool,
}

/// Per-vertex counts of incident k-faces, again per incidence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexStats {
    pub f3: usize,
    pub f4: usize,
    pub f5: usize,
    pub f5b: usize,
    pub f6p: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statistics {
    pub faces: Vec<FaceStats>,
    pub vertices: Vec<VertexStats>,
}

/// A 5-face is bad iff every boundary vertex has degree 4.
fn is_bad5(face: &Face, degree_of: &dyn Fn(usize) -> usize) -> bool {
    face.degree() == 5 && face.walk_vertices().all(|v| degree_of(v) == 4)
}

pub fn face_statistics(pg: &PlaneGraph, faces: &[Face]) -> Statistics {
    let deg = |v: usize| pg.degree(v);
    let face_stats: Vec<FaceStats> = faces
        .iter()
        .map(|face| {
            let mut n4 = 0;
            let mut n5 = 0;
            let mut n6p = 0;
            for v in face.walk_vertices() {
                match deg(v) {
                    4 => n4 += 1,
                    5 => n5 += 1,
                    d if d >= 6 => n6p += 1,
                    _ => {}
                }
            }
            FaceStats {
                degree: face.degree(),
                n4,
                n5,
                n6p,
                n5p: n5 + n6p,
                bad5: is_bad5(face, &deg),
            }
        })
        .collect();
    let mut vertex_stats = vec![VertexStats::default(); pg.vertex_count()];
    for (face, stats) in faces.iter().zip(&face_stats) {
        for v in face.walk_vertices() {
            let s = &mut vertex_stats[v];
            match stats.degree {
                3 => s.f3 += 1,
                4 => s.f4 += 1,
                5 => {
                    s.f5 += 1;
                    if stats.bad5 {
                        s.f5b += 1;
                    }
                }
                _ => s.f6p += 1,
            }
        }
    }
    Statistics {
        faces: face_stats,
        vertices: vertex_stats,
    }
}

/// Face-dependent transfer amount `γ = (2 − n4(f)/3) / n5+(f)`; undefined
/// when the face has no incident 5+-vertex.
pub fn gamma(stats: &FaceStats) -> Option<Charge> {
    if stats.n5p == 0 {
        return None;
    }
    let numerator = Charge::from_integer(2) - Charge::new(stats.n4 as i64, 3);
    Some(numerator / Charge::from_integer(stats.n5p as i64))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexClassification {
    pub rich: bool,
    pub poor: bool,
    pub good4: bool,
    pub bad4: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub ch0: ChargeState,
    pub ch1: ChargeState,
    pub ch2: ChargeState,
    pub round1_ledger: TransferLedger,
    pub round2_ledger: TransferLedger,
    pub classification: Vec<VertexClassification>,
    pub face_degrees: Vec<usize>,
    /// Vertices with `f3(v) > ⌈d(v)/2⌉`.
    pub fact1_violations: Vec<usize>,
    pub hypothesis: HypothesisVerdict,
    pub negative_ch2: Vec<Element>,
    pub diagnostics: Vec<String>,
}

/// Precomputed context for one discharging run.
pub struct Simulator {
    pg: PlaneGraph,
    graph: Graph,
    faces: Vec<Face>,
    dart_face: BTreeMap<(usize, usize), usize>,
    stats: Statistics,
    cycles: CycleList,
}

impl Simulator {
    pub fn new(pg: PlaneGraph) -> Self {
        let graph = pg.underlying_graph();
        let faces = pg.trace_faces();
        let dart_face = face_of_dart(&faces);
        let stats = face_statistics(&pg, &faces);
        let cycles = graph.enumerate_4cycles();
        Self {
            pg,
            graph,
            faces,
            dart_face,
            stats,
            cycles,
        }
    }

    pub fn plane_graph(&self) -> &PlaneGraph {
        &self.pg
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn statistics(&self) -> &Statistics {
        &self.stats
    }

    /// `ch0(v) = d(v) − 2`, `ch0(f) = −2`; total is exactly −4 on a
    /// connected input.
    pub fn initial_charges(&self) -> Result<ChargeState, DischargeError> {
        if !self.graph.is_connected() {
            return Err(DischargeError::Disconnected);
        }
        Ok(ChargeState {
            stage: 0,
            vertex_charge: (0..self.pg.vertex_count())
                .map(|v| Charge::from_integer(self.pg.degree(v) as i64 - 2))
                .collect(),
            face_charge: vec![Charge::from_integer(-2); self.faces.len()],
        })
    }

    /// Count of 3-faces `(x, y, v)` at `v` with `d(x) = d(y) = 4` and the
    /// edge `xy` lying on some bad 5-face.
    pub fn zeta(&self, v: usize) -> usize {
        let mut count = 0;
        for (face, stats) in self.faces.iter().zip(&self.stats.faces) {
            if stats.degree != 3 || face.incidences(v) == 0 {
                continue;
            }
            // opposite edge: the dart of the walk not touching v
            for &(x, y) in &face.boundary {
                if x == v || y == v {
                    continue;
                }
                if self.pg.degree(x) == 4
                    && self.pg.degree(y) == 4
                    && self
                        .faces
                        .iter()
                        .zip(&self.stats.faces)
                        .any(|(f, s)| s.bad5 && f.contains_edge(x, y))
                {
                    count += 1;
                }
            }
        }
        count
    }

    fn transfer_amount(&self, v: usize, face_index: usize) -> Option<(Charge, Rule)> {
        let k = self.pg.degree(v);
        let fs = &self.stats.faces[face_index];
        let ell = fs.degree;
        match ell {
            3 => Some((Charge::new(2, 3), Rule::R1)),
            4 | 5 => {
                match k {
                    0..=3 => None,
                    4 => {
                        if fs.bad5 && self.stats.vertices[v].f3 <= 1 {
                            // T_f: distinct 4-vertices of f with f3 ≤ 1
                            let t_f = self.faces[face_index]
                                .vertex_set()
                                .into_iter()
                                .filter(|&u| {
                                    self.pg.degree(u) == 4 && self.stats.vertices[u].f3 <= 1
                                })
                                .count();
                            if t_f == 1 {
                                Some((Charge::new(2, 3), Rule::R21))
                            } else {
                                Some((Charge::new(1, 2), Rule::R21))
                            }
                        } else {
                            Some((Charge::new(1, 3), Rule::R22))
                        }
                    }
                    5 => {
                        if ell == 4 && fs.n6p == 1 {
                            Some((Charge::new(5, 9), Rule::R3))
                        } else if ell == 5 && fs.n6p == 1 {
                            Some((Charge::new(4, 9), Rule::R3))
                        } else {
                            Some((gamma(fs).expect("5-vertex incident, so n5+ >= 1"), Rule::R3))
                        }
                    }
                    _ => {
                        if ell == 4 && fs.n5 == 1 {
                            Some((Charge::new(7, 9), Rule::R4))
                        } else if ell == 5 && fs.n5 == 1 {
                            Some((Charge::new(5, 9), Rule::R4))
                        } else {
                            Some((gamma(fs).expect("6+-vertex incident, so n5+ >= 1"), Rule::R4))
                        }
                    }
                }
            }
            _ => Some((Charge::new(1, 3), Rule::R1)),
        }
    }

    /// Applies R1-R5, one branch per vertex/face incidence, and returns
    /// the stage-1 charges with the ledger and any diagnostics.
    pub fn round1(
        &self,
        ch0: &ChargeState,
    ) -> (ChargeState, TransferLedger, Vec<String>) {
        let mut ledger = TransferLedger::default();
        let mut diagnostics = Vec::new();
        for (face_index, face) in self.faces.iter().enumerate() {
            for v in face.walk_vertices() {
                if let Some((amount, rule)) = self.transfer_amount(v, face_index) {
                    ledger.transfers.push(Transfer {
                        from: Element::Vertex(v),
                        to: Element::Face(face_index),
                        amount,
                        rule,
                    });
                }
            }
        }
        // R5: bad 5-faces whose boundary vertices all have f3 = 2 draw 1/9
        // from the apex of each neighboring 3-face when that apex avoids
        // every 4-cycle.
        for (face_index, face) in self.faces.iter().enumerate() {
            let fs = &self.stats.faces[face_index];
            if !fs.bad5 || !face.walk_vertices().all(|v| self.stats.vertices[v].f3 == 2) {
                continue;
            }
            for &(a, b) in &face.boundary {
                let other = self.dart_face[&(b, a)];
                let other_face = &self.faces[other];
                if other_face.degree() != 3 {
                    diagnostics.push(format!(
                        "R5: boundary edge ({}, {}) of bad 5-face f{} has no 3-face on its other side",
                        a, b, face_index
                    ));
                    continue;
                }
                let mut tails: Vec<usize> = other_face.walk_vertices().collect();
                if let Some(i) = tails.iter().position(|&x| x == a) {
                    tails.remove(i);
                }
                if let Some(i) = tails.iter().position(|&x| x == b) {
                    tails.remove(i);
                }
                if tails.len() != 1 {
                    diagnostics.push(format!(
                        "R5: 3-face f{} beside bad 5-face f{} has no unique apex",
                        other, face_index
                    ));
                    continue;
                }
                let apex = tails[0];
                if !self.cycles.touches(apex) {
                    ledger.transfers.push(Transfer {
                        from: Element::Vertex(apex),
                        to: Element::Face(face_index),
                        amount: Charge::new(1, 9),
                        rule: Rule::R5,
                    });
                }
            }
        }
        let mut ch1 = ledger.replay(ch0);
        ch1.stage = 1;
        (ch1, ledger, diagnostics)
    }

    /// Rich/poor and good-4/bad-4 flags from stage-1 charges.
    pub fn classify(&self, ch1: &ChargeState) -> Vec<VertexClassification> {
        (0..self.pg.vertex_count())
            .map(|v| {
                let charge = ch1.vertex_charge[v];
                let zero = Charge::from_integer(0);
                let on_cycle = self.cycles.touches(v);
                let s = &self.stats.vertices[v];
                let deg4 = self.pg.degree(v) == 4;
                VertexClassification {
                    rich: charge > zero,
                    poor: charge < zero && on_cycle,
                    good4: deg4 && s.f3 + s.f5b <= 1,
                    bad4: deg4 && s.f3 == 1 && s.f5b == 1,
                }
            })
            .collect()
    }

    /// All nice paths from poor `u` to rich `v`: the edge `uv` when
    /// adjacent, plus length-2 paths whose middle vertex has degree at
    /// most 5.
    pub fn nice_paths(&self, u: usize, v: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        if self.graph.has_edge(u, v) {
            paths.push(vec![u, v]);
        }
        for &w in self.graph.neighbors(u) {
            if w != v && self.graph.has_edge(w, v) && self.graph.degree(w) <= 5 {
                paths.push(vec![u, w, v]);
            }
        }
        paths
    }

    /// R6: every rich vertex with a nice path to a poor vertex of degree
    /// 5 or 6 sends its entire stage-1 charge there. A rich vertex seeing
    /// two or more poor vertices is reported as contested and resolved
    /// toward the lowest index.
    pub fn round2(
        &self,
        ch1: &ChargeState,
        classification: &[VertexClassification],
    ) -> (ChargeState, TransferLedger, Vec<String>) {
        let mut ledger = TransferLedger::default();
        let mut diagnostics = Vec::new();
        for v in 0..self.pg.vertex_count() {
            if !classification[v].rich {
                continue;
            }
            let targets: Vec<usize> = (0..self.pg.vertex_count())
                .filter(|&u| {
                    classification[u].poor
                        && (5..=6).contains(&self.graph.degree(u))
                        && !self.nice_paths(u, v).is_empty()
                })
                .collect();
            if targets.is_empty() {
                continue;
            }
            if targets.len() >= 2 {
                diagnostics.push(format!(
                    "contested rich vertex {}: nice paths to poor vertices {:?}; sending to {}",
                    v, targets, targets[0]
                ));
            }
            ledger.transfers.push(Transfer {
                from: Element::Vertex(v),
                to: Element::Vertex(targets[0]),
                amount: ch1.vertex_charge[v],
                rule: Rule::R6,
            });
        }
        let mut ch2 = ledger.replay(ch1);
        ch2.stage = 2;
        (ch2, ledger, diagnostics)
    }

    /// Drives the whole pipeline and gathers every check the report
    /// surfaces.
    pub fn report(&self) -> Result<RunReport, DischargeError> {
        let ch0 = self.initial_charges()?;
        let (ch1, round1_ledger, mut diagnostics) = self.round1(&ch0);
        let classification = self.classify(&ch1);
        let (ch2, round2_ledger, round2_diag) = self.round2(&ch1, &classification);
        diagnostics.extend(round2_diag);
        if self.graph.min_degree() < 4 && self.graph.vertex_count() > 0 {
            diagnostics.push(format!(
                "minimum degree {} is below 4; the procedure is exercised off-hypothesis",
                self.graph.min_degree()
            ));
        }
        let fact1_violations: Vec<usize> = (0..self.pg.vertex_count())
            .filter(|&v| {
                let d = self.pg.degree(v);
                self.stats.vertices[v].f3 > d.div_ceil(2)
            })
            .collect();
        let zero = Charge::from_integer(0);
        let mut negative_ch2: Vec<Element> = Vec::new();
        for v in 0..self.pg.vertex_count() {
            if ch2.vertex_charge[v] < zero {
                negative_ch2.push(Element::Vertex(v));
            }
        }
        for f in 0..self.faces.len() {
            if ch2.face_charge[f] < zero {
                negative_ch2.push(Element::Face(f));
            }
        }
        Ok(RunReport {
            ch0,
            ch1,
            ch2,
            round1_ledger,
            round2_ledger,
            classification,
            face_degrees: self.faces.iter().map(Face::degree).collect(),
            fact1_violations,
            hypothesis: self.graph.validate_hypothesis(5),
            negative_ch2,
            diagnostics,
        })
    }
}
