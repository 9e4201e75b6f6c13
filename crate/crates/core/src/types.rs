//! Shared data model: face tracks, wearer audio, heterogeneous graphs and
//! diarization segments.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Speaker identifier reserved for the camera wearer.
pub const WEARER_ID: &str = "CW";

/// Axis-aligned box in corner form. Geometry is continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

impl BBox {
    pub fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self> {
        let b = BBox { x1, y1, x2, y2 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x1, self.y1, self.x2, self.y2]
            .iter()
            .all(|v| v.is_finite());
        if finite && self.x1 < self.x2 && self.y1 < self.y2 {
            Ok(())
        } else {
            Err(Error::InvalidBox {
                x1: self.x1,
                y1: self.y1,
                x2: self.x2,
                y2: self.y2,
            })
        }
    }

    pub fn area(&self) -> f64 {
        (self.x2 - self.x1) * (self.y2 - self.y1)
    }
}

/// Intersection over union of two valid boxes.
pub fn iou(a: &BBox, b: &BBox) -> Result<f64> {
    a.validate()?;
    b.validate()?;
    let w = a.x2.min(b.x2) - a.x1.max(b.x1);
    let h = a.y2.min(b.y2) - a.y1.max(b.y1);
    if w <= 0.0 || h <= 0.0 {
        return Ok(0.0);
    }
    let inter = w * h;
    let union = a.area() + b.area() - inter;
    Ok((inter / union).clamp(0.0, 1.0))
}

pub fn frame_to_time(frame: u32, fps: f64) -> Result<f64> {
    if !(fps > 0.0) || !fps.is_finite() {
        return Err(Error::InvalidFps(fps));
    }
    Ok(frame as f64 / fps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrackEntry {
    pub frame: u32,
    pub bbox: BBox,
    pub feature: Vec<f32>,
}

/// One visible person's face track: boxes and audio-visual features over time.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceTrack {
    pub track_id: u32,
    pub person_id: String,
    pub entries: Vec<TrackEntry>,
}

impl FaceTrack {
    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::InvalidInput(format!("track {} is empty", self.track_id)));
        }
        if self.person_id == WEARER_ID {
            return Err(Error::InvalidInput(format!(
                "track {} uses the reserved wearer id",
                self.track_id
            )));
        }
        let dim = self.entries[0].feature.len();
        for (i, e) in self.entries.iter().enumerate() {
            e.bbox.validate()?;
            if e.feature.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "track {}: inconsistent feature dimension at frame {}",
                    self.track_id, e.frame
                )));
            }
            if i > 0 && self.entries[i - 1].frame >= e.frame {
                return Err(Error::InvalidInput(format!(
                    "track {}: frames not strictly increasing at {}",
                    self.track_id, e.frame
                )));
            }
        }
        Ok(())
    }

    pub fn feature_dim(&self) -> usize {
        self.entries.first().map_or(0, |e| e.feature.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WearerEntry {
    pub frame: u32,
    pub feature: Vec<f32>,
}

/// The camera wearer's audio-only feature stream. Its speaker id is always
/// [`WEARER_ID`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WearerStream {
    pub entries: Vec<WearerEntry>,
}

impl WearerStream {
    pub fn validate(&self) -> Result<()> {
        let dim = self.feature_dim();
        for (i, e) in self.entries.iter().enumerate() {
            if e.feature.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "wearer: inconsistent feature dimension at frame {}",
                    e.frame
                )));
            }
            if i > 0 && self.entries[i - 1].frame >= e.frame {
                return Err(Error::InvalidInput(format!(
                    "wearer: frames not strictly increasing at {}",
                    e.frame
                )));
            }
        }
        Ok(())
    }

    pub fn feature_dim(&self) -> usize {
        self.entries.first().map_or(0, |e| e.feature.len())
    }
}

/// Per-(person, frame) speaking labels.
pub type LabelMap = BTreeMap<(String, u32), bool>;

#[derive(Debug, Clone, PartialEq)]
pub struct VideoBundle {
    pub video_id: String,
    pub fps: f64,
    pub num_frames: u32,
    pub tracks: Vec<FaceTrack>,
    pub wearer: WearerStream,
    pub labels: Option<LabelMap>,
}

impl VideoBundle {
    pub fn validate(&self) -> Result<()> {
        if !(self.fps > 0.0) || !self.fps.is_finite() {
            return Err(Error::InvalidFps(self.fps));
        }
        let mut d_av = None;
        for t in &self.tracks {
            t.validate()?;
            match d_av {
                None => d_av = Some(t.feature_dim()),
                Some(d) if d != t.feature_dim() => {
                    return Err(Error::InvalidInput(format!(
                        "track {}: feature dimension {} differs from {}",
                        t.track_id,
                        t.feature_dim(),
                        d
                    )))
                }
                _ => {}
            }
            if let Some(last) = t.entries.last() {
                if last.frame >= self.num_frames {
                    return Err(Error::InvalidInput(format!(
                        "track {}: frame {} outside [0, {})",
                        t.track_id, last.frame, self.num_frames
                    )));
                }
            }
        }
        self.wearer.validate()?;
        if let Some(last) = self.wearer.entries.last() {
            if last.frame >= self.num_frames {
                return Err(Error::InvalidInput(format!(
                    "wearer: frame {} outside [0, {})",
                    last.frame, self.num_frames
                )));
            }
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.tracks.iter().all(|t| t.entries.is_empty()) && self.wearer.entries.is_empty()
    }

    pub fn label(&self, person: &str, frame: u32) -> Option<bool> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(&(String::from(person), frame)).copied())
    }

    pub fn visible_dim(&self) -> Option<usize> {
        self.tracks.first().map(FaceTrack::feature_dim)
    }

    pub fn wearer_dim(&self) -> Option<usize> {
        self.wearer.entries.first().map(|e| e.feature.len())
    }

    /// Sorted, deduplicated speaker ids appearing in the video.
    pub fn speakers(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.tracks.iter().map(|t| t.person_id.clone()).collect();
        if !self.wearer.entries.is_empty() {
            ids.push(String::from(WEARER_ID));
        }
        ids.sort();
        ids.dedup();
        ids
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Visible { track_id: u32, frame: u32 },
    Wearer { frame: u32 },
}

impl NodeKind {
    pub fn frame(&self) -> u32 {
        match *self {
            NodeKind::Visible { frame, .. } | NodeKind::Wearer { frame } => frame,
        }
    }

    pub fn is_wearer(&self) -> bool {
        matches!(self, NodeKind::Wearer { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    VV,
    VW,
    WW,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 3] = [EdgeKind::VV, EdgeKind::VW, EdgeKind::WW];

    pub fn between(a: &NodeKind, b: &NodeKind) -> EdgeKind {
        match (a.is_wearer(), b.is_wearer()) {
            (false, false) => EdgeKind::VV,
            (true, true) => EdgeKind::WW,
            _ => EdgeKind::VW,
        }
    }

    pub fn index(self) -> usize {
        match self {
            EdgeKind::VV => 0,
            EdgeKind::VW => 1,
            EdgeKind::WW => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::VV => "vv",
            EdgeKind::VW => "vw",
            EdgeKind::WW => "ww",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub kind: NodeKind,
    pub person_id: String,
    pub feature: Vec<f32>,
    pub label: Option<bool>,
    pub bbox: Option<BBox>,
}

impl Node {
    pub fn frame(&self) -> u32 {
        self.kind.frame()
    }
}

/// Undirected edge, stored once with `src < dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

/// Per-kind neighbor lists in both directions, sorted by neighbor index.
#[derive(Debug, Clone, Default)]
pub struct Adjacency {
    neighbors: [Vec<Vec<usize>>; 3],
}

impl Adjacency {
    pub fn of(&self, kind: EdgeKind, node: usize) -> &[usize] {
        &self.neighbors[kind.index()][node]
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeteroGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl HeteroGraph {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn adjacency(&self) -> Adjacency {
        let n = self.nodes.len();
        let mut neighbors: [Vec<Vec<usize>>; 3] = [
            alloc::vec![Vec::new(); n],
            alloc::vec![Vec::new(); n],
            alloc::vec![Vec::new(); n],
        ];
        for e in &self.edges {
            let k = e.kind.index();
            neighbors[k][e.src].push(e.dst);
            neighbors[k][e.dst].push(e.src);
        }
        for lists in neighbors.iter_mut() {
            for l in lists.iter_mut() {
                l.sort_unstable();
            }
        }
        Adjacency { neighbors }
    }

    pub fn is_labeled(&self) -> bool {
        !self.nodes.is_empty() && self.nodes.iter().all(|n| n.label.is_some())
    }

    /// Labels as 0/1 reals, or `None` unless every node is labeled.
    pub fn labels(&self) -> Option<Vec<f64>> {
        self.nodes
            .iter()
            .map(|n| n.label.map(|l| if l { 1.0 } else { 0.0 }))
            .collect()
    }

    /// Copy of the graph with every edge of `kind` removed.
    pub fn without_edge_kind(&self, kind: EdgeKind) -> HeteroGraph {
        HeteroGraph {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().copied().filter(|e| e.kind != kind).collect(),
        }
    }

    pub fn edge_count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        let mut seen = alloc::collections::BTreeSet::new();
        for e in &self.edges {
            if e.src >= n || e.dst >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) out of range",
                    e.src, e.dst
                )));
            }
            if e.src >= e.dst {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) is a self-loop or not in canonical order",
                    e.src, e.dst
                )));
            }
            if e.kind != EdgeKind::between(&self.nodes[e.src].kind, &self.nodes[e.dst].kind) {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has inconsistent kind",
                    e.src, e.dst
                )));
            }
            if !seen.insert((e.src, e.dst)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge ({}, {})",
                    e.src, e.dst
                )));
            }
        }
        let labeled = self.nodes.iter().filter(|n| n.label.is_some()).count();
        if labeled != 0 && labeled != n {
            return Err(Error::Unlabeled);
        }
        let mut kinds = alloc::collections::BTreeSet::new();
        for node in &self.nodes {
            if !kinds.insert(node.kind) {
                return Err(Error::InvalidInput(format!("duplicate node {:?}", node.kind)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub speaker: String,
    pub start: f64,
    pub end: f64,
}

impl Segment {
    pub fn new(speaker: impl Into<String>, start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || start < 0.0 || start >= end {
            return Err(Error::InvalidInput(format!("invalid segment [{start}, {end})")));
        }
        Ok(Segment {
            speaker: speaker.into(),
            start,
            end,
        })
    }

    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}
