//! Spatial-temporal heterogeneous graph construction.
//!
//! Within a frame every pair of nodes is connected regardless of identity.
//! Across frames, nodes of the same identity (same face track, or both the
//! wearer) are connected when their frame gap is at most the temporal window.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::types::{Edge, EdgeKind, HeteroGraph, Node, NodeKind, VideoBundle, WEARER_ID};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphConfig {
    /// Largest frame gap joined by a temporal edge. Zero disables temporal edges.
    pub temporal_window: u32,
    /// Frames per emitted sub-graph; zero emits one graph for the whole video.
    pub clip_len: u32,
    /// Only frames divisible by the stride become nodes.
    pub node_stride: u32,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            temporal_window: 30,
            clip_len: 300,
            node_stride: 1,
        }
    }
}

impl GraphConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_stride == 0 {
            return Err(Error::InvalidConfig("node_stride must be at least 1".into()));
        }
        if self.clip_len != 0 && self.clip_len <= self.temporal_window {
            return Err(Error::InvalidConfig(format!(
                "clip_len {} must exceed the temporal window {}",
                self.clip_len, self.temporal_window
            )));
        }
        Ok(())
    }

    fn clip_of(&self, frame: u32) -> u32 {
        if self.clip_len == 0 {
            0
        } else {
            frame / self.clip_len
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Identity {
    Track(u32),
    Wearer,
}

struct Pending {
    kind: NodeKind,
    identity: Identity,
    node: Node,
}

/// Converts a video into one heterogeneous graph per clip, in clip order.
///
/// Nodes are ordered by frame; within a frame visible tracks come first in
/// bundle order, followed by the wearer.
pub fn build_graph(bundle: &VideoBundle, cfg: &GraphConfig) -> Result<Vec<HeteroGraph>> {
    cfg.validate()?;
    if bundle.is_empty() {
        return Err(Error::EmptyVideo);
    }
    bundle.validate()?;

    let label_for = |person: &str, frame: u32| -> Result<Option<bool>> {
        match &bundle.labels {
            None => Ok(None),
            Some(_) => bundle.label(person, frame).map(Some).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "video {}: missing label for {} at frame {}",
                    bundle.video_id, person, frame
                ))
            }),
        }
    };

    // clip -> frame -> nodes in emission order
    let mut clips: BTreeMap<u32, BTreeMap<u32, Vec<Pending>>> = BTreeMap::new();
    for track in &bundle.tracks {
        for e in track.entries.iter().filter(|e| e.frame % cfg.node_stride == 0) {
            let kind = NodeKind::Visible {
                track_id: track.track_id,
                frame: e.frame,
            };
            let node = Node {
                kind,
                person_id: track.person_id.clone(),
                feature: e.feature.clone(),
                label: label_for(&track.person_id, e.frame)?,
                bbox: Some(e.bbox),
            };
            clips
                .entry(cfg.clip_of(e.frame))
                .or_default()
                .entry(e.frame)
                .or_default()
                .push(Pending {
                    kind,
                    identity: Identity::Track(track.track_id),
                    node,
                });
        }
    }
    for e in bundle
        .wearer
        .entries
        .iter()
        .filter(|e| e.frame % cfg.node_stride == 0)
    {
        let kind = NodeKind::Wearer { frame: e.frame };
        let node = Node {
            kind,
            person_id: String::from(WEARER_ID),
            feature: e.feature.clone(),
            label: label_for(WEARER_ID, e.frame)?,
            bbox: None,
        };
        clips
            .entry(cfg.clip_of(e.frame))
            .or_default()
            .entry(e.frame)
            .or_default()
            .push(Pending {
                kind,
                identity: Identity::Wearer,
                node,
            });
    }

    Ok(clips
        .into_values()
        .map(|frames| assemble(frames, cfg.temporal_window))
        .collect())
}

fn assemble(frames: BTreeMap<u32, Vec<Pending>>, window: u32) -> HeteroGraph {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut chains: BTreeMap<Identity, Vec<usize>> = BTreeMap::new();

    for pending in frames.into_values() {
        let first = nodes.len();
        for p in pending {
            chains.entry(p.identity).or_default().push(nodes.len());
            debug_assert_eq!(p.kind, p.node.kind);
            nodes.push(p.node);
        }
        for i in first..nodes.len() {
            for j in i + 1..nodes.len() {
                edges.push(Edge {
                    src: i,
                    dst: j,
                    kind: EdgeKind::between(&nodes[i].kind, &nodes[j].kind),
                });
            }
        }
    }

    for chain in chains.values() {
        for (a, &i) in chain.iter().enumerate() {
            let fi = nodes[i].frame();
            for &j in &chain[a + 1..] {
                if nodes[j].frame() - fi > window {
                    break;
                }
                edges.push(Edge {
                    src: i,
                    dst: j,
                    kind: EdgeKind::between(&nodes[i].kind, &nodes[j].kind),
                });
            }
        }
    }

    edges.sort_unstable();
    HeteroGraph { nodes, edges }
}

/// Fraction of node pairs joined by an edge.
pub fn graph_density(g: &HeteroGraph) -> Result<f64> {
    let n = g.num_nodes();
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let pairs = (n as f64) * (n as f64 - 1.0) / 2.0;
    Ok(g.edges.len() as f64 / pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{BBox, FaceTrack, TrackEntry, WearerEntry, WearerStream};
    use alloc::string::ToString;
    use alloc::vec;

    fn track(id: u32, person: &str, frames: &[u32]) -> FaceTrack {
        FaceTrack {
            track_id: id,
            person_id: person.to_string(),
            entries: frames
                .iter()
                .map(|&f| TrackEntry {
                    frame: f,
                    bbox: BBox::new(0.0, 0.0, 10.0, 10.0).unwrap(),
                    feature: vec![f as f32, id as f32],
                })
                .collect(),
        }
    }

    fn wearer(frames: &[u32]) -> WearerStream {
        WearerStream {
            entries: frames
                .iter()
                .map(|&f| WearerEntry {
                    frame: f,
                    feature: vec![f as f32],
                })
                .collect(),
        }
    }

    fn bundle(tracks: Vec<FaceTrack>, w: WearerStream, num_frames: u32) -> VideoBundle {
        VideoBundle {
            video_id: "v".to_string(),
            fps: 30.0,
            num_frames,
            tracks,
            wearer: w,
            labels: None,
        }
    }

    fn cfg(window: u32, clip_len: u32) -> GraphConfig {
        GraphConfig {
            temporal_window: window,
            clip_len,
            node_stride: 1,
        }
    }

    /// Brute-force edge rule applied to every node pair.
    fn brute_edges(g: &HeteroGraph, window: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..g.nodes.len() {
            for j in i + 1..g.nodes.len() {
                let (a, b) = (&g.nodes[i].kind, &g.nodes[j].kind);
                let gap = a.frame().abs_diff(b.frame());
                let same_identity = match (a, b) {
                    (NodeKind::Visible { track_id: x, .. }, NodeKind::Visible { track_id: y, .. }) => x == y,
                    (NodeKind::Wearer { .. }, NodeKind::Wearer { .. }) => true,
                    _ => false,
                };
                if gap == 0 || (same_identity && gap <= window) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn single_frame_is_complete() {
        let b = bundle(vec![track(1, "A", &[0]), track(2, "B", &[0])], wearer(&[0]), 1);
        let gs = build_graph(&b, &cfg(0, 0)).unwrap();
        assert_eq!(gs.len(), 1);
        let g = &gs[0];
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.edge_count(EdgeKind::VV), 1);
        assert_eq!(g.edge_count(EdgeKind::VW), 2);
        assert_eq!(g.edge_count(EdgeKind::WW), 0);
    }

    #[test]
    fn two_frames_one_track_and_wearer() {
        let b = bundle(vec![track(1, "A", &[0, 1])], wearer(&[0, 1]), 2);
        let g = &build_graph(&b, &cfg(1, 0)).unwrap()[0];
        assert_eq!(g.num_nodes(), 4);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.edge_count(EdgeKind::VW), 2);
        assert_eq!(g.edge_count(EdgeKind::VV), 1);
        assert_eq!(g.edge_count(EdgeKind::WW), 1);
        let expected = brute_edges(g, 1);
        let got: Vec<_> = g.edges.iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_video_rejected() {
        let b = bundle(vec![], WearerStream::default(), 10);
        assert_eq!(build_graph(&b, &cfg(1, 0)), Err(Error::EmptyVideo));
    }

    #[test]
    fn config_validation() {
        assert!(cfg(30, 30).validate().is_err());
        assert!(cfg(30, 0).validate().is_ok());
        let mut c = cfg(1, 10);
        c.node_stride = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn density_examples() {
        let b = bundle(
            vec![track(1, "A", &[0]), track(2, "B", &[0]), track(3, "C", &[0])],
            wearer(&[0]),
            1,
        );
        let g = &build_graph(&b, &cfg(0, 0)).unwrap()[0];
        assert_eq!(graph_density(g).unwrap(), 1.0);
        let mut empty = g.clone();
        empty.edges.clear();
        assert_eq!(graph_density(&empty).unwrap(), 0.0);
        empty.edges = g.edges[..3].to_vec();
        assert_eq!(graph_density(&empty).unwrap(), 0.5);
        let mut single = g.clone();
        single.nodes.truncate(1);
        single.edges.clear();
        assert_eq!(graph_density(&single), Err(Error::TooFewNodes(1)));
    }

    #[test]
    fn clips_do_not_share_temporal_edges() {
        let frames: Vec<u32> = (0..20).collect();
        let b = bundle(vec![track(1, "A", &frames)], wearer(&frames), 20);
        let gs = build_graph(&b, &cfg(3, 10)).unwrap();
        assert_eq!(gs.len(), 2);
        for g in &gs {
            assert_eq!(g.num_nodes(), 20);
            g.validate().unwrap();
            let mut expected = brute_edges(g, 3);
            expected.sort_unstable();
            let got: Vec<_> = g.edges.iter().map(|e| (e.src, e.dst)).collect();
            assert_eq!(got, expected);
        }
        assert!(gs[1].nodes.iter().all(|n| n.frame() >= 10));
    }

    #[test]
    fn stride_drops_frames() {
        let frames: Vec<u32> = (0..10).collect();
        let b = bundle(vec![track(1, "A", &frames)], wearer(&frames), 10);
        let c = GraphConfig {
            temporal_window: 4,
            clip_len: 0,
            node_stride: 2,
        };
        let g = &build_graph(&b, &c).unwrap()[0];
        assert_eq!(g.num_nodes(), 10);
        assert!(g.nodes.iter().all(|n| n.frame() % 2 == 0));
        // each chain of 5 nodes at frames 0,2,4,6,8 links gaps 2 and 4
        assert_eq!(g.edge_count(EdgeKind::VV), 7);
        assert_eq!(g.edge_count(EdgeKind::WW), 7);
    }

    #[test]
    fn missing_wearer_frames_have_no_node() {
        let b = bundle(vec![track(1, "A", &[0, 1, 2])], wearer(&[0, 2]), 3);
        let g = &build_graph(&b, &cfg(0, 0)).unwrap()[0];
        assert_eq!(g.num_nodes(), 5);
        assert!(!g.nodes.iter().any(|n| n.kind == NodeKind::Wearer { frame: 1 }));
    }

    #[test]
    fn labels_attach_to_nodes() {
        let mut b = bundle(vec![track(1, "A", &[0, 1])], wearer(&[0, 1]), 2);
        let mut labels = crate::types::LabelMap::new();
        labels.insert(("A".to_string(), 0), true);
        labels.insert(("A".to_string(), 1), false);
        labels.insert((WEARER_ID.to_string(), 0), false);
        b.labels = Some(labels.clone());
        assert!(build_graph(&b, &cfg(1, 0)).is_err());
        labels.insert((WEARER_ID.to_string(), 1), true);
        b.labels = Some(labels);
        let g = &build_graph(&b, &cfg(1, 0)).unwrap()[0];
        assert!(g.is_labeled());
        assert_eq!(g.labels().unwrap(), vec![1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn density_non_increasing_with_length() {
        let window = 3;
        let mut prev = f64::INFINITY;
        for len in (2 * window + 1)..40 {
            let frames: Vec<u32> = (0..len).collect();
            let b = bundle(
                vec![track(1, "A", &frames), track(2, "B", &frames)],
                wearer(&frames),
                len,
            );
            let g = &build_graph(&b, &cfg(window, 0)).unwrap()[0];
            assert_eq!(g.edges.len(), brute_edges(g, window).len());
            let d = graph_density(g).unwrap();
            assert!(d <= prev + 1e-15, "len {len}: {d} > {prev}");
            prev = d;
        }
    }

    #[test]
    fn spatial_completeness_and_temporal_kinds() {
        let b = bundle(
            vec![
                track(1, "A", &[0, 1, 2, 5, 6]),
                track(2, "B", &[1, 2, 3]),
                track(3, "A", &[8, 9]),
            ],
            wearer(&[0, 2, 3, 4, 5, 9]),
            10,
        );
        let g = &build_graph(&b, &cfg(2, 0)).unwrap()[0];
        g.validate().unwrap();
        for f in 0..10 {
            let idx: Vec<usize> = (0..g.num_nodes()).filter(|&i| g.nodes[i].frame() == f).collect();
            for (a, &i) in idx.iter().enumerate() {
                for &j in &idx[a + 1..] {
                    assert!(g.edges.iter().any(|e| e.src == i && e.dst == j));
                }
            }
        }
        for e in &g.edges {
            let gap = g.nodes[e.src].frame().abs_diff(g.nodes[e.dst].frame());
            if gap > 0 {
                assert_ne!(e.kind, EdgeKind::VW);
            }
        }
        let got: Vec<_> = g.edges.iter().map(|e| (e.src, e.dst)).collect();
        assert_eq!(got, brute_edges(g, 2));
        assert_eq!(build_graph(&b, &cfg(2, 0)).unwrap()[0], *g);
    }
}
