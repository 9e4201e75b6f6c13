//! From per-node speaking scores to refined diarization segments.
//!
//! Scores are thresholded into per-person runs, merged across short gaps and
//! filtered by duration. The resulting segments are then refined by fusing
//! with speaker-agnostic VAD intervals and by dropping segments whose audio
//! does not match the claimed speaker's voice profile.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{build_graph, GraphConfig};
use crate::linalg::cosine;
use crate::model::{predict, ModelConfig, ModelParams};
use crate::types::{BBox, NodeKind, Segment, VideoBundle, WEARER_ID};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VadTarget {
    None,
    WearerOnly,
    OthersOnly,
    All,
}

impl VadTarget {
    pub fn targets(self, speaker: &str) -> bool {
        match self {
            VadTarget::None => false,
            VadTarget::WearerOnly => speaker == WEARER_ID,
            VadTarget::OthersOnly => speaker != WEARER_ID,
            VadTarget::All => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VadTarget::None => "none",
            VadTarget::WearerOnly => "cw_only",
            VadTarget::OthersOnly => "others_only",
            VadTarget::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Some(VadTarget::None),
            "cw_only" => Some(VadTarget::WearerOnly),
            "others_only" => Some(VadTarget::OthersOnly),
            "all" => Some(VadTarget::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VadMode {
    /// Keep only the parts of a segment covered by VAD speech.
    Intersect,
    /// Grow a segment to the extent of the VAD intervals it overlaps.
    Union,
}

impl VadMode {
    pub fn name(self) -> &'static str {
        match self {
            VadMode::Intersect => "intersect",
            VadMode::Union => "union",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "intersect" => Some(VadMode::Intersect),
            "union" => Some(VadMode::Union),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PostConfig {
    /// Frames with score >= threshold are speech.
    pub threshold: f64,
    pub min_segment_dur: f64,
    pub merge_gap: f64,
    pub vad_target: VadTarget,
    pub vad_mode: VadMode,
    pub voice_match_threshold: f64,
    pub voice_match_enabled: bool,
}

impl Default for PostConfig {
    fn default() -> Self {
        PostConfig {
            threshold: 0.5,
            min_segment_dur: 0.2,
            merge_gap: 0.3,
            vad_target: VadTarget::WearerOnly,
            vad_mode: VadMode::Intersect,
            voice_match_threshold: 0.0,
            voice_match_enabled: true,
        }
    }
}

impl PostConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "score threshold {} not in (0, 1)",
                self.threshold
            )));
        }
        if !(self.min_segment_dur >= 0.0 && self.min_segment_dur.is_finite()) {
            return Err(Error::InvalidConfig("min_segment_dur must be >= 0".into()));
        }
        if !(self.merge_gap >= 0.0 && self.merge_gap.is_finite()) {
            return Err(Error::InvalidConfig("merge_gap must be >= 0".into()));
        }
        if !(-1.0..=1.0).contains(&self.voice_match_threshold) {
            return Err(Error::InvalidConfig(
                "voice match threshold must be in [-1, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Speaker-agnostic speech intervals, kept sorted and non-overlapping.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VadSegments {
    intervals: Vec<(f64, f64)>,
}

impl VadSegments {
    /// Sorts and merges overlapping or touching intervals. Empty or inverted
    /// intervals are rejected.
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite()) || a < 0.0 || a >= b {
                return Err(Error::InvalidInput(format!("invalid VAD interval [{a}, {b})")));
            }
        }
        intervals.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(VadSegments { intervals: merged })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn total(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

/// Per-person frame scores: `person -> frame -> score`.
pub type PersonScores = BTreeMap<String, BTreeMap<u32, f64>>;

fn by_start(a: &Segment, b: &Segment) -> core::cmp::Ordering {
    a.start
        .partial_cmp(&b.start)
        .expect("finite")
        .then_with(|| a.speaker.cmp(&b.speaker))
        .then_with(|| a.end.partial_cmp(&b.end).expect("finite"))
}

/// Sorts by start time and merges overlapping or touching segments of the
/// same speaker.
pub fn normalize_segments(segs: Vec<Segment>) -> Vec<Segment> {
    let mut per: BTreeMap<String, Vec<Segment>> = BTreeMap::new();
    for s in segs {
        per.entry(s.speaker.clone()).or_default().push(s);
    }
    let mut out = Vec::new();
    for (_, mut list) in per {
        list.sort_by(by_start);
        let mut merged: Vec<Segment> = Vec::with_capacity(list.len());
        for s in list {
            match merged.last_mut() {
                Some(last) if s.start <= last.end => last.end = last.end.max(s.end),
                _ => merged.push(s),
            }
        }
        out.extend(merged);
    }
    out.sort_by(by_start);
    out
}

/// Thresholds per-frame scores into segments.
///
/// Maximal runs of consecutive positive frames `[first, last]` become
/// `[first / fps, (last + 1) / fps)`. Segments of one person separated by
/// less than `merge_gap` seconds are merged, then segments shorter than
/// `min_segment_dur` are dropped.
pub fn scores_to_segments(scores: &PersonScores, fps: f64, cfg: &PostConfig) -> Result<Vec<Segment>> {
    if !(fps > 0.0) || !fps.is_finite() {
        return Err(Error::InvalidFps(fps));
    }
    let mut out = Vec::new();
    for (person, frames) in scores {
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for (&f, &s) in frames {
            if s < cfg.threshold {
                continue;
            }
            match runs.last_mut() {
                Some(run) if run.1 + 1 == f => run.1 = f,
                _ => runs.push((f, f)),
            }
        }
        let mut segs: Vec<(f64, f64)> = Vec::new();
        for (a, b) in runs {
            let (start, end) = (a as f64 / fps, (b as f64 + 1.0) / fps);
            match segs.last_mut() {
                Some(last) if start - last.1 < cfg.merge_gap => last.1 = end,
                _ => segs.push((start, end)),
            }
        }
        for (start, end) in segs {
            if end - start >= cfg.min_segment_dur {
                out.push(Segment {
                    speaker: person.clone(),
                    start,
                    end,
                });
            }
        }
    }
    out.sort_by(by_start);
    Ok(out)
}

/// Reference segments from per-frame labels: consecutive positive frames of
/// a person are merged, with no gap filling or duration filter.
pub fn reference_segments(bundle: &VideoBundle) -> Result<Vec<Segment>> {
    let labels = bundle
        .labels
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("video {} has no labels", bundle.video_id)))?;
    let mut scores = PersonScores::new();
    for ((person, frame), &speaking) in labels {
        scores
            .entry(person.clone())
            .or_default()
            .insert(*frame, if speaking { 1.0 } else { 0.0 });
    }
    let cfg = PostConfig {
        threshold: 0.5,
        min_segment_dur: 0.0,
        merge_gap: 0.0,
        ..PostConfig::default()
    };
    scores_to_segments(&scores, bundle.fps, &cfg)
}

/// Applies VAD to the segments of targeted speakers. Untargeted segments are
/// passed through untouched.
pub fn vad_fuse(diar: &[Segment], vad: &VadSegments, cfg: &PostConfig) -> Vec<Segment> {
    if cfg.vad_target == VadTarget::None {
        return diar.to_vec();
    }
    let mut kept = Vec::new();
    let mut fused = Vec::new();
    for s in diar {
        if !cfg.vad_target.targets(&s.speaker) {
            kept.push(s.clone());
            continue;
        }
        let overlapping = vad
            .intervals()
            .iter()
            .filter(|&&(a, b)| a < s.end && b > s.start);
        match cfg.vad_mode {
            VadMode::Intersect => {
                for &(a, b) in overlapping {
                    fused.push(Segment {
                        speaker: s.speaker.clone(),
                        start: a.max(s.start),
                        end: b.min(s.end),
                    });
                }
            }
            VadMode::Union => {
                let (start, end) = overlapping.fold((s.start, s.end), |(lo, hi), &(a, b)| {
                    (lo.min(a), hi.max(b))
                });
                fused.push(Segment {
                    speaker: s.speaker.clone(),
                    start,
                    end,
                });
            }
        }
    }
    kept.extend(normalize_segments(fused));
    kept.sort_by(by_start);
    kept
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoiceMatchOutcome {
    pub segments: Vec<Segment>,
    /// Segments dropped because no feature frame falls inside them.
    pub uncovered: usize,
    /// Segments dropped for low similarity to their speaker's profile.
    pub rejected: usize,
}

fn audio_at(bundle: &VideoBundle, speaker: &str, frame: u32, audio_dim: usize) -> Option<Vec<f64>> {
    let tail = |f: &[f32]| -> Vec<f64> {
        f[f.len().saturating_sub(audio_dim)..].iter().map(|&v| v as f64).collect()
    };
    if speaker == WEARER_ID {
        let e = &bundle.wearer.entries;
        e.binary_search_by_key(&frame, |x| x.frame)
            .ok()
            .map(|i| tail(&e[i].feature))
    } else {
        bundle
            .tracks
            .iter()
            .filter(|t| t.person_id == speaker)
            .find_map(|t| {
                t.entries
                    .binary_search_by_key(&frame, |x| x.frame)
                    .ok()
                    .map(|i| tail(&t.entries[i].feature))
            })
    }
}

fn covered_frames(s: &Segment, fps: f64) -> core::ops::Range<u32> {
    let first = libm::ceil(s.start * fps - 1e-9).max(0.0) as u32;
    let end = libm::ceil(s.end * fps - 1e-9).max(0.0) as u32;
    first..end
}

/// Drops segments whose mean audio feature has cosine similarity below the
/// threshold to the speaker's profile, the frame-weighted mean audio over all
/// of that speaker's segments.
///
/// Audio for the wearer is its stream feature; for visible people it is the
/// last `audio_dim` coordinates of the track feature.
pub fn voice_match(
    diar: &[Segment],
    bundle: &VideoBundle,
    audio_dim: usize,
    cfg: &PostConfig,
) -> VoiceMatchOutcome {
    if !cfg.voice_match_enabled {
        return VoiceMatchOutcome {
            segments: diar.to_vec(),
            uncovered: 0,
            rejected: 0,
        };
    }
    // (sum of audio vectors, frame count) per segment
    let sums: Vec<Option<(Vec<f64>, usize)>> = diar
        .iter()
        .map(|s| {
            let mut acc: Option<(Vec<f64>, usize)> = None;
            for f in covered_frames(s, bundle.fps) {
                if let Some(a) = audio_at(bundle, &s.speaker, f, audio_dim) {
                    let (sum, n) = acc.get_or_insert_with(|| (vec![0.0; a.len()], 0));
                    for (x, y) in sum.iter_mut().zip(&a) {
                        *x += y;
                    }
                    *n += 1;
                }
            }
            acc
        })
        .collect();

    let mut profiles: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (s, acc) in diar.iter().zip(&sums) {
        if let Some((sum, _)) = acc {
            let p = profiles
                .entry(s.speaker.as_str())
                .or_insert_with(|| vec![0.0; sum.len()]);
            for (x, y) in p.iter_mut().zip(sum) {
                *x += y;
            }
        }
    }

    let mut out = VoiceMatchOutcome {
        segments: Vec::new(),
        uncovered: 0,
        rejected: 0,
    };
    for (s, acc) in diar.iter().zip(&sums) {
        match acc {
            None => out.uncovered += 1,
            Some((sum, _)) => {
                // scaling does not change the cosine, so sums stand in for means
                if cosine(sum, &profiles[s.speaker.as_str()]) >= cfg.voice_match_threshold {
                    out.segments.push(s.clone());
                } else {
                    out.rejected += 1;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredNode {
    pub kind: NodeKind,
    pub person_id: String,
    pub score: f64,
    pub label: Option<bool>,
    pub bbox: Option<BBox>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub nodes: Vec<ScoredNode>,
    /// Segments straight from thresholding.
    pub initial: Vec<Segment>,
    /// After VAD fusion.
    pub fused: Vec<Segment>,
    /// After voice matching.
    pub segments: Vec<Segment>,
    pub uncovered: usize,
    pub rejected: usize,
}

/// Scores every node of the video, in graph then node order.
pub fn score_nodes(
    bundle: &VideoBundle,
    params: &ModelParams,
    graph_cfg: &GraphConfig,
    model_cfg: &ModelConfig,
) -> Result<Vec<ScoredNode>> {
    let mut out = Vec::new();
    for g in build_graph(bundle, graph_cfg)? {
        let scores = predict(&g, params, model_cfg)?;
        out.extend(g.nodes.into_iter().zip(scores).map(|(n, score)| ScoredNode {
            kind: n.kind,
            person_id: n.person_id,
            score,
            label: n.label,
            bbox: n.bbox,
        }));
    }
    Ok(out)
}

/// Spreads node scores to every frame a node stands for. With a stride, the
/// node at frame `f` covers `[f, f + stride)`. When one person has several
/// nodes in a frame the highest score wins.
pub fn person_scores(nodes: &[ScoredNode], stride: u32, num_frames: u32) -> PersonScores {
    let mut out = PersonScores::new();
    for n in nodes {
        let frames = out.entry(n.person_id.clone()).or_default();
        let f0 = n.kind.frame();
        for f in f0..f0.saturating_add(stride.max(1)).min(num_frames.max(f0 + 1)) {
            let slot = frames.entry(f).or_insert(f64::NEG_INFINITY);
            *slot = slot.max(n.score);
        }
    }
    out
}

/// Graph construction, node scoring, thresholding, VAD fusion and voice
/// matching for one video.
pub fn run_pipeline(
    bundle: &VideoBundle,
    params: &ModelParams,
    graph_cfg: &GraphConfig,
    model_cfg: &ModelConfig,
    post_cfg: &PostConfig,
    vad: &VadSegments,
) -> Result<PipelineOutput> {
    post_cfg.validate()?;
    model_cfg.validate()?;
    let nodes = score_nodes(bundle, params, graph_cfg, model_cfg)?;
    let scores = person_scores(&nodes, graph_cfg.node_stride, bundle.num_frames);
    let initial = scores_to_segments(&scores, bundle.fps, post_cfg)?;
    let fused = vad_fuse(&initial, vad, post_cfg);
    let matched = voice_match(&fused, bundle, model_cfg.d_a, post_cfg);
    Ok(PipelineOutput {
        nodes,
        initial,
        fused,
        segments: matched.segments,
        uncovered: matched.uncovered,
        rejected: matched.rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{FaceTrack, TrackEntry, WearerEntry, WearerStream};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn seg(s: &str, a: f64, b: f64) -> Segment {
        Segment::new(s, a, b).unwrap()
    }

    fn frames(person: &str, values: &[f64]) -> PersonScores {
        let mut m = PersonScores::new();
        m.insert(
            person.to_string(),
            values.iter().enumerate().map(|(i, &v)| (i as u32, v)).collect(),
        );
        m
    }

    fn post() -> PostConfig {
        PostConfig {
            min_segment_dur: 0.0,
            merge_gap: 0.0,
            ..PostConfig::default()
        }
    }

    #[test]
    fn thresholding_examples() {
        let cfg = post();
        assert!(scores_to_segments(&frames("A", &[0.1, 0.4, 0.49]), 10.0, &cfg).unwrap().is_empty());
        let s = scores_to_segments(&frames("A", &[0.9; 10]), 10.0, &cfg).unwrap();
        assert_eq!(s, vec![seg("A", 0.0, 1.0)]);
        let mut v = [0.9; 10];
        v[5] = 0.1;
        let merged = PostConfig { merge_gap: 0.15, ..cfg };
        assert_eq!(
            scores_to_segments(&frames("A", &v), 10.0, &merged).unwrap(),
            vec![seg("A", 0.0, 1.0)]
        );
        assert_eq!(scores_to_segments(&frames("A", &v), 10.0, &cfg).unwrap().len(), 2);
        assert!(scores_to_segments(&frames("A", &v), 0.0, &cfg).is_err());
    }

    #[test]
    fn threshold_is_inclusive_and_short_runs_drop() {
        let cfg = PostConfig {
            min_segment_dur: 0.25,
            ..post()
        };
        let s = scores_to_segments(&frames("A", &[0.5, 0.5, 0.0, 0.7, 0.7, 0.7]), 10.0, &cfg).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].start - 0.3).abs() < 1e-12 && (s[0].end - 0.6).abs() < 1e-12);
    }

    #[test]
    fn vad_normalization() {
        let v = VadSegments::new(vec![(3.0, 4.0), (0.0, 1.0), (0.5, 2.0), (4.0, 5.0)]).unwrap();
        assert_eq!(v.intervals(), &[(0.0, 2.0), (3.0, 5.0)]);
        assert!(VadSegments::new(vec![(1.0, 1.0)]).is_err());
    }

    #[test]
    fn vad_fusion_examples() {
        let diar = vec![seg(WEARER_ID, 0.0, 10.0), seg("A", 0.0, 10.0)];
        let vad = VadSegments::new(vec![(2.0, 4.0), (6.0, 7.0)]).unwrap();
        let none = PostConfig { vad_target: VadTarget::None, ..post() };
        assert_eq!(vad_fuse(&diar, &vad, &none), diar);

        let cw = PostConfig { vad_target: VadTarget::WearerOnly, vad_mode: VadMode::Intersect, ..post() };
        let out = vad_fuse(&diar, &vad, &cw);
        let cw_out: Vec<_> = out.iter().filter(|s| s.speaker == WEARER_ID).cloned().collect();
        assert_eq!(cw_out, vec![seg(WEARER_ID, 2.0, 4.0), seg(WEARER_ID, 6.0, 7.0)]);
        assert!(out.contains(&seg("A", 0.0, 10.0)));

        let out = vad_fuse(&diar, &VadSegments::default(), &cw);
        assert_eq!(out, vec![seg("A", 0.0, 10.0)]);
    }

    #[test]
    fn vad_union_extends_to_overlapping_intervals() {
        let diar = vec![seg(WEARER_ID, 3.0, 5.0), seg(WEARER_ID, 8.0, 8.5)];
        let vad = VadSegments::new(vec![(2.0, 4.0), (4.5, 6.0), (9.0, 10.0)]).unwrap();
        let cfg = PostConfig { vad_mode: VadMode::Union, ..post() };
        assert_eq!(
            vad_fuse(&diar, &vad, &cfg),
            vec![seg(WEARER_ID, 2.0, 6.0), seg(WEARER_ID, 8.0, 8.5)]
        );
    }

    fn voice_bundle(features: &[(u32, [f32; 2])]) -> VideoBundle {
        VideoBundle {
            video_id: "v".into(),
            fps: 10.0,
            num_frames: 100,
            tracks: vec![FaceTrack {
                track_id: 1,
                person_id: "A".into(),
                entries: features
                    .iter()
                    .map(|&(f, a)| TrackEntry {
                        frame: f,
                        bbox: BBox::new(0.0, 0.0, 1.0, 1.0).unwrap(),
                        feature: vec![9.0, a[0], a[1]],
                    })
                    .collect(),
            }],
            wearer: WearerStream {
                entries: features
                    .iter()
                    .map(|&(f, a)| WearerEntry { frame: f, feature: a.to_vec() })
                    .collect(),
            },
            labels: None,
        }
    }

    #[test]
    fn voice_matching_drops_orthogonal_segment() {
        let mut feats = Vec::new();
        for f in 0..10 {
            feats.push((f, [1.0, 0.0]));
        }
        for f in 20..30 {
            feats.push((f, [1.0, 0.0]));
        }
        for f in 40..50 {
            feats.push((f, [0.0, 1.0]));
        }
        let b = voice_bundle(&feats);
        let cfg = PostConfig { voice_match_threshold: 0.5, ..post() };
        for speaker in ["A", WEARER_ID] {
            let diar = vec![seg(speaker, 0.0, 1.0), seg(speaker, 2.0, 3.0), seg(speaker, 4.0, 5.0)];
            let out = voice_match(&diar, &b, 2, &cfg);
            assert_eq!(out.segments, diar[..2].to_vec());
            assert_eq!(out.rejected, 1);
        }
        let single = vec![seg("A", 4.0, 5.0)];
        assert_eq!(voice_match(&single, &b, 2, &PostConfig { voice_match_threshold: 1.0, ..cfg }).segments, single);
        let off = PostConfig { voice_match_enabled: false, ..cfg };
        let diar = vec![seg("A", 0.0, 1.0), seg("A", 4.0, 5.0)];
        assert_eq!(voice_match(&diar, &b, 2, &off).segments, diar);
        let gap = vec![seg("A", 0.0, 1.0), seg("A", 6.0, 7.0)];
        let out = voice_match(&gap, &b, 2, &cfg);
        assert_eq!(out.uncovered, 1);
        assert_eq!(out.segments, gap[..1].to_vec());
    }

    #[test]
    fn reference_from_labels() {
        let mut b = voice_bundle(&[(0, [1.0, 0.0])]);
        let mut labels = crate::types::LabelMap::new();
        for f in 0..6 {
            labels.insert(("A".into(), f), f != 2);
        }
        b.labels = Some(labels);
        assert_eq!(
            reference_segments(&b).unwrap(),
            vec![seg("A", 0.0, 0.2), seg("A", 0.3, 0.6)]
        );
    }

    #[test]
    fn stride_scores_cover_their_frames() {
        let nodes = vec![ScoredNode {
            kind: NodeKind::Wearer { frame: 4 },
            person_id: WEARER_ID.into(),
            score: 0.8,
            label: None,
            bbox: None,
        }];
        let s = person_scores(&nodes, 3, 6);
        assert_eq!(s[WEARER_ID].keys().copied().collect::<Vec<_>>(), vec![4, 5]);
    }

    fn arb_segments() -> impl Strategy<Value = Vec<Segment>> {
        proptest::collection::vec((0usize..3, 0.0f64..20.0, 0.05f64..4.0), 0..12).prop_map(|v| {
            let names = ["A", "B", WEARER_ID];
            normalize_segments(v.into_iter().map(|(s, a, d)| seg(names[s], a, a + d)).collect())
        })
    }

    fn arb_vad() -> impl Strategy<Value = VadSegments> {
        proptest::collection::vec((0.0f64..25.0, 0.05f64..3.0), 0..8)
            .prop_map(|v| VadSegments::new(v.into_iter().map(|(a, d)| (a, a + d)).collect()).unwrap())
    }

    fn cw_total(s: &[Segment]) -> f64 {
        s.iter().filter(|s| s.speaker == WEARER_ID).map(Segment::duration).sum()
    }

    proptest! {
        #[test]
        fn thresholded_segments_are_disjoint_and_long_enough(
            values in proptest::collection::vec(0.0f64..1.0, 0..80),
            gap in 0.0f64..0.5, min_dur in 0.0f64..0.5
        ) {
            let cfg = PostConfig { merge_gap: gap, min_segment_dur: min_dur, ..post() };
            let s = scores_to_segments(&frames("A", &values), 10.0, &cfg).unwrap();
            for w in s.windows(2) {
                prop_assert!(w[0].end < w[1].start);
            }
            for x in &s {
                prop_assert!(x.duration() >= min_dur);
            }
        }

        #[test]
        fn fusion_monotonicity(diar in arb_segments(), vad in arb_vad()) {
            let inter = PostConfig { vad_target: VadTarget::WearerOnly, vad_mode: VadMode::Intersect, ..post() };
            let union = PostConfig { vad_mode: VadMode::Union, ..inter };
            let before = cw_total(&diar);
            prop_assert!(cw_total(&vad_fuse(&diar, &vad, &inter)) <= before + 1e-9);
            prop_assert!(cw_total(&vad_fuse(&diar, &vad, &union)) >= before - 1e-9);
            for cfg in [inter, union] {
                let out = vad_fuse(&diar, &vad, &cfg);
                let others_in: Vec<_> = diar.iter().filter(|s| s.speaker != WEARER_ID).collect();
                let others_out: Vec<_> = out.iter().filter(|s| s.speaker != WEARER_ID).collect();
                prop_assert_eq!(others_in, others_out);
            }
        }

        #[test]
        fn voice_match_output_is_subset(diar in arb_segments(), thr in -1.0f64..1.0) {
            let feats: Vec<(u32, [f32; 2])> = (0..250).map(|f| (f, [((f * 7) % 11) as f32 - 5.0, ((f * 3) % 5) as f32 - 2.0])).collect();
            let b = voice_bundle(&feats);
            let out = voice_match(&diar, &b, 2, &PostConfig { voice_match_threshold: thr, ..post() });
            for s in &out.segments {
                prop_assert!(diar.contains(s));
            }
            prop_assert_eq!(out.segments.len() + out.uncovered + out.rejected, diar.len());
        }
    }
}
