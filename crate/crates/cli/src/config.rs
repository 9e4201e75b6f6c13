//! Run configuration shared by all commands.
//!
//! Keys are namespaced by stage (`graph.`, `model.`, `post.`, `synth.`).
//! Anything not set keeps its library default; unknown keys are rejected.

use sthg_core::model::Aggregation;
use sthg_core::pipeline::{VadMode, VadTarget};
use sthg_core::synth::ScenarioConfig;
use sthg_core::{GraphConfig, ModelConfig, PostConfig};

use crate::error::{read_text, CliResult};
use crate::formats::kv::{parse_kv, write_kv, KvEntry, KvValue};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub graph: GraphConfig,
    pub model: ModelConfig,
    pub post: PostConfig,
    pub synth: ScenarioConfig,
}

pub(crate) fn schedule_name(s: &[Aggregation]) -> String {
    s.iter().map(|a| a.name()).collect::<Vec<_>>().join(",")
}

fn parse_schedule(v: &KvValue) -> CliResult<[Aggregation; 3]> {
    let parts: Vec<_> = v.str().split(',').map(Aggregation::parse).collect();
    match parts.as_slice() {
        [Some(a), Some(b), Some(c)] => Ok([*a, *b, *c]),
        _ => Err(v.error("expected three of mean|max separated by commas")),
    }
}

impl RunConfig {
    pub fn load(path: Option<&std::path::Path>) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        if let Some(p) = path {
            let file = p.display().to_string();
            cfg.apply(&file, &parse_kv(&file, &read_text(p)?)?)?;
        }
        Ok(cfg)
    }

    /// Sets one `seed` for every randomized stage.
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        if let Some(s) = seed {
            self.model.seed = s;
            self.synth.seed = s;
        }
        self
    }

    pub fn apply(&mut self, file: &str, entries: &[KvEntry]) -> CliResult<()> {
        for entry in entries {
            let v = KvValue { file, entry };
            if !self.set(&v)? {
                return Err(v.error("unknown key"));
            }
        }
        self.graph.validate()?;
        self.model.validate()?;
        self.post.validate()?;
        self.synth.validate()?;
        Ok(())
    }

    /// Returns false for an unknown key.
    fn set(&mut self, v: &KvValue) -> CliResult<bool> {
        let (g, m, p, s) = (&mut self.graph, &mut self.model, &mut self.post, &mut self.synth);
        match v.entry.key.as_str() {
            "graph.temporal_window" => g.temporal_window = v.parse()?,
            "graph.clip_len" => g.clip_len = v.parse()?,
            "graph.node_stride" => g.node_stride = v.parse()?,
            "model.d_av" => m.d_av = v.parse()?,
            "model.d_a" => m.d_a = v.parse()?,
            "model.d_h" => m.d_h = v.parse()?,
            "model.agg_schedule" => m.agg_schedule = parse_schedule(v)?,
            "model.learning_rate" => m.learning_rate = v.finite()?,
            "model.epochs" => m.epochs = v.parse()?,
            "model.l2_weight" => m.l2_weight = v.finite()?,
            "model.seed" => m.seed = v.parse()?,
            "post.threshold" => p.threshold = v.finite()?,
            "post.min_segment_dur" => p.min_segment_dur = v.finite()?,
            "post.merge_gap" => p.merge_gap = v.finite()?,
            "post.vad_target" => {
                p.vad_target = VadTarget::parse(v.str())
                    .ok_or_else(|| v.error("expected none|cw_only|others_only|all"))?
            }
            "post.vad_mode" => {
                p.vad_mode =
                    VadMode::parse(v.str()).ok_or_else(|| v.error("expected intersect|union"))?
            }
            "post.voice_match_threshold" => p.voice_match_threshold = v.finite()?,
            "post.voice_match_enabled" => p.voice_match_enabled = v.boolean()?,
            "synth.num_videos" => s.num_videos = v.parse()?,
            "synth.num_frames" => s.num_frames = v.parse()?,
            "synth.fps" => s.fps = v.finite()?,
            "synth.num_visible_speakers" => s.num_visible_speakers = v.parse()?,
            "synth.d_av" => s.d_av = v.parse()?,
            "synth.d_a" => s.d_a = v.parse()?,
            "synth.speaking_signal_strength" => s.speaking_signal_strength = v.finite()?,
            "synth.cross_speaker_coupling" => s.cross_speaker_coupling = v.finite()?,
            "synth.cw_false_positive_rate" => s.cw_false_positive_rate = v.finite()?,
            "synth.vad_accuracy" => s.vad_accuracy = v.finite()?,
            "synth.track_len" => s.track_len = v.parse()?,
            "synth.seed" => s.seed = v.parse()?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn graph_entries(g: &GraphConfig) -> Vec<(String, String)> {
        vec![
            ("graph.temporal_window".into(), g.temporal_window.to_string()),
            ("graph.clip_len".into(), g.clip_len.to_string()),
            ("graph.node_stride".into(), g.node_stride.to_string()),
        ]
    }

    pub fn model_entries(m: &ModelConfig) -> Vec<(String, String)> {
        vec![
            ("model.d_av".into(), m.d_av.to_string()),
            ("model.d_a".into(), m.d_a.to_string()),
            ("model.d_h".into(), m.d_h.to_string()),
            ("model.agg_schedule".into(), schedule_name(&m.agg_schedule)),
            ("model.learning_rate".into(), m.learning_rate.to_string()),
            ("model.epochs".into(), m.epochs.to_string()),
            ("model.l2_weight".into(), m.l2_weight.to_string()),
            ("model.seed".into(), m.seed.to_string()),
        ]
    }

    pub fn entries(&self) -> Vec<(String, String)> {
        let (p, s) = (&self.post, &self.synth);
        let mut out = Self::graph_entries(&self.graph);
        out.extend(Self::model_entries(&self.model));
        out.extend([
            ("post.threshold".into(), p.threshold.to_string()),
            ("post.min_segment_dur".into(), p.min_segment_dur.to_string()),
            ("post.merge_gap".into(), p.merge_gap.to_string()),
            ("post.vad_target".into(), p.vad_target.name().to_string()),
            ("post.vad_mode".into(), p.vad_mode.name().to_string()),
            ("post.voice_match_threshold".into(), p.voice_match_threshold.to_string()),
            ("post.voice_match_enabled".into(), p.voice_match_enabled.to_string()),
            ("synth.num_videos".into(), s.num_videos.to_string()),
            ("synth.num_frames".into(), s.num_frames.to_string()),
            ("synth.fps".into(), s.fps.to_string()),
            ("synth.num_visible_speakers".into(), s.num_visible_speakers.to_string()),
            ("synth.d_av".into(), s.d_av.to_string()),
            ("synth.d_a".into(), s.d_a.to_string()),
            ("synth.speaking_signal_strength".into(), s.speaking_signal_strength.to_string()),
            ("synth.cross_speaker_coupling".into(), s.cross_speaker_coupling.to_string()),
            ("synth.cw_false_positive_rate".into(), s.cw_false_positive_rate.to_string()),
            ("synth.vad_accuracy".into(), s.vad_accuracy.to_string()),
            ("synth.track_len".into(), s.track_len.to_string()),
            ("synth.seed".into(), s.seed.to_string()),
        ]);
        out
    }

    pub fn to_text(&self) -> String {
        write_kv(Some("sthg run configuration"), &self.entries())
    }
}
