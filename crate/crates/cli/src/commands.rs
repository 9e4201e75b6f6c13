//! The five subcommands. Each reads its inputs completely, validates them,
//! computes, and only then writes outputs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use sthg_core::metrics::{
    asd_map, asd_map_at_iou, der, edit_counts, DerBreakdown, EditCounts, GroundTruthBox,
    NodeScore, ScoredDetection,
};
use sthg_core::model::{train, TrainHistory};
use sthg_core::pipeline::{reference_segments, run_pipeline};
use sthg_core::synth::generate_video;
use sthg_core::{build_graph, NodeKind, VadSegments, VideoBundle};

use crate::config::RunConfig;
use crate::error::{read_text, write_text, CliError, CliResult};
use crate::formats::checkpoint::{parse_checkpoint, write_checkpoint, Checkpoint};
use crate::formats::kv::{parse_kv, write_kv};
use crate::formats::manifest::{
    load_dataset, write_dataset, Dataset, MANIFEST_FILE, REFERENCE_RTTM, TRANSCRIPT_FILE, VAD_FILE,
};
use crate::formats::rttm::{parse_rttm, write_rttm, SegmentsByFile};
use crate::formats::scores::{parse_scores, write_scores, ScoreRecord};

#[derive(Debug, Parser)]
#[command(name = "sthg", version, about = "Audio-visual diarization with heterogeneous graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic dataset.
    Synth(SynthArgs),
    /// Train a model on a labeled dataset.
    Train(TrainArgs),
    /// Score a dataset and write diarization segments.
    Diarize(DiarizeArgs),
    /// Compute metrics for diarization output and node scores.
    Eval(EvalArgs),
    /// Summarize training history and metric reports as tables.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Dataset directory containing manifest.txt.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Checkpoint to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Training history to write.
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct DiarizeArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub checkpoint: PathBuf,
    /// Post-processing settings (`post.*` keys).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// VAD records; defaults to vad.txt in the data directory when present.
    #[arg(long)]
    pub vad: Option<PathBuf>,
    /// RTTM to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-node scores to write.
    #[arg(long)]
    pub scores: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Dataset directory, used for labels, boxes and the reference RTTM.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub ref_rttm: Option<PathBuf>,
    #[arg(long)]
    pub hyp_rttm: Option<PathBuf>,
    /// Node scores written by `diarize --scores`.
    #[arg(long)]
    pub scores: Option<PathBuf>,
    /// Node-level speaking AP per population.
    #[arg(long)]
    pub map: bool,
    /// Box-matched speaking AP.
    #[arg(long)]
    pub map_iou: bool,
    #[arg(long, default_value_t = 0.5)]
    pub iou: f64,
    #[arg(long)]
    pub der: bool,
    /// Seconds excluded around every reference boundary.
    #[arg(long, default_value_t = 0.0)]
    pub collar: f64,
    #[arg(long)]
    pub wer: bool,
    #[arg(long)]
    pub ref_transcripts: Option<PathBuf>,
    #[arg(long)]
    pub hyp_transcripts: Option<PathBuf>,
    /// Row name used by `report`.
    #[arg(long)]
    pub label: Option<String>,
    /// Report to write; printed to stdout as well.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[arg(long, num_args = 1..)]
    pub metrics: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Synth(a) => cmd_synth(&a),
        Command::Train(a) => cmd_train(&a),
        Command::Diarize(a) => cmd_diarize(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Report(a) => cmd_report(&a),
    }
}

fn reference_rttm(videos: &[VideoBundle]) -> CliResult<SegmentsByFile> {
    let mut out = SegmentsByFile::new();
    for v in videos {
        if v.labels.is_some() {
            out.insert(v.video_id.clone(), reference_segments(v)?);
        }
    }
    Ok(out)
}

pub fn cmd_synth(a: &SynthArgs) -> CliResult<()> {
    let cfg = RunConfig::load(a.config.as_deref())?.with_seed(a.seed);
    cfg.synth.validate()?;
    let generated = (0..cfg.synth.num_videos)
        .into_par_iter()
        .map(|i| generate_video(&cfg.synth, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut data = Dataset::default();
    for g in generated {
        let id = g.bundle.video_id.clone();
        data.vad.insert(id.clone(), g.vad);
        data.transcripts.insert(id, g.transcripts);
        data.videos.push(g.bundle);
    }
    write_dataset(&a.out, &data)?;
    write_text(&a.out.join(REFERENCE_RTTM), &write_rttm(&reference_rttm(&data.videos)?)?)?;
    write_text(&a.out.join("config.txt"), &cfg.to_text())?;
    eprintln!("wrote {} videos to {}", data.videos.len(), a.out.display());
    Ok(())
}

fn load_data_dir(dir: &Path) -> CliResult<Dataset> {
    load_dataset(&[&dir.join(MANIFEST_FILE)])
}

fn check_dims(data: &Dataset, cfg: &RunConfig) -> CliResult<()> {
    for v in &data.videos {
        let bad_visible = v.visible_dim().is_some_and(|d| d != cfg.model.d_av);
        let bad_wearer = v.wearer_dim().is_some_and(|d| d != cfg.model.d_a);
        if bad_visible || bad_wearer {
            return Err(CliError::Invalid(format!(
                "video {}: feature dimensions ({:?}, {:?}) do not match model.d_av={} model.d_a={}",
                v.video_id,
                v.visible_dim(),
                v.wearer_dim(),
                cfg.model.d_av,
                cfg.model.d_a
            )));
        }
    }
    Ok(())
}

pub fn history_text(h: &TrainHistory, graphs: usize) -> String {
    let mut e: Vec<(String, String)> = vec![
        ("train.graphs".into(), graphs.to_string()),
        ("train.epochs".into(), h.epochs.len().to_string()),
        (
            "train.best_epoch".into(),
            h.best_epoch.map_or_else(|| "none".into(), |b| b.to_string()),
        ),
    ];
    for (i, s) in h.epochs.iter().enumerate() {
        e.push((format!("train.epoch.{i}.loss"), format!("{:.6}", s.loss)));
        e.push((
            format!("train.epoch.{i}.train_ap"),
            s.train_ap.map_or_else(|| "none".into(), |v| format!("{v:.6}")),
        ));
    }
    write_kv(Some("sthg training history"), &e)
}

pub fn cmd_train(a: &TrainArgs) -> CliResult<()> {
    let cfg = RunConfig::load(a.config.as_deref())?.with_seed(a.seed);
    let data = load_data_dir(&a.data)?;
    if data.videos.is_empty() {
        return Err(CliError::Invalid(format!("{}: no videos", a.data.display())));
    }
    check_dims(&data, &cfg)?;
    let graphs: Vec<_> = data
        .videos
        .par_iter()
        .map(|v| build_graph(v, &cfg.graph))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .filter(|g| !g.nodes.is_empty())
        .collect();
    let (params, history) = train(&graphs, &cfg.model)?;
    let ck = Checkpoint {
        graph: cfg.graph,
        model: cfg.model.clone(),
        params,
    };
    write_text(&a.out, &write_checkpoint(&ck))?;
    if let Some(h) = &a.history {
        write_text(h, &history_text(&history, graphs.len()))?;
    }
    let last = history.epochs.last().map_or(f64::NAN, |s| s.loss);
    eprintln!(
        "trained on {} graphs for {} epochs, final loss {last:.4}",
        graphs.len(),
        history.epochs.len()
    );
    Ok(())
}

pub fn cmd_diarize(a: &DiarizeArgs) -> CliResult<()> {
    let ck = parse_checkpoint(&a.checkpoint.display().to_string(), &read_text(&a.checkpoint)?)?;
    let cfg = RunConfig::load(a.config.as_deref())?;
    let post = cfg.post;
    let data = load_data_dir(&a.data)?;
    let vad_path = a
        .vad
        .clone()
        .or_else(|| Some(a.data.join(VAD_FILE)).filter(|p| p.exists()));
    let vad = match &vad_path {
        Some(p) => load_dataset(&[p])?.vad,
        None if post.vad_target != sthg_core::pipeline::VadTarget::None => {
            return Err(CliError::Invalid(format!(
                "post.vad_target={} needs VAD records (--vad)",
                post.vad_target.name()
            )))
        }
        None => BTreeMap::new(),
    };
    let empty = VadSegments::default();
    let outputs = data
        .videos
        .par_iter()
        .map(|v| {
            let segs = vad.get(&v.video_id).unwrap_or(&empty);
            run_pipeline(v, &ck.params, &ck.graph, &ck.model, &post, segs)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut rttm = SegmentsByFile::new();
    let mut scores = Vec::new();
    for (v, out) in data.videos.iter().zip(outputs) {
        for n in &out.nodes {
            let (track_id, frame) = match n.kind {
                NodeKind::Visible { track_id, frame } => (Some(track_id), frame),
                NodeKind::Wearer { frame } => (None, frame),
            };
            scores.push(ScoreRecord {
                video_id: v.video_id.clone(),
                person_id: n.person_id.clone(),
                track_id,
                frame,
                score: n.score,
                bbox: n.bbox,
            });
        }
        rttm.insert(v.video_id.clone(), out.segments);
    }
    write_text(&a.out, &write_rttm(&rttm)?)?;
    if let Some(p) = &a.scores {
        write_text(p, &write_scores(&scores))?;
    }
    Ok(())
}

fn load_rttm(path: &Path) -> CliResult<SegmentsByFile> {
    parse_rttm(&path.display().to_string(), &read_text(path)?)
}

fn require<'a>(opt: &'a Option<PathBuf>, flag: &str, purpose: &str) -> CliResult<&'a Path> {
    opt.as_deref()
        .ok_or_else(|| CliError::Invalid(format!("{purpose} needs {flag}")))
}

/// DER pooled over files: per-file errors and reference time are summed.
pub fn pooled_der(reference: &SegmentsByFile, hyp: &SegmentsByFile, collar: f64) -> CliResult<DerBreakdown> {
    if let Some(extra) = hyp.keys().find(|k| !reference.contains_key(*k)) {
        return Err(CliError::Invalid(format!(
            "hypothesis file {extra} has no reference"
        )));
    }
    let mut total = DerBreakdown::default();
    for (file, r) in reference {
        let h = hyp.get(file).map_or(&[][..], Vec::as_slice);
        let d = der(r, h, collar)?;
        total.missed += d.missed;
        total.false_alarm += d.false_alarm;
        total.confusion += d.confusion;
        total.correct += d.correct;
        total.total_ref += d.total_ref;
    }
    if total.total_ref <= 0.0 {
        return Err(sthg_core::Error::NoReferenceSpeech.into());
    }
    Ok(total)
}

fn words(list: Option<&Vec<sthg_core::synth::Transcript>>) -> Vec<String> {
    list.map(|l| {
        l.iter()
            .flat_map(|t| t.text.split_whitespace().map(str::to_string))
            .collect()
    })
    .unwrap_or_default()
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

pub fn cmd_eval(a: &EvalArgs) -> CliResult<()> {
    if !(a.map || a.map_iou || a.der || a.wer) {
        return Err(CliError::Invalid(
            "nothing to evaluate: pass --map, --map-iou, --der or --wer".into(),
        ));
    }
    let mut report: Vec<(String, String)> = Vec::new();
    if let Some(l) = &a.label {
        report.push(("label".into(), l.clone()));
    }
    let data = match &a.data {
        Some(d) => Some(load_data_dir(d)?),
        None => None,
    };

    if a.der {
        let ref_path = a
            .ref_rttm
            .clone()
            .or_else(|| a.data.as_ref().map(|d| d.join(REFERENCE_RTTM)));
        let ref_path = require(&ref_path, "--ref-rttm", "--der")?;
        let hyp_path = require(&a.hyp_rttm, "--hyp-rttm", "--der")?;
        if !(a.collar >= 0.0 && a.collar.is_finite()) {
            return Err(CliError::Invalid("--collar must be >= 0".into()));
        }
        let d = pooled_der(&load_rttm(ref_path)?, &load_rttm(hyp_path)?, a.collar)?;
        report.extend([
            ("der".into(), f6(d.der())),
            ("der.missed".into(), f6(d.missed)),
            ("der.false_alarm".into(), f6(d.false_alarm)),
            ("der.confusion".into(), f6(d.confusion)),
            ("der.total_ref".into(), f6(d.total_ref)),
            ("der.collar".into(), a.collar.to_string()),
        ]);
    }

    if a.map || a.map_iou {
        let data = data
            .as_ref()
            .ok_or_else(|| CliError::Invalid("--map and --map-iou need --data".into()))?;
        let scores_path = require(&a.scores, "--scores", "--map")?;
        let records = parse_scores(&scores_path.display().to_string(), &read_text(scores_path)?)?;
        let by_id: BTreeMap<&str, &VideoBundle> =
            data.videos.iter().map(|v| (v.video_id.as_str(), v)).collect();
        let mut per_video: BTreeMap<&str, Vec<&ScoreRecord>> = BTreeMap::new();
        for r in &records {
            if !by_id.contains_key(r.video_id.as_str()) {
                return Err(CliError::Invalid(format!("scores mention unknown video {}", r.video_id)));
            }
            per_video.entry(r.video_id.as_str()).or_default().push(r);
        }
        if a.map {
            let mut nodes = Vec::new();
            for (id, recs) in &per_video {
                let v = by_id[id];
                let mut list = Vec::with_capacity(recs.len());
                for r in recs {
                    let label = v.label(&r.person_id, r.frame).ok_or_else(|| {
                        CliError::Invalid(format!("video {id}: no label for {} at frame {}", r.person_id, r.frame))
                    })?;
                    list.push(NodeScore {
                        is_wearer: r.is_wearer(),
                        score: r.score,
                        label,
                    });
                }
                nodes.push(list);
            }
            let m = asd_map(&nodes)?;
            let opt = |v: Option<f64>| v.map_or_else(|| "none".into(), f6);
            report.extend([
                ("map".into(), f6(m.overall)),
                ("map.visible".into(), opt(m.visible)),
                ("map.wearer".into(), opt(m.wearer)),
            ]);
        }
        if a.map_iou {
            let mut owned = Vec::new();
            for (id, recs) in &per_video {
                let v = by_id[id];
                let preds: Vec<ScoredDetection> = recs
                    .iter()
                    .filter_map(|r| {
                        r.bbox.map(|bbox| ScoredDetection {
                            frame: r.frame,
                            bbox,
                            score: r.score,
                            person_id: r.person_id.clone(),
                        })
                    })
                    .collect();
                let mut gt = Vec::new();
                for t in &v.tracks {
                    for e in &t.entries {
                        let speaking = v.label(&t.person_id, e.frame).ok_or_else(|| {
                            CliError::Invalid(format!("video {id}: no label for {} at frame {}", t.person_id, e.frame))
                        })?;
                        gt.push(GroundTruthBox { frame: e.frame, bbox: e.bbox, speaking });
                    }
                }
                owned.push((preds, gt));
            }
            let refs: Vec<(&[ScoredDetection], &[GroundTruthBox])> =
                owned.iter().map(|(p, g)| (p.as_slice(), g.as_slice())).collect();
            let m = asd_map_at_iou(&refs, a.iou)?;
            report.extend([
                ("map_iou".into(), f6(m)),
                ("map_iou.threshold".into(), a.iou.to_string()),
            ]);
        }
    }

    if a.wer {
        let ref_path = a
            .ref_transcripts
            .clone()
            .or_else(|| a.data.as_ref().map(|d| d.join(TRANSCRIPT_FILE)));
        let ref_path = require(&ref_path, "--ref-transcripts", "--wer")?;
        let hyp_path = require(&a.hyp_transcripts, "--hyp-transcripts", "--wer")?;
        let r = load_dataset(&[ref_path])?.transcripts;
        let h = load_dataset(&[hyp_path])?.transcripts;
        let mut total = EditCounts::default();
        let ids: std::collections::BTreeSet<&String> = r.keys().chain(h.keys()).collect();
        for id in ids {
            let c = edit_counts(&words(r.get(id)), &words(h.get(id)));
            total.substitutions += c.substitutions;
            total.deletions += c.deletions;
            total.insertions += c.insertions;
            total.ref_len += c.ref_len;
        }
        if total.ref_len == 0 {
            return Err(sthg_core::Error::EmptyReference.into());
        }
        report.extend([
            ("wer".into(), f6(total.errors() as f64 / total.ref_len as f64)),
            ("wer.substitutions".into(), total.substitutions.to_string()),
            ("wer.deletions".into(), total.deletions.to_string()),
            ("wer.insertions".into(), total.insertions.to_string()),
            ("wer.ref_words".into(), total.ref_len.to_string()),
        ]);
    }

    let text = write_kv(Some("sthg evaluation report"), &report);
    print!("{text}");
    if let Some(p) = &a.out {
        write_text(p, &text)?;
    }
    Ok(())
}

fn pct(m: &BTreeMap<String, String>, key: &str) -> String {
    m.get(key)
        .and_then(|v| v.parse::<f64>().ok())
        .map_or_else(|| "-".into(), |v| format!("{:.1}", 100.0 * v))
}

/// Renders history and metric reports as plain-text tables.
pub fn render_report(history: Option<&BTreeMap<String, String>>, metrics: &[(String, BTreeMap<String, String>)]) -> String {
    let mut out = String::new();
    if let Some(h) = history {
        let epochs: usize = h.get("train.epochs").and_then(|v| v.parse().ok()).unwrap_or(0);
        let loss = |i: usize| h.get(&format!("train.epoch.{i}.loss")).cloned().unwrap_or_else(|| "-".into());
        out.push_str("Training\n");
        out.push_str(&format!("  graphs       {}\n", h.get("train.graphs").map_or("-", String::as_str)));
        out.push_str(&format!("  epochs       {epochs}\n"));
        out.push_str(&format!("  best epoch   {}\n", h.get("train.best_epoch").map_or("-", String::as_str)));
        if epochs > 0 {
            out.push_str(&format!("  first loss   {}\n", loss(0)));
            out.push_str(&format!("  last loss    {}\n", loss(epochs - 1)));
            let ap = h
                .get(&format!("train.epoch.{}.train_ap", epochs - 1))
                .map_or("-", String::as_str);
            out.push_str(&format!("  last AP      {ap}\n"));
        }
        out.push('\n');
    }
    if !metrics.is_empty() {
        let headers = ["run", "mAP", "mAP(vis)", "mAP(CW)", "mAP@IoU", "DER", "WER"];
        let rows: Vec<[String; 7]> = metrics
            .iter()
            .map(|(name, m)| {
                [
                    m.get("label").cloned().unwrap_or_else(|| name.clone()),
                    pct(m, "map"),
                    pct(m, "map.visible"),
                    pct(m, "map.wearer"),
                    pct(m, "map_iou"),
                    pct(m, "der"),
                    pct(m, "wer"),
                ]
            })
            .collect();
        let mut widths = headers.map(str::len);
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[&str]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
                if i == 0 {
                    s.push_str(&format!("{c:<w$}"));
                } else {
                    s.push_str(&format!("  {c:>w$}"));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        out.push_str("Metrics (%)\n");
        out.push_str(&line(&headers));
        for r in &rows {
            out.push_str(&line(&r.each_ref().map(String::as_str)));
        }
    }
    out
}

fn load_kv_map(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let file = path.display().to_string();
    Ok(parse_kv(&file, &read_text(path)?)?
        .into_iter()
        .map(|e| (e.key, e.value))
        .collect())
}

pub fn cmd_report(a: &ReportArgs) -> CliResult<()> {
    if a.history.is_none() && a.metrics.is_empty() {
        return Err(CliError::Invalid("report needs --history or --metrics".into()));
    }
    let history = a.history.as_deref().map(load_kv_map).transpose()?;
    let mut metrics = Vec::new();
    for p in &a.metrics {
        let name = p
            .file_stem()
            .map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
        metrics.push((name, load_kv_map(p)?));
    }
    let text = render_report(history.as_ref(), &metrics);
    print!("{text}");
    if let Some(p) = &a.out {
        write_text(p, &text)?;
    }
    Ok(())
}

