//! Line-oriented dataset records.
//!
//! ```text
//! VIDEO <video> <fps> <num_frames>
//! TRACK <video> <track_id> <person> <frame> <x1> <y1> <x2> <y2> <feature...>
//! WEARER <video> <frame> <feature...>
//! LABEL <video> <person> <frame> <0|1>
//! VAD <video> <t_start> <t_end>
//! TRANSCRIPT <video> <speaker> <t_start> <t_end> <word...>
//! ```
//!
//! Records may appear in any order and in any file; the loader groups and
//! sorts them. Features are written with nine significant digits, which is
//! enough to read every `f32` back exactly.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use sthg_core::synth::Transcript;
use sthg_core::types::{LabelMap, TrackEntry, WearerEntry};
use sthg_core::{BBox, FaceTrack, VadSegments, VideoBundle, WearerStream};

use crate::error::{content_lines, read_text, CliError, CliResult, Fields};

pub const MANIFEST_FILE: &str = "manifest.txt";
pub const VAD_FILE: &str = "vad.txt";
pub const TRANSCRIPT_FILE: &str = "transcripts.txt";
pub const REFERENCE_RTTM: &str = "ref.rttm";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    /// Sorted by video id.
    pub videos: Vec<VideoBundle>,
    pub vad: BTreeMap<String, VadSegments>,
    pub transcripts: BTreeMap<String, Vec<Transcript>>,
}

pub(crate) fn fmt_feature(out: &mut String, values: &[f32]) {
    for v in values {
        let _ = write!(out, " {v:.8e}");
    }
}

fn check_id(kind: &str, id: &str) -> CliResult<()> {
    if id.is_empty() || id.chars().any(char::is_whitespace) {
        return Err(CliError::Invalid(format!(
            "{kind} id {id:?} must be non-empty and contain no whitespace"
        )));
    }
    Ok(())
}

pub fn write_manifest(videos: &[VideoBundle]) -> CliResult<String> {
    let mut out = String::new();
    for v in videos {
        check_id("video", &v.video_id)?;
        let id = &v.video_id;
        let _ = writeln!(out, "VIDEO {id} {} {}", v.fps, v.num_frames);
        for t in &v.tracks {
            check_id("person", &t.person_id)?;
            for e in &t.entries {
                let b = e.bbox;
                let _ = write!(
                    out,
                    "TRACK {id} {} {} {} {} {} {} {}",
                    t.track_id, t.person_id, e.frame, b.x1, b.y1, b.x2, b.y2
                );
                fmt_feature(&mut out, &e.feature);
                out.push('\n');
            }
        }
        for e in &v.wearer.entries {
            let _ = write!(out, "WEARER {id} {}", e.frame);
            fmt_feature(&mut out, &e.feature);
            out.push('\n');
        }
        if let Some(labels) = &v.labels {
            for ((person, frame), &l) in labels {
                check_id("person", person)?;
                let _ = writeln!(out, "LABEL {id} {person} {frame} {}", u8::from(l));
            }
        }
    }
    Ok(out)
}

pub fn write_vad(vad: &BTreeMap<String, VadSegments>) -> CliResult<String> {
    let mut out = String::new();
    for (id, segs) in vad {
        check_id("video", id)?;
        for (a, b) in segs.intervals() {
            let _ = writeln!(out, "VAD {id} {a} {b}");
        }
    }
    Ok(out)
}

pub fn write_transcripts(transcripts: &BTreeMap<String, Vec<Transcript>>) -> CliResult<String> {
    let mut out = String::new();
    for (id, list) in transcripts {
        check_id("video", id)?;
        for t in list {
            check_id("speaker", &t.speaker)?;
            let _ = write!(out, "TRANSCRIPT {id} {} {} {}", t.speaker, t.start, t.end);
            for w in t.text.split_whitespace() {
                out.push(' ');
                out.push_str(w);
            }
            out.push('\n');
        }
    }
    Ok(out)
}

#[derive(Default)]
struct VideoParts {
    header: Option<(f64, u32)>,
    tracks: BTreeMap<u32, (String, BTreeMap<u32, TrackEntry>)>,
    wearer: BTreeMap<u32, Vec<f32>>,
    labels: LabelMap,
    first_line: Option<(String, usize)>,
}

/// Accumulates records from one or more files.
#[derive(Default)]
pub struct DatasetBuilder {
    videos: BTreeMap<String, VideoParts>,
    vad: BTreeMap<String, Vec<(f64, f64)>>,
    transcripts: BTreeMap<String, Vec<Transcript>>,
}

fn features(f: &mut Fields) -> CliResult<Vec<f32>> {
    let mut out = Vec::new();
    for (i, s) in f.remaining().into_iter().enumerate() {
        let name = format!("feature[{i}]");
        let v: f32 = s
            .parse()
            .map_err(|_| f.error(&name, format!("cannot parse {s:?}")))?;
        if !v.is_finite() {
            return Err(f.error(&name, "not finite"));
        }
        out.push(v);
    }
    Ok(out)
}

fn interval(f: &mut Fields) -> CliResult<(f64, f64)> {
    let a = f.finite("t_start")?;
    let b = f.finite("t_end")?;
    if a < 0.0 {
        return Err(f.error("t_start", "negative"));
    }
    if b <= a {
        return Err(f.error("t_end", "must exceed t_start"));
    }
    Ok((a, b))
}

impl DatasetBuilder {
    fn video(&mut self, id: &str, f: &Fields) -> &mut VideoParts {
        let parts = self.videos.entry(id.to_string()).or_default();
        parts
            .first_line
            .get_or_insert_with(|| (f.file.to_string(), f.line));
        parts
    }

    pub fn add_text(&mut self, file: &str, text: &str) -> CliResult<()> {
        for (line, content) in content_lines(text) {
            let mut f = Fields::new(file, line, content);
            self.add_record(&mut f)?;
        }
        Ok(())
    }

    pub fn add_file(&mut self, path: &Path) -> CliResult<()> {
        let text = read_text(path)?;
        self.add_text(&path.display().to_string(), &text)
    }

    fn add_record(&mut self, f: &mut Fields) -> CliResult<()> {
        let kind = f.next_str("kind")?;
        match kind {
            "VIDEO" => {
                let id = f.next_str("video")?;
                let fps = f.finite("fps")?;
                if fps <= 0.0 {
                    return Err(f.error("fps", "must be positive"));
                }
                let frames: u32 = f.parse("num_frames")?;
                f.end()?;
                let parts = self.video(id, f);
                match parts.header {
                    Some(h) if h != (fps, frames) => {
                        return Err(f.error("video", format!("conflicting VIDEO record for {id}")))
                    }
                    _ => parts.header = Some((fps, frames)),
                }
            }
            "TRACK" => {
                let id = f.next_str("video")?;
                let track_id: u32 = f.parse("track_id")?;
                let person = f.next_str("person")?;
                let frame: u32 = f.parse("frame")?;
                let (x1, y1) = (f.finite("x1")?, f.finite("y1")?);
                let (x2, y2) = (f.finite("x2")?, f.finite("y2")?);
                let bbox = BBox::new(x1, y1, x2, y2)
                    .map_err(|e| f.error("x2", e.to_string()))?;
                let feature = features(f)?;
                let err_person = f.error("person", format!("track {track_id} changes person"));
                let err_dup = f.error("frame", format!("duplicate frame {frame} in track {track_id}"));
                let parts = self.video(id, f);
                let (owner, entries) = parts
                    .tracks
                    .entry(track_id)
                    .or_insert_with(|| (person.to_string(), BTreeMap::new()));
                if owner != person {
                    return Err(err_person);
                }
                match entries.entry(frame) {
                    Entry::Occupied(_) => return Err(err_dup),
                    Entry::Vacant(v) => {
                        v.insert(TrackEntry { frame, bbox, feature });
                    }
                }
            }
            "WEARER" => {
                let id = f.next_str("video")?;
                let frame: u32 = f.parse("frame")?;
                let feature = features(f)?;
                let err = f.error("frame", format!("duplicate wearer frame {frame}"));
                if self.video(id, f).wearer.insert(frame, feature).is_some() {
                    return Err(err);
                }
            }
            "LABEL" => {
                let id = f.next_str("video")?;
                let person = f.next_str("person")?;
                let frame: u32 = f.parse("frame")?;
                let label = match f.next_str("label")? {
                    "0" => false,
                    "1" => true,
                    other => return Err(f.error("label", format!("expected 0 or 1, got {other:?}"))),
                };
                f.end()?;
                let err = f.error("frame", format!("duplicate label for {person} at {frame}"));
                let key = (person.to_string(), frame);
                if self.video(id, f).labels.insert(key, label).is_some() {
                    return Err(err);
                }
            }
            "VAD" => {
                let id = f.next_str("video")?;
                let iv = interval(f)?;
                f.end()?;
                self.vad.entry(id.to_string()).or_default().push(iv);
            }
            "TRANSCRIPT" => {
                let id = f.next_str("video")?;
                let speaker = f.next_str("speaker")?.to_string();
                let (start, end) = interval(f)?;
                let text = f.remaining().join(" ");
                self.transcripts.entry(id.to_string()).or_default().push(Transcript {
                    speaker,
                    start,
                    end,
                    text,
                });
            }
            other => return Err(f.error("kind", format!("unknown record kind {other:?}"))),
        }
        Ok(())
    }

    pub fn finish(self) -> CliResult<Dataset> {
        let mut videos = Vec::new();
        for (id, parts) in self.videos {
            let Some((fps, num_frames)) = parts.header else {
                let (file, line) = parts.first_line.unwrap_or_default();
                return Err(CliError::Parse {
                    file,
                    line,
                    field: "video".into(),
                    message: format!("video {id} has no VIDEO record"),
                });
            };
            let tracks = parts
                .tracks
                .into_iter()
                .map(|(track_id, (person_id, entries))| FaceTrack {
                    track_id,
                    person_id,
                    entries: entries.into_values().collect(),
                })
                .collect();
            let wearer = WearerStream {
                entries: parts
                    .wearer
                    .into_iter()
                    .map(|(frame, feature)| WearerEntry { frame, feature })
                    .collect(),
            };
            let bundle = VideoBundle {
                video_id: id.clone(),
                fps,
                num_frames,
                tracks,
                wearer,
                labels: (!parts.labels.is_empty()).then_some(parts.labels),
            };
            bundle
                .validate()
                .map_err(|e| CliError::Invalid(format!("video {id}: {e}")))?;
            videos.push(bundle);
        }
        let mut vad = BTreeMap::new();
        for (id, intervals) in self.vad {
            vad.insert(id, VadSegments::new(intervals)?);
        }
        let mut transcripts = self.transcripts;
        for list in transcripts.values_mut() {
            list.sort_by(|a, b| {
                a.start
                    .total_cmp(&b.start)
                    .then_with(|| a.speaker.cmp(&b.speaker))
            });
        }
        Ok(Dataset {
            videos,
            vad,
            transcripts,
        })
    }
}

pub fn parse_dataset(file: &str, text: &str) -> CliResult<Dataset> {
    let mut b = DatasetBuilder::default();
    b.add_text(file, text)?;
    b.finish()
}

/// Loads every record file that exists among `paths`; missing optional
/// files are skipped by the caller.
pub fn load_dataset(paths: &[&Path]) -> CliResult<Dataset> {
    let mut b = DatasetBuilder::default();
    for p in paths {
        b.add_file(p)?;
    }
    b.finish()
}

/// Writes manifest, VAD and transcript files into `dir`.
pub fn write_dataset(dir: &Path, data: &Dataset) -> CliResult<()> {
    crate::error::write_text(&dir.join(MANIFEST_FILE), &write_manifest(&data.videos)?)?;
    crate::error::write_text(&dir.join(VAD_FILE), &write_vad(&data.vad)?)?;
    crate::error::write_text(&dir.join(TRANSCRIPT_FILE), &write_transcripts(&data.transcripts)?)
}
