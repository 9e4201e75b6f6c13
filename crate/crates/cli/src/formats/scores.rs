//! Per-node speaking scores:
//! `SCORE <video> <person> <track|-> <frame> <score> [<x1> <y1> <x2> <y2>]`.
//! The wearer has no track and no box.

use std::fmt::Write as _;

use sthg_core::BBox;

use crate::error::{content_lines, CliResult, Fields};

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRecord {
    pub video_id: String,
    pub person_id: String,
    pub track_id: Option<u32>,
    pub frame: u32,
    pub score: f64,
    pub bbox: Option<BBox>,
}

pub fn write_scores(records: &[ScoreRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let track = r.track_id.map_or_else(|| "-".to_string(), |t| t.to_string());
        let _ = write!(
            out,
            "SCORE {} {} {track} {} {:e}",
            r.video_id, r.person_id, r.frame, r.score
        );
        if let Some(b) = r.bbox {
            let _ = write!(out, " {} {} {} {}", b.x1, b.y1, b.x2, b.y2);
        }
        out.push('\n');
    }
    out
}

pub fn parse_scores(file: &str, text: &str) -> CliResult<Vec<ScoreRecord>> {
    let mut out = Vec::new();
    for (line, content) in content_lines(text) {
        let mut f = Fields::new(file, line, content);
        if f.next_str("kind")? != "SCORE" {
            return Err(f.error("kind", "expected SCORE"));
        }
        let video_id = f.next_str("video")?.to_string();
        let person_id = f.next_str("person")?.to_string();
        let track_id = match f.next_str("track")? {
            "-" => None,
            t => Some(t.parse().map_err(|_| f.error("track", format!("cannot parse {t:?}")))?),
        };
        let frame: u32 = f.parse("frame")?;
        let score = f.finite("score")?;
        if !(0.0..=1.0).contains(&score) {
            return Err(f.error("score", "outside [0, 1]"));
        }
        let rest = f.remaining();
        let bbox = match rest.as_slice() {
            [] => None,
            [a, b, c, d] => {
                let mut v = [0.0; 4];
                for (slot, s) in v.iter_mut().zip([a, b, c, d]) {
                    *slot = s
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| f.error("bbox", format!("cannot parse {s:?}")))?;
                }
                Some(BBox::new(v[0], v[1], v[2], v[3]).map_err(|e| f.error("bbox", e.to_string()))?)
            }
            _ => return Err(f.error("bbox", "expected zero or four box values")),
        };
        out.push(ScoreRecord {
            video_id,
            person_id,
            track_id,
            frame,
            score,
            bbox,
        });
    }
    Ok(out)
}

impl ScoreRecord {
    pub fn is_wearer(&self) -> bool {
        self.track_id.is_none()
    }
}
