//! Seeded synthetic conversations and brute-force reference oracles.
//!
//! A video has `num_visible_speakers` people in view and an unseen camera
//! wearer. Visible people take turns through a Markov floor process (with
//! a silent state). The wearer has its own on/off turn process; while the
//! coupling process is active the wearer only speaks when nobody in view
//! does.
//!
//! Features mirror what an audio-visual front end would produce:
//!
//! * one shared audio vector per frame (`d_a` values): coordinate 0 carries
//!   speech energy `s` per active talker, the rest carry a per-speaker voice
//!   signature; the wearer's non-speech vocal bursts (coughs, laughter) look
//!   exactly like wearer speech but are absent from the VAD stream;
//! * the wearer's node feature is that audio vector;
//! * a visible person's feature is a visual block (`d_av - d_a` values,
//!   coordinate 0 shifted by `s` while the person talks) followed by the
//!   shared audio vector.
//!
//! Because audio is shared, the wearer's own node cannot tell its speech from
//! a visible person's. The visual evidence on neighboring visible nodes can.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::pipeline::{reference_segments, VadSegments};
use crate::types::{
    BBox, FaceTrack, LabelMap, TrackEntry, VideoBundle, WearerEntry, WearerStream, WEARER_ID,
};
use crate::{Error, Result};

/// Mean length of a visible speaker's turn, in frames.
const TURN_FRAMES: f64 = 30.0;
/// Mean length of a silent stretch between visible turns, in frames.
const SILENCE_FRAMES: f64 = 60.0;
/// Relative size of the voice signature next to the energy shift.
const SIGNATURE_GAIN: f64 = 0.5;
const WORDS_PER_SECOND: f64 = 2.5;
const VOCABULARY: [&str; 12] = [
    "yeah", "okay", "so", "we", "should", "go", "there", "now", "right", "look", "this", "one",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub num_videos: usize,
    pub num_frames: u32,
    pub fps: f64,
    pub num_visible_speakers: usize,
    pub d_av: usize,
    pub d_a: usize,
    /// Feature shift carried by an active talker.
    pub speaking_signal_strength: f64,
    /// Long-run fraction of time the wearer yields to visible speakers.
    pub cross_speaker_coupling: f64,
    /// Fraction of fully silent frames in which the wearer's microphone picks
    /// up a non-speech burst.
    pub cw_false_positive_rate: f64,
    /// Per-frame probability that the VAD stream agrees with the truth.
    pub vad_accuracy: f64,
    /// Frames per face track before the tracker re-initializes.
    pub track_len: u32,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            num_videos: 16,
            num_frames: 300,
            fps: 30.0,
            num_visible_speakers: 3,
            d_av: 8,
            d_a: 4,
            speaking_signal_strength: 3.0,
            cross_speaker_coupling: 0.5,
            cw_false_positive_rate: 0.0,
            vad_accuracy: 0.95,
            track_len: 15,
            seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.num_videos == 0 || self.num_frames == 0 || self.num_visible_speakers == 0 {
            return bad("counts must be positive");
        }
        if self.track_len == 0 {
            return bad("track_len must be positive");
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return bad("fps must be positive");
        }
        if self.d_a < 2 || self.d_av <= self.d_a {
            return bad("need d_a >= 2 and d_av > d_a");
        }
        if !(self.speaking_signal_strength >= 0.0 && self.speaking_signal_strength.is_finite()) {
            return bad("signal strength must be >= 0");
        }
        for (name, v) in [
            ("cross_speaker_coupling", self.cross_speaker_coupling),
            ("cw_false_positive_rate", self.cw_false_positive_rate),
            ("vad_accuracy", self.vad_accuracy),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transcript {
    pub speaker: String,
    pub start: f64,
    pub end: f64,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticVideo {
    pub bundle: VideoBundle,
    pub vad: VadSegments,
    pub transcripts: Vec<Transcript>,
}

/// Two-state Markov chain with the given stationary "on" probability and
/// mean dwell time in frames.
struct Switch {
    on: bool,
    p_on: f64,
    p_off: f64,
}

impl Switch {
    fn new(rng: &mut ChaCha8Rng, stationary: f64, dwell: f64) -> Self {
        let rate = 1.0 / dwell;
        let on = rng.random_bool(stationary);
        Switch {
            on,
            p_on: (stationary * rate).min(1.0),
            p_off: ((1.0 - stationary) * rate).min(1.0),
        }
    }

    fn step(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let flip = if self.on { self.p_off } else { self.p_on };
        if rng.random_bool(flip) {
            self.on = !self.on;
        }
        self.on
    }
}

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

fn video_rng(seed: u64, index: usize) -> ChaCha8Rng {
    // one stream per video: xor-ing the index into the seed would make
    // neighbouring seeds share videos
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

pub fn generate_scenario(cfg: &ScenarioConfig) -> Result<Vec<SyntheticVideo>> {
    cfg.validate()?;
    (0..cfg.num_videos)
        .map(|i| generate_video(cfg, i))
        .collect()
}

/// One video of the scenario; `index` selects the per-video random stream.
pub fn generate_video(cfg: &ScenarioConfig, index: usize) -> Result<SyntheticVideo> {
    cfg.validate()?;
    let mut rng = video_rng(cfg.seed, index);
    let k = cfg.num_visible_speakers;
    let n = cfg.num_frames as usize;
    let s = cfg.speaking_signal_strength;

    // conversation states
    let mut floor = rng.random_range(0..=k); // 0 = silence, j = visible speaker j
    let mut wearer_turn = Switch::new(&mut rng, 0.5, TURN_FRAMES);
    let mut coupled = Switch::new(&mut rng, cfg.cross_speaker_coupling, TURN_FRAMES);
    let mut burst = Switch::new(&mut rng, cfg.cw_false_positive_rate, TURN_FRAMES);
    let mut visible_talk = vec![vec![false; n]; k];
    let mut wearer_talk = vec![false; n];
    let mut bursts = vec![false; n];
    for f in 0..n {
        let dwell = if floor == 0 { SILENCE_FRAMES } else { TURN_FRAMES };
        if f > 0 && rng.random_bool(1.0 / dwell) {
            let next = rng.random_range(0..k);
            floor = if next >= floor { next + 1 } else { next };
        }
        if floor > 0 {
            visible_talk[floor - 1][f] = true;
        }
        let own = wearer_turn.step(&mut rng);
        wearer_talk[f] = if coupled.step(&mut rng) { own && floor == 0 } else { own };
        // the burst process only advances while nobody in view talks
        if floor == 0 {
            bursts[f] = burst.step(&mut rng) && !wearer_talk[f];
        }
    }

    // voice signatures live in audio coordinates 1..d_a
    let sig_dim = cfg.d_a - 1;
    let signatures: Vec<Vec<f64>> = (0..=k).map(|_| unit_vector(&mut rng, sig_dim)).collect();
    let visual_dim = cfg.d_av - cfg.d_a;

    let audio: Vec<Vec<f64>> = (0..n)
        .map(|f| {
            let mut a: Vec<f64> = (0..cfg.d_a).map(|_| rng.sample(StandardNormal)).collect();
            let talkers = (0..k)
                .filter(|&j| visible_talk[j][f])
                .chain(wearer_talk[f].then_some(k));
            for p in talkers {
                a[0] += s;
                for (x, v) in a[1..].iter_mut().zip(&signatures[p]) {
                    *x += s * SIGNATURE_GAIN * v;
                }
            }
            if bursts[f] {
                a[0] += s;
                for (x, v) in a[1..].iter_mut().zip(&signatures[k]) {
                    *x += s * SIGNATURE_GAIN * v;
                }
            }
            a
        })
        .collect();

    let mut labels = LabelMap::new();
    let mut tracks = Vec::new();
    let mut next_track = 0u32;
    for j in 0..k {
        let person = format!("P{}", j + 1);
        let cx = 80.0 + 160.0 * j as f64;
        let cy = 120.0 + rng.random_range(-20.0..20.0);
        let mut entries = Vec::new();
        for f in 0..n {
            let mut feature: Vec<f32> = (0..visual_dim)
                .map(|_| rng.sample::<f64, _>(StandardNormal) as f32)
                .collect();
            if visible_talk[j][f] {
                feature[0] += s as f32;
            }
            feature.extend(audio[f].iter().map(|&v| v as f32));
            let jx = rng.random_range(-2.0..2.0);
            let jy = rng.random_range(-2.0..2.0);
            entries.push(TrackEntry {
                frame: f as u32,
                bbox: BBox::new(cx - 30.0 + jx, cy - 40.0 + jy, cx + 30.0 + jx, cy + 40.0 + jy)?,
                feature,
            });
            labels.insert((person.clone(), f as u32), visible_talk[j][f]);
            let ends_track = (f + 1) % cfg.track_len as usize == 0 || f + 1 == n;
            if ends_track {
                tracks.push(FaceTrack {
                    track_id: next_track,
                    person_id: person.clone(),
                    entries: core::mem::take(&mut entries),
                });
                next_track += 1;
            }
        }
    }
    let wearer = WearerStream {
        entries: (0..n)
            .map(|f| {
                labels.insert((WEARER_ID.to_string(), f as u32), wearer_talk[f]);
                WearerEntry {
                    frame: f as u32,
                    feature: audio[f].iter().map(|&v| v as f32).collect(),
                }
            })
            .collect(),
    };
    let bundle = VideoBundle {
        video_id: format!("vid{index:03}"),
        fps: cfg.fps,
        num_frames: cfg.num_frames,
        tracks,
        wearer,
        labels: Some(labels),
    };

    let mut vad_frames = Vec::new();
    for f in 0..n {
        let speech = wearer_talk[f] || (0..k).any(|j| visible_talk[j][f]);
        vad_frames.push(speech != !rng.random_bool(cfg.vad_accuracy));
    }
    let mut intervals = Vec::new();
    let mut f = 0;
    while f < n {
        if vad_frames[f] {
            let start = f;
            while f < n && vad_frames[f] {
                f += 1;
            }
            intervals.push((start as f64 / cfg.fps, f as f64 / cfg.fps));
        } else {
            f += 1;
        }
    }
    let vad = VadSegments::new(intervals)?;

    let transcripts = reference_segments(&bundle)?
        .into_iter()
        .map(|seg| {
            let words = libm::ceil(seg.duration() * WORDS_PER_SECOND).max(1.0) as usize;
            let text: Vec<&str> = (0..words)
                .map(|_| VOCABULARY[rng.random_range(0..VOCABULARY.len())])
                .collect();
            Transcript {
                speaker: seg.speaker,
                start: seg.start,
                end: seg.end,
                text: text.join(" "),
            }
        })
        .collect();

    Ok(SyntheticVideo {
        bundle,
        vad,
        transcripts,
    })
}

/// Positive rate of each speaker's labels.
pub fn label_balance(bundle: &VideoBundle) -> BTreeMap<String, f64> {
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    if let Some(labels) = &bundle.labels {
        for ((person, _), &l) in labels {
            let c = counts.entry(person.clone()).or_default();
            c.0 += usize::from(l);
            c.1 += 1;
        }
    }
    counts
        .into_iter()
        .map(|(p, (pos, total))| (p, pos as f64 / total as f64))
        .collect()
}

/// Reference implementations used to check the metrics. They share no code
/// with [`crate::metrics`].
pub mod oracle {
    use alloc::vec;
    use alloc::vec::Vec;

    use crate::types::Segment;

    /// AP by sweeping a threshold over every distinct score and summing
    /// precision times recall increments along the PR staircase.
    pub fn oracle_ap(scored: &[(f64, bool)]) -> Option<f64> {
        let positives = scored.iter().filter(|p| p.1).count() as f64;
        if positives == 0.0 {
            return None;
        }
        let mut thresholds: Vec<f64> = scored.iter().map(|p| p.0).collect();
        thresholds.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        thresholds.dedup();
        let mut ap = 0.0;
        let mut prev_recall = 0.0;
        for t in thresholds {
            let selected = scored.iter().filter(|p| p.0 >= t).count() as f64;
            let hits = scored.iter().filter(|p| p.0 >= t && p.1).count() as f64;
            let recall = hits / positives;
            ap += (recall - prev_recall) * (hits / selected);
            prev_recall = recall;
        }
        Some(ap)
    }

    fn names(segs: &[Segment]) -> Vec<&str> {
        let mut v: Vec<&str> = segs.iter().map(|s| s.speaker.as_str()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn best_assignment(counts: &[Vec<u64>], r: usize, used: &mut Vec<bool>) -> u64 {
        if r == counts.len() {
            return 0;
        }
        let mut best = best_assignment(counts, r + 1, used);
        for h in 0..used.len() {
            if !used[h] {
                used[h] = true;
                best = best.max(counts[r][h] + best_assignment(counts, r + 1, used));
                used[h] = false;
            }
        }
        best
    }

    /// DER from point samples at the centers of `step`-second cells, with
    /// the speaker mapping found by enumerating every injective assignment.
    /// Returns NaN when the reference is empty.
    pub fn oracle_der(reference: &[Segment], hypothesis: &[Segment], step: f64) -> f64 {
        let rn = names(reference);
        let hn = names(hypothesis);
        let horizon = reference
            .iter()
            .chain(hypothesis)
            .map(|s| s.end)
            .fold(0.0f64, f64::max);
        let cells = libm::ceil(horizon / step) as usize;
        let active = |segs: &[Segment], who: &str, t: f64| {
            segs.iter().any(|s| s.speaker == who && s.start <= t && t < s.end)
        };
        let mut samples = Vec::with_capacity(cells);
        for c in 0..cells {
            let t = (c as f64 + 0.5) * step;
            let r: Vec<bool> = rn.iter().map(|n| active(reference, n, t)).collect();
            let h: Vec<bool> = hn.iter().map(|n| active(hypothesis, n, t)).collect();
            samples.push((r, h));
        }
        let mut counts = vec![vec![0u64; hn.len()]; rn.len()];
        for (r, h) in &samples {
            for (i, &ri) in r.iter().enumerate() {
                for (j, &hj) in h.iter().enumerate() {
                    if ri && hj {
                        counts[i][j] += 1;
                    }
                }
            }
        }
        let correct = best_assignment(&counts, 0, &mut vec![false; hn.len()]);
        let mut ref_total = 0u64;
        let mut errors_minus_correct = 0u64;
        for (r, h) in &samples {
            let nr = r.iter().filter(|&&x| x).count() as u64;
            let nh = h.iter().filter(|&&x| x).count() as u64;
            ref_total += nr;
            errors_minus_correct += nr.max(nh);
        }
        (errors_minus_correct - correct) as f64 / ref_total as f64
    }

    /// Edit distance by exhaustive search over alignments, pruned only by a
    /// bound that can never discard an optimal alignment.
    pub fn oracle_edit_distance<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> usize {
        fn search<T: PartialEq>(a: &[T], b: &[T], cost: usize, best: &mut usize) {
            let floor = cost + a.len().abs_diff(b.len());
            if floor >= *best {
                if a.is_empty() && b.is_empty() {
                    *best = (*best).min(cost);
                }
                return;
            }
            match (a.split_first(), b.split_first()) {
                (None, None) => *best = cost,
                (Some((_, ra)), None) => search(ra, b, cost + 1, best),
                (None, Some((_, rb))) => search(a, rb, cost + 1, best),
                (Some((x, ra)), Some((y, rb))) => {
                    search(ra, rb, cost + usize::from(x != y), best);
                    search(ra, b, cost + 1, best);
                    search(a, rb, cost + 1, best);
                }
            }
        }
        let mut best = reference.len().max(hypothesis.len()) + 1;
        search(reference, hypothesis, 0, &mut best);
        best
    }
}
