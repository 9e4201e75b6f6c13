//! Evaluation: average precision for active speaker detection (with and
//! without IoU matching against ground-truth boxes), diarization error rate
//! with an optimal speaker mapping, and word error rate.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::types::{iou, BBox, Segment};
use crate::{Error, Result};

/// Non-interpolated AP: the mean, over positives, of the precision at each
/// positive's rank. Scores are ranked descending; ties keep input order.
pub fn average_precision(scored: &[(f64, bool)]) -> Result<f64> {
    if scored.iter().any(|(s, _)| s.is_nan()) {
        return Err(Error::InvalidInput("NaN score".into()));
    }
    let positives = scored.iter().filter(|(_, l)| *l).count();
    if positives == 0 {
        return Err(Error::UndefinedAp);
    }
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| scored[b].0.partial_cmp(&scored[a].0).expect("no NaN"));
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (rank, &i) in order.iter().enumerate() {
        if scored[i].1 {
            hits += 1;
            sum += hits as f64 / (rank + 1) as f64;
        }
    }
    Ok(sum / positives as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeScore {
    pub is_wearer: bool,
    pub score: f64,
    pub label: bool,
}

/// AP per population, pooled over videos. A population without positives
/// reports `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsdMap {
    pub visible: Option<f64>,
    pub wearer: Option<f64>,
    pub overall: f64,
}

/// Perfect-detector mAP: every scored node is its own ground truth.
pub fn asd_map(videos: &[Vec<NodeScore>]) -> Result<AsdMap> {
    let pool = |filter: &dyn Fn(&NodeScore) -> bool| -> Vec<(f64, bool)> {
        videos
            .iter()
            .flatten()
            .filter(|s| filter(s))
            .map(|s| (s.score, s.label))
            .collect()
    };
    let optional = |r: Result<f64>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedAp) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(AsdMap {
        visible: optional(average_precision(&pool(&|s| !s.is_wearer)))?,
        wearer: optional(average_precision(&pool(&|s| s.is_wearer)))?,
        overall: average_precision(&pool(&|_| true))?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDetection {
    pub frame: u32,
    pub bbox: BBox,
    pub score: f64,
    pub person_id: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruthBox {
    pub frame: u32,
    pub bbox: BBox,
    pub speaking: bool,
}

/// Labels each detection of one video by greedy per-frame matching.
///
/// Detections are visited by descending score (ties in input order) and take
/// the unmatched ground-truth box of the same frame with the highest IoU
/// above `iou_thr`. A matched detection inherits the box's speaking flag;
/// unmatched detections are labeled negative.
pub fn match_detections(
    preds: &[ScoredDetection],
    gt: &[GroundTruthBox],
    iou_thr: f64,
) -> Result<Vec<(f64, bool)>> {
    if !(iou_thr > 0.0 && iou_thr < 1.0) {
        return Err(Error::InvalidConfig(format!("IoU threshold {iou_thr} not in (0, 1)")));
    }
    let mut by_frame: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, g) in gt.iter().enumerate() {
        by_frame.entry(g.frame).or_default().push(i);
    }
    let mut order: Vec<usize> = (0..preds.len()).collect();
    if preds.iter().any(|p| p.score.is_nan()) {
        return Err(Error::InvalidInput("NaN score".into()));
    }
    order.sort_by(|&a, &b| preds[b].score.partial_cmp(&preds[a].score).expect("no NaN"));

    let mut taken = vec![false; gt.len()];
    let mut labels = vec![false; preds.len()];
    for &pi in &order {
        let p = &preds[pi];
        let Some(cands) = by_frame.get(&p.frame) else {
            continue;
        };
        let mut best: Option<(usize, f64)> = None;
        for &gi in cands {
            if taken[gi] {
                continue;
            }
            let v = iou(&p.bbox, &gt[gi].bbox)?;
            if v > iou_thr && best.is_none_or(|(_, b)| v > b) {
                best = Some((gi, v));
            }
        }
        if let Some((gi, _)) = best {
            taken[gi] = true;
            labels[pi] = gt[gi].speaking;
        }
    }
    Ok(preds.iter().zip(labels).map(|(p, l)| (p.score, l)).collect())
}

/// mAP over IoU-matched detections, pooled across videos.
pub fn asd_map_at_iou(videos: &[(&[ScoredDetection], &[GroundTruthBox])], iou_thr: f64) -> Result<f64> {
    if !videos.iter().any(|(_, gt)| gt.iter().any(|g| g.speaking)) {
        return Err(Error::UndefinedAp);
    }
    let mut pooled = Vec::new();
    for (preds, gt) in videos {
        pooled.extend(match_detections(preds, gt, iou_thr)?);
    }
    average_precision(&pooled)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DerBreakdown {
    pub missed: f64,
    pub false_alarm: f64,
    pub confusion: f64,
    /// Reference speech attributed to the mapped hypothesis speaker.
    pub correct: f64,
    pub total_ref: f64,
}

impl DerBreakdown {
    pub fn der(&self) -> f64 {
        (self.missed + self.false_alarm + self.confusion) / self.total_ref
    }
}

fn speaker_index(segs: &[Segment]) -> BTreeMap<&str, usize> {
    let mut names: Vec<&str> = segs.iter().map(|s| s.speaker.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    names.into_iter().enumerate().map(|(i, n)| (n, i)).collect()
}

/// Largest speaker count on the smaller side accepted by [`optimal_mapping`].
pub const MAX_MAPPED_SPEAKERS: usize = 20;

/// Injective mapping from rows to columns maximizing the summed weight.
/// Returns `mapping[row] = Some(col)`. Exact, by dynamic programming over
/// subsets of the smaller side.
pub fn optimal_mapping(weights: &[Vec<f64>], cols: usize) -> Result<Vec<Option<usize>>> {
    let rows = weights.len();
    let transpose = cols < rows;
    let (a, b) = if transpose { (cols, rows) } else { (rows, cols) };
    if a > MAX_MAPPED_SPEAKERS {
        return Err(Error::TooManySpeakers(a));
    }
    let w = |i: usize, j: usize| if transpose { weights[j][i] } else { weights[i][j] };
    // Assign each of the `b` larger-side items to one of the `a` smaller-side
    // slots or to nothing; state = set of used slots.
    let states = 1usize << a;
    const SKIP: u8 = u8::MAX;
    // parent[item][mask]: slot taken by `item` to reach `mask`, or SKIP
    let mut dp = vec![f64::NEG_INFINITY; states];
    dp[0] = 0.0;
    let mut parent = vec![vec![SKIP; states]; b];
    for item in 0..b {
        let mut next = dp.clone();
        for mask in 0..states {
            if dp[mask] == f64::NEG_INFINITY {
                continue;
            }
            for slot in 0..a {
                if mask & (1 << slot) != 0 {
                    continue;
                }
                let m2 = mask | (1 << slot);
                let v = dp[mask] + w(slot, item);
                if v > next[m2] {
                    next[m2] = v;
                    parent[item][m2] = slot as u8;
                }
            }
        }
        dp = next;
    }
    let mut mask = (0..states)
        .filter(|&m| dp[m] > f64::NEG_INFINITY)
        .max_by(|&x, &y| dp[x].partial_cmp(&dp[y]).expect("finite").then(y.cmp(&x)))
        .expect("empty mask is reachable");
    let mut mapping = vec![None; rows];
    for item in (0..b).rev() {
        let slot = parent[item][mask];
        if slot != SKIP {
            let slot = slot as usize;
            let (r, c) = if transpose { (item, slot) } else { (slot, item) };
            mapping[r] = Some(c);
            mask &= !(1 << slot);
        }
    }
    Ok(mapping)
}

/// Diarization error rate with an optimal one-to-one speaker mapping.
///
/// Time is partitioned at every segment boundary. In each slice with `R`
/// reference and `H` hypothesis speakers of which `C` are correctly mapped,
/// missed speech is `max(R - H, 0)`, false alarm `max(H - R, 0)` and
/// confusion `min(R, H) - C`, all weighted by the slice duration. With a
/// positive `collar`, the span within `collar` seconds of any reference
/// boundary is not scored.
pub fn der(reference: &[Segment], hypothesis: &[Segment], collar: f64) -> Result<DerBreakdown> {
    if !(collar >= 0.0 && collar.is_finite()) {
        return Err(Error::InvalidConfig(format!("invalid collar {collar}")));
    }
    let ref_ids = speaker_index(reference);
    let hyp_ids = speaker_index(hypothesis);

    let mut ref_bounds: Vec<f64> = reference.iter().flat_map(|s| [s.start, s.end]).collect();
    ref_bounds.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    ref_bounds.dedup();

    let mut points: Vec<f64> = reference
        .iter()
        .chain(hypothesis)
        .flat_map(|s| [s.start, s.end])
        .collect();
    if collar > 0.0 {
        for &b in &ref_bounds {
            points.push((b - collar).max(0.0));
            points.push(b + collar);
        }
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    points.dedup();
    let slices = points.len().saturating_sub(1);

    let locate = |t: f64| points.partition_point(|&p| p < t);
    let fill = |segs: &[Segment], ids: &BTreeMap<&str, usize>| {
        let mut active: Vec<Vec<usize>> = vec![Vec::new(); slices];
        for s in segs {
            let spk = ids[s.speaker.as_str()];
            for slot in &mut active[locate(s.start)..locate(s.end)] {
                slot.push(spk);
            }
        }
        for slot in active.iter_mut() {
            slot.sort_unstable();
            slot.dedup();
        }
        active
    };
    let ref_active = fill(reference, &ref_ids);
    let hyp_active = fill(hypothesis, &hyp_ids);

    let scored = |k: usize| -> bool {
        if collar == 0.0 {
            return true;
        }
        let mid = 0.5 * (points[k] + points[k + 1]);
        let i = ref_bounds.partition_point(|&b| b < mid);
        let near = |j: usize| ref_bounds.get(j).is_some_and(|&b| (b - mid).abs() < collar);
        !(near(i) || (i > 0 && near(i - 1)))
    };

    let mut overlap = vec![vec![0.0; hyp_ids.len()]; ref_ids.len()];
    let mut total_ref = 0.0;
    for k in 0..slices {
        if !scored(k) {
            continue;
        }
        let dur = points[k + 1] - points[k];
        total_ref += dur * ref_active[k].len() as f64;
        for &r in &ref_active[k] {
            for &h in &hyp_active[k] {
                overlap[r][h] += dur;
            }
        }
    }
    if !(total_ref > 0.0) {
        return Err(Error::NoReferenceSpeech);
    }

    let mapping = optimal_mapping(&overlap, hyp_ids.len())?;
    let mut out = DerBreakdown {
        total_ref,
        ..DerBreakdown::default()
    };
    for k in 0..slices {
        if !scored(k) {
            continue;
        }
        let dur = points[k + 1] - points[k];
        let (nr, nh) = (ref_active[k].len(), hyp_active[k].len());
        let correct = ref_active[k]
            .iter()
            .filter(|&&r| mapping[r].is_some_and(|h| hyp_active[k].binary_search(&h).is_ok()))
            .count();
        out.missed += dur * nr.saturating_sub(nh) as f64;
        out.false_alarm += dur * nh.saturating_sub(nr) as f64;
        out.confusion += dur * (nr.min(nh) - correct) as f64;
        out.correct += dur * correct as f64;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EditCounts {
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    pub ref_len: usize,
}

impl EditCounts {
    pub fn errors(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }
}

/// Minimum unit-cost edit script from `reference` to `hypothesis`.
pub fn edit_counts<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> EditCounts {
    let (n, m) = (reference.len(), hypothesis.len());
    // (cost, subs, dels, ins); ties prefer fewer total edits then substitution
    let mut prev: Vec<(usize, usize, usize, usize)> = (0..=m).map(|j| (j, 0, 0, j)).collect();
    for i in 1..=n {
        let mut cur = vec![(i, 0, i, 0)];
        for j in 1..=m {
            let diag = prev[j - 1];
            let sub = if reference[i - 1] == hypothesis[j - 1] {
                diag
            } else {
                (diag.0 + 1, diag.1 + 1, diag.2, diag.3)
            };
            let del = (prev[j].0 + 1, prev[j].1, prev[j].2 + 1, prev[j].3);
            let ins = (cur[j - 1].0 + 1, cur[j - 1].1, cur[j - 1].2, cur[j - 1].3 + 1);
            let best = [sub, del, ins].into_iter().min_by_key(|c| c.0).expect("three");
            cur.push(best);
        }
        prev = cur;
    }
    let (_, s, d, ins) = prev[m];
    EditCounts {
        substitutions: s,
        deletions: d,
        insertions: ins,
        ref_len: n,
    }
}

pub fn wer<T: PartialEq>(reference: &[T], hypothesis: &[T]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let c = edit_counts(reference, hypothesis);
    Ok(c.errors() as f64 / c.ref_len as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(s: &str, a: f64, b: f64) -> Segment {
        Segment::new(s, a, b).unwrap()
    }

    #[test]
    fn ap_examples() {
        assert_eq!(average_precision(&[(0.9, true), (0.5, true), (0.1, false)]).unwrap(), 1.0);
        let v = average_precision(&[(0.9, true), (0.8, false), (0.7, true)]).unwrap();
        assert!((v - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
        assert_eq!(average_precision(&[(0.1, true), (0.9, false)]).unwrap(), 0.5);
        assert_eq!(average_precision(&[(0.5, false)]), Err(Error::UndefinedAp));
        assert_eq!(average_precision(&[]), Err(Error::UndefinedAp));
    }

    #[test]
    fn ap_ties_keep_input_order() {
        assert_eq!(average_precision(&[(0.5, false), (0.5, true)]).unwrap(), 0.5);
        assert_eq!(average_precision(&[(0.5, true), (0.5, false)]).unwrap(), 1.0);
    }

    #[test]
    fn asd_map_populations() {
        let videos = vec![
            vec![
                NodeScore { is_wearer: false, score: 0.9, label: true },
                NodeScore { is_wearer: true, score: 0.2, label: false },
            ],
            vec![
                NodeScore { is_wearer: false, score: 0.1, label: false },
                NodeScore { is_wearer: true, score: 0.8, label: true },
            ],
        ];
        let m = asd_map(&videos).unwrap();
        assert_eq!(m.visible, Some(1.0));
        assert_eq!(m.wearer, Some(1.0));
        assert_eq!(m.overall, 1.0);
        let no_wearer_pos = vec![vec![
            NodeScore { is_wearer: false, score: 0.3, label: true },
            NodeScore { is_wearer: true, score: 0.9, label: false },
        ]];
        let m = asd_map(&no_wearer_pos).unwrap();
        assert_eq!(m.wearer, None);
        assert_eq!(m.overall, 0.5);
    }

    fn det(frame: u32, b: (f64, f64, f64, f64), score: f64) -> ScoredDetection {
        ScoredDetection {
            frame,
            bbox: BBox::new(b.0, b.1, b.2, b.3).unwrap(),
            score,
            person_id: "p".into(),
        }
    }

    fn gtb(frame: u32, b: (f64, f64, f64, f64), speaking: bool) -> GroundTruthBox {
        GroundTruthBox {
            frame,
            bbox: BBox::new(b.0, b.1, b.2, b.3).unwrap(),
            speaking,
        }
    }

    #[test]
    fn iou_matching_rules() {
        let gt = vec![gtb(0, (0.0, 0.0, 10.0, 10.0), true), gtb(1, (0.0, 0.0, 10.0, 10.0), true)];
        // frame 0: IoU 0.4 (4x10 overlap... width 10, shifted so inter = 57.1)
        let weak = det(0, (0.0, 0.0, 10.0, 4.0), 0.9); // IoU = 40/100
        let exact = det(1, (0.0, 0.0, 10.0, 10.0), 0.5);
        let labels = match_detections(&[weak.clone(), exact.clone()], &gt, 0.5).unwrap();
        assert_eq!(labels, vec![(0.9, false), (0.5, true)]);
        assert_eq!(
            asd_map_at_iou(&[(&[weak.clone(), exact][..], &gt[..])], 0.5).unwrap(),
            0.5
        );
        // only the weak detection: no positives among predictions
        assert_eq!(asd_map_at_iou(&[(&[weak][..], &gt[..])], 0.5), Err(Error::UndefinedAp));
    }

    #[test]
    fn duplicate_detections_match_once() {
        let gt = vec![gtb(3, (0.0, 0.0, 10.0, 10.0), true)];
        let hi = det(3, (0.0, 0.0, 10.0, 10.0), 0.8);
        let lo = det(3, (0.5, 0.0, 10.0, 10.0), 0.6);
        let labels = match_detections(&[lo, hi], &gt, 0.5).unwrap();
        assert_eq!(labels, vec![(0.6, false), (0.8, true)]);
    }

    #[test]
    fn iou_matching_prefers_highest_iou() {
        let gt = vec![gtb(0, (0.0, 0.0, 10.0, 10.0), false), gtb(0, (1.0, 0.0, 11.0, 10.0), true)];
        let p = det(0, (1.0, 0.0, 11.0, 10.0), 0.7);
        assert_eq!(match_detections(&[p], &gt, 0.5).unwrap(), vec![(0.7, true)]);
    }

    #[test]
    fn perfect_detections_score_one() {
        let gt: Vec<_> = (0..6).map(|f| gtb(f, (0.0, 0.0, 5.0, 5.0), f % 2 == 0)).collect();
        let preds: Vec<_> = gt
            .iter()
            .map(|g| det(g.frame, (0.2, 0.1, 5.1, 5.0), if g.speaking { 1.0 } else { 0.0 }))
            .collect();
        assert_eq!(asd_map_at_iou(&[(&preds[..], &gt[..])], 0.5).unwrap(), 1.0);
        assert!(match_detections(&preds, &gt, 1.0).is_err());
    }

    #[test]
    fn der_examples() {
        let r = vec![seg("A", 0.0, 10.0)];
        assert_eq!(der(&r, &r, 0.0).unwrap().der(), 0.0);
        assert_eq!(der(&r, &[], 0.0).unwrap().der(), 1.0);
        let b = der(&r, &[seg("A", 0.0, 8.0)], 0.0).unwrap();
        assert!((b.missed - 2.0).abs() < 1e-12);
        assert!((b.der() - 0.2).abs() < 1e-12);
        let r2 = vec![seg("A", 0.0, 10.0), seg("B", 10.0, 20.0)];
        let h2 = vec![seg("B", 0.0, 10.0), seg("A", 10.0, 20.0)];
        assert_eq!(der(&r2, &h2, 0.0).unwrap().der(), 0.0);
        assert_eq!(der(&[], &r, 0.0), Err(Error::NoReferenceSpeech));
    }

    #[test]
    fn der_confusion_and_false_alarm() {
        let r = vec![seg("A", 0.0, 10.0), seg("B", 5.0, 10.0)];
        let h = vec![seg("x", 0.0, 10.0), seg("y", 10.0, 12.0)];
        let b = der(&r, &h, 0.0).unwrap();
        assert!((b.total_ref - 15.0).abs() < 1e-12);
        assert!((b.missed - 5.0).abs() < 1e-12);
        assert!((b.false_alarm - 2.0).abs() < 1e-12);
        assert!(b.confusion.abs() < 1e-12);
        let h = vec![seg("x", 0.0, 5.0), seg("y", 5.0, 10.0)];
        let b = der(&r, &h, 0.0).unwrap();
        // y maps to B (5 s), x to A (5 s); A's [5, 10) is heard as y only
        assert!((b.correct - 10.0).abs() < 1e-12);
        assert!((b.missed - 5.0).abs() < 1e-12);
        assert!(b.confusion.abs() < 1e-12);
    }

    #[test]
    fn der_collar_excludes_boundaries() {
        let r = vec![seg("A", 0.0, 10.0)];
        let h = vec![seg("A", 0.2, 9.9)];
        let b = der(&r, &h, 0.25).unwrap();
        assert_eq!(b.missed, 0.0);
        assert!((b.total_ref - 9.5).abs() < 1e-12);
        assert!(der(&r, &h, -1.0).is_err());
    }

    #[test]
    fn optimal_mapping_small_cases() {
        let w = vec![vec![1.0, 5.0], vec![4.0, 6.0]];
        assert_eq!(optimal_mapping(&w, 2).unwrap(), vec![Some(1), Some(0)]);
        let w = vec![vec![1.0], vec![3.0], vec![2.0]];
        assert_eq!(optimal_mapping(&w, 1).unwrap(), vec![None, Some(0), None]);
        let w = vec![vec![0.0, 2.0, 7.0]];
        assert_eq!(optimal_mapping(&w, 3).unwrap(), vec![Some(2)]);
        assert_eq!(optimal_mapping(&[], 4).unwrap(), Vec::<Option<usize>>::new());
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    proptest! {
        #[test]
        fn optimal_mapping_matches_enumeration(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(0.0f64..10.0, 16)
        ) {
            let w: Vec<Vec<f64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c]).collect()).collect();
            let m = optimal_mapping(&w, cols).unwrap();
            let value: f64 = m.iter().enumerate().filter_map(|(r, c)| c.map(|c| w[r][c])).sum();
            // brute force: pad columns with "unmapped" slots
            let slots: Vec<usize> = (0..cols + rows).collect();
            let mut best = 0.0f64;
            for p in permutations(&slots) {
                let v: f64 = (0..rows).filter(|&r| p[r] < cols).map(|r| w[r][p[r]]).sum();
                best = best.max(v);
            }
            prop_assert!((value - best).abs() < 1e-9);
            let mut used: Vec<usize> = m.iter().flatten().copied().collect();
            used.sort_unstable();
            let len = used.len();
            used.dedup();
            prop_assert_eq!(used.len(), len);
        }

        #[test]
        fn ap_invariant_under_monotone_transform(
            pairs in proptest::collection::vec((0.0f64..1.0, any::<bool>()), 1..30)
        ) {
            prop_assume!(pairs.iter().any(|p| p.1));
            let a = average_precision(&pairs).unwrap();
            let t: Vec<_> = pairs.iter().map(|&(s, l)| (libm::exp(3.0 * s) - 7.0, l)).collect();
            prop_assert_eq!(a, average_precision(&t).unwrap());
        }
    }

    #[test]
    fn wer_examples() {
        assert_eq!(wer(&["a", "b"], &["a", "b"]).unwrap(), 0.0);
        assert!((wer(&["a", "b", "c"], &["a", "x", "c"]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(wer(&["a", "b"], &["a", "b", "c", "d"]).unwrap(), 1.0);
        assert_eq!(wer::<&str>(&[], &["a"]), Err(Error::EmptyReference));
        let c = edit_counts(&["a", "b", "c"], &["b", "c", "d"]);
        assert_eq!((c.substitutions, c.deletions, c.insertions), (0, 1, 1));
    }
}
