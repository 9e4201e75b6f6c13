use std::path::Path;
use std::process::{Command, Output};

fn sthg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sthg"))
        .current_dir(dir)
        .env("STHG_THREADS", "1")
        .args(args)
        .output()
        .expect("spawn sthg")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = sthg(dir, args);
    assert!(
        out.status.success(),
        "sthg {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

const SMALL: &str = "synth.num_videos=3\nsynth.num_frames=90\nmodel.epochs=3\n";

fn small_run(dir: &Path) {
    std::fs::write(dir.join("cfg.txt"), SMALL).unwrap();
    ok(dir, &["synth", "--config", "cfg.txt", "--out", "data", "--seed", "5"]);
    ok(dir, &["train", "--data", "data", "--config", "cfg.txt", "--out", "m.ckpt", "--history", "h.txt", "--seed", "5"]);
    ok(dir, &["diarize", "--data", "data", "--checkpoint", "m.ckpt", "--out", "hyp.rttm", "--scores", "s.txt"]);
}

#[test]
fn pipeline_outputs_are_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    small_run(a.path());
    small_run(b.path());
    for f in ["data/manifest.txt", "data/vad.txt", "data/ref.rttm", "m.ckpt", "h.txt", "hyp.rttm", "s.txt"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert!(x == y, "{f} differs between identical runs");
    }
    ok(a.path(), &["diarize", "--data", "data", "--checkpoint", "m.ckpt", "--out", "again.rttm"]);
    assert_eq!(
        std::fs::read(a.path().join("hyp.rttm")).unwrap(),
        std::fs::read(a.path().join("again.rttm")).unwrap()
    );
}

#[test]
fn eval_of_reference_against_itself_is_perfect() {
    let d = tempfile::tempdir().unwrap();
    small_run(d.path());
    let report = ok(
        d.path(),
        &["eval", "--data", "data", "--hyp-rttm", "data/ref.rttm", "--der", "--wer",
          "--hyp-transcripts", "data/transcripts.txt", "--out", "r.txt"],
    );
    assert!(report.contains("der=0.000000\n"), "{report}");
    assert!(report.contains("wer=0.000000\n"), "{report}");
    let m = ok(d.path(), &["eval", "--data", "data", "--scores", "s.txt", "--map", "--map-iou"]);
    assert!(m.contains("map=") && m.contains("map_iou="), "{m}");
    let table = ok(d.path(), &["report", "--history", "h.txt", "--metrics", "r.txt"]);
    assert!(table.contains("Metrics (%)") && table.contains("0.0"), "{table}");
}

#[test]
fn malformed_record_exits_2_and_names_location() {
    let d = tempfile::tempdir().unwrap();
    std::fs::create_dir(d.path().join("data")).unwrap();
    std::fs::write(
        d.path().join("data/manifest.txt"),
        "VIDEO v 30 10\nTRACK v 0 P1 0 0 0 10 abc 1 2\n",
    )
    .unwrap();
    let out = sthg(d.path(), &["train", "--data", "data", "--out", "m.ckpt"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("manifest.txt:2"), "{err}");
    assert!(err.contains("`y2`"), "{err}");
}

#[test]
fn validation_failures_exit_2() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("bad.txt"), "model.bogus=1\n").unwrap();
    let out = sthg(d.path(), &["synth", "--config", "bad.txt", "--out", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.bogus"));

    let out = Command::new(env!("CARGO_BIN_EXE_sthg"))
        .current_dir(d.path())
        .env("STHG_THREADS", "zero")
        .args(["report", "--history", "h.txt"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = sthg(d.path(), &["eval", "--der"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sthg(d.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_input_file_is_an_io_error() {
    let d = tempfile::tempdir().unwrap();
    let out = sthg(d.path(), &["report", "--history", "nope.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.txt"));
}
