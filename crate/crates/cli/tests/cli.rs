use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

fn cowrite(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cowrite"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(o: Output) -> Output {
    assert!(
        o.status.success(),
        "exit {:?}\nstdout:\n{}\nstderr:\n{}",
        o.status.code(),
        stdout(&o),
        stderr(&o)
    );
    o
}

fn simulate(dir: &Path, out: &str, spec: &str, seed: u64) {
    ok(cowrite(
        &[
            "--out",
            out,
            "simulate",
            "--spec",
            spec,
            "--seed",
            &seed.to_string(),
        ],
        dir,
    ));
}

fn files_in(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn simulate_writes_logs_and_truth_and_is_repeatable() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), "a", "echoer:2", 100);
    simulate(tmp.path(), "b", "echoer:2", 100);
    let a = files_in(&tmp.path().join("a"));
    let b = files_in(&tmp.path().join("b"));
    let names: Vec<String> = a
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names.iter().filter(|n| n.ends_with(".truth.json")).count(),
        2
    );
    assert_eq!(names.iter().filter(|n| n.ends_with(".jsonl")).count(), 2);
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(
            fs::read(x).unwrap(),
            fs::read(y).unwrap(),
            "{} differs",
            x.display()
        );
    }
}

#[test]
fn validate_single_file() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), "sim", "independent_writer:1", 3);
    let log = files_in(&tmp.path().join("sim"))
        .into_iter()
        .find(|p| p.extension().unwrap() == "jsonl")
        .unwrap();
    let o = ok(cowrite(&["validate", log.to_str().unwrap()], tmp.path()));
    assert_eq!(stdout(&o).trim(), "1 file OK");
}

#[test]
fn validate_reports_delete_mismatch_with_seq() {
    let tmp = tempfile::tempdir().unwrap();
    let log = tmp.path().join("bad.jsonl");
    fs::write(
        &log,
        concat!(
            r#"{"session_id":"bad","participant_id":"p","topic":"t","assistant_mode":"socratic","final_text":""}"#,
            "\n",
            r#"{"seq":1,"t_ms":10,"kind":"insert","pos":0,"text":"abc"}"#,
            "\n",
            r#"{"seq":2,"t_ms":20,"kind":"delete","pos":0,"text":"xyz"}"#,
            "\n"
        ),
    )
    .unwrap();
    let o = cowrite(&["validate", "bad.jsonl"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("seq 2"), "{}", stderr(&o));
}

#[test]
fn empty_directory_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    fs::create_dir(tmp.path().join("empty")).unwrap();
    let o = cowrite(&["analyze", "empty"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no sessions found"));
}

#[test]
fn missing_path_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cowrite(&["validate", "does-not-exist.jsonl"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bad_corpus_spec_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    for spec in ["poet:3", "echoer", "echoer:x", ""] {
        let o = cowrite(&["simulate", "--spec", spec], tmp.path());
        assert_eq!(o.status.code(), Some(2), "spec {spec:?}");
    }
}

#[test]
fn analyze_flags_echoing_and_orders_classes() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), "sim", "echoer:1,co_ideator:2", 100);
    ok(cowrite(&["--out", "out", "analyze", "sim"], tmp.path()));
    let out = tmp.path().join("out");

    let echo = read_json(&out.join("echoer-100.report.json"));
    assert_eq!(echo["class"], "ai_led");
    let kinds: Vec<&str> = echo["detection"]["spans"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"mindless_echoing"), "{kinds:?}");

    let csv = fs::read_to_string(out.join("echoer-100.expansion.csv")).unwrap();
    let rows = csv.lines().count();
    assert!(rows > 2, "{csv}");

    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["sessions"], 3);
    let curve = |class: &str| -> f64 {
        summary["curves"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["class"] == class)
            .unwrap()["mean_final_cumulative"]
            .as_f64()
            .unwrap()
    };
    assert!(curve("co_ideation") > curve("ai_led"));
}

#[test]
fn analysis_is_deterministic_end_to_end() {
    let tmp = tempfile::tempdir().unwrap();
    for run in ["one", "two"] {
        simulate(
            tmp.path(),
            &format!("{run}-sim"),
            "co_ideator:2,independent_writer:1,echoer:1",
            42,
        );
        ok(cowrite(
            &[
                "--out",
                &format!("{run}-out"),
                "analyze",
                &format!("{run}-sim"),
            ],
            tmp.path(),
        ));
    }
    let a = files_in(&tmp.path().join("one-out"));
    let b = files_in(&tmp.path().join("two-out"));
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(
            fs::read(x).unwrap(),
            fs::read(y).unwrap(),
            "{} differs",
            x.display()
        );
    }
}

#[test]
fn single_job_matches_default_parallelism() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), "sim", "co_ideator:2,echoer:2", 7);
    let seq = ok(cowrite(&["--jobs", "1", "classify", "sim"], tmp.path()));
    let par = ok(cowrite(&["classify", "sim"], tmp.path()));
    assert_eq!(stdout(&seq), stdout(&par));
    assert_eq!(stdout(&seq).lines().count(), 4);
    let zero = cowrite(&["--jobs", "0", "classify", "sim"], tmp.path());
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(tmp.path(), "sim", "echoer:1", 100);
    fs::write(
        tmp.path().join("cfg.toml"),
        "[detectors]\nmin_run_events = 4\nlarge_text_chars = 250\n",
    )
    .unwrap();

    let o = ok(cowrite(
        &[
            "--config",
            "cfg.toml",
            "detect",
            "sim",
            "--min-run-events",
            "9",
        ],
        tmp.path(),
    ));
    let line: Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(line["config"]["min_run_events"], 9);
    assert_eq!(line["config"]["large_text_chars"], 250);
    assert_eq!(line["config"]["minimal_delta_chars"], 150);

    fs::write(
        tmp.path().join("bad.toml"),
        "[detectors]\nsignificant_expansion = 3.0\n",
    )
    .unwrap();
    let o = cowrite(&["--config", "bad.toml", "detect", "sim"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_scores_against_truth_sidecars() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(
        tmp.path(),
        "sim",
        "co_ideator:4,independent_writer:4,echoer:4",
        11,
    );
    let o = ok(cowrite(&["--out", "out", "report", "sim"], tmp.path()));
    assert!(
        stdout(&o).contains("class accuracy 1.000 over 12 sessions"),
        "{}",
        stdout(&o)
    );
    let report = read_json(&tmp.path().join("out/report.json"));
    let classes = report["curves"].as_array().unwrap();
    let count = |class: &str| {
        classes.iter().find(|c| c["class"] == class).unwrap()["sessions"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(count("co_ideation"), 4);
    assert_eq!(count("human_led"), 4);
    assert_eq!(count("ai_led"), 4);
    let curves = fs::read_to_string(tmp.path().join("out/curves.csv")).unwrap();
    assert!(curves.starts_with("class,point,fraction,mean_cumulative"));
}

#[test]
fn validates_a_large_corpus_quickly() {
    let tmp = tempfile::tempdir().unwrap();
    simulate(
        tmp.path(),
        "sim",
        "co_ideator:100,independent_writer:100,echoer:50",
        1,
    );
    let start = Instant::now();
    let o = ok(cowrite(&["validate", "sim"], tmp.path()));
    let elapsed = start.elapsed();
    assert_eq!(stdout(&o).trim(), "250 files OK");
    assert!(elapsed.as_secs_f64() < 10.0, "{elapsed:?}");
}

#[test]
fn offline_suggestions_are_seeded() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("doc.txt"),
        "Gun violence rose sharply in 2020. ",
    )
    .unwrap();
    let args = [
        "suggest",
        "--mode",
        "socratic",
        "--document",
        "doc.txt",
        "--seed",
        "5",
    ];
    let a = ok(cowrite(&args, tmp.path()));
    let b = ok(cowrite(&args, tmp.path()));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    for n in 1..=4 {
        assert!(text.contains(&format!("{n}. ")), "{text}");
    }
    assert!(text.contains("template match rate"));

    let o = ok(cowrite(
        &["suggest", "--mode", "autocomplete", "--show-prompt"],
        tmp.path(),
    ));
    assert!(stdout(&o).contains("4. "));
}
