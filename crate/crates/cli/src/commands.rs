use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use cowrite_core::assistant::{
    build_prompt, parse_numbered_suggestions, validate_socratic, DataDescription,
    GenerationBackend, OfflineBackend, SuggestionMode, SuggestionRequest, TemplateSet,
    GUN_VIOLENCE_DATA,
};
use cowrite_core::classifier::Classification;
use cowrite_core::detectors::PatternKind;
use cowrite_core::embeddings::Embedder;
use cowrite_core::par::{self, Execution};
use cowrite_core::pipeline::{
    analyze_session, corpus_summary, score_spans, AnalysisConfig, ClassCurve, CorpusSummary,
    SessionAnalysis, SpanScore, CURVE_POINTS,
};
use cowrite_core::session_log::session_log_to_string;
use cowrite_core::simulator::{
    default_topic_banks, generate_corpus, parse_corpus_spec, simulate_session, LabeledSession,
    TruthFile,
};
use serde::Serialize;

use crate::args::{BackendKind, GlobalArgs, ModeArg, Overrides};
use crate::error::{Failure, Result};
use crate::setup::{
    analysis_config, check_log, collect_logs, embedder, ensure_dir, file_stem, to_json, write_file,
};

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

/// Exit status for a run where `failed` items failed with the worst code `code`.
fn finish(failed: usize, code: i32, what: &str) -> Result<()> {
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure {
            code,
            message: format!("{} failed", plural(failed, what)),
        })
    }
}

pub fn validate(paths: &[PathBuf], exec: Execution) -> Result<()> {
    let files = collect_logs(paths)?;
    let results = par::map(exec, &files, |p| check_log(p).map(|_| ()));
    let mut code = 0;
    let mut bad = 0;
    for r in &results {
        if let Err(f) = r {
            eprintln!("{f}");
            code = code.max(f.code);
            bad += 1;
        }
    }
    let ok = files.len() - bad;
    if bad == 0 {
        println!("{} OK", plural(ok, "file"));
    } else {
        println!("{} OK, {} invalid", plural(ok, "file"), bad);
    }
    finish(bad, code, "file")
}

struct Batch {
    analyses: Vec<(PathBuf, SessionAnalysis)>,
    failed: Vec<String>,
    code: i32,
}

/// Validates and analyzes every log; failures are reported and skipped.
fn run_batch(
    paths: &[PathBuf],
    embedder: &dyn Embedder,
    cfg: &AnalysisConfig,
    exec: Execution,
) -> Result<Batch> {
    let files = collect_logs(paths)?;
    let results = par::map(exec, &files, |p| {
        let log = check_log(p)?;
        analyze_session(&log, embedder, cfg, Execution::Sequential)
            .map_err(|e| Failure::input(format!("{}: {e}", p.display())))
    });
    let mut batch = Batch {
        analyses: Vec::new(),
        failed: Vec::new(),
        code: 0,
    };
    let mut seen = HashSet::new();
    for (path, result) in files.into_iter().zip(results) {
        let result = result.and_then(|a| {
            if seen.insert(a.session_id.clone()) {
                Ok(a)
            } else {
                Err(Failure::input(format!(
                    "{}: duplicate session id `{}`",
                    path.display(),
                    a.session_id
                )))
            }
        });
        match result {
            Ok(a) => batch.analyses.push((path, a)),
            Err(f) => {
                eprintln!("{f}");
                batch.code = batch.code.max(f.code);
                batch.failed.push(path.display().to_string());
            }
        }
    }
    Ok(batch)
}

#[derive(Serialize)]
struct Summary<'a> {
    #[serde(flatten)]
    corpus: CorpusSummary,
    config: &'a AnalysisConfig,
    embeddings: &'a str,
}

pub fn analyze(
    global: &GlobalArgs,
    paths: &[PathBuf],
    overrides: &Overrides,
    exec: Execution,
) -> Result<()> {
    let cfg = analysis_config(global, overrides)?;
    let (embedder, described) = embedder(global)?;
    let batch = run_batch(paths, embedder.as_ref(), &cfg, exec)?;
    let out = &global.out;
    ensure_dir(out)?;
    for (_, a) in &batch.analyses {
        let stem = file_stem(&a.session_id);
        let mut csv = Vec::new();
        cowrite_core::metrics::write_series_csv(&a.series, &mut csv)
            .map_err(|e| Failure::input(e.to_string()))?;
        write_file(&out.join(format!("{stem}.expansion.csv")), &csv)?;
        write_file(
            &out.join(format!("{stem}.report.json")),
            &to_json(&a.report(&cfg, &described)),
        )?;
    }
    let failed = batch.failed.len();
    let analyses: Vec<SessionAnalysis> = batch.analyses.into_iter().map(|(_, a)| a).collect();
    let summary = Summary {
        corpus: corpus_summary(&analyses, batch.failed),
        config: &cfg,
        embeddings: &described,
    };
    write_file(&out.join("summary.json"), &to_json(&summary))?;
    println!(
        "analyzed {}, {} failed; output in {}",
        plural(analyses.len(), "session"),
        failed,
        out.display()
    );
    finish(failed, batch.code, "session")
}

pub fn detect(
    global: &GlobalArgs,
    paths: &[PathBuf],
    overrides: &Overrides,
    exec: Execution,
) -> Result<()> {
    let cfg = analysis_config(global, overrides)?;
    let (embedder, _) = embedder(global)?;
    let batch = run_batch(paths, embedder.as_ref(), &cfg, exec)?;
    for (_, a) in &batch.analyses {
        let report =
            cowrite_core::detectors::DetectionReport::new(&a.session_id, cfg.detectors, &a.spans);
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    }
    finish(batch.failed.len(), batch.code, "session")
}

#[derive(Serialize)]
struct ClassLine<'a> {
    session_id: &'a str,
    #[serde(flatten)]
    classification: Classification,
}

pub fn classify(
    global: &GlobalArgs,
    paths: &[PathBuf],
    overrides: &Overrides,
    exec: Execution,
) -> Result<()> {
    let cfg = analysis_config(global, overrides)?;
    let (embedder, _) = embedder(global)?;
    let batch = run_batch(paths, embedder.as_ref(), &cfg, exec)?;
    for (_, a) in &batch.analyses {
        let line = ClassLine {
            session_id: &a.session_id,
            classification: a.classification,
        };
        println!(
            "{}",
            serde_json::to_string(&line).expect("class line serializes")
        );
    }
    finish(batch.failed.len(), batch.code, "session")
}

pub fn simulate(
    global: &GlobalArgs,
    spec: &str,
    seed: u64,
    duration_ms: Option<u64>,
    exec: Execution,
) -> Result<()> {
    let spec =
        parse_corpus_spec(spec).map_err(|e| Failure::input(format!("bad corpus spec: {e}")))?;
    let corpus: Vec<LabeledSession> = match duration_ms {
        None => generate_corpus(&spec, seed, exec),
        Some(ms) => {
            let banks = default_topic_banks();
            let jobs: Vec<_> = spec
                .iter()
                .flat_map(|(p, n)| std::iter::repeat(*p).take(*n))
                .enumerate()
                .map(|(i, p)| (p, seed + i as u64))
                .collect();
            par::map(exec, &jobs, |(p, s)| simulate_session(p, *s, ms, &banks))
                .into_iter()
                .collect()
        }
    }
    .map_err(|e| Failure::input(e.to_string()))?;
    let out = &global.out;
    ensure_dir(out)?;
    for s in &corpus {
        let stem = file_stem(&s.log.session_id);
        write_file(
            &out.join(format!("{stem}.jsonl")),
            session_log_to_string(&s.log).as_bytes(),
        )?;
        write_file(
            &out.join(format!("{stem}.truth.json")),
            &to_json(&s.truth_file()),
        )?;
    }
    println!(
        "wrote {} to {}",
        plural(corpus.len(), "session"),
        out.display()
    );
    Ok(())
}

fn truth_for(log_path: &Path) -> Result<Option<TruthFile>> {
    let path = log_path.with_extension("truth.json");
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|e| Failure::io(&path, e))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct KindScore {
    kind: PatternKind,
    #[serde(flatten)]
    score: SpanScore,
    precision: f64,
    recall: f64,
    f1: f64,
}

#[derive(Serialize)]
struct Scores {
    sessions_with_truth: usize,
    class_accuracy: f64,
    spans: Vec<KindScore>,
}

#[derive(Serialize)]
struct Report<'a> {
    sessions: usize,
    curves: &'a [ClassCurve],
    span_counts: Vec<(PatternKind, usize)>,
    scores: Option<Scores>,
    config: &'a AnalysisConfig,
    embeddings: &'a str,
}

pub fn report(
    global: &GlobalArgs,
    paths: &[PathBuf],
    overrides: &Overrides,
    exec: Execution,
) -> Result<()> {
    let cfg = analysis_config(global, overrides)?;
    let (embedder, described) = embedder(global)?;
    let batch = run_batch(paths, embedder.as_ref(), &cfg, exec)?;

    let mut scores = [SpanScore::default(); 3];
    let (mut with_truth, mut correct) = (0usize, 0usize);
    for (path, a) in &batch.analyses {
        let Some(truth) = truth_for(path)? else {
            continue;
        };
        with_truth += 1;
        correct += usize::from(truth.class == a.classification.class);
        for (k, kind) in PatternKind::ALL.into_iter().enumerate() {
            scores[k].add(score_spans(kind, &truth.spans, &a.spans));
        }
    }
    let failed = batch.failed.len();
    let analyses: Vec<SessionAnalysis> = batch.analyses.into_iter().map(|(_, a)| a).collect();
    let summary = corpus_summary(&analyses, batch.failed);

    println!("{}", plural(summary.sessions, "session"));
    println!(
        "{:<14}{:>10}{:>24}",
        "class", "sessions", "mean final cumulative"
    );
    for c in &summary.curves {
        println!(
            "{:<14}{:>10}{:>24.3}",
            c.class.as_str(),
            c.sessions,
            c.mean_final_cumulative
        );
    }
    println!();
    let scored = (with_truth > 0).then(|| Scores {
        sessions_with_truth: with_truth,
        class_accuracy: correct as f64 / with_truth as f64,
        spans: PatternKind::ALL
            .into_iter()
            .zip(scores)
            .map(|(kind, score)| KindScore {
                kind,
                score,
                precision: score.precision(),
                recall: score.recall(),
                f1: score.f1(),
            })
            .collect(),
    });
    println!("{:<32}{:>8}", "pattern", "spans");
    for k in &summary.span_counts {
        print!("{:<32}{:>8}", k.kind.as_str(), k.spans);
        if let Some(s) = scored
            .as_ref()
            .and_then(|s| s.spans.iter().find(|x| x.kind == k.kind))
        {
            print!(
                "   precision {:.3} recall {:.3} f1 {:.3}",
                s.precision, s.recall, s.f1
            );
        }
        println!();
    }
    if let Some(s) = &scored {
        println!(
            "\nclass accuracy {:.3} over {}",
            s.class_accuracy,
            plural(s.sessions_with_truth, "session")
        );
    }

    let out = &global.out;
    ensure_dir(out)?;
    let mut csv = String::from("class,point,fraction,mean_cumulative\n");
    for c in &summary.curves {
        for (i, v) in c.mean_cumulative.iter().enumerate() {
            let fraction = i as f64 / (CURVE_POINTS - 1) as f64;
            csv.push_str(&format!("{},{i},{fraction},{v}\n", c.class.as_str()));
        }
    }
    write_file(&out.join("curves.csv"), csv.as_bytes())?;
    let report = Report {
        sessions: summary.sessions,
        curves: &summary.curves,
        span_counts: summary
            .span_counts
            .iter()
            .map(|k| (k.kind, k.spans))
            .collect(),
        scores: scored,
        config: &cfg,
        embeddings: &described,
    };
    write_file(&out.join("report.json"), &to_json(&report))?;
    finish(failed, batch.code, "session")
}

pub struct SuggestArgs<'a> {
    pub mode: ModeArg,
    pub document: Option<&'a Path>,
    pub cursor: Option<usize>,
    pub data: Option<&'a Path>,
    pub seed: u64,
    pub show_prompt: bool,
}

fn backend(kind: BackendKind, seed: u64) -> Result<Box<dyn GenerationBackend>> {
    match kind {
        BackendKind::Offline => Ok(Box::new(OfflineBackend::new(seed))),
        #[cfg(feature = "http")]
        BackendKind::Http => cowrite_core::assistant::HttpBackend::from_env()
            .map(|b| Box::new(b) as Box<dyn GenerationBackend>)
            .map_err(|e| Failure::input(e.to_string())),
        #[cfg(not(feature = "http"))]
        BackendKind::Http => Err(Failure::input("built without the http backend")),
    }
}

pub fn suggest(global: &GlobalArgs, args: SuggestArgs) -> Result<()> {
    let document = match args.document {
        Some(p) => fs::read_to_string(p).map_err(|e| Failure::io(p, e))?,
        None => String::new(),
    };
    let prose = match args.data {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Failure::io(p, e))?
            .trim()
            .to_string(),
        None => GUN_VIOLENCE_DATA.to_string(),
    };
    let data = DataDescription::new(prose).map_err(|e| Failure::input(e.to_string()))?;
    let len = document.chars().count();
    let cursor = args.cursor.unwrap_or(len);
    if cursor > len {
        return Err(Failure::input(format!(
            "cursor {cursor} is past the end of the document ({len} characters)"
        )));
    }
    let mode = match args.mode {
        ModeArg::Socratic => SuggestionMode::Socratic,
        ModeArg::Autocomplete => SuggestionMode::Autocomplete,
    };
    let request = SuggestionRequest::at_cursor(&document, cursor, mode);
    let prompt = build_prompt(&data, &request);
    if args.show_prompt {
        println!("{prompt}\n");
    }
    let response = backend(global.backend, args.seed)?
        .generate(&prompt)
        .map_err(|e| Failure {
            code: crate::error::IO,
            message: e.to_string(),
        })?;
    let set =
        parse_numbered_suggestions(&response, mode).map_err(|e| Failure::input(e.to_string()))?;
    for (i, item) in set.items().iter().enumerate() {
        println!("{}. {item}", i + 1);
    }
    if mode == SuggestionMode::Socratic {
        let (embedder, _) = embedder(global)?;
        let report = validate_socratic(
            &set,
            &request.context,
            &TemplateSet::default(),
            embedder.as_ref(),
        )
        .map_err(|e| Failure::input(e.to_string()))?;
        println!(
            "\ntemplate match rate {:.2}, mean context similarity {:.3}",
            report.template_match_rate, report.mean_similarity
        );
    }
    Ok(())
}
