use std::fs;
use std::path::{Path, PathBuf};

use cowrite_core::embeddings::{load_word_vectors_path, Embedder, HashEmbedder};
use cowrite_core::pipeline::AnalysisConfig;
use cowrite_core::session_log::{parse_session_log, verify_replay, SessionLog};

use crate::args::{GlobalArgs, Overrides};
use crate::error::{Failure, Result};

/// Defaults, then the config file, then flag overrides; validated.
pub fn analysis_config(global: &GlobalArgs, overrides: &Overrides) -> Result<AnalysisConfig> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            toml::from_str::<AnalysisConfig>(&text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
        }
        None => AnalysisConfig::default(),
    };
    let d = &mut cfg.detectors;
    let o = overrides;
    macro_rules! set {
        ($target:expr, $value:expr) => {
            if let Some(v) = $value {
                $target = v;
            }
        };
    }
    set!(d.large_text_chars, o.large_text_chars);
    set!(d.significant_expansion, o.significant_expansion);
    set!(d.minimal_delta_chars, o.minimal_delta_chars);
    set!(d.min_run_events, o.min_run_events);
    set!(d.min_run_duration_ms, o.min_run_duration_ms);
    set!(d.early_phase_fraction, o.early_phase_fraction);
    set!(d.substantial_expansion, o.substantial_expansion);
    set!(d.echo_ai_fraction, o.echo_ai_fraction);
    set!(
        d.topic_shift_requires_writer_source,
        o.topic_shift_requires_writer_source
    );
    set!(cfg.classifier.lo, o.lo);
    set!(cfg.classifier.hi, o.hi);
    set!(cfg.classifier.min_alternations, o.min_alternations);
    cfg.validate().map_err(|e| Failure::input(e.to_string()))?;
    Ok(cfg)
}

/// The embedder and a description of it for reports.
pub fn embedder(global: &GlobalArgs) -> Result<(Box<dyn Embedder>, String)> {
    if let Some(path) = &global.embeddings {
        let store = load_word_vectors_path(path).map_err(|e| Failure::embeddings(path, e))?;
        log::info!(
            "loaded {} word vectors of dimension {}",
            store.len(),
            store.dimension()
        );
        return Ok((Box::new(store), format!("file:{}", path.display())));
    }
    let dim = global.hash_dim.unwrap_or(HashEmbedder::DEFAULT_DIMENSION);
    let seed = global.hash_seed.unwrap_or(HashEmbedder::DEFAULT_SEED);
    if dim == 0 {
        return Err(Failure::input("--hash-dim must be positive"));
    }
    Ok((
        Box::new(HashEmbedder::new(dim, seed)),
        format!("hash:dim={dim},seed={seed}"),
    ))
}

/// Log files named by `paths`: files as given, directories scanned (not
/// recursively) for `*.jsonl`, each directory in name order.
pub fn collect_logs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for path in paths {
        let meta = fs::metadata(path).map_err(|e| Failure::io(path, e))?;
        if meta.is_dir() {
            let mut found = Vec::new();
            for entry in fs::read_dir(path).map_err(|e| Failure::io(path, e))? {
                let p = entry.map_err(|e| Failure::io(path, e))?.path();
                if p.is_file() && p.extension().is_some_and(|x| x == "jsonl") {
                    found.push(p);
                }
            }
            found.sort();
            out.extend(found);
        } else {
            out.push(path.clone());
        }
    }
    if out.is_empty() {
        return Err(Failure::input("no sessions found"));
    }
    Ok(out)
}

pub fn read_log(path: &Path) -> Result<SessionLog> {
    let file = fs::File::open(path).map_err(|e| Failure::io(path, e))?;
    parse_session_log(std::io::BufReader::new(file)).map_err(|e| Failure::log(path, e))
}

/// Parses and replay-verifies one log.
pub fn check_log(path: &Path) -> Result<SessionLog> {
    let log = read_log(path)?;
    verify_replay(&log).map_err(|e| Failure::log(path, e))?;
    Ok(log)
}

/// A session id made safe for use as a file name.
pub fn file_stem(session_id: &str) -> String {
    let s: String = session_id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() || s.starts_with('.') {
        format!("session{s}")
    } else {
        s
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report types serialize");
    bytes.push(b'\n');
    bytes
}
