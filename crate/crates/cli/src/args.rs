use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cowrite",
    version,
    about = "Analyze keystroke logs of AI-assisted writing sessions"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Word-vector file (text format, optionally gzip-compressed).
    #[arg(long, global = true, value_name = "PATH", conflicts_with_all = ["hash_dim", "hash_seed"])]
    pub embeddings: Option<PathBuf>,

    /// Dimension of the hashing embedder used when no vector file is given.
    #[arg(long, global = true, value_name = "N")]
    pub hash_dim: Option<usize>,

    /// Seed of the hashing embedder.
    #[arg(long, global = true, value_name = "N")]
    pub hash_seed: Option<u64>,

    /// TOML file with `[detectors]` and `[classifier]` tables.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "cowrite-out")]
    pub out: PathBuf,

    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    /// Generation backend for `suggest`.
    #[arg(long, global = true, value_enum, default_value_t = BackendKind::Offline)]
    pub backend: BackendKind,

    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Offline,
    Http,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Socratic,
    Autocomplete,
}

/// Threshold overrides; they take precedence over the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long, value_name = "N")]
    pub large_text_chars: Option<usize>,
    #[arg(long, value_name = "X")]
    pub significant_expansion: Option<f64>,
    #[arg(long, value_name = "N")]
    pub minimal_delta_chars: Option<usize>,
    #[arg(long, value_name = "N")]
    pub min_run_events: Option<usize>,
    #[arg(long, value_name = "MS")]
    pub min_run_duration_ms: Option<u64>,
    #[arg(long, value_name = "X")]
    pub early_phase_fraction: Option<f64>,
    #[arg(long, value_name = "X")]
    pub substantial_expansion: Option<f64>,
    #[arg(long, value_name = "X")]
    pub echo_ai_fraction: Option<f64>,
    #[arg(long, value_name = "BOOL")]
    pub topic_shift_requires_writer_source: Option<bool>,
    /// Classifier: AI share at or below which a session is human-led.
    #[arg(long, value_name = "X")]
    pub lo: Option<f64>,
    /// Classifier: AI share at or above which a session is AI-led.
    #[arg(long, value_name = "X")]
    pub hi: Option<f64>,
    #[arg(long, value_name = "N")]
    pub min_alternations: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and replay-verify session logs.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Full pipeline: expansion CSV and report JSON per session plus summary.json.
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print detector reports, one JSON object per line.
    Detect {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print session classes and ideation profiles, one JSON object per line.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Write a simulated corpus with truth sidecars.
    Simulate {
        /// Corpus spec such as `echoer:2,co_ideator:5`.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixed session length instead of the per-seed 30 to 60 minutes.
        #[arg(long, value_name = "MS")]
        duration_ms: Option<u64>,
    },
    /// Class curves and span counts; scores against truth sidecars when present.
    Report {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Ask an assistant for four suggestions at a cursor position.
    Suggest {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Document text file; empty document when omitted.
        #[arg(long, value_name = "PATH")]
        document: Option<PathBuf>,
        /// Character offset of the cursor; end of the document by default.
        #[arg(long)]
        cursor: Option<usize>,
        /// Data description file; the gun-violence description by default.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the assembled prompt before the suggestions.
        #[arg(long)]
        show_prompt: bool,
    },
}
