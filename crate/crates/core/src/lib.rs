//! Analysis toolkit for keystroke-level logs of writing sessions with an AI
//! assistant: deterministic replay and snapshots, semantic expansion,
//! interaction-pattern detection, session classification, the probe
//! assistants' prompts, and a labeled session simulator.

pub mod assistant;
pub mod classifier;
pub mod detectors;
pub mod embeddings;
pub mod metrics;
pub mod par;
pub mod pipeline;
pub mod session_log;
pub mod simulator;
