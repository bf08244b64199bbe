mod args;
mod commands;
mod error;
mod setup;

use clap::Parser;
use cowrite_core::par::Execution;

use args::{Cli, Command};
use error::{Failure, Result};

fn run(cli: &Cli, exec: Execution) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { paths } => commands::validate(paths, exec),
        Command::Analyze { paths, overrides } => commands::analyze(g, paths, overrides, exec),
        Command::Detect { paths, overrides } => commands::detect(g, paths, overrides, exec),
        Command::Classify { paths, overrides } => commands::classify(g, paths, overrides, exec),
        Command::Simulate {
            spec,
            seed,
            duration_ms,
        } => commands::simulate(g, spec, *seed, *duration_ms, exec),
        Command::Report { paths, overrides } => commands::report(g, paths, overrides, exec),
        Command::Suggest {
            mode,
            document,
            cursor,
            data,
            seed,
            show_prompt,
        } => commands::suggest(
            g,
            commands::SuggestArgs {
                mode: *mode,
                document: document.as_deref(),
                cursor: *cursor,
                data: data.as_deref(),
                seed: *seed,
                show_prompt: *show_prompt,
            },
        ),
    }
}

fn main() {
    let cli = Cli::parse();
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();

    let result = match cli.global.jobs {
        Some(0) => Err(Failure::input("--jobs must be at least 1")),
        Some(1) => run(&cli, Execution::Sequential),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli, Execution::Parallel)),
            Err(e) => Err(Failure::input(format!("cannot start {n} workers: {e}"))),
        },
        None => run(&cli, Execution::default()),
    };
    if let Err(f) = result {
        eprintln!("error: {f}");
        std::process::exit(f.code);
    }
}
