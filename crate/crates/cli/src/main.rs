use clap::{Parser, Subcommand};
use counterthread_cli::commands;
use counterthread_cli::{CliError, RunConfig, StrandFilter};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "counterthread", version, about = "Counter-speech thread analysis and response classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// sexist, racist, homophobic or all
    #[arg(long, global = true)]
    strand: Option<StrandFilter>,
    /// Seed for fold assignment (default 42).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Vocabulary size per feature channel.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Cross-validation folds (default 10).
    #[arg(long, global = true)]
    folds: Option<usize>,
    /// Minimum annotator agreement (inclusive).
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Number of annotators per post.
    #[arg(long, global = true)]
    annotators: Option<usize>,
    /// SVM regularization constant.
    #[arg(long = "c", global = true)]
    c: Option<f64>,
    /// words, deps or both, optionally `+lexicon`; comma-separated or repeated.
    #[arg(long, global = true)]
    channels: Vec<String>,
    /// Output directory for stores, reports and error sidecars (default `out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory of thread CSVs, one subdirectory per strand.
    #[arg(long, global = true)]
    threads: Option<PathBuf>,
    /// Annotation CSV (`post_id,annotator_id,codes`).
    #[arg(long, global = true)]
    annotations: Option<PathBuf>,
    /// CoNLL-U file or directory of `.conllu` files.
    #[arg(long, global = true)]
    parses: Option<PathBuf>,
    /// Hateful-term list, one term per line.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Model file to write (`train`) or read (`classify`).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Posts to classify (`post_id,text` CSV).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Validate thread CSVs into the normalized thread store.
    Ingest,
    /// Apply annotator consensus and print the label distribution.
    Collate,
    /// Fit the thread-length model per strand.
    Regress,
    /// Train a classifier and save the model file.
    Train,
    /// Cross-validate the classifier per strand and channel set.
    Cv,
    /// Label new posts with a saved model.
    Classify,
    /// Collect the rendered results into one report.
    Report,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = cli.$field.clone() { cfg.$field = v.into(); } )* };
    }
    set!(strand, seed, k, folds, threshold, annotators, c, out);
    macro_rules! set_path {
        ($($field:ident),*) => { $( if cli.$field.is_some() { cfg.$field = cli.$field.clone(); } )* };
    }
    set_path!(threads, annotations, parses, lexicon, model, input);
    if !cli.channels.is_empty() {
        cfg.channels = cli.channels.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = build_config(&cli).and_then(|cfg| match cli.command {
        Command::Ingest => commands::ingest(&cfg),
        Command::Collate => commands::collate_cmd(&cfg),
        Command::Regress => commands::regress(&cfg),
        Command::Train => commands::train(&cfg),
        Command::Cv => commands::cv(&cfg),
        Command::Classify => commands::classify(&cfg),
        Command::Report => commands::report(&cfg),
    });
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
