use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use land::pipeline::{run, Command, PipelineConfig};

#[derive(Parser)]
#[command(name = "land", version, about = "Author name disambiguation over scholarly knowledge graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// key = value configuration file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    triples: Option<PathBuf>,
    /// oc or aminer
    #[arg(long, global = true)]
    schema: Option<String>,
    /// unimodal, glin or ggru
    #[arg(long, global = true)]
    variant: Option<String>,
    /// Title vector file (`dim <d>` header, then `iri<TAB>values`)
    #[arg(long, global = true)]
    vectors: Option<PathBuf>,
    /// CSV `author_iri,orcid`
    #[arg(long, global = true)]
    truth: Option<PathBuf>,
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// lo:hi:step
    #[arg(long, global = true)]
    grid: Option<String>,
    /// score-pairs or title-similarity
    #[arg(long, global = true)]
    baseline: Option<String>,
    #[arg(long, global = true)]
    post_filter: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Artifact directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Parse triples, write the normalized graph and the split
    Ingest,
    /// Train embeddings and report link prediction
    Train,
    /// Block and cluster authors, report if --truth is given
    Disambiguate,
    /// Run a comparison system over the same blocks
    Baseline,
    /// Score a stored clustering against --truth
    Evaluate,
    /// Precision/recall over a threshold grid
    Sweep,
    /// Merge predicted clusters into single author entities
    Dedupe,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::Ingest => Command::Ingest,
            Cmd::Train => Command::Train,
            Cmd::Disambiguate => Command::Disambiguate,
            Cmd::Baseline => Command::Baseline,
            Cmd::Evaluate => Command::Evaluate,
            Cmd::Sweep => Command::Sweep,
            Cmd::Dedupe => Command::Dedupe,
        }
    }
}

fn config(cli: &Cli) -> anyhow::Result<PipelineConfig> {
    let mut cfg = match &cli.config {
        Some(p) => PipelineConfig::from_file(p).with_context(|| format!("reading {}", p.display()))?,
        None => PipelineConfig::default(),
    };
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    let overrides = [
        ("triples", path(&cli.triples)),
        ("schema", cli.schema.clone()),
        ("variant", cli.variant.clone()),
        ("vectors", path(&cli.vectors)),
        ("truth", path(&cli.truth)),
        ("threshold", cli.threshold.map(|t| t.to_string())),
        ("grid", cli.grid.clone()),
        ("baseline", cli.baseline.clone()),
        ("seed", cli.seed.map(|s| s.to_string())),
        ("out", path(&cli.out)),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    if cli.post_filter {
        cfg.post_filter = true;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Some(n) = std::env::var("LAND_THREADS").ok().and_then(|v| v.parse().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("LAND_THREADS ignored: {e}");
        }
    }
    let result = config(&cli).and_then(|cfg| Ok(run(cli.command.into(), &cfg)?));
    match result {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
