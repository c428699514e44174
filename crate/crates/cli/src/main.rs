use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dynpdt::{Config, LabelMapKind, Repr};
use dynpdt_cli::bench::QUERY_REPEATS;
use dynpdt_cli::{emit_report, load_corpus, run_bench, run_bounds, run_build, run_stats, CliError, Format};

#[derive(Parser)]
#[command(name = "dynpdt", version, about = "Build, benchmark and inspect dynamic path-decomposed tries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Insert every keyword, verify them all, and report time and space.
    Build(Opts),
    /// Build, then time lookups of sampled keywords and of mutated misses.
    Bench(Opts),
    /// Report trie shape and space without timings.
    Stats(Opts),
    /// Report trie shape next to the centroid and anticentroid height bounds.
    Bounds(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReprArg {
    Pbt,
    Cbt,
    Pfkt,
    Cfkt,
}

#[derive(Clone, Copy, ValueEnum)]
enum NlmArg {
    Plm,
    Slm,
}

#[derive(Args)]
struct Opts {
    /// Keyword file, one keyword per line.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "cbt")]
    repr: ReprArg,
    #[arg(long, value_enum, default_value = "slm")]
    nlm: NlmArg,
    /// Offset cap; a power of two from 4.
    #[arg(long, default_value_t = 64)]
    lambda: u32,
    /// Group size of the sparse label map.
    #[arg(long, default_value_t = 16)]
    ell: u32,
    /// Shuffle the corpus with this seed before inserting; also seeds query sampling.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Drop repeated keywords, keeping the first occurrence.
    #[arg(long)]
    dedupe: bool,
    /// Lookup passes averaged by `bench`.
    #[arg(long, default_value_t = QUERY_REPEATS)]
    repeats: u32,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Opts {
    fn config(&self) -> Config {
        let repr = match self.repr {
            ReprArg::Pbt => Repr::Pbt,
            ReprArg::Cbt => Repr::Cbt,
            ReprArg::Pfkt => Repr::Pfkt,
            ReprArg::Cfkt => Repr::Cfkt,
        };
        let nlm = match self.nlm {
            NlmArg::Plm => LabelMapKind::Plm,
            NlmArg::Slm => LabelMapKind::Slm,
        };
        Config::new(repr, nlm).with_lambda(self.lambda).with_ell(self.ell)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (name, opts) = match &cli.command {
        Command::Build(o) => ("build", o),
        Command::Bench(o) => ("bench", o),
        Command::Stats(o) => ("stats", o),
        Command::Bounds(o) => ("bounds", o),
    };
    let cfg = opts.config();
    cfg.validate()?;
    let mut corpus = load_corpus(&opts.input, opts.dedupe)?;
    if corpus.stats.skipped_lines > 0 {
        eprintln!("dynpdt: skipped {} blank or invalid lines", corpus.stats.skipped_lines);
    }
    if let Some(seed) = opts.seed {
        corpus.shuffle(seed);
    }
    let mut report = match name {
        "build" => run_build(&corpus, cfg)?.1,
        "bench" => run_bench(&corpus, cfg, opts.seed.unwrap_or(0), opts.repeats)?,
        "stats" => run_stats(&corpus, cfg)?,
        _ => run_bounds(&corpus, cfg)?,
    };
    report.seed = opts.seed;

    let mut out: Box<dyn Write> = match &opts.output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(CliError::Output)?)),
        None => Box::new(io::stdout().lock()),
    };
    emit_report(&report, opts.format, &mut out)?;
    out.flush().map_err(CliError::Output)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dynpdt: error: {e}");
            ExitCode::FAILURE
        }
    }
}
