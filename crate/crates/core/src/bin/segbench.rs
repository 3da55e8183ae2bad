use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use segbench::annotate::{default_pronouns, load_annotations, ne_stats, substitute_entities};
use segbench::corpus::{generate_choi_sample, generate_paragraph_sample, load_pool, parse_choi};
use segbench::harness::external::{load_references, write_jsonl, REFERENCE_ALGORITHM};
use segbench::harness::{self, emit, import_external, BoundaryRecord, ExperimentConfig, OutputFormat, Variant};
use segbench::preprocess::{preprocess, PreprocessOptions, Stoplist};
use segbench::rng::derive_seed;
use segbench::segment::{segment, Algorithm, SegmenterOptions};
use segbench::{Error, Result};

#[derive(Parser)]
#[command(name = "segbench", version, about = "Text segmentation benchmark toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate concatenated samples from a document pool.
    Generate(GenerateArgs),
    /// Rewrite pool documents with entity identifiers from standoff files.
    Annotate(AnnotateArgs),
    /// Tokenize, stop-list and stem text, one sentence per line.
    Preprocess(PreprocessArgs),
    /// Segment one text file and print its boundaries.
    Segment(SegmentArgs),
    /// Run a configured experiment and write result tables.
    Experiment(ExperimentArgs),
    /// Score externally produced boundary files against references.
    Score(ScoreArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcedureArg {
    Choi,
    Paragraph,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    pool: PathBuf,
    #[arg(long, value_enum, default_value = "choi")]
    procedure: ProcedureArg,
    #[arg(long, default_value_t = 3)]
    min_len: usize,
    #[arg(long, default_value_t = 11)]
    max_len: usize,
    #[arg(long, default_value_t = 10)]
    segments: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Name used in sample ids (`<name>/<index>`).
    #[arg(long, default_value = "samples")]
    name: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnnotateArgs {
    #[arg(long)]
    pool: PathBuf,
    #[arg(long)]
    ann: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Leave pronoun mentions untouched (the ne_only variant).
    #[arg(long)]
    names_only: bool,
}

#[derive(Args)]
struct PreprocessArgs {
    /// Stop list file; defaults to the built-in SMART list.
    #[arg(long, conflicts_with = "no_stoplist")]
    stoplist: Option<PathBuf>,
    #[arg(long)]
    no_stoplist: bool,
    #[arg(long)]
    no_stem: bool,
    #[arg(long)]
    drop_numerals: bool,
    /// Text files with one sentence per line; separator lines are skipped.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct SegmentArgs {
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// Fix the number of segments instead of letting the model choose.
    #[arg(long)]
    segments: Option<usize>,
    #[arg(long)]
    no_stem: bool,
    /// A sample in the Choi layout, or plain text with one sentence per line.
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads; overrides SEGBENCH_THREADS.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "both")]
    format: FormatArg,
}

#[derive(Args)]
struct ScoreArgs {
    /// JSON-lines reference file, as written by `generate` or `experiment`.
    #[arg(long)]
    references: PathBuf,
    #[arg(long)]
    hypotheses: PathBuf,
    #[arg(long, default_value = "raw", value_parser = parse_variant)]
    variant: Variant,
    #[arg(long)]
    out: PathBuf,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> std::result::Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn generate(args: GenerateArgs) -> Result<()> {
    let pool = load_pool(&args.pool)?;
    let mut refs = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let seed = derive_seed(args.seed, i as u64);
        let sample = match args.procedure {
            ProcedureArg::Choi => generate_choi_sample(&pool, args.min_len, args.max_len, args.segments, seed)?,
            ProcedureArg::Paragraph => generate_paragraph_sample(&pool, args.segments, seed)?,
        };
        write(&args.out.join(format!("{i:04}.txt")), &sample.to_choi_format())?;
        refs.push(BoundaryRecord::new(
            harness::sample_id(&args.name, i),
            REFERENCE_ALGORITHM,
            &sample.reference,
        ));
    }
    write_jsonl(args.out.join("references.jsonl"), &refs)?;
    eprintln!("wrote {} samples to {}", args.count, args.out.display());
    Ok(())
}

fn annotate(args: AnnotateArgs) -> Result<()> {
    let pool = load_pool(&args.pool)?;
    let annotations = load_annotations(&args.ann)?;
    let pronouns = default_pronouns();
    let mut texts = Vec::new();
    for doc in &pool {
        let out = match annotations.get(&doc.doc_id) {
            Some(ann) if args.names_only => substitute_entities(doc, &ann.without_pronouns(&pronouns))?,
            Some(ann) => substitute_entities(doc, ann)?,
            None => doc.clone(),
        };
        texts.push(out.raw_text());
        write(&args.out.join(format!("{}.txt", doc.doc_id)), &out.to_pool_format())?;
    }
    let stats = ne_stats(&texts);
    println!("{}", serde_json::to_string_pretty(&stats)?);
    Ok(())
}

fn read_sentences(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.lines().any(|l| l.trim() == segbench::corpus::SEGMENT_SEPARATOR) {
        return Ok(parse_choi(&text)?.0);
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn preprocess_cmd(args: PreprocessArgs) -> Result<()> {
    let stoplist = match (&args.stoplist, args.no_stoplist) {
        (_, true) => Stoplist::empty(),
        (Some(path), false) => Stoplist::load(path)?,
        (None, false) => Stoplist::smart(),
    };
    let opts = PreprocessOptions {
        stoplist,
        stem: !args.no_stem,
        keep_numerals: !args.drop_numerals,
    };
    for input in &args.inputs {
        let text = preprocess(&read_sentences(input)?, &opts);
        for sentence in text.sentences() {
            println!("{}", sentence.join(" "));
        }
    }
    Ok(())
}

fn segment_cmd(args: SegmentArgs) -> Result<()> {
    let sentences = read_sentences(&args.input)?;
    let opts_pre = PreprocessOptions { stem: !args.no_stem, ..Default::default() };
    let text = preprocess(&sentences, &opts_pre);
    let mut opts = SegmenterOptions::new(args.algorithm);
    match args.algorithm {
        Algorithm::DpLength => opts.dp_segment_count = args.segments,
        _ => opts.fixed_segment_count = args.segments,
    }
    let seg = segment(&text, &opts)?;
    let id = args.input.display().to_string();
    println!("{}", serde_json::to_string(&BoundaryRecord::new(id, args.algorithm.as_str(), &seg))?);
    Ok(())
}

/// Exit status: success only if every configured cell was produced.
fn experiment(args: ExperimentArgs) -> Result<bool> {
    let cfg = ExperimentConfig::load(&args.config)?;
    let table = harness::run_experiment_with_threads(&cfg, args.threads)?;
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Both => OutputFormat::Both,
    };
    for path in emit(&table, format, &cfg.output_dir)? {
        eprintln!("wrote {}", path.display());
    }
    if cfg.write_samples {
        harness::export_samples(&cfg, &cfg.output_dir)?;
    }
    for f in &table.failures {
        eprintln!("failed {} {} {} {}: {}", f.algorithm, f.dataset, f.variant, f.sample_id, f.message);
    }
    let expected = harness::expected_cell_count(&cfg);
    if table.cells.len() != expected {
        eprintln!("produced {} of {} cells", table.cells.len(), expected);
        return Ok(false);
    }
    Ok(true)
}

fn score(args: ScoreArgs) -> Result<bool> {
    let refs = load_references(&args.references)?;
    let outcome = import_external(&args.hypotheses, &refs, args.variant)?;
    for e in &outcome.errors {
        eprintln!("{}:{}: {}", args.hypotheses.display(), e.line, e.message);
    }
    for path in emit(&outcome.table, OutputFormat::Both, &args.out)? {
        eprintln!("wrote {}", path.display());
    }
    Ok(outcome.errors.is_empty() && outcome.table.failures.is_empty())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a).map(|()| true),
        Command::Annotate(a) => annotate(a).map(|()| true),
        Command::Preprocess(a) => preprocess_cmd(a).map(|()| true),
        Command::Segment(a) => segment_cmd(a).map(|()| true),
        Command::Experiment(a) => experiment(a),
        Command::Score(a) => score(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
