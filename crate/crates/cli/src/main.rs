use std::fs;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use interdisc::analysis::{
    cluster_measures, correlation_matrix, dissimilarity_correlations, value_histograms,
    CorrelationMethod, Linkage, MeasureReport, RankingTable,
};
use interdisc::config::Config;
use interdisc::corpus::{load_corpus, Corpus};
use interdisc::matrix::{CountingMode, TransactionMatrix};
use interdisc::measures::network::{build_citation_graph, WeightTransform};
use interdisc::pipeline::{compute_measures, VERSION};
use interdisc::similarity::{similarity, to_dissimilarity, SimilarityKind, Transform};
use interdisc::synthgen::{generate_to_dir, GenSpec, RNG_ALGORITHM};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Interdisciplinarity measures for journal-classified publication corpora.
#[derive(Parser)]
#[command(name = "interdisc", version, disable_version_flag = true)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a corpus; optionally export its matrices.
    Ingest {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value = "fractional")]
        counting: Counting,
        /// Directory for matrix exports.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the measure report.
    Measures {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// JSON configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated measure ids or labels (overrides the config).
        #[arg(long, value_delimiter = ',')]
        measures: Option<Vec<String>>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Correlation matrix between the report's measures.
    Correlate {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, default_value = "pearson")]
        method: CorrelationMethod,
    },
    /// Cluster the measures on 1 - r.
    Cluster {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, default_value = "pearson")]
        method: CorrelationMethod,
        #[arg(long, default_value = "average")]
        linkage: Linkage,
    },
    /// Rank categories under every measure.
    Rank {
        #[command(flatten)]
        report: ReportArgs,
        /// Only show these categories (comma-separated).
        #[arg(long, value_delimiter = ',')]
        categories: Option<Vec<String>>,
    },
    /// Per-measure histograms of category values.
    Hist {
        #[command(flatten)]
        report: ReportArgs,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// Generate a synthetic corpus from a JSON spec.
    Generate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print version information.
    Version,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long)]
    categories: PathBuf,
    #[arg(long)]
    journals: PathBuf,
    #[arg(long)]
    publications: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    /// Report CSV written by `measures`.
    #[arg(long)]
    report: PathBuf,
    /// Restrict to these measures (comma-separated).
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<String>>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Counting {
    Fractional,
    Full,
}

impl From<Counting> for CountingMode {
    fn from(c: Counting) -> Self {
        match c {
            Counting::Fractional => CountingMode::Fractional,
            Counting::Full => CountingMode::Full,
        }
    }
}

fn load(args: &CorpusArgs) -> Result<Corpus> {
    Ok(load_corpus(
        &args.categories,
        &args.journals,
        &args.publications,
    )?)
}

fn load_report(args: &ReportArgs) -> Result<MeasureReport> {
    let report = MeasureReport::read_csv(&args.report)
        .with_context(|| format!("reading report {}", args.report.display()))?;
    match &args.measures {
        Some(names) => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            Ok(report.select(&names)?)
        }
        None => Ok(report),
    }
}

fn out_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct IngestSummary {
    config_hash: String,
    categories: usize,
    journals: usize,
    publications: usize,
    references: usize,
    internal_references: usize,
    counting: CountingMode,
    matrix_total: f64,
}

fn ingest(corpus: &CorpusArgs, counting: CountingMode, out: Option<&Path>) -> Result<()> {
    let corpus = load(corpus)?;
    let tm = TransactionMatrix::build(&corpus, counting);
    let config = Config {
        counting,
        ..Config::default()
    };
    let summary = IngestSummary {
        config_hash: config.hash(),
        categories: corpus.n_categories(),
        journals: corpus.journals().len(),
        publications: corpus.publications().len(),
        references: corpus.total_references(),
        internal_references: corpus.total_internal_references(),
        counting,
        matrix_total: tm.total(),
    };
    println!("{}", serde_json::to_string_pretty(&summary)?);
    if let Some(dir) = out {
        out_dir(dir)?;
        write_json(&dir.join("summary.json"), &summary)?;
        tm.write_triplets(&dir.join("transactions.csv"))?;
        let mut dissims = Vec::new();
        for (kind, name) in [
            (SimilarityKind::Cosine, "sc"),
            (SimilarityKind::Ochiai, "so"),
        ] {
            let s = similarity(&tm, kind)?;
            s.write_csv(&dir.join(format!("similarity_{name}.csv")))?;
            dissims.push(to_dissimilarity(&s, Transform::OneMinus)?);
            match to_dissimilarity(&s, Transform::Reciprocal) {
                Ok(d) => dissims.push(d),
                Err(e) => eprintln!("skipping 1/{name}: {e}"),
            }
        }
        if dissims.len() >= 2 {
            let refs: Vec<_> = dissims.iter().collect();
            dissimilarity_correlations(&refs, CorrelationMethod::Pearson)?.write_csv(
                &dir.join("dissimilarity_correlations.csv"),
                &summary.config_hash,
            )?;
        }
        build_citation_graph(&tm, WeightTransform::Raw)
            .write_edge_list(&dir.join("citation_edges.csv"))?;
    }
    Ok(())
}

fn measures(
    corpus: &CorpusArgs,
    config: Option<&Path>,
    subset: Option<Vec<String>>,
    out: &Path,
) -> Result<()> {
    let mut config = match config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if subset.is_some() {
        config.measures = subset;
    }
    config.validate()?;
    let corpus = load(corpus)?;
    let bundle = compute_measures(&corpus, &config)?;
    out_dir(out)?;
    bundle.write(&out.join("measures.csv"), &out.join("measures.meta.json"))?;
    eprintln!(
        "wrote {} categories × {} measures to {} (config_hash={})",
        bundle.report.categories().len(),
        bundle.report.measures().len(),
        out.display(),
        bundle.metadata.config_hash
    );
    Ok(())
}

fn correlate(args: &ReportArgs, method: CorrelationMethod) -> Result<()> {
    let report = load_report(args)?;
    let cm = correlation_matrix(&report, method)?;
    out_dir(&args.out)?;
    let hash = report.config_hash();
    cm.write_csv(&args.out.join(format!("correlation_{method}.csv")), hash)?;
    cm.write_n_csv(&args.out.join(format!("correlation_{method}_n.csv")), hash)?;
    Ok(())
}

fn cluster(args: &ReportArgs, method: CorrelationMethod, linkage: Linkage) -> Result<()> {
    let report = load_report(args)?;
    let cm = correlation_matrix(&report, method)?;
    let tree = cluster_measures(&cm, linkage)?;
    if !tree.excluded.is_empty() {
        eprintln!(
            "excluded (undefined coefficients): {}",
            tree.excluded.join(", ")
        );
    }
    out_dir(&args.out)?;
    let hash = report.config_hash();
    let mut newick = tree.to_newick(hash);
    newick.push('\n');
    fs::write(args.out.join("dendrogram.nwk"), newick)?;
    let mut json = tree.to_json(hash);
    json.push('\n');
    fs::write(args.out.join("dendrogram.json"), json)?;
    Ok(())
}

#[derive(Serialize)]
struct RankingFile<'a> {
    config_hash: &'a str,
    #[serde(flatten)]
    table: &'a RankingTable,
}

fn rank(args: &ReportArgs, categories: Option<Vec<String>>) -> Result<()> {
    let report = load_report(args)?;
    let chosen: Vec<&str> = categories.iter().flatten().map(String::as_str).collect();
    let table = RankingTable::build(&report, &chosen)?;
    out_dir(&args.out)?;
    table.write_csv(&args.out.join("ranking.csv"), report.config_hash())?;
    write_json(
        &args.out.join("ranking.json"),
        &RankingFile {
            config_hash: report.config_hash(),
            table: &table,
        },
    )
}

fn hist(args: &ReportArgs, bins: usize) -> Result<()> {
    let report = load_report(args)?;
    let histograms = value_histograms(&report, bins)?;
    out_dir(&args.out)?;
    write_json(
        &args.out.join("histograms.json"),
        &serde_json::json!({
            "config_hash": report.config_hash(),
            "bins": bins,
            "histograms": histograms,
        }),
    )
}

fn generate(spec: &Path, out: &Path) -> Result<()> {
    let spec = GenSpec::load(spec)?;
    let corpus = generate_to_dir(&spec, out)?;
    eprintln!(
        "generated {} categories, {} journals, {} publications, {} references in {}",
        corpus.n_categories(),
        corpus.journals().len(),
        corpus.publications().len(),
        corpus.total_references(),
        out.display()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Ingest {
            corpus,
            counting,
            out,
        } => ingest(&corpus, counting.into(), out.as_deref()),
        Command::Measures {
            corpus,
            config,
            measures: subset,
            out,
        } => measures(&corpus, config.as_deref(), subset, &out),
        Command::Correlate { report, method } => correlate(&report, method),
        Command::Cluster {
            report,
            method,
            linkage,
        } => cluster(&report, method, linkage),
        Command::Rank { report, categories } => rank(&report, categories),
        Command::Hist { report, bins } => hist(&report, bins),
        Command::Generate { spec, out } => generate(&spec, &out),
        Command::Version => {
            println!("interdisc {VERSION}");
            println!("rng: {RNG_ALGORITHM}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
