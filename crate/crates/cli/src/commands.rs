//! Subcommand implementations. Each returns a [`CliError`] carrying the
//! process exit code on failure.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use citecoder_core::codebook::parse_category_list;
use citecoder_core::report::{
    agreement_csv, bucket_labels, evaluate, read_gold, read_jsonl, write_jsonl, Evaluation,
};
use citecoder_core::{
    aggregate, code_corpus, parse_inputs, Category, CorpusSummary, Document, Error,
};
use serde::Serialize;

use crate::config::PipelineConfig;
use crate::manifest::load_manifest;

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IncompleteCoding(_) | Error::InvalidCount(_) | Error::UnknownRef(_) => {
                EXIT_INTERNAL
            }
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError {
        code: EXIT_INTERNAL,
        message: Error::io(path, e).to_string(),
    })
}

fn load_config(path: Option<&Path>) -> Result<PipelineConfig, CliError> {
    Ok(match path {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedDocument {
    pub path: String,
    pub error: String,
}

/// Parse every manifest document. Failures are fatal under `strict`,
/// otherwise reported and skipped.
fn load_corpus(
    manifest: &Path,
    cfg: &citecoder_core::CodingConfig,
    strict: bool,
    jobs: Option<usize>,
) -> Result<(Vec<Document>, Vec<SkippedDocument>), CliError> {
    let entries = load_manifest(manifest)?;
    let inputs: Vec<_> = entries
        .iter()
        .map(|e| (e.resolved.clone(), e.format))
        .collect();
    let parsed = parse_inputs(&inputs, &cfg.segmenter, jobs)?;
    let mut docs = Vec::new();
    let mut skipped = Vec::new();
    for (entry, result) in entries.iter().zip(parsed) {
        match result {
            Ok(d) => docs.push(d),
            Err(e) if strict => {
                return Err(CliError {
                    code: EXIT_INPUT,
                    message: format!("{}: {e}", entry.path),
                })
            }
            Err(e) => skipped.push(SkippedDocument {
                path: entry.path.clone(),
                error: e.to_string(),
            }),
        }
    }
    Ok((docs, skipped))
}

#[derive(Debug, Clone)]
pub struct CodeArgs {
    pub manifest: PathBuf,
    pub config: Option<PathBuf>,
    pub strict: bool,
    pub jobs: Option<usize>,
    /// Overrides the configured output directory.
    pub out_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunSummary<'a> {
    config: BTreeMap<String, String>,
    #[serde(flatten)]
    corpus: &'a CorpusSummary,
    skipped: &'a [SkippedDocument],
}

#[derive(Debug, Clone)]
pub struct CodeOutcome {
    pub output_dir: PathBuf,
    pub records: usize,
    pub skipped: Vec<SkippedDocument>,
    pub unresolved: usize,
}

pub const CODED_FILE: &str = "coded.jsonl";
pub const SUMMARY_FILE: &str = "summary.json";
pub const EDGES_FILE: &str = "coauthors.tsv";
pub const FREQUENCIES_FILE: &str = "frequencies.csv";
pub const LOG_FILE: &str = "run.log";

/// One-dimensional counts for every category in a single long table.
pub fn frequencies_csv(records: &[citecoder_core::CodedCitation]) -> String {
    let mut out = String::from("category,value,count\n");
    for cat in Category::ALL {
        let t = aggregate(records, cat, None);
        for label in bucket_labels(cat) {
            out.push_str(&format!("{},{},{}\n", cat, label, t.count(&label)));
        }
    }
    out
}

pub fn cmd_code(args: &CodeArgs) -> Result<CodeOutcome, CliError> {
    let started = Instant::now();
    let mut config = load_config(args.config.as_deref())?;
    if let Some(dir) = &args.out_dir {
        config.output_dir = dir.clone();
    }
    let (cfg, lexicon_warnings) = config.resolve()?;
    let (docs, skipped) = load_corpus(&args.manifest, &cfg, args.strict, args.jobs)?;
    let mut coding = code_corpus(&docs, &cfg, args.jobs)?;
    coding.summary.warnings.extend(lexicon_warnings);

    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| CliError {
        code: EXIT_INTERNAL,
        message: Error::io(dir, e).to_string(),
    })?;
    write_output(&dir.join(CODED_FILE), &write_jsonl(&coding.records))?;
    let summary = RunSummary {
        config: config.echo(),
        corpus: &coding.summary,
        skipped: &skipped,
    };
    let mut summary_text = serde_json::to_string_pretty(&summary).map_err(Error::from)?;
    summary_text.push('\n');
    write_output(&dir.join(SUMMARY_FILE), &summary_text)?;
    write_output(&dir.join(EDGES_FILE), &coding.graph.edge_list())?;
    write_output(
        &dir.join(FREQUENCIES_FILE),
        &frequencies_csv(&coding.records),
    )?;
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let log = format!(
        "finished_unix={now}\nelapsed_ms={}\njobs={}\ndocuments={}\nskipped={}\nrecords={}\n",
        started.elapsed().as_millis(),
        args.jobs.map_or("auto".to_string(), |j| j.to_string()),
        docs.len(),
        skipped.len(),
        coding.records.len(),
    );
    write_output(&dir.join(LOG_FILE), &log)?;
    Ok(CodeOutcome {
        output_dir: dir.clone(),
        records: coding.records.len(),
        unresolved: coding.summary.unresolved_count,
        skipped,
    })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e).into())
}

/// Frequency table (one category) or cross-tab (two) as CSV.
pub fn cmd_report(input: &Path, rows: &str, cols: Option<&str>) -> Result<String, CliError> {
    let rows: Category = rows.parse()?;
    let cols: Option<Category> = cols.map(str::parse).transpose()?;
    let records = read_jsonl(&read_text(input)?)?;
    Ok(aggregate(&records, rows, cols).to_csv())
}

pub fn cmd_eval(
    input: &Path,
    gold: &Path,
    categories: &str,
) -> Result<(String, Evaluation), CliError> {
    let cats = parse_category_list(categories)?;
    if cats.is_empty() {
        return Err(Error::UnknownCategory(categories.to_string()).into());
    }
    let records = read_jsonl(&read_text(input)?)?;
    let gold = read_gold(&read_text(gold)?)?;
    let ev = evaluate(&records, &gold, &cats)?;
    Ok((agreement_csv(&ev.reports), ev))
}

/// Coauthorship edge list for the manifest's documents.
pub fn cmd_net(
    manifest: &Path,
    config: Option<&Path>,
    strict: bool,
) -> Result<(String, Vec<SkippedDocument>), CliError> {
    let (cfg, _) = load_config(config)?.resolve()?;
    let (docs, skipped) = load_corpus(manifest, &cfg, strict, None)?;
    let meta: Vec<_> = docs.into_iter().map(|d| d.metadata).collect();
    Ok((
        citecoder_core::build_coauthor_graph(&meta).edge_list(),
        skipped,
    ))
}
