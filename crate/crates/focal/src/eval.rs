//! Evaluation harness: run a corpus of focal methods through one or both
//! prompt strategies against a chosen backend, harvest the replies, and
//! aggregate generation counts plus token and latency statistics. Every
//! run can be persisted as a self-describing directory.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use focal_core::context::{extract_context, find_focal, FocalMethodRef};
use focal_core::harvest::{harvest, HarvestConfig, HarvestOutcome, ReplyClass};
use focal_core::prompt::{build_baseline, build_ours, PromptArtifact, Strategy};
use focal_core::resolver::ProjectIndex;
use focal_core::tokenizer;
use serde::{Deserialize, Serialize};

use crate::gateway::{Gateway, GenerationConfig};
use crate::walk::{load_project, FileReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const STD_DEV_FORMULA: &str = "sample (n-1)";
pub const MEDIAN_RULE: &str = "lower middle of an even-length list";

/// One corpus line: a focal method reference plus free-form tags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub focal: FocalMethodRef,
    pub tags: Vec<String>,
}

/// Parses the line-delimited corpus format:
/// `path<TAB>class<TAB>method<TAB>arity<TAB>tags` with `#` comments.
/// The tags field is optional and comma-separated.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 || fields.len() > 5 {
            bail!("corpus line {}: expected 4 or 5 tab-separated fields, got {}", i + 1, fields.len());
        }
        let arity: usize = fields[3]
            .trim()
            .parse()
            .with_context(|| format!("corpus line {}: arity `{}`", i + 1, fields[3]))?;
        let tags = fields
            .get(4)
            .map(|f| {
                f.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect()
            })
            .unwrap_or_default();
        entries.push(CorpusEntry {
            focal: FocalMethodRef {
                unit_path: fields[0].trim().to_string(),
                class_qualified_name: fields[1].trim().to_string(),
                method_name: fields[2].trim().to_string(),
                arity,
            },
            tags,
        });
    }
    Ok(entries)
}

pub fn corpus_from_file(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading corpus `{}`", path.display()))?;
    parse_corpus(&text).with_context(|| format!("corpus `{}`", path.display()))
}

/// One (entry, strategy) outcome. `prompt_tokens` is the pre-truncation
/// count so token statistics reflect true prompt size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub entry: CorpusEntry,
    pub strategy: Strategy,
    pub prompt_tokens: usize,
    pub truncated: bool,
    pub latency_secs: f64,
    pub outcome: HarvestOutcome,
    /// SHA-256 of the raw reply, naming its blob in the run directory;
    /// absent when the backend failed.
    pub raw_response_ref: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StatTriple {
    pub mean: f64,
    pub std_dev: f64,
    pub median: f64,
}

/// Mean, sample standard deviation, and lower-middle median.
pub fn stats(values: &[f64]) -> StatTriple {
    if values.is_empty() {
        return StatTriple::default();
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_dev = if values.len() < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics input"));
    let median = sorted[(sorted.len() - 1) / 2];
    StatTriple { mean, std_dev, median }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub total_methods: usize,
    pub methods_with_tests: usize,
    pub regurgitation: usize,
    pub no_test: usize,
    pub token_stats: StatTriple,
    pub time_stats: StatTriple,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedEntry {
    pub reference: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: u32,
    pub backend_id: String,
    pub tokenizer_scheme: String,
    pub regurgitation_threshold: f64,
    pub std_dev_formula: String,
    pub median_rule: String,
    pub strategies: Vec<StrategySummary>,
    pub skipped: Vec<SkippedEntry>,
    pub records: Vec<GenerationRecord>,
}

/// Groups records by strategy (rows ordered baseline, ours) and computes
/// the per-strategy counts and statistics.
pub fn summarize(records: &[GenerationRecord]) -> Vec<StrategySummary> {
    let mut by_strategy: BTreeMap<String, Vec<&GenerationRecord>> = BTreeMap::new();
    for record in records {
        by_strategy.entry(record.strategy.to_string()).or_default().push(record);
    }
    by_strategy
        .into_values()
        .map(|group| {
            let tokens: Vec<f64> = group.iter().map(|r| r.prompt_tokens as f64).collect();
            let times: Vec<f64> = group.iter().map(|r| r.latency_secs).collect();
            let count = |class: ReplyClass| {
                group.iter().filter(|r| r.outcome.classification == class).count()
            };
            StrategySummary {
                strategy: group[0].strategy,
                total_methods: group.len(),
                methods_with_tests: count(ReplyClass::TestsGenerated),
                regurgitation: count(ReplyClass::Regurgitation),
                no_test: count(ReplyClass::NoTest),
                token_stats: stats(&tokens),
                time_stats: stats(&times),
            }
        })
        .collect()
}

pub struct EvalOptions {
    pub strategies: Vec<Strategy>,
    pub backend_id: String,
    pub cfg: GenerationConfig,
    pub scheme: String,
    pub harvest: HarvestConfig,
    pub ignores: Vec<String>,
    pub jobs: usize,
}

pub struct EvalOutput {
    pub report: EvaluationReport,
    /// Raw reply bodies by content hash, for the run directory.
    pub responses: BTreeMap<String, String>,
    /// Parser diagnostics collected while loading the project.
    pub file_reports: Vec<FileReport>,
}

/// Runs every (corpus entry, strategy) pair to exactly one record. Backend
/// failures become `no_test` records with the error as evidence; entries
/// that do not resolve to a method are listed as skipped.
pub fn run_evaluation(
    gateway: &Gateway,
    project_root: &Path,
    corpus: &[CorpusEntry],
    opts: &EvalOptions,
) -> Result<EvalOutput> {
    if corpus.is_empty() {
        bail!("corpus is empty");
    }
    if opts.strategies.is_empty() {
        bail!("no strategies selected");
    }
    if !tokenizer::SCHEMES.contains(&opts.scheme.as_str()) {
        bail!("unknown tokenizer scheme `{}`", opts.scheme);
    }
    let mut strategies: Vec<Strategy> = opts.strategies.clone();
    strategies.sort_by_key(|s| s.to_string());
    strategies.dedup();

    let project = load_project(project_root, &opts.ignores, opts.jobs)?;
    let index = ProjectIndex::build(&project.units, crate::builtin_table()?);

    let mut records = Vec::new();
    let mut skipped = Vec::new();
    let mut responses = BTreeMap::new();
    for entry in corpus {
        if let Err(e) = find_focal(&index, &entry.focal) {
            skipped.push(SkippedEntry { reference: entry.focal.to_string(), reason: e.to_string() });
            continue;
        }
        for &strategy in &strategies {
            let prompt = build_prompt(&index, entry, strategy, &opts.scheme)?;
            let result = gateway.complete(&prompt, &opts.cfg, &opts.backend_id)?;
            let (outcome, raw_response_ref) = match (&result.raw_text, &result.error) {
                (Some(raw), _) => {
                    let hash = crate::sha256_hex(raw.as_bytes());
                    responses.insert(hash.clone(), raw.clone());
                    (harvest(raw, &prompt.text, &opts.harvest), Some(hash))
                }
                (None, err) => (
                    HarvestOutcome {
                        classification: ReplyClass::NoTest,
                        test_units: Vec::new(),
                        test_method_count: 0,
                        assertion_count: 0,
                        evidence: format!(
                            "backend error: {}",
                            err.as_deref().unwrap_or("unspecified failure")
                        ),
                    },
                    None,
                ),
            };
            records.push(GenerationRecord {
                entry: entry.clone(),
                strategy,
                prompt_tokens: prompt.token_count,
                truncated: result.truncated_input,
                latency_secs: result.latency_secs,
                outcome,
                raw_response_ref,
            });
        }
    }

    records.sort_by(|a, b| {
        (&a.entry.focal, a.strategy.to_string()).cmp(&(&b.entry.focal, b.strategy.to_string()))
    });
    let report = EvaluationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        backend_id: opts.backend_id.clone(),
        tokenizer_scheme: opts.scheme.clone(),
        regurgitation_threshold: opts.harvest.regurgitation_threshold,
        std_dev_formula: STD_DEV_FORMULA.to_string(),
        median_rule: MEDIAN_RULE.to_string(),
        strategies: summarize(&records),
        skipped,
        records,
    };
    Ok(EvalOutput { report, responses, file_reports: project.reports })
}

pub fn build_prompt(
    index: &ProjectIndex<'_>,
    entry: &CorpusEntry,
    strategy: Strategy,
    scheme: &str,
) -> Result<PromptArtifact> {
    let artifact = match strategy {
        Strategy::Ours => {
            let ctx = extract_context(index, &entry.focal)
                .map_err(|e| anyhow::anyhow!("{}: {e}", entry.focal))?;
            build_ours(&ctx, &entry.focal, scheme)
        }
        Strategy::Baseline => build_baseline(index, &entry.focal, scheme),
    };
    artifact.map_err(|e| anyhow::anyhow!("building {} prompt for {}: {e}", strategy, entry.focal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    TableText,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table-text" => Ok(ReportFormat::TableText),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (known: table-text, csv, json)")),
        }
    }
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::TableText => "txt",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

fn strategy_label(strategy: Strategy) -> &'static str {
    match strategy {
        Strategy::Baseline => "Baseline",
        Strategy::Ours => "Ours",
    }
}

/// Renders rows as aligned columns: first column left-aligned, the rest
/// right-aligned, separated by ` | `.
fn aligned_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str(" | ");
            }
            if i == 0 {
                line.push_str(&format!("{:<width$}", cell, width = widths[i]));
            } else {
                line.push_str(&format!("{:>width$}", cell, width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn render_report(report: &EvaluationReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        ReportFormat::Csv => {
            let mut out = String::from(
                "schema_version,strategy,total_methods,methods_with_tests,regurgitation,no_test,\
                 tokens_mean,tokens_std_dev,tokens_median,latency_mean,latency_std_dev,latency_median\n",
            );
            for s in &report.strategies {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{:.1},{:.1},{:.1},{:.3},{:.3},{:.3}\n",
                    report.schema_version,
                    s.strategy,
                    s.total_methods,
                    s.methods_with_tests,
                    s.regurgitation,
                    s.no_test,
                    s.token_stats.mean,
                    s.token_stats.std_dev,
                    s.token_stats.median,
                    s.time_stats.mean,
                    s.time_stats.std_dev,
                    s.time_stats.median,
                ));
            }
            Ok(out)
        }
        ReportFormat::TableText => {
            let mut out = format!(
                "schema_version {}\nbackend: {} | tokenizer: {} | regurgitation threshold: {:.2}\nstd dev: {} | median: {}\n",
                report.schema_version,
                report.backend_id,
                report.tokenizer_scheme,
                report.regurgitation_threshold,
                report.std_dev_formula,
                report.median_rule,
            );

            out.push_str("\nMethods with generated tests\n");
            let mut rows = vec![vec![
                "strategy".to_string(),
                "total".to_string(),
                "with tests".to_string(),
                "regurgitation".to_string(),
                "no test".to_string(),
            ]];
            for s in &report.strategies {
                rows.push(vec![
                    strategy_label(s.strategy).to_string(),
                    s.total_methods.to_string(),
                    s.methods_with_tests.to_string(),
                    s.regurgitation.to_string(),
                    s.no_test.to_string(),
                ]);
            }
            out.push_str(&aligned_table(&rows));

            out.push_str("\nPrompt tokens (pre-truncation)\n");
            let mut rows = vec![vec![
                "strategy".to_string(),
                "mean".to_string(),
                "std dev".to_string(),
                "median".to_string(),
            ]];
            for s in &report.strategies {
                rows.push(vec![
                    strategy_label(s.strategy).to_string(),
                    format!("{:.1}", s.token_stats.mean),
                    format!("{:.1}", s.token_stats.std_dev),
                    format!("{:.1}", s.token_stats.median),
                ]);
            }
            out.push_str(&aligned_table(&rows));

            out.push_str("\nModel latency (seconds)\n");
            let mut rows = vec![vec![
                "strategy".to_string(),
                "mean".to_string(),
                "std dev".to_string(),
                "median".to_string(),
            ]];
            for s in &report.strategies {
                rows.push(vec![
                    strategy_label(s.strategy).to_string(),
                    format!("{:.3}", s.time_stats.mean),
                    format!("{:.3}", s.time_stats.std_dev),
                    format!("{:.3}", s.time_stats.median),
                ]);
            }
            out.push_str(&aligned_table(&rows));

            if report.skipped.is_empty() {
                out.push_str("\nSkipped entries: none\n");
            } else {
                out.push_str("\nSkipped entries\n");
                for s in &report.skipped {
                    out.push_str(&format!("{}: {}\n", s.reference, s.reason));
                }
            }
            Ok(out)
        }
    }
}

/// Writes the persistent run bundle: config snapshot, sorted records,
/// response blobs by hash, harvested test sources, and the rendered
/// report. Timestamps are NOT written here; they belong to the single
/// metadata file the caller owns, so two identical runs produce
/// byte-identical trees everywhere else.
pub fn write_run_dir(
    dir: &Path,
    report: &EvaluationReport,
    responses: &BTreeMap<String, String>,
    config_snapshot: &str,
    format: ReportFormat,
) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating `{}`", dir.display()))?;
    std::fs::write(dir.join("config.toml"), config_snapshot)?;

    let mut jsonl = String::new();
    for record in &report.records {
        jsonl.push_str(&serde_json::to_string(record)?);
        jsonl.push('\n');
    }
    std::fs::write(dir.join("records.jsonl"), jsonl)?;

    let blob_dir = dir.join("responses");
    std::fs::create_dir_all(&blob_dir)?;
    for (hash, body) in responses {
        std::fs::write(blob_dir.join(format!("{hash}.txt")), body)?;
    }

    let tests_dir = dir.join("generated-tests");
    for record in &report.records {
        if record.outcome.test_units.is_empty() {
            continue;
        }
        let focal = &record.entry.focal;
        let record_dir = tests_dir.join(format!(
            "{}.{}.{}.{}",
            focal.class_qualified_name, focal.method_name, focal.arity, record.strategy
        ));
        std::fs::create_dir_all(&record_dir)?;
        for (i, unit) in record.outcome.test_units.iter().enumerate() {
            let stem = match &unit.class_name {
                Some(name) => name.clone(),
                None => format!("block{i}"),
            };
            let mut source = unit.source.clone();
            if !source.ends_with('\n') {
                source.push('\n');
            }
            std::fs::write(record_dir.join(format!("{stem}.java")), source)?;
        }
    }

    let rendered = render_report(report, format)?;
    std::fs::write(dir.join(format!("report.{}", format.extension())), rendered)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::{ContextualMockBackend, EchoBackend, TruncationSide};

    fn default_options(backend_id: &str, strategies: Vec<Strategy>) -> EvalOptions {
        EvalOptions {
            strategies,
            backend_id: backend_id.to_string(),
            cfg: GenerationConfig::default(),
            scheme: "approx-llama".to_string(),
            harvest: HarvestConfig::default(),
            ignores: Vec::new(),
            jobs: 1,
        }
    }

    fn mock_gateway(threshold: usize) -> Gateway {
        let mut gw = Gateway::new("approx-llama", TruncationSide::Tail, 1).unwrap();
        gw.register(Box::new(EchoBackend));
        gw.register(Box::new(ContextualMockBackend { threshold_tokens: threshold }));
        gw
    }

    /// Two classes: one whose file alone overflows the mock threshold, one
    /// that fits comfortably.
    fn two_method_project() -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        let mut big = String::from("public class Big {\n");
        for i in 0..400 {
            big.push_str(&format!("    int field{i};\n"));
        }
        big.push_str("    int pick() {\n        return field0;\n    }\n}\n");
        std::fs::write(dir.path().join("Big.java"), big).unwrap();
        std::fs::write(
            dir.path().join("Small.java"),
            "public class Small {\n    int twice(int x) {\n        return x + x;\n    }\n}\n",
        )
        .unwrap();
        dir
    }

    fn two_method_corpus() -> Vec<CorpusEntry> {
        parse_corpus("Big.java\tBig\tpick\t0\tbig\nSmall.java\tSmall\ttwice\t1\tsmall\n").unwrap()
    }

    #[test]
    fn corpus_lines_parse_with_comments_and_optional_tags() {
        let text = "# demo corpus\n\nsrc/A.java\tcom.x.A\trun\t2\tguava, slow\nsrc/B.java\tB\tgo\t0\n";
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].focal.class_qualified_name, "com.x.A");
        assert_eq!(entries[0].tags, vec!["guava", "slow"]);
        assert_eq!(entries[1].focal.arity, 0);
        assert!(entries[1].tags.is_empty());

        let err = parse_corpus("only\tthree\tfields\n").unwrap_err().to_string();
        assert!(err.contains("line 1"));
        let err = parse_corpus("a\tb\tc\tnot-a-number\n").unwrap_err().to_string();
        assert!(err.contains("arity"));
    }

    #[test]
    fn stats_follow_the_documented_rules() {
        let two = stats(&[4.0, 6.0]);
        assert_eq!(two.mean, 5.0);
        assert_eq!(two.median, 4.0);

        let flat = stats(&[7.0, 7.0, 7.0]);
        assert_eq!(flat.std_dev, 0.0);
        assert_eq!(flat.median, 7.0);

        let single = stats(&[3.0]);
        assert_eq!(single.std_dev, 0.0);

        // Sample variance of {1, 5}: deviations are -2 and 2, so (4 + 4) / 1 = 8.
        let pair = stats(&[1.0, 5.0]);
        assert!((pair.std_dev - 8.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn contextual_mock_separates_strategies_directionally() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours, Strategy::Baseline]);
        let out = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();

        let by: BTreeMap<String, &StrategySummary> =
            out.report.strategies.iter().map(|s| (s.strategy.to_string(), s)).collect();
        let baseline = by["baseline"];
        let ours = by["ours"];
        assert_eq!(baseline.total_methods, 2);
        assert_eq!(ours.total_methods, 2);
        assert!(ours.methods_with_tests >= baseline.methods_with_tests);
        assert!(baseline.regurgitation >= 1);

        // Conservation: the three buckets partition each strategy's records.
        for s in &out.report.strategies {
            assert_eq!(s.methods_with_tests + s.regurgitation + s.no_test, s.total_methods);
        }

        // Every record carries a response blob and the blob exists.
        for record in &out.report.records {
            let hash = record.raw_response_ref.as_ref().unwrap();
            assert!(out.responses.contains_key(hash));
        }
    }

    #[test]
    fn echo_backend_regurgitates_everything() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let corpus = parse_corpus("Small.java\tSmall\ttwice\t1\n").unwrap();
        let opts = default_options("echo", vec![Strategy::Ours, Strategy::Baseline]);
        let out = run_evaluation(&gw, project.path(), &corpus, &opts).unwrap();
        for s in &out.report.strategies {
            assert_eq!(s.methods_with_tests, 0);
            assert_eq!(s.regurgitation, s.total_methods);
        }
    }

    #[test]
    fn unresolvable_entries_are_skipped_with_reasons() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let corpus = parse_corpus("Small.java\tSmall\ttwice\t1\nSmall.java\tSmall\tmissing\t0\n")
            .unwrap();
        let opts = default_options("contextual", vec![Strategy::Ours]);
        let out = run_evaluation(&gw, project.path(), &corpus, &opts).unwrap();
        assert_eq!(out.report.records.len(), 1);
        assert_eq!(out.report.skipped.len(), 1);
        assert!(out.report.skipped[0].reason.contains("missing"));
    }

    #[test]
    fn empty_corpus_is_a_config_error() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours]);
        assert!(run_evaluation(&gw, project.path(), &[], &opts).is_err());
    }

    #[test]
    fn repeated_runs_are_identical() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours, Strategy::Baseline]);
        let first = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();
        let second = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();
        assert_eq!(first.report, second.report);
        assert_eq!(first.responses, second.responses);
    }

    #[test]
    fn json_report_round_trips() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours, Strategy::Baseline]);
        let out = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();
        let rendered = render_report(&out.report, ReportFormat::Json).unwrap();
        let parsed: EvaluationReport = serde_json::from_str(&rendered).unwrap();
        assert_eq!(parsed, out.report);
    }

    #[test]
    fn table_text_rows_run_baseline_then_ours() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours, Strategy::Baseline]);
        let out = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();
        let text = render_report(&out.report, ReportFormat::TableText).unwrap();
        let baseline_at = text.find("Baseline").unwrap();
        let ours_at = text.find("Ours").unwrap();
        assert!(baseline_at < ours_at);
        assert!(text.contains("std dev"));
        assert!(text.contains("median"));

        let single = EvaluationReport {
            strategies: out.report.strategies[..1].to_vec(),
            records: Vec::new(),
            skipped: Vec::new(),
            ..out.report.clone()
        };
        let text = render_report(&single, ReportFormat::TableText).unwrap();
        assert!(text.contains("Baseline"));
        assert!(!text.contains("Ours"));
    }

    #[test]
    fn run_dir_holds_records_blobs_and_harvested_tests() {
        let project = two_method_project();
        let gw = mock_gateway(1023);
        let opts = default_options("contextual", vec![Strategy::Ours, Strategy::Baseline]);
        let out = run_evaluation(&gw, project.path(), &two_method_corpus(), &opts).unwrap();

        let run = tempfile::tempdir().unwrap();
        write_run_dir(run.path(), &out.report, &out.responses, "# snapshot\n", ReportFormat::TableText)
            .unwrap();
        assert!(run.path().join("config.toml").is_file());
        assert!(run.path().join("report.txt").is_file());
        let jsonl = std::fs::read_to_string(run.path().join("records.jsonl")).unwrap();
        assert_eq!(jsonl.lines().count(), 4);
        let harvested = run.path().join("generated-tests/Small.twice.1.ours/SmallTest.java");
        let body = std::fs::read_to_string(harvested).unwrap();
        assert!(body.contains("@Test"));
    }
}
