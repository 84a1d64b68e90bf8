//! `focal` command line: analyze a Java tree, print focal contexts and
//! prompts, and run test generation against a configured backend.
//!
//! Exit codes: 0 success, 1 user or configuration error, 2 internal error.
//! Stdout carries data only (summaries, renders, reports); everything else
//! goes to stderr.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use focal::config::{BackendConfig, FileConfig};
use focal::eval::{
    corpus_from_file, run_evaluation, write_run_dir, CorpusEntry, EvalOptions, EvalOutput,
    ReportFormat,
};
use focal::gateway::{
    ContextualMockBackend, EchoBackend, Gateway, GenerationConfig, HttpBackend, ReplayBackend,
    TruncationSide,
};
use focal::walk::{self, load_project, IndexCache, DEFAULT_IGNORES};
use focal_core::context::{extract_context, FocalMethodRef};
use focal_core::harvest::{HarvestConfig, ReplyClass};
use focal_core::prompt::Strategy;
use focal_core::resolver::{ClassRef, ProjectIndex};
use focal_core::tokenizer;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "focal", version, about = "Focal-context test generation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse every Java file under a project root and print counts.
    Analyze(AnalyzeArgs),
    /// Print the rendered focal context for one method.
    Context(ContextArgs),
    /// Print the prompt a strategy would send for one method.
    Prompt(PromptArgs),
    /// Generate tests for one method or a whole corpus.
    Generate(GenerateArgs),
    /// Run a corpus through the selected strategies and print the report.
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Project root containing .java sources.
    #[arg(long)]
    project: Option<PathBuf>,
    /// TOML config file; flags override its values. Relative paths inside
    /// the file resolve against the file's directory.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory name to skip while walking (repeatable).
    #[arg(long = "ignore")]
    ignore: Vec<String>,
    /// Worker threads for parsing.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Cache file reusing per-file counts across runs.
    #[arg(long)]
    index_cache: Option<PathBuf>,
}

#[derive(Args)]
struct ContextArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Focal class, qualified or simple name.
    #[arg(long)]
    class: String,
    /// Focal method name.
    #[arg(long)]
    method: String,
    /// Parameter count; may be omitted when the name is unambiguous.
    #[arg(long)]
    arity: Option<usize>,
}

#[derive(Args)]
struct PromptArgs {
    #[command(flatten)]
    locate: ContextArgs,
    /// Prompt strategy: `ours` or `baseline`.
    #[arg(long, default_value = "ours")]
    strategy: String,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Corpus file; alternative to --class/--method.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Focal class for single-method generation.
    #[arg(long)]
    class: Option<String>,
    /// Focal method for single-method generation.
    #[arg(long)]
    method: Option<String>,
    /// Parameter count; may be omitted when the name is unambiguous.
    #[arg(long)]
    arity: Option<usize>,
    /// Strategy to run (repeatable).
    #[arg(long = "strategy")]
    strategies: Vec<String>,
    /// Backend id: echo, contextual, replay, or http.
    #[arg(long)]
    backend: Option<String>,
    /// Directory to write the run bundle into.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Corpus file listing focal methods.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Strategy to run (repeatable).
    #[arg(long = "strategy")]
    strategies: Vec<String>,
    /// Backend id: echo, contextual, replay, or http.
    #[arg(long)]
    backend: Option<String>,
    /// Report format: table-text, csv, or json.
    #[arg(long)]
    format: Option<String>,
    /// Directory to write the run bundle into.
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

enum CliError {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Internal(e)
    }
}

fn user(e: anyhow::Error) -> CliError {
    CliError::User(e)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Context(args) => cmd_context(args),
        Command::Prompt(args) => cmd_prompt(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Effective settings after merging flags over the config file over
/// defaults. Paths from the file are already anchored to its directory.
struct Settings {
    project: PathBuf,
    corpus: Option<PathBuf>,
    strategies: Vec<Strategy>,
    backend_id: String,
    format: ReportFormat,
    output_dir: Option<PathBuf>,
    jobs: usize,
    scheme: String,
    harvest: HarvestConfig,
    ignores: Vec<String>,
    decoding: GenerationConfig,
    threshold_tokens: Option<usize>,
    replay_file: Option<PathBuf>,
    http_url: Option<String>,
    auth_env: Option<String>,
    auth_header: Option<String>,
    truncation: TruncationSide,
    in_flight_cap: usize,
}

fn anchor(base: Option<&Path>, raw: &str) -> PathBuf {
    let p = PathBuf::from(raw);
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p,
    }
}

struct Overrides<'a> {
    corpus: Option<&'a PathBuf>,
    strategies: &'a [String],
    backend: Option<&'a str>,
    format: Option<&'a str>,
    output_dir: Option<&'a PathBuf>,
}

impl Default for Overrides<'_> {
    fn default() -> Self {
        Overrides { corpus: None, strategies: &[], backend: None, format: None, output_dir: None }
    }
}

fn resolve_settings(common: &CommonArgs, over: Overrides<'_>) -> Result<Settings, CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path).map_err(user)?,
        None => FileConfig::default(),
    };
    let base = common.config.as_deref().and_then(Path::parent);

    let project = common
        .project
        .clone()
        .or_else(|| file.project.as_deref().map(|p| anchor(base, p)))
        .ok_or_else(|| user(anyhow!("no project root: pass --project or set `project`")))?;
    let corpus = over
        .corpus
        .cloned()
        .or_else(|| file.corpus.as_deref().map(|p| anchor(base, p)));
    let output_dir = over
        .output_dir
        .cloned()
        .or_else(|| file.output_dir.as_deref().map(|p| anchor(base, p)));

    let strategy_names: Vec<String> = if !over.strategies.is_empty() {
        over.strategies.to_vec()
    } else {
        file.strategies.clone().unwrap_or_else(|| vec!["baseline".into(), "ours".into()])
    };
    let mut strategies = Vec::new();
    for name in &strategy_names {
        let s: Strategy = name.parse().map_err(|e| user(anyhow!("{e}")))?;
        if !strategies.contains(&s) {
            strategies.push(s);
        }
    }

    let backend_cfg: BackendConfig = file.backend.clone().unwrap_or_default();
    let backend_id = over
        .backend
        .map(str::to_string)
        .or_else(|| backend_cfg.kind.clone())
        .unwrap_or_else(|| "contextual".to_string());
    let format: ReportFormat = over
        .format
        .map(str::to_string)
        .or_else(|| file.format.clone())
        .unwrap_or_else(|| "table-text".to_string())
        .parse()
        .map_err(|e: String| user(anyhow!(e)))?;

    let scheme = file.tokenizer_scheme.clone().unwrap_or_else(|| tokenizer::DEFAULT_SCHEME.to_string());
    if !tokenizer::SCHEMES.contains(&scheme.as_str()) {
        return Err(user(anyhow!(
            "unknown tokenizer scheme `{scheme}` (known: {})",
            tokenizer::SCHEMES.join(", ")
        )));
    }
    let mut harvest = HarvestConfig::default();
    if let Some(t) = file.regurgitation_threshold {
        if !(0.0..=1.0).contains(&t) {
            return Err(user(anyhow!("regurgitation_threshold must be within [0, 1], got {t}")));
        }
        harvest.regurgitation_threshold = t;
    }
    let ignores: Vec<String> = if !common.ignore.is_empty() {
        common.ignore.clone()
    } else {
        file.ignore
            .clone()
            .unwrap_or_else(|| DEFAULT_IGNORES.iter().map(|s| s.to_string()).collect())
    };
    let truncation = match backend_cfg.truncation.as_deref() {
        None => TruncationSide::Tail,
        Some(raw) => raw.parse().map_err(|e: String| user(anyhow!(e)))?,
    };

    Ok(Settings {
        project,
        corpus,
        strategies,
        backend_id,
        format,
        output_dir,
        jobs: common.jobs.or(file.jobs).unwrap_or(1).max(1),
        scheme,
        harvest,
        ignores,
        decoding: file.decoding.clone().unwrap_or_default(),
        threshold_tokens: backend_cfg.threshold_tokens,
        replay_file: backend_cfg.replay_file.as_deref().map(|p| anchor(base, p)),
        http_url: backend_cfg.url.clone(),
        auth_env: backend_cfg.auth_env.clone(),
        auth_header: backend_cfg.auth_header.clone(),
        truncation,
        in_flight_cap: backend_cfg.in_flight_cap.unwrap_or(1).max(1),
    })
}

fn build_gateway(s: &Settings) -> Result<Gateway, CliError> {
    let mut gw = Gateway::new(&s.scheme, s.truncation, s.in_flight_cap).map_err(user)?;
    gw.register(Box::new(EchoBackend));
    gw.register(Box::new(ContextualMockBackend {
        threshold_tokens: s.threshold_tokens.unwrap_or(s.decoding.max_input_tokens),
    }));
    if let Some(path) = &s.replay_file {
        gw.register(Box::new(ReplayBackend::from_file(path).map_err(user)?));
    }
    if let Some(url) = &s.http_url {
        gw.register(Box::new(
            HttpBackend::new(url, s.auth_env.as_deref(), s.auth_header.as_deref()).map_err(user)?,
        ));
    }
    Ok(gw)
}

/// Accepts a qualified name or a project-unique simple name.
fn resolve_class<'a>(index: &ProjectIndex<'a>, name: &str) -> Result<ClassRef<'a>, CliError> {
    if let Some(c) = index.class(name) {
        return Ok(c);
    }
    let candidates = index.classes_for_simple(name);
    match candidates.len() {
        0 => Err(user(anyhow!("class `{name}` not found in project"))),
        1 => Ok(index.class(candidates[0]).expect("simple-name table entry is indexed")),
        _ => Err(user(anyhow!("class `{name}` is ambiguous: {}", candidates.join(", ")))),
    }
}

/// Infers the arity when the method name occurs with exactly one parameter
/// count; otherwise the caller must pass --arity.
fn resolve_arity(class: &ClassRef<'_>, method: &str, arity: Option<usize>) -> Result<usize, CliError> {
    if let Some(a) = arity {
        return Ok(a);
    }
    let arities: BTreeSet<usize> = class
        .class
        .methods
        .iter()
        .filter(|m| !m.is_constructor && m.name == method)
        .map(|m| m.arity())
        .collect();
    let mut iter = arities.iter();
    match (iter.next(), iter.next()) {
        (Some(&only), None) => Ok(only),
        (None, _) => Err(user(anyhow!(
            "method `{method}` not found on `{}`",
            class.class.qualified_name
        ))),
        _ => Err(user(anyhow!(
            "method `{method}` on `{}` has overloads with arities {}; pass --arity",
            class.class.qualified_name,
            arities.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn locate_focal(
    index: &ProjectIndex<'_>,
    class: &str,
    method: &str,
    arity: Option<usize>,
) -> Result<FocalMethodRef, CliError> {
    let class_ref = resolve_class(index, class)?;
    let arity = resolve_arity(&class_ref, method, arity)?;
    Ok(FocalMethodRef {
        unit_path: class_ref.unit.path.clone(),
        class_qualified_name: class_ref.class.qualified_name.clone(),
        method_name: method.to_string(),
        arity,
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let s = resolve_settings(&args.common, Overrides::default())?;
    let (summary, reports) = match &args.index_cache {
        Some(cache_path) => {
            let mut cache = IndexCache::load(cache_path);
            let result = walk::analyze_with_cache(&s.project, &s.ignores, &mut cache).map_err(user)?;
            cache.store(cache_path)?;
            result
        }
        None => {
            let project = load_project(&s.project, &s.ignores, s.jobs).map_err(user)?;
            let summary = walk::summarize_units(&project.units, &project.reports);
            (summary, project.reports)
        }
    };
    for report in &reports {
        for message in &report.messages {
            eprintln!("{}: {}", report.path, message);
        }
    }
    println!(
        "{} files, {} classes, {} methods, {} diagnostics",
        summary.files, summary.classes, summary.methods, summary.diagnostics
    );
    Ok(())
}

fn cmd_context(args: ContextArgs) -> Result<(), CliError> {
    let s = resolve_settings(&args.common, Overrides::default())?;
    let project = load_project(&s.project, &s.ignores, s.jobs).map_err(user)?;
    let index = ProjectIndex::build(&project.units, focal::builtin_table()?);
    let focal = locate_focal(&index, &args.class, &args.method, args.arity)?;
    let ctx = extract_context(&index, &focal).map_err(|e| user(anyhow!("{e}")))?;
    println!("{}", ctx.render());
    Ok(())
}

fn cmd_prompt(args: PromptArgs) -> Result<(), CliError> {
    let strategy: Strategy = args.strategy.parse().map_err(|e| user(anyhow!("{e}")))?;
    let s = resolve_settings(&args.locate.common, Overrides::default())?;
    let project = load_project(&s.project, &s.ignores, s.jobs).map_err(user)?;
    let index = ProjectIndex::build(&project.units, focal::builtin_table()?);
    let focal = locate_focal(&index, &args.locate.class, &args.locate.method, args.locate.arity)?;
    let entry = CorpusEntry { focal, tags: Vec::new() };
    let artifact = focal::eval::build_prompt(&index, &entry, strategy, &s.scheme).map_err(user)?;
    log::info!("{} prompt: {} tokens", strategy, artifact.token_count);
    println!("{}", artifact.text);
    Ok(())
}

fn load_corpus_or_single(
    s: &Settings,
    class: Option<&str>,
    method: Option<&str>,
    arity: Option<usize>,
) -> Result<Vec<CorpusEntry>, CliError> {
    if let Some(path) = &s.corpus {
        return corpus_from_file(path).map_err(user);
    }
    let (Some(class), Some(method)) = (class, method) else {
        return Err(user(anyhow!("pass --corpus, or --class and --method for a single method")));
    };
    let project = load_project(&s.project, &s.ignores, s.jobs).map_err(user)?;
    let index = ProjectIndex::build(&project.units, focal::builtin_table()?);
    let focal = locate_focal(&index, class, method, arity)?;
    Ok(vec![CorpusEntry { focal, tags: Vec::new() }])
}

fn run_and_persist(s: &Settings, corpus: &[CorpusEntry]) -> Result<EvalOutput, CliError> {
    if let Some(dir) = &s.output_dir {
        refuse_populated_dir(dir)?;
    }
    let gateway = build_gateway(s)?;
    let opts = EvalOptions {
        strategies: s.strategies.clone(),
        backend_id: s.backend_id.clone(),
        cfg: s.decoding.clone(),
        scheme: s.scheme.clone(),
        harvest: s.harvest.clone(),
        ignores: s.ignores.clone(),
        jobs: s.jobs,
    };
    let started = SystemTime::now();
    let out = run_evaluation(&gateway, &s.project, corpus, &opts).map_err(user)?;
    for report in &out.file_reports {
        for message in &report.messages {
            log::warn!("{}: {}", report.path, message);
        }
    }
    if let Some(dir) = &s.output_dir {
        write_run_dir(dir, &out.report, &out.responses, &snapshot_toml(s)?, s.format)?;
        write_meta(dir, started, SystemTime::now())?;
    }
    Ok(out)
}

fn refuse_populated_dir(dir: &Path) -> Result<(), CliError> {
    if dir.exists() {
        if !dir.is_dir() {
            return Err(user(anyhow!("output path `{}` exists and is not a directory", dir.display())));
        }
        let mut entries = std::fs::read_dir(dir)
            .with_context(|| format!("reading `{}`", dir.display()))
            .map_err(user)?;
        if entries.next().is_some() {
            return Err(user(anyhow!(
                "output directory `{}` already exists and is not empty",
                dir.display()
            )));
        }
    }
    Ok(())
}

/// Reproducible snapshot of the effective run settings. The output
/// directory is deliberately absent: it is the one run-specific value,
/// and the snapshot must not differ between two otherwise equal runs.
#[derive(Serialize)]
struct RunSnapshot<'a> {
    project: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    corpus: Option<String>,
    strategies: Vec<String>,
    backend: &'a str,
    format: &'static str,
    jobs: usize,
    tokenizer_scheme: &'a str,
    regurgitation_threshold: f64,
    ignore: &'a [String],
    truncation: &'static str,
    in_flight_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    threshold_tokens: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    replay_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    url: Option<&'a str>,
    decoding: &'a GenerationConfig,
}

fn snapshot_toml(s: &Settings) -> Result<String, CliError> {
    let snapshot = RunSnapshot {
        project: s.project.display().to_string(),
        corpus: s.corpus.as_ref().map(|p| p.display().to_string()),
        strategies: s.strategies.iter().map(|st| st.to_string()).collect(),
        backend: &s.backend_id,
        format: match s.format {
            ReportFormat::TableText => "table-text",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        },
        jobs: s.jobs,
        tokenizer_scheme: &s.scheme,
        regurgitation_threshold: s.harvest.regurgitation_threshold,
        ignore: &s.ignores,
        truncation: match s.truncation {
            TruncationSide::Tail => "tail",
            TruncationSide::Head => "head",
        },
        in_flight_cap: s.in_flight_cap,
        threshold_tokens: s.threshold_tokens,
        replay_file: s.replay_file.as_ref().map(|p| p.display().to_string()),
        url: s.http_url.as_deref(),
        decoding: &s.decoding,
    };
    Ok(toml::to_string_pretty(&snapshot).context("serializing run snapshot")?)
}

/// The run's only timestamps live here so the rest of the bundle stays
/// byte-identical across repeated runs.
fn write_meta(dir: &Path, started: SystemTime, finished: SystemTime) -> Result<(), CliError> {
    let secs = |t: SystemTime| t.duration_since(UNIX_EPOCH).unwrap_or_default().as_secs();
    let body = serde_json::json!({
        "started_unix_secs": secs(started),
        "finished_unix_secs": secs(finished),
    });
    let text = serde_json::to_string_pretty(&body).context("encoding meta.json")?;
    std::fs::write(dir.join("meta.json"), text + "\n").context("writing meta.json")?;
    Ok(())
}

fn classification_word(class: ReplyClass) -> &'static str {
    match class {
        ReplyClass::TestsGenerated => "tests generated",
        ReplyClass::Regurgitation => "regurgitation",
        ReplyClass::NoTest => "no test",
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let over = Overrides {
        corpus: args.corpus.as_ref(),
        strategies: &args.strategies,
        backend: args.backend.as_deref(),
        output_dir: args.output_dir.as_ref(),
        ..Overrides::default()
    };
    let s = resolve_settings(&args.common, over)?;
    let corpus = load_corpus_or_single(&s, args.class.as_deref(), args.method.as_deref(), args.arity)?;
    let out = run_and_persist(&s, &corpus)?;
    for record in &out.report.records {
        println!(
            "{} {}: {} (tests {}, assertions {}, prompt tokens {}{})",
            record.entry.focal,
            record.strategy,
            classification_word(record.outcome.classification),
            record.outcome.test_method_count,
            record.outcome.assertion_count,
            record.prompt_tokens,
            if record.truncated { ", truncated" } else { "" },
        );
    }
    for skipped in &out.report.skipped {
        println!("{}: skipped ({})", skipped.reference, skipped.reason);
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let over = Overrides {
        corpus: args.corpus.as_ref(),
        strategies: &args.strategies,
        backend: args.backend.as_deref(),
        format: args.format.as_deref(),
        output_dir: args.output_dir.as_ref(),
    };
    let s = resolve_settings(&args.common, over)?;
    let Some(corpus_path) = s.corpus.clone() else {
        return Err(user(anyhow!("no corpus: pass --corpus or set `corpus` in the config")));
    };
    let corpus = corpus_from_file(&corpus_path).map_err(user)?;
    let out = run_and_persist(&s, &corpus)?;
    print!("{}", focal::eval::render_report(&out.report, s.format)?);
    Ok(())
}
