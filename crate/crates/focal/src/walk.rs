//! Project discovery and loading: find `.java` files under a root, parse
//! them leniently, and assemble the unit list the resolver indexes. One
//! unreadable or unparseable file never aborts a load; it surfaces as
//! diagnostics against that path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use anyhow::{bail, Context, Result};
use focal_core::model::CompilationUnit;
use focal_core::parser::parse_unit_lenient;
use serde::{Deserialize, Serialize};

/// Directory names skipped by default: generated output trees.
pub const DEFAULT_IGNORES: &[&str] = &["target", "build", "out", ".git"];

/// Diagnostics for one file, keyed by the same relative path as its unit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FileReport {
    pub path: String,
    pub messages: Vec<String>,
}

#[derive(Debug)]
pub struct LoadedProject {
    /// Parsed units in discovery order (sorted by relative path).
    pub units: Vec<CompilationUnit>,
    /// One entry per file that produced diagnostics or failed to read.
    pub reports: Vec<FileReport>,
}

/// Relative paths (forward slashes) of every `.java` file under `root`,
/// sorted. Directories whose name appears in `ignores` are not descended.
pub fn discover_java_files(root: &Path, ignores: &[String]) -> Result<Vec<String>> {
    if !root.is_dir() {
        bail!("project root `{}` is not a directory", root.display());
    }
    let mut found = Vec::new();
    let mut stack = vec![PathBuf::new()];
    while let Some(rel_dir) = stack.pop() {
        let abs = root.join(&rel_dir);
        let mut entries: Vec<(String, bool)> = Vec::new();
        for entry in std::fs::read_dir(&abs)
            .with_context(|| format!("listing `{}`", abs.display()))?
        {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            let is_dir = entry.file_type()?.is_dir();
            entries.push((name, is_dir));
        }
        entries.sort();
        for (name, is_dir) in entries {
            let rel = if rel_dir.as_os_str().is_empty() {
                PathBuf::from(&name)
            } else {
                rel_dir.join(&name)
            };
            if is_dir {
                if !ignores.iter().any(|i| i == &name) {
                    stack.push(rel);
                }
            } else if name.ends_with(".java") {
                found.push(rel.to_string_lossy().replace('\\', "/"));
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Parses every discovered file with `jobs` worker threads. Output order
/// and content are independent of scheduling: results are reassembled by
/// file index.
pub fn load_project(root: &Path, ignores: &[String], jobs: usize) -> Result<LoadedProject> {
    let files = discover_java_files(root, ignores)?;
    let jobs = jobs.max(1);

    let mut slots: Vec<Option<(Option<CompilationUnit>, Vec<String>)>> = Vec::new();
    slots.resize_with(files.len(), || None);

    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel();
        for worker in 0..jobs {
            let tx = tx.clone();
            let files = &files;
            scope.spawn(move || {
                for idx in (worker..files.len()).step_by(jobs) {
                    let rel = &files[idx];
                    let outcome = match std::fs::read_to_string(root.join(rel)) {
                        Ok(source) => {
                            let parsed = parse_unit_lenient(rel, &source);
                            let messages = parsed
                                .diagnostics
                                .iter()
                                .map(|d| format!("{}:{}: {}", d.pos.line, d.pos.column, d.message))
                                .collect();
                            (Some(parsed.unit), messages)
                        }
                        Err(e) => (None, vec![format!("read failed: {e}")]),
                    };
                    if tx.send((idx, outcome)).is_err() {
                        return;
                    }
                }
            });
        }
        drop(tx);
        for (idx, outcome) in rx {
            slots[idx] = Some(outcome);
        }
    });

    let mut units = Vec::new();
    let mut reports = Vec::new();
    for (idx, slot) in slots.into_iter().enumerate() {
        let (unit, messages) = slot.expect("worker covered every index");
        if !messages.is_empty() {
            reports.push(FileReport { path: files[idx].clone(), messages });
        }
        if let Some(unit) = unit {
            units.push(unit);
        }
    }
    Ok(LoadedProject { units, reports })
}

/// Counts reported by `analyze`: nested types are included, constructors
/// count as methods.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeSummary {
    pub files: usize,
    pub classes: usize,
    pub methods: usize,
    pub diagnostics: usize,
}

pub fn summarize_units(units: &[CompilationUnit], reports: &[FileReport]) -> AnalyzeSummary {
    fn count(class: &focal_core::model::ClassDecl, classes: &mut usize, methods: &mut usize) {
        *classes += 1;
        *methods += class.methods.len();
        for nested in &class.nested {
            count(nested, classes, methods);
        }
    }
    let mut summary = AnalyzeSummary { files: units.len(), ..Default::default() };
    for unit in units {
        for class in &unit.types {
            count(class, &mut summary.classes, &mut summary.methods);
        }
    }
    summary.diagnostics = reports.iter().map(|r| r.messages.len()).sum();
    // Unreadable files produced a report but no unit; they still count as
    // seen files so the summary matches the directory walk.
    summary.files += reports.iter().filter(|r| r.messages.iter().any(|m| m.starts_with("read failed"))).count();
    summary
}

/// Per-file cache for `analyze`: content hash plus the counts that file
/// contributed. A stale hash forces a re-parse, so correctness never
/// depends on the cache.
#[derive(Debug, Default, Serialize, Deserialize)]
pub struct IndexCache {
    pub schema_version: u32,
    pub files: BTreeMap<String, CachedFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CachedFile {
    pub sha256: String,
    pub classes: usize,
    pub methods: usize,
    pub diagnostics: usize,
}

pub const INDEX_CACHE_VERSION: u32 = 1;

impl IndexCache {
    pub fn load(path: &Path) -> IndexCache {
        let Ok(text) = std::fs::read_to_string(path) else {
            return IndexCache { schema_version: INDEX_CACHE_VERSION, ..Default::default() };
        };
        match serde_json::from_str::<IndexCache>(&text) {
            Ok(cache) if cache.schema_version == INDEX_CACHE_VERSION => cache,
            _ => IndexCache { schema_version: INDEX_CACHE_VERSION, ..Default::default() },
        }
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")
            .with_context(|| format!("writing index cache `{}`", path.display()))
    }
}

/// Analyze with an optional cache: files whose content hash matches the
/// cached entry reuse its counts without re-parsing.
pub fn analyze_with_cache(
    root: &Path,
    ignores: &[String],
    cache: &mut IndexCache,
) -> Result<(AnalyzeSummary, Vec<FileReport>)> {
    let files = discover_java_files(root, ignores)?;
    let mut summary = AnalyzeSummary::default();
    let mut reports = Vec::new();
    let mut fresh: BTreeMap<String, CachedFile> = BTreeMap::new();
    for rel in &files {
        summary.files += 1;
        let bytes = match std::fs::read(root.join(rel)) {
            Ok(b) => b,
            Err(e) => {
                summary.diagnostics += 1;
                reports
                    .push(FileReport { path: rel.clone(), messages: vec![format!("read failed: {e}")] });
                continue;
            }
        };
        let hash = crate::sha256_hex(&bytes);
        let entry = match cache.files.get(rel) {
            Some(cached) if cached.sha256 == hash => cached.clone(),
            _ => {
                let source = String::from_utf8_lossy(&bytes);
                let parsed = parse_unit_lenient(rel, &source);
                let single = summarize_units(std::slice::from_ref(&parsed.unit), &[]);
                if !parsed.diagnostics.is_empty() {
                    reports.push(FileReport {
                        path: rel.clone(),
                        messages: parsed
                            .diagnostics
                            .iter()
                            .map(|d| format!("{}:{}: {}", d.pos.line, d.pos.column, d.message))
                            .collect(),
                    });
                }
                CachedFile {
                    sha256: hash,
                    classes: single.classes,
                    methods: single.methods,
                    diagnostics: parsed.diagnostics.len(),
                }
            }
        };
        summary.classes += entry.classes;
        summary.methods += entry.methods;
        summary.diagnostics += entry.diagnostics;
        fresh.insert(rel.clone(), entry);
    }
    cache.files = fresh;
    Ok((summary, reports))
}
