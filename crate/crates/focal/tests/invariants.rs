//! Cross-module invariants checked over the bundled demo fixtures: prompt
//! size ordering, context purity and conciseness, and the harvest loop
//! closing over the contextual mock.

use std::path::Path;

use focal::eval::{build_prompt, corpus_from_file, CorpusEntry};
use focal::gateway::{Backend, BackendRequest, ContextualMockBackend, GenerationConfig};
use focal::walk::{load_project, LoadedProject};
use focal_core::context::extract_context;
use focal_core::harvest::{harvest, HarvestConfig, ReplyClass};
use focal_core::prompt::Strategy;
use focal_core::resolver::ProjectIndex;

fn repo_path(rel: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn demo_project() -> LoadedProject {
    load_project(&repo_path("fixtures/guava"), &[], 2).expect("demo fixtures parse")
}

fn demo_corpus() -> Vec<CorpusEntry> {
    corpus_from_file(&repo_path("corpora/demo.tsv")).expect("demo corpus parses")
}

#[test]
fn ours_prompt_is_smaller_than_baseline_for_every_demo_method() {
    let project = demo_project();
    let index = ProjectIndex::build(&project.units, focal::builtin_table().unwrap());
    for entry in demo_corpus() {
        let ours = build_prompt(&index, &entry, Strategy::Ours, "approx-llama").unwrap();
        let baseline = build_prompt(&index, &entry, Strategy::Baseline, "approx-llama").unwrap();
        assert!(
            ours.token_count < baseline.token_count,
            "{}: ours {} >= baseline {}",
            entry.focal,
            ours.token_count,
            baseline.token_count
        );
    }
}

#[test]
fn ours_prompt_embeds_the_focal_source_exactly_once() {
    let project = demo_project();
    let index = ProjectIndex::build(&project.units, focal::builtin_table().unwrap());
    for entry in demo_corpus() {
        let ctx = extract_context(&index, &entry.focal).unwrap();
        let prompt = build_prompt(&index, &entry, Strategy::Ours, "approx-llama").unwrap();
        let occurrences = prompt.text.matches(&ctx.focal_source).count();
        assert_eq!(occurrences, 1, "{}: focal source appears {} times", entry.focal, occurrences);
    }
}

#[test]
fn context_extraction_is_pure_and_accounts_for_every_call_site() {
    let project = demo_project();
    let index = ProjectIndex::build(&project.units, focal::builtin_table().unwrap());
    for entry in demo_corpus() {
        let first = extract_context(&index, &entry.focal).unwrap();
        let second = extract_context(&index, &entry.focal).unwrap();
        assert_eq!(first, second, "{}: repeated extraction differed", entry.focal);

        let unit = index.find_unit(&entry.focal.unit_path).unwrap();
        let class = index.class(&entry.focal.class_qualified_name).unwrap().class;
        let method = class
            .find_methods(&entry.focal.method_name, entry.focal.arity)
            .into_iter()
            .next()
            .unwrap();
        let s = first.resolution_stats;
        assert_eq!(
            s.resolved + s.ambiguous + s.unresolved,
            method.invocations.len(),
            "{}: stats do not partition the call sites",
            entry.focal
        );
        assert_eq!(unit.path, entry.focal.unit_path);
    }
}

/// The rendered context never exceeds the source file it came from; the
/// whole point of the scheme is to shrink the prompt.
#[test]
fn context_render_is_no_longer_than_the_unit_source() {
    let project = demo_project();
    let index = ProjectIndex::build(&project.units, focal::builtin_table().unwrap());
    for entry in demo_corpus() {
        let ctx = extract_context(&index, &entry.focal).unwrap();
        let unit = index.find_unit(&entry.focal.unit_path).unwrap();
        assert!(
            ctx.render().len() <= unit.raw_source.len(),
            "{}: render outgrew the source file",
            entry.focal
        );
    }
}

/// Every under-budget ours prompt drives the contextual mock to a reply
/// the harvester classifies as generated tests.
#[test]
fn contextual_mock_replies_harvest_as_tests_for_every_demo_method() {
    let project = demo_project();
    let index = ProjectIndex::build(&project.units, focal::builtin_table().unwrap());
    let backend = ContextualMockBackend { threshold_tokens: 1023 };
    let cfg = GenerationConfig::default();
    for entry in demo_corpus() {
        let prompt = build_prompt(&index, &entry, Strategy::Ours, "approx-llama").unwrap();
        assert!(prompt.token_count <= 1023, "{}: ours prompt over budget", entry.focal);
        let request = BackendRequest {
            text: &prompt.text,
            original_token_count: prompt.token_count,
            sha256: &focal::sha256_hex(prompt.text.as_bytes()),
            cfg: &cfg,
        };
        let reply = backend.complete(&request).unwrap();
        let outcome = harvest(&reply.raw_text, &prompt.text, &HarvestConfig::default());
        assert_eq!(outcome.classification, ReplyClass::TestsGenerated, "{}", entry.focal);
        assert!(outcome.test_method_count >= 1);
        assert!(outcome.assertion_count >= 1);
    }
}
