//! Reply harvesting: pull code out of a model reply, decide whether the
//! reply is a regurgitation of its prompt, and count the generated test
//! methods and assertions.
//!
//! The regurgitation check runs before any parsing: a reply whose longest
//! common substring with the prompt covers at least the configured share
//! of the reply is classified as regurgitation even if it happens to
//! contain annotated methods.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::model::ClassDecl;
use crate::parser::parse_unit_lenient;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarvestConfig {
    /// Minimum share of the reply (in bytes) the longest common substring
    /// with the prompt must cover to classify as regurgitation.
    pub regurgitation_threshold: f64,
}

impl Default for HarvestConfig {
    fn default() -> Self {
        HarvestConfig { regurgitation_threshold: 0.8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplyClass {
    TestsGenerated,
    Regurgitation,
    NoTest,
}

/// One fenced block (or the whole reply) that parsed into at least one
/// type declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestUnit {
    /// Simple name of the first top-level type in the block.
    pub class_name: Option<String>,
    pub source: String,
    pub test_method_count: usize,
    pub assertion_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarvestOutcome {
    pub classification: ReplyClass,
    pub test_units: Vec<TestUnit>,
    pub test_method_count: usize,
    pub assertion_count: usize,
    /// One human-readable line saying why the classification was chosen.
    pub evidence: String,
}

/// Fenced code blocks in order of appearance; the whole reply when there
/// are no fences. Fences are line-based: a line whose trimmed form starts
/// with ``` opens or closes a block, and an unclosed block runs to the end.
pub fn extract_code_blocks(reply: &str) -> Vec<String> {
    let mut blocks = Vec::new();
    let mut current: Option<Vec<&str>> = None;
    for line in reply.lines() {
        if line.trim_start().starts_with("```") {
            match current.take() {
                Some(lines) => blocks.push(lines.join("\n")),
                None => current = Some(Vec::new()),
            }
            continue;
        }
        if let Some(lines) = current.as_mut() {
            lines.push(line);
        }
    }
    if let Some(lines) = current {
        blocks.push(lines.join("\n"));
    }
    if blocks.is_empty() {
        blocks.push(reply.to_string());
    }
    blocks
}

/// Length in bytes of the longest common substring, via a suffix automaton
/// over `a` walked with `b`. Exact, O(|a| + |b|) states and steps.
pub fn longest_common_substring(a: &str, b: &str) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }

    struct State {
        len: usize,
        link: i32,
        next: BTreeMap<u8, u32>,
    }

    let bytes = a.as_bytes();
    let mut states: Vec<State> = Vec::with_capacity(2 * bytes.len());
    states.push(State { len: 0, link: -1, next: BTreeMap::new() });
    let mut last = 0u32;

    for &c in bytes {
        let cur = states.len() as u32;
        states.push(State { len: states[last as usize].len + 1, link: -1, next: BTreeMap::new() });
        let mut p = last as i32;
        while p >= 0 && !states[p as usize].next.contains_key(&c) {
            states[p as usize].next.insert(c, cur);
            p = states[p as usize].link;
        }
        if p < 0 {
            states[cur as usize].link = 0;
        } else {
            let q = states[p as usize].next[&c];
            if states[p as usize].len + 1 == states[q as usize].len {
                states[cur as usize].link = q as i32;
            } else {
                let clone = states.len() as u32;
                let cloned = State {
                    len: states[p as usize].len + 1,
                    link: states[q as usize].link,
                    next: states[q as usize].next.clone(),
                };
                states.push(cloned);
                let mut p2 = p;
                while p2 >= 0 && states[p2 as usize].next.get(&c) == Some(&q) {
                    states[p2 as usize].next.insert(c, clone);
                    p2 = states[p2 as usize].link;
                }
                states[q as usize].link = clone as i32;
                states[cur as usize].link = clone as i32;
            }
        }
        last = cur;
    }

    let mut v = 0u32;
    let mut length = 0usize;
    let mut best = 0usize;
    for &c in b.as_bytes() {
        loop {
            if let Some(&to) = states[v as usize].next.get(&c) {
                v = to;
                length += 1;
                break;
            }
            let link = states[v as usize].link;
            if link < 0 {
                length = 0;
                break;
            }
            v = link as u32;
            length = states[v as usize].len;
        }
        best = best.max(length);
    }
    best
}

fn walk_methods<'a>(class: &'a ClassDecl, f: &mut impl FnMut(&'a crate::model::MethodDecl)) {
    for m in &class.methods {
        f(m);
    }
    for nested in &class.nested {
        walk_methods(nested, f);
    }
}

const TEST_ANNOTATIONS: &[&str] = &["Test", "ParameterizedTest"];

fn count_in_block(block: &str) -> (Option<String>, usize, usize, usize) {
    let unit = parse_unit_lenient("reply.java", block).unit;
    let class_name = unit.types.first().map(|t| t.simple_name.clone());
    let type_count = {
        fn total(c: &ClassDecl) -> usize {
            1 + c.nested.iter().map(total).sum::<usize>()
        }
        unit.types.iter().map(total).sum::<usize>()
    };
    let mut tests = 0usize;
    let mut assertions = 0usize;
    for class in &unit.types {
        walk_methods(class, &mut |m| {
            if TEST_ANNOTATIONS.iter().any(|a| m.modifiers.has_annotation(a)) {
                tests += 1;
            }
            for site in &m.invocations {
                if site.callee_name.starts_with("assert") || site.callee_name == "verify" {
                    assertions += 1;
                }
            }
        });
    }
    (class_name, type_count, tests, assertions)
}

/// Assertion call sites in a block: callees starting with `assert` plus
/// Mockito's `verify`. An unparseable block counts zero.
pub fn count_assertions(block: &str) -> usize {
    count_in_block(block).3
}

pub fn harvest(reply: &str, prompt_text: &str, config: &HarvestConfig) -> HarvestOutcome {
    if reply.trim().is_empty() {
        return HarvestOutcome {
            classification: ReplyClass::NoTest,
            test_units: Vec::new(),
            test_method_count: 0,
            assertion_count: 0,
            evidence: "empty reply".to_string(),
        };
    }

    let lcs = longest_common_substring(prompt_text, reply);
    let percent = lcs.saturating_mul(100) / reply.len();
    if lcs as f64 >= config.regurgitation_threshold * reply.len() as f64 {
        return HarvestOutcome {
            classification: ReplyClass::Regurgitation,
            test_units: Vec::new(),
            test_method_count: 0,
            assertion_count: 0,
            evidence: format!(
                "longest common substring with the prompt covers {percent}% of the reply"
            ),
        };
    }

    let blocks = extract_code_blocks(reply);
    let block_count = blocks.len();
    let mut test_units = Vec::new();
    let mut test_method_count = 0usize;
    let mut assertion_count = 0usize;
    for block in blocks {
        let (class_name, type_count, tests, assertions) = count_in_block(&block);
        if type_count == 0 {
            continue;
        }
        test_method_count += tests;
        assertion_count += assertions;
        test_units.push(TestUnit {
            class_name,
            source: block,
            test_method_count: tests,
            assertion_count: assertions,
        });
    }

    if test_method_count > 0 {
        HarvestOutcome {
            classification: ReplyClass::TestsGenerated,
            test_units,
            test_method_count,
            assertion_count,
            evidence: format!(
                "found {test_method_count} test method(s) across {block_count} code block(s)"
            ),
        }
    } else {
        HarvestOutcome {
            classification: ReplyClass::NoTest,
            test_units,
            test_method_count: 0,
            assertion_count,
            evidence: "no annotated test methods found".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const REPLY: &str = "\
Here is a test:

```java
import org.junit.Test;
import static org.junit.Assert.*;

public class WidgetTest {

    @Test
    public void testGrow() {
        Widget w = new Widget();
        assertEquals(3, w.grow(3));
        assertTrue(w.grow(1) >= 3);
    }
}
```
";

    #[test]
    fn fenced_blocks_are_extracted_verbatim() {
        let blocks = extract_code_blocks(REPLY);
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].starts_with("import org.junit.Test;"));
        assert!(blocks[0].ends_with("}"));

        let blocks = extract_code_blocks("no fences at all");
        assert_eq!(blocks, ["no fences at all"]);

        let blocks = extract_code_blocks("```java\nclass A { }\n```\ntext\n```\nclass B { }\n```");
        assert_eq!(blocks, ["class A { }", "class B { }"]);

        // An unclosed fence runs to the end of the reply.
        let blocks = extract_code_blocks("```java\nclass C {");
        assert_eq!(blocks, ["class C {"]);
    }

    #[test]
    fn lcs_is_exact_on_small_cases() {
        assert_eq!(longest_common_substring("", "abc"), 0);
        assert_eq!(longest_common_substring("abc", ""), 0);
        assert_eq!(longest_common_substring("abc", "abc"), 3);
        assert_eq!(longest_common_substring("xabcy", "zabcw"), 3);
        assert_eq!(longest_common_substring("abab", "babab"), 4);
        assert_eq!(longest_common_substring("abcdef", "ghijkl"), 0);
        assert_eq!(longest_common_substring("banana", "ananas"), 5);
    }

    #[test]
    fn harvest_counts_tests_and_assertions() {
        let out = harvest(REPLY, "unrelated prompt", &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::TestsGenerated);
        assert_eq!(out.test_method_count, 1);
        assert_eq!(out.assertion_count, 2);
        assert_eq!(out.test_units.len(), 1);
        assert_eq!(out.test_units[0].class_name.as_deref(), Some("WidgetTest"));
    }

    #[test]
    fn echoed_prompts_classify_as_regurgitation_even_with_tests_inside() {
        let prompt = REPLY;
        let out = harvest(REPLY, prompt, &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::Regurgitation);
        assert!(out.test_units.is_empty());
        assert!(out.evidence.contains("100%"));

        // A mostly-copied reply with a short addition still trips the check.
        let mut reply = prompt.to_string();
        reply.push_str("\n// done");
        let out = harvest(&reply, prompt, &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::Regurgitation);
    }

    #[test]
    fn prose_and_empty_replies_are_no_test() {
        let out = harvest("I cannot help with that.", "prompt", &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::NoTest);
        assert_eq!(out.test_method_count, 0);

        let out = harvest("   \n", "prompt", &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::NoTest);
        assert_eq!(out.evidence, "empty reply");
    }

    #[test]
    fn unannotated_methods_do_not_count_as_tests() {
        let reply = "```java\nclass Helper { int twice(int x) { return assertish(x); } }\n```";
        let out = harvest(reply, "prompt", &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::NoTest);
        // `assertish` starts with `assert`, so it counts as an assertion
        // call even though no test annotation exists.
        assert_eq!(out.assertion_count, 1);
    }

    #[test]
    fn parameterized_and_argumented_annotations_count() {
        let reply = "\
```java
import org.junit.jupiter.params.ParameterizedTest;

class T {
    @ParameterizedTest
    void p(int v) { assertEquals(v, v); }

    @Test(timeout = 500)
    void q() { verify(mock).run(); }

    @Test
    void r() { helper(); }
}
```";
        let out = harvest(reply, "prompt", &HarvestConfig::default());
        assert_eq!(out.test_method_count, 3);
        assert_eq!(out.assertion_count, 2);
    }

    #[test]
    fn count_assertions_is_resilient_to_garbage() {
        assert_eq!(count_assertions("not java at all %%%"), 0);
        assert_eq!(
            count_assertions("class T { void f() { assertSame(a, b); check(); verify(m).x(); } }"),
            2
        );
    }

    #[test]
    fn truncated_reply_blocks_still_harvest() {
        let reply = "```java\nclass T {\n  @Test\n  public void f() {\n    assertTrue(g()";
        let out = harvest(reply, "prompt", &HarvestConfig::default());
        assert_eq!(out.classification, ReplyClass::TestsGenerated);
        assert_eq!(out.test_method_count, 1);
    }
}
