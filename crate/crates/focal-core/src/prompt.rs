//! Prompt assembly for the two strategies under comparison.
//!
//! `Ours` wraps the extracted focal context in an instruction-tuned chat
//! envelope. `Baseline` frames test generation as code completion: the
//! whole focal file followed by the opening of a test file for the model
//! to continue. Both produce untruncated text; the gateway applies the
//! input budget.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::context::{find_focal, ContextError, FocalContext, FocalMethodRef};
use crate::model::TypeName;
use crate::resolver::ProjectIndex;
use crate::tokenizer::{self, SchemeError};

pub const OURS_SYSTEM_PROMPT: &str = "Generate Java unit test(s) for the given Java focal method. \
Mock method calls and fields using Mockito library. Use the JUnit framework and try to obtain \
high branch coverage.";

pub const BASELINE_SYSTEM_PROMPT: &str =
    "You are a coding assistant. You generate only source code.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Ours,
    Baseline,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Ours => "ours",
            Strategy::Baseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyParseError {
    pub text: String,
}

impl fmt::Display for StrategyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown strategy `{}` (known: ours, baseline)", self.text)
    }
}

impl core::error::Error for StrategyParseError {}

impl FromStr for Strategy {
    type Err = StrategyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ours" => Ok(Strategy::Ours),
            "baseline" => Ok(Strategy::Baseline),
            other => Err(StrategyParseError { text: other.to_string() }),
        }
    }
}

/// A finished prompt: full text, its token cost before any truncation, and
/// the method it targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptArtifact {
    pub strategy: Strategy,
    pub text: String,
    pub token_count: usize,
    pub focal: FocalMethodRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PromptError {
    Context(ContextError),
    Scheme(SchemeError),
}

impl fmt::Display for PromptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PromptError::Context(e) => e.fmt(f),
            PromptError::Scheme(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for PromptError {}

impl From<ContextError> for PromptError {
    fn from(e: ContextError) -> Self {
        PromptError::Context(e)
    }
}

impl From<SchemeError> for PromptError {
    fn from(e: SchemeError) -> Self {
        PromptError::Scheme(e)
    }
}

pub fn build_ours(
    ctx: &FocalContext,
    focal: &FocalMethodRef,
    scheme: &str,
) -> Result<PromptArtifact, PromptError> {
    let text = format!(
        "[INST]\n<<SYS>>\n{OURS_SYSTEM_PROMPT}\n<</SYS>>\n{}\n[/INST]",
        ctx.render()
    );
    let token_count = tokenizer::count_tokens(&text, scheme)?;
    Ok(PromptArtifact { strategy: Strategy::Ours, text, token_count, focal: focal.clone() })
}

pub fn build_baseline(
    index: &ProjectIndex<'_>,
    focal: &FocalMethodRef,
    scheme: &str,
) -> Result<PromptArtifact, PromptError> {
    let (unit, class, method) = find_focal(index, focal)?;

    let mut text = String::new();
    text.push_str("[INST]\n<<SYS>>\n");
    text.push_str(BASELINE_SYSTEM_PROMPT);
    text.push_str("\n<</SYS>>\n");
    text.push_str(&format!("// {}\n", file_name(&unit.path)));
    text.push_str(unit.raw_source.trim_end_matches('\n'));
    text.push('\n');
    text.push_str(&format!("\n// {}1Test.java\n", class.simple_name));
    if !unit.package_name.is_empty() {
        text.push_str(&format!("package {};\n\n", unit.package_name));
    }
    for import in &unit.imports {
        let stat = if import.is_static { "static " } else { "" };
        let star = if import.is_wildcard { ".*" } else { "" };
        text.push_str(&format!("import {stat}{}{star};\n", import.path));
    }
    text.push_str("import org.junit.jupiter.api.Test;\n");
    text.push_str("import static org.junit.jupiter.api.Assertions.*;\n");
    let params: Vec<String> = method
        .parameters
        .iter()
        .map(|p| TypeName::new(p.declared_type.text.clone()).simple().to_string())
        .collect();
    text.push_str(&format!(
        "\n/**\n * Test class of {{@link {cls}}}.\n * It contains unit test cases for the\n * \
         {{@link {cls}#{name}({params})}} method.\n */\n",
        cls = class.simple_name,
        name = method.name,
        params = params.join(", "),
    ));
    text.push_str(&format!("public class {}1Test {{\n[/INST]", class.simple_name));

    let token_count = tokenizer::count_tokens(&text, scheme)?;
    Ok(PromptArtifact { strategy: Strategy::Baseline, text, token_count, focal: focal.clone() })
}

fn file_name(path: &str) -> &str {
    path.rsplit(['/', '\\']).next().unwrap_or(path)
}
