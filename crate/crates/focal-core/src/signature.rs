//! Method signatures in the rendered form the prompts embed, plus the
//! signature table that supplies declarations for classes outside the
//! parsed project (JDK and third-party types).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::model::TypeName;

/// A fully resolved method signature. The rendered form is
/// `<return> <declaring-class>.<name>(<param>, <param>)` with exactly one
/// space after the return type and `, ` between parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MethodSignature {
    pub return_type: TypeName,
    pub declaring_class: String,
    pub name: String,
    pub parameter_types: Vec<TypeName>,
}

impl MethodSignature {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.return_type.text);
        out.push(' ');
        out.push_str(&self.declaring_class);
        out.push('.');
        out.push_str(&self.name);
        out.push('(');
        for (i, p) in self.parameter_types.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&p.text);
        }
        out.push(')');
        out
    }

    pub fn parse(text: &str) -> Result<Self, SignatureParseError> {
        let text = text.trim();
        let err = |message: String| SignatureParseError { text: text.to_string(), message };
        if !text.ends_with(')') {
            return Err(err("missing closing `)`".to_string()));
        }
        let open = text
            .find('(')
            .ok_or_else(|| err("missing `(`".to_string()))?;
        let head = &text[..open];
        let params_text = &text[open + 1..text.len() - 1];

        let space = head
            .find(' ')
            .ok_or_else(|| err("missing space after return type".to_string()))?;
        let return_type = &head[..space];
        let qualified = head[space + 1..].trim();
        if return_type.is_empty() || qualified.is_empty() {
            return Err(err("empty return type or method path".to_string()));
        }
        let dot = qualified
            .rfind('.')
            .ok_or_else(|| err("method path has no declaring class".to_string()))?;
        let declaring_class = &qualified[..dot];
        let name = &qualified[dot + 1..];
        if declaring_class.is_empty() || name.is_empty() {
            return Err(err("empty declaring class or method name".to_string()));
        }
        if name.contains(' ') || declaring_class.contains(' ') {
            return Err(err("unexpected space in method path".to_string()));
        }

        let mut parameter_types = Vec::new();
        if !params_text.is_empty() {
            for p in params_text.split(", ") {
                if p.is_empty() || p.contains(' ') || p.contains(',') {
                    return Err(err(format!("malformed parameter list `{params_text}`")));
                }
                parameter_types.push(TypeName::new(p));
            }
        }

        Ok(MethodSignature {
            return_type: TypeName::new(return_type),
            declaring_class: declaring_class.to_string(),
            name: name.to_string(),
            parameter_types,
        })
    }

    pub fn arity(&self) -> usize {
        self.parameter_types.len()
    }
}

impl fmt::Display for MethodSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureParseError {
    pub text: String,
    pub message: String,
}

impl fmt::Display for SignatureParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid signature `{}`: {}", self.text, self.message)
    }
}

impl core::error::Error for SignatureParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for TableParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for TableParseError {}

/// Known signatures for classes the project does not declare, keyed by
/// declaring class, method name, and arity. One line per signature;
/// `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignatureTable {
    entries: BTreeMap<(String, String, usize), Vec<MethodSignature>>,
    simple_to_qualified: BTreeMap<String, BTreeSet<String>>,
    classes: BTreeSet<String>,
}

impl SignatureTable {
    pub fn parse(text: &str) -> Result<Self, TableParseError> {
        let mut table = SignatureTable::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let sig = MethodSignature::parse(line)
                .map_err(|e| TableParseError { line: idx + 1, message: e.to_string() })?;
            table.insert(sig);
        }
        Ok(table)
    }

    pub fn insert(&mut self, sig: MethodSignature) {
        let class = sig.declaring_class.clone();
        let simple = class.rsplit('.').next().unwrap_or(&class).to_string();
        self.simple_to_qualified.entry(simple).or_default().insert(class.clone());
        self.classes.insert(class.clone());
        let key = (class, sig.name.clone(), sig.arity());
        let slot = self.entries.entry(key).or_default();
        if !slot.contains(&sig) {
            slot.push(sig);
            slot.sort();
        }
    }

    pub fn lookup(&self, class: &str, name: &str, arity: usize) -> &[MethodSignature] {
        self.entries
            .get(&(class.to_string(), name.to_string(), arity))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn has_class(&self, qualified: &str) -> bool {
        self.classes.contains(qualified)
    }

    /// Qualified names of table classes with the given simple name, in
    /// lexicographic order.
    pub fn classes_for_simple(&self, simple: &str) -> Vec<&str> {
        self.simple_to_qualified
            .get(simple)
            .map(|s| s.iter().map(String::as_str).collect())
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
