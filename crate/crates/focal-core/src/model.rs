//! Source models produced by the parser: compilation units, type and member
//! declarations, and the per-method call / field-access sites the resolver
//! consumes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Primitive type names, `void` included. Array types are never primitive.
const PRIMITIVES: &[&str] = &[
    "void", "boolean", "byte", "short", "int", "long", "char", "float", "double",
];

/// A source type name after canonicalization: generic arguments erased,
/// varargs rewritten to arrays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeName {
    pub text: String,
    pub is_primitive: bool,
}

impl TypeName {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text.into();
        let is_primitive = PRIMITIVES.contains(&text.as_str());
        TypeName { text, is_primitive }
    }

    /// Simple name of the base type: strips any package qualifier but keeps
    /// array suffixes ("java.lang.String[]" -> "String[]").
    pub fn simple(&self) -> &str {
        match self.text.rfind('.') {
            Some(i) => &self.text[i + 1..],
            None => &self.text,
        }
    }
}

impl fmt::Display for TypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

/// Inclusive 1-based line range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSpan {
    pub start_line: u32,
    pub end_line: u32,
}

pub const MOD_PUBLIC: u32 = 1 << 0;
pub const MOD_PROTECTED: u32 = 1 << 1;
pub const MOD_PRIVATE: u32 = 1 << 2;
pub const MOD_STATIC: u32 = 1 << 3;
pub const MOD_FINAL: u32 = 1 << 4;
pub const MOD_ABSTRACT: u32 = 1 << 5;
pub const MOD_NATIVE: u32 = 1 << 6;
pub const MOD_SYNCHRONIZED: u32 = 1 << 7;
pub const MOD_TRANSIENT: u32 = 1 << 8;
pub const MOD_VOLATILE: u32 = 1 << 9;
pub const MOD_STRICTFP: u32 = 1 << 10;
pub const MOD_DEFAULT: u32 = 1 << 11;

/// Modifier keywords as a bit set plus annotation simple names in source
/// order (without the `@`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modifiers {
    pub flags: u32,
    pub annotations: Vec<String>,
}

impl Modifiers {
    pub fn is_static(&self) -> bool {
        self.flags & MOD_STATIC != 0
    }

    pub fn is_abstract(&self) -> bool {
        self.flags & MOD_ABSTRACT != 0
    }

    pub fn has_annotation(&self, name: &str) -> bool {
        self.annotations.iter().any(|a| a == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDecl {
    pub name: String,
    pub declared_type: TypeName,
    pub modifiers: Modifiers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub declared_type: TypeName,
}

/// A method invocation found in a body. `receiver_expr` is the source text
/// left of the final `.`, `None` for unqualified calls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallSite {
    pub callee_name: String,
    pub receiver_expr: Option<String>,
    pub argument_count: usize,
    pub pos: Pos,
}

/// A name read in expression position that may denote a field: bare
/// identifiers and `recv.name` chains that are not immediately invoked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldAccessSite {
    pub field_name: String,
    pub receiver_expr: Option<String>,
    pub pos: Pos,
}

/// A local variable declaration, recorded so receiver types and shadowing
/// can be decided during resolution. Order follows the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDecl {
    pub name: String,
    pub declared_type: TypeName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDecl {
    pub name: String,
    pub return_type: TypeName,
    pub parameters: Vec<Param>,
    pub modifiers: Modifiers,
    pub is_constructor: bool,
    /// Body text including the surrounding braces; `None` for abstract or
    /// interface methods without bodies.
    pub body_source: Option<String>,
    pub invocations: Vec<CallSite>,
    pub field_accesses: Vec<FieldAccessSite>,
    pub locals: Vec<LocalDecl>,
    /// First line of the declaration proper (after any annotation lines)
    /// through the line of the closing brace or semicolon.
    pub source_span: LineSpan,
    /// Set when statement-level recovery skipped tokens inside this body.
    pub has_recovered_errors: bool,
}

impl MethodDecl {
    pub fn arity(&self) -> usize {
        self.parameters.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDecl {
    pub simple_name: String,
    /// Package-qualified, nested types joined with `.` (e.g. `p.Outer.Inner`).
    pub qualified_name: String,
    pub kind: TypeKind,
    pub modifiers: Modifiers,
    /// Raw `extends` then `implements` names as written, generics erased.
    pub super_types: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub nested: Vec<ClassDecl>,
}

impl ClassDecl {
    pub fn find_methods(&self, name: &str, arity: usize) -> Vec<&MethodDecl> {
        self.methods
            .iter()
            .filter(|m| !m.is_constructor && m.name == name && m.arity() == arity)
            .collect()
    }

    pub fn find_field(&self, name: &str) -> Option<&FieldDecl> {
        self.fields.iter().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportDecl {
    /// Dotted path without the trailing `.*`.
    pub path: String,
    pub is_static: bool,
    pub is_wildcard: bool,
}

impl ImportDecl {
    /// Last path segment; the member name for explicit static imports, the
    /// class simple name for explicit type imports.
    pub fn last_segment(&self) -> &str {
        self.path.rsplit('.').next().unwrap_or(&self.path)
    }

    /// Path with the last segment removed.
    pub fn parent_path(&self) -> &str {
        match self.path.rfind('.') {
            Some(i) => &self.path[..i],
            None => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanError {
    /// Zero or reversed bounds.
    Degenerate { start_line: u32, end_line: u32 },
    /// End line past the last line of the unit.
    OutOfBounds { end_line: u32, line_count: u32 },
}

impl fmt::Display for SpanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpanError::Degenerate { start_line, end_line } => {
                write!(f, "degenerate line span {start_line}..{end_line}")
            }
            SpanError::OutOfBounds { end_line, line_count } => {
                write!(f, "line span ends at {end_line} but unit has {line_count} lines")
            }
        }
    }
}

impl core::error::Error for SpanError {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompilationUnit {
    /// Path as given to the parser, used verbatim as the unit key.
    pub path: String,
    /// Empty string for the default package.
    pub package_name: String,
    pub imports: Vec<ImportDecl>,
    pub types: Vec<ClassDecl>,
    pub raw_source: String,
}

impl CompilationUnit {
    /// Exact source slice covering the span's lines. Interior newlines are
    /// kept; the final line's trailing newline is not part of the slice.
    pub fn span_text(&self, span: LineSpan) -> Result<&str, SpanError> {
        if span.start_line == 0 || span.end_line < span.start_line {
            return Err(SpanError::Degenerate {
                start_line: span.start_line,
                end_line: span.end_line,
            });
        }
        // Byte offsets of each line start; a trailing newline opens no line.
        let mut starts: Vec<usize> = Vec::new();
        let bytes = self.raw_source.as_bytes();
        if !bytes.is_empty() {
            starts.push(0);
            for (i, &b) in bytes.iter().enumerate() {
                if b == b'\n' && i + 1 < bytes.len() {
                    starts.push(i + 1);
                }
            }
        }
        let line_count = starts.len() as u32;
        if span.end_line > line_count {
            return Err(SpanError::OutOfBounds {
                end_line: span.end_line,
                line_count,
            });
        }
        let start = starts[(span.start_line - 1) as usize];
        let end = if (span.end_line as usize) < starts.len() {
            let next = starts[span.end_line as usize];
            // Drop the newline (and any \r before it) closing the last line.
            let mut e = next - 1;
            if e > start && bytes[e - 1] == b'\r' {
                e -= 1;
            }
            e
        } else {
            let mut e = bytes.len();
            if e > start && bytes[e - 1] == b'\n' {
                e -= 1;
                if e > start && bytes[e - 1] == b'\r' {
                    e -= 1;
                }
            }
            e
        };
        Ok(&self.raw_source[start..end])
    }

    /// Depth-first search over top-level and nested types.
    pub fn find_class(&self, qualified_name: &str) -> Option<&ClassDecl> {
        fn walk<'a>(c: &'a ClassDecl, want: &str) -> Option<&'a ClassDecl> {
            if c.qualified_name == want {
                return Some(c);
            }
            c.nested.iter().find_map(|n| walk(n, want))
        }
        self.types.iter().find_map(|t| walk(t, qualified_name))
    }
}
