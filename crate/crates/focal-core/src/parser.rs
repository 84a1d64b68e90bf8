//! Recursive-descent parser for the Java subset the toolkit analyzes:
//! package and import declarations, class/interface/enum declarations with
//! nesting, fields, methods, constructors, and full statement/expression
//! traversal of method bodies to collect call sites, name uses, and local
//! variable declarations.
//!
//! Bodies are walked for site events rather than lowered to expression
//! trees; the model keeps exactly what resolution needs. Outside the
//! subset (records, enum constant bodies, local classes, method
//! references) the parser skips structurally and keeps going.
//!
//! Error handling has three tiers:
//! - fatal (`Err`): lexer failures, a parameter list hitting `}` or end of
//!   file, and top-level brace imbalance such as a truncated file;
//! - declaration recovery: a malformed member is dropped with a diagnostic
//!   and parsing resumes at the next member;
//! - statement recovery: the offending statement is skipped, the method is
//!   flagged `has_recovered_errors`, and the rest of the body is kept.
//!
//! `parse_unit_lenient` never fails: fatal conditions downgrade to
//! diagnostics and a best-effort model, which is what reply harvesting
//! wants for model output that may be cut off mid-file.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lexer::{self, Token, TokenKind};
use crate::model::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub pos: Pos,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.column, self.message)
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOutcome {
    pub unit: CompilationUnit,
    pub diagnostics: Vec<ParseDiagnostic>,
}

/// Strict parse: total over well-formed units, fatal on lexer errors,
/// unclosed parameter lists, and top-level brace imbalance.
pub fn parse_unit(path: &str, source: &str) -> Result<ParseOutcome, ParseError> {
    parse_impl(path, source, true)
}

/// Total parse for untrusted text: every fatal condition of [`parse_unit`]
/// becomes a diagnostic plus a best-effort partial model.
pub fn parse_unit_lenient(path: &str, source: &str) -> ParseOutcome {
    match parse_impl(path, source, false) {
        Ok(out) => out,
        // parse_impl never errors when strict is false.
        Err(e) => ParseOutcome {
            unit: CompilationUnit {
                path: path.to_string(),
                package_name: String::new(),
                imports: Vec::new(),
                types: Vec::new(),
                raw_source: source.to_string(),
            },
            diagnostics: alloc::vec![ParseDiagnostic { pos: e.pos, message: e.message }],
        },
    }
}

fn parse_impl(path: &str, source: &str, strict: bool) -> Result<ParseOutcome, ParseError> {
    let (tokens, mut diags) = match lexer::lex(source) {
        Ok(t) => (t, Vec::new()),
        Err(e) => {
            if strict {
                return Err(ParseError { pos: e.pos, message: e.message });
            }
            // Lex what precedes the offending character and note the cut.
            let cut = lex_prefix_len(source, e.pos);
            let tokens = lexer::lex(&source[..cut]).unwrap_or_default();
            let diag = ParseDiagnostic { pos: e.pos, message: e.message };
            (tokens, alloc::vec![diag])
        }
    };

    let mut p = Parser { src: source, toks: tokens, i: 0, strict, diags: Vec::new() };
    let unit = p.parse_unit_body(path)?;
    diags.append(&mut p.diags);
    Ok(ParseOutcome { unit, diagnostics: diags })
}

/// Byte length of the source prefix before the given 1-based position.
fn lex_prefix_len(source: &str, pos: Pos) -> usize {
    let mut line = 1u32;
    let mut col = 1u32;
    for (i, c) in source.char_indices() {
        if line == pos.line && col == pos.column {
            return i;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    source.len()
}

/// Abort levels used inside the parser. `Stmt` unwinds one statement,
/// `Member` one member declaration, `Fatal` the whole parse.
enum Abort {
    Stmt,
    Member,
    Fatal(ParseError),
}

#[derive(Default)]
struct BodyCollector {
    invocations: Vec<CallSite>,
    field_accesses: Vec<FieldAccessSite>,
    locals: Vec<LocalDecl>,
    recovered: bool,
}

struct CloseInfo {
    end_line: u32,
    end_byte: usize,
}

const MODIFIER_FLAGS: &[(&str, u32)] = &[
    ("public", MOD_PUBLIC),
    ("protected", MOD_PROTECTED),
    ("private", MOD_PRIVATE),
    ("static", MOD_STATIC),
    ("final", MOD_FINAL),
    ("abstract", MOD_ABSTRACT),
    ("native", MOD_NATIVE),
    ("synchronized", MOD_SYNCHRONIZED),
    ("transient", MOD_TRANSIENT),
    ("volatile", MOD_VOLATILE),
    ("strictfp", MOD_STRICTFP),
    ("default", MOD_DEFAULT),
];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token<'a>>,
    i: usize,
    strict: bool,
    diags: Vec<ParseDiagnostic>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.i)
    }

    fn peek_at(&self, off: usize) -> Option<&Token<'a>> {
        self.toks.get(self.i + off)
    }

    fn bump(&mut self) -> Option<Token<'a>> {
        let t = self.toks.get(self.i).copied();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.at(text) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn pos(&self) -> Pos {
        self.peek()
            .map(|t| t.pos)
            .or_else(|| self.toks.last().map(|t| t.pos))
            .unwrap_or(Pos { line: 1, column: 1 })
    }

    fn diag(&mut self, pos: Pos, message: impl Into<String>) {
        self.diags.push(ParseDiagnostic { pos, message: message.into() });
    }

    /// Fatal in strict mode; in lenient mode records a diagnostic and
    /// reports a member-level abort so callers recover locally.
    fn fatal(&mut self, pos: Pos, message: &str) -> Abort {
        if self.strict {
            Abort::Fatal(ParseError { pos, message: message.to_string() })
        } else {
            self.diag(pos, message);
            Abort::Member
        }
    }

    fn stmt_err(&mut self, pos: Pos, message: impl Into<String>) -> Abort {
        self.diag(pos, message);
        Abort::Stmt
    }

    fn member_err(&mut self, pos: Pos, message: impl Into<String>) -> Abort {
        self.diag(pos, message);
        Abort::Member
    }

    fn expect_op(&mut self, text: &str) -> Result<Token<'a>, Abort> {
        match self.peek() {
            Some(t) if t.is(text) => Ok(self.bump().unwrap()),
            Some(t) => {
                let (pos, found) = (t.pos, t.text.to_string());
                Err(self.stmt_err(pos, format!("expected `{text}`, found `{found}`")))
            }
            None => {
                let pos = self.pos();
                Err(self.stmt_err(pos, format!("expected `{text}`, found end of file")))
            }
        }
    }

    fn expect_ident(&mut self) -> Result<Token<'a>, Abort> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident && !lexer::is_keyword(t.text) => {
                Ok(self.bump().unwrap())
            }
            Some(t) => {
                let (pos, found) = (t.pos, t.text.to_string());
                Err(self.stmt_err(pos, format!("expected identifier, found `{found}`")))
            }
            None => {
                let pos = self.pos();
                Err(self.stmt_err(pos, "expected identifier, found end of file"))
            }
        }
    }

    // ---- unit level ----

    fn parse_unit_body(&mut self, path: &str) -> Result<CompilationUnit, ParseError> {
        let mut unit = CompilationUnit {
            path: path.to_string(),
            package_name: String::new(),
            imports: Vec::new(),
            types: Vec::new(),
            raw_source: self.src.to_string(),
        };

        if self.peek().is_some_and(|t| t.is_ident("package")) {
            self.bump();
            match self.parse_dotted_name() {
                Ok(name) => {
                    unit.package_name = name;
                    if !self.eat(";") {
                        let pos = self.pos();
                        self.diag(pos, "missing `;` after package declaration");
                    }
                }
                Err(a) => self.escalate_top(a, &mut unit)?,
            }
        }

        while self.peek().is_some_and(|t| t.is_ident("import")) {
            self.bump();
            let is_static = self.peek().is_some_and(|t| t.is_ident("static"));
            if is_static {
                self.bump();
            }
            match self.parse_import_path() {
                Ok((import_path, is_wildcard)) => {
                    if !self.eat(";") {
                        let pos = self.pos();
                        self.diag(pos, "missing `;` after import declaration");
                    }
                    unit.imports.push(ImportDecl { path: import_path, is_static, is_wildcard });
                }
                Err(a) => {
                    self.escalate_top(a, &mut unit)?;
                    self.skip_past(";");
                }
            }
        }

        loop {
            match self.peek() {
                None => break,
                Some(t) if t.is(";") => {
                    self.bump();
                }
                Some(t) if t.is("}") => {
                    let pos = t.pos;
                    if self.strict {
                        return Err(ParseError {
                            pos,
                            message: "unbalanced `}` at top level".to_string(),
                        });
                    }
                    self.diag(pos, "unbalanced `}` at top level");
                    self.bump();
                }
                Some(_) => {
                    let qualifier = unit.package_name.clone();
                    match self.parse_type_decl(&qualifier) {
                        Ok(decl) => unit.types.push(decl),
                        Err(Abort::Fatal(e)) => return Err(e),
                        Err(_) => {
                            // Resume at the next plausible declaration start.
                            self.skip_to_type_start();
                        }
                    }
                }
            }
        }

        Ok(unit)
    }

    /// Converts member-level aborts at unit level: fatal errors propagate,
    /// anything else is already recorded as a diagnostic.
    fn escalate_top(&mut self, abort: Abort, _unit: &mut CompilationUnit) -> Result<(), ParseError> {
        match abort {
            Abort::Fatal(e) => Err(e),
            _ => Ok(()),
        }
    }

    fn parse_dotted_name(&mut self) -> Result<String, Abort> {
        let first = self.expect_ident()?;
        let mut name = first.text.to_string();
        while self.at(".") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Ident) {
            self.bump();
            let seg = self.bump().unwrap();
            name.push('.');
            name.push_str(seg.text);
        }
        Ok(name)
    }

    fn parse_import_path(&mut self) -> Result<(String, bool), Abort> {
        let first = self.expect_ident()?;
        let mut name = first.text.to_string();
        let mut wildcard = false;
        while self.at(".") {
            self.bump();
            if self.at("*") {
                self.bump();
                wildcard = true;
                break;
            }
            let seg = self.expect_ident()?;
            name.push('.');
            name.push_str(seg.text);
        }
        Ok((name, wildcard))
    }

    // ---- declarations ----

    /// Modifier keywords and annotations in any order. Returns the line of
    /// the first modifier keyword, which anchors method spans when no
    /// annotation shares that line.
    fn parse_modifiers(&mut self) -> Result<(Modifiers, Option<u32>), Abort> {
        let mut mods = Modifiers::default();
        let mut first_line = None;
        loop {
            let Some(t) = self.peek() else { break };
            if t.is("@") {
                // `@interface` introduces an annotation type, not a marker.
                if self.peek_at(1).is_some_and(|n| n.is_ident("interface")) {
                    break;
                }
                self.bump();
                let name = self.parse_dotted_name()?;
                let simple = name.rsplit('.').next().unwrap_or(&name).to_string();
                mods.annotations.push(simple);
                if self.at("(") {
                    self.skip_balanced("(", ")")?;
                }
                continue;
            }
            if t.kind == TokenKind::Ident {
                if let Some((_, flag)) = MODIFIER_FLAGS.iter().find(|(kw, _)| t.is_ident(kw)) {
                    // `default` only acts as a modifier before a member, not
                    // as a switch label.
                    if t.is_ident("default") && self.peek_at(1).is_some_and(|n| n.is(":")) {
                        break;
                    }
                    if first_line.is_none() {
                        first_line = Some(t.pos.line);
                    }
                    mods.flags |= flag;
                    self.bump();
                    continue;
                }
            }
            break;
        }
        Ok((mods, first_line))
    }

    fn parse_type_decl(&mut self, qualifier: &str) -> Result<ClassDecl, Abort> {
        let (mods, _) = self.parse_modifiers()?;
        // Annotation type declarations parse as interfaces.
        if self.at("@") && self.peek_at(1).is_some_and(|t| t.is_ident("interface")) {
            self.bump();
        }
        let kind = match self.peek() {
            Some(t) if t.is_ident("class") => TypeKind::Class,
            Some(t) if t.is_ident("interface") => TypeKind::Interface,
            Some(t) if t.is_ident("enum") => TypeKind::Enum,
            Some(t) => {
                let (pos, found) = (t.pos, t.text.to_string());
                return Err(self.member_err(pos, format!("expected type declaration, found `{found}`")));
            }
            None => {
                let pos = self.pos();
                return Err(self.member_err(pos, "expected type declaration, found end of file"));
            }
        };
        self.bump();
        let name_tok = self.expect_ident().map_err(|_| Abort::Member)?;
        let simple_name = name_tok.text.to_string();
        if self.at("<") {
            self.skip_generic_args().map_err(|_| Abort::Member)?;
        }
        let mut super_types = Vec::new();
        if self.peek().is_some_and(|t| t.is_ident("extends")) {
            self.bump();
            self.parse_super_list(&mut super_types)?;
        }
        if self.peek().is_some_and(|t| t.is_ident("implements")) {
            self.bump();
            self.parse_super_list(&mut super_types)?;
        }
        self.expect_op("{").map_err(|_| Abort::Member)?;

        let qualified_name = if qualifier.is_empty() {
            simple_name.clone()
        } else {
            format!("{qualifier}.{simple_name}")
        };
        let mut decl = ClassDecl {
            simple_name,
            qualified_name,
            kind,
            modifiers: mods,
            super_types,
            fields: Vec::new(),
            methods: Vec::new(),
            nested: Vec::new(),
        };

        if kind == TypeKind::Enum {
            self.parse_enum_constants()?;
        }

        loop {
            match self.peek() {
                None => {
                    let pos = self.pos();
                    match self.fatal(pos, "unexpected end of file inside type body") {
                        Abort::Fatal(e) => return Err(Abort::Fatal(e)),
                        // Keep the partial class in lenient mode.
                        _ => break,
                    }
                }
                Some(t) if t.is("}") => {
                    self.bump();
                    break;
                }
                Some(t) if t.is(";") => {
                    self.bump();
                }
                Some(_) => match self.parse_member(&mut decl) {
                    Ok(()) => {}
                    Err(Abort::Fatal(e)) => return Err(Abort::Fatal(e)),
                    Err(_) => self.skip_member_recovery(),
                },
            }
        }
        Ok(decl)
    }

    fn parse_super_list(&mut self, out: &mut Vec<String>) -> Result<(), Abort> {
        loop {
            let name = self.parse_dotted_name().map_err(|_| Abort::Member)?;
            if self.at("<") {
                self.skip_generic_args().map_err(|_| Abort::Member)?;
            }
            out.push(name);
            if !self.eat(",") {
                break;
            }
        }
        Ok(())
    }

    /// Enum constants up to the `;` separating them from members, or the
    /// closing `}` when the body has constants only. Constants are not
    /// modeled; argument lists and constant bodies are skipped.
    fn parse_enum_constants(&mut self) -> Result<(), Abort> {
        loop {
            match self.peek() {
                None => return Ok(()),
                Some(t) if t.is(";") => {
                    self.bump();
                    return Ok(());
                }
                Some(t) if t.is("}") => return Ok(()),
                _ => {}
            }
            while self.at("@") {
                self.bump();
                self.parse_dotted_name()?;
                if self.at("(") {
                    self.skip_balanced("(", ")")?;
                }
            }
            self.expect_ident().map_err(|_| Abort::Member)?;
            if self.at("(") {
                self.skip_balanced("(", ")")?;
            }
            if self.at("{") {
                self.skip_balanced("{", "}")?;
            }
            if !self.eat(",") && !self.at(";") && !self.at("}") {
                let pos = self.pos();
                return Err(self.member_err(pos, "malformed enum constant list"));
            }
        }
    }

    fn parse_member(&mut self, class: &mut ClassDecl) -> Result<(), Abort> {
        let (mods, first_mod_line) = self.parse_modifiers()?;

        let Some(t) = self.peek().copied() else {
            let pos = self.pos();
            return Err(self.fatal(pos, "unexpected end of file inside type body"));
        };

        // Nested type.
        if t.is_ident("class")
            || t.is_ident("interface")
            || t.is_ident("enum")
            || (t.is("@") && self.peek_at(1).is_some_and(|n| n.is_ident("interface")))
        {
            // Reuse the already-parsed modifiers by backing up is not
            // possible; parse the type with its own modifier set merged in.
            let mut nested = self.parse_type_decl_after_mods(mods, &class.qualified_name)?;
            nested.qualified_name = format!("{}.{}", class.qualified_name, nested.simple_name);
            class.nested.push(nested);
            return Ok(());
        }

        // Initializer block: sites belong to no method, so the body is
        // walked only for balance.
        if t.is("{") {
            let mut col = BodyCollector::default();
            self.parse_block(&mut col)?;
            return Ok(());
        }

        // Generic method type parameters.
        if t.is("<") {
            self.skip_generic_args()?;
        }

        let decl_line = first_mod_line.unwrap_or_else(|| self.pos().line);

        // Constructor: class simple name immediately followed by `(`.
        if t.is_ident(&class.simple_name) && self.peek_at(1).is_some_and(|n| n.is("(")) {
            let name_tok = self.bump().unwrap();
            let method = self.parse_method_rest(
                mods,
                decl_line.min(name_tok.pos.line),
                TypeName::new(class.simple_name.clone()),
                name_tok.text.to_string(),
                true,
            )?;
            class.methods.push(method);
            return Ok(());
        }

        let declared_type = self.parse_type_ref().map_err(|a| match a {
            Abort::Stmt => Abort::Member,
            other => other,
        })?;
        let name_tok = self.expect_ident().map_err(|a| match a {
            Abort::Stmt => Abort::Member,
            other => other,
        })?;

        if self.at("(") {
            let method = self.parse_method_rest(
                mods,
                decl_line,
                TypeName::new(declared_type),
                name_tok.text.to_string(),
                false,
            )?;
            class.methods.push(method);
            return Ok(());
        }

        self.parse_field_rest(class, mods, declared_type, name_tok.text.to_string())
    }

    /// Like [`parse_type_decl`] but with modifiers already consumed.
    fn parse_type_decl_after_mods(
        &mut self,
        mods: Modifiers,
        qualifier: &str,
    ) -> Result<ClassDecl, Abort> {
        // parse_type_decl re-parses an empty modifier list, then the merged
        // modifiers replace it.
        let mut decl = self.parse_type_decl(qualifier)?;
        decl.modifiers = mods;
        Ok(decl)
    }

    fn parse_field_rest(
        &mut self,
        class: &mut ClassDecl,
        mods: Modifiers,
        base_type: String,
        first_name: String,
    ) -> Result<(), Abort> {
        let mut name = first_name;
        loop {
            let mut ty = base_type.clone();
            while self.at("[") {
                self.bump();
                self.expect_op("]").map_err(|_| Abort::Member)?;
                ty.push_str("[]");
            }
            class.fields.push(FieldDecl {
                name,
                declared_type: TypeName::new(ty),
                modifiers: mods.clone(),
            });
            if self.eat("=") {
                // Field initializers are skipped structurally; their call
                // sites belong to no method.
                self.skip_initializer().map_err(|a| match a {
                    Abort::Stmt => Abort::Member,
                    other => other,
                })?;
            }
            if self.eat(",") {
                let tok = self.expect_ident().map_err(|_| Abort::Member)?;
                name = tok.text.to_string();
                continue;
            }
            if !self.eat(";") {
                let pos = self.pos();
                return Err(self.member_err(pos, "missing `;` after field declaration"));
            }
            return Ok(());
        }
    }

    /// Balanced skip of one initializer expression: stops before `,` or `;`
    /// at depth zero.
    fn skip_initializer(&mut self) -> Result<(), Abort> {
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let mut brace = 0i32;
        loop {
            let Some(t) = self.peek() else {
                let pos = self.pos();
                return Err(self.stmt_err(pos, "unexpected end of file in initializer"));
            };
            if paren == 0 && bracket == 0 && brace == 0 && (t.is(",") || t.is(";")) {
                return Ok(());
            }
            match t.text {
                "(" => paren += 1,
                ")" => {
                    if paren == 0 {
                        let pos = t.pos;
                        return Err(self.stmt_err(pos, "unbalanced `)` in initializer"));
                    }
                    paren -= 1;
                }
                "[" => bracket += 1,
                "]" => bracket -= 1,
                "{" => brace += 1,
                "}" => {
                    if brace == 0 {
                        let pos = t.pos;
                        return Err(self.stmt_err(pos, "unbalanced `}` in initializer"));
                    }
                    brace -= 1;
                }
                _ => {}
            }
            self.bump();
        }
    }

    fn parse_method_rest(
        &mut self,
        mods: Modifiers,
        decl_line: u32,
        return_type: TypeName,
        name: String,
        is_constructor: bool,
    ) -> Result<MethodDecl, Abort> {
        let parameters = self.parse_params()?;
        if self.peek().is_some_and(|t| t.is_ident("throws")) {
            self.bump();
            loop {
                self.parse_dotted_name().map_err(|_| Abort::Member)?;
                if !self.eat(",") {
                    break;
                }
            }
        }

        let mut col = BodyCollector::default();
        let (body_source, end_line) = if self.at("{") {
            let open = *self.peek().unwrap();
            let close = self.parse_block(&mut col)?;
            (Some(self.src[open.byte_start..close.end_byte].to_string()), close.end_line)
        } else if self.at(";") {
            let t = self.bump().unwrap();
            (None, t.pos.line)
        } else {
            let pos = self.pos();
            return Err(self.member_err(pos, "expected method body or `;`"));
        };

        Ok(MethodDecl {
            name,
            return_type,
            parameters,
            modifiers: mods,
            is_constructor,
            body_source,
            invocations: col.invocations,
            field_accesses: col.field_accesses,
            locals: col.locals,
            source_span: LineSpan { start_line: decl_line, end_line },
            has_recovered_errors: col.recovered,
        })
    }

    fn parse_params(&mut self) -> Result<Vec<Param>, Abort> {
        self.expect_op("(").map_err(|_| Abort::Member)?;
        let mut params = Vec::new();
        if self.eat(")") {
            return Ok(params);
        }
        loop {
            match self.peek() {
                // An unclosed parameter list means the declaration cannot be
                // trusted at all; strict mode treats it as fatal.
                Some(t) if t.is("}") => {
                    let pos = t.pos;
                    return Err(self.fatal(pos, "parameter list is not closed"));
                }
                None => {
                    let pos = self.pos();
                    return Err(self.fatal(pos, "parameter list is not closed"));
                }
                _ => {}
            }
            let _ = self.parse_modifiers()?;
            let mut ty = self.parse_type_ref().map_err(|a| match a {
                Abort::Stmt => Abort::Member,
                other => other,
            })?;
            if self.eat("...") {
                ty.push_str("[]");
            }
            let name_tok = self.expect_ident().map_err(|a| match a {
                Abort::Stmt => Abort::Member,
                other => other,
            })?;
            while self.at("[") {
                self.bump();
                self.expect_op("]").map_err(|_| Abort::Member)?;
                ty.push_str("[]");
            }
            params.push(Param {
                name: name_tok.text.to_string(),
                declared_type: TypeName::new(ty),
            });
            if self.eat(",") {
                continue;
            }
            if self.eat(")") {
                return Ok(params);
            }
            match self.peek() {
                Some(t) if t.is("}") => {
                    let pos = t.pos;
                    return Err(self.fatal(pos, "parameter list is not closed"));
                }
                Some(t) => {
                    let (pos, found) = (t.pos, t.text.to_string());
                    return Err(self.member_err(pos, format!("unexpected `{found}` in parameter list")));
                }
                None => {
                    let pos = self.pos();
                    return Err(self.fatal(pos, "parameter list is not closed"));
                }
            }
        }
    }

    // ---- types ----

    /// One type reference with generics erased and arrays kept:
    /// `List<Map<K, V>>[]` parses to `List[]`. Primitive keywords, dotted
    /// names, and `var` inference all land here.
    fn parse_type_ref(&mut self) -> Result<String, Abort> {
        let Some(t) = self.peek().copied() else {
            let pos = self.pos();
            return Err(self.stmt_err(pos, "expected type, found end of file"));
        };
        let mut text = if t.kind == TokenKind::Ident && is_primitive_name(t.text) {
            self.bump();
            t.text.to_string()
        } else if t.kind == TokenKind::Ident && !lexer::is_keyword(t.text) {
            self.parse_dotted_name_with_generics()?
        } else {
            let (pos, found) = (t.pos, t.text.to_string());
            return Err(self.stmt_err(pos, format!("expected type, found `{found}`")));
        };
        while self.at("[") && self.peek_at(1).is_some_and(|n| n.is("]")) {
            self.bump();
            self.bump();
            text.push_str("[]");
        }
        Ok(text)
    }

    /// Dotted name where each segment may carry generic arguments that are
    /// erased from the result.
    fn parse_dotted_name_with_generics(&mut self) -> Result<String, Abort> {
        let first = self.expect_ident()?;
        let mut name = first.text.to_string();
        if self.at("<") {
            self.skip_generic_args()?;
        }
        while self.at(".") && self.peek_at(1).is_some_and(|t| {
            t.kind == TokenKind::Ident && !lexer::is_keyword(t.text)
        }) {
            self.bump();
            let seg = self.bump().unwrap();
            name.push('.');
            name.push_str(seg.text);
            if self.at("<") {
                self.skip_generic_args()?;
            }
        }
        Ok(name)
    }

    /// Skips `<...>` balancing nested angles. Only tokens that can occur in
    /// type arguments are accepted, so speculative type parses fail fast on
    /// comparison expressions like `a < b && c > d`.
    fn skip_generic_args(&mut self) -> Result<(), Abort> {
        let open = self.expect_op("<")?;
        let mut depth: i32 = 1;
        while depth > 0 {
            let Some(t) = self.peek() else {
                return Err(self.stmt_err(open.pos, "unterminated type arguments"));
            };
            match t.text {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "," | "." | "?" | "&" | "[" | "]" | "extends" | "super" => {}
                _ if t.kind == TokenKind::Ident && !lexer::is_keyword(t.text) => {}
                _ => {
                    let (pos, found) = (t.pos, t.text.to_string());
                    return Err(self.stmt_err(pos, format!("unexpected `{found}` in type arguments")));
                }
            }
            self.bump();
            if depth < 0 {
                return Err(self.stmt_err(open.pos, "unbalanced type arguments"));
            }
        }
        Ok(())
    }

    // ---- statements ----

    fn parse_block(&mut self, col: &mut BodyCollector) -> Result<CloseInfo, Abort> {
        self.expect_op("{")?;
        loop {
            match self.peek() {
                None => {
                    let pos = self.pos();
                    let last = self.toks.last().map(|t| (t.pos.line, t.byte_end)).unwrap_or((1, 0));
                    match self.fatal(pos, "unexpected end of file in method body") {
                        Abort::Fatal(e) => return Err(Abort::Fatal(e)),
                        _ => {
                            col.recovered = true;
                            return Ok(CloseInfo { end_line: last.0, end_byte: last.1 });
                        }
                    }
                }
                Some(t) if t.is("}") => {
                    let t = self.bump().unwrap();
                    return Ok(CloseInfo { end_line: t.pos.line, end_byte: t.byte_end });
                }
                Some(_) => match self.parse_statement(col) {
                    Ok(()) => {}
                    Err(Abort::Fatal(e)) => return Err(Abort::Fatal(e)),
                    Err(_) => {
                        col.recovered = true;
                        self.skip_to_stmt_boundary();
                    }
                },
            }
        }
    }

    fn parse_statement(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        let Some(t) = self.peek().copied() else {
            let pos = self.pos();
            return Err(self.stmt_err(pos, "expected statement, found end of file"));
        };

        match t.text {
            "{" => {
                self.parse_block(col)?;
                return Ok(());
            }
            ";" => {
                self.bump();
                return Ok(());
            }
            "if" => {
                self.bump();
                self.parse_paren_expr(col)?;
                self.parse_statement(col)?;
                if self.peek().is_some_and(|t| t.is_ident("else")) {
                    self.bump();
                    self.parse_statement(col)?;
                }
                return Ok(());
            }
            "while" => {
                self.bump();
                self.parse_paren_expr(col)?;
                self.parse_statement(col)?;
                return Ok(());
            }
            "do" => {
                self.bump();
                self.parse_statement(col)?;
                if !self.peek().is_some_and(|t| t.is_ident("while")) {
                    let pos = self.pos();
                    return Err(self.stmt_err(pos, "expected `while` after do body"));
                }
                self.bump();
                self.parse_paren_expr(col)?;
                self.expect_op(";")?;
                return Ok(());
            }
            "for" => {
                self.bump();
                self.parse_for_control(col)?;
                self.parse_statement(col)?;
                return Ok(());
            }
            "switch" => {
                self.bump();
                self.parse_paren_expr(col)?;
                self.parse_switch_body(col)?;
                return Ok(());
            }
            "try" => {
                self.bump();
                if self.at("(") {
                    self.parse_try_resources(col)?;
                }
                self.parse_block(col)?;
                while self.peek().is_some_and(|t| t.is_ident("catch")) {
                    self.bump();
                    self.expect_op("(")?;
                    let _ = self.parse_modifiers()?;
                    let mut ty = self.parse_type_ref()?;
                    // Multi-catch types are folded into the first.
                    while self.eat("|") {
                        self.parse_type_ref()?;
                    }
                    while self.at("[") && self.peek_at(1).is_some_and(|n| n.is("]")) {
                        self.bump();
                        self.bump();
                        ty.push_str("[]");
                    }
                    let name = self.expect_ident()?;
                    col.locals.push(LocalDecl {
                        name: name.text.to_string(),
                        declared_type: TypeName::new(ty),
                    });
                    self.expect_op(")")?;
                    self.parse_block(col)?;
                }
                if self.peek().is_some_and(|t| t.is_ident("finally")) {
                    self.bump();
                    self.parse_block(col)?;
                }
                return Ok(());
            }
            "return" => {
                self.bump();
                if !self.at(";") {
                    self.parse_expression(col)?;
                }
                self.expect_op(";")?;
                return Ok(());
            }
            "throw" => {
                self.bump();
                self.parse_expression(col)?;
                self.expect_op(";")?;
                return Ok(());
            }
            "break" | "continue" => {
                self.bump();
                if self.peek().is_some_and(|t| t.kind == TokenKind::Ident && !lexer::is_keyword(t.text)) {
                    self.bump();
                }
                self.expect_op(";")?;
                return Ok(());
            }
            "assert" => {
                self.bump();
                self.parse_expression(col)?;
                if self.eat(":") {
                    self.parse_expression(col)?;
                }
                self.expect_op(";")?;
                return Ok(());
            }
            "synchronized" => {
                self.bump();
                self.parse_paren_expr(col)?;
                self.parse_block(col)?;
                return Ok(());
            }
            // Local type declarations are parsed for balance and dropped;
            // their bodies belong to their own methods, not this one.
            "class" | "interface" | "enum" => {
                self.parse_type_decl("")?;
                return Ok(());
            }
            _ => {}
        }

        // Label: `name: statement`.
        if t.kind == TokenKind::Ident
            && !lexer::is_keyword(t.text)
            && self.peek_at(1).is_some_and(|n| n.is(":"))
            && self.peek_at(2).is_some_and(|n| !n.is(":"))
        {
            self.bump();
            self.bump();
            return self.parse_statement(col);
        }

        if self.looks_like_local_decl() {
            self.parse_local_decl(col)?;
            self.expect_op(";")?;
            return Ok(());
        }

        self.parse_expression(col)?;
        self.expect_op(";")?;
        Ok(())
    }

    fn parse_paren_expr(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.expect_op("(")?;
        self.parse_expression(col)?;
        self.expect_op(")")?;
        Ok(())
    }

    fn parse_try_resources(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.expect_op("(")?;
        loop {
            if self.eat(")") {
                return Ok(());
            }
            if self.looks_like_local_decl() {
                self.parse_local_decl(col)?;
            } else {
                self.parse_expression(col)?;
            }
            if self.eat(";") {
                continue;
            }
            self.expect_op(")")?;
            return Ok(());
        }
    }

    fn parse_for_control(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.expect_op("(")?;

        // Enhanced for: `Type name : expr`.
        let save = self.i;
        let foreach = (|| -> Result<Option<LocalDecl>, Abort> {
            let _ = self.parse_modifiers()?;
            let ty = match self.parse_type_ref() {
                Ok(t) => t,
                Err(_) => return Ok(None),
            };
            let Ok(name) = self.expect_ident() else { return Ok(None) };
            if self.at(":") {
                return Ok(Some(LocalDecl {
                    name: name.text.to_string(),
                    declared_type: TypeName::new(ty),
                }));
            }
            Ok(None)
        })();
        match foreach {
            Ok(Some(local)) => {
                col.locals.push(local);
                self.bump();
                self.parse_expression(col)?;
                self.expect_op(")")?;
                return Ok(());
            }
            Ok(None) => self.i = save,
            Err(a) => return Err(a),
        }

        // Classic three-part control.
        if !self.at(";") {
            if self.looks_like_local_decl() {
                self.parse_local_decl(col)?;
            } else {
                self.parse_expression(col)?;
                while self.eat(",") {
                    self.parse_expression(col)?;
                }
            }
        }
        self.expect_op(";")?;
        if !self.at(";") {
            self.parse_expression(col)?;
        }
        self.expect_op(";")?;
        if !self.at(")") {
            self.parse_expression(col)?;
            while self.eat(",") {
                self.parse_expression(col)?;
            }
        }
        self.expect_op(")")?;
        Ok(())
    }

    fn parse_switch_body(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.expect_op("{")?;
        loop {
            match self.peek() {
                None => {
                    let pos = self.pos();
                    match self.fatal(pos, "unexpected end of file in switch body") {
                        Abort::Fatal(e) => return Err(Abort::Fatal(e)),
                        _ => {
                            col.recovered = true;
                            return Ok(());
                        }
                    }
                }
                Some(t) if t.is("}") => {
                    self.bump();
                    return Ok(());
                }
                Some(t) if t.is_ident("case") || t.is_ident("default") => {
                    self.bump();
                    // Labels are constants; they contribute no sites.
                    self.skip_case_label()?;
                    if self.eat("->") {
                        if self.at("{") {
                            self.parse_block(col)?;
                        } else {
                            self.parse_statement(col)?;
                        }
                    }
                }
                Some(_) => match self.parse_statement(col) {
                    Ok(()) => {}
                    Err(Abort::Fatal(e)) => return Err(Abort::Fatal(e)),
                    Err(_) => {
                        col.recovered = true;
                        self.skip_to_stmt_boundary();
                    }
                },
            }
        }
    }

    /// Skips to the `:` or `->` ending a case label at depth zero.
    fn skip_case_label(&mut self) -> Result<(), Abort> {
        let mut paren = 0i32;
        loop {
            let Some(t) = self.peek() else {
                let pos = self.pos();
                return Err(self.stmt_err(pos, "unterminated case label"));
            };
            if paren == 0 {
                if t.is(":") {
                    self.bump();
                    return Ok(());
                }
                if t.is("->") {
                    return Ok(());
                }
                if t.is("}") || t.is(";") {
                    let pos = t.pos;
                    return Err(self.stmt_err(pos, "unterminated case label"));
                }
            }
            match t.text {
                "(" => paren += 1,
                ")" => paren -= 1,
                _ => {}
            }
            self.bump();
        }
    }

    // ---- local declarations ----

    /// Backtracking check for `Type name (= | , | ; | [)` at the cursor.
    fn looks_like_local_decl(&mut self) -> bool {
        let save = self.i;
        let diags = self.diags.len();
        let mut ok = false;
        if self.parse_modifiers().is_ok() {
            if let Ok(_ty) = self.parse_type_ref() {
                if let Some(t) = self.peek() {
                    if t.kind == TokenKind::Ident && !lexer::is_keyword(t.text) {
                        if let Some(n) = self.peek_at(1) {
                            ok = n.is("=") || n.is(";") || n.is(",") || n.is("[");
                        }
                    }
                }
            }
        }
        self.i = save;
        self.diags.truncate(diags);
        ok
    }

    fn parse_local_decl(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        let _ = self.parse_modifiers()?;
        let base = self.parse_type_ref()?;
        loop {
            let name = self.expect_ident()?;
            let mut ty = base.clone();
            while self.at("[") && self.peek_at(1).is_some_and(|n| n.is("]")) {
                self.bump();
                self.bump();
                ty.push_str("[]");
            }
            col.locals.push(LocalDecl {
                name: name.text.to_string(),
                declared_type: TypeName::new(ty),
            });
            if self.eat("=") {
                self.parse_initializer_value(col)?;
            }
            if self.eat(",") {
                continue;
            }
            return Ok(());
        }
    }

    /// Initializer on the right of `=`: an array initializer or a single
    /// expression.
    fn parse_initializer_value(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        if self.at("{") {
            self.parse_array_initializer(col)
        } else {
            self.parse_expression(col)
        }
    }

    fn parse_array_initializer(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.expect_op("{")?;
        loop {
            if self.eat("}") {
                return Ok(());
            }
            self.parse_initializer_value(col)?;
            if self.eat(",") {
                continue;
            }
            self.expect_op("}")?;
            return Ok(());
        }
    }

    // ---- expressions ----

    fn parse_expression(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        // Lambdas: `x -> ...` or `(params) -> ...`.
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Ident
                && !lexer::is_keyword(t.text)
                && self.peek_at(1).is_some_and(|n| n.is("->"))
            {
                self.bump();
                self.bump();
                return self.parse_lambda_body(col);
            }
            if t.is("(") {
                if let Some(after) = self.index_after_matching_paren() {
                    if self.toks.get(after).is_some_and(|n| n.is("->")) {
                        // Parameter lists declare names, they do not read them.
                        while self.i < after {
                            self.bump();
                        }
                        self.bump();
                        return self.parse_lambda_body(col);
                    }
                }
            }
        }
        self.parse_binary(col)
    }

    fn parse_lambda_body(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        if self.at("{") {
            self.parse_block(col)?;
            Ok(())
        } else {
            self.parse_expression(col)
        }
    }

    /// Token index just past the `)` matching the `(` at the cursor.
    fn index_after_matching_paren(&self) -> Option<usize> {
        let mut depth = 0i32;
        let mut j = self.i;
        while let Some(t) = self.toks.get(j) {
            match t.text {
                "(" => depth += 1,
                ")" => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(j + 1);
                    }
                }
                "{" | "}" | ";" => return None,
                _ => {}
            }
            j += 1;
        }
        None
    }

    fn parse_binary(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.parse_unary(col)?;
        loop {
            let Some(t) = self.peek().copied() else { return Ok(()) };
            if t.is_ident("instanceof") {
                self.bump();
                let _ = self.parse_modifiers()?;
                let ty = self.parse_type_ref()?;
                // Pattern variable introduced by `instanceof Type name`.
                if let Some(n) = self.peek() {
                    if n.kind == TokenKind::Ident && !lexer::is_keyword(n.text) {
                        let name = self.bump().unwrap();
                        col.locals.push(LocalDecl {
                            name: name.text.to_string(),
                            declared_type: TypeName::new(ty),
                        });
                    }
                }
                continue;
            }
            if t.is("?") {
                self.bump();
                self.parse_expression(col)?;
                self.expect_op(":")?;
                self.parse_expression(col)?;
                continue;
            }
            if t.kind == TokenKind::Op && is_binary_op(t.text) {
                self.bump();
                self.parse_unary(col)?;
                continue;
            }
            return Ok(());
        }
    }

    fn parse_unary(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        while let Some(t) = self.peek() {
            match t.text {
                "+" | "-" | "!" | "~" | "++" | "--" => {
                    self.bump();
                }
                _ => break,
            }
        }
        if self.at("(") {
            if let Some(cast_end) = self.cast_lookahead() {
                // Consume `( Type )` without recording type names as uses.
                while self.i < cast_end {
                    self.bump();
                }
                return self.parse_unary(col);
            }
        }
        self.parse_postfix(col)
    }

    /// When the cursor sits on a cast `( Type )`, returns the token index
    /// just past the `)`. A parenthesized name only counts as a cast when
    /// an operand follows, so `(x) + y` stays an expression.
    fn cast_lookahead(&mut self) -> Option<usize> {
        let save = self.i;
        let diags = self.diags.len();
        self.bump();
        let ty = self.parse_type_ref();
        let result = match ty {
            Ok(ty_text) if self.at(")") => {
                let close = self.i;
                let next = self.toks.get(close + 1);
                let primitive = is_primitive_name(ty_text.trim_end_matches("[]"))
                    || ty_text.ends_with("[]");
                let operand_follows = next.is_some_and(|n| {
                    matches!(n.kind, TokenKind::Ident | TokenKind::IntLit | TokenKind::FloatLit
                        | TokenKind::StringLit | TokenKind::CharLit)
                        && !is_binary_only_keyword(n.text)
                        || n.is("(")
                        || n.is("!")
                        || n.is("~")
                });
                if primitive || operand_follows {
                    Some(close + 1)
                } else {
                    None
                }
            }
            _ => None,
        };
        self.i = save;
        self.diags.truncate(diags);
        result
    }

    fn parse_postfix(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        let Some(first) = self.peek().copied() else {
            let pos = self.pos();
            return Err(self.stmt_err(pos, "expected expression, found end of file"));
        };
        let chain_start = first.byte_start;

        match first.kind {
            TokenKind::IntLit | TokenKind::FloatLit | TokenKind::StringLit | TokenKind::CharLit => {
                self.bump();
            }
            TokenKind::Op if first.is("(") => {
                self.bump();
                self.parse_expression(col)?;
                self.expect_op(")")?;
            }
            TokenKind::Ident if first.is("new") => {
                self.bump();
                self.parse_creator(col)?;
            }
            TokenKind::Ident if first.is("this") || first.is("super") => {
                self.bump();
                // Explicit constructor invocations `this(...)`/`super(...)`
                // target constructors, which resolution does not model.
                if self.at("(") {
                    self.parse_args(col)?;
                }
            }
            TokenKind::Ident if !lexer::is_keyword(first.text) => {
                self.bump();
                if self.at("(") {
                    // Push before the arguments so sites keep source order;
                    // the arity is patched once the list is parsed.
                    let idx = col.invocations.len();
                    col.invocations.push(CallSite {
                        callee_name: first.text.to_string(),
                        receiver_expr: None,
                        argument_count: 0,
                        pos: first.pos,
                    });
                    let count = self.parse_args(col)?;
                    col.invocations[idx].argument_count = count;
                } else if !self.at("::") {
                    // A bare name read; resolution decides whether it is a
                    // field, a local, or a type qualifier.
                    col.field_accesses.push(FieldAccessSite {
                        field_name: first.text.to_string(),
                        receiver_expr: None,
                        pos: first.pos,
                    });
                }
            }
            _ => {
                let (pos, found) = (first.pos, first.text.to_string());
                return Err(self.stmt_err(pos, format!("expected expression, found `{found}`")));
            }
        }

        loop {
            let Some(t) = self.peek().copied() else { return Ok(()) };
            match t.text {
                "." => {
                    let dot = t;
                    self.bump();
                    // `Foo.class`, `Outer.this`, `Foo.super.m()` pass through
                    // without producing events for the keyword segment.
                    if self.peek().is_some_and(|n| n.is_ident("class") || n.is_ident("this") || n.is_ident("super")) {
                        self.bump();
                        continue;
                    }
                    if self.peek().is_some_and(|n| n.is_ident("new")) {
                        // Qualified instance creation `outer.new Inner(...)`.
                        self.bump();
                        self.parse_creator(col)?;
                        continue;
                    }
                    if self.at("<") {
                        self.skip_generic_args()?;
                    }
                    let name = self.expect_ident()?;
                    let receiver = self.src[chain_start..dot.byte_start].trim_end().to_string();
                    if self.at("(") {
                        let idx = col.invocations.len();
                        col.invocations.push(CallSite {
                            callee_name: name.text.to_string(),
                            receiver_expr: Some(receiver),
                            argument_count: 0,
                            pos: name.pos,
                        });
                        let count = self.parse_args(col)?;
                        col.invocations[idx].argument_count = count;
                    } else {
                        col.field_accesses.push(FieldAccessSite {
                            field_name: name.text.to_string(),
                            receiver_expr: Some(receiver),
                            pos: name.pos,
                        });
                    }
                }
                "[" => {
                    self.bump();
                    self.parse_expression(col)?;
                    self.expect_op("]")?;
                }
                "::" => {
                    // Method references carry no argument list, so they are
                    // not call sites.
                    self.bump();
                    if self.peek().is_some_and(|n| n.is_ident("new")) {
                        self.bump();
                    } else {
                        self.expect_ident()?;
                    }
                }
                "++" | "--" => {
                    self.bump();
                }
                _ => return Ok(()),
            }
        }
    }

    /// `new` expressions: class creation with optional anonymous body, or
    /// array creation. The creation itself is not a call site; argument
    /// expressions still contribute theirs, and sites inside an anonymous
    /// body attach to the enclosing method.
    fn parse_creator(&mut self, col: &mut BodyCollector) -> Result<(), Abort> {
        self.parse_type_ref()?;
        if self.at("[") {
            while self.at("[") {
                self.bump();
                if !self.at("]") {
                    self.parse_expression(col)?;
                }
                self.expect_op("]")?;
            }
            if self.at("{") {
                self.parse_array_initializer(col)?;
            }
            return Ok(());
        }
        self.expect_op("(")?;
        self.i -= 1;
        self.parse_args(col)?;
        if self.at("{") {
            let mut anon = ClassDecl {
                simple_name: String::new(),
                qualified_name: String::new(),
                kind: TypeKind::Class,
                modifiers: Modifiers::default(),
                super_types: Vec::new(),
                fields: Vec::new(),
                methods: Vec::new(),
                nested: Vec::new(),
            };
            self.bump();
            loop {
                match self.peek() {
                    None => {
                        let pos = self.pos();
                        match self.fatal(pos, "unexpected end of file in anonymous class body") {
                            Abort::Fatal(e) => return Err(Abort::Fatal(e)),
                            _ => {
                                col.recovered = true;
                                break;
                            }
                        }
                    }
                    Some(t) if t.is("}") => {
                        self.bump();
                        break;
                    }
                    Some(t) if t.is(";") => {
                        self.bump();
                    }
                    Some(_) => match self.parse_member(&mut anon) {
                        Ok(()) => {}
                        Err(Abort::Fatal(e)) => return Err(Abort::Fatal(e)),
                        Err(_) => self.skip_member_recovery(),
                    },
                }
            }
            for m in anon.methods {
                col.invocations.extend(m.invocations);
                col.field_accesses.extend(m.field_accesses);
                col.locals.extend(m.locals);
            }
        }
        Ok(())
    }

    /// Argument list starting at `(`. Returns the argument count.
    fn parse_args(&mut self, col: &mut BodyCollector) -> Result<usize, Abort> {
        self.expect_op("(")?;
        if self.eat(")") {
            return Ok(0);
        }
        let mut count = 0usize;
        loop {
            self.parse_expression(col)?;
            count += 1;
            if self.eat(",") {
                continue;
            }
            self.expect_op(")")?;
            return Ok(count);
        }
    }

    // ---- recovery ----

    /// Advances past the current statement: consumes through the next `;`
    /// at depth zero or stops before an unmatched `}`.
    fn skip_to_stmt_boundary(&mut self) {
        let mut paren = 0i32;
        let mut bracket = 0i32;
        let mut brace = 0i32;
        while let Some(t) = self.peek() {
            match t.text {
                ";" if paren == 0 && bracket == 0 && brace == 0 => {
                    self.bump();
                    return;
                }
                "(" => paren += 1,
                ")" => paren -= 1,
                "[" => bracket += 1,
                "]" => bracket -= 1,
                "{" => brace += 1,
                "}" => {
                    if brace == 0 {
                        return;
                    }
                    brace -= 1;
                }
                _ => {}
            }
            self.bump();
        }
    }

    /// Advances past a malformed member: through the next `;` or balanced
    /// `{...}` at depth zero, stopping before the `}` that closes the class.
    fn skip_member_recovery(&mut self) {
        let mut brace = 0i32;
        while let Some(t) = self.peek() {
            match t.text {
                ";" if brace == 0 => {
                    self.bump();
                    return;
                }
                "{" => brace += 1,
                "}" => {
                    if brace == 0 {
                        return;
                    }
                    brace -= 1;
                    if brace == 0 {
                        self.bump();
                        return;
                    }
                }
                _ => {}
            }
            self.bump();
        }
    }

    /// Advances past at least one token, stopping before the next plausible
    /// start of a type declaration. Used after a failed top-level parse so a
    /// later class in the same file is still picked up.
    fn skip_to_type_start(&mut self) {
        self.bump();
        while let Some(t) = self.peek() {
            if t.is_ident("class")
                || t.is_ident("interface")
                || t.is_ident("enum")
                || t.is("@")
                || MODIFIER_FLAGS.iter().any(|(kw, _)| t.is_ident(kw))
            {
                return;
            }
            self.bump();
        }
    }

    fn skip_past(&mut self, text: &str) {
        while let Some(t) = self.peek() {
            if t.is(text) {
                self.bump();
                return;
            }
            self.bump();
        }
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> Result<(), Abort> {
        let start = self.expect_op(open)?;
        let mut depth = 1i32;
        while depth > 0 {
            let Some(t) = self.peek() else {
                return Err(self.stmt_err(start.pos, format!("unterminated `{open}`")));
            };
            if t.is(open) {
                depth += 1;
            } else if t.is(close) {
                depth -= 1;
            }
            self.bump();
        }
        Ok(())
    }
}

fn is_primitive_name(text: &str) -> bool {
    matches!(
        text,
        "void" | "boolean" | "byte" | "short" | "int" | "long" | "char" | "float" | "double"
    )
}

/// Keywords that terminate a cast lookahead even though they lex as idents.
fn is_binary_only_keyword(text: &str) -> bool {
    matches!(text, "instanceof")
}

fn is_binary_op(text: &str) -> bool {
    matches!(
        text,
        "+" | "-" | "*" | "/" | "%" | "<" | ">" | "<=" | ">=" | "==" | "!=" | "&" | "|" | "^"
            | "&&" | "||" | "<<" | ">>" | ">>>" | "=" | "+=" | "-=" | "*=" | "/=" | "%=" | "&="
            | "|=" | "^=" | "<<=" | ">>=" | ">>>="
    )
}
