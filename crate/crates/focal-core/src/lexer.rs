//! Hand-rolled Java lexer. Comments and whitespace are dropped; everything
//! else becomes an identifier, literal, or operator token carrying its
//! source position and byte range.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    IntLit,
    FloatLit,
    StringLit,
    CharLit,
    Op,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    pub pos: Pos,
    pub byte_start: usize,
    pub byte_end: usize,
}

impl<'a> Token<'a> {
    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_ident(&self, text: &str) -> bool {
        self.kind == TokenKind::Ident && self.text == text
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.column, self.message)
    }
}

impl core::error::Error for LexError {}

/// Multi-character operators, longest first so the match is maximal-munch.
const OPERATORS: &[&str] = &[
    ">>>=", ">>=", "<<=", ">>>", "...", "->", "::", ">>", "<<", ">=", "<=", "==", "!=", "&&",
    "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
];

pub const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int", "interface",
    "long", "native", "new", "package", "private", "protected", "public", "return", "short",
    "static", "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "try", "void", "volatile", "while",
];

pub fn is_keyword(text: &str) -> bool {
    KEYWORDS.contains(&text)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

struct Cursor<'a> {
    src: &'a str,
    byte: usize,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.byte..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.byte..].chars();
        it.next();
        it.next()
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.byte..].starts_with(s)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.byte += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column }
    }
}

pub fn lex(source: &str) -> Result<Vec<Token<'_>>, LexError> {
    let mut cur = Cursor { src: source, byte: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.starts_with("//") {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if cur.starts_with("/*") {
            let open = cur.pos();
            cur.bump();
            cur.bump();
            loop {
                if cur.starts_with("*/") {
                    cur.bump();
                    cur.bump();
                    break;
                }
                if cur.bump().is_none() {
                    return Err(LexError {
                        pos: open,
                        message: String::from("unterminated block comment"),
                    });
                }
            }
            continue;
        }

        let start = cur.byte;
        let pos = cur.pos();

        if is_ident_start(c) {
            while let Some(c) = cur.peek() {
                if is_ident_part(c) {
                    cur.bump();
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: &source[start..cur.byte],
                pos,
                byte_start: start,
                byte_end: cur.byte,
            });
            continue;
        }

        if c.is_ascii_digit() || (c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit())) {
            let kind = lex_number(&mut cur);
            tokens.push(Token {
                kind,
                text: &source[start..cur.byte],
                pos,
                byte_start: start,
                byte_end: cur.byte,
            });
            continue;
        }

        if c == '"' {
            lex_string(&mut cur)?;
            tokens.push(Token {
                kind: TokenKind::StringLit,
                text: &source[start..cur.byte],
                pos,
                byte_start: start,
                byte_end: cur.byte,
            });
            continue;
        }

        if c == '\'' {
            lex_char(&mut cur)?;
            tokens.push(Token {
                kind: TokenKind::CharLit,
                text: &source[start..cur.byte],
                pos,
                byte_start: start,
                byte_end: cur.byte,
            });
            continue;
        }

        let mut matched = false;
        for op in OPERATORS {
            if cur.starts_with(op) {
                for _ in 0..op.chars().count() {
                    cur.bump();
                }
                matched = true;
                break;
            }
        }
        if !matched {
            // Single-char operator or punctuation; unknown characters also
            // land here so recovery can skip them instead of failing the lex.
            cur.bump();
        }
        tokens.push(Token {
            kind: TokenKind::Op,
            text: &source[start..cur.byte],
            pos,
            byte_start: start,
            byte_end: cur.byte,
        });
    }

    Ok(tokens)
}

fn lex_number(cur: &mut Cursor<'_>) -> TokenKind {
    let mut is_float = false;
    let mut hex = false;
    if cur.starts_with("0x") || cur.starts_with("0X") {
        hex = true;
        cur.bump();
        cur.bump();
    } else if cur.starts_with("0b") || cur.starts_with("0B") {
        cur.bump();
        cur.bump();
    }
    while let Some(c) = cur.peek() {
        match c {
            '0'..='9' | '_' => {
                cur.bump();
            }
            'a'..='f' | 'A'..='F' if hex => {
                cur.bump();
            }
            '.' if !hex && cur.peek2().is_some_and(|d| d.is_ascii_digit()) => {
                is_float = true;
                cur.bump();
            }
            // A trailing dot as in `1.` is part of the literal unless it
            // starts a member access like `1.toString()`.
            '.' if !hex && !cur.peek2().is_some_and(is_ident_start) => {
                is_float = true;
                cur.bump();
            }
            'e' | 'E' if !hex => {
                is_float = true;
                cur.bump();
                if matches!(cur.peek(), Some('+') | Some('-')) {
                    cur.bump();
                }
            }
            'p' | 'P' if hex => {
                is_float = true;
                cur.bump();
                if matches!(cur.peek(), Some('+') | Some('-')) {
                    cur.bump();
                }
            }
            'f' | 'F' | 'd' | 'D' if !hex => {
                is_float = true;
                cur.bump();
                break;
            }
            'l' | 'L' => {
                cur.bump();
                break;
            }
            _ => break,
        }
    }
    if is_float {
        TokenKind::FloatLit
    } else {
        TokenKind::IntLit
    }
}

fn lex_string(cur: &mut Cursor<'_>) -> Result<(), LexError> {
    let open = cur.pos();
    if cur.starts_with("\"\"\"") {
        cur.bump();
        cur.bump();
        cur.bump();
        loop {
            if cur.starts_with("\"\"\"") {
                cur.bump();
                cur.bump();
                cur.bump();
                return Ok(());
            }
            if cur.peek() == Some('\\') {
                cur.bump();
            }
            if cur.bump().is_none() {
                return Err(LexError { pos: open, message: String::from("unterminated text block") });
            }
        }
    }
    cur.bump();
    loop {
        match cur.peek() {
            Some('"') => {
                cur.bump();
                return Ok(());
            }
            Some('\\') => {
                cur.bump();
                cur.bump();
            }
            Some('\n') | None => {
                return Err(LexError { pos: open, message: String::from("unterminated string literal") });
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}

fn lex_char(cur: &mut Cursor<'_>) -> Result<(), LexError> {
    let open = cur.pos();
    cur.bump();
    loop {
        match cur.peek() {
            Some('\'') => {
                cur.bump();
                return Ok(());
            }
            Some('\\') => {
                cur.bump();
                cur.bump();
            }
            Some('\n') | None => {
                return Err(LexError { pos: open, message: String::from("unterminated char literal") });
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}
