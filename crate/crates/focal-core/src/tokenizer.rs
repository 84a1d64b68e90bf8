//! Token accounting with pluggable counting schemes.
//!
//! The default `approx-llama` scheme approximates a code-tuned BPE without
//! a vocabulary: whitespace separates and costs nothing, every other
//! non-identifier character costs one token, and an identifier run of n
//! characters costs one token when n <= 8 and ceil(n / 4) otherwise.
//! `whitespace` counts whitespace-separated words and exists mainly to
//! prove the scheme seam works.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub const DEFAULT_SCHEME: &str = "approx-llama";
pub const SCHEMES: &[&str] = &["approx-llama", "whitespace"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeError {
    pub scheme: String,
}

impl fmt::Display for SchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown tokenizer scheme `{}` (known: {})", self.scheme, SCHEMES.join(", "))
    }
}

impl core::error::Error for SchemeError {}

/// Byte range of one counted token.
pub type TokenSpan = (usize, usize);

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Identifier runs longer than this stop costing a single token.
const IDENT_SINGLE_TOKEN_MAX: usize = 8;
/// Characters per token for long identifier runs.
const IDENT_CHUNK: usize = 4;

fn approx_llama_spans(text: &str, mut emit: impl FnMut(TokenSpan)) {
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if is_ident_char(c) {
            let mut char_count = 0usize;
            let mut boundaries: Vec<usize> = Vec::new();
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if is_ident_char(c) {
                    boundaries.push(i);
                    end = i + c.len_utf8();
                    char_count += 1;
                    chars.next();
                } else {
                    break;
                }
            }
            if char_count <= IDENT_SINGLE_TOKEN_MAX {
                emit((start, end));
            } else {
                let mut k = 0;
                while k < char_count {
                    let chunk_start = boundaries[k];
                    let chunk_end = if k + IDENT_CHUNK < char_count {
                        boundaries[k + IDENT_CHUNK]
                    } else {
                        end
                    };
                    emit((chunk_start, chunk_end));
                    k += IDENT_CHUNK;
                }
            }
            continue;
        }
        chars.next();
        emit((start, start + c.len_utf8()));
    }
}

fn whitespace_spans(text: &str, mut emit: impl FnMut(TokenSpan)) {
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                emit((s, i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        emit((s, text.len()));
    }
}

fn with_scheme(
    text: &str,
    scheme: &str,
    emit: &mut dyn FnMut(TokenSpan),
) -> Result<(), SchemeError> {
    match scheme {
        "approx-llama" => {
            approx_llama_spans(text, emit);
            Ok(())
        }
        "whitespace" => {
            whitespace_spans(text, emit);
            Ok(())
        }
        other => Err(SchemeError { scheme: other.to_string() }),
    }
}

pub fn count_tokens(text: &str, scheme: &str) -> Result<usize, SchemeError> {
    let mut n = 0usize;
    with_scheme(text, scheme, &mut |_| n += 1)?;
    Ok(n)
}

pub fn token_spans(text: &str, scheme: &str) -> Result<Vec<TokenSpan>, SchemeError> {
    let mut spans = Vec::new();
    with_scheme(text, scheme, &mut |s| spans.push(s))?;
    Ok(spans)
}

/// Result of a budgeted cut. `text` is the kept slice, `token_count` its
/// cost, `truncated` whether anything was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation<'a> {
    pub text: &'a str,
    pub token_count: usize,
    pub truncated: bool,
}

/// Keeps the largest suffix costing at most `max_tokens`. Token count is
/// monotone non-increasing in the suffix start, so a binary search over
/// char boundaries finds the earliest start that fits; the result hits the
/// budget exactly except when a long-identifier chunk boundary forces the
/// count to jump past it.
pub fn truncate_tail<'a>(
    text: &'a str,
    max_tokens: usize,
    scheme: &str,
) -> Result<Truncation<'a>, SchemeError> {
    let total = count_tokens(text, scheme)?;
    if total <= max_tokens {
        return Ok(Truncation { text, token_count: total, truncated: false });
    }
    let boundaries: Vec<usize> = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(core::iter::once(text.len()))
        .collect();
    // Smallest boundary whose suffix fits the budget.
    let mut lo = 0usize;
    let mut hi = boundaries.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let n = count_tokens(&text[boundaries[mid]..], scheme)?;
        if n <= max_tokens {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let kept = &text[boundaries[lo]..];
    Ok(Truncation { text: kept, token_count: count_tokens(kept, scheme)?, truncated: true })
}

/// Keeps the largest prefix costing at most `max_tokens`; the mirror of
/// [`truncate_tail`].
pub fn truncate_head<'a>(
    text: &'a str,
    max_tokens: usize,
    scheme: &str,
) -> Result<Truncation<'a>, SchemeError> {
    let total = count_tokens(text, scheme)?;
    if total <= max_tokens {
        return Ok(Truncation { text, token_count: total, truncated: false });
    }
    let boundaries: Vec<usize> = text
        .char_indices()
        .map(|(i, _)| i)
        .chain(core::iter::once(text.len()))
        .collect();
    // Largest boundary whose prefix fits the budget.
    let mut lo = 0usize;
    let mut hi = boundaries.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let n = count_tokens(&text[..boundaries[mid]], scheme)?;
        if n <= max_tokens {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let kept = &text[..boundaries[lo]];
    Ok(Truncation { text: kept, token_count: count_tokens(kept, scheme)?, truncated: true })
}
