//! Core analysis for a Java subset: parsing, call resolution, focal-context
//! extraction, prompt construction, token accounting, and reply harvesting.
//!
//! Everything here is pure text-in/text-out and allocation-only; IO, process
//! concerns, and model backends live in the `focal` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod context;
pub mod harvest;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod prompt;
pub mod resolver;
pub mod signature;
pub mod tokenizer;
