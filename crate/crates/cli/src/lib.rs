//! Library surface of the batch front-end: the category-description parser,
//! command implementations and report rendering (the binary in `main.rs` is
//! a thin wrapper).

pub mod commands;
pub mod parse;
pub mod report;
