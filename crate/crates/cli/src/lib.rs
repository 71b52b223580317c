//! Library half of the command-line front end; `main.rs` is a thin
//! argument-parsing shell over these modules.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod sweep;
