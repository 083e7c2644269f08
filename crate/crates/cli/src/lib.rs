//! `torvanish` command-line front end.

pub mod commands;
pub mod grammar;

pub use commands::{execute, run, Cli, Command, Outcome, SessionConfig, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
pub use grammar::{parse_input, parse_ring, print_statements, ParseError, Scope, Statement};
