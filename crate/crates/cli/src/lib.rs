//! Command-line front end: text syntax, the PGM plotter and command dispatch.

pub mod commands;
pub mod plot;
pub mod syntax;
