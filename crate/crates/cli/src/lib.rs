//! Command-line front end: a plain-text definition language, an element
//! expression parser and JSON reports.

pub mod commands;
pub mod def;
pub mod eval;
pub mod expr;
pub mod report;

pub use commands::{emit, run, Cli, Command};
pub use def::{parse_definition, DefError, DefinitionDocument, Model};
pub use report::Report;
