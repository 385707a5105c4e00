//! File formats and the command-line surface of `quiverstab`.
//!
//! [`spec_file`] reads and writes quiver spec files, [`rep_json`] the
//! representation files, and [`run`] executes one command line and returns
//! its output and exit code without touching the process state.

mod cli;
pub mod output;
pub mod rep_json;
pub mod spec_file;

pub use cli::{run, CliError, CommandResult, SCHEMA_VERSION};
pub use rep_json::{parse_representation, serialize_representation, RepError};
pub use spec_file::{parse_quiver_file, serialize_quiver_file, SpecError};
