//! Library side of the `cartan` command: file format, result tables and the
//! subcommands.

pub mod commands;
pub mod io;
pub mod table;

pub use commands::{Outcome, EXIT_BUDGET, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE};
pub use io::AlgebraFile;
pub use table::{ResultTable, Row, Verdict};
