//! File formats, run reports and pipelines of the `xconn` command.

pub mod commands;
pub mod formats;
pub mod report;

pub use commands::{run, Command, Format, Input, Options};
pub use report::RunReport;
