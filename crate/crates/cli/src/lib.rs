//! Front end for `rht`: the workspace text format and the subcommands.

pub mod commands;
pub mod fixtures;
pub mod workspace;

pub use commands::Outcome;
pub use workspace::Workspace;
