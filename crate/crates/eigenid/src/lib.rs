//! File formats, parallel drivers and subcommands for the `eigenid` tool,
//! on top of [`eigenid_core`].

pub mod commands;
pub mod error;
pub mod matrix_file;
pub mod methods;

pub use error::CliError;
pub use matrix_file::MatrixFile;
pub use methods::Method;
