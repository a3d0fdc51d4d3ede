//! Command line front end: poset and weight file formats, command dispatch and report
//! rendering.

pub mod commands;
pub mod error;
pub mod files;
pub mod report;

pub use commands::{execute, run, Cli};
pub use error::{CliError, ParseError};
pub use files::{PosetFile, WeakMode, WeightsFile};
pub use report::{Format, Report};
