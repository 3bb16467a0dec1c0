mod commands;
mod suites;

pub use commands::*;
pub use suites::*;
