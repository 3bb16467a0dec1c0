mod dsl;
mod report;
mod specfile;

pub use dsl::*;
pub use report::*;
pub use specfile::*;
