mod affine;
mod axioms;
mod engine;
mod oracle;
mod spec;
mod state;
mod suites;
mod twisted;

pub use affine::*;
pub use axioms::*;
pub use engine::*;
pub use oracle::*;
pub use spec::*;
pub use state::*;
pub use suites::*;
pub use twisted::*;
