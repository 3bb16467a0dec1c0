//! The mode algebra of the universal Bershadsky-Polyakov algebra `W^k`
//! acting on its vacuum module and on Verma-type highest-weight modules.

mod analysis;
mod expr;
mod module;
mod modes;

pub use analysis::*;
pub use expr::{central_charge, commutator, Atom, ModeExpr};
pub use module::{components, mono_charge, mono_weight, BPModule, BPState, Head, Mono};
pub use modes::*;
