pub mod classify;
pub mod cli;
pub mod exact;
pub mod exprio;
pub mod ffield;
pub mod wmod;
