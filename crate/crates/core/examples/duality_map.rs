//! The inverse direction: `osp(1|2)` generators realized inside
//! `W (x) F_{-1}`. Relations involving `(G+)^3` hold only modulo the
//! singular ideal, and the `control:` checks confirm they fail without it.
//!
//! An optional argument bounds the conformal weight of compared states.

use bpw::classify::Level;
use bpw::exprio::Status;
use bpw::ffield::duality_map_suite_bounded;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_weight = std::env::args().nth(1).map(|s| s.parse()).transpose()?;
    let report = duality_map_suite_bounded(&Level::int(1), max_weight)?;
    let (controls, rest): (Vec<_>, Vec<_>) = report.checks.iter().partition(|c| c.id.starts_with("control"));
    for c in &rest {
        println!("{:<28} {:?}", c.id, c.status);
    }
    let ok = controls.iter().all(|c| c.status == Status::Pass);
    println!("{} reduction controls, all pass: {ok}", controls.len());
    Ok(())
}
