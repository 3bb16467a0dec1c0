//! Images of `J, T, G+, G-` in `osp(1|2) (x) F` and the W-algebra relations
//! they satisfy at `k = 1`.

use bpw::classify::Level;
use bpw::exprio::Status;
use bpw::ffield::phi_map_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = phi_map_suite(&Level::int(1))?;
    for c in &report.checks {
        println!("{:?}\t{}\t{}", c.status, c.id, c.lhs);
    }
    println!("{} of {} hold", report.count(Status::Pass), report.checks.len());
    Ok(())
}
