//! Randomized Borcherds, skew-symmetry, translation and vacuum checks on a
//! few free-field algebras. Pass a seed to vary the sample.

use bpw::exact::Scalar;
use bpw::exprio::{Report, Status};
use bpw::ffield::{axiom_suite, clifford_f, clifford_half, lattice_minus1, osp12, register_algebra, AlgebraSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    for f in [clifford_f(), clifford_half(), lattice_minus1(), osp12(Scalar::rat(-5, 4))] {
        let name = f.name.clone();
        let alg = register_algebra(&AlgebraSpec::new(&name, vec![f]))?;
        let mut r = Report::new("engine-axioms", "");
        axiom_suite(&alg, seed, 40, &mut r)?;
        println!("{name:<6} {} checks, {} failed", r.checks.len(), r.count(Status::Fail));
        for c in r.failures() {
            println!("  {}: {} != {}", c.id, c.lhs, c.rhs);
        }
    }
    Ok(())
}
