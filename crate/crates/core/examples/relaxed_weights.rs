//! Top weights of relaxed modules at `k = 1` as functions of `lambda`, and
//! which coset conditions hold at a few rational points.

use bpw::classify::{eval_h, irreducibility_predicates, relaxed_weight, Level, RelaxedParams, RelaxedSector};
use bpw::exact::{rat, Scalar, Var};

fn main() {
    let k = Level::int(1);
    let lam = Scalar::var(Var::LAMBDA);
    for (sector, i) in [(RelaxedSector::UntwistedTop, 2), (RelaxedSector::TwistedTop, 1)] {
        let w = relaxed_weight(&k, &RelaxedParams::new(lam.clone(), sector));
        println!("{sector:?}: {w}, h_{i} = {}", eval_h(i, &k, &w));
    }

    println!("lambda   F     E0    E1");
    for (n, d) in [(0, 1), (1, 8), (-1, 4), (1, 2), (1, 3), (-7, 8)] {
        let p = irreducibility_predicates(&rat(n, d));
        println!("{:<8} {:<5} {:<5} {}", rat(n, d).to_string(), p.f_irred, p.e0_irred, p.e1_irred);
    }
}
