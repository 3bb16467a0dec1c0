//! Sugawara vector of affine `osp(1|2)`: Virasoro relations with the level
//! left symbolic, then specialized to the conformal-embedding level.

use bpw::exact::{Scalar, Var};
use bpw::ffield::{osp12, osp12_symbolic, register_algebra, sugawara, virasoro_checks, AlgebraSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let generic = register_algebra(&AlgebraSpec::new("osp", vec![osp12_symbolic()]))?;
    let w = sugawara(&generic, 0)?;
    let v = virasoro_checks(&generic, &w)?;
    println!("{}: Virasoro relations {}, c = {}", Var::KP, v.all(), v.central_charge);

    for k in [Scalar::rat(-5, 4), Scalar::rat(-7, 6), Scalar::int(1)] {
        let alg = register_algebra(&AlgebraSpec::new("osp", vec![osp12(k.clone())]))?;
        let v = virasoro_checks(&alg, &sugawara(&alg, 0)?)?;
        println!("k' = {k}: c = {}", v.central_charge);
    }

    let critical = register_algebra(&AlgebraSpec::new("osp", vec![osp12(Scalar::rat(-3, 2))]))?;
    if let Err(e) = sugawara(&critical, 0) {
        println!("k' = -3/2: {e}");
    }
    Ok(())
}
