//! Twisted-sector corrections for the neutral fermion `F^{1/2}`.

use bpw::exact::Scalar;
use bpw::ffield::{clifford_half, register_algebra, twisted_correction_f12, AlgebraSpec, TwistedCoeff};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("C_mn for m, n < 4:");
    for m in 0..4 {
        let row: Vec<String> = (0..4).map(|n| TwistedCoeff::new(m, n).value.to_string()).collect();
        println!("  {}", row.join("\t"));
    }

    let a = register_algebra(&AlgebraSpec::new("Fh", vec![clifford_half()]))?;
    let phi = a.field("Fh", "phi")?;
    let omega = a.mode(phi, -2, &a.mode(phi, -1, &a.vacuum())).scaled(&Scalar::rat(1, 2));
    println!("e^Delta omega = {}", twisted_correction_f12(&a, 0, &omega)?);
    let single = a.mode(phi, -1, &a.vacuum());
    println!("e^Delta phi   = {}", twisted_correction_f12(&a, 0, &single)?);
    Ok(())
}
