//! Describe an algebra in a spec file, build states with the expression
//! language and print the normal-ordered result.
//!
//! ```text
//! cargo run --example ope_dsl -- data/osp12.spec data/x1y.expr
//! ```

use bpw::exprio::{eval_expr, parse_algebra_spec, parse_expr, state_to_expr};
use bpw::ffield::register_algebra;

const SPEC: &str = "algebra bc
[factor F]
kind = clifford-charged
gen psi+ odd 1/2
gen psi- odd 1/2
(psi+,psi-) = 1
";

const EXPRS: &[&str] = &[
    "(nprod 0 (mode F.psi+ -1/2 vac) (mode F.psi- -1/2 vac))",
    "(nop (mode F.psi+ -1/2 vac) (mode F.psi- -1/2 vac))",
    "(let j (nop (mode F.psi+ -1/2 vac) (mode F.psi- -1/2 vac)) (nprod 1 j j))",
    "(deriv (mode F.psi+ -1/2 vac))",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [spec, expr] = args.as_slice() {
        let alg = register_algebra(&parse_algebra_spec(&std::fs::read_to_string(spec)?)?)?;
        let e = parse_expr(&std::fs::read_to_string(expr)?).map_err(|d| d.to_string())?;
        println!("{}", state_to_expr(&alg, &eval_expr(&alg, &e)?));
        return Ok(());
    }

    let alg = register_algebra(&parse_algebra_spec(SPEC)?)?;
    for text in EXPRS {
        let e = parse_expr(text).map_err(|d| d.to_string())?;
        println!("{text}\n  = {}", state_to_expr(&alg, &eval_expr(&alg, &e)?));
    }
    match parse_expr("(nprod 0 (mode F.psi+ -1/3 vac) vac)") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(d) => println!("diagnostic: {d}"),
    }
    Ok(())
}
