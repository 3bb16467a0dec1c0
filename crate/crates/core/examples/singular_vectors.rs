//! Which vacuum-module vectors `G+(-1)^{k+2} 1` and `G-(-2)^{k+2} 1` are
//! singular, for a handful of levels.
//!
//! ```text
//! cargo run --example singular_vectors
//! ```

use bpw::classify::Level;
use bpw::exact::Scalar;
use bpw::wmod::vacuum_singular_suite;

fn main() {
    let levels = [Scalar::int(-1), Scalar::int(0), Scalar::int(1), Scalar::int(2), Scalar::rat(1, 2), Scalar::rat(2, 3)];
    for k in levels {
        let r = vacuum_singular_suite(&Level::new(k.clone()));
        println!("k = {k:>4}  n = {}  G+: {:<5}  G-: {:<5}", r.n, r.plus.is_singular, r.minus.is_singular);
        if !r.passed() {
            println!("          {} + {} raising modes act nontrivially", r.plus.obstructions.len(), r.minus.obstructions.len());
        }
    }
}
