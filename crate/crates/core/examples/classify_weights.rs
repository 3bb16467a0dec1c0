//! Locate highest weights on the curves `h_i(x, y) = 0`.

use bpw::classify::{eval_h, top_dim, Level, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = Level::int(1);
    let points = [Weight::rat(0, 1, 0, 1), Weight::rat(-5, 3, 5, 3), Weight::rat(1, 3, 1, 3), Weight::rat(7, 3, 1, 5)];
    for w in &points {
        let t = top_dim(&k, w)?;
        match t.dim {
            Some(d) => println!("{w}: witnesses {:?}, top dimension {d}{}", t.witnesses, if t.multi_witness { " (several curves)" } else { "" }),
            None => println!("{w}: not in S_k"),
        }
    }

    // h_i along the symbolic weight, to see the curves themselves
    let w = Weight::symbolic();
    for i in 1..=3 {
        println!("h_{i} = {}", eval_h(i, &k, &w));
    }
    Ok(())
}
