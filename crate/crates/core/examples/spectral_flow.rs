//! Spectral-flow orbit of the vacuum: closed form next to the step-by-step
//! recursion.

use bpw::classify::{vacuum_orbit, vacuum_orbit_recursive, Level};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: i64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(2);
    let level = Level::int(k);
    let steps = vacuum_orbit_recursive(&level, 6)?.into_iter().chain(vacuum_orbit_recursive(&level, -6)?);
    println!("{:>3}  {:<24} {:>3}  closed form agrees", "n", "weight", "dim");
    for e in steps {
        let closed = vacuum_orbit(&level, e.n)?;
        let dim = e.top_dim.map_or("?".to_string(), |d| d.to_string());
        println!("{:>3}  {:<24} {:>3}  {}", e.n, e.weight.to_string(), dim, closed.weight == e.weight);
    }
    Ok(())
}
