//! Shrinks the coordinates of a maximal dps polytope by unimodular moves,
//! then checks the image is still maximal dps.
//!
//! ```text
//! cargo run --release --example reduce -- 4
//! ```

use dps_lattice::catalog;
use dps_lattice::construct::{maximal_dps, reduce_coordinates};
use dps_lattice::dps;

fn main() -> dps_lattice::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let inputs = [("example 3", catalog::example3()), ("lift chain", maximal_dps(n)?)];
    for (name, p) in inputs {
        let r = reduce_coordinates(&p)?;
        println!(
            "{name} (dim {}): size {} -> {}, still maximal: {}",
            p.dim(),
            r.size_before,
            r.size_after,
            dps::is_maximal_dps(&r.polytope)
        );
        for q in r.polytope.lattice_points() {
            println!("  {q}");
        }
    }
    Ok(())
}
