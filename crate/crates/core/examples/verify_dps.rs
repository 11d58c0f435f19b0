//! Runs all three dps checkers on the catalog polytopes and a few
//! non-examples, printing each verdict and witness.
//!
//! ```text
//! cargo run --example verify_dps
//! ```

use dps_lattice::catalog;
use dps_lattice::dps::{self, Checker};
use dps_lattice::lattice::LatticePolytope;

fn main() -> dps_lattice::Result<()> {
    let cases = [
        ("example 1", catalog::example1()),
        ("example 2", catalog::example2()),
        ("example 2 projected", catalog::example2_projected()),
        ("example 3", catalog::example3()),
        ("unit square", LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?),
        ("segment of length 2", LatticePolytope::from_i64(&[&[0, 0], &[2, 0]])?),
    ];
    for (name, p) in &cases {
        let l = p.lattice_points();
        println!("{name}: {} lattice points, maximal={}", l.len(), dps::is_maximal_dps(p));
        for c in Checker::ALL {
            let v = c.check(l);
            match &v.witness {
                None => println!("  {:<9} dps", c.name()),
                Some(w) => println!("  {:<9} fails: {w}", c.name()),
            }
        }
    }
    Ok(())
}
