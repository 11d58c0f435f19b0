//! Extends small dps sets to maximal dps polytopes inside a coordinate box.
//!
//! ```text
//! cargo run --release --example extend_probe -- 3
//! ```

use dps_lattice::lattice::LatticePolytope;
use dps_lattice::search::extend_to_maximal;

fn main() -> dps_lattice::Result<()> {
    let region: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let seeds = [
        LatticePolytope::from_i64(&[&[0, 0]])?,
        LatticePolytope::from_i64(&[&[0, 0], &[1, 2]])?,
        LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])?,
        LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 2, 3]])?,
    ];
    for p in &seeds {
        let r = extend_to_maximal(p, region)?;
        let from: Vec<String> = p.lattice_points().iter().map(|q| q.to_string()).collect();
        match r.extension {
            Some(e) => {
                let to: Vec<String> = e.lattice_points().iter().map(|q| q.to_string()).collect();
                println!("{from:?} -> {to:?} ({} nodes)", r.nodes_explored);
            }
            None => println!("{from:?} -> none within {region} ({} nodes)", r.nodes_explored),
        }
    }
    Ok(())
}
