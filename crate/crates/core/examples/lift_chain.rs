//! Builds maximal dps polytopes dimension by dimension through repeated lifts.
//!
//! ```text
//! cargo run --release --example lift_chain -- 6
//! ```

use std::time::Instant;

use dps_lattice::construct::{maximal_dps_with, BaseChoice};

fn main() -> dps_lattice::Result<()> {
    let top: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    for n in 1..=top {
        let start = Instant::now();
        let (p, cert) = maximal_dps_with(n, BaseChoice::Paper)?;
        let max_coord = p
            .generators()
            .iter()
            .flat_map(|g| g.coords().iter().cloned())
            .max()
            .unwrap_or_default();
        println!(
            "n={n} lattice_points={} max_coord={} {:?}",
            p.num_lattice_points(),
            max_coord,
            start.elapsed()
        );
        if let Some(c) = cert {
            println!("  R={} M={}", c.radius, c.matrix);
        }
    }
    Ok(())
}
