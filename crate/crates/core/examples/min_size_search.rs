//! Exhaustive search for the smallest maximal dps polytopes.
//!
//! ```text
//! cargo run --release --example min_size_search -- 3 5
//! ```

use dps_lattice::search::{min_size_search, SearchSpec};

fn main() -> dps_lattice::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().ok());
    let dim = args.next().flatten().unwrap_or(3) as usize;
    let top = args.next().flatten().unwrap_or(5);
    for size in 0..=top {
        let mut spec = SearchSpec::new(dim, size);
        spec.symmetry_reduction = true;
        let report = min_size_search(&spec)?;
        println!(
            "dim={dim} size<={size}: {} witnesses up to coordinate permutation, {} nodes, {:?}",
            report.witnesses.len(),
            report.nodes_explored,
            report.elapsed
        );
        if let Some(w) = report.witnesses.first() {
            let pts: Vec<String> = w.generators().iter().map(ToString::to_string).collect();
            println!("  first: {}", pts.join(" "));
            break;
        }
    }
    Ok(())
}
