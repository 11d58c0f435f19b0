//! Searches the plane for size-bounded maximal dps polytopes and tallies
//! their combinatorial types, then reports the type of each catalog example.
//!
//! ```text
//! cargo run --release --example classify_types -- 6
//! ```

use std::collections::BTreeMap;

use dps_lattice::catalog;
use dps_lattice::search::{self, combinatorial_type, SearchSpec};

fn main() -> dps_lattice::Result<()> {
    let size: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let mut spec = SearchSpec::new(2, size);
    spec.collect_all = true;
    spec.symmetry_reduction = false;
    let report = search::min_size_search(&spec)?;
    let summary = search::classify_r2_witnesses(&report)?;
    println!(
        "plane, size <= {size}: {} witnesses, {} match the triangle shape",
        summary.total, summary.matching
    );
    for f in &summary.findings {
        println!("  {f}");
    }
    let mut tally: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for w in &report.witnesses {
        let t = combinatorial_type(w);
        *tally.entry((t.vertices, t.boundary_non_vertices, t.interior)).or_default() += 1;
    }
    for ((v, b, i), k) in tally {
        println!("  vertices {v} boundary {b} interior {i}: {k}");
    }
    for (name, p) in [("example 2", catalog::example2()), ("example 3", catalog::example3())] {
        let t = combinatorial_type(&p);
        println!("{name}: {t:?} all boundary {}", t.all_boundary());
    }
    Ok(())
}
