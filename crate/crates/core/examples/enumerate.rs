//! Lists the lattice points of a polytope given by integer vertices, with
//! each point's position relative to the hull.
//!
//! ```text
//! cargo run --example enumerate -- "0,0 4,1 1,3"
//! ```

use dps_lattice::lattice::{LatticePoint, LatticePolytope};

fn parse(arg: &str) -> Vec<LatticePoint> {
    arg.split_whitespace()
        .map(|p| {
            let c: Vec<i64> = p.split(',').map(|x| x.trim().parse().expect("integer coordinate")).collect();
            LatticePoint::from_i64(&c)
        })
        .collect()
}

fn main() -> dps_lattice::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "0,0 4,1 1,3".into());
    let p = LatticePolytope::new(parse(&arg))?;
    println!("vertices: {:?}", p.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("affine dim {}, size {}", p.affine_dim(), p.size()?);
    for (q, class) in p.classify_lattice_points() {
        println!("  {q} {class:?}");
    }
    println!("{} lattice points", p.num_lattice_points());
    Ok(())
}
