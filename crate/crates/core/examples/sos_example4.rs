//! Forced Gram matrix, exact psd test and grid sampling for the
//! sextic `x1^4 x3^2 + x1^2 x2^4 + x2^2 x3^4 - 3 x1^2 x2^2 x3^2`, plus the
//! sum-of-squares decomposition of `h_P` for the triangle example.
//!
//! ```text
//! cargo run --release --example sos_example4
//! ```

use dps_lattice::catalog;
use dps_lattice::linalg::rat_i64;
use dps_lattice::sospoly::{self, SosVerdict};

fn main() -> dps_lattice::Result<()> {
    let p = catalog::example4_polynomial();
    println!("p = {p}");
    let cage = sospoly::newton_cage(&p)?;
    println!("half cage points: {}", cage.half.num_lattice_points());
    let g = sospoly::forced_gram(&p)?;
    println!("status {:?}, support {:?}", g.status, g.support.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    if let Some(a) = &g.forced_matrix {
        for row in a {
            println!("  {}", row.iter().map(|x| format!("{x:>3}")).collect::<Vec<_>>().join(" "));
        }
        let r = sospoly::psd_check_exact(a)?;
        match r.psd {
            true => println!("psd, rank {}", r.rank),
            false => println!("not psd"),
        }
    }
    println!("verdict: {:?}", sospoly::sos_verdict(&p)?.label());
    let m = sospoly::grid_min(&p, &rat_i64(2), 8)?;
    println!("grid minimum {} at {:?}", m.value, m.argmin.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let h = sospoly::build_hp(&catalog::example1())?;
    println!("\nh_P = {h}");
    if let SosVerdict::SosWithCount { count, squares } = sospoly::sos_verdict(&h)? {
        println!("sum of {count} squares:");
        for s in squares {
            println!("  {} * ({})^2", s.weight, s.base);
        }
    }
    Ok(())
}
