//! Self-avoiding walk counts and mean-square end-to-end distance on the
//! hexagonal lattice, with crude connective-constant estimates.
//!
//!     cargo run --release --example enumerate_hexagonal -- 20

use sawgadget::{estimate_mu_from_series, generate_lattice, TypeVector, VertexQuery};

fn main() -> sawgadget::Result<()> {
    let nmax: usize = std::env::args().nth(1).map_or(16, |s| s.parse().expect("nmax"));
    let patch = generate_lattice(&TypeVector::hexagonal(), nmax as u32 + 2)?;
    let mut query = VertexQuery::new(patch.origin(), nmax);
    query.moments = true;
    let series = query.run(&patch)?;
    let est = estimate_mu_from_series(&series)?;
    println!("{:>3} {:>14} {:>10} {:>9} {:>9}", "n", "c_n", "<R^2>", "root", "ratio");
    for n in 1..=nmax {
        println!(
            "{n:>3} {:>14} {:>10.4} {:>9.5} {:>9.5}",
            series.counts()[n],
            series.mean_square_distance(n).unwrap_or(f64::NAN),
            est.roots[n - 1],
            est.ratios[n - 1]
        );
    }
    println!("exact: sqrt(2 + sqrt(2)) = {:.5}", (2.0 + 2f64.sqrt()).sqrt());
    Ok(())
}
