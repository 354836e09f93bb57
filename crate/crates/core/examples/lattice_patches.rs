//! Build a patch of each supported lattice and print its shape.
//!
//!     cargo run --example lattice_patches -- 5

use sawgadget::{classify, generate_lattice, TypeVector};

fn main() -> sawgadget::Result<()> {
    let radius: u32 = std::env::args().nth(1).map_or(5, |s| s.parse().expect("radius"));
    for name in ["6,6,6", "3,12,12", "4,6,12", "4,8,8", "4,4,inf"] {
        let tv: TypeVector = name.parse()?;
        let patch = generate_lattice(&tv, radius)?;
        let safe = patch.safe_walk_length().finite().unwrap_or(0);
        println!(
            "{:<12} {:?}  vertices {:>5}  edges {:>5}  bipartite {:<5}  safe walk length {safe}",
            tv.to_string(),
            classify(&tv),
            patch.vertex_count(),
            patch.edge_count(),
            patch.colours().is_some(),
        );
    }
    Ok(())
}
