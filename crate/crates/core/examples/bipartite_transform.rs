//! Transform one colour class of the hexagonal lattice and compare the
//! series against the colour-refined count Z(g_1, g_2).

use sawgadget::{
    complete_gadget, count_colour_refined, fisher, generate_lattice, origin_edges, transform_colour_class,
    verify_bipartite_substitution, TypeVector,
};

fn main() -> sawgadget::Result<()> {
    let hex = generate_lattice(&TypeVector::hexagonal(), 9)?;

    let table = count_colour_refined(&hex, &origin_edges(&hex), 6)?;
    println!("walks by black and white vertices visited:");
    for b in 0..=3 {
        let row: Vec<String> = (0..=3).map(|w| format!("{:>4}", table.get(b, w))).collect();
        println!("  b={b}: {}", row.join(""));
    }

    let tp = transform_colour_class(&hex, &fisher(), None)?;
    println!(
        "black sites replaced by triangles: {} -> {} vertices",
        hex.vertex_count(),
        tp.patch.vertex_count()
    );

    for (label, white) in [("triangles on black", None), ("triangles and K4s", Some(complete_gadget(4)?))] {
        let report = verify_bipartite_substitution(&hex, &fisher(), white.as_ref(), 10)?;
        println!("{label:<20} equal through degree {}: {}", report.degree, report.equal);
        println!("  C(x) = {}", report.rhs);
    }
    Ok(())
}
