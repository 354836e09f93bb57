//! Complete-graph and generalized Fisher gadgets with their two-port series.

use sawgadget::{
    complete_gadget, cycle_graph, gadget_genfun, generalized_fisher, path_graph, two_terminal_series,
    validate_gadget, Gadget,
};

fn show(name: &str, g: &Gadget) -> sawgadget::Result<()> {
    let report = validate_gadget(g)?;
    println!(
        "{name:<10} {:>3} vertices  |Aut| = {:<5} port transitive: {:<5}  g(x) = {}",
        g.vertex_count(),
        report.automorphism_count,
        report.port_transitive,
        gadget_genfun(g)?
    );
    Ok(())
}

fn main() -> sawgadget::Result<()> {
    for n in 3..=7 {
        show(&format!("K{n}"), &complete_gadget(n)?)?;
    }
    // three copies of H glued in a ring; g = f + f^2 / x
    for (name, h, v2) in [("P3", path_graph(3)?, 2), ("C6, k=2", cycle_graph(6)?, 2), ("C7, k=2", cycle_graph(7)?, 2)] {
        println!("{name:<10} f_H(x) = {}", two_terminal_series(&h, 0, v2)?);
        show(&format!("gf({name})"), &generalized_fisher(&h, 0, v2)?)?;
    }
    Ok(())
}
