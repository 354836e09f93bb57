//! Check Z_0(g(x)) = Z_1(x) coefficient by coefficient: mid-edge walks on a
//! lattice, substituted, against walks on the transformed lattice.

use sawgadget::{
    complete_gadget, cycle_graph, fisher, generalized_fisher, generate_lattice, path_graph, verify_substitution,
    Error, TypeVector,
};

fn main() -> sawgadget::Result<()> {
    let nmax = 10;
    let gadgets = [
        ("K3", fisher()),
        ("K4", complete_gadget(4)?),
        ("gf(P3)", generalized_fisher(&path_graph(3)?, 0, 2)?),
        ("gf(C7,2)", generalized_fisher(&cycle_graph(7)?, 0, 2)?),
    ];
    for lattice in ["6,6,6", "4,8,8", "4,4,inf"] {
        let tv: TypeVector = lattice.parse()?;
        for (name, g) in &gadgets {
            // grow the patch until the walks cannot reach its boundary
            let (radius, report) = (2..)
                .find_map(|r| match verify_substitution(&generate_lattice(&tv, r).ok()?, g, nmax) {
                    Err(Error::BoundaryUnsafe { .. }) => None,
                    other => Some((r, other)),
                })
                .unwrap();
            let report = report?;
            println!(
                "{:<10} {name:<9} radius {radius:>2}  {}  {}",
                tv.to_string(),
                if report.equal { "equal" } else { "MISMATCH" },
                report.rhs
            );
        }
    }
    Ok(())
}
