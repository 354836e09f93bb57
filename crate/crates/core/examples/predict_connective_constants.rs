//! Connective constants implied by gadget substitution on the hexagonal
//! lattice, repeated substitution, and the fixed point it converges to.

use sawgadget::{
    complete_gadget, compose_chain, fisher, fixed_point, gadget_genfun, iterate_mu, predict_mu_bipartite,
    predict_mu_transformed, MuValue,
};

fn main() -> sawgadget::Result<()> {
    let hex = MuValue::hexagonal();
    println!("hexagonal: {:.12}", hex.value);
    for n in 3..=7 {
        let g = gadget_genfun(&complete_gadget(n)?)?;
        let mu = predict_mu_transformed(&hex, &g)?;
        println!("K{n} at every vertex: {:.12}", mu.value);
    }

    let g = gadget_genfun(&fisher())?;
    let one = predict_mu_bipartite(&hex, &g, None)?;
    println!("triangles on one class: {:.12}", one.value);

    let chain = compose_chain(&[g.clone(), g.clone(), g.clone()])?;
    println!("three nested Fisher steps: {:.12}", predict_mu_transformed(&hex, &chain)?.value);

    let xs = iterate_mu(1.0 / hex.value, &g, 12)?;
    for (k, x) in xs.iter().enumerate() {
        println!("  step {:>2}: mu = {:.12}", k + 1, 1.0 / x);
    }
    let x = fixed_point(&g, 1e-14)?;
    println!("limit 1/x* = {:.12} (golden ratio)", 1.0 / x);
    Ok(())
}
