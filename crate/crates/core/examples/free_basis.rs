//! The special sets `Δ_k`, `E_k`, the sums `f_k`, and the free basis they give.
//!
//! cargo run --example free_basis

use recipmaps::fields::Gf;
use recipmaps::levelmod::ModuleSpace;
use recipmaps::presentation::{coeff_field, special_sets, verify_free_basis, RankEngine};

fn main() {
    let space = ModuleSpace::new(Gf::prime(2).unwrap(), 2, 2);
    let f = coeff_field(&space);
    let sets = special_sets(&space);
    for k in 0..space.r() {
        let delta: Vec<String> = sets.delta[k].iter().map(|m| m.fmt(&space)).collect();
        println!("Delta_{} = {{{}}}", k + 1, delta.join(", "));
        println!("f_{} = {}", k + 1, sets.f[k].fmt(&space, &f));
    }
    let engine = RankEngine::probabilistic(3);
    for d in 1..=3 {
        let rep = verify_free_basis(&engine, &space, d).unwrap();
        println!(
            "d={d}: {} products, rank {}, dim {}, formula {} -> {}",
            rep.cardinality,
            rep.rank,
            rep.dim,
            rep.formula,
            if rep.pass { "basis" } else { "NOT a basis" }
        );
    }
}
