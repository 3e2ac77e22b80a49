//! Invariants under `U` and under the kernel of reduction `GL_r(A/t^n) → GL_r(A/t^{n−1})`.
//!
//! cargo run --example invariants

use recipmaps::fields::Gf;
use recipmaps::levelmod::{group_u, reduction_kernel, ModuleSpace};
use recipmaps::presentation::{dim_formula, invariant_dim, level_image_rank, RankEngine};

fn main() {
    let engine = RankEngine::probabilistic(13);
    let space = ModuleSpace::new(Gf::prime(2).unwrap(), 2, 2);
    let u = group_u(&space);
    println!("|U| = {}", u.order());
    for d in 1..=3 {
        let rep = invariant_dim(&engine, &space, &u, d).unwrap();
        println!("U-invariants d={d}: {} (orbit sums {})", rep.fixed_dim, rep.orbit_sum_dim);
    }
    let h = reduction_kernel(&space, 1);
    println!("|kernel| = {}", h.order());
    for d in 1..=2 {
        let rep = invariant_dim(&engine, &space, &h, d).unwrap();
        let img = level_image_rank(&engine, &space, 1, d).unwrap();
        println!(
            "kernel-invariants d={d}: {}, image of level one {img}, dim R_1 {}",
            rep.fixed_dim,
            dim_formula(2, 2, 1, d)
        );
    }
}
