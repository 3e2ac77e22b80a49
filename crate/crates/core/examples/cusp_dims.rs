//! `index·C(d−1, r−1)` next to the dimension of the boundary ideal, where `index = |U|`.
//!
//! cargo run --example cusp_dims

use recipmaps::fields::Gf;
use recipmaps::levelmod::{group_u_order, ModuleSpace};
use recipmaps::presentation::{boundary_ideal, cusp_dim, RankEngine};

fn main() {
    let engine = RankEngine::probabilistic(17);
    for (q, r, n) in [(2, 2, 1), (3, 2, 1), (2, 1, 2)] {
        let space = ModuleSpace::new(Gf::of_order(q).unwrap(), r, n);
        let index = group_u_order(q, r, n);
        for d in 1..=3 {
            let kernel = boundary_ideal(&engine, &space, d).unwrap().dim_kernel;
            println!("({q},{r},{n}) d={d}: formula {} kernel {kernel}", cusp_dim(r, d, index));
        }
    }
}
