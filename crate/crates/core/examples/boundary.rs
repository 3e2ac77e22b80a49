//! Boundary ideals: the kernel of restriction to every proper free submodule,
//! against the span of explicit generators.
//!
//! cargo run --example boundary

use recipmaps::fields::Gf;
use recipmaps::levelmod::ModuleSpace;
use recipmaps::presentation::{boundary_ideal, iv_ideal, RankEngine};

fn main() {
    let engine = RankEngine::probabilistic(11);
    let plain = ModuleSpace::plain(Gf::prime(3).unwrap(), 2);
    for d in 1..=4 {
        let rep = iv_ideal(&engine, &plain, d).unwrap();
        println!(
            "plain F_3^2 d={d}: kernel {}, generators {} (from {}), expected {}",
            rep.dim_kernel, rep.dim_generators, rep.generator_count, rep.expected
        );
    }
    for (r, n, dmax) in [(2, 1, 3), (1, 2, 3), (2, 2, 2)] {
        let space = ModuleSpace::new(Gf::prime(2).unwrap(), r, n);
        for d in 1..=dmax {
            let rep = boundary_ideal(&engine, &space, d).unwrap();
            println!(
                "(2,{r},{n}) d={d}: kernel {}, generators {}, inside {}, expected {}",
                rep.dim_kernel, rep.dim_generators, rep.generators_in_kernel, rep.expected
            );
        }
    }
}
