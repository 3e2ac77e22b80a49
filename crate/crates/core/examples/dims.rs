//! Graded dimensions of `R_n` from the rank engine, next to the closed formula.
//!
//! cargo run --example dims

use recipmaps::fields::Gf;
use recipmaps::levelmod::ModuleSpace;
use recipmaps::presentation::{dim_formula, dim_graded, RankEngine};

fn main() {
    let engine = RankEngine::probabilistic(7);
    println!("q r n | d=1..4");
    for (q, r, n) in [(2, 1, 1), (2, 2, 1), (2, 1, 2), (3, 2, 1), (2, 1, 3)] {
        let space = ModuleSpace::new(Gf::of_order(q).unwrap(), r, n);
        let row: Vec<String> = (1..=4)
            .map(|d| {
                let got = dim_graded(&engine, &space, d).unwrap() as u64;
                let want = dim_formula(q, r, n, d);
                if got == want { got.to_string() } else { format!("{got}!={want}") }
            })
            .collect();
        println!("{q} {r} {n} | {}", row.join(" "));
    }
    let space = ModuleSpace::new(Gf::prime(2).unwrap(), 2, 1);
    let exact = RankEngine::exact();
    println!("exact engine, (2,2,1) d=3: {}", dim_graded(&exact, &space, 3).unwrap());
    if let Some(bound) = engine.failure_bound(&space, 3) {
        println!("probabilistic failure bound per trial at d=3: {bound:.2e}");
    }
}
