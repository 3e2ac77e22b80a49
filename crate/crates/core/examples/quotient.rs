//! Killing the generators `[1/v']` for `v'` in a coordinate subspace.
//!
//! cargo run --example quotient

use recipmaps::fields::Gf;
use recipmaps::levelmod::ModuleSpace;
use recipmaps::presentation::{js_quotient, RankEngine};

fn main() {
    let engine = RankEngine::probabilistic(5);
    let space = ModuleSpace::plain(Gf::prime(2).unwrap(), 3);
    for s in 0..=3 {
        let dims: Vec<String> = (1..=3)
            .map(|d| {
                let rep = js_quotient(&engine, &space, s, d).unwrap();
                format!("{}{}", rep.computed, if rep.pass { "" } else { "?" })
            })
            .collect();
        println!("s={s}: d=1..3 -> {}", dims.join(" "));
    }
}
