//! Free submodules by rank, and the stratum of a map extended by zero.
//!
//! cargo run --example strata

use recipmaps::drinfeld::constructions::carlitz_t1;
use recipmaps::fields::Gf;
use recipmaps::levelmod::{free_submodule_count, free_submodules, ModuleSpace};

fn main() {
    for (q, r, n) in [(2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)] {
        let space = ModuleSpace::new(Gf::of_order(q).unwrap(), r, n);
        let counts: Vec<String> = (1..=r)
            .map(|s| format!("s={s}:{}", free_submodules(&space, s).len()))
            .collect();
        let formula: Vec<u64> = (1..=r).map(|s| free_submodule_count(q, r, n, s)).collect();
        println!("({q},{r},{n}) {}  formula {formula:?}", counts.join(" "));
    }

    let big = ModuleSpace::new(Gf::prime(2).unwrap(), 2, 1);
    for w in free_submodules(&big, 1) {
        let (_, table) = w.embedding(&big);
        let rho = carlitz_t1().push_zero(&big, &table);
        let fc = rho.fiber_class().unwrap();
        println!("W = {:?}: rank {}, strata {}", fc.members, fc.rank, fc.strata(&big).len());
    }
}
