//! The relations `Rel_v` of `R_n`, and their vanishing at a Carlitz level structure.
//!
//! cargo run --example relations

use recipmaps::drinfeld::constructions::carlitz_t2;
use recipmaps::fields::Ring;
use recipmaps::presentation::{coeff_field, relations};

fn main() {
    let rho = carlitz_t2();
    let space = rho.space().clone();
    let f = coeff_field(&space);
    let k = rho.ring();
    for rel in relations(&space) {
        let value = rel.lc.evaluate(&rho).unwrap();
        println!("Rel_{} = {}  ->  {}", rel.v, rel.lc.fmt(&space, &f), k.fmt_elem(&value));
    }
}
