//! The universal reciprocal map `v ↦ 1/v` on `F_2^2` and the identities it satisfies.
//!
//! cargo run --example identities

use recipmaps::fields::{Gf, Ring};
use recipmaps::levelmod::ModuleSpace;
use recipmaps::recipmap::{verify_identity, IdentityName, RecipMap};

fn main() {
    let space = ModuleSpace::plain(Gf::prime(2).unwrap(), 2);
    let rho = RecipMap::universal(&space);
    let k = rho.ring();
    for v in space.nonzero() {
        println!("rho({v}) = {}", k.fmt_elem(rho.value(v)));
    }
    println!("axioms hold: {}", rho.check_fq_axioms().ok());

    let tau = rho.exp_poly().expect("the exponential is additive");
    println!("e_rho = {}", tau.fmt(k));

    for name in IdentityName::ALL {
        let rep = verify_identity(name, &rho).unwrap();
        println!("{name:<22} {} ({} cases)", if rep.ok() { "holds" } else { "FAILS" }, rep.cases);
    }
}
