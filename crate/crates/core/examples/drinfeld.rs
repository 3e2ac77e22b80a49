//! Drinfeld modules from reciprocal maps, and back.
//!
//! cargo run --example drinfeld

use recipmaps::drinfeld::constructions::{carlitz_t1, carlitz_t2, generic_rank2};
use recipmaps::drinfeld::{level_from_recip, phi_from_recip, recip_from_level, torsion_check};
use recipmaps::fields::Ring;

fn main() {
    let rho = carlitz_t1();
    let phi = phi_from_recip(&rho).unwrap();
    println!("level (t):   phi_t = {}", phi.phi_t().fmt(rho.ring()));

    let rho = carlitz_t2();
    let k = rho.ring();
    let data = level_from_recip(&rho).unwrap();
    println!("level (t^2): phi_t = {}", data.phi.phi_t().fmt(k));
    for v in rho.space().elements() {
        println!("  lambda({v}) = {}", k.fmt_elem(data.lambda(v).unwrap()));
    }
    torsion_check(&data, rho.space()).unwrap();
    let space = rho.space().clone();
    let lambda: Vec<_> = space.elements().map(|v| data.lambda(v).unwrap().clone()).collect();
    let id: Vec<u64> = space.elements().collect();
    let back = recip_from_level(&data.phi, &space, &lambda, &space, &id).unwrap();
    println!("  roundtrip recovers rho: {}", back.values() == rho.values());

    let rho = generic_rank2();
    let data = level_from_recip(&rho).unwrap();
    println!("generic rank 2: phi_t = {}", data.phi.phi_t().fmt(rho.ring()));
    println!("  rank check: {}", data.phi.check_rank(2).ok());
}
