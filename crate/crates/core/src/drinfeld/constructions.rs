//! Small explicit reciprocal maps over function fields of characteristic 2.

use crate::fields::{ExtensionField, Field, FunctionField, Gf, RatFuncField, Ring, TranscendentalField};
use crate::levelmod::ModuleSpace;
use crate::recipmap::RecipMap;

pub type CarlitzT2Field = ExtensionField<RatFuncField>;
pub type GenericField = TranscendentalField<RatFuncField>;

fn f2() -> Gf {
    Gf::prime(2).expect("2 is prime")
}

/// Carlitz module with level `(t)` over `F_2(t)`: `ρ([t^{-1}]) = 1/t`.
pub fn carlitz_t1() -> RecipMap<RatFuncField> {
    let k = RatFuncField::new(f2());
    let space = ModuleSpace::new(f2(), 1, 1);
    RecipMap::from_table(space, k.clone(), vec![k.zero(), k.t_pow(-1)])
}

/// Carlitz module with level `(t^2)` over `F_2(t)[s]/(s² + ts + t)`, where
/// `s` is a root of `φ_t(X) = t`: `λ(t^{-1}) = t`, `λ(t^{-2}) = s`.
pub fn carlitz_t2() -> RecipMap<CarlitzT2Field> {
    let base = RatFuncField::new(f2());
    let t = base.t();
    let k = ExtensionField::new(base.clone(), "s", vec![t.clone(), t, base.one()]).expect("monic modulus");
    let space = ModuleSpace::new(f2(), 1, 2);
    let s = k.gen();
    let lam = [k.zero(), k.t(), s.clone(), k.add(&s, &k.t())];
    let values = lam.iter().map(|l| if k.is_zero(l) { k.zero() } else { k.inv(l).expect("unit") }).collect();
    RecipMap::from_table(space, k, values)
}

/// Rank 2, level `(t)`, `λ(X_1) = u`, `λ(X_2) = w` with `u, w` transcendental.
pub fn generic_rank2() -> RecipMap<GenericField> {
    let k = TranscendentalField::new(RatFuncField::new(f2()), &["u", "w"]);
    let space = ModuleSpace::new(f2(), 2, 1);
    RecipMap::from_linear(&space, &k, &[k.gen(0), k.gen(1)]).expect("u, w, u+w are nonzero")
}

/// The level-`(t)` Carlitz map extended by zero along `b ↦ X_1 + X_2` into rank 2.
pub fn extension_by_zero() -> RecipMap<RatFuncField> {
    let space = ModuleSpace::new(f2(), 2, 1);
    let x = space.add(space.basis_elem(1, 1), space.basis_elem(2, 1));
    carlitz_t1().push_zero(&space, &[0, x])
}
