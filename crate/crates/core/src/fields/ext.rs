//! Simple extensions `B[s]/(m(s))` of a field `B`.

use rand::RngCore;

use super::{Field, FieldError, FunctionField, Gf, Ring};
use crate::symalg::UniPoly;

/// Arithmetic modulo a monic polynomial. The modulus is not checked for
/// irreducibility; inverting a non-unit reports [`FieldError::NonInvertible`].
#[derive(Clone, Debug)]
pub struct ExtensionField<B: Field> {
    base: B,
    name: String,
    modulus: UniPoly<B::Elem>,
}

impl<B: Field> ExtensionField<B> {
    /// `modulus` is given low to high and is made monic.
    pub fn new(base: B, name: &str, modulus: Vec<B::Elem>) -> Result<Self, FieldError> {
        let m = UniPoly::from_coeffs(&base, modulus).monic(&base)?;
        if m.degree().unwrap_or(0) < 1 {
            return Err(FieldError::ReducibleModulus);
        }
        Ok(ExtensionField { base, name: name.to_string(), modulus: m })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    /// The class of the generator `s`.
    pub fn gen(&self) -> UniPoly<B::Elem> {
        self.reduce(UniPoly::x(&self.base))
    }

    pub fn embed(&self, b: &B::Elem) -> UniPoly<B::Elem> {
        UniPoly::constant(&self.base, b.clone())
    }

    /// Element from coefficients in the powers of `s`, low to high.
    pub fn elem(&self, coeffs: Vec<B::Elem>) -> UniPoly<B::Elem> {
        self.reduce(UniPoly::from_coeffs(&self.base, coeffs))
    }

    fn reduce(&self, a: UniPoly<B::Elem>) -> UniPoly<B::Elem> {
        if a.degree().unwrap_or(0) < self.degree() {
            return a;
        }
        a.divrem(&self.modulus, &self.base).expect("monic modulus").1
    }
}

impl<B: Field> Ring for ExtensionField<B> {
    type Elem = UniPoly<B::Elem>;

    fn zero(&self) -> Self::Elem {
        UniPoly::zero()
    }
    fn one(&self) -> Self::Elem {
        UniPoly::constant(&self.base, self.base.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(b, &self.base)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.base)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(a.mul(b, &self.base))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn ground(&self) -> &Gf {
        self.base.ground()
    }
    fn from_fq(&self, x: u64) -> Self::Elem {
        UniPoly::constant(&self.base, self.base.from_fq(x))
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        a.fmt(&self.base, &self.name)
    }
}

impl<B: Field> Field for ExtensionField<B> {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (g, s, _) = a.ext_gcd(&self.modulus, &self.base)?;
        match g.degree() {
            Some(0) => Ok(self.reduce(s)),
            Some(d) => Err(FieldError::NonInvertible(d)),
            None => unreachable!("gcd with a nonzero modulus is nonzero"),
        }
    }
    fn order(&self) -> Option<u128> {
        self.base.order().and_then(|o| o.checked_pow(self.degree() as u32))
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Result<Self::Elem, FieldError> {
        let coeffs = (0..self.degree())
            .map(|_| self.base.sample(rng))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::from_coeffs(&self.base, coeffs))
    }
}

impl<B: FunctionField> FunctionField for ExtensionField<B> {
    fn t(&self) -> Self::Elem {
        self.embed(&self.base.t())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::laws::check_triple;
    use crate::fields::RatFuncField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn carlitz_t2_field() -> ExtensionField<RatFuncField> {
        let k = RatFuncField::new(Gf::prime(2).unwrap());
        let t = k.t();
        ExtensionField::new(k.clone(), "s", vec![t.clone(), t, k.one()]).unwrap()
    }

    #[test]
    fn invert_generator() {
        let e = carlitz_t2_field();
        let k = e.base().clone();
        let s = e.gen();
        let expected = e.elem(vec![k.one(), k.t_pow(-1)]);
        assert_eq!(e.inv(&s).unwrap(), expected);
        assert_eq!(e.inv(&e.one()).unwrap(), e.one());
    }

    #[test]
    fn reducible_modulus_detected() {
        let k = RatFuncField::new(Gf::prime(2).unwrap());
        let t2 = k.t_pow(2);
        let e = ExtensionField::new(k.clone(), "s", vec![t2, k.zero(), k.one()]).unwrap();
        let s_plus_t = e.add(&e.gen(), &e.t());
        assert_eq!(e.inv(&s_plus_t).unwrap_err(), FieldError::NonInvertible(1));
    }

    #[test]
    fn finite_extension_inverts_everything() {
        let f = Gf::prime(3).unwrap();
        // x^3 - x - 1 is irreducible over GF(3).
        let e = ExtensionField::new(f.clone(), "s", vec![2, 2, 0, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = 0;
        while seen < 100 {
            let a = e.sample(&mut rng).unwrap();
            let b = e.sample(&mut rng).unwrap();
            let c = e.sample(&mut rng).unwrap();
            check_triple(&e, &a, &b, &c);
            if !e.is_zero(&a) {
                assert!(e.is_one(&e.mul(&a, &e.inv(&a).unwrap())));
                seen += 1;
            }
        }
    }
}
