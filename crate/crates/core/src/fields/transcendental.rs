//! Purely transcendental extensions `B(u_1, …, u_k)`.

use rand::RngCore;

use super::{Field, FieldError, FunctionField, Gf, Ring};
use crate::symalg::SparsePoly;

/// `num/den` with gcd one and lex-monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransElem<E> {
    num: SparsePoly<E>,
    den: SparsePoly<E>,
}

impl<E> TransElem<E> {
    pub fn numerator(&self) -> &SparsePoly<E> {
        &self.num
    }
    pub fn denominator(&self) -> &SparsePoly<E> {
        &self.den
    }
}

#[derive(Clone, Debug)]
pub struct TranscendentalField<B: Field> {
    base: B,
    names: Vec<String>,
}

impl<B: Field> TranscendentalField<B> {
    pub fn new(base: B, names: &[&str]) -> Self {
        TranscendentalField { base, names: names.iter().map(|s| s.to_string()).collect() }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    /// The generator `u_i`.
    pub fn gen(&self, i: usize) -> TransElem<B::Elem> {
        TransElem {
            num: SparsePoly::var(&self.base, self.nvars(), i),
            den: SparsePoly::one(&self.base, self.nvars()),
        }
    }

    pub fn embed(&self, b: &B::Elem) -> TransElem<B::Elem> {
        self.frac(
            SparsePoly::constant(&self.base, self.nvars(), b.clone()),
            SparsePoly::one(&self.base, self.nvars()),
        )
        .expect("nonzero denominator")
    }

    pub fn frac(
        &self,
        num: SparsePoly<B::Elem>,
        den: SparsePoly<B::Elem>,
    ) -> Result<TransElem<B::Elem>, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(num, den))
    }

    fn normalize(&self, num: SparsePoly<B::Elem>, den: SparsePoly<B::Elem>) -> TransElem<B::Elem> {
        let f = &self.base;
        if num.is_zero() {
            return TransElem { num, den: SparsePoly::one(f, self.nvars()) };
        }
        let g = num.gcd(&den, f);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g, f).expect("gcd divides"), den.div_exact(&g, f).expect("gcd divides"))
        };
        let lead = d.leading().expect("nonzero").1.clone();
        if !f.is_one(&lead) {
            let inv = f.inv(&lead).expect("nonzero");
            n = n.scale(&inv, f);
            d = d.scale(&inv, f);
        }
        TransElem { num: n, den: d }
    }
}

impl<B: Field> Ring for TranscendentalField<B> {
    type Elem = TransElem<B::Elem>;

    fn zero(&self) -> Self::Elem {
        TransElem { num: SparsePoly::zero(self.nvars()), den: SparsePoly::one(&self.base, self.nvars()) }
    }
    fn one(&self) -> Self::Elem {
        TransElem {
            num: SparsePoly::one(&self.base, self.nvars()),
            den: SparsePoly::one(&self.base, self.nvars()),
        }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        if a.den == b.den {
            return self.normalize(a.num.add(&b.num, f), a.den.clone());
        }
        let num = a.num.mul(&b.den, f).add(&b.num.mul(&a.den, f), f);
        self.normalize(num, a.den.mul(&b.den, f))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TransElem { num: a.num.neg(&self.base), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        self.normalize(a.num.mul(&b.num, f), a.den.mul(&b.den, f))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn ground(&self) -> &Gf {
        self.base.ground()
    }
    fn from_fq(&self, x: u64) -> Self::Elem {
        self.embed(&self.base.from_fq(x))
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let n = a.num.fmt(&self.base, &self.names);
        if a.den.is_constant() {
            return n;
        }
        let d = a.den.fmt(&self.base, &self.names);
        let wrap = |s: String| if s.contains(['+', '·']) { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl<B: Field> Field for TranscendentalField<B> {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if a.num.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(a.den.clone(), a.num.clone()))
    }
    fn order(&self) -> Option<u128> {
        None
    }
    fn sample(&self, _rng: &mut dyn RngCore) -> Result<Self::Elem, FieldError> {
        Err(FieldError::InfiniteField)
    }
}

impl<B: FunctionField> FunctionField for TranscendentalField<B> {
    fn t(&self) -> Self::Elem {
        self.embed(&self.base.t())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::laws::check_triple;
    use crate::fields::RatFuncField;
    use proptest::prelude::*;

    fn field() -> TranscendentalField<RatFuncField> {
        TranscendentalField::new(RatFuncField::new(Gf::prime(2).unwrap()), &["u", "w"])
    }

    #[test]
    fn cancellation_is_canonical() {
        let k = field();
        let (u, w) = (k.gen(0), k.gen(1));
        let uw = k.add(&u, &w);
        let a = k.div(&k.mul(&uw, &u), &k.mul(&uw, &w)).unwrap();
        assert_eq!(a, k.div(&u, &w).unwrap());
        let x = k.add(&k.inv(&u).unwrap(), &k.inv(&w).unwrap());
        assert_eq!(x, k.div(&uw, &k.mul(&u, &w)).unwrap());
    }

    proptest! {
        #[test]
        fn axioms(a in prop::collection::vec((0u32..2, 0u32..2, 0i64..3), 1..3),
                  b in prop::collection::vec((0u32..2, 0u32..2, 0i64..3), 1..3),
                  c in prop::collection::vec((0u32..2, 0u32..2, 0i64..3), 1..3)) {
            let k = field();
            let base = k.base().clone();
            let mk = |v: &[(u32, u32, i64)]| {
                let p = SparsePoly::from_terms(&base, 2, v.iter().map(|&(i, j, e)| (vec![i, j], base.t_pow(e))));
                let d = SparsePoly::from_terms(&base, 2, [(vec![0, 0], base.one()), (vec![1, 0], base.t())]);
                k.frac(p, d).unwrap()
            };
            check_triple(&k, &mk(&a), &mk(&b), &mk(&c));
        }
    }
}
