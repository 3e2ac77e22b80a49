//! Exact coefficient arithmetic.
//!
//! Every ring here is an algebra over a fixed finite field `F_q`. Elements
//! are plain values; the operations live on a context object implementing
//! [`Ring`] (and [`Field`] when inverses exist).

mod ext;
mod gf;
mod primepoly;
mod ratfunc;
mod transcendental;

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;
use thiserror::Error;

pub use ext::ExtensionField;
pub use gf::{prime_power, EvalField, Gf};
pub use ratfunc::{RatFunc, RatFuncField};
pub use transcendental::{TransElem, TranscendentalField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible (gcd with modulus has degree {0})")]
    NonInvertible(usize),
    #[error("cannot sample uniformly from an infinite field")]
    InfiniteField,
    #[error("a denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("field of order {0} is too large")]
    TooLarge(u128),
}

/// A commutative `F_q`-algebra with canonical (structurally comparable) elements.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// The ground field `F_q` this ring is an algebra over.
    fn ground(&self) -> &Gf;
    /// Image of an element of the ground field.
    fn from_fq(&self, x: u64) -> Self::Elem;

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        let g = self.ground();
        self.from_fq(g.from_int(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `y[j] -= c·x[j]` for all `j`; the elimination inner loop.
    fn axpy(&self, y: &mut [Self::Elem], c: &Self::Elem, x: &[Self::Elem]) {
        for (a, b) in y.iter_mut().zip(x) {
            if !self.is_zero(b) {
                *a = self.sub(a, &self.mul(c, b));
            }
        }
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u128>;

    /// Uniform sample; only finite fields support this.
    fn sample(&self, rng: &mut dyn RngCore) -> Result<Self::Elem, FieldError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if self.is_zero(b) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn characteristic(&self) -> u64 {
        self.ground().p()
    }
}

/// A field containing `F_q(t)` with `t` mapping to itself.
pub trait FunctionField: Field {
    fn t(&self) -> Self::Elem;

    fn from_ratfunc(&self, x: &RatFunc) -> Result<Self::Elem, FieldError> {
        let t = self.t();
        let num = horner(self, &x.num, &t);
        let den = horner(self, &x.den, &t);
        self.div(&num, &den)
    }
}

/// Rings in which some elements have a known inverse.
pub trait TryInv: Ring {
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

macro_rules! field_try_inv {
    ($($t:ty $(, $g:ident)?);*) => {$(
        impl$(<$g: Field>)? TryInv for $t {
            fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
                self.inv(a).ok()
            }
        }
    )*};
}
field_try_inv!(Gf; EvalField; RatFuncField; ExtensionField<B>, B; TranscendentalField<B>, B);

/// Coefficient fields that can be specialized into a field over the same
/// `F_q`, sending `t` to a chosen value.
pub trait Specialize: Field {
    fn specialize<K: Field>(
        &self,
        x: &Self::Elem,
        target: &K,
        t_value: &K::Elem,
    ) -> Result<K::Elem, FieldError>;
}

fn horner<R: Ring>(ring: &R, coeffs: &[u64], x: &R::Elem) -> R::Elem {
    let mut acc = ring.zero();
    for c in coeffs.iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), &ring.from_fq(*c));
    }
    acc
}

impl Specialize for Gf {
    fn specialize<K: Field>(&self, x: &u64, target: &K, _t: &K::Elem) -> Result<K::Elem, FieldError> {
        Ok(target.from_fq(*x))
    }
}

impl Specialize for RatFuncField {
    fn specialize<K: Field>(
        &self,
        x: &RatFunc,
        target: &K,
        t_value: &K::Elem,
    ) -> Result<K::Elem, FieldError> {
        let num = horner(target, &x.num, t_value);
        let den = horner(target, &x.den, t_value);
        if target.is_zero(&den) {
            return Err(FieldError::DenominatorVanishes);
        }
        target.div(&num, &den)
    }
}

#[cfg(test)]
pub(crate) mod laws {
    //! Shared field-axiom checks used by the per-field property tests.
    use super::*;

    pub fn check_triple<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert!(f.is_zero(&f.sub(a, a)));
        if !f.is_zero(a) {
            let ai = f.inv(a).unwrap();
            assert!(f.is_one(&f.mul(a, &ai)));
        }
    }
}
