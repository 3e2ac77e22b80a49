//! Rational functions whose denominators are products of linear forms.

use std::collections::BTreeMap;

use rand::RngCore;

use crate::fields::{Field, FieldError, Gf, Ring, Specialize, TryInv};

use super::{LinearForm, SparsePoly};

/// `num / ∏ ℓ^e`, kept fully reduced: no denominator form divides `num`.
/// With canonical forms this makes the representation unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational<E> {
    num: SparsePoly<E>,
    den: BTreeMap<LinearForm, u32>,
}

impl<E> FactoredRational<E> {
    pub fn numerator(&self) -> &SparsePoly<E> {
        &self.num
    }
    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.den
    }
}

/// The ring of such fractions in `nvars` variables over the coefficient field `C`.
#[derive(Clone, Debug)]
pub struct FrRing<C: Field> {
    coeff: C,
    nvars: usize,
    names: Vec<String>,
}

impl<C: Field> FrRing<C> {
    pub fn new(coeff: C, nvars: usize) -> Self {
        let names = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
        FrRing { coeff, nvars, names }
    }

    pub fn with_names(coeff: C, names: Vec<String>) -> Self {
        FrRing { coeff, nvars: names.len(), names }
    }

    pub fn coeff_field(&self) -> &C {
        &self.coeff
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn poly(&self, p: SparsePoly<C::Elem>) -> FactoredRational<C::Elem> {
        FactoredRational { num: p, den: BTreeMap::new() }
    }

    pub fn scalar(&self, c: C::Elem) -> FactoredRational<C::Elem> {
        self.poly(SparsePoly::constant(&self.coeff, self.nvars, c))
    }

    /// The linear polynomial with the given `F_q` coefficients.
    pub fn linear(&self, v: &[u64]) -> FactoredRational<C::Elem> {
        match LinearForm::from_vector(self.coeff.ground(), v) {
            None => self.zero(),
            Some((s, l)) => self.poly(l.to_poly(&self.coeff).scale(&self.coeff.from_fq(s), &self.coeff)),
        }
    }

    /// `1 / Σ v_i x_i`; `None` when `v = 0`.
    pub fn recip_linear(&self, v: &[u64]) -> Option<FactoredRational<C::Elem>> {
        let gf = self.coeff.ground();
        let (s, l) = LinearForm::from_vector(gf, v)?;
        let num = SparsePoly::constant(&self.coeff, self.nvars, self.coeff.from_fq(gf.inv_e(s)));
        Some(FactoredRational { num, den: BTreeMap::from([(l, 1)]) })
    }

    /// Inverse of a fraction whose numerator is a nonzero constant times a
    /// product of linear forms; only the monomial-in-forms case is supported.
    pub fn inv_monomial(&self, a: &FactoredRational<C::Elem>) -> Option<FactoredRational<C::Elem>> {
        if !a.num.is_constant() || a.num.is_zero() {
            return None;
        }
        let c = a.num.leading()?.1.clone();
        let ci = self.coeff.inv(&c).ok()?;
        let mut num = SparsePoly::constant(&self.coeff, self.nvars, ci);
        for (l, &e) in &a.den {
            num = num.mul(&l.to_poly(&self.coeff).pow(e, &self.coeff), &self.coeff);
        }
        Some(FactoredRational { num, den: BTreeMap::new() })
    }

    fn reduce(&self, mut num: SparsePoly<C::Elem>, den: BTreeMap<LinearForm, u32>) -> FactoredRational<C::Elem> {
        if num.is_zero() {
            return self.zero();
        }
        let mut out = BTreeMap::new();
        for (l, mut e) in den {
            if !num.is_constant() {
                let lp = l.to_poly(&self.coeff);
                while e > 0 {
                    match num.div_exact(&lp, &self.coeff) {
                        Some(qt) => {
                            num = qt;
                            e -= 1;
                        }
                        None => break,
                    }
                }
            }
            if e > 0 {
                out.insert(l, e);
            }
        }
        FactoredRational { num, den: out }
    }

    /// Evaluates at a point after sending coefficients (and `t`) into `target`.
    pub fn eval<K: Field>(
        &self,
        a: &FactoredRational<C::Elem>,
        target: &K,
        point: &[K::Elem],
        t_value: &K::Elem,
    ) -> Result<K::Elem, FieldError>
    where
        C: Specialize,
    {
        let mut den = target.one();
        for (l, &e) in &a.den {
            let v = l.eval(target, point);
            if target.is_zero(&v) {
                return Err(FieldError::DenominatorVanishes);
            }
            den = target.mul(&den, &target.pow(&v, e as u64));
        }
        let mut num = target.zero();
        for (exps, c) in a.num.terms() {
            let mut v = self.coeff.specialize(c, target, t_value)?;
            for (x, &k) in point.iter().zip(exps) {
                if k > 0 {
                    v = target.mul(&v, &target.pow(x, k as u64));
                }
            }
            num = target.add(&num, &v);
        }
        target.div(&num, &den)
    }

    /// Cross-multiplication test, independent of the reduced form.
    pub fn cross_equal(&self, a: &FactoredRational<C::Elem>, b: &FactoredRational<C::Elem>) -> bool {
        let f = &self.coeff;
        let mut lhs = a.num.clone();
        for (l, &e) in &b.den {
            lhs = lhs.mul(&l.to_poly(f).pow(e, f), f);
        }
        let mut rhs = b.num.clone();
        for (l, &e) in &a.den {
            rhs = rhs.mul(&l.to_poly(f).pow(e, f), f);
        }
        lhs == rhs
    }
}

impl<C: Field> TryInv for FrRing<C> {
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inv_monomial(a)
    }
}

impl<C: Field> Ring for FrRing<C> {
    type Elem = FactoredRational<C::Elem>;

    fn zero(&self) -> Self::Elem {
        FactoredRational { num: SparsePoly::zero(self.nvars), den: BTreeMap::new() }
    }
    fn one(&self) -> Self::Elem {
        self.scalar(self.coeff.one())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.coeff;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            return self.reduce(a.num.add(&b.num, f), a.den.clone());
        }
        let mut lcm = a.den.clone();
        for (l, &e) in &b.den {
            let x = lcm.entry(l.clone()).or_insert(0);
            *x = (*x).max(e);
        }
        let lift = |x: &Self::Elem| {
            let mut n = x.num.clone();
            for (l, &e) in &lcm {
                let have = x.den.get(l).copied().unwrap_or(0);
                if e > have {
                    n = n.mul(&l.to_poly(f).pow(e - have, f), f);
                }
            }
            n
        };
        let num = lift(a).add(&lift(b), f);
        self.reduce(num, lcm)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        FactoredRational { num: a.num.neg(&self.coeff), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let mut den = a.den.clone();
        for (l, &e) in &b.den {
            *den.entry(l.clone()).or_insert(0) += e;
        }
        let num = a.num.mul(&b.num, &self.coeff);
        if a.num.is_constant() && b.num.is_constant() {
            return FactoredRational { num, den };
        }
        self.reduce(num, den)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn ground(&self) -> &Gf {
        self.coeff.ground()
    }
    fn from_fq(&self, x: u64) -> Self::Elem {
        self.scalar(self.coeff.from_fq(x))
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let n = a.num.fmt(&self.coeff, &self.names);
        if a.den.is_empty() {
            return n;
        }
        let gf = self.coeff.ground();
        let d: Vec<String> = a
            .den
            .iter()
            .rev()
            .map(|(l, &e)| {
                let s = l.fmt(gf, &self.names);
                let s = if s.contains('+') { format!("({s})") } else { s };
                if e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        let n = if n.contains('+') { format!("({n})") } else { n };
        format!("{n}/({})", d.join("·"))
    }
}

/// Random evaluation of fractions, used by tests of the arithmetic.
pub fn random_point<K: Field>(target: &K, n: usize, rng: &mut dyn RngCore) -> Result<Vec<K::Elem>, FieldError> {
    (0..n).map(|_| target.sample(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::EvalField;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let f = Gf::prime(2).unwrap();
        let r = FrRing::new(f.clone(), 2);
        let ix = r.recip_linear(&[1, 0]).unwrap();
        let iy = r.recip_linear(&[0, 1]).unwrap();
        let ixy = r.recip_linear(&[1, 1]).unwrap();
        let s = r.add(&ix, &iy);
        assert_eq!(r.fmt_elem(&s), "(x1 + x2)/(x1·x2)");
        assert_eq!(r.fmt_elem(&r.mul(&ix, &ix)), "1/(x1^2)");
        // 1/x + 1/(x+y) + ((x+y)+x)/(x(x+y)) = 0 in characteristic 2.
        let third = r.mul(&r.add(&r.linear(&[1, 1]), &r.linear(&[1, 0])), &r.mul(&ix, &ixy));
        assert!(r.is_zero(&r.add(&r.add(&ix, &ixy), &third)));
        // Universal reciprocal axiom on F_2^2.
        assert_eq!(r.mul(&ix, &iy), r.mul(&ixy, &r.add(&ix, &iy)));
    }

    #[test]
    fn evaluation() {
        let f = Gf::prime(2).unwrap();
        let r = FrRing::new(f.clone(), 2);
        let ix = r.recip_linear(&[1, 0]).unwrap();
        assert_eq!(r.eval(&ix, &f, &[1, 0], &0).unwrap(), 1);
        let ixy = r.recip_linear(&[1, 1]).unwrap();
        assert_eq!(r.eval(&ixy, &f, &[1, 1], &0).unwrap_err(), FieldError::DenominatorVanishes);
        let g4 = Gf::new(2, 2).unwrap();
        let s = g4.generator();
        let sum = r.add(&ix, &r.recip_linear(&[0, 1]).unwrap());
        assert_eq!(r.eval(&sum, &g4, &[s, g4.add_e(s, 1)], &0).unwrap(), 1);
    }

    fn arb_frac() -> impl Strategy<Value = (Vec<(u32, u32, u32, u64)>, Vec<[u64; 3]>)> {
        (
            prop::collection::vec((0u32..2, 0u32..2, 0u32..2, 0u64..3), 1..4),
            prop::collection::vec(prop::array::uniform3(0u64..3), 0..3),
        )
    }

    proptest! {
        #[test]
        fn arithmetic_agrees_with_evaluation(a in arb_frac(), b in arb_frac(), seed in 0u64..1000) {
            let f = Gf::prime(3).unwrap();
            let r = FrRing::new(f.clone(), 3);
            let mk = |(terms, forms): &(Vec<(u32, u32, u32, u64)>, Vec<[u64; 3]>)| {
                let mut x = r.poly(SparsePoly::from_terms(&f, 3, terms.iter().map(|&(i, j, k, c)| (vec![i, j, k], c))));
                for v in forms {
                    if let Some(inv) = r.recip_linear(v) {
                        x = r.mul(&x, &inv);
                    }
                }
                x
            };
            let (a, b) = (mk(&a), mk(&b));
            let big = EvalField::new(&f, 8).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pt = random_point(&big, 3, &mut rng).unwrap();
            let ev = |x: &FactoredRational<u64>| r.eval(x, &big, &pt, &0);
            if let (Ok(ea), Ok(eb)) = (ev(&a), ev(&b)) {
                prop_assert_eq!(ev(&r.add(&a, &b)).unwrap(), big.add(&ea, &eb));
                prop_assert_eq!(ev(&r.mul(&a, &b)).unwrap(), big.mul(&ea, &eb));
            }
            prop_assert!(r.cross_equal(&r.add(&a, &b), &r.add(&b, &a)));
            prop_assert_eq!(r.mul(&r.add(&a, &b), &b), r.add(&r.mul(&a, &b), &r.mul(&b, &b)));
        }
    }
}
