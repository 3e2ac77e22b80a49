//! Additive polynomials `Σ u_i X^{q^i}`, written `Σ u_i τ^i`.

use crate::fields::Ring;

use super::{SymError, UniPoly};

/// Coefficients of `τ^0, τ^1, …`; trailing zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TauPoly<E> {
    pub fn from_coeffs<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    /// `τ`-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// The constant term `d(f)`, i.e. the coefficient of `X`.
    pub fn d<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        self.coeff(ring, 0)
    }

    /// Recognizes an additive polynomial.
    pub fn from_unipoly<R: Ring<Elem = E>>(f: &UniPoly<E>, ring: &R) -> Result<Self, SymError> {
        let q = ring.ground().q() as usize;
        let mut coeffs = Vec::new();
        for (k, c) in f.coeffs().iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let mut i = 0;
            let mut pw = 1usize;
            while pw < k {
                pw *= q;
                i += 1;
            }
            if pw != k {
                return Err(SymError::NonAdditive { exponent: k, coefficient: ring.fmt_elem(c) });
            }
            if coeffs.len() <= i {
                coeffs.resize(i + 1, ring.zero());
            }
            coeffs[i] = c.clone();
        }
        Ok(Self::from_coeffs(ring, coeffs))
    }

    pub fn to_unipoly<R: Ring<Elem = E>>(&self, ring: &R) -> UniPoly<E> {
        let q = ring.ground().q() as usize;
        let mut out = UniPoly::zero();
        let mut pw = 1usize;
        for c in &self.coeffs {
            out = out.add(&UniPoly::monomial(ring, c.clone(), pw), ring);
            pw *= q;
        }
        out
    }

    /// `f ∘ g`, using `τ ∘ u = u^q ∘ τ`.
    pub fn compose<R: Ring<Elem = E>>(&self, g: &Self, ring: &R) -> Self {
        let q = ring.ground().q();
        if self.coeffs.is_empty() || g.coeffs.is_empty() {
            return Self::from_coeffs(ring, Vec::new());
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + g.coeffs.len() - 1];
        let mut twisted: Vec<E> = g.coeffs.clone();
        for (i, fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                twisted = twisted.iter().map(|c| ring.pow(c, q)).collect();
            }
            if ring.is_zero(fi) {
                continue;
            }
            for (j, gj) in twisted.iter().enumerate() {
                out[i + j] = ring.add(&out[i + j], &ring.mul(fi, gj));
            }
        }
        Self::from_coeffs(ring, out)
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| ring.add(&self.coeff(ring, i), &other.coeff(ring, i))).collect();
        Self::from_coeffs(ring, v)
    }

    /// `c ∘ f`.
    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(c, a)).collect())
    }

    /// The scalar `c` viewed as `c·τ^0`.
    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn eval<R: Ring<Elem = E>>(&self, x: &E, ring: &R) -> E {
        let q = ring.ground().q();
        let mut acc = ring.zero();
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = ring.pow(&xp, q);
            }
            acc = ring.add(&acc, &ring.mul(c, &xp));
        }
        acc
    }

    pub fn fmt<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !ring.is_zero(c))
            .map(|(i, c)| {
                let cs = ring.fmt_elem(c);
                let cs = if cs.contains(['+', '/']) { format!("({cs})") } else { cs };
                match i {
                    0 => format!("{cs}τ⁰"),
                    1 => format!("{cs}τ"),
                    _ => format!("{cs}τ^{i}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FunctionField, Gf, RatFuncField};
    use proptest::prelude::*;

    #[test]
    fn recognizes_additive_polynomials() {
        let f = Gf::prime(2).unwrap();
        let p = UniPoly::from_coeffs(&f, vec![0, 1, 1]);
        assert_eq!(TauPoly::from_unipoly(&p, &f).unwrap().coeffs(), &[1, 1]);
        let bad = UniPoly::from_coeffs(&f, vec![0, 1, 0, 1]);
        assert_eq!(
            TauPoly::from_unipoly(&bad, &f).unwrap_err(),
            SymError::NonAdditive { exponent: 3, coefficient: "1".into() }
        );
    }

    #[test]
    fn carlitz_square() {
        let k = RatFuncField::new(Gf::prime(2).unwrap());
        let phi = TauPoly::from_coeffs(&k, vec![k.t(), k.one()]);
        let sq = phi.compose(&phi, &k);
        assert_eq!(sq.coeffs(), &[k.t_pow(2), k.poly(&[0, 1, 1]), k.one()]);
        let expanded = phi.to_unipoly(&k).compose(&phi.to_unipoly(&k), &k);
        assert_eq!(TauPoly::from_unipoly(&expanded, &k).unwrap(), sq);
        let u = k.poly(&[1, 1]);
        let tau = TauPoly::from_coeffs(&k, vec![k.zero(), k.one()]);
        let lhs = tau.compose(&TauPoly::constant(&k, u.clone()), &k);
        assert_eq!(lhs.coeffs(), &[k.zero(), k.mul(&u, &u)]);
    }

    fn arb_tau() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..9, 1..4)
    }

    proptest! {
        #[test]
        fn composition_laws(a in arb_tau(), b in arb_tau(), c in arb_tau()) {
            let f = Gf::new(3, 2).unwrap();
            let (a, b, c) = (TauPoly::from_coeffs(&f, a), TauPoly::from_coeffs(&f, b), TauPoly::from_coeffs(&f, c));
            prop_assert_eq!(a.compose(&b, &f).compose(&c, &f), a.compose(&b.compose(&c, &f), &f));
            prop_assert_eq!(a.compose(&b, &f).d(&f), f.mul_e(a.d(&f), b.d(&f)));
            prop_assert_eq!(TauPoly::from_unipoly(&a.to_unipoly(&f), &f).unwrap(), a.clone());
            let x = 5u64;
            prop_assert_eq!(a.compose(&b, &f).eval(&x, &f), a.eval(&b.eval(&x, &f), &f));
        }
    }
}
