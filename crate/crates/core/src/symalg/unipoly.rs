//! Dense univariate polynomials over a ring context.

use crate::fields::{Field, FieldError, Ring};

/// Coefficients low to high; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> UniPoly<E> {
    pub fn from_coeffs<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, c: E, k: usize) -> Self {
        let mut v = vec![ring.zero(); k];
        v.push(c);
        Self::from_coeffs(ring, v)
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, k: usize) -> E {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(ring, v)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect() }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.add(&other.neg(ring), ring)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !ring.is_zero(b) {
                    out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
                }
            }
        }
        Self::from_coeffs(ring, out)
    }

    /// Multiplies by `X^k`.
    pub fn shift<R: Ring<Elem = E>>(&self, k: usize, ring: &R) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn eval<R: Ring<Elem = E>>(&self, x: &E, ring: &R) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), c))
    }

    /// Substitutes a polynomial for `X`.
    pub fn compose<R: Ring<Elem = E>>(&self, inner: &Self, ring: &R) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(inner, ring).add(&Self::constant(ring, c.clone()), ring)
        })
    }

    pub fn map<S: Ring>(&self, ring_to: &S, f: impl Fn(&E) -> S::Elem) -> UniPoly<S::Elem> {
        UniPoly::from_coeffs(ring_to, self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a nonzero polynomial with invertible leading coefficient.
    pub fn divrem<F: Field<Elem = E>>(&self, d: &Self, field: &F) -> Result<(Self, Self), FieldError> {
        let dd = d.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = field.inv(d.leading().expect("nonzero"))?;
        let mut r = self.clone();
        let mut quot = vec![field.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = field.mul(r.leading().expect("nonzero"), &lead_inv);
            quot[dr - dd] = c.clone();
            let sub = d.scale(&c, field).shift(dr - dd, field);
            r = r.sub(&sub, field);
        }
        Ok((Self::from_coeffs(field, quot), r))
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(&field.inv(l)?, field)),
        }
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd<F: Field<Elem = E>>(
        &self,
        other: &Self,
        field: &F,
    ) -> Result<(Self, Self, Self), FieldError> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(field, field.one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(field, field.one()));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1, field)?;
            let s = s0.sub(&qt.mul(&s1, field), field);
            let t = t0.sub(&qt.mul(&t1, field), field);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let li = field.inv(l)?;
                Ok((r0.scale(&li, field), s0.scale(&li, field), t0.scale(&li, field)))
            }
        }
    }

    pub fn fmt<R: Ring<Elem = E>>(&self, ring: &R, var: &str) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !ring.is_zero(c))
            .map(|(i, c)| {
                let cs = ring.fmt_elem(c);
                let cs = if cs.contains(['+', '/']) && i > 0 { format!("({cs})") } else { cs };
                let mono = match i {
                    0 => return cs,
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                if ring.is_one(c) {
                    mono
                } else {
                    format!("{cs}·{mono}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Gf;

    #[test]
    fn ext_gcd_bezout() {
        let f = Gf::prime(5).unwrap();
        let a = UniPoly::from_coeffs(&f, vec![1, 0, 1]); // x^2+1 = (x-2)(x-3)
        let b = UniPoly::from_coeffs(&f, vec![3, 1]); // x-2
        let (g, s, t) = a.ext_gcd(&b, &f).unwrap();
        assert_eq!(g, b);
        assert_eq!(s.mul(&a, &f).add(&t.mul(&b, &f), &f), g);
    }
}
