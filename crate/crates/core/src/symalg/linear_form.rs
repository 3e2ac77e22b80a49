//! Nonzero linear forms over `F_q`, stored with first nonzero coefficient one.

use crate::fields::{Gf, Ring};

use super::SparsePoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<u64>,
}

impl LinearForm {
    /// Splits a nonzero coefficient vector as `scalar · form`.
    pub fn from_vector(gf: &Gf, v: &[u64]) -> Option<(u64, LinearForm)> {
        let lead = *v.iter().find(|&&c| c != 0)?;
        let inv = gf.inv_e(lead);
        let coeffs = v.iter().map(|&c| gf.mul_e(c, inv)).collect();
        Some((lead, LinearForm { coeffs }))
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_poly<R: Ring>(&self, ring: &R) -> SparsePoly<R::Elem> {
        let n = self.coeffs.len();
        SparsePoly::from_terms(
            ring,
            n,
            self.coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, ring.from_fq(c))
            }),
        )
    }

    pub fn eval<K: Ring>(&self, target: &K, point: &[K::Elem]) -> K::Elem {
        let mut acc = target.zero();
        for (x, &c) in point.iter().zip(&self.coeffs) {
            if c != 0 {
                acc = target.add(&acc, &target.mul(&target.from_fq(c), x));
            }
        }
        acc
    }

    pub fn fmt(&self, gf: &Gf, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, n)| if c == 1 { n.clone() } else { format!("{}{n}", gf.fmt_e(c)) })
            .collect();
        parts.join("+")
    }
}
