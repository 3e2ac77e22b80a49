//! Sparse multivariate polynomials, terms keyed by exponent vector.
//!
//! Keys compare lexicographically with `x_0` most significant, so the last
//! entry of the map is the lex-leading term.

use std::collections::BTreeMap;

use crate::fields::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePoly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone> SparsePoly<E> {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, nvars: usize, c: E) -> Self {
        Self::term(ring, vec![0; nvars], c)
    }

    pub fn one<R: Ring<Elem = E>>(ring: &R, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn term<R: Ring<Elem = E>>(ring: &R, exps: Vec<u32>, c: E) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(exps, c);
        }
        SparsePoly { nvars, terms }
    }

    pub fn var<R: Ring<Elem = E>>(ring: &R, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(ring, e, ring.one())
    }

    pub fn from_terms<R: Ring<Elem = E>>(
        ring: &R,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, E)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(ring, e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, exps: &[u32]) -> E {
        self.terms.get(exps).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &E)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, e: Vec<u32>, c: E) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = ring.add(old, &c);
                if ring.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(ring, e.clone(), c.clone());
        }
        big
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.add(&other.neg(ring), ring)
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        if ring.is_zero(c) {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(ring, e.clone(), ring.mul(a, c));
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(ring, e, ring.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow<R: Ring<Elem = E>>(&self, k: u32, ring: &R) -> Self {
        let mut acc = Self::one(ring, self.nvars);
        for _ in 0..k {
            acc = acc.mul(self, ring);
        }
        acc
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        SparsePoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates after mapping coefficients into `target`.
    pub fn eval<K: Ring>(&self, target: &K, point: &[K::Elem], coeff: impl Fn(&E) -> K::Elem) -> K::Elem {
        let mut acc = target.zero();
        for (e, c) in &self.terms {
            let mut v = coeff(c);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    v = target.mul(&v, &target.pow(x, k as u64));
                }
            }
            acc = target.add(&acc, &v);
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&E) -> S::Elem) -> SparsePoly<S::Elem> {
        let mut out = SparsePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(target, e.clone(), f(c));
        }
        out
    }

    /// Exact division in lex order; `None` if `divisor` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Option<Self> {
        let (le, lc) = divisor.leading()?;
        let (le, lc_inv) = (le.clone(), field.inv(lc).ok()?);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(&le).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&le).map(|(a, b)| a - b).collect();
            let c = field.mul(rc, &lc_inv);
            let t = Self::term(field, e, c);
            rem = rem.sub(&divisor.mul(&t, field), field);
            quot = quot.add(&t, field);
        }
        Some(quot)
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Coefficients with respect to `x_v`, each free of `x_v`.
    pub fn coeffs_in<R: Ring<Elem = E>>(&self, v: usize, ring: &R) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = std::mem::replace(&mut f[v], 0);
            out.entry(k).or_insert_with(|| Self::zero(self.nvars)).add_term(ring, f, c.clone());
        }
        out
    }

    /// Scales so that the lex-leading coefficient is one.
    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&field.inv(c).expect("nonzero"), field),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() {
            return other.monic(field);
        }
        if other.is_zero() {
            return self.monic(field);
        }
        let main = (0..self.nvars)
            .rev()
            .find(|&v| self.degree_in(v).unwrap_or(0) > 0 || other.degree_in(v).unwrap_or(0) > 0);
        let Some(v) = main else {
            return Self::one(field, self.nvars);
        };
        let da = self.degree_in(v).unwrap_or(0);
        let db = other.degree_in(v).unwrap_or(0);
        if da == 0 {
            return self.gcd(&other.content_in(v, field), field);
        }
        if db == 0 {
            return self.content_in(v, field).gcd(other, field);
        }
        let ca = self.content_in(v, field);
        let cb = other.content_in(v, field);
        let c = ca.gcd(&cb, field);
        let mut r0 = self.div_exact(&ca, field).expect("content divides");
        let mut r1 = other.div_exact(&cb, field).expect("content divides");
        if da < db {
            std::mem::swap(&mut r0, &mut r1);
        }
        loop {
            let r = r0.prem(&r1, v, field);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v).unwrap_or(0) == 0 {
                return c.monic(field);
            }
            let pr = r.div_exact(&r.content_in(v, field), field).expect("content divides");
            r0 = std::mem::replace(&mut r1, pr);
        }
        c.mul(&r1, field).monic(field)
    }

    /// Gcd of the coefficients with respect to `x_v`.
    pub fn content_in<F: Field<Elem = E>>(&self, v: usize, field: &F) -> Self {
        let mut g = Self::zero(self.nvars);
        for c in self.coeffs_in(v, field).values() {
            g = g.gcd(c, field);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder with respect to `x_v`.
    fn prem<R: Ring<Elem = E>>(&self, b: &Self, v: usize, ring: &R) -> Self {
        let db = b.degree_in(v).unwrap_or(0);
        let bc = b.coeffs_in(v, ring);
        let lb = bc[&db].clone();
        let mut r = self.clone();
        loop {
            let dr = match r.degree_in(v) {
                Some(d) if !r.is_zero() && d >= db => d,
                _ => break,
            };
            let lr = r.coeffs_in(v, ring).remove(&dr).expect("leading coefficient");
            let mut shift = vec![0; self.nvars];
            shift[v] = dr - db;
            r = r.mul(&lb, ring).sub(&b.mul(&lr, ring).mul_monomial(&shift), ring);
        }
        r
    }

    pub fn fmt<R: Ring<Elem = E>>(&self, ring: &R, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                    .collect();
                let cs = ring.fmt_elem(c);
                match (mono.is_empty(), ring.is_one(c)) {
                    (true, _) => cs,
                    (false, true) => mono.join("·"),
                    (false, false) => {
                        let cs = if cs.contains(['+', '/']) { format!("({cs})") } else { cs };
                        format!("{cs}·{}", mono.join("·"))
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}
