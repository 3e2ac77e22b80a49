//! Finite fields `GF(p^e)`.
//!
//! An element is encoded as the integer `Σ c_i p^i`, where `Σ c_i s^i` is its
//! representative modulo the defining polynomial. Fields of order up to
//! `2^22` get log/antilog tables.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};

use super::primepoly as pp;
use super::{Field, FieldError, Ring};

const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

struct GfInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus over GF(p), low to high; `[0, 1]` for prime fields.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Gf {}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Returns `(p, e)` when `q = p^e` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

impl Gf {
    pub fn prime(p: u64) -> Result<Gf, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Gf(Arc::new(GfInner { p, e: 1, q: p, modulus: vec![0, 1], tables: None })))
    }

    /// `GF(p^e)` with the first monic irreducible of degree `e`, ordering
    /// candidates by the integer encoding of their lower coefficients.
    pub fn new(p: u64, e: u32) -> Result<Gf, FieldError> {
        let base = Gf::prime(p)?;
        if e == 1 {
            return Ok(base);
        }
        let count = (p as u128).checked_pow(e).ok_or(FieldError::TooLarge(u128::MAX))?;
        let mut k: u128 = 0;
        loop {
            let mut poly: Vec<u64> = (0..e)
                .map(|i| ((k / (p as u128).pow(i)) % p as u128) as u64)
                .collect();
            poly.push(1);
            if pp::is_irreducible(&base, &poly) {
                return Gf::build(p, e, poly);
            }
            k += 1;
            assert!(k < count, "no irreducible polynomial found");
        }
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Gf, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Gf::new(p, e)
    }

    /// `GF(p^e)` with an explicit monic modulus (low to high) of degree `e`.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Gf, FieldError> {
        let base = Gf::prime(p)?;
        let poly = pp::monic(&base, &modulus.iter().map(|c| c % p).collect::<Vec<_>>());
        let e = pp::deg(&poly).ok_or(FieldError::ReducibleModulus)? as u32;
        if e == 0 || !pp::is_irreducible(&base, &poly) {
            return Err(FieldError::ReducibleModulus);
        }
        if e == 1 {
            return Ok(base);
        }
        Gf::build(p, e, poly)
    }

    fn build(p: u64, e: u32, modulus: Vec<u64>) -> Result<Gf, FieldError> {
        let q128 = (p as u128).pow(e);
        if q128 > u64::MAX as u128 / 4 {
            return Err(FieldError::TooLarge(q128));
        }
        let q = q128 as u64;
        let mut gf = Gf(Arc::new(GfInner { p, e, q, modulus, tables: None }));
        if q <= TABLE_LIMIT {
            let g = gf.primitive_element();
            let mut exp = vec![0u32; 2 * q as usize];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u64;
            for i in 0..(q - 1) as usize {
                exp[i] = x as u32;
                exp[i + (q - 1) as usize] = x as u32;
                log[x as usize] = i as u32;
                x = gf.mul_slow(x, g);
            }
            gf = Gf(Arc::new(GfInner {
                p,
                e,
                q,
                modulus: gf.0.modulus.clone(),
                tables: Some(Tables { log, exp }),
            }));
        }
        Ok(gf)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn e(&self) -> u32 {
        self.0.e
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.0.p as i64) as u64
    }

    /// The element `s` (the class of the generator) for `e > 1`.
    pub fn generator(&self) -> u64 {
        if self.0.e == 1 {
            1
        } else {
            self.0.p
        }
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.e)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    #[inline]
    pub fn add_e(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.e == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn neg_e(&self, a: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.e == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut w = 1;
        while a > 0 {
            out += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        out
    }

    #[inline]
    pub fn sub_e(&self, a: u64, b: u64) -> u64 {
        self.add_e(a, self.neg_e(b))
    }

    #[inline]
    pub fn mul_e(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.e == 1 {
            return a * b % self.0.p;
        }
        if let Some(t) = &self.0.tables {
            let s = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[s] as u64;
        }
        self.mul_slow(a, b)
    }

    /// `y[j] -= c·x[j]`, with `log c` looked up once in characteristic 2.
    pub fn axpy_e(&self, y: &mut [u64], c: u64, x: &[u64]) {
        if c == 0 {
            return;
        }
        match &self.0.tables {
            Some(t) if self.0.p == 2 => {
                let lc = t.log[c as usize] as usize;
                for (a, &b) in y.iter_mut().zip(x) {
                    if b != 0 {
                        *a ^= t.exp[lc + t.log[b as usize] as usize] as u64;
                    }
                }
            }
            _ => {
                for (a, &b) in y.iter_mut().zip(x) {
                    if b != 0 {
                        *a = self.sub_e(*a, self.mul_e(c, b));
                    }
                }
            }
        }
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.0.p == 2 {
            let e = self.0.e;
            let mut prod: u128 = 0;
            for i in 0..e {
                if (b >> i) & 1 == 1 {
                    prod ^= (a as u128) << i;
                }
            }
            let modbits: u128 = self
                .0
                .modulus
                .iter()
                .enumerate()
                .fold(0, |acc, (i, &c)| acc | ((c as u128) << i));
            for i in (e..2 * e).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= modbits << (i - e);
                }
            }
            return prod as u64;
        }
        let base = Gf::prime(self.0.p).expect("prime");
        let prod = pp::mulmod(&base, &self.digits(a), &self.digits(b), &self.0.modulus);
        self.undigits(&prod)
    }

    pub fn pow_e(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_e(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_e(base, base);
            }
        }
        acc
    }

    #[inline]
    pub fn inv_e(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        if let Some(t) = &self.0.tables {
            let l = t.log[a as usize] as u64;
            return t.exp[((self.0.q - 1 - l) % (self.0.q - 1)) as usize] as u64;
        }
        self.pow_e(a, self.0.q as u128 - 2)
    }

    /// Smallest encoding whose multiplicative order is `q − 1`.
    pub fn primitive_element(&self) -> u64 {
        let q = self.0.q;
        let order = (q - 1) as u128;
        let factors = pp::prime_factors_u128(order);
        (1..q)
            .find(|&g| {
                factors.iter().all(|&l| self.pow_slow(g, order / l) != 1)
            })
            .expect("multiplicative group is cyclic")
    }

    fn pow_slow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = if self.0.e == 1 { acc * base % self.0.p } else { self.mul_slow(acc, base) };
            }
            e >>= 1;
            if e > 0 {
                base = if self.0.e == 1 { base * base % self.0.p } else { self.mul_slow(base, base) };
            }
        }
        acc
    }

    /// All elements of the field in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.0.q
    }

    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.0.q
    }

    pub fn fmt_e(&self, a: u64) -> String {
        if self.0.e == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let terms: Vec<String> = d
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => "s".to_string(),
                    _ => format!("s^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl Ring for Gf {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.add_e(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.neg_e(*a)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.sub_e(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_e(*a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn axpy(&self, y: &mut [u64], c: &u64, x: &[u64]) {
        self.axpy_e(y, *c, x)
    }
    fn ground(&self) -> &Gf {
        self
    }
    fn from_fq(&self, x: u64) -> u64 {
        x
    }
    fn fmt_elem(&self, a: &u64) -> String {
        self.fmt_e(*a)
    }
}

impl Field for Gf {
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.inv_e(*a))
    }
    fn order(&self) -> Option<u128> {
        Some(self.0.q as u128)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Result<u64, FieldError> {
        Ok(rng.gen_range(0..self.0.q))
    }
}

/// `GF(q^m)` viewed as an algebra over a chosen `GF(q)`; used for random
/// evaluation points.
#[derive(Clone, Debug)]
pub struct EvalField {
    big: Gf,
    ground: Gf,
    embed: Arc<Vec<u64>>,
}

impl EvalField {
    pub fn new(ground: &Gf, m: u32) -> Result<EvalField, FieldError> {
        let big = Gf::new(ground.p(), ground.e() * m)?;
        let embed = if ground.e() == 1 {
            (0..ground.q()).collect()
        } else {
            // A root of the ground modulus lies in the subgroup of order q − 1.
            let qq = big.q() as u128;
            let g = big.primitive_element();
            let gamma = big.pow_e(g, (qq - 1) / (ground.q() as u128 - 1));
            let modulus = ground.modulus();
            let eval = |x: u64| {
                modulus.iter().rev().fold(0, |acc, &c| big.add_e(big.mul_e(acc, x), c))
            };
            let mut beta = None;
            let mut y = gamma;
            for _ in 1..ground.q() {
                if eval(y) == 0 {
                    beta = Some(y);
                    break;
                }
                y = big.mul_e(y, gamma);
            }
            let beta = beta.expect("subfield root exists");
            ground
                .elements()
                .map(|a| {
                    let digits = ground.digits(a);
                    digits.iter().rev().fold(0, |acc, &c| big.add_e(big.mul_e(acc, beta), c))
                })
                .collect()
        };
        Ok(EvalField { big, ground: ground.clone(), embed: Arc::new(embed) })
    }

    /// Smallest `m` with `q^m ≥ 2^bits`.
    pub fn degree_for(ground: &Gf, bits: u32) -> u32 {
        let target = 1u128 << bits;
        let mut m = 1;
        while (ground.q() as u128).pow(m) < target {
            m += 1;
        }
        m
    }

    pub fn big(&self) -> &Gf {
        &self.big
    }
}

impl Ring for EvalField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.big.add_e(*a, *b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.big.neg_e(*a)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.big.sub_e(*a, *b)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.big.mul_e(*a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn axpy(&self, y: &mut [u64], c: &u64, x: &[u64]) {
        self.big.axpy_e(y, *c, x)
    }
    fn ground(&self) -> &Gf {
        &self.ground
    }
    fn from_fq(&self, x: u64) -> u64 {
        self.embed[x as usize]
    }
    fn fmt_elem(&self, a: &u64) -> String {
        self.big.fmt_e(*a)
    }
}

impl Field for EvalField {
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        self.big.inv(a)
    }
    fn order(&self) -> Option<u128> {
        Some(self.big.q() as u128)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Result<u64, FieldError> {
        self.big.sample(rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::laws::check_triple;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gf2_and_gf4() {
        let f2 = Gf::new(2, 1).unwrap();
        assert_eq!(f2.add_e(1, 1), 0);
        let f4 = Gf::with_modulus(2, &[1, 1, 1]).unwrap();
        let s = f4.generator();
        assert_eq!(f4.mul_e(s, s), f4.add_e(s, 1));
        assert_eq!(Gf::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Gf::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Gf::with_modulus(2, &[1, 0, 1]).unwrap_err(), FieldError::ReducibleModulus);
    }

    #[test]
    fn uniform_sampling_gf16() {
        let f = Gf::new(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut counts = [0u32; 16];
        for _ in 0..10_000 {
            counts[f.sample(&mut rng).unwrap() as usize] += 1;
        }
        let sigma = (10_000.0f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
        for c in counts {
            assert!((c as f64 - 625.0).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = Gf::new(3, 4).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(f.mul_e(a, b), if a == 0 || b == 0 { 0 } else { f.mul_slow(a, b) });
            }
        }
    }

    #[test]
    fn subfield_embedding_is_a_homomorphism() {
        for q in [4u64, 8, 9] {
            let g = Gf::of_order(q).unwrap();
            let big = EvalField::new(&g, 3).unwrap();
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(big.from_fq(g.mul_e(a, b)), big.mul(&big.from_fq(a), &big.from_fq(b)));
                    assert_eq!(big.from_fq(g.add_e(a, b)), big.add(&big.from_fq(a), &big.from_fq(b)));
                }
            }
        }
    }

    #[test]
    fn untabled_field_arithmetic() {
        let f = Gf::new(2, 40).unwrap();
        let a = 0x12_3456_789a;
        assert_eq!(f.mul_e(a, f.inv_e(a)), 1);
        let g = Gf::new(3, 26).unwrap();
        let b = 12_345_678_901;
        assert_eq!(g.mul_e(b, g.inv_e(b)), 1);
    }

    proptest! {
        #[test]
        fn field_axioms(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 16, 27]),
                        a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            let f = Gf::of_order(q).unwrap();
            let (a, b, c) = (a % q, b % q, c % q);
            check_triple(&f, &a, &b, &c);
            let p = f.p() as u128;
            prop_assert_eq!(f.pow_e(f.add_e(a, b), p), f.add_e(f.pow_e(a, p), f.pow_e(b, p)));
        }
    }
}
