//! The rational function field `F_q(t)`.

use rand::RngCore;

use super::primepoly as pp;
use super::{Field, FieldError, FunctionField, Gf, Ring};

/// A reduced fraction: monic denominator coprime to the numerator; zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    pub(crate) num: Vec<u64>,
    pub(crate) den: Vec<u64>,
}

impl RatFunc {
    pub fn numerator(&self) -> &[u64] {
        &self.num
    }
    pub fn denominator(&self) -> &[u64] {
        &self.den
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    base: Gf,
}

impl RatFuncField {
    pub fn new(base: Gf) -> Self {
        RatFuncField { base }
    }

    /// Builds `num/den` and normalizes it.
    pub fn frac(&self, num: &[u64], den: &[u64]) -> Result<RatFunc, FieldError> {
        let num = pp::trim(num.to_vec());
        let den = pp::trim(den.to_vec());
        if den.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(num, den))
    }

    pub fn poly(&self, coeffs: &[u64]) -> RatFunc {
        self.normalize(pp::trim(coeffs.to_vec()), vec![1])
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(&self, k: i64) -> RatFunc {
        let mono = |e: usize| {
            let mut v = vec![0; e + 1];
            v[e] = 1;
            v
        };
        if k >= 0 {
            RatFunc { num: mono(k as usize), den: vec![1] }
        } else {
            RatFunc { num: vec![1], den: mono((-k) as usize) }
        }
    }

    pub fn normalize(&self, num: Vec<u64>, den: Vec<u64>) -> RatFunc {
        let f = &self.base;
        if num.is_empty() {
            return RatFunc { num: Vec::new(), den: vec![1] };
        }
        let g = pp::gcd(f, &num, &den);
        let (mut n, _) = pp::divrem(f, &num, &g);
        let (mut d, _) = pp::divrem(f, &den, &g);
        let lead = *d.last().expect("nonzero denominator");
        if lead != 1 {
            let inv = f.inv_e(lead);
            n = pp::scale(f, &n, inv);
            d = pp::scale(f, &d, inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn base(&self) -> &Gf {
        &self.base
    }

    fn fmt_poly(&self, p: &[u64]) -> String {
        let terms: Vec<String> = p
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let cs = self.base.fmt_e(c);
                let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                let mono = match i {
                    0 => return cs,
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                if c == 1 {
                    mono
                } else {
                    format!("{cs}{mono}")
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

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: Vec::new(), den: vec![1] }
    }
    fn one(&self) -> RatFunc {
        RatFunc { num: vec![1], den: vec![1] }
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.base;
        if a.den == b.den {
            return self.normalize(pp::add(f, &a.num, &b.num), a.den.clone());
        }
        let num = pp::add(f, &pp::mul(f, &a.num, &b.den), &pp::mul(f, &b.num, &a.den));
        self.normalize(num, pp::mul(f, &a.den, &b.den))
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: pp::neg(&self.base, &a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let f = &self.base;
        if a.den == [1] && b.den == [1] {
            return RatFunc { num: pp::mul(f, &a.num, &b.num), den: vec![1] };
        }
        self.normalize(pp::mul(f, &a.num, &b.num), pp::mul(f, &a.den, &b.den))
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_empty()
    }
    fn ground(&self) -> &Gf {
        &self.base
    }
    fn from_fq(&self, x: u64) -> RatFunc {
        self.poly(&[x])
    }
    fn fmt_elem(&self, a: &RatFunc) -> String {
        let n = self.fmt_poly(&a.num);
        if a.den == [1] {
            return n;
        }
        let d = self.fmt_poly(&a.den);
        let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
        format!("{}/{}", wrap(n), wrap(d))
    }
}

impl Field for RatFuncField {
    fn inv(&self, a: &RatFunc) -> Result<RatFunc, FieldError> {
        if a.num.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.normalize(a.den.clone(), a.num.clone()))
    }
    fn order(&self) -> Option<u128> {
        None
    }
    fn sample(&self, _rng: &mut dyn RngCore) -> Result<RatFunc, FieldError> {
        Err(FieldError::InfiniteField)
    }
}

impl FunctionField for RatFuncField {
    fn t(&self) -> RatFunc {
        self.t_pow(1)
    }
    fn from_ratfunc(&self, x: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(x.clone())
    }
}
