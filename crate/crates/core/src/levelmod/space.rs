//! The modules `V_n = (t^{-n}F_q[t]/F_q[t])^r`.
//!
//! An element is stored as an integer: the coefficient of `X_{k,ν} = t^{-ν}b_k`
//! is its base-`q` digit at position `(ν−1)·r + (k−1)`. With this ordering
//! `V_ν` is the set of indices below `q^{rν}`, and multiplication by `t` is
//! integer division by `q^r`.

use std::fmt;

use crate::fields::Gf;

#[derive(Clone, Debug)]
pub struct ModuleSpace {
    gf: Gf,
    r: usize,
    n: usize,
    qpow: Vec<u64>,
}

impl PartialEq for ModuleSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gf == other.gf && self.r == other.r && self.n == other.n
    }
}
impl Eq for ModuleSpace {}

impl ModuleSpace {
    pub fn new(gf: Gf, r: usize, n: usize) -> Self {
        assert!(n >= 1, "level must be positive");
        let q = gf.q();
        let dim = r * n;
        let mut qpow = Vec::with_capacity(dim + 1);
        let mut x: u64 = 1;
        for _ in 0..=dim {
            qpow.push(x);
            x = x.saturating_mul(q);
        }
        assert!(qpow[dim] < u64::MAX, "module too large");
        ModuleSpace { gf, r, n, qpow }
    }

    /// The plain vector space `F_q^dim`.
    pub fn plain(gf: Gf, dim: usize) -> Self {
        Self::new(gf, dim, 1)
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }
    pub fn q(&self) -> u64 {
        self.gf.q()
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.r * self.n
    }
    pub fn size(&self) -> u64 {
        self.qpow[self.dim()]
    }
    pub fn is_plain(&self) -> bool {
        self.n == 1
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.size()
    }

    pub fn nonzero(&self) -> std::ops::Range<u64> {
        1..self.size()
    }

    /// Elements of `V_ν` (killed by `t^ν`).
    pub fn level(&self, nu: usize) -> std::ops::Range<u64> {
        0..self.qpow[self.r * nu.min(self.n)]
    }

    pub fn in_level(&self, v: u64, nu: usize) -> bool {
        v < self.qpow[self.r * nu.min(self.n)]
    }

    /// Position of `X_{k,ν}` (1-based `k`, `ν`).
    pub fn pos(&self, k: usize, nu: usize) -> usize {
        debug_assert!((1..=self.r).contains(&k) && (1..=self.n).contains(&nu));
        (nu - 1) * self.r + (k - 1)
    }

    pub fn basis_elem(&self, k: usize, nu: usize) -> u64 {
        self.qpow[self.pos(k, nu)]
    }

    /// The `F_q`-span of everything before `X_{k,ν}`: indices below `q^pos`.
    pub fn prefix_space(&self, k: usize, nu: usize) -> std::ops::Range<u64> {
        0..self.qpow[self.pos(k, nu)]
    }

    pub fn digit(&self, v: u64, pos: usize) -> u64 {
        (v / self.qpow[pos]) % self.q()
    }

    pub fn digits(&self, v: u64) -> Vec<u64> {
        (0..self.dim()).map(|i| self.digit(v, i)).collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().enumerate().map(|(i, &c)| c * self.qpow[i]).sum()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.gf.p() == 2 {
            return a ^ b;
        }
        let q = self.q();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut w = 1;
        while a > 0 || b > 0 {
            out += self.gf.add_e(a % q, b % q) * w;
            a /= q;
            b /= q;
            w *= q;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.scale(self.gf.neg_e(1), a)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, alpha: u64, v: u64) -> u64 {
        if alpha == 1 {
            return v;
        }
        let q = self.q();
        let mut v = v;
        let mut out = 0;
        let mut w = 1;
        while v > 0 {
            out += self.gf.mul_e(alpha, v % q) * w;
            v /= q;
            w *= q;
        }
        out
    }

    pub fn t_mul(&self, v: u64) -> u64 {
        v / self.qpow[self.r]
    }

    pub fn t_pow_mul(&self, v: u64, i: usize) -> u64 {
        if i >= self.n {
            0
        } else {
            v / self.qpow[self.r * i]
        }
    }

    /// `a·v` for `a = Σ a_i t^i` in `F_q[t]`.
    pub fn act_poly(&self, a: &[u64], v: u64) -> u64 {
        let mut acc = 0;
        for (i, &c) in a.iter().enumerate() {
            if c != 0 && i < self.n {
                acc = self.add(acc, self.scale(c, self.t_pow_mul(v, i)));
            }
        }
        acc
    }

    /// Component `k` (1-based) as an element of `F_q[t]/(t^n)`, relative to `X_{k,n}`.
    pub fn coord(&self, v: u64, k: usize) -> Vec<u64> {
        (0..self.n).map(|j| self.digit(v, self.pos(k, self.n - j))).collect()
    }

    /// Inverse of [`ModuleSpace::coord`].
    pub fn from_coords(&self, coords: &[Vec<u64>]) -> u64 {
        let mut d = vec![0; self.dim()];
        for (k, c) in coords.iter().enumerate() {
            for (j, &x) in c.iter().enumerate().take(self.n) {
                d[self.pos(k + 1, self.n - j)] = x;
            }
        }
        self.from_digits(&d)
    }

    /// Dimension over `F_q` of the span of the given elements.
    pub fn rank_of(&self, vs: &[u64]) -> usize {
        self.echelon(vs).len()
    }

    /// Row-reduced basis (digit vectors with pivot one) of the span.
    pub(crate) fn echelon(&self, vs: &[u64]) -> Vec<(usize, Vec<u64>)> {
        let gf = &self.gf;
        let mut rows: Vec<(usize, Vec<u64>)> = Vec::new();
        for &v in vs {
            let mut d = self.digits(v);
            for (p, row) in &rows {
                let c = d[*p];
                if c != 0 {
                    for (x, y) in d.iter_mut().zip(row) {
                        *x = gf.sub_e(*x, gf.mul_e(c, *y));
                    }
                }
            }
            if let Some(p) = d.iter().position(|&c| c != 0) {
                let inv = gf.inv_e(d[p]);
                for x in d.iter_mut() {
                    *x = gf.mul_e(*x, inv);
                }
                for (_, row) in rows.iter_mut() {
                    let c = row[p];
                    if c != 0 {
                        for (x, y) in row.iter_mut().zip(&d) {
                            *x = gf.sub_e(*x, gf.mul_e(c, *y));
                        }
                    }
                }
                rows.push((p, d));
            }
        }
        rows.sort_by_key(|(p, _)| *p);
        rows
    }

    /// All `F_q`-combinations of the given elements, sorted.
    pub fn span(&self, vs: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64];
        for (_, row) in self.echelon(vs) {
            let b = self.from_digits(&row);
            let mut next = Vec::with_capacity(out.len() * self.q() as usize);
            for alpha in self.gf.elements() {
                let ab = self.scale(alpha, b);
                next.extend(out.iter().map(|&w| self.add(w, ab)));
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn elem(&self, v: u64) -> ModElem {
        ModElem { r: self.r, n: self.n, digits: self.digits(v), gf: self.gf.clone() }
    }

    pub fn var_names(&self) -> Vec<String> {
        (0..self.dim())
            .map(|p| {
                let (k, nu) = (p % self.r + 1, p / self.r + 1);
                if self.n == 1 {
                    format!("x{k}")
                } else {
                    format!("X{k}_{nu}")
                }
            })
            .collect()
    }

    /// `Div(N) = {α t^ν : α ∈ F_q^×, 0 ≤ ν ≤ n}` as `(α, ν)` pairs.
    pub fn divisors(&self) -> Vec<(u64, usize)> {
        (0..=self.n).flat_map(|nu| self.gf.units().map(move |a| (a, nu))).collect()
    }
}

/// An element of `V_n` as its `r × n` coefficient matrix; entry `(k, ν)` is
/// the coefficient of `t^{-ν}` in component `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModElem {
    r: usize,
    n: usize,
    digits: Vec<u64>,
    gf: Gf,
}

impl ModElem {
    pub fn entry(&self, k: usize, nu: usize) -> u64 {
        self.digits[(nu - 1) * self.r + (k - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for k in 1..=self.r {
            for nu in (1..=self.n).rev() {
                let c = self.entry(k, nu);
                if c == 0 {
                    continue;
                }
                let name = if self.n == 1 { format!("x{k}") } else { format!("X{k}_{nu}") };
                parts.push(if c == 1 { name } else { format!("{}·{name}", self.gf.fmt_e(c)) });
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}
