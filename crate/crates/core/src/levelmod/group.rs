//! Matrices over `F_q[t]/(t^n)` acting on `V_n`, and the groups `U` and
//! `ker(GL_r(A/t^n) → GL_r(A/t^{n'}))`.

use std::collections::{HashSet, VecDeque};

use super::ModuleSpace;
use crate::fields::Gf;

/// Truncated product in `F_q[t]/(t^n)`.
pub fn trunc_mul(gf: &Gf, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = gf.add_e(out[i + j], gf.mul_e(x, y));
        }
    }
    out
}

/// An `r × r` matrix over `F_q[t]/(t^n)`, row major; each entry has length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMat {
    r: usize,
    n: usize,
    entries: Vec<Vec<u64>>,
}

impl RMat {
    pub fn identity(r: usize, n: usize) -> Self {
        let mut entries = vec![vec![0; n]; r * r];
        for i in 0..r {
            entries[i * r + i][0] = 1;
        }
        RMat { r, n, entries }
    }

    pub fn from_entries(r: usize, n: usize, entries: Vec<Vec<u64>>) -> Self {
        assert_eq!(entries.len(), r * r);
        RMat { r, n, entries }
    }

    pub fn entry(&self, i: usize, j: usize) -> &[u64] {
        &self.entries[i * self.r + j]
    }

    pub fn mul(&self, other: &RMat, gf: &Gf) -> RMat {
        let (r, n) = (self.r, self.n);
        let mut entries = vec![vec![0; n]; r * r];
        for i in 0..r {
            for j in 0..r {
                let e = &mut entries[i * r + j];
                for k in 0..r {
                    let p = trunc_mul(gf, self.entry(i, k), other.entry(k, j), n);
                    for (x, y) in e.iter_mut().zip(p) {
                        *x = gf.add_e(*x, y);
                    }
                }
            }
        }
        RMat { r, n, entries }
    }

    /// `g·v` with `v` read as a column of `R`-coordinates.
    pub fn act(&self, space: &ModuleSpace, v: u64) -> u64 {
        let gf = space.gf();
        let coords: Vec<Vec<u64>> = (1..=self.r).map(|k| space.coord(v, k)).collect();
        let out: Vec<Vec<u64>> = (0..self.r)
            .map(|i| {
                let mut acc = vec![0; self.n];
                for (j, c) in coords.iter().enumerate() {
                    for (x, y) in acc.iter_mut().zip(trunc_mul(gf, self.entry(i, j), c, self.n)) {
                        *x = gf.add_e(*x, y);
                    }
                }
                acc
            })
            .collect();
        space.from_coords(&out)
    }

    /// The permutation of element indices induced by `g`.
    pub fn permutation(&self, space: &ModuleSpace) -> Vec<u64> {
        space.elements().map(|v| self.act(space, v)).collect()
    }
}

/// A finite matrix group given by its element list.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub elements: Vec<RMat>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self, gf: &Gf) -> Vec<RMat> {
        let Some(first) = self.elements.first() else { return Vec::new() };
        let id = RMat::identity(first.r, first.n);
        let mut gens: Vec<RMat> = Vec::new();
        let mut generated: HashSet<RMat> = HashSet::from([id]);
        for g in &self.elements {
            if generated.contains(g) {
                continue;
            }
            gens.push(g.clone());
            generated = closure(&gens, gf, first.r, first.n);
            if generated.len() == self.elements.len() {
                break;
            }
        }
        gens
    }
}

fn closure(gens: &[RMat], gf: &Gf, r: usize, n: usize) -> HashSet<RMat> {
    let id = RMat::identity(r, n);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g, gf);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn for_each_product(choices: &[Vec<Vec<u64>>], mut f: impl FnMut(&[usize])) {
    let mut idx = vec![0usize; choices.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    loop {
        f(&idx);
        let mut i = 0;
        loop {
            if i == idx.len() {
                return;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// All elements of `F_q[t]/(t^n)` whose coefficients below `t^low` are fixed to `prefix`.
fn ring_elems(gf: &Gf, n: usize, prefix: &[u64]) -> Vec<Vec<u64>> {
    let free = n - prefix.len();
    let q = gf.q();
    let count = q.pow(free as u32);
    (0..count)
        .map(|mut x| {
            let mut v = prefix.to_vec();
            for _ in 0..free {
                v.push(x % q);
                x /= q;
            }
            v
        })
        .collect()
}

fn matrices_from(r: usize, n: usize, choices: Vec<Vec<Vec<u64>>>) -> MatrixGroup {
    let mut elements = Vec::new();
    for_each_product(&choices, |idx| {
        let entries = idx.iter().enumerate().map(|(e, &i)| choices[e][i].clone()).collect();
        elements.push(RMat::from_entries(r, n, entries));
    });
    MatrixGroup { elements }
}

/// Matrices congruent mod `t` to upper triangular with unit diagonal.
pub fn group_u(space: &ModuleSpace) -> MatrixGroup {
    let (gf, r, n) = (space.gf(), space.r(), space.n());
    let mut choices = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let prefix: &[u64] = match i.cmp(&j) {
                std::cmp::Ordering::Greater => &[0],
                std::cmp::Ordering::Equal => &[1],
                std::cmp::Ordering::Less => &[],
            };
            choices.push(ring_elems(gf, n, prefix));
        }
    }
    matrices_from(r, n, choices)
}

pub fn group_u_order(q: u64, r: usize, n: usize) -> u64 {
    q.pow((r * (r - 1) / 2 + r * r * (n - 1)) as u32)
}

/// Matrices congruent to the identity modulo `t^{n'}`.
pub fn reduction_kernel(space: &ModuleSpace, n_prime: usize) -> MatrixGroup {
    let (gf, r, n) = (space.gf(), space.r(), space.n());
    let k = n_prime.min(n);
    let mut choices = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut prefix = vec![0; k];
            if i == j && k > 0 {
                prefix[0] = 1;
            }
            choices.push(ring_elems(gf, n, &prefix));
        }
    }
    matrices_from(r, n, choices)
}
