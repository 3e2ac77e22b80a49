//! Free `A/t^n`-submodules, plain subspaces, and the maps between plain spaces.

use std::collections::HashSet;

use rayon::prelude::*;

use super::ModuleSpace;

/// A free submodule of rank `s`, given by a generator matrix in Hermite form:
/// row `pivots[j]` of generator `j` is `1`, the other pivot rows are `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSubmodule {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub gens: Vec<u64>,
}

impl FreeSubmodule {
    /// `i: V^s_n → V^r_n`, the basis vector `b_j` going to `gens[j]`.
    pub fn embed(&self, space: &ModuleSpace, source: &ModuleSpace, w: u64) -> u64 {
        (1..=self.rank).fold(0, |acc, j| {
            space.add(acc, space.act_poly(&source.coord(w, j), self.gens[j - 1]))
        })
    }

    /// Image table of the embedding, indexed by elements of `V^s_n`.
    pub fn embedding(&self, space: &ModuleSpace) -> (ModuleSpace, Vec<u64>) {
        let source = ModuleSpace::new(space.gf().clone(), self.rank, space.n());
        let table = source.elements().map(|w| self.embed(space, &source, w)).collect();
        (source, table)
    }

    pub fn elements(&self, space: &ModuleSpace) -> Vec<u64> {
        let mut e = self.embedding(space).1;
        e.sort_unstable();
        e
    }

    pub fn bitset(&self, space: &ModuleSpace) -> Vec<u64> {
        to_bitset(space, self.embedding(space).1.into_iter())
    }
}

pub(crate) fn to_bitset(space: &ModuleSpace, it: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut bits = vec![0u64; (space.size() as usize).div_ceil(64)];
    for v in it {
        bits[(v / 64) as usize] |= 1 << (v % 64);
    }
    bits
}

fn subsets(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, s, &mut Vec::new(), &mut out);
    out
}

/// All free submodules of rank `s`, without repetition.
pub fn free_submodules(space: &ModuleSpace, s: usize) -> Vec<FreeSubmodule> {
    let (r, n, q) = (space.r(), space.n(), space.q());
    assert!(s <= r);
    let mut out = Vec::new();
    for pivots in subsets(r, s) {
        // (generator j, row i, coefficients fixed to zero at the bottom)
        let mut slots: Vec<(usize, usize, usize)> = Vec::new();
        for (j, &p) in pivots.iter().enumerate() {
            for i in (0..r).filter(|i| !pivots.contains(i)) {
                slots.push((j, i, usize::from(i < p)));
            }
        }
        let widths: Vec<u32> = slots.iter().map(|&(_, _, z)| (n - z) as u32).collect();
        let total: u32 = widths.iter().sum();
        for mut code in 0..q.pow(total) {
            let mut coords = vec![vec![vec![0u64; n]; r]; s];
            for (j, &p) in pivots.iter().enumerate() {
                coords[j][p][0] = 1;
            }
            for (&(j, i, z), &w) in slots.iter().zip(&widths) {
                for c in 0..w as usize {
                    coords[j][i][z + c] = code % q;
                    code /= q;
                }
            }
            let gens = coords.iter().map(|c| space.from_coords(c)).collect();
            out.push(FreeSubmodule { rank: s, pivots: pivots.clone(), gens });
        }
    }
    out
}

fn gaussian_binomial(q: u64, r: usize, s: usize) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..s {
        num *= q.pow((r - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `[r choose s]_q · q^{(n−1)s(r−s)}`.
pub fn free_submodule_count(q: u64, r: usize, n: usize, s: usize) -> u64 {
    gaussian_binomial(q, r, s) * q.pow(((n - 1) * s * (r - s)) as u32)
}

/// Free submodules of rank `s` found by growing generated submodules one
/// generator at a time and comparing element sets. Only feasible for tiny spaces.
pub fn free_submodules_brute(space: &ModuleSpace, s: usize) -> HashSet<Vec<u64>> {
    free_submodules_brute_levels(space, s).pop().expect("level 0 is always present")
}

/// [`free_submodules_brute`] for every rank `0..=s` in one pass, as element bitsets.
pub fn free_submodules_brute_levels(space: &ModuleSpace, s: usize) -> Vec<HashSet<Vec<u64>>> {
    let n = space.n();
    let mut levels = vec![HashSet::from([to_bitset(space, std::iter::once(0))])];
    for _ in 0..s {
        let level = levels.last().expect("nonempty");
        let next = level
            .par_iter()
            .flat_map_iter(|bits| {
                let members: Vec<u64> = space.elements().filter(|&v| has(bits, v)).collect();
                // t^{n−1}·S as a set, grown by closure
                let mut socle = to_bitset(space, std::iter::once(0));
                let mut socle_elems = vec![0u64];
                for &v in &members {
                    let x = space.t_pow_mul(v, n - 1);
                    if has(&socle, x) {
                        continue;
                    }
                    let old = socle_elems.clone();
                    for alpha in space.gf().units() {
                        let ax = space.scale(alpha, x);
                        for &e in &old {
                            let y = space.add(e, ax);
                            socle[(y / 64) as usize] |= 1 << (y % 64);
                            socle_elems.push(y);
                        }
                    }
                }
                let mut found = Vec::new();
                // a g inside an extension already found gives that extension again, or a non-free one
                let mut covered = bits.clone();
                for g in space.elements() {
                    if has(&covered, g) {
                        continue;
                    }
                    if has(&socle, space.t_pow_mul(g, n - 1)) {
                        continue;
                    }
                    let cyclic: Vec<u64> = (0..n).map(|i| space.t_pow_mul(g, i)).collect();
                    let span = space.span(&cyclic);
                    let mut out = bits.clone();
                    for &m in &members {
                        for &c in &span {
                            let x = space.add(m, c);
                            out[(x / 64) as usize] |= 1 << (x % 64);
                        }
                    }
                    for (c, o) in covered.iter_mut().zip(&out) {
                        *c |= o;
                    }
                    found.push(out);
                }
                found
            })
            .collect();
        levels.push(next);
    }
    levels
}

fn has(bits: &[u64], v: u64) -> bool {
    bits[(v / 64) as usize] >> (v % 64) & 1 == 1
}

/// All subspaces of a plain space, including `0` and the whole space.
pub fn subspaces(space: &ModuleSpace) -> Vec<Vec<u64>> {
    assert!(space.is_plain());
    (0..=space.r())
        .flat_map(|s| free_submodules(space, s))
        .map(|w| w.gens)
        .collect()
}

/// An `F_q`-linear map between plain spaces, given by the images of the basis.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub src: ModuleSpace,
    pub dst: ModuleSpace,
    pub images: Vec<u64>,
}

impl LinearMap {
    pub fn apply(&self, v: u64) -> u64 {
        self.images.iter().enumerate().fold(0, |acc, (i, &b)| {
            let c = self.src.digit(v, i);
            if c == 0 {
                acc
            } else {
                self.dst.add(acc, self.dst.scale(c, b))
            }
        })
    }

    pub fn table(&self) -> Vec<u64> {
        self.src.elements().map(|v| self.apply(v)).collect()
    }

    pub fn kernel_basis(&self) -> Vec<u64> {
        let ker: Vec<u64> = self.src.elements().filter(|&v| self.apply(v) == 0).collect();
        basis_of(&self.src, &ker)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_basis().is_empty()
    }

    /// `f = i ∘ p` with `p` the quotient by the kernel and `i` injective.
    pub fn factor(&self) -> (QuotientMap, Vec<u64>) {
        let p = QuotientMap::new(&self.src, &self.kernel_basis());
        let i = p.dst.elements().map(|u| self.apply(p.section(u))).collect();
        (p, i)
    }
}

/// A basis extracted from a list of vectors.
pub fn basis_of(space: &ModuleSpace, vs: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vs {
        let mut with = basis.clone();
        with.push(v);
        if space.rank_of(&with) > basis.len() {
            basis = with;
        }
    }
    basis
}

/// `p: V → V/V'` for a plain space, with the section `j` that places
/// coordinates on the non-pivot positions of the reduced basis of `V'`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub src: ModuleSpace,
    pub dst: ModuleSpace,
    rows: Vec<(usize, Vec<u64>)>,
    free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(src: &ModuleSpace, sub_basis: &[u64]) -> Self {
        assert!(src.is_plain());
        let rows = src.echelon(sub_basis);
        let free: Vec<usize> = (0..src.dim()).filter(|i| !rows.iter().any(|(p, _)| p == i)).collect();
        let dst = ModuleSpace::plain(src.gf().clone(), free.len());
        QuotientMap { src: src.clone(), dst, rows, free }
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    pub fn apply(&self, v: u64) -> u64 {
        let gf = self.src.gf();
        let mut d = self.src.digits(v);
        for (p, row) in &self.rows {
            let c = d[*p];
            if c != 0 {
                for (x, y) in d.iter_mut().zip(row) {
                    *x = gf.sub_e(*x, gf.mul_e(c, *y));
                }
            }
        }
        let out: Vec<u64> = self.free.iter().map(|&i| d[i]).collect();
        self.dst.from_digits(&out)
    }

    pub fn section(&self, u: u64) -> u64 {
        let mut d = vec![0; self.src.dim()];
        for (k, &i) in self.free.iter().enumerate() {
            d[i] = self.dst.digit(u, k);
        }
        self.src.from_digits(&d)
    }

    /// Elements of the fiber over `u`.
    pub fn fiber(&self, u: u64) -> Vec<u64> {
        let base = self.section(u);
        let sub: Vec<u64> = self.rows.iter().map(|(_, r)| self.src.from_digits(r)).collect();
        self.src.span(&sub).into_iter().map(|w| self.src.add(base, w)).collect()
    }

    pub fn kernel(&self) -> Vec<u64> {
        self.fiber(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Gf;

    fn sp(q: u64, r: usize, n: usize) -> ModuleSpace {
        ModuleSpace::new(Gf::of_order(q).unwrap(), r, n)
    }

    #[test]
    fn small_counts() {
        assert_eq!(free_submodules(&sp(2, 2, 1), 1).len(), 3);
        assert_eq!(free_submodules(&sp(2, 1, 2), 1).len(), 1);
        assert_eq!(free_submodules(&sp(2, 2, 1), 2).len(), 1);
        assert_eq!(subspaces(&sp(2, 3, 1)).len(), 16);
    }

    #[test]
    fn matches_brute_force_small() {
        for (q, r, n) in [(2, 2, 2), (2, 3, 1), (3, 2, 1), (2, 1, 3), (4, 2, 1), (3, 1, 2)] {
            let s_ = sp(q, r, n);
            for s in 1..=r {
                let fast: HashSet<Vec<u64>> =
                    free_submodules(&s_, s).iter().map(|w| w.bitset(&s_)).collect();
                assert_eq!(fast.len() as u64, free_submodule_count(q, r, n, s));
                assert_eq!(fast.len(), free_submodules(&s_, s).len(), "duplicates");
                assert_eq!(fast, free_submodules_brute(&s_, s), "({q},{r},{n}) s={s}");
            }
        }
    }

    #[test]
    fn quotient_and_section() {
        let v = sp(2, 2, 1);
        let e2 = v.basis_elem(2, 1);
        let p = QuotientMap::new(&v, &[e2]);
        let e1 = v.basis_elem(1, 1);
        assert_eq!(p.apply(e1), p.apply(v.add(e1, e2)));
        assert_ne!(p.apply(e1), 0);
        for u in p.dst.elements() {
            assert_eq!(p.apply(p.section(u)), u);
        }
        let zero = QuotientMap::new(&v, &[]);
        assert_eq!(zero.quotient_dim(), 2);
        let all = QuotientMap::new(&v, &[e1, e2]);
        assert_eq!(all.quotient_dim(), 0);
    }

    #[test]
    fn factorization() {
        let v = sp(3, 3, 1);
        let w = sp(3, 2, 1);
        let f = LinearMap { src: v.clone(), dst: w.clone(), images: vec![1, 0, 2] };
        let (p, i) = f.factor();
        assert_eq!(p.quotient_dim(), 1);
        for x in v.elements() {
            assert_eq!(i[p.apply(x) as usize], f.apply(x));
        }
    }
}
