//! Dimension checks built on the rank engine.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::{
    binom, coeff_field, dim_formula, exponent_vectors, f_power, f_prime, monomials, ms_dim, pi_apply,
    products, special_sets, LinComb, Monomial, PresentationError, RankEngine, Row, Target,
};
use crate::fields::Ring;
use crate::levelmod::{free_submodules, group_u_order, MatrixGroup, ModuleSpace};

type Result<T> = std::result::Result<T, PresentationError>;

/// `dim_F R_{n,d}`, or `dim_{F_q} R_{V,d}` when `n = 1`.
pub fn dim_graded(engine: &RankEngine, space: &ModuleSpace, d: usize) -> Result<usize> {
    engine.dim(space, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBasisReport {
    pub d: usize,
    pub formula: u64,
    pub cardinality: usize,
    pub rank: usize,
    pub dim: usize,
    pub pass: bool,
}

/// The elements `f^α·e`, `e ∈ Δ_1⋯Δ_r`, `|α| = d − deg e`, should form a basis
/// of the degree-`d` piece.
pub fn verify_free_basis(engine: &RankEngine, space: &ModuleSpace, d: usize) -> Result<FreeBasisReport> {
    let f = coeff_field(space);
    let sets = special_sets(space);
    let mut basis = Vec::new();
    for e in products(&sets.delta) {
        if e.degree() > d {
            continue;
        }
        for alpha in exponent_vectors(space.r(), d - e.degree()) {
            basis.push(f_power(&sets, &f, &alpha).mul_monomial(&e));
        }
    }
    let rank = engine.rank_mod(space, d, &basis)?;
    let dim = engine.dim(space, d)?;
    let formula = dim_formula(space.q(), space.r(), space.n(), d);
    let pass = basis.len() as u64 == formula && rank == basis.len() && dim == rank;
    Ok(FreeBasisReport { d, formula, cardinality: basis.len(), rank, dim, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub d: usize,
    pub expected: u64,
    pub dim_kernel: usize,
    pub generator_count: usize,
    pub dim_generators: usize,
    pub generators_in_kernel: bool,
    pub pass: bool,
}

/// Rows `(π_W(x))_W` over all free submodules `W` of rank `1 ≤ s < r`, one
/// target per rank.
fn boundary_rows(space: &ModuleSpace, d: usize, xs: &[LinComb]) -> (Vec<Target>, Vec<Row>) {
    let mut targets = Vec::new();
    let mut maps = Vec::new();
    for s in 1..space.r() {
        let subs = free_submodules(space, s);
        let Some(first) = subs.first() else { continue };
        targets.push(Target::quotient(&first.embedding(space).0, d));
        for w in &subs {
            maps.push((targets.len() - 1, w.embedding(space).1));
        }
    }
    let rows = xs
        .iter()
        .map(|x| maps.iter().map(|(i, table)| (*i, pi_apply(space, table, x))).collect())
        .collect();
    (targets, rows)
}

/// `dim` of the degree-`d` part of `⋂_W Ker(π_W)`, and whether each of `gens` lies in it.
fn kernel_route(engine: &RankEngine, space: &ModuleSpace, d: usize, gens: &[LinComb]) -> Result<(usize, bool)> {
    let dim = engine.dim(space, d)?;
    if space.r() <= 1 {
        return Ok((dim, true));
    }
    let f = coeff_field(space);
    let mons: Vec<LinComb> = monomials(space, d).into_iter().map(|m| LinComb::monomial(&f, m)).collect();
    let (targets, rows) = boundary_rows(space, d, &mons);
    let image = engine.rank_rows(&targets, &rows)?;
    let (_, grows) = boundary_rows(space, d, gens);
    let inside = engine.rank_rows(&targets, &grows)? == 0;
    Ok((dim - image, inside))
}

/// The boundary ideal `I_n` in degree `d`: kernel of all `π_W` against the
/// span of `f^α·e` with `e ∈ E_1⋯E_r`.
pub fn boundary_ideal(engine: &RankEngine, space: &ModuleSpace, d: usize) -> Result<IdealReport> {
    let f = coeff_field(space);
    let sets = special_sets(space);
    let r = space.r();
    let mut gens = Vec::new();
    if d >= r {
        for e in products(&sets.e) {
            for alpha in exponent_vectors(r, d - r) {
                gens.push(f_power(&sets, &f, &alpha).mul_monomial(&e));
            }
        }
    }
    let (dim_kernel, inside) = kernel_route(engine, space, d, &gens)?;
    let dim_generators = engine.rank_mod(space, d, &gens)?;
    let expected = group_u_order(space.q(), r, space.n()) * binom(d as i64 - 1, r as i64 - 1);
    let pass = dim_kernel as u64 == expected
        && dim_generators as u64 == expected
        && gens.len() as u64 == expected
        && inside;
    Ok(IdealReport { d, expected, dim_kernel, generator_count: gens.len(), dim_generators, generators_in_kernel: inside, pass })
}

/// Unordered bases `{v_1,…,v_r}` of a plain space.
fn bases(space: &ModuleSpace) -> Vec<Vec<u64>> {
    let r = space.r();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(space: &ModuleSpace, r: usize, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..space.size() {
            cur.push(v);
            if space.rank_of(cur) == cur.len() {
                rec(space, r, v + 1, cur, out);
            }
            cur.pop();
        }
    }
    rec(space, r, 1, &mut cur, &mut out);
    out
}

/// The ideal `I_V` of a plain space, compared with the span of
/// `1/(v_1⋯v_r)·m` over all bases and all monomials `m` of degree `d − r`.
pub fn iv_ideal(engine: &RankEngine, space: &ModuleSpace, d: usize) -> Result<IdealReport> {
    assert_eq!(space.n(), 1, "plain space expected");
    let f = coeff_field(space);
    let r = space.r();
    let mut set = BTreeSet::new();
    if d >= r {
        let rest = monomials(space, d - r);
        for b in bases(space) {
            let base = Monomial::new(b);
            for m in &rest {
                set.insert(base.mul(m));
            }
        }
    }
    let gens: Vec<LinComb> = set.into_iter().map(|m| LinComb::monomial(&f, m)).collect();
    let (dim_kernel, inside) = kernel_route(engine, space, d, &gens)?;
    let dim_generators = engine.rank_mod(space, d, &gens)?;
    let expected = space.q().pow((r * (r - 1) / 2) as u32) * binom(d as i64 - 1, r as i64 - 1);
    let pass = dim_kernel as u64 == expected && dim_generators as u64 == expected && inside;
    Ok(IdealReport { d, expected, dim_kernel, generator_count: gens.len(), dim_generators, generators_in_kernel: inside, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub s: usize,
    pub d: usize,
    pub computed: usize,
    pub expected: u64,
    pub pass: bool,
}

/// `dim (R_V/J_s)_d` with `J_s = ([1/v'] : 0 ≠ v' ∈ V_s)`, against the degree-`d`
/// dimension of `M_s`.
pub fn js_quotient(engine: &RankEngine, space: &ModuleSpace, s: usize, d: usize) -> Result<QuotientReport> {
    assert_eq!(space.n(), 1, "plain space expected");
    assert!(s <= space.r());
    let f = coeff_field(space);
    let dim = engine.dim(space, d)?;
    let mut killed = BTreeSet::new();
    if d >= 1 {
        let vs = 1..space.q().pow(s as u32);
        for m in monomials(space, d - 1) {
            for v in vs.clone() {
                killed.insert(m.mul(&Monomial::gen(v)));
            }
        }
    }
    let killed: Vec<LinComb> = killed.into_iter().map(|m| LinComb::monomial(&f, m)).collect();
    let computed = dim - engine.rank_mod(space, d, &killed)?;
    let expected = ms_dim(space.q(), space.r(), s, d);
    Ok(QuotientReport { s, d, computed, expected, pass: computed as u64 == expected })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub d: usize,
    pub group_order: usize,
    /// Dimension of `{x ∈ R_{n,d} : h·x = x for all h}`.
    pub fixed_dim: usize,
    /// Rank of the sums over `H`-orbits of monomials.
    pub orbit_sum_dim: usize,
}

/// `H`-invariants of the degree-`d` piece, `H` acting by `[1/v] ↦ [1/(hv)]`.
pub fn invariant_dim(engine: &RankEngine, space: &ModuleSpace, group: &MatrixGroup, d: usize) -> Result<InvariantReport> {
    let f = coeff_field(space);
    let mons = monomials(space, d);
    let gens: Vec<Vec<u64>> = group.generators(space.gf()).iter().map(|h| h.permutation(space)).collect();
    let dim = engine.dim(space, d)?;
    let rows: Vec<Row> = mons
        .iter()
        .map(|m| {
            let x = LinComb::monomial(&f, m.clone());
            gens.iter()
                .map(|p| (0, x.map_gens(&f, |v| Some(p[v as usize])).sub(&x, &f)))
                .collect()
        })
        .collect();
    let moved = if gens.is_empty() { 0 } else { engine.rank_rows(&[Target::quotient(space, d)], &rows)? };

    let perms: Vec<Vec<u64>> = group.elements.iter().map(|h| h.permutation(space)).collect();
    let mut seen = HashSet::new();
    let mut sums = Vec::new();
    for m in &mons {
        if seen.contains(m) {
            continue;
        }
        let orbit: BTreeSet<Monomial> =
            perms.iter().map(|p| m.map(|v| Some(p[v as usize])).expect("permutation")).collect();
        let mut sum = LinComb::zero(d);
        for o in orbit {
            sum.add_term(&f, o.clone(), &f.one());
            seen.insert(o);
        }
        sums.push(sum);
    }
    let orbit_sum_dim = engine.rank_mod(space, d, &sums)?;
    Ok(InvariantReport { d, group_order: group.order(), fixed_dim: dim - moved, orbit_sum_dim })
}

/// Rank in `R_{n,d}` of the image of the degree-`d` monomials of `R_{n'}`.
pub fn level_image_rank(engine: &RankEngine, space: &ModuleSpace, n_prime: usize, d: usize) -> Result<usize> {
    assert!(n_prime >= 1 && n_prime <= space.n());
    let f = coeff_field(space);
    let source = ModuleSpace::new(space.gf().clone(), space.r(), n_prime);
    let images: Vec<LinComb> = monomials(&source, d)
        .into_iter()
        .map(|m| super::level_map_apply(&source, space, &LinComb::monomial(&f, m)))
        .collect();
    engine.rank_mod(space, d, &images)
}

/// Whether `f'_{k,ν} − t^{ν−n}·f_k` lies in the span of the relations.
pub fn fk_scaling_check(engine: &RankEngine, space: &ModuleSpace, k: usize, nu: usize) -> Result<bool> {
    let f = coeff_field(space);
    let n = space.n();
    let fk = f_prime(space, &f, k, n);
    let scaled = fk.scale(&f.t_pow(nu as i64 - n as i64), &f);
    let diff = f_prime(space, &f, k, nu).sub(&scaled, &f);
    if diff.is_zero() {
        return Ok(true);
    }
    Ok(engine.rank_mod(space, 1, &[diff])? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Gf;
    use crate::levelmod::{group_u, reduction_kernel};

    fn sp(q: u64, r: usize, n: usize) -> ModuleSpace {
        ModuleSpace::new(Gf::of_order(q).unwrap(), r, n)
    }

    #[test]
    fn dims_small_grid() {
        let eng = RankEngine::probabilistic(3);
        for d in 1..=3 {
            assert_eq!(dim_graded(&eng, &sp(2, 2, 1), d).unwrap(), 2 * d + 1);
            assert_eq!(dim_graded(&eng, &sp(2, 1, 2), d).unwrap(), 2);
        }
        assert_eq!(dim_graded(&eng, &sp(2, 2, 2), 1).unwrap(), 12);
    }

    #[test]
    fn free_basis_small() {
        let eng = RankEngine::probabilistic(5);
        for (r, n, dmax) in [(2, 1, 3), (1, 2, 3), (2, 2, 2)] {
            for d in 1..=dmax {
                let rep = verify_free_basis(&eng, &sp(2, r, n), d).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
    }

    #[test]
    fn boundary_examples() {
        let eng = RankEngine::probabilistic(9);
        let s = sp(2, 2, 1);
        let rep = boundary_ideal(&eng, &s, 2).unwrap();
        assert_eq!((rep.dim_kernel, rep.expected), (2, 2));
        assert!(rep.pass);
        assert_eq!(boundary_ideal(&eng, &s, 3).unwrap().dim_kernel, 4);
        assert_eq!(boundary_ideal(&eng, &s, 1).unwrap().dim_kernel, 0);
        for d in 1..=3 {
            let rep = boundary_ideal(&eng, &sp(2, 1, 2), d).unwrap();
            assert_eq!(rep.dim_kernel, 2);
            assert!(rep.pass);
        }
    }

    #[test]
    fn iv_ideal_examples() {
        let eng = RankEngine::probabilistic(11);
        assert_eq!(iv_ideal(&eng, &sp(2, 2, 1), 2).unwrap().dim_kernel, 2);
        assert_eq!(iv_ideal(&eng, &sp(2, 2, 1), 3).unwrap().dim_kernel, 4);
        let rep = iv_ideal(&eng, &sp(3, 2, 1), 2).unwrap();
        assert_eq!(rep.dim_kernel, 3);
        assert!(rep.pass);
    }

    #[test]
    fn js_quotient_examples() {
        let eng = RankEngine::probabilistic(13);
        let v = sp(2, 2, 1);
        assert_eq!(js_quotient(&eng, &v, 0, 2).unwrap().computed, 5);
        let rep = js_quotient(&eng, &v, 1, 1).unwrap();
        assert_eq!((rep.computed, rep.expected), (2, 2));
        for d in 1..=3 {
            let rep = js_quotient(&eng, &v, 2, d).unwrap();
            assert_eq!(rep.computed, 0);
            assert!(rep.pass);
        }
    }

    #[test]
    fn invariants_of_u_and_reduction_kernel() {
        let eng = RankEngine::probabilistic(17);
        let s = sp(2, 2, 1);
        let rep = invariant_dim(&eng, &s, &group_u(&s), 2).unwrap();
        assert_eq!(rep.fixed_dim, 3);
        assert_eq!(rep.orbit_sum_dim, 3);
        let s = sp(2, 1, 2);
        assert_eq!(invariant_dim(&eng, &s, &group_u(&s), 3).unwrap().fixed_dim, 1);
        let h = reduction_kernel(&s, 1);
        for d in 1..=2 {
            let rep = invariant_dim(&eng, &s, &h, d).unwrap();
            assert_eq!(rep.fixed_dim, 1);
            assert_eq!(level_image_rank(&eng, &s, 1, d).unwrap(), 1);
        }
    }

    #[test]
    fn fk_scaling_small() {
        let eng = RankEngine::probabilistic(19);
        for (r, n) in [(1, 2), (2, 2), (1, 3)] {
            let s = sp(2, r, n);
            for k in 1..=r {
                for nu in 1..=n {
                    assert!(fk_scaling_check(&eng, &s, k, nu).unwrap(), "({r},{n}) k={k} nu={nu}");
                }
            }
        }
        // the wrong power of t is not a relation
        let s = sp(2, 2, 2);
        let f = coeff_field(&s);
        let wrong = f_prime(&s, &f, 1, 1).sub(&f_prime(&s, &f, 1, 2), &f);
        assert_eq!(eng.rank_mod(&s, 1, &[wrong]).unwrap(), 1);
    }

    #[test]
    fn bases_count() {
        // Unordered bases of F_2^2: 3, of F_3^2: 24, of F_2^3: 28.
        assert_eq!(bases(&sp(2, 2, 1)).len(), 3);
        assert_eq!(bases(&sp(3, 2, 1)).len(), 24);
        assert_eq!(bases(&sp(2, 3, 1)).len(), 28);
    }
}
