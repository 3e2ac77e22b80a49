//! Reciprocal maps `ρ: V̊ → R`: axioms, functoriality, the exponential
//! polynomial `e_ρ`, fiber classification and the identity suite.

mod identities;

use thiserror::Error;

use crate::fields::{Field, FieldError, Gf, Ring};
use crate::levelmod::{free_submodules, FreeSubmodule, LinearMap, ModuleSpace, QuotientMap};
use crate::symalg::{FrRing, SymError, TauPoly, UniPoly};

pub use identities::{verify_identity, IdentityName, IdentityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipError {
    #[error("support of the map is not an A-submodule: {0}")]
    NotSubmodule(String),
    #[error("support of the map is not free: {0}")]
    NotFree(String),
    #[error(transparent)]
    NonAdditive(#[from] SymError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("pushforward along the zero map")]
    ZeroMap,
    #[error("{0}")]
    Unsupported(String),
}

/// A table `v ↦ ρ(v)` on the nonzero elements of a space; index `0` holds zero.
#[derive(Clone, Debug)]
pub struct RecipMap<R: Ring> {
    space: ModuleSpace,
    ring: R,
    values: Vec<R::Elem>,
}

/// Result of an axiom check; violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<R: Ring> RecipMap<R> {
    pub fn from_fn(space: ModuleSpace, ring: R, f: impl Fn(u64) -> R::Elem) -> Self {
        let values = space
            .elements()
            .map(|v| if v == 0 { ring.zero() } else { f(v) })
            .collect();
        RecipMap { space, ring, values }
    }

    pub fn from_table(space: ModuleSpace, ring: R, mut values: Vec<R::Elem>) -> Self {
        assert_eq!(values.len() as u64, space.size());
        values[0] = ring.zero();
        RecipMap { space, ring, values }
    }

    pub fn zero(space: ModuleSpace, ring: R) -> Self {
        Self::from_fn(space, ring.clone(), |_| ring.zero())
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }
    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn value(&self, v: u64) -> &R::Elem {
        &self.values[v as usize]
    }
    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    pub fn set(&mut self, v: u64, x: R::Elem) {
        assert!(v != 0);
        self.values[v as usize] = x;
    }

    /// `v ↦ u·ρ(v)`.
    pub fn scaled(&self, u: &R::Elem) -> Self {
        let values = self.values.iter().map(|x| self.ring.mul(u, x)).collect();
        RecipMap { space: self.space.clone(), ring: self.ring.clone(), values }
    }

    pub fn check_fq_axioms(&self) -> AxiomReport {
        let (s, k) = (&self.space, &self.ring);
        let mut rep = AxiomReport::default();
        for v in s.nonzero() {
            for w in (v + 1)..s.size() {
                let vw = s.add(v, w);
                if vw == 0 {
                    continue;
                }
                rep.checked += 1;
                let (a, b) = (self.value(v), self.value(w));
                let lhs = k.mul(a, b);
                let rhs = k.mul(self.value(vw), &k.add(a, b));
                if lhs != rhs {
                    rep.violations.push(format!("ρ({v})ρ({w}) ≠ ρ({vw})(ρ({v})+ρ({w}))"));
                }
            }
            for alpha in s.gf().units().skip(1) {
                rep.checked += 1;
                let av = s.scale(alpha, v);
                if k.mul(&k.from_fq(alpha), self.value(av)) != *self.value(v) {
                    rep.violations.push(format!("{alpha}·ρ({alpha}·{v}) ≠ ρ({v})"));
                }
            }
        }
        rep
    }

    /// `tρ(tv) = Σ_{v'∈V_1} ρ(v−v')` for `v ∉ V_1`, after the `F_q` axioms.
    pub fn check_a_axioms(&self, t: &R::Elem) -> AxiomReport {
        let mut rep = self.check_fq_axioms();
        if !rep.ok() {
            return rep;
        }
        let (s, k) = (&self.space, &self.ring);
        for v in s.nonzero().filter(|&v| !s.in_level(v, 1)) {
            rep.checked += 1;
            let lhs = k.mul(t, self.value(s.t_mul(v)));
            let rhs = k.sum(s.level(1).map(|w| self.value(s.sub(v, w))));
            if lhs != rhs {
                rep.violations.push(format!("tρ(t·{v}) ≠ Σρ({v}−v')"));
            }
        }
        rep
    }

    /// `i^*ρ = ρ∘i`; `table[w]` is `i(w)` for `w` in `sub`.
    pub fn pullback(&self, sub: &ModuleSpace, table: &[u64]) -> Self {
        RecipMap::from_fn(sub.clone(), self.ring.clone(), |w| self.value(table[w as usize]).clone())
    }

    /// Extension by zero along an injection `i: self.space → target`.
    pub fn push_zero(&self, target: &ModuleSpace, table: &[u64]) -> Self {
        let mut values = vec![self.ring.zero(); target.size() as usize];
        for w in self.space.nonzero() {
            values[table[w as usize] as usize] = self.value(w).clone();
        }
        RecipMap { space: target.clone(), ring: self.ring.clone(), values }
    }

    /// Fiber sums along a quotient map.
    pub fn push_quot(&self, p: &QuotientMap) -> Self {
        RecipMap::from_fn(p.dst.clone(), self.ring.clone(), |u| {
            self.ring.sum(p.fiber(u).iter().map(|&v| self.value(v)))
        })
    }

    /// `f_* = i_* ∘ p_*` for `f = i∘p`.
    pub fn push_general(&self, f: &LinearMap) -> Result<Self, RecipError> {
        if f.images.iter().all(|&b| b == 0) {
            return Err(RecipError::ZeroMap);
        }
        let (p, i) = f.factor();
        Ok(self.push_quot(&p).push_zero(&f.dst, &i))
    }

    /// The same pushforward from the fiber-sum formula directly.
    pub fn push_fiber_sums(&self, f: &LinearMap) -> Self {
        let mut values = vec![self.ring.zero(); f.dst.size() as usize];
        for v in self.space.nonzero() {
            let w = f.apply(v) as usize;
            values[w] = self.ring.add(&values[w], self.value(v));
        }
        RecipMap::from_table(f.dst.clone(), self.ring.clone(), values)
    }

    /// `e_ρ(X) = X·∏_{v≠0}(1 − ρ(v)X)` as a polynomial.
    pub fn exp_unipoly(&self) -> UniPoly<R::Elem> {
        let k = &self.ring;
        let mut acc = UniPoly::x(k);
        for v in self.space.nonzero() {
            let rho = self.value(v);
            if k.is_zero(rho) {
                continue;
            }
            let factor = UniPoly::from_coeffs(k, vec![k.one(), k.neg(rho)]);
            acc = acc.mul(&factor, k);
        }
        acc
    }

    pub fn exp_poly(&self) -> Result<TauPoly<R::Elem>, RecipError> {
        Ok(TauPoly::from_unipoly(&self.exp_unipoly(), &self.ring)?)
    }
}

impl RecipMap<FrRing<Gf>> {
    /// `v ↦ 1/v` in the fractions over `F_q` of the coordinate variables.
    pub fn universal(space: &ModuleSpace) -> Self {
        let ring = FrRing::with_names(space.gf().clone(), space.var_names());
        let s = space.clone();
        RecipMap::from_fn(space.clone(), ring.clone(), move |v| {
            ring.recip_linear(&s.digits(v)).expect("nonzero vector")
        })
    }
}

impl<K: Field> RecipMap<K> {
    /// `v ↦ λ(v)^{-1}` for the `F_q`-linear `λ` with `λ(X_i) = basis_values[i]`.
    pub fn from_linear(space: &ModuleSpace, field: &K, basis_values: &[K::Elem]) -> Result<Self, RecipError> {
        let lam = linear_values(space, field, basis_values);
        let mut values = vec![field.zero(); lam.len()];
        for v in space.nonzero() {
            values[v as usize] = field.inv(&lam[v as usize])?;
        }
        Ok(RecipMap { space: space.clone(), ring: field.clone(), values })
    }

    /// `W = {0} ∪ {ρ ≠ 0}` with `λ = ρ^{-1}` on it; checks that `W` is a free
    /// submodule and that `λ` is additive.
    pub fn fiber_class(&self) -> Result<FiberClass<K::Elem>, RecipError> {
        let (s, k) = (&self.space, &self.ring);
        let members: Vec<u64> = s.elements().filter(|&v| v == 0 || !k.is_zero(self.value(v))).collect();
        let basis = crate::levelmod::basis_of(s, &members);
        if s.span(&basis) != members {
            return Err(RecipError::NotSubmodule("support is not closed under addition".into()));
        }
        if let Some(&v) = members.iter().find(|&&v| !self.is_member(s.t_mul(v))) {
            return Err(RecipError::NotSubmodule(format!("t·{v} leaves the support")));
        }
        let socle = members.iter().filter(|&&v| s.in_level(v, 1)).count() as u64;
        let rank = socle.ilog(s.q()) as usize;
        if s.q().pow((rank * s.n()) as u32) != members.len() as u64 {
            return Err(RecipError::NotFree(format!(
                "|W| = {} but W ∩ V_1 has dimension {rank}",
                members.len()
            )));
        }
        let mut lambda = vec![None; s.size() as usize];
        lambda[0] = Some(k.zero());
        for &v in &members[1..] {
            lambda[v as usize] = Some(k.inv(self.value(v))?);
        }
        let lam = |v: u64| lambda[v as usize].clone().expect("member");
        for &v in &members {
            for &b in &basis {
                if lam(s.add(v, b)) != k.add(&lam(v), &lam(b)) {
                    return Err(RecipError::NotSubmodule(format!("λ is not additive at {v}+{b}")));
                }
            }
            for alpha in s.gf().units() {
                if lam(s.scale(alpha, v)) != k.mul(&k.from_fq(alpha), &lam(v)) {
                    return Err(RecipError::NotSubmodule(format!("λ is not F_q-linear at {v}")));
                }
            }
        }
        Ok(FiberClass { members, rank, lambda })
    }

    fn is_member(&self, v: u64) -> bool {
        v == 0 || !self.ring.is_zero(self.value(v))
    }
}

/// `λ(v)` for every `v`, from the values on the coordinate basis.
pub fn linear_values<K: Ring>(space: &ModuleSpace, field: &K, basis_values: &[K::Elem]) -> Vec<K::Elem> {
    assert_eq!(basis_values.len(), space.dim());
    space
        .elements()
        .map(|v| {
            field.sum(
                space
                    .digits(v)
                    .iter()
                    .zip(basis_values)
                    .filter(|(&c, _)| c != 0)
                    .map(|(&c, b)| field.mul(&field.from_fq(c), b))
                    .collect::<Vec<_>>()
                    .iter(),
            )
        })
        .collect()
}

/// The support `W` of a field-valued map and `λ = ρ^{-1}` on it.
#[derive(Clone, Debug)]
pub struct FiberClass<E> {
    pub members: Vec<u64>,
    pub rank: usize,
    pub lambda: Vec<Option<E>>,
}

impl<E> FiberClass<E> {
    /// Indices of the rank-`s` free submodules equal to `W`; a valid map has exactly one.
    pub fn strata(&self, space: &ModuleSpace) -> Vec<FreeSubmodule> {
        if self.rank == 0 {
            return Vec::new();
        }
        free_submodules(space, self.rank)
            .into_iter()
            .filter(|w| w.elements(space) == self.members)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FunctionField, RatFuncField, TranscendentalField};
    use proptest::prelude::*;

    fn gf(q: u64) -> Gf {
        Gf::of_order(q).unwrap()
    }

    #[test]
    fn universal_map_is_reciprocal() {
        for (q, d) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let rho = RecipMap::universal(&ModuleSpace::plain(gf(q), d));
            assert!(rho.check_fq_axioms().ok(), "q={q} d={d}");
            assert!(rho.check_a_axioms(&rho.ring().one()).ok());
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let k = RatFuncField::new(gf(2));
        let space = ModuleSpace::plain(gf(2), 2);
        let mut rho = RecipMap::from_linear(&space, &k, &[k.t(), k.poly(&[1, 0, 1])]).unwrap();
        assert!(rho.check_fq_axioms().ok());
        let bumped = k.add(rho.value(3), &k.one());
        rho.set(3, bumped);
        assert!(!rho.check_fq_axioms().ok());
    }

    #[test]
    fn a_axiom_failure_for_bad_table() {
        let k = RatFuncField::new(gf(2));
        let space = ModuleSpace::new(gf(2), 1, 2);
        let rho = RecipMap::from_table(space, k.clone(), vec![k.zero(), k.t_pow(-1), k.one(), k.one()]);
        assert!(!rho.check_a_axioms(&k.t()).ok());
    }

    #[test]
    fn exp_of_small_maps() {
        let k = RatFuncField::new(gf(2));
        let space = ModuleSpace::plain(gf(2), 1);
        let c = k.poly(&[1, 1]);
        let rho = RecipMap::from_linear(&space, &k, std::slice::from_ref(&c)).unwrap();
        let e = rho.exp_poly().unwrap();
        assert_eq!(e.coeffs(), &[k.one(), k.neg(&k.inv(&c).unwrap())]);
        let uni = RecipMap::universal(&ModuleSpace::plain(gf(2), 2));
        let f = uni.exp_unipoly();
        assert_eq!(f.degree(), Some(4));
        assert!(uni.ring().is_zero(&f.coeff(uni.ring(), 3)));
        let zero = RecipMap::zero(space, k.clone());
        assert_eq!(zero.exp_poly().unwrap().coeffs(), &[k.one()]);
    }

    #[test]
    fn quotient_pushforward() {
        let v = ModuleSpace::plain(gf(2), 2);
        let rho = RecipMap::universal(&v);
        let p = QuotientMap::new(&v, &[2]);
        let pushed = rho.push_quot(&p);
        let k = rho.ring();
        assert_eq!(*pushed.value(p.apply(1)), k.add(rho.value(1), rho.value(3)));
        assert!(pushed.check_fq_axioms().ok());
        let id = QuotientMap::new(&v, &[]);
        assert_eq!(rho.push_quot(&id).values(), rho.values());
        // p_* ∘ j_* = id for the section j.
        let j: Vec<u64> = p.dst.elements().map(|u| p.section(u)).collect();
        let small = RecipMap::universal(&p.dst);
        let round = small.push_zero(&v, &j).push_quot(&p);
        assert_eq!(round.values(), small.values());
    }

    #[test]
    fn general_pushforward_matches_fiber_sums() {
        let v = ModuleSpace::plain(gf(3), 2);
        let w = ModuleSpace::plain(gf(3), 3);
        let rho = RecipMap::universal(&v);
        for images in [vec![1, 3], vec![1, 2], vec![0, 9], vec![4, 8]] {
            let f = LinearMap { src: v.clone(), dst: w.clone(), images };
            let a = rho.push_general(&f).unwrap();
            assert_eq!(a.values(), rho.push_fiber_sums(&f).values());
            assert!(a.check_fq_axioms().ok());
        }
        let zero = LinearMap { src: v.clone(), dst: w, images: vec![0, 0] };
        assert_eq!(rho.push_general(&zero).unwrap_err(), RecipError::ZeroMap);
    }

    #[test]
    fn pullback_and_extension() {
        let v = ModuleSpace::plain(gf(2), 2);
        let line = ModuleSpace::plain(gf(2), 1);
        let rho = RecipMap::universal(&v);
        let table = [0, 1];
        let back = rho.pullback(&line, &table);
        assert_eq!(back.value(1), rho.value(1));
        assert!(back.ring().is_zero(back.value(0)));
        let again = back.push_zero(&v, &table).pullback(&line, &table);
        assert_eq!(again.values(), back.values());
    }

    #[test]
    fn fiber_classes() {
        let k = TranscendentalField::new(RatFuncField::new(gf(2)), &["u", "w"]);
        let v = ModuleSpace::plain(gf(2), 2);
        let rho = RecipMap::from_linear(&v, &k, &[k.gen(0), k.gen(1)]).unwrap();
        let fc = rho.fiber_class().unwrap();
        assert_eq!((fc.members.len(), fc.rank), (4, 2));
        assert_eq!(fc.strata(&v).len(), 1);
        let zero = RecipMap::zero(v.clone(), k.clone());
        assert_eq!(zero.fiber_class().unwrap().rank, 0);
        let line = ModuleSpace::plain(gf(2), 1);
        let small = RecipMap::from_linear(&line, &k, &[k.gen(0)]).unwrap();
        let ext = small.push_zero(&v, &[0, 2]);
        let fc = ext.fiber_class().unwrap();
        assert_eq!((fc.members.clone(), fc.rank), (vec![0, 2], 1));
        assert_eq!(fc.strata(&v).len(), 1);
    }

    fn eval_field() -> &'static crate::fields::EvalField {
        static F: std::sync::OnceLock<crate::fields::EvalField> = std::sync::OnceLock::new();
        F.get_or_init(|| crate::fields::EvalField::new(&gf(2), 20).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn random_injective_maps(a in 1u64..1<<20, b in 1u64..1<<20, c in 1u64..1<<20) {
            let big = eval_field().clone();
            let space = ModuleSpace::plain(gf(2), 3);
            let lam = linear_values(&space, &big, &[a, b, c]);
            prop_assume!(space.nonzero().all(|v| lam[v as usize] != 0));
            let rho = RecipMap::from_linear(&space, &big, &[a, b, c]).unwrap();
            prop_assert!(rho.check_fq_axioms().ok());
            prop_assert!(rho.exp_poly().is_ok());
            // The pushforward of a fiberwise invertible map stays invertible.
            let p = QuotientMap::new(&space, &[a % 7 + 1]);
            let pushed = rho.push_quot(&p);
            prop_assert!(p.dst.nonzero().all(|u| *pushed.value(u) != 0));
        }
    }
}
