//! Drinfeld `F_q[t]`-modules built from `A`-reciprocal maps, and the
//! passage between reciprocal maps and level structures.

pub mod constructions;

use thiserror::Error;

use crate::fields::FunctionField;
use crate::levelmod::ModuleSpace;
use crate::recipmap::{FiberClass, RecipError, RecipMap};
use crate::symalg::{TauPoly, UniPoly};

pub use constructions::{carlitz_t1, carlitz_t2, extension_by_zero, generic_rank2, CarlitzT2Field, GenericField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrinfeldError {
    #[error("map is not A-reciprocal: {0}")]
    NotReciprocal(String),
    #[error("not a level structure: {0}")]
    NotLevelStructure(String),
    #[error("product formula and composition disagree for {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Recip(#[from] RecipError),
}

/// `φ` determined by `φ_t`; `φ_a` for other `a` comes from composition.
#[derive(Clone, Debug)]
pub struct DrinfeldModule<K: FunctionField> {
    field: K,
    phi_t: TauPoly<K::Elem>,
}

/// Outcome of [`DrinfeldModule::check_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub failures: Vec<String>,
}

impl RankReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<K: FunctionField> DrinfeldModule<K> {
    pub fn new(field: K, phi_t: TauPoly<K::Elem>) -> Self {
        DrinfeldModule { field, phi_t }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn phi_t(&self) -> &TauPoly<K::Elem> {
        &self.phi_t
    }

    /// `φ_a` for `a = Σ a_i t^i ∈ F_q[t]`.
    pub fn phi_a(&self, a: &[u64]) -> TauPoly<K::Elem> {
        let k = &self.field;
        let mut acc = TauPoly::from_coeffs(k, Vec::new());
        let mut power = TauPoly::constant(k, k.one());
        for (i, &c) in a.iter().enumerate() {
            if i > 0 {
                power = self.phi_t.compose(&power, k);
            }
            if c != 0 {
                acc = acc.add(&power.scale(&k.from_fq(c), k), k);
            }
        }
        acc
    }

    /// `a ∈ F_q[t]` as an element of the field.
    pub fn scalar(&self, a: &[u64]) -> K::Elem {
        let k = &self.field;
        let t = k.t();
        a.iter().rev().fold(k.zero(), |acc, &c| k.add(&k.mul(&acc, &t), &k.from_fq(c)))
    }

    /// For `a ∈ {t, t²}`: `τ`-degree `r·deg a`, nonzero top coefficient, `dφ_a = a`.
    pub fn check_rank(&self, r: usize) -> RankReport {
        let k = &self.field;
        let mut failures = Vec::new();
        for deg in 1..=2 {
            let mut a = vec![0; deg + 1];
            a[deg] = 1;
            let phi = self.phi_a(&a);
            if phi.degree() != Some(r * deg) {
                failures.push(format!("deg_τ φ_t^{deg} = {:?}, expected {}", phi.degree(), r * deg));
            } else if phi.leading().is_none_or(|c| k.is_zero(c)) {
                failures.push(format!("top coefficient of φ_t^{deg} vanishes"));
            }
            if phi.d(k) != self.scalar(&a) {
                failures.push(format!("dφ_t^{deg} ≠ t^{deg}"));
            }
        }
        RankReport { rank: r, failures }
    }

    /// Evaluates `φ_a(x)`.
    pub fn act(&self, a: &[u64], x: &K::Elem) -> K::Elem {
        self.phi_a(a).eval(x, &self.field)
    }
}

/// `a·X·∏_{v∈V̊_a}(1 − ρ(v)X)` for `a = αt^ν`, whose kernel on `V_n` is `V_ν`.
pub fn phi_direct<K: FunctionField>(rho: &RecipMap<K>, alpha: u64, nu: usize) -> Result<TauPoly<K::Elem>, RecipError> {
    let (k, s) = (rho.ring(), rho.space());
    let a = k.mul(&k.from_fq(alpha), &k.pow(&k.t(), nu as u64));
    let mut acc = UniPoly::monomial(k, a, 1);
    for v in s.level(nu).skip(1) {
        let r = rho.value(v);
        if !k.is_zero(r) {
            acc = acc.mul(&UniPoly::from_coeffs(k, vec![k.one(), k.neg(r)]), k);
        }
    }
    Ok(TauPoly::from_unipoly(&acc, k)?)
}

/// `φ_t` from an `A`-reciprocal map, cross-checked against every `a ∈ Div(t^n)`.
pub fn phi_from_recip<K: FunctionField>(rho: &RecipMap<K>) -> Result<DrinfeldModule<K>, DrinfeldError> {
    let k = rho.ring();
    let axioms = rho.check_a_axioms(&k.t());
    if !axioms.ok() {
        return Err(DrinfeldError::NotReciprocal(axioms.violations.join("; ")));
    }
    let phi = DrinfeldModule::new(k.clone(), phi_direct(rho, 1, 1)?);
    for (alpha, nu) in rho.space().divisors() {
        let mut a = vec![0; nu + 1];
        a[nu] = alpha;
        if phi_direct(rho, alpha, nu)? != phi.phi_a(&a) {
            return Err(DrinfeldError::Inconsistent(format!("{alpha}·t^{nu}")));
        }
    }
    Ok(phi)
}

/// The data recovered from a field-valued `A`-reciprocal map.
#[derive(Clone, Debug)]
pub struct LevelData<K: FunctionField> {
    pub fiber: FiberClass<K::Elem>,
    pub phi: DrinfeldModule<K>,
}

impl<K: FunctionField> LevelData<K> {
    pub fn lambda(&self, v: u64) -> Option<&K::Elem> {
        self.fiber.lambda[v as usize].as_ref()
    }
}

/// `(W, λ, φ)` with `λ(av) = φ_a(λ(v))` verified on `W` for `a ∈ {t} ∪ F_q`.
pub fn level_from_recip<K: FunctionField>(rho: &RecipMap<K>) -> Result<LevelData<K>, DrinfeldError> {
    let phi = phi_from_recip(rho)?;
    let fiber = rho.fiber_class()?;
    let (k, s) = (rho.ring(), rho.space());
    let lam = |v: u64| fiber.lambda[v as usize].clone().expect("member of W");
    for &v in &fiber.members {
        if lam(s.t_mul(v)) != phi.act(&[0, 1], &lam(v)) {
            return Err(DrinfeldError::NotLevelStructure(format!("λ(t·{v}) ≠ φ_t(λ({v}))")));
        }
        for alpha in s.gf().units() {
            if lam(s.scale(alpha, v)) != k.mul(&k.from_fq(alpha), &lam(v)) {
                return Err(DrinfeldError::NotLevelStructure(format!("λ({alpha}·{v}) ≠ {alpha}·λ({v})")));
            }
        }
    }
    if fiber.rank > 0 {
        let rep = phi.check_rank(fiber.rank);
        if !rep.ok() {
            return Err(DrinfeldError::NotLevelStructure(rep.failures.join("; ")));
        }
    }
    Ok(LevelData { fiber, phi })
}

/// `ρ(i(w)) = λ'(w)^{-1}` and zero off the image, after checking that `λ'` is
/// an injective `A`-linear map into the torsion of `φ`.
pub fn recip_from_level<K: FunctionField>(
    phi: &DrinfeldModule<K>,
    source: &ModuleSpace,
    lambda: &[K::Elem],
    target: &ModuleSpace,
    embedding: &[u64],
) -> Result<RecipMap<K>, DrinfeldError> {
    let k = phi.field();
    let bad = |m: String| Err(DrinfeldError::NotLevelStructure(m));
    if !k.is_zero(&lambda[0]) {
        return bad("λ(0) ≠ 0".into());
    }
    let mut seen = std::collections::HashSet::new();
    for w in source.elements() {
        if !seen.insert(lambda[w as usize].clone()) {
            return bad(format!("λ is not injective at {w}"));
        }
        if lambda[source.t_mul(w) as usize] != phi.act(&[0, 1], &lambda[w as usize]) {
            return bad(format!("λ(t·{w}) ≠ φ_t(λ({w}))"));
        }
        for b in (0..source.dim()).map(|i| source.from_digits(&unit(source.dim(), i))) {
            let sum = k.add(&lambda[w as usize], &lambda[b as usize]);
            if lambda[source.add(w, b) as usize] != sum {
                return bad(format!("λ is not additive at {w}+{b}"));
            }
        }
        for alpha in source.gf().units() {
            let scaled = k.mul(&k.from_fq(alpha), &lambda[w as usize]);
            if lambda[source.scale(alpha, w) as usize] != scaled {
                return bad(format!("λ is not F_q-linear at {w}"));
            }
        }
    }
    let mut values = vec![k.zero(); target.size() as usize];
    for w in source.nonzero() {
        values[embedding[w as usize] as usize] = k.inv(&lambda[w as usize]).map_err(RecipError::from)?;
    }
    Ok(RecipMap::from_table(target.clone(), k.clone(), values))
}

fn unit(dim: usize, i: usize) -> Vec<u64> {
    let mut d = vec![0; dim];
    d[i] = 1;
    d
}

/// Every `λ`-value is a root of `φ_{t^n}` and there are `q^{sn}` of them.
pub fn torsion_check<K: FunctionField>(data: &LevelData<K>, space: &ModuleSpace) -> Result<(), DrinfeldError> {
    let n = space.n();
    let mut tn = vec![0; n + 1];
    tn[n] = 1;
    let phi = data.phi.phi_a(&tn);
    let k = data.phi.field();
    let mut distinct = std::collections::HashSet::new();
    for &v in &data.fiber.members {
        let l = data.lambda(v).expect("member");
        if !k.is_zero(&phi.eval(l, k)) {
            return Err(DrinfeldError::NotLevelStructure(format!("λ({v}) is not t^n-torsion")));
        }
        distinct.insert(l.clone());
    }
    let expected = space.q().pow((data.fiber.rank * n) as u32) as usize;
    if distinct.len() != expected {
        return Err(DrinfeldError::NotLevelStructure(format!(
            "{} distinct torsion values, expected {expected}",
            distinct.len()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Field, Gf, RatFuncField, Ring};

    #[test]
    fn carlitz_level_t() {
        let rho = carlitz_t1();
        let k = rho.ring().clone();
        let phi = phi_from_recip(&rho).unwrap();
        assert_eq!(phi.phi_t().coeffs(), &[k.t(), k.one()]);
        assert!(phi.check_rank(1).ok());
        assert!(!phi.check_rank(2).ok());
        let data = level_from_recip(&rho).unwrap();
        assert_eq!(data.lambda(1), Some(&k.t()));
        torsion_check(&data, rho.space()).unwrap();
    }

    #[test]
    fn carlitz_level_t2_roundtrip() {
        let rho = carlitz_t2();
        let k = rho.ring().clone();
        assert!(rho.check_a_axioms(&k.t()).ok());
        let data = level_from_recip(&rho).unwrap();
        assert_eq!(data.fiber.members.len(), 4);
        assert_eq!(data.lambda(2), Some(&k.gen()));
        assert_eq!(data.phi.phi_t().coeffs(), &[k.t(), k.one()]);
        torsion_check(&data, rho.space()).unwrap();
        let lambda: Vec<_> = (0..4).map(|v| data.lambda(v).unwrap().clone()).collect();
        let space = rho.space().clone();
        let id: Vec<u64> = space.elements().collect();
        let back = recip_from_level(&data.phi, &space, &lambda, &space, &id).unwrap();
        assert_eq!(back.values(), rho.values());
        let mut corrupted = lambda.clone();
        corrupted[3] = k.add(&corrupted[3], &k.one());
        assert!(matches!(
            recip_from_level(&data.phi, &space, &corrupted, &space, &id),
            Err(DrinfeldError::NotLevelStructure(_))
        ));
    }

    #[test]
    fn generic_rank_two() {
        let rho = generic_rank2();
        let k = rho.ring().clone();
        let phi = phi_from_recip(&rho).unwrap();
        assert!(phi.check_rank(2).ok());
        let (u, w) = (k.gen(0), k.gen(1));
        let top = k.div(&k.t(), &k.mul(&k.mul(&u, &w), &k.add(&u, &w))).unwrap();
        assert_eq!(phi.phi_t().coeff(&k, 2), top);
        let data = level_from_recip(&rho).unwrap();
        torsion_check(&data, rho.space()).unwrap();
    }

    #[test]
    fn extension_by_zero_rank_one() {
        let rho = extension_by_zero();
        let data = level_from_recip(&rho).unwrap();
        assert_eq!(data.fiber.rank, 1);
        assert_eq!(data.fiber.strata(rho.space()).len(), 1);
        assert!(rho.check_a_axioms(&rho.ring().t()).ok());
    }

    #[test]
    fn zero_map_gives_trivial_module() {
        let k = RatFuncField::new(Gf::prime(2).unwrap());
        let space = ModuleSpace::new(Gf::prime(2).unwrap(), 2, 1);
        let rho = RecipMap::zero(space, k.clone());
        let data = level_from_recip(&rho).unwrap();
        assert_eq!(data.fiber.rank, 0);
        assert_eq!(data.phi.phi_t().coeffs(), &[k.t()]);
        assert_eq!(data.phi.phi_a(&[1, 0, 1]).coeffs(), &[k.poly(&[1, 0, 1])]);
    }
}
