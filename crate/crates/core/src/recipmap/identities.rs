//! Exact checks of the identities satisfied by every `F_q`-reciprocal map.

use std::fmt;
use std::str::FromStr;

use crate::fields::{Ring, TryInv};
use crate::levelmod::{subspaces, LinearMap, ModuleSpace, QuotientMap};
use crate::symalg::{TauPoly, UniPoly};

use super::{RecipError, RecipMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityName {
    /// `1/e_ρ = 1/X + Σ −ρ(v)/(1−ρ(v)X)`, cleared of denominators.
    ExpLogDerivative,
    /// `∏ 1/(1−ρX) = X/e_ρ = −Σ 1/(1−ρX)` for `V ≠ 0`.
    ExpProductSum,
    /// `(Σ_{V'} ρ(v−v'))·∏_{V̊'} ρ(v') = ∏_{V'} ρ(v−v')`.
    FiberProduct,
    /// `(Σ_{V'} ρ(v−v'))·∏_{V̊'} (ρ(v)−ρ(v')) = ρ(v)^{|V'|}`.
    FiberPower,
    /// `(Σ_{V'} ρ(v−v'))·e_{i^*ρ}(1/ρ(v)) = 1`.
    FiberExp,
    /// `(p_*ρ)(p(v))·e_{i^*ρ}(1/ρ(v)) = 1`.
    QuotientReciprocal,
    /// `e_ρ ∘ u = u ∘ e_{uρ}`.
    ScalarCommute,
    /// `e_ρ = e_{p_*ρ} ∘ e_{i^*ρ}`.
    ExpFactorization,
    /// `f_k·∏_{V̊_{k−1}} ρ(v') = ∏_{V_{k−1}} ρ(X_k − v')`.
    LeadingLocalization,
}

impl IdentityName {
    pub const ALL: [IdentityName; 9] = [
        IdentityName::ExpLogDerivative,
        IdentityName::ExpProductSum,
        IdentityName::FiberProduct,
        IdentityName::FiberPower,
        IdentityName::FiberExp,
        IdentityName::QuotientReciprocal,
        IdentityName::ScalarCommute,
        IdentityName::ExpFactorization,
        IdentityName::LeadingLocalization,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityName::ExpLogDerivative => "exp-log-derivative",
            IdentityName::ExpProductSum => "exp-product-sum",
            IdentityName::FiberProduct => "fiber-product",
            IdentityName::FiberPower => "fiber-power",
            IdentityName::FiberExp => "fiber-exp",
            IdentityName::QuotientReciprocal => "quotient-reciprocal",
            IdentityName::ScalarCommute => "scalar-commute",
            IdentityName::ExpFactorization => "exp-factorization",
            IdentityName::LeadingLocalization => "leading-localization",
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityName {
    type Err = RecipError;
    fn from_str(s: &str) -> Result<Self, RecipError> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| RecipError::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: IdentityName,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx<'a, R: Ring> {
    rho: &'a RecipMap<R>,
    k: &'a R,
    report: IdentityReport,
}

impl<R: Ring> Ctx<'_, R> {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok {
            self.report.failures.push(what());
        }
    }

    fn rho(&self, v: u64) -> &R::Elem {
        self.rho.value(v)
    }

    /// `1 − ρ(v)X`.
    fn factor(&self, v: u64) -> UniPoly<R::Elem> {
        UniPoly::from_coeffs(self.k, vec![self.k.one(), self.k.neg(self.rho(v))])
    }

    fn prod_factors(&self, vs: impl Iterator<Item = u64>) -> UniPoly<R::Elem> {
        vs.fold(UniPoly::constant(self.k, self.k.one()), |acc, v| acc.mul(&self.factor(v), self.k))
    }

    /// `e_{i^*ρ}` for the subspace with the given elements.
    fn sub_exp(&self, elements: &[u64]) -> UniPoly<R::Elem> {
        self.prod_factors(elements.iter().copied().filter(|&v| v != 0)).shift(1, self.k)
    }
}

fn embedding_of(space: &ModuleSpace, gens: &[u64]) -> (ModuleSpace, Vec<u64>) {
    let sub = ModuleSpace::plain(space.gf().clone(), gens.len());
    let f = LinearMap { src: sub.clone(), dst: space.clone(), images: gens.to_vec() };
    let table = f.table();
    (sub, table)
}

/// Checks one identity over every admissible choice of `V'`, `v` and `u`.
pub fn verify_identity<R: TryInv>(name: IdentityName, rho: &RecipMap<R>) -> Result<IdentityReport, RecipError> {
    let s = rho.space();
    if !s.is_plain() {
        return Err(RecipError::Unsupported("identities are stated for plain spaces".into()));
    }
    let k = rho.ring();
    let mut c = Ctx { rho, k, report: IdentityReport { name, cases: 0, failures: Vec::new() } };
    let x = UniPoly::x(k);
    match name {
        IdentityName::ExpLogDerivative => {
            let p = c.prod_factors(s.nonzero());
            let mut sum = UniPoly::zero();
            for v in s.nonzero() {
                let pv = c.prod_factors(s.nonzero().filter(|&w| w != v));
                sum = sum.add(&pv.scale(c.rho(v), k), k);
            }
            let xp = x.mul(&p, k);
            let rhs = xp.mul(&p, k).sub(&xp.mul(&x, k).mul(&sum, k), k);
            c.expect(xp == rhs, || "X·P ≠ X·P² − X²·P·Σρ(v)P_v".into());
        }
        IdentityName::ExpProductSum => {
            if s.dim() > 0 {
                let p = c.prod_factors(s.nonzero());
                c.expect(x.mul(&p, k) == rho.exp_unipoly(), || "X·P ≠ e_ρ".into());
                let mut sum = UniPoly::zero();
                for v in s.nonzero() {
                    sum = sum.add(&c.prod_factors(s.nonzero().filter(|&w| w != v)), k);
                }
                let one = UniPoly::constant(k, k.one());
                c.expect(sum.neg(k) == one, || "−Σ_v ∏_{w≠v}(1−ρ(w)X) ≠ 1".into());
            }
        }
        IdentityName::FiberProduct
        | IdentityName::FiberPower
        | IdentityName::FiberExp
        | IdentityName::QuotientReciprocal => {
            for gens in subspaces(s) {
                let sub = s.span(&gens);
                let e_sub = c.sub_exp(&sub);
                let quot = (name == IdentityName::QuotientReciprocal).then(|| {
                    let p = QuotientMap::new(s, &gens);
                    let pushed = rho.push_quot(&p);
                    (p, pushed)
                });
                for v in s.nonzero().filter(|v| sub.binary_search(v).is_err()) {
                    let fiber_sum = k.sum(sub.iter().map(|&w| c.rho(s.sub(v, w))));
                    let nz = || sub.iter().copied().filter(|&w| w != 0);
                    match name {
                        IdentityName::FiberProduct => {
                            let lhs = k.mul(&fiber_sum, &k.product(nz().map(|w| c.rho(w))));
                            let rhs = k.product(sub.iter().map(|&w| c.rho(s.sub(v, w))));
                            c.expect(lhs == rhs, || format!("V'={gens:?}, v={v}"));
                        }
                        IdentityName::FiberPower => {
                            let diffs: Vec<R::Elem> = nz().map(|w| k.sub(c.rho(v), c.rho(w))).collect();
                            let lhs = k.mul(&fiber_sum, &k.product(diffs.iter()));
                            let rhs = k.pow(c.rho(v), sub.len() as u64);
                            c.expect(lhs == rhs, || format!("V'={gens:?}, v={v}"));
                        }
                        _ => {
                            let Some(inv) = k.try_inv(c.rho(v)) else { continue };
                            let ev = e_sub.eval(&inv, k);
                            let lead = match &quot {
                                Some((p, pushed)) => pushed.value(p.apply(v)).clone(),
                                None => fiber_sum,
                            };
                            c.expect(k.is_one(&k.mul(&lead, &ev)), || format!("V'={gens:?}, v={v}"));
                        }
                    }
                }
            }
        }
        IdentityName::ScalarCommute => {
            let e = rho.exp_poly()?;
            let mut us: Vec<R::Elem> = s.gf().units().map(|a| k.from_fq(a)).collect();
            for v in s.nonzero() {
                us.push(c.rho(v).clone());
                us.extend(k.try_inv(c.rho(v)));
            }
            for u in us {
                let cu = TauPoly::constant(k, u.clone());
                let lhs = e.compose(&cu, k);
                let rhs = cu.compose(&rho.scaled(&u).exp_poly()?, k);
                c.expect(lhs == rhs, || format!("u = {}", k.fmt_elem(&u)));
            }
        }
        IdentityName::ExpFactorization => {
            let e = rho.exp_poly()?;
            for gens in subspaces(s) {
                let (sub, table) = embedding_of(s, &gens);
                let inner = rho.pullback(&sub, &table).exp_poly()?;
                let outer = rho.push_quot(&QuotientMap::new(s, &gens)).exp_poly()?;
                c.expect(outer.compose(&inner, k) == e, || format!("V'={gens:?}"));
            }
        }
        IdentityName::LeadingLocalization => {
            for kk in 1..=s.r() {
                let xk = s.basis_elem(kk, 1);
                let prev = s.prefix_space(kk, 1);
                let f = k.sum(prev.clone().map(|w| c.rho(s.add(xk, w))));
                let lhs = k.mul(&f, &k.product(prev.clone().skip(1).map(|w| c.rho(w))));
                let rhs = k.product(prev.map(|w| c.rho(s.sub(xk, w))));
                c.expect(lhs == rhs, || format!("k={kk}"));
            }
        }
    }
    Ok(c.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Gf, RatFuncField};

    #[test]
    fn universal_suite_small() {
        for (q, d) in [(2, 1), (2, 2), (3, 1)] {
            let rho = RecipMap::universal(&ModuleSpace::plain(Gf::of_order(q).unwrap(), d));
            for name in IdentityName::ALL {
                let rep = verify_identity(name, &rho).unwrap();
                assert!(rep.ok(), "{name} q={q} d={d}: {:?}", rep.failures);
            }
        }
    }

    #[test]
    fn fiber_exp_worked_example() {
        let s = ModuleSpace::plain(Gf::prime(2).unwrap(), 2);
        let rho = RecipMap::universal(&s);
        let k = rho.ring();
        let x1 = s.basis_elem(1, 1);
        let sum = k.add(rho.value(x1), rho.value(3));
        let e = UniPoly::from_coeffs(k, vec![k.zero(), k.one(), k.neg(rho.value(2))]);
        let ev = e.eval(&k.try_inv(rho.value(x1)).unwrap(), k);
        assert!(k.is_one(&k.mul(&sum, &ev)));
    }

    #[test]
    fn broken_map_fails_and_names_parse() {
        let k = RatFuncField::new(Gf::prime(2).unwrap());
        let s = ModuleSpace::plain(Gf::prime(2).unwrap(), 2);
        let rho = RecipMap::from_table(s, k.clone(), vec![k.zero(), k.one(), k.one(), k.one()]);
        let rep = verify_identity(IdentityName::FiberProduct, &rho).unwrap();
        assert!(!rep.ok());
        assert_eq!("fiber-exp".parse::<IdentityName>().unwrap(), IdentityName::FiberExp);
        assert!(matches!("nope".parse::<IdentityName>(), Err(RecipError::UnknownIdentity(_))));
    }
}
