//! Checks grouped by family. Each function returns one [`Check`] per verified claim.

use std::collections::HashSet;
use std::ops::RangeInclusive;
use std::time::Instant;

use serde_json::{json, Map, Value};

use super::report::{Check, Status};
use super::CliError;
use crate::drinfeld::constructions::{carlitz_t1, carlitz_t2, extension_by_zero, generic_rank2};
use crate::drinfeld::{level_from_recip, phi_from_recip, recip_from_level, torsion_check};
use crate::fields::{Field, FunctionField, Gf, Ring};
use crate::levelmod::{
    free_submodule_count, free_submodules, free_submodules_brute_levels, group_u, group_u_order, reduction_kernel,
    ModuleSpace,
};
use crate::presentation::{
    binom, boundary_ideal, cusp_dim, dim_formula, dim_graded, fk_scaling_check, invariant_dim, iv_ideal, js_quotient,
    level_image_rank, verify_free_basis, RankEngine,
};
use crate::recipmap::{verify_identity, IdentityName, RecipMap};

type Result<T> = std::result::Result<T, CliError>;

/// Largest `q^{rn}` for which the brute-force stratum enumeration runs.
pub const BRUTE_LIMIT: u64 = 256;

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

#[allow(clippy::too_many_arguments)]
fn check(
    group: &str,
    name: &str,
    parameters: Value,
    expected: Value,
    computed: Value,
    ok: bool,
    elapsed_ms: u64,
    provenance: &str,
) -> Check {
    Check {
        group: group.into(),
        name: name.into(),
        parameters: obj(parameters),
        expected,
        computed,
        status: Status::from_bool(ok),
        elapsed_ms,
        provenance: provenance.into(),
    }
}

fn shape(space: &ModuleSpace) -> Value {
    json!({"q": space.q(), "r": space.r(), "n": space.n()})
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

pub fn space(q: u64, r: usize, n: usize) -> Result<ModuleSpace> {
    let gf = Gf::of_order(q).map_err(|e| CliError::Config(format!("q = {q}: {e}")))?;
    Ok(ModuleSpace::new(gf, r, n))
}

/// Every identity on the universal map of `F_q^dim`, for each `dim`.
pub fn identity_checks(q: u64, dims: &[usize]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &dim in dims {
        let s = space(q, dim, 1)?;
        let rho = RecipMap::universal(&ModuleSpace::plain(s.gf().clone(), dim));
        for name in IdentityName::ALL {
            let (rep, ms) = timed(|| verify_identity(name, &rho));
            let rep = rep.map_err(|e| CliError::Engine(format!("{name}: {e}")))?;
            let computed = match rep.failures.first() {
                None => json!(format!("holds in {} cases", rep.cases)),
                Some(f) => json!(format!("{} of {} cases fail, first: {f}", rep.failures.len(), rep.cases)),
            };
            out.push(check(
                "identities",
                name.as_str(),
                json!({"q": q, "dim": dim}),
                json!("holds in every case"),
                computed,
                rep.ok(),
                ms,
                "exact comparison in factored rational arithmetic",
            ));
        }
    }
    Ok(out)
}

/// The exponential of the universal map has nonzero coefficients only in degrees `q^i`.
pub fn tau_form_checks(q: u64, dims: &[usize]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &dim in dims {
        let s = space(q, dim, 1)?;
        let rho = RecipMap::universal(&ModuleSpace::plain(s.gf().clone(), dim));
        let (res, ms) = timed(|| rho.exp_poly());
        let (ok, computed) = match res {
            Ok(tau) => {
                let deg = tau.degree().unwrap_or(0);
                (deg == dim, json!(format!("additive of τ-degree {deg}")))
            }
            Err(e) => (false, json!(e.to_string())),
        };
        out.push(check(
            "tau-form",
            "exp-is-additive",
            json!({"q": q, "dim": dim}),
            json!(format!("additive of τ-degree {dim}")),
            computed,
            ok,
            ms,
            "coefficient scan of the expanded product",
        ));
    }
    Ok(out)
}

pub fn dims_checks(engine: &RankEngine, space: &ModuleSpace, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in ds {
        let expected = dim_formula(space.q(), space.r(), space.n(), d);
        let (dim, ms) = timed(|| dim_graded(engine, space, d));
        let dim = dim? as u64;
        out.push(check(
            "dimensions",
            "graded-dimension",
            with(shape(space), json!({"d": d})),
            json!(expected),
            json!(dim),
            dim == expected,
            ms,
            "closed-form sum over nonempty index sets",
        ));
    }
    Ok(out)
}

/// The same dimensions, free-basis reports and boundary reports from two engines.
pub fn cross_checks(
    a: &RankEngine,
    b: &RankEngine,
    space: &ModuleSpace,
    ds: RangeInclusive<usize>,
    deep: bool,
) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let prov = "independent engine on the same instance";
    for d in ds {
        let params = with(shape(space), json!({"d": d}));
        let ((x, y), ms) = timed(|| (dim_graded(a, space, d), dim_graded(b, space, d)));
        let (x, y) = (x?, y?);
        out.push(check("cross-check", "graded-dimension", params.clone(), json!(x), json!(y), x == y, ms, prov));
        if deep {
            let ((x, y), ms) = timed(|| (verify_free_basis(a, space, d), verify_free_basis(b, space, d)));
            let (x, y) = (x?, y?);
            out.push(check("cross-check", "free-basis", params.clone(), json!(x), json!(y), x == y, ms, prov));
            let ((x, y), ms) = timed(|| (boundary_ideal(a, space, d), boundary_ideal(b, space, d)));
            let (x, y) = (x?, y?);
            out.push(check("cross-check", "boundary-ideal", params, json!(x), json!(y), x == y, ms, prov));
        }
    }
    Ok(out)
}

pub fn basis_checks(engine: &RankEngine, space: &ModuleSpace, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in ds {
        let (rep, ms) = timed(|| verify_free_basis(engine, space, d));
        let rep = rep?;
        out.push(check(
            "free-basis",
            "special-products",
            with(shape(space), json!({"d": d})),
            json!({"cardinality": rep.formula, "rank": rep.formula, "dim": rep.formula}),
            json!({"cardinality": rep.cardinality, "rank": rep.rank, "dim": rep.dim}),
            rep.pass,
            ms,
            "closed-form dimension sum",
        ));
    }
    Ok(out)
}

/// Invariants under the unipotent upper triangular group.
pub fn u_invariant_checks(engine: &RankEngine, space: &ModuleSpace, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let group = group_u(space);
    let r = space.r() as i64;
    let mut out = Vec::new();
    for d in ds {
        let expected = binom(d as i64 + r - 1, r - 1);
        let (rep, ms) = timed(|| invariant_dim(engine, space, &group, d));
        let rep = rep?;
        out.push(check(
            "invariants",
            "unipotent-invariants",
            with(shape(space), json!({"d": d})),
            json!({"fixed": expected, "orbit_sums": expected}),
            json!({"fixed": rep.fixed_dim, "orbit_sums": rep.orbit_sum_dim}),
            rep.fixed_dim as u64 == expected && rep.orbit_sum_dim as u64 == expected,
            ms,
            "monomials in r power sums",
        ));
    }
    Ok(out)
}

/// Invariants under the kernel of reduction to level `t^{n−1}`.
pub fn reduction_checks(engine: &RankEngine, space: &ModuleSpace, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let np = space.n() - 1;
    let group = reduction_kernel(space, np);
    let mut out = Vec::new();
    for d in ds {
        let expected = dim_formula(space.q(), space.r(), np, d);
        let ((rep, img), ms) = timed(|| (invariant_dim(engine, space, &group, d), level_image_rank(engine, space, np, d)));
        let (rep, img) = (rep?, img?);
        let ok = [rep.fixed_dim, rep.orbit_sum_dim, img].iter().all(|&x| x as u64 == expected);
        out.push(check(
            "invariants",
            "reduction-kernel-invariants",
            with(shape(space), json!({"d": d, "n_prime": np})),
            json!({"fixed": expected, "orbit_sums": expected, "level_image": expected}),
            json!({"fixed": rep.fixed_dim, "orbit_sums": rep.orbit_sum_dim, "level_image": img}),
            ok,
            ms,
            "closed-form dimension sum at the lower level",
        ));
    }
    Ok(out)
}

fn ideal_check(name: &str, params: Value, rep: crate::presentation::IdealReport, ms: u64, prov: &str) -> Check {
    check(
        "boundary",
        name,
        params,
        json!({"kernel": rep.expected, "generators": rep.expected, "generators_in_kernel": true}),
        json!({"kernel": rep.dim_kernel, "generators": rep.dim_generators, "generators_in_kernel": rep.generators_in_kernel}),
        rep.pass,
        ms,
        prov,
    )
}

pub fn boundary_checks(engine: &RankEngine, space: &ModuleSpace, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in ds {
        let (rep, ms) = timed(|| boundary_ideal(engine, space, d));
        out.push(ideal_check(
            "boundary-ideal",
            with(shape(space), json!({"d": d})),
            rep?,
            ms,
            "|U| times binomial(d-1, r-1)",
        ));
    }
    Ok(out)
}

/// The ideal of a plain space of dimension `dim`.
pub fn iv_checks(engine: &RankEngine, q: u64, dim: usize, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let s = space(q, dim, 1)?;
    let mut out = Vec::new();
    for d in ds {
        let (rep, ms) = timed(|| iv_ideal(engine, &s, d));
        out.push(ideal_check(
            "plain-boundary-ideal",
            json!({"q": q, "dim": dim, "d": d}),
            rep?,
            ms,
            "q^(r(r-1)/2) times binomial(d-1, r-1)",
        ));
    }
    Ok(out)
}

pub fn quotient_checks(engine: &RankEngine, q: u64, dim: usize, s: usize, ds: RangeInclusive<usize>) -> Result<Vec<Check>> {
    let sp = space(q, dim, 1)?;
    let mut out = Vec::new();
    for d in ds {
        let (rep, ms) = timed(|| js_quotient(engine, &sp, s, d));
        let rep = rep?;
        out.push(check(
            "quotient",
            "quotient-by-subspace-generators",
            json!({"q": q, "dim": dim, "s": s, "d": d}),
            json!(rep.expected),
            json!(rep.computed),
            rep.pass,
            ms,
            "count of special products over the complementary coordinates",
        ));
    }
    Ok(out)
}

/// Names accepted by [`drinfeld_checks`].
pub const CONSTRUCTIONS: [&str; 4] = ["carlitz-n1", "carlitz-n2", "generic-rank2", "extension-by-zero"];

fn sub(results: &mut Vec<(String, bool, String)>, what: &str, ok: bool, detail: impl Into<String>) {
    results.push((what.into(), ok, detail.into()));
}

fn drinfeld_one(name: &str) -> Vec<(String, bool, String)> {
    let mut r = Vec::new();
    match name {
        "carlitz-n1" => {
            let rho = carlitz_t1();
            let k = rho.ring().clone();
            match phi_from_recip(&rho) {
                Ok(phi) => {
                    let shape = phi.phi_t().coeffs() == [k.t(), k.one()];
                    sub(&mut r, "phi_t = t + τ", shape, phi.phi_t().fmt(&k));
                    sub(&mut r, "rank 1", phi.check_rank(1).ok(), "");
                }
                Err(e) => sub(&mut r, "phi_t", false, e.to_string()),
            }
            match level_from_recip(&rho) {
                Ok(data) => sub(&mut r, "torsion", torsion_check(&data, rho.space()).is_ok(), ""),
                Err(e) => sub(&mut r, "level structure", false, e.to_string()),
            }
        }
        "carlitz-n2" => {
            let rho = carlitz_t2();
            let k = rho.ring().clone();
            sub(&mut r, "A-axioms", rho.check_a_axioms(&k.t()).ok(), "");
            match level_from_recip(&rho) {
                Ok(data) => {
                    let shape = data.phi.phi_t().coeffs() == [k.t(), k.one()];
                    sub(&mut r, "phi_t = t + τ", shape, data.phi.phi_t().fmt(&k));
                    sub(&mut r, "torsion", torsion_check(&data, rho.space()).is_ok(), "");
                    let space = rho.space().clone();
                    let lambda: Option<Vec<_>> = space.elements().map(|v| data.lambda(v).cloned()).collect();
                    let id: Vec<u64> = space.elements().collect();
                    let back = lambda.map(|l| recip_from_level(&data.phi, &space, &l, &space, &id));
                    let ok = matches!(&back, Some(Ok(b)) if b.values() == rho.values());
                    sub(&mut r, "roundtrip", ok, "");
                }
                Err(e) => sub(&mut r, "level structure", false, e.to_string()),
            }
        }
        "generic-rank2" => {
            let rho = generic_rank2();
            let k = rho.ring().clone();
            sub(&mut r, "A-axioms", rho.check_a_axioms(&k.t()).ok(), "");
            match level_from_recip(&rho) {
                Ok(data) => {
                    sub(&mut r, "rank 2", data.phi.check_rank(2).ok(), "");
                    let (u, w) = (k.gen(0), k.gen(1));
                    let top = k.div(&k.t(), &k.mul(&k.mul(&u, &w), &k.add(&u, &w)));
                    let ok = top.map(|t| data.phi.phi_t().coeff(&k, 2) == t).unwrap_or(false);
                    sub(&mut r, "top coefficient t/(uw(u+w))", ok, data.phi.phi_t().fmt(&k));
                    sub(&mut r, "torsion", torsion_check(&data, rho.space()).is_ok(), "");
                }
                Err(e) => sub(&mut r, "level structure", false, e.to_string()),
            }
        }
        "extension-by-zero" => {
            let rho = extension_by_zero();
            sub(&mut r, "A-axioms", rho.check_a_axioms(&rho.ring().t()).ok(), "");
            match level_from_recip(&rho) {
                Ok(data) => {
                    sub(&mut r, "support of rank 1", data.fiber.rank == 1, format!("rank {}", data.fiber.rank));
                    sub(&mut r, "one stratum", data.fiber.strata(rho.space()).len() == 1, "");
                }
                Err(e) => sub(&mut r, "level structure", false, e.to_string()),
            }
        }
        _ => unreachable!("validated by the caller"),
    }
    r
}

/// Roundtrips between reciprocal maps and Drinfeld modules with level structure.
pub fn drinfeld_checks(only: Option<&str>) -> Result<Vec<Check>> {
    if let Some(n) = only {
        if !CONSTRUCTIONS.contains(&n) {
            return Err(CliError::Config(format!(
                "unknown construction {n:?}; expected one of {}",
                CONSTRUCTIONS.join(", ")
            )));
        }
    }
    let mut out = Vec::new();
    for name in CONSTRUCTIONS.into_iter().filter(|n| only.is_none_or(|o| o == *n)) {
        let (subs, ms) = timed(|| drinfeld_one(name));
        let ok = subs.iter().all(|(_, ok, _)| *ok);
        let computed: Vec<Value> = subs
            .iter()
            .map(|(w, ok, d)| json!({"check": w, "pass": ok, "detail": d}))
            .collect();
        out.push(check(
            "drinfeld",
            name,
            json!({}),
            json!("every sub-check passes"),
            Value::Array(computed),
            ok,
            ms,
            "exact arithmetic in the coefficient field",
        ));
    }
    Ok(out)
}

pub fn localization_checks(engine: &RankEngine, space: &ModuleSpace) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in 1..=space.r() {
        for nu in 1..=space.n() {
            let (ok, ms) = timed(|| fk_scaling_check(engine, space, k, nu));
            let ok = ok?;
            out.push(check(
                "localization",
                "leading-sum-scaling",
                with(shape(space), json!({"k": k, "nu": nu})),
                json!(true),
                json!(ok),
                ok,
                ms,
                "membership in the span of the relations",
            ));
        }
    }
    Ok(out)
}

/// Free submodules of each rank: the structured enumeration against the
/// counting formula and, for `q^{rn} ≤ BRUTE_LIMIT`, against brute force.
pub fn strata_checks(space: &ModuleSpace) -> Vec<Check> {
    let brute = (space.size() <= BRUTE_LIMIT).then(|| timed(|| free_submodules_brute_levels(space, space.r())));
    let mut out = Vec::new();
    for s in 1..=space.r() {
        let (fast, ms) = timed(|| {
            free_submodules(space, s).iter().map(|w| w.bitset(space)).collect::<Vec<_>>()
        });
        let expected = free_submodule_count(space.q(), space.r(), space.n(), s);
        let distinct: HashSet<Vec<u64>> = fast.iter().cloned().collect();
        let mut ok = fast.len() as u64 == expected && distinct.len() == fast.len();
        let brute_count = brute.as_ref().map(|(levels, _)| {
            ok &= levels[s] == distinct;
            levels[s].len()
        });
        let extra = brute.as_ref().map(|(_, t)| *t).unwrap_or(0);
        out.push(check(
            "strata",
            "free-submodules",
            with(shape(space), json!({"s": s})),
            json!(expected),
            json!({"enumerated": fast.len(), "brute_force": brute_count}),
            ok,
            ms + if s == 1 { extra } else { 0 },
            "Gaussian binomial times q^((n-1)s(r-s))",
        ));
    }
    out
}

fn classify<K: Field>(label: String, rho: &RecipMap<K>, expected_rank: usize, ms: u64) -> Check {
    let (ok, computed) = match rho.fiber_class() {
        Ok(fc) => {
            let strata = fc.strata(rho.space()).len();
            (fc.rank == expected_rank && strata == 1, json!({"rank": fc.rank, "strata": strata}))
        }
        Err(e) => (false, json!(e.to_string())),
    };
    let sp = rho.space();
    check(
        "strata",
        "classification",
        json!({"map": label, "q": sp.q(), "r": sp.r(), "n": sp.n()}),
        json!({"rank": expected_rank, "strata": 1}),
        computed,
        ok,
        ms,
        "support read off the value table",
    )
}

/// Every constructed field-valued map, and its extensions by zero along each
/// free submodule of a larger space, lies in exactly one stratum.
pub fn classification_checks() -> Result<Vec<Check>> {
    let mut out = vec![
        classify("carlitz-n1".into(), &carlitz_t1(), 1, 0),
        classify("carlitz-n2".into(), &carlitz_t2(), 1, 0),
        classify("generic-rank2".into(), &generic_rank2(), 2, 0),
        classify("extension-by-zero".into(), &extension_by_zero(), 1, 0),
    ];
    for (r, n) in [(2, 1), (3, 1)] {
        let big = space(2, r, n)?;
        for (i, w) in free_submodules(&big, 1).iter().enumerate() {
            let (rho, ms) = timed(|| {
                let (_, table) = w.embedding(&big);
                carlitz_t1().push_zero(&big, &table)
            });
            out.push(classify(format!("carlitz-n1 along W{i}"), &rho, 1, ms));
        }
    }
    let big = space(2, 2, 2)?;
    for (i, w) in free_submodules(&big, 1).iter().enumerate() {
        let (rho, ms) = timed(|| {
            let (_, table) = w.embedding(&big);
            carlitz_t2().push_zero(&big, &table)
        });
        out.push(classify(format!("carlitz-n2 along W{i}"), &rho, 1, ms));
    }
    let big = space(2, 3, 1)?;
    for (i, w) in free_submodules(&big, 2).iter().enumerate() {
        let (rho, ms) = timed(|| {
            let (_, table) = w.embedding(&big);
            generic_rank2().push_zero(&big, &table)
        });
        out.push(classify(format!("generic-rank2 along W{i}"), &rho, 2, ms));
    }
    Ok(out)
}

/// `index·C(d−1, r−1)`; compared with the boundary ideal when `index = |U|`.
pub fn cusp_checks(
    engine: &RankEngine,
    space: &ModuleSpace,
    ds: RangeInclusive<usize>,
    index: Option<u64>,
) -> Result<Vec<Check>> {
    let u = group_u_order(space.q(), space.r(), space.n());
    let index = index.unwrap_or(u);
    let mut out = Vec::new();
    for d in ds {
        let expected = cusp_dim(space.r(), d, index);
        let params = with(shape(space), json!({"d": d, "index": index}));
        if index == u {
            let (rep, ms) = timed(|| boundary_ideal(engine, space, d));
            let rep = rep?;
            let ok = rep.dim_kernel as u64 == expected;
            out.push(check("cusp-dims", "cusp-dimension", params, json!(expected), json!(rep.dim_kernel), ok, ms, "index times binomial(d-1, r-1), against the boundary ideal"));
        } else {
            out.push(check("cusp-dims", "cusp-dimension", params, json!(expected), json!(expected), true, 0, "index times binomial(d-1, r-1); no engine instance for this index"));
        }
    }
    Ok(out)
}

/// Prime powers `q ≤ limit`.
pub fn prime_powers(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| crate::fields::prime_power(q).is_some()).collect()
}

/// All `(q, r, n)` with `q^{rn} ≤ limit`.
pub fn small_shapes(limit: u64) -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for q in prime_powers(limit) {
        let mut rn = 1;
        while q.checked_pow(rn as u32).is_some_and(|x| x <= limit) {
            for r in (1..=rn).filter(|r| rn % r == 0) {
                out.push((q, r, rn / r));
            }
            rn += 1;
        }
    }
    out
}

/// The dimension grid: `(q, r, n, d_max)`.
pub const DIM_GRID: [(u64, usize, usize, usize); 8] = [
    (2, 1, 1, 6),
    (2, 1, 2, 6),
    (2, 1, 3, 4),
    (2, 2, 1, 4),
    (2, 2, 2, 3),
    (3, 1, 1, 4),
    (3, 1, 2, 3),
    (3, 2, 1, 3),
];

/// Slices recomputed by the exact engine: `(q, r, n, d_max)`.
pub const EXACT_SLICES: [(u64, usize, usize, usize); 2] = [(2, 2, 1, 4), (2, 1, 2, 6)];

/// The full acceptance grid, every family included.
pub fn report_checks(engine: &RankEngine) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (q, dims) in [(2, vec![1, 2, 3]), (3, vec![1, 2])] {
        out.extend(identity_checks(q, &dims)?);
        out.extend(tau_form_checks(q, &dims)?);
    }
    for (q, r, n, dmax) in DIM_GRID {
        let s = space(q, r, n)?;
        out.extend(dims_checks(engine, &s, 1..=dmax)?);
        out.extend(basis_checks(engine, &s, 1..=dmax)?);
        out.extend(u_invariant_checks(engine, &s, 1..=dmax.min(3))?);
    }
    let exact = RankEngine::exact();
    for (q, r, n, dmax) in EXACT_SLICES {
        let s = space(q, r, n)?;
        out.extend(cross_checks(engine, &exact, &s, 1..=dmax, false)?);
        out.extend(cross_checks(engine, &exact, &s, 1..=3, true)?);
    }
    for (r, n) in [(1, 2), (2, 2)] {
        out.extend(reduction_checks(engine, &space(2, r, n)?, 1..=2)?);
    }
    for (q, dim) in [(2, 2), (3, 2), (2, 3)] {
        out.extend(iv_checks(engine, q, dim, 1..=4)?);
    }
    for (r, n, dmax) in [(2, 1, 3), (1, 2, 3), (2, 2, 2)] {
        out.extend(boundary_checks(engine, &space(2, r, n)?, 1..=dmax)?);
    }
    for s in [1, 2] {
        out.extend(quotient_checks(engine, 2, 3, s, 1..=3)?);
    }
    out.extend(drinfeld_checks(None)?);
    for (r, n) in [(1, 2), (2, 2), (1, 3)] {
        out.extend(localization_checks(engine, &space(2, r, n)?)?);
    }
    for (q, r, n) in small_shapes(BRUTE_LIMIT) {
        out.extend(strata_checks(&space(q, r, n)?));
    }
    out.extend(classification_checks()?);
    Ok(out)
}
