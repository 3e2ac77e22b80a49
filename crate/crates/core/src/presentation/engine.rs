//! Ranks of linear combinations inside a graded piece, modulo relations.
//!
//! A piece `(space, d)` is realized once per trial: every degree-`d` monomial
//! becomes a vector (values at random points, or numerator coefficients over a
//! common denominator), the relation rows `m·Rel_v` are put in echelon form,
//! and each monomial is stored by its residual modulo that echelon with the
//! pivot columns dropped. Residuals are linear in the monomial, so any later
//! rank question is answered on these short vectors.
//!
//! Probabilistic ranks never exceed the true rank. After clearing the
//! denominators `∏ ℓ_v^d` and the powers of `t`, a `k × k` minor of the
//! evaluation matrix is a polynomial of total degree at most `k·(d·G + n)`,
//! where `G = q^{rn} − 1`; by Schwartz–Zippel a nonzero minor vanishes at a
//! random point with probability at most that degree over `q^m`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{coeff_field, monomials, multiset_count, relations, LinComb, Monomial, PresentationError};
use crate::fields::{EvalField, Field, FieldError, FunctionField, RatFunc, RatFuncField, Ring, Specialize};
use crate::levelmod::ModuleSpace;
use crate::symalg::{LinearForm, SparsePoly};

type Result<T> = std::result::Result<T, PresentationError>;

const MARGIN: usize = 8;
const CHUNK: usize = 256;
const MAX_MONOMIALS: u128 = 50_000;
pub const DEFAULT_BUDGET: usize = 2000;
pub const DEFAULT_TRIALS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineMode {
    /// Evaluation at random points of `GF(q^m)`; `t` is one more variable.
    Probabilistic { seed: u64, trials: usize, ext_m: Option<u32> },
    /// Elimination over `F_q(t)` on numerator coefficient vectors.
    Exact { budget: usize },
}

/// A graded piece: `R̃_{n,d}` when `relations` is false, `R_{n,d}` otherwise.
#[derive(Clone, Debug)]
pub struct Target {
    pub space: ModuleSpace,
    pub d: usize,
    pub relations: bool,
}

impl Target {
    pub fn quotient(space: &ModuleSpace, d: usize) -> Self {
        Target { space: space.clone(), d, relations: true }
    }
    pub fn free(space: &ModuleSpace, d: usize) -> Self {
        Target { space: space.clone(), d, relations: false }
    }
    fn key(&self) -> (u64, usize, usize, usize, bool) {
        let s = &self.space;
        (s.q(), s.r(), s.n(), self.d, self.relations && s.n() > 1)
    }
}

/// One vector of a rank query: block `j` is the residual of the given
/// combination in target `row[j].0`. All rows must use the same target layout.
pub type Row = Vec<(usize, LinComb)>;

trait Scalars: Field {
    fn coeff(&self, c: &RatFunc, t: &Self::Elem) -> std::result::Result<Self::Elem, FieldError>;
}

impl Scalars for EvalField {
    fn coeff(&self, c: &RatFunc, t: &u64) -> std::result::Result<u64, FieldError> {
        RatFuncField::new(self.ground().clone()).specialize(c, self, t)
    }
}

impl Scalars for RatFuncField {
    fn coeff(&self, c: &RatFunc, _t: &RatFunc) -> std::result::Result<RatFunc, FieldError> {
        Ok(c.clone())
    }
}

/// Row echelon form; rows keep insertion order and have pivot entry one.
pub(crate) struct Echelon<K: Field> {
    field: K,
    width: usize,
    rows: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Echelon<K> {
    pub(crate) fn new(field: K, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_from(&self, v: &mut [K::Elem], start: usize) {
        let f = &self.field;
        for (row, &p) in self.rows[start..].iter().zip(&self.pivots[start..]) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            f.axpy(&mut v[p..], &c, &row[p..]);
        }
    }

    fn push_reduced(&mut self, mut v: Vec<K::Elem>) -> bool {
        let f = &self.field;
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else { return false };
        let inv = f.inv(&v[p]).expect("nonzero pivot");
        for x in &mut v[p..] {
            *x = f.mul(x, &inv);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Inserts a batch: reduction against existing rows runs in parallel.
    pub(crate) fn extend(&mut self, vs: Vec<Vec<K::Elem>>) -> usize {
        let start = self.rows.len();
        let reduced: Vec<Vec<K::Elem>> = vs
            .into_par_iter()
            .map(|mut v| {
                self.reduce_from(&mut v, 0);
                v
            })
            .collect();
        for mut v in reduced {
            self.reduce_from(&mut v, start);
            self.push_reduced(v);
        }
        self.rows.len() - start
    }

    /// The representative of `v + rowspace` vanishing at all pivots, pivot columns dropped.
    fn residual(&self, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
        self.reduce_from(&mut v, 0);
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        v.into_iter().zip(is_pivot).filter(|(_, p)| !p).map(|(x, _)| x).collect()
    }
}

struct Sheet<K: Field> {
    field: K,
    t: K::Elem,
    d: usize,
    index: HashMap<Monomial, usize>,
    residuals: Vec<Vec<K::Elem>>,
    width: usize,
}

impl<K: Scalars> Sheet<K> {
    fn residual(&self, x: &LinComb) -> Result<Vec<K::Elem>> {
        let f = &self.field;
        if x.degree() != self.d && !x.is_zero() {
            return Err(PresentationError::DegreeMismatch { expected: self.d, found: x.degree() });
        }
        let mut out = vec![f.zero(); self.width];
        for (m, c) in x.terms() {
            let i = self.index[m];
            let c = f.coeff(c, &self.t)?;
            for (o, r) in out.iter_mut().zip(&self.residuals[i]) {
                if !f.is_zero(r) {
                    *o = f.add(o, &f.mul(&c, r));
                }
            }
        }
        Ok(out)
    }
}

fn combine<K: Scalars>(
    field: &K,
    t: &K::Elem,
    index: &HashMap<Monomial, usize>,
    vecs: &[Vec<K::Elem>],
    width: usize,
    x: &LinComb,
) -> Result<Vec<K::Elem>> {
    let mut out = vec![field.zero(); width];
    for (m, c) in x.terms() {
        let c = field.coeff(c, t)?;
        for (o, r) in out.iter_mut().zip(&vecs[index[m]]) {
            if !field.is_zero(r) {
                *o = field.add(o, &field.mul(&c, r));
            }
        }
    }
    Ok(out)
}

/// Builds the relation echelon and the monomial residuals from realized monomials.
fn assemble<K: Scalars>(
    field: K,
    t: K::Elem,
    target: &Target,
    mons: Vec<Monomial>,
    vecs: Vec<Vec<K::Elem>>,
) -> Result<Sheet<K>> {
    let space = &target.space;
    let d = target.d;
    let index: HashMap<Monomial, usize> = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let full = vecs.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(field.clone(), full);
    if target.relations && space.n() > 1 && d >= 1 {
        let lower = monomials(space, d - 1);
        let rels = independent_relations(space);
        let products: Vec<(usize, usize)> =
            (0..rels.len()).flat_map(|i| (0..lower.len()).map(move |j| (i, j))).collect();
        for chunk in products.chunks(CHUNK) {
            let rows: Vec<Vec<K::Elem>> = chunk
                .par_iter()
                .map(|&(i, j)| combine(&field, &t, &index, &vecs, full, &rels[i].mul_monomial(&lower[j])))
                .collect::<Result<_>>()?;
            ech.extend(rows);
        }
    }
    let residuals: Vec<Vec<K::Elem>> = vecs.into_par_iter().map(|v| ech.residual(v)).collect();
    let width = full - ech.rank();
    Ok(Sheet { field, t, d, index, residuals, width })
}

/// A basis of the `F`-span of the `Rel_v`; since `J_d = R̃_{d−1}·span(Rel_v)`,
/// these suffice to generate every graded piece of the relation ideal.
fn independent_relations(space: &ModuleSpace) -> Vec<LinComb> {
    let f = coeff_field(space);
    let mut ech = Echelon::new(f.clone(), space.size() as usize);
    let mut out = Vec::new();
    for rel in relations(space) {
        let mut v = vec![f.zero(); space.size() as usize];
        for (m, c) in rel.lc.terms() {
            v[m.gens()[0] as usize] = c.clone();
        }
        if ech.extend(vec![v]) == 1 {
            out.push(rel.lc);
        }
    }
    out
}

fn check_size(space: &ModuleSpace, d: usize) -> Result<()> {
    let count = multiset_count(space.size() - 1, d);
    if count > MAX_MONOMIALS {
        return Err(PresentationError::TooLarge { d, count, limit: MAX_MONOMIALS });
    }
    Ok(())
}

/// splitmix64 folded over the words.
fn mix(words: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &w in words {
        let mut z = h ^ w.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}

/// `1/ℓ_v(x)` for all `v` at a random point `x` where no `ℓ_v` vanishes.
fn point_recips(field: &EvalField, space: &ModuleSpace, seed: u64) -> Result<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = space.q();
    let size = space.size() as usize;
    'retry: loop {
        let x: Vec<u64> = (0..space.dim()).map(|_| field.sample(&mut rng)).collect::<std::result::Result<_, _>>()?;
        let mut vals = vec![0u64; size];
        for v in 1..size as u64 {
            let (mut i, mut p) = (0, 1u64);
            while (v / p) % q == 0 {
                p *= q;
                i += 1;
            }
            let c = (v / p) % q;
            let prev = vals[(v - c * p) as usize];
            let val = field.add(&prev, &field.mul(&field.from_fq(c), &x[i]));
            if val == 0 {
                continue 'retry;
            }
            vals[v as usize] = val;
        }
        return Ok(vals.iter().map(|&a| if a == 0 { 0 } else { field.inv(&a).expect("nonzero") }).collect());
    }
}

fn prob_sheet(field: &EvalField, target: &Target, seed: u64, trial: usize) -> Result<Sheet<EvalField>> {
    let space = &target.space;
    check_size(space, target.d)?;
    let mons = monomials(space, target.d);
    let npts = mons.len() + MARGIN;
    let base = mix(&[seed, trial as u64, space.q(), space.r() as u64, space.n() as u64, target.d as u64]);
    let mut trng = ChaCha8Rng::seed_from_u64(mix(&[base, u64::MAX]));
    let t0 = loop {
        let x = field.sample(&mut trng)?;
        if x != 0 {
            break x;
        }
    };
    let points: Vec<Vec<u64>> = (0..npts)
        .into_par_iter()
        .map(|pt| point_recips(field, space, mix(&[base, pt as u64])))
        .collect::<Result<_>>()?;
    let vecs: Vec<Vec<u64>> = mons
        .par_iter()
        .map(|m| points.iter().map(|r| m.gens().iter().fold(1, |acc, &g| field.mul(&acc, &r[g as usize]))).collect())
        .collect();
    assemble(field.clone(), t0, target, mons, vecs)
}

fn exact_sheet(target: &Target, budget: usize) -> Result<Sheet<RatFuncField>> {
    let space = &target.space;
    let d = target.d;
    check_size(space, d)?;
    let gf = space.gf();
    let rf = coeff_field(space);
    let nvars = space.dim();
    let mut forms: Vec<LinearForm> = Vec::new();
    let mut form_of: HashMap<LinearForm, usize> = HashMap::new();
    let mut gen_form = vec![(0u64, 0usize); space.size() as usize];
    for v in space.nonzero() {
        let (c, l) = LinearForm::from_vector(gf, &space.digits(v)).expect("nonzero vector");
        let next = forms.len();
        let i = *form_of.entry(l.clone()).or_insert_with(|| {
            forms.push(l);
            next
        });
        gen_form[v as usize] = (c, i);
    }
    let deg = d * (forms.len() - 1);
    let width = multiset_count(nvars as u64, deg);
    if width > budget as u128 {
        return Err(PresentationError::ExactBudget { width: width.min(usize::MAX as u128) as usize, budget });
    }
    let columns: HashMap<Vec<u32>, usize> = super::exponent_vectors(nvars, deg)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e.into_iter().map(|x| x as u32).collect(), i))
        .collect();
    let width = columns.len();
    let powers: Vec<Vec<SparsePoly<u64>>> = forms
        .iter()
        .map(|l| {
            let p = l.to_poly(gf);
            (0..=d as u32).map(|k| p.pow(k, gf)).collect()
        })
        .collect();
    let mons = monomials(space, d);
    let vecs: Vec<Vec<RatFunc>> = mons
        .par_iter()
        .map(|m| {
            let mut mult = vec![0usize; forms.len()];
            let mut scalar = 1u64;
            for &g in m.gens() {
                let (c, i) = gen_form[g as usize];
                mult[i] += 1;
                scalar = gf.mul_e(scalar, gf.inv_e(c));
            }
            let poly = mult
                .iter()
                .enumerate()
                .fold(SparsePoly::constant(gf, nvars, scalar), |acc, (i, &k)| acc.mul(&powers[i][d - k], gf));
            let mut v = vec![rf.zero(); width];
            for (e, c) in poly.terms() {
                v[columns[e]] = rf.from_fq(*c);
            }
            v
        })
        .collect();
    assemble(rf.clone(), rf.t(), target, mons, vecs)
}

fn rows_rank<K: Scalars>(sheets: &[&Sheet<K>], rows: &[Row]) -> Result<usize> {
    let Some(first) = sheets.first() else { return Ok(0) };
    let Some(layout) = rows.first().map(|r| r.iter().map(|(i, _)| *i).collect::<Vec<_>>()) else {
        return Ok(0);
    };
    let width: usize = layout.iter().map(|&i| sheets[i].width).sum();
    let vecs: Vec<Vec<K::Elem>> = rows
        .par_iter()
        .map(|row| {
            assert!(row.iter().map(|(i, _)| *i).eq(layout.iter().copied()), "rows must share a layout");
            let mut v = Vec::with_capacity(width);
            for (i, x) in row {
                v.extend(sheets[*i].residual(x)?);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let mut ech = Echelon::new(first.field.clone(), width);
    ech.extend(vecs);
    Ok(ech.rank())
}

type Key = (u64, usize, usize, usize, bool);

/// Rank computations with cached pieces.
pub struct RankEngine {
    mode: EngineMode,
    fields: Mutex<HashMap<(u64, u32), EvalField>>,
    prob: Mutex<HashMap<(Key, u32), Arc<Vec<Sheet<EvalField>>>>>,
    exact: Mutex<HashMap<Key, Arc<Sheet<RatFuncField>>>>,
}

impl RankEngine {
    pub fn new(mode: EngineMode) -> Self {
        RankEngine {
            mode,
            fields: Mutex::new(HashMap::new()),
            prob: Mutex::new(HashMap::new()),
            exact: Mutex::new(HashMap::new()),
        }
    }

    pub fn probabilistic(seed: u64) -> Self {
        Self::new(EngineMode::Probabilistic { seed, trials: DEFAULT_TRIALS, ext_m: None })
    }

    pub fn exact() -> Self {
        Self::new(EngineMode::Exact { budget: DEFAULT_BUDGET })
    }

    pub fn mode(&self) -> &EngineMode {
        &self.mode
    }

    fn eval_field(&self, space: &ModuleSpace, m: u32) -> Result<EvalField> {
        let mut cache = self.fields.lock().expect("field cache");
        if let Some(f) = cache.get(&(space.q(), m)) {
            return Ok(f.clone());
        }
        let f = EvalField::new(space.gf(), m)?;
        cache.insert((space.q(), m), f.clone());
        Ok(f)
    }

    fn prob_piece(&self, target: &Target, m: u32, seed: u64, trials: usize) -> Result<Arc<Vec<Sheet<EvalField>>>> {
        let key = (target.key(), m);
        if let Some(p) = self.prob.lock().expect("piece cache").get(&key) {
            return Ok(p.clone());
        }
        let field = self.eval_field(&target.space, m)?;
        let sheets = (0..trials).map(|i| prob_sheet(&field, target, seed, i)).collect::<Result<Vec<_>>>()?;
        let p = Arc::new(sheets);
        self.prob.lock().expect("piece cache").insert(key, p.clone());
        Ok(p)
    }

    fn exact_piece(&self, target: &Target, budget: usize) -> Result<Arc<Sheet<RatFuncField>>> {
        let key = target.key();
        if let Some(p) = self.exact.lock().expect("piece cache").get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(exact_sheet(target, budget)?);
        self.exact.lock().expect("piece cache").insert(key, p.clone());
        Ok(p)
    }

    /// Starting extension degree: the least `m` with `q^m ≥ 2^20`.
    pub fn base_degree(&self, space: &ModuleSpace) -> u32 {
        match self.mode {
            EngineMode::Probabilistic { ext_m: Some(m), .. } => m,
            _ => EvalField::degree_for(space.gf(), 20),
        }
    }

    /// Rank of the rows; probabilistic trials must agree, else the extension
    /// degree is doubled once before giving up.
    pub fn rank_rows(&self, targets: &[Target], rows: &[Row]) -> Result<usize> {
        match self.mode {
            EngineMode::Exact { budget } => {
                let pieces = targets.iter().map(|t| self.exact_piece(t, budget)).collect::<Result<Vec<_>>>()?;
                let sheets: Vec<&Sheet<RatFuncField>> = pieces.iter().map(|p| p.as_ref()).collect();
                rows_rank(&sheets, rows)
            }
            EngineMode::Probabilistic { seed, trials, .. } => {
                let Some(first) = targets.first() else { return Ok(0) };
                let m0 = self.base_degree(&first.space);
                let mut ranks = Vec::new();
                for m in [m0, 2 * m0] {
                    let pieces = targets
                        .iter()
                        .map(|t| self.prob_piece(t, m, seed, trials.max(1)))
                        .collect::<Result<Vec<_>>>()?;
                    ranks = (0..trials.max(1))
                        .map(|i| {
                            let sheets: Vec<&Sheet<EvalField>> = pieces.iter().map(|p| &p[i]).collect();
                            rows_rank(&sheets, rows)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if ranks.iter().all(|&r| r == ranks[0]) {
                        return Ok(ranks[0]);
                    }
                }
                Err(PresentationError::EngineDisagreement { ranks })
            }
        }
    }

    /// Rank of the images in `R_{n,d}` (modulo relations).
    pub fn rank_mod(&self, space: &ModuleSpace, d: usize, xs: &[LinComb]) -> Result<usize> {
        let rows: Vec<Row> = xs.iter().map(|x| vec![(0, x.clone())]).collect();
        self.rank_rows(&[Target::quotient(space, d)], &rows)
    }

    /// Rank in `R̃_{n,d}`, ignoring relations.
    pub fn rank_of(&self, space: &ModuleSpace, d: usize, xs: &[LinComb]) -> Result<usize> {
        let rows: Vec<Row> = xs.iter().map(|x| vec![(0, x.clone())]).collect();
        self.rank_rows(&[Target::free(space, d)], &rows)
    }

    /// `dim_F R_{n,d}`.
    pub fn dim(&self, space: &ModuleSpace, d: usize) -> Result<usize> {
        let f = coeff_field(space);
        let mons: Vec<LinComb> = monomials(space, d).into_iter().map(|m| LinComb::monomial(&f, m)).collect();
        self.rank_mod(space, d, &mons)
    }

    /// Per-trial Schwartz–Zippel bound on missing rank for the piece, or `None` in exact mode.
    pub fn failure_bound(&self, space: &ModuleSpace, d: usize) -> Option<f64> {
        if let EngineMode::Exact { .. } = self.mode {
            return None;
        }
        let k = multiset_count(space.size() - 1, d) as f64;
        let deg = (d as f64) * ((space.size() - 1) as f64) + space.n() as f64;
        let order = (space.q() as f64).powi(self.base_degree(space) as i32);
        Some((k * deg / order).min(1.0))
    }
}
