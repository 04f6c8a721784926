//! Homogeneous Gröbner bases, complete or truncated at a degree.
//!
//! Pairs are processed by ascending degree of their lcm (normal strategy),
//! which is what makes truncation sound: after all pairs of degree `<= d`
//! have been handled, every S-polynomial of degree `<= d` reduces to zero.
//! The product (coprime) and chain criteria skip pairs.
//!
//! Within one degree step the S-polynomials are reduced in parallel against
//! the frozen basis; the nonzero remainders are then brought to reduced row
//! echelon form and appended in descending leading-monomial order, so the
//! result does not depend on the thread count.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::coeff::Field;
use crate::poly::{Monomial, PolyError, Polynomial, Reducer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("input polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("zero polynomial among the generators")]
    ZeroGenerator,
    #[error("polynomial reduces to zero; it already lies in the ideal")]
    RemainderZero,
    #[error("degree mismatch: basis is valid to degree {expected}, polynomial has degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("operation needs a complete Gröbner basis")]
    IncompleteBasis,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("basis is only valid to degree {valid_to}, degree {requested} requested")]
    InsufficientDegree { valid_to: u32, requested: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A homogeneous Gröbner basis that is valid up to `valid_to_degree`, or
/// valid in every degree when `complete` is set.
#[derive(Debug, Clone)]
pub struct TruncatedGB<F: Field> {
    field: F,
    nvars: usize,
    elements: Vec<Polynomial<F>>,
    /// Marks members of the last complete (interreduced) basis; their mutual
    /// S-pairs are known to reduce to zero and are never revisited.
    settled: Vec<bool>,
    valid_to_degree: u32,
    complete: bool,
}

impl<F: Field> TruncatedGB<F> {
    /// The basis of the zero ideal (complete, valid everywhere).
    pub fn empty(field: F, nvars: usize) -> Self {
        TruncatedGB {
            field,
            nvars,
            elements: Vec::new(),
            settled: Vec::new(),
            valid_to_degree: 0,
            complete: true,
        }
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn valid_to_degree(&self) -> u32 {
        self.valid_to_degree
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_valid_to(&self, d: u32) -> bool {
        self.complete || self.valid_to_degree >= d
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements
            .iter()
            .map(|g| g.lm().expect("basis elements are nonzero"))
    }

    pub fn reducer(&self) -> Reducer<'_, F> {
        Reducer::new(&self.elements)
    }

    /// `rem(p; G)`. For homogeneous `p` with `deg p <= valid_to_degree` this is
    /// zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.reducer().reduce(p)
    }

    /// Extends the basis so it is valid up to degree `d`, processing only the
    /// pairs whose degree lies above the current bound.
    pub fn raise_to(self, d: u32) -> Self {
        if self.is_valid_to(d) {
            return self;
        }
        let done = self.valid_to_degree;
        let mut engine = PairEngine::new(self.field, self.nvars, self.elements, self.settled, done, Some(d));
        engine.run();
        let complete = engine.dropped == 0;
        engine.into_basis(d, complete)
    }

    /// Completes to a full Gröbner basis and interreduces it.
    pub fn into_complete(self) -> Self {
        if self.complete && self.settled.iter().all(|&s| s) {
            return self;
        }
        let done = if self.complete { u32::MAX } else { self.valid_to_degree };
        let mut engine = PairEngine::new(self.field, self.nvars, self.elements, self.settled, done, None);
        engine.run();
        let (field, nvars) = (engine.field.clone(), engine.nvars);
        let elements = interreduce(engine.elems);
        let valid_to_degree = elements.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        TruncatedGB {
            field,
            nvars,
            settled: vec![true; elements.len()],
            elements,
            valid_to_degree,
            complete: true,
        }
    }

    fn insert_sorted(&mut self, r: Polynomial<F>) {
        let d = r.degree().expect("nonzero");
        let pos = self.elements.partition_point(|g| g.degree().expect("nonzero") <= d);
        self.elements.insert(pos, r);
        self.settled.insert(pos, false);
    }
}

fn validate_gens<F: Field>(gens: &[Polynomial<F>]) -> Result<(), GroebnerError> {
    for g in gens {
        if g.is_zero() {
            return Err(GroebnerError::ZeroGenerator);
        }
        if !g.is_homogeneous() {
            return Err(GroebnerError::NonHomogeneous(g.to_string()));
        }
    }
    if let Some(first) = gens.first() {
        if let Some(g) = gens.iter().find(|g| g.nvars() != first.nvars()) {
            return Err(PolyError::DimensionMismatch(first.nvars(), g.nvars()).into());
        }
    }
    Ok(())
}

fn sorted_monic<F: Field>(gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut elems: Vec<_> = gens.iter().map(Polynomial::monic).collect();
    elems.sort_by_key(|g| g.degree());
    elems
}

/// The S-polynomial `(L/lt f)·f − (L/lt g)·g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>, GroebnerError> {
    let (fm, fc) = f.leading_term().ok_or(PolyError::ZeroPolynomial)?;
    let (gm, gc) = g.leading_term().ok_or(PolyError::ZeroPolynomial)?;
    if f.nvars() != g.nvars() {
        return Err(PolyError::DimensionMismatch(f.nvars(), g.nvars()).into());
    }
    let field = f.field();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &field.inv(fc).map_err(PolyError::from)?)?;
    let b = g.mul_term(&gm.quotient_of(&l), &field.inv(gc).map_err(PolyError::from)?)?;
    Ok(a.sub(&b))
}

/// A homogeneous Gröbner basis of `⟨gens⟩` valid up to degree `d`. Pairs of
/// higher degree are discarded; generators of higher degree are kept as is.
pub fn buchberger_to_degree<F: Field>(gens: &[Polynomial<F>], d: u32) -> Result<TruncatedGB<F>, GroebnerError> {
    validate_gens(gens)?;
    let (field, nvars) = ring_of(gens)?;
    let elems = sorted_monic(gens);
    let settled = vec![false; elems.len()];
    let mut engine = PairEngine::new(field, nvars, elems, settled, 0, Some(d));
    engine.run();
    let complete = engine.dropped == 0;
    Ok(engine.into_basis(d, complete))
}

/// The reduced Gröbner basis of `⟨gens⟩`.
pub fn buchberger_full<F: Field>(gens: &[Polynomial<F>]) -> Result<TruncatedGB<F>, GroebnerError> {
    validate_gens(gens)?;
    let (field, nvars) = ring_of(gens)?;
    let elems = sorted_monic(gens);
    let settled = vec![false; elems.len()];
    let gb = TruncatedGB {
        field,
        nvars,
        settled,
        elements: elems,
        valid_to_degree: 0,
        complete: false,
    };
    Ok(gb.into_complete())
}

fn ring_of<F: Field>(gens: &[Polynomial<F>]) -> Result<(F, usize), GroebnerError> {
    let g = gens.first().ok_or(GroebnerError::ZeroGenerator)?;
    Ok((g.field().clone(), g.nvars()))
}

/// Appends `rem(p; G)` (made monic) to a basis valid up to `deg p`. The result
/// is again valid up to `deg p`: the new leading monomial differs from all
/// others, so every new S-pair has degree above `deg p`.
pub fn extend_with_generator<F: Field>(
    gb: TruncatedGB<F>,
    p: &Polynomial<F>,
) -> Result<(TruncatedGB<F>, Polynomial<F>), GroebnerError> {
    if !p.is_homogeneous() {
        return Err(GroebnerError::NonHomogeneous(p.to_string()));
    }
    let d = p.degree().ok_or(GroebnerError::RemainderZero)?;
    if !gb.complete && d != gb.valid_to_degree {
        return Err(GroebnerError::DegreeMismatch {
            expected: gb.valid_to_degree,
            found: d,
        });
    }
    let r = gb.normal_form(p);
    if r.is_zero() {
        return Err(GroebnerError::RemainderZero);
    }
    let r = r.monic();
    Ok((gb.push_remainder(r.clone(), d), r))
}

impl<F: Field> TruncatedGB<F> {
    /// Appends an already reduced monic remainder of degree `d`; the caller
    /// has established the preconditions of [`extend_with_generator`].
    pub(crate) fn push_remainder(mut self, r: Polynomial<F>, d: u32) -> Self {
        debug_assert!(self.is_valid_to(d));
        self.insert_sorted(r);
        self.valid_to_degree = d;
        self.complete = false;
        self
    }
}

/// True iff every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional<F: Field>(gb: &TruncatedGB<F>) -> Result<bool, GroebnerError> {
    if !gb.complete {
        return Err(GroebnerError::IncompleteBasis);
    }
    let mut seen = vec![false; gb.nvars];
    for m in gb.leading_monomials() {
        if let Some(i) = m.pure_power_var() {
            seen[i] = true;
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

/// Minimal generators of the monomial ideal spanned by the leading monomials
/// of degree `<= max_degree`, indexed by variable for fast divisibility tests.
struct Staircase {
    nvars: usize,
    /// `by_var[j]`: generators with a positive exponent of `x_{j+1}`.
    by_var: Vec<Vec<Monomial>>,
}

impl Staircase {
    fn new<'a>(nvars: usize, lms: impl Iterator<Item = &'a Monomial>, max_degree: Option<u32>) -> Self {
        let mut gens: Vec<Monomial> = lms
            .filter(|m| max_degree.is_none_or(|d| m.degree() <= d))
            .cloned()
            .collect();
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in gens {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        let mut by_var = vec![Vec::new(); nvars];
        for m in minimal {
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    by_var[j].push(m.clone());
                }
            }
        }
        Staircase { nvars, by_var }
    }

    /// Visits standard monomials depth-first up to `max_degree`. Each monomial
    /// is produced once, from its sorted variable sequence; since a standard
    /// monomial's divisors are standard, a child `m*x_j` of a standard `m` is
    /// only tested against generators involving `x_j`.
    fn walk(&self, max_degree: Option<u32>, mut visit: impl FnMut(&Monomial)) {
        let mut stack = vec![(Monomial::one(self.nvars), 0usize)];
        while let Some((m, first)) = stack.pop() {
            visit(&m);
            if max_degree.is_some_and(|d| m.degree() >= d) {
                continue;
            }
            for j in first..self.nvars {
                let child = m.mul_unchecked(&Monomial::var(self.nvars, j));
                if !self.by_var[j].iter().any(|g| g.divides(&child)) {
                    stack.push((child, j));
                }
            }
        }
    }
}

/// Maximal degree of a monomial outside the leading-monomial ideal.
pub fn max_degree_outside<F: Field>(gb: &TruncatedGB<F>) -> Result<u32, GroebnerError> {
    if !is_zero_dimensional(gb)? {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let stairs = Staircase::new(gb.nvars, gb.leading_monomials(), None);
    let mut best = 0;
    stairs.walk(None, |m| best = best.max(m.degree()));
    Ok(best)
}

/// Number of standard monomials of a zero-dimensional complete basis.
pub fn staircase_size<F: Field>(gb: &TruncatedGB<F>) -> Result<usize, GroebnerError> {
    if !is_zero_dimensional(gb)? {
        return Err(GroebnerError::NotZeroDimensional);
    }
    let stairs = Staircase::new(gb.nvars, gb.leading_monomials(), None);
    let mut count = 0;
    stairs.walk(None, |_| count += 1);
    Ok(count)
}

/// Degree-`d` monomials divisible by no leading monomial, in descending order.
pub fn standard_monomials_of_degree<F: Field>(gb: &TruncatedGB<F>, d: u32) -> Result<Vec<Monomial>, GroebnerError> {
    if !gb.is_valid_to(d) {
        return Err(GroebnerError::InsufficientDegree {
            valid_to: gb.valid_to_degree,
            requested: d,
        });
    }
    let stairs = Staircase::new(gb.nvars, gb.leading_monomials(), Some(d));
    let mut out = Vec::new();
    stairs.walk(Some(d), |m| {
        if m.degree() == d {
            out.push(m.clone());
        }
    });
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Reduced Gröbner basis from a complete one: drop elements whose leading
/// monomial is divisible by another's, then reduce every tail.
fn interreduce<F: Field>(elems: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by(|&a, &b| elems[a].lm().cmp(&elems[b].lm()).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        let m = elems[i].lm().expect("nonzero");
        if !kept.iter().any(|&k| elems[k].lm().expect("nonzero").divides(m)) {
            kept.push(i);
        }
    }
    let minimal: Vec<Polynomial<F>> = kept.into_iter().map(|i| elems[i].clone()).collect();
    let reducer = Reducer::new(&minimal);
    let mut reduced: Vec<Polynomial<F>> = (0..minimal.len())
        .into_par_iter()
        .map(|i| reduce_tail(&minimal[i], &reducer))
        .collect();
    reduced.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lm().cmp(&a.lm())));
    reduced
}

/// `lt(g) + rem(tail(g); G)`; tail terms are below `lm(g)` and so are never
/// divisible by it, which makes reducing against all of `G` safe.
fn reduce_tail<F: Field>(g: &Polynomial<F>, reducer: &Reducer<'_, F>) -> Polynomial<F> {
    let mut terms = g.terms().to_vec();
    let head = terms.remove(0);
    let tail = Polynomial::from_sorted_terms(g.field().clone(), g.nvars(), terms);
    let rest = reducer.reduce(&tail);
    let mut out = vec![head];
    out.extend(rest.into_terms());
    Polynomial::from_sorted_terms(g.field().clone(), g.nvars(), out).monic()
}

/// Bucketed pair queue for the normal selection strategy.
struct PairEngine<F: Field> {
    field: F,
    nvars: usize,
    elems: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    masks: Vec<u64>,
    settled: Vec<bool>,
    queue: BTreeMap<u32, Vec<(usize, usize)>>,
    bound: Option<u32>,
    dropped: usize,
}

impl<F: Field> PairEngine<F> {
    /// Queues every pair with degree in `(done, bound]` except pairs of two
    /// settled elements.
    fn new(
        field: F,
        nvars: usize,
        elems: Vec<Polynomial<F>>,
        settled: Vec<bool>,
        done: u32,
        bound: Option<u32>,
    ) -> Self {
        let lms: Vec<Monomial> = elems.iter().map(|g| g.lm().expect("nonzero").clone()).collect();
        let masks = lms.iter().map(Monomial::support_mask).collect();
        let mut engine = PairEngine {
            field,
            nvars,
            elems,
            lms,
            masks,
            settled,
            queue: BTreeMap::new(),
            bound,
            dropped: 0,
        };
        for j in 0..engine.elems.len() {
            for i in 0..j {
                if engine.settled[i] && engine.settled[j] {
                    continue;
                }
                let deg = engine.lms[i].lcm_degree(&engine.lms[j]);
                if deg > done {
                    engine.enqueue(i, j, deg);
                }
            }
        }
        engine
    }

    fn enqueue(&mut self, i: usize, j: usize, deg: u32) {
        if self.bound.is_some_and(|b| deg > b) {
            self.dropped += 1;
            return;
        }
        self.queue.entry(deg).or_default().push((i, j));
    }

    /// Buchberger's chain criterion restricted to strictly lower-degree pairs,
    /// all of which are already known to have standard representations.
    fn chain_criterion(&self, i: usize, j: usize, k: u32) -> bool {
        let l = self.lms[i].lcm(&self.lms[j]);
        let lmask = l.support_mask();
        (0..self.elems.len()).any(|t| {
            t != i
                && t != j
                && self.masks[t] & !lmask == 0
                && self.lms[t].degree() < k
                && self.lms[t].divides(&l)
                && self.lms[t].lcm_degree(&self.lms[i]) < k
                && self.lms[t].lcm_degree(&self.lms[j]) < k
        })
    }

    fn run(&mut self) {
        while let Some((k, pairs)) = self.queue.pop_first() {
            let live: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|&(i, j)| !self.lms[i].is_coprime(&self.lms[j]) && !self.chain_criterion(i, j, k))
                .collect();
            if live.is_empty() {
                continue;
            }
            let t0 = std::time::Instant::now();
            let reducer = Reducer::new(&self.elems);
            let remainders: Vec<Polynomial<F>> = live
                .par_iter()
                .map(|&(i, j)| {
                    let s = s_polynomial(&self.elems[i], &self.elems[j]).expect("nonzero basis elements");
                    reducer.reduce(&s)
                })
                .filter(|r| !r.is_zero())
                .collect();
            let t1 = std::time::Instant::now();
            let n_rem = remainders.len();
            let rows = echelonize(remainders);
            log::debug!(
                "pairs of degree {k}: {} live, {n_rem} nonzero ({:.3}s), {} new ({:.3}s)",
                live.len(),
                (t1 - t0).as_secs_f64(),
                rows.len(),
                t1.elapsed().as_secs_f64()
            );
            for r in rows {
                self.push(r);
            }
        }
    }

    fn push(&mut self, r: Polynomial<F>) {
        let lm = r.lm().expect("nonzero").clone();
        let idx = self.elems.len();
        self.masks.push(lm.support_mask());
        self.lms.push(lm);
        self.elems.push(r);
        self.settled.push(false);
        for i in 0..idx {
            let deg = self.lms[i].lcm_degree(&self.lms[idx]);
            self.enqueue(i, idx, deg);
        }
    }

    fn into_basis(self, valid_to_degree: u32, complete: bool) -> TruncatedGB<F> {
        let mut idx: Vec<usize> = (0..self.elems.len()).collect();
        idx.sort_by_key(|&i| self.elems[i].degree());
        let mut slots: Vec<Option<Polynomial<F>>> = self.elems.into_iter().map(Some).collect();
        let elements = idx.iter().map(|&i| slots[i].take().expect("each index once")).collect();
        let settled = idx.iter().map(|&i| self.settled[i]).collect();
        TruncatedGB {
            field: self.field,
            nvars: self.nvars,
            elements,
            settled,
            valid_to_degree,
            complete,
        }
    }
}

/// Reduced row echelon form of polynomials that share one degree: the output
/// has distinct leading monomials, is monic, sorted by descending leading
/// monomial, and no output contains another's leading monomial.
///
/// The pivot rows are kept mutually reduced throughout, so reducing a row
/// touches each pivot column at most once and intermediate coefficients stay
/// those of the final echelon form.
pub fn echelonize<F: Field>(mut polys: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    polys.sort_by_key(Polynomial::len);
    let mut rows: Vec<Polynomial<F>> = Vec::new();
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    for p in polys {
        let r = reduce_by_pivots(&p, &rows, &pivots);
        let Some(lm) = r.lm().cloned() else {
            continue;
        };
        let r = r.monic();
        // clear the new pivot column from the existing rows
        for row in rows.iter_mut() {
            let c = row.coefficient(&lm);
            if !r.field().is_zero(&c) {
                *row = row.sub(&r.scale(&c));
            }
        }
        pivots.insert(lm, rows.len());
        rows.push(r);
    }
    rows.sort_by(|a, b| b.lm().cmp(&a.lm()));
    rows
}

/// Eliminates every pivot column from `p`. Rows are monic, mutually reduced
/// and of the same degree as `p`, so elimination is plain subtraction and
/// never reintroduces a pivot column.
fn reduce_by_pivots<F: Field>(
    p: &Polynomial<F>,
    rows: &[Polynomial<F>],
    pivots: &HashMap<Monomial, usize>,
) -> Polynomial<F> {
    let f = p.field().clone();
    let mut hits: Vec<(usize, F::Elem)> = Vec::new();
    let mut rest: HashMap<Monomial, F::Elem> = HashMap::with_capacity(p.len());
    for (t, c) in p.terms() {
        match pivots.get(t) {
            Some(&j) => hits.push((j, c.clone())),
            None => {
                rest.insert(t.clone(), c.clone());
            }
        }
    }
    for (j, c) in hits {
        for (u, cu) in &rows[j].terms()[1..] {
            let e = rest.entry(u.clone()).or_insert_with(|| f.zero());
            f.sub_mul_assign(e, &c, cu);
        }
    }
    Polynomial::from_terms(f, p.nvars(), rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals};

    fn q(text: &str, n: usize) -> Polynomial<Rationals> {
        Polynomial::parse(text, Rationals, n).unwrap()
    }

    fn qs(texts: &[&str], n: usize) -> Vec<Polynomial<Rationals>> {
        texts.iter().map(|t| q(t, n)).collect()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied()).unwrap()
    }

    /// Every S-pair of degree <= bound reduces to zero (exhaustive check).
    fn assert_closed<F: Field>(gb: &TruncatedGB<F>) {
        let els = gb.elements();
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                let deg = els[i].lm().unwrap().lcm_degree(els[j].lm().unwrap());
                if gb.is_valid_to(deg) {
                    let s = s_polynomial(&els[i], &els[j]).unwrap();
                    assert!(gb.normal_form(&s).is_zero(), "S({i},{j}) does not reduce");
                }
            }
        }
        for g in els {
            assert!(g.is_homogeneous());
            assert!(g.field().is_one(g.leading_term().unwrap().1));
        }
    }

    #[test]
    fn s_polynomial_examples() {
        let f = q("x1^2 + x2^2", 2);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        assert!(s_polynomial(&q("x1^2", 2), &q("x2^2", 2)).unwrap().is_zero());
        assert_eq!(s_polynomial(&f, &q("x1*x2", 2)).unwrap(), q("x2^3", 2));
        assert!(s_polynomial(&f, &Polynomial::zero(Rationals, 2)).is_err());
    }

    #[test]
    fn truncated_examples() {
        let gb = buchberger_to_degree(&qs(&["x1 + x2"], 2), 3).unwrap();
        assert_eq!(gb.elements(), &qs(&["x1 + x2"], 2)[..]);

        let gb = buchberger_to_degree(&qs(&["x1^2 + x2^2", "x1*x2"], 2), 3).unwrap();
        assert_eq!(gb.valid_to_degree(), 3);
        assert_eq!(gb.elements(), &qs(&["x1^2 + x2^2", "x1*x2", "x2^3"], 2)[..]);
        assert_closed(&gb);

        let gens = qs(&["x1^4 + x2^4", "x1^3*x2"], 2);
        let gb = buchberger_to_degree(&gens, 3).unwrap();
        assert_eq!(gb.elements(), &gens[..]);
        assert!(!gb.is_complete());
    }

    #[test]
    fn full_examples() {
        let gb = buchberger_full(&qs(&["x1", "x2"], 2)).unwrap();
        assert!(gb.is_complete());
        assert_eq!(gb.elements(), &qs(&["x1", "x2"], 2)[..]);

        let gb = buchberger_full(&qs(&["x1^2 + x2^2", "x1*x2"], 2)).unwrap();
        assert_eq!(gb.elements(), &qs(&["x1^2 + x2^2", "x1*x2", "x2^3"], 2)[..]);
        assert_closed(&gb);
    }

    #[test]
    fn non_homogeneous_input_rejected() {
        assert!(matches!(
            buchberger_full(&qs(&["x1^2 + x2"], 2)),
            Err(GroebnerError::NonHomogeneous(_))
        ));
        assert!(matches!(
            buchberger_to_degree(&qs(&["x1 + 1"], 2), 2),
            Err(GroebnerError::NonHomogeneous(_))
        ));
    }

    #[test]
    fn extension_examples() {
        let gb = buchberger_to_degree(&qs(&["x1^2", "x1*x2"], 2), 2).unwrap();
        assert!(!gb.is_complete());
        let (gb2, r) = extend_with_generator(gb.clone(), &q("x2^2", 2)).unwrap();
        assert_eq!(r, q("x2^2", 2));
        assert_eq!(gb2.elements(), &qs(&["x1^2", "x1*x2", "x2^2"], 2)[..]);
        assert_eq!(gb2.valid_to_degree(), 2);
        assert!(!gb2.is_complete());

        let (gb3, r) = extend_with_generator(gb.clone(), &q("x1^2 + 2*x1*x2 + x2^2", 2)).unwrap();
        assert_eq!(r, q("x2^2", 2));
        assert_eq!(gb3.len(), 3);

        assert_eq!(
            extend_with_generator(gb.clone(), &q("3*x1^2 - x1*x2", 2)).unwrap_err(),
            GroebnerError::RemainderZero
        );
        assert_eq!(
            extend_with_generator(gb, &q("x2^3", 2)).unwrap_err(),
            GroebnerError::DegreeMismatch { expected: 2, found: 3 }
        );

        // a complete basis accepts any degree
        let full = buchberger_to_degree(&qs(&["x1^2"], 2), 2).unwrap();
        assert!(full.is_complete());
        let (ext, r) = extend_with_generator(full, &q("x2^3", 2)).unwrap();
        assert_eq!(r, q("x2^3", 2));
        assert_eq!(ext.valid_to_degree(), 3);
    }

    fn gb_with_lms(lms: &[&[u16]], n: usize) -> TruncatedGB<Rationals> {
        let gens: Vec<_> = lms
            .iter()
            .map(|e| Polynomial::from_monomial(Rationals, n, mono(e)))
            .collect();
        buchberger_full(&gens).unwrap()
    }

    #[test]
    fn zero_dimensionality() {
        assert!(is_zero_dimensional(&gb_with_lms(&[&[1, 0], &[0, 2]], 2)).unwrap());
        assert!(!is_zero_dimensional(&gb_with_lms(&[&[1, 1]], 2)).unwrap());
        let trunc = buchberger_to_degree(&qs(&["x1^2", "x1*x2"], 2), 2).unwrap();
        assert_eq!(is_zero_dimensional(&trunc), Err(GroebnerError::IncompleteBasis));
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(max_degree_outside(&gb_with_lms(&[&[1, 0], &[0, 2]], 2)).unwrap(), 1);
        assert_eq!(max_degree_outside(&gb_with_lms(&[&[2, 0], &[0, 2]], 2)).unwrap(), 2);
        assert_eq!(staircase_size(&gb_with_lms(&[&[2, 0], &[0, 2]], 2)).unwrap(), 4);
        assert_eq!(
            max_degree_outside(&gb_with_lms(&[&[1, 1]], 2)),
            Err(GroebnerError::NotZeroDimensional)
        );
    }

    #[test]
    fn standard_monomial_examples() {
        let empty = TruncatedGB::empty(Rationals, 2);
        assert_eq!(
            standard_monomials_of_degree(&empty, 2).unwrap(),
            vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])]
        );
        let gb = gb_with_lms(&[&[1, 0]], 2);
        assert_eq!(standard_monomials_of_degree(&gb, 3).unwrap(), vec![mono(&[0, 3])]);
        let gb = gb_with_lms(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(standard_monomials_of_degree(&gb, 2).unwrap(), vec![mono(&[1, 1])]);
        let trunc = buchberger_to_degree(&qs(&["x1^2", "x1*x2"], 2), 2).unwrap();
        assert_eq!(
            standard_monomials_of_degree(&trunc, 3),
            Err(GroebnerError::InsufficientDegree {
                valid_to: 2,
                requested: 3
            })
        );
    }

    #[test]
    fn elementary_symmetric_staircase() {
        // e_1..e_n generate an ideal whose quotient has dimension n! and top degree n(n-1)/2
        for n in 2..=5usize {
            let gens = crate::families::elementary_symmetric(Rationals, n);
            let gb = buchberger_full(&gens).unwrap();
            assert!(is_zero_dimensional(&gb).unwrap());
            assert_eq!(max_degree_outside(&gb).unwrap() as usize, n * (n - 1) / 2);
            assert_eq!(staircase_size(&gb).unwrap(), (1..=n).product::<usize>());
            assert_closed(&gb);
        }
    }

    #[test]
    fn raise_matches_from_scratch() {
        let f = PrimeField::new(7).unwrap();
        let gens: Vec<_> = ["x1^2 + x2*x3", "x1*x2 - x3^2", "x2^2 + 3*x1*x3"]
            .iter()
            .map(|t| Polynomial::parse(t, f, 3).unwrap())
            .collect();
        let step = buchberger_to_degree(&gens, 3).unwrap().raise_to(4).raise_to(5);
        let direct = buchberger_to_degree(&gens, 5).unwrap();
        let lms = |gb: &TruncatedGB<PrimeField>| {
            let mut v: Vec<_> = gb.leading_monomials().cloned().collect();
            v.sort();
            v
        };
        assert_eq!(lms(&step), lms(&direct));
        assert_closed(&step);
    }

    #[test]
    fn echelon_form() {
        let rows = echelonize(qs(&["x1^2 + x2^2", "2*x1^2 + x1*x2", "x1*x2 - 2*x2^2"], 2));
        assert_eq!(rows, qs(&["x1^2 + x2^2", "x1*x2 - 2*x2^2"], 2));
    }
}
