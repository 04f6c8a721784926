//! Sparse multivariate polynomials under degree-reverse-lexicographic order.
//!
//! Variables are `x1 > x2 > ... > xn`. Terms are kept strictly descending with
//! nonzero coefficients; every operation returns a fresh value.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::coeff::{CoeffError, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("exponent overflow (entries are limited to {})", u16::MAX)]
    ExponentOverflow,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

type Exps = SmallVec<[u16; 24]>;

/// An exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    /// The variable `x_{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents<I>(exps: I) -> Result<Self, PolyError>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut out = Exps::new();
        let mut degree = 0u32;
        for e in exps {
            let e: u64 = e.into();
            let e = u16::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
            degree = degree.checked_add(u32::from(e)).ok_or(PolyError::ExponentOverflow)?;
            out.push(e);
        }
        Ok(Monomial { exps: out, degree })
    }

    pub(crate) fn from_raw(exps: Exps) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degrevlex comparison that reports a dimension mismatch instead of panicking.
    pub fn compare(&self, other: &Monomial) -> Result<Ordering, PolyError> {
        if self.nvars() != other.nvars() {
            return Err(PolyError::DimensionMismatch(self.nvars(), other.nvars()));
        }
        Ok(self.cmp(other))
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.nvars() != other.nvars() {
            return Err(PolyError::DimensionMismatch(self.nvars(), other.nvars()));
        }
        let mut exps = Exps::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
        })
    }

    /// Product for callers that already know the result stays in range
    /// (e.g. it equals the degree of an existing monomial).
    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.wrapping_add(*b))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_raw(exps)
    }

    /// Degree of `lcm(self, other)` without building it.
    pub fn lcm_degree(&self, other: &Monomial) -> u32 {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| u32::from(*a.max(b)))
            .sum()
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff `x_{i+1}` occurs (first 64 variables only). A necessary
    /// condition for `a | b` is `mask(a) & !mask(b) == 0`.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .take(64)
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// `Some(i)` if this is a pure power `x_{i+1}^e` with `e > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Applies the substitution `x_i -> x_{perm[i]}` (zero-based images).
    pub fn permute(&self, perm: &[u32]) -> Monomial {
        let mut exps: Exps = SmallVec::from_elem(0, self.nvars());
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i] as usize] = e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

impl Ord for Monomial {
    /// Degree first; ties broken reverse-lexicographically: the monomial with
    /// the smaller exponent at the last differing position is greater.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in `nvars` variables, descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_raw(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut SmallVec::from_elem(0, nvars), &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// A polynomial over `F` in a fixed number of variables.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Hash for Polynomial<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(field: F, nvars: usize, index: usize) -> Self {
        let one = field.one();
        Self::from_terms(field, nvars, [(Monomial::var(nvars, index), one)])
    }

    pub fn from_monomial(field: F, nvars: usize, m: Monomial) -> Self {
        let one = field.one();
        Self::from_terms(field, nvars, [(m, one)])
    }

    /// Collects arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms<I>(field: F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong number of variables");
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let v = field.add(e.get(), &c);
                    *e.get_mut() = v;
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { field, nvars, terms }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(field: F, nvars: usize, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !field.is_zero(c)));
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// The greatest term; errors on the zero polynomial.
    pub fn leading_monomial(&self) -> Result<(Monomial, F::Elem), PolyError> {
        self.terms.first().cloned().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree (the degree of the leading monomial, as the order is graded).
    pub fn degree(&self) -> Option<u32> {
        self.lm().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate_other { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Self::from_sorted_terms(self.field.clone(), self.nvars, out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect();
        Self::from_sorted_terms(self.field.clone(), self.nvars, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
            .collect();
        Self::from_sorted_terms(self.field.clone(), self.nvars, terms)
    }

    /// `c * m * self`; the order is multiplicative so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self, PolyError> {
        if m.nvars() != self.nvars {
            return Err(PolyError::DimensionMismatch(m.nvars(), self.nvars));
        }
        if self.field.is_zero(c) {
            return Ok(Self::zero(self.field.clone(), self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| Ok((t.checked_mul(m)?, self.field.mul(a, c))))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(Self::from_sorted_terms(self.field.clone(), self.nvars, terms))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(m2)?;
                let prod = f.mul(c1, c2);
                acc.entry(m).and_modify(|v| *v = f.add(v, &prod)).or_insert(prod);
            }
        }
        Ok(Self::from_terms(self.field.clone(), self.nvars, acc))
    }

    /// Exact product; panics only on exponent overflow.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .expect("exponent overflow in polynomial product")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::constant(self.field.clone(), self.nvars, self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if self.field.is_one(c) => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Fully reduced remainder of multivariate division by `basis`.
    pub fn normal_form(&self, basis: &[Polynomial<F>]) -> Polynomial<F> {
        Reducer::new(basis).reduce(self)
    }
}

/// Fixed-width encoding of monomials into `u128` keys whose integer order is
/// the monomial order.
///
/// The top eight bits hold the degree. Below it, one field per variable,
/// `x_n` most significant, stores `cap - a_i` under a zero guard bit. A
/// larger key is a larger monomial, products and quotients are additions and
/// subtractions of keys, and divisibility is a borrow test across the guard
/// bits.
#[derive(Debug, Clone, Copy)]
struct Layout {
    nvars: usize,
    width: u32,
    cap: u32,
    guards: u128,
    fields: u128,
}

impl Layout {
    const DEGREE_BITS: u32 = 8;

    fn new(nvars: usize) -> Option<Layout> {
        if nvars == 0 {
            return None;
        }
        let width = (128 - Self::DEGREE_BITS) / u32::try_from(nvars).ok()?;
        if width < 2 {
            return None;
        }
        let cap = ((1u32 << (width - 1).min(16)) - 1).min((1 << Self::DEGREE_BITS) - 1);
        let mut guards = 0u128;
        for i in 0..nvars as u32 {
            guards |= 1u128 << (i * width + width - 1);
        }
        let used = nvars as u32 * width;
        let fields = if used == 128 { u128::MAX } else { (1u128 << used) - 1 };
        Some(Layout {
            nvars,
            width,
            cap,
            guards,
            fields: fields & !guards,
        })
    }

    /// Key of the monomial `1`; `key(a) + key(b) - one = key(a * b)`.
    #[cfg(test)]
    fn one(&self) -> u128 {
        self.key(&Monomial::one(self.nvars))
    }

    fn degree_shift(&self) -> u32 {
        self.nvars as u32 * self.width
    }

    fn key(&self, m: &Monomial) -> u128 {
        let mut k = u128::from(m.degree) << self.degree_shift();
        for (i, &e) in m.exps.iter().enumerate() {
            k |= u128::from(self.cap - u32::from(e)) << (i as u32 * self.width);
        }
        k
    }

    fn decode(&self, k: u128) -> Monomial {
        let mask = (1u128 << self.width) - 1;
        let exps: Exps = (0..self.nvars)
            .map(|i| (self.cap - ((k >> (i as u32 * self.width)) & mask) as u32) as u16)
            .collect();
        Monomial {
            exps,
            degree: (k >> self.degree_shift()) as u32,
        }
    }

    /// `a | b` iff every field of `a` is at least the field of `b`.
    fn divides(&self, a: u128, b: u128) -> bool {
        let (a, b) = (a & self.fields, b & self.fields);
        ((a | self.guards).wrapping_sub(b) & self.guards) == self.guards
    }
}

/// A basis element with its tail pre-encoded.
struct PackedElem<E> {
    lm: u128,
    tail: Vec<(u128, E)>,
}

/// A division basis with precomputed leading data, reusable across many
/// reductions against the same elements.
pub struct Reducer<'a, F: Field> {
    basis: &'a [Polynomial<F>],
    masks: Vec<u64>,
    inv_lcs: Vec<F::Elem>,
    packed: Option<(Layout, Vec<PackedElem<F::Elem>>)>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(basis: &'a [Polynomial<F>]) -> Self {
        assert!(basis.iter().all(|g| !g.is_zero()), "zero polynomial in division basis");
        let masks = basis.iter().map(|g| g.terms[0].0.support_mask()).collect();
        let inv_lcs = basis
            .iter()
            .map(|g| g.field.inv(&g.terms[0].1).expect("nonzero leading coefficient"))
            .collect();
        let packed = basis.first().and_then(|g| Layout::new(g.nvars)).and_then(|layout| {
            let fits = basis
                .iter()
                .all(|g| g.terms.iter().all(|(m, _)| m.degree <= layout.cap));
            fits.then(|| {
                let elems = basis
                    .iter()
                    .map(|g| PackedElem {
                        lm: layout.key(&g.terms[0].0),
                        tail: g.terms[1..].iter().map(|(m, c)| (layout.key(m), c.clone())).collect(),
                    })
                    .collect();
                (layout, elems)
            })
        });
        Reducer {
            basis,
            masks,
            inv_lcs,
            packed,
        }
    }

    /// First basis element (in basis order) whose leading monomial divides `t`.
    pub fn find_reducer(&self, t: &Monomial) -> Option<usize> {
        let tmask = t.support_mask();
        (0..self.basis.len()).find(|&i| self.masks[i] & !tmask == 0 && self.basis[i].terms[0].0.divides(t))
    }

    /// Leading terms are reduced first; tail terms are reduced as well, so no
    /// monomial of the result is divisible by any leading monomial of the basis.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        if self.basis.is_empty() || p.is_zero() {
            return p.clone();
        }
        for g in self.basis {
            assert_eq!(g.nvars, p.nvars, "polynomials from different rings");
        }
        match &self.packed {
            Some((layout, elems)) if p.terms[0].0.degree <= layout.cap => self.reduce_packed(p, layout, elems),
            _ => self.reduce_generic(p),
        }
    }

    fn reduce_packed(&self, p: &Polynomial<F>, layout: &Layout, elems: &[PackedElem<F::Elem>]) -> Polynomial<F> {
        let f = &p.field;
        let mut heap: BinaryHeap<u128> = p.terms.iter().map(|(m, _)| layout.key(m)).collect();
        let mut coeffs: FxHashMap<u128, F::Elem> = FxHashMap::default();
        coeffs.reserve(p.terms.len());
        for (m, c) in &p.terms {
            coeffs.insert(layout.key(m), c.clone());
        }
        let mut out = Vec::new();
        while let Some(t) = heap.pop() {
            let c = coeffs.remove(&t).expect("each live key is queued once");
            if f.is_zero(&c) {
                continue;
            }
            let Some(i) = elems.iter().position(|g| layout.divides(g.lm, t)) else {
                out.push((layout.decode(t), c));
                continue;
            };
            let factor = if f.is_one(&self.inv_lcs[i]) {
                c
            } else {
                f.mul(&c, &self.inv_lcs[i])
            };
            // t / lm(g) * u, all in key arithmetic
            let shift = t.wrapping_sub(elems[i].lm);
            for (u, cu) in &elems[i].tail {
                let key = shift.wrapping_add(*u);
                match coeffs.entry(key) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        f.sub_mul_assign(e.get_mut(), &factor, cu);
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(f.neg(&f.mul(&factor, cu)));
                        heap.push(key);
                    }
                }
            }
        }
        Polynomial::from_sorted_terms(p.field.clone(), p.nvars, out)
    }

    fn reduce_generic(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let f = &p.field;
        let mut work: BTreeMap<Monomial, F::Elem> = p.terms.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((t, c)) = work.pop_last() {
            if f.is_zero(&c) {
                continue;
            }
            let Some(i) = self.find_reducer(&t) else {
                out.push((t, c));
                continue;
            };
            let g = &self.basis[i];
            let q = g.terms[0].0.quotient_of(&t);
            let factor = if f.is_one(&self.inv_lcs[i]) {
                c
            } else {
                f.mul(&c, &self.inv_lcs[i])
            };
            for (u, cu) in &g.terms[1..] {
                let key = q.mul_unchecked(u);
                match work.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        f.sub_mul_assign(e.get_mut(), &factor, cu);
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(f.neg(&f.mul(&factor, cu)));
                    }
                }
            }
        }
        Polynomial::from_sorted_terms(p.field.clone(), p.nvars, out)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical text: descending terms, `c*x1^e1*x2^e2`, unit exponents and
    /// unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{}", field.format(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", field.format(&abs))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Polynomial<F> {
    /// Parses the canonical text form. Also accepts parentheses and powers
    /// of sub-expressions, e.g. `(x1 + x2)^2 - 1/3*x3^2`.
    pub fn parse(text: &str, field: F, nvars: usize) -> Result<Self, PolyError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            field,
            nvars,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(poly)
    }
}

struct Parser<'s, F: Field> {
    src: &'s [u8],
    pos: usize,
    field: F,
    nvars: usize,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn expr(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = Polynomial::zero(self.field.clone(), self.nvars);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>, PolyError> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let rhs = self.power()?;
            acc = acc.checked_mul(&rhs)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<F>, PolyError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| PolyError::ExponentOverflow)?;
            if e > u32::from(u16::MAX) {
                return Err(PolyError::ExponentOverflow);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.integer()?;
                let idx = usize::try_from(idx).unwrap_or(0);
                if idx == 0 || idx > self.nvars {
                    return Err(self.err(&format!("variable index out of range 1..={}", self.nvars)));
                }
                Ok(Polynomial::var(self.field.clone(), self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') {
                    self.integer()?
                } else {
                    BigInt::from(1)
                };
                let c = self.field.from_ratio(&num, &den)?;
                Ok(Polynomial::constant(self.field.clone(), self.nvars, c))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}
