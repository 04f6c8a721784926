//! Minimal generating sets of invariant rings, and irreducible secondary
//! invariants relative to given primary invariants.
//!
//! Membership of a degree-`d` invariant `b` in the subalgebra generated by the
//! invariants `S` found so far is decided through the ideal `<S>`: `b` lies in
//! the subalgebra iff it lies in the ideal, iff its normal form against a
//! Gröbner basis of `<S>` valid up to degree `d` vanishes. The subalgebra is
//! never materialized.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::action::{orbit_sum, reynolds, ActionError, GroupSpec};
use crate::coeff::Field;
use crate::groebner::{
    buchberger_full, buchberger_to_degree, echelonize, is_zero_dimensional, max_degree_outside,
    standard_monomials_of_degree, GroebnerError, TruncatedGB,
};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvarError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("Reynolds mode needs the full element list, but the group exceeded the enumeration cap")]
    GroupNotEnumerated,
    #[error("degree {degree} exceeds Noether's bound for a group of order {order} without termination")]
    NoetherCapExceeded { degree: u32, order: u64 },
    #[error("primary invariant #{0} is not invariant under the group")]
    NonInvariantPrimary(usize),
    #[error("primary invariant #{0} is zero or not homogeneous")]
    NonHomogeneousPrimary(usize),
    #[error("no primary invariants given")]
    EmptyPrimary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Reynolds,
    OrbitSums,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Reynolds => "reynolds",
            Mode::OrbitSums => "orbit",
        }
    }
}

/// Order in which candidates of one degree are tested. Counts per degree do
/// not depend on it; the generators themselves may.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateOrder {
    #[default]
    Descending,
    Ascending,
}

/// Invariants of one degree whose span is the whole degree-`d` component
/// modulo the current ideal.
#[derive(Debug, Clone)]
pub struct CandidateBatch<F: Field> {
    pub degree: u32,
    pub polys: Vec<Polynomial<F>>,
}

/// One committed generator together with its monic normal form at insertion.
#[derive(Debug, Clone)]
pub struct TraceEntry<F: Field> {
    pub degree: u32,
    pub remainder: Polynomial<F>,
}

#[derive(Debug, Clone)]
pub struct GeneratingSet<F: Field> {
    /// `(degree, monic invariant)` in the order found.
    pub generators: Vec<(u32, Polynomial<F>)>,
    /// `counts_by_degree[d - 1]` generators of degree `d`; no trailing zeros.
    pub counts_by_degree: Vec<usize>,
    /// `max(d_max, top generator degree)`: no minimal generator has larger
    /// degree.
    pub degree_bound: u32,
    /// Top degree of a standard monomial of the final complete basis; every
    /// form of larger degree lies in the ideal of the generators. Zero if the
    /// loop never reached a termination test.
    pub d_max: u32,
    pub mode: Mode,
    pub seeded_with_primary: bool,
    pub trace: Vec<TraceEntry<F>>,
    /// Primary invariants the run was seeded with (empty otherwise).
    pub seed: Vec<Polynomial<F>>,
}

impl<F: Field> GeneratingSet<F> {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.generators.iter().map(|(d, _)| *d).max()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.generators.iter().map(|(_, p)| p)
    }
}

pub fn counts_by_degree<F: Field>(generators: &[(u32, Polynomial<F>)]) -> Vec<usize> {
    let top = generators.iter().map(|(d, _)| *d as usize).max().unwrap_or(0);
    let mut counts = vec![0; top];
    for (d, _) in generators {
        counts[*d as usize - 1] += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub mode: Mode,
    pub order: CandidateOrder,
}

impl Options {
    pub fn new(mode: Mode) -> Self {
        Options {
            mode,
            order: CandidateOrder::Descending,
        }
    }
}

/// The default mode for a group: orbit sums for permutation groups.
pub fn default_mode<F: Field>(spec: &GroupSpec<F>) -> Mode {
    if spec.is_permutation_group() {
        Mode::OrbitSums
    } else {
        Mode::Reynolds
    }
}

/// Reynolds images or orbit sums of the standard monomials of degree `d`,
/// zeros and duplicates removed, ordered by leading monomial.
pub fn candidates<F: Field>(
    gb: &TruncatedGB<F>,
    d: u32,
    spec: &GroupSpec<F>,
    mode: Mode,
    order: CandidateOrder,
) -> Result<CandidateBatch<F>, InvarError> {
    let monos = standard_monomials_of_degree(gb, d)?;
    let mut polys = match mode {
        Mode::OrbitSums => {
            // orbits partition the monomials; each is summed once
            let mut covered: HashSet<Monomial> = HashSet::new();
            let mut out = Vec::new();
            for m in &monos {
                if covered.contains(m) {
                    continue;
                }
                let orbit = spec.monomial_orbit(m)?;
                covered.extend(orbit);
                out.push(orbit_sum(m, spec)?);
            }
            out
        }
        Mode::Reynolds => {
            let elements = spec.elements().ok_or(InvarError::GroupNotEnumerated)?;
            let images: Vec<Polynomial<F>> = monos
                .par_iter()
                .map(|m| {
                    reynolds(
                        &Polynomial::from_monomial(spec.field().clone(), spec.nvars(), m.clone()),
                        elements,
                    )
                })
                .collect::<Result<_, _>>()?;
            let mut seen: HashSet<Polynomial<F>> = HashSet::new();
            images
                .into_iter()
                .filter(|p| !p.is_zero() && seen.insert(p.clone()))
                .collect()
        }
    };
    polys.sort_by(|a, b| b.lm().cmp(&a.lm()));
    if order == CandidateOrder::Ascending {
        polys.reverse();
    }
    Ok(CandidateBatch { degree: d, polys })
}

/// Mutable state of one run: the generators `S`, a basis of `<S>` and `d_max`.
struct Run<'a, F: Field> {
    spec: &'a GroupSpec<F>,
    options: Options,
    seed: Vec<Polynomial<F>>,
    found: Vec<(u32, Polynomial<F>)>,
    trace: Vec<TraceEntry<F>>,
    gb: TruncatedGB<F>,
    /// Degrees present in `S`, seed included.
    degrees: HashSet<u32>,
    d_max: u32,
}

impl<F: Field> Run<'_, F> {
    fn has_degree(&self, d: u32) -> bool {
        d > 0 && self.degrees.contains(&d)
    }

    fn max_s_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn execute(mut self) -> Result<GeneratingSet<F>, InvarError> {
        let mut d = 1u32;
        loop {
            let t0 = Instant::now();
            // (a)
            if d >= 2 && self.has_degree(d - 2) && !self.has_degree(d - 1) {
                self.gb =
                    std::mem::replace(&mut self.gb, TruncatedGB::empty(self.spec.field().clone(), 0)).into_complete();
                if is_zero_dimensional(&self.gb)? {
                    self.d_max = max_degree_outside(&self.gb)?;
                    if d > self.d_max {
                        break;
                    }
                }
            } else if !self.gb.is_valid_to(d) {
                // covers both a new generator in degree d-1 and a basis carried
                // forward from an earlier degree
                self.gb = std::mem::replace(&mut self.gb, TruncatedGB::empty(self.spec.field().clone(), 0)).raise_to(d);
            }
            self.check_noether(d)?;
            let t1 = Instant::now();
            // (b)
            let batch = candidates(&self.gb, d, self.spec, self.options.mode, self.options.order)?;
            let n_cand = batch.polys.len();
            let t2 = Instant::now();
            // (c)
            let before = self.found.len();
            self.commit(batch);
            log::debug!(
                "degree {d}: basis {} ({:.3}s), {n_cand} candidates ({:.3}s), {} new ({:.3}s), d_max {}",
                self.gb.len(),
                (t1 - t0).as_secs_f64(),
                (t2 - t1).as_secs_f64(),
                self.found.len() - before,
                t2.elapsed().as_secs_f64(),
                self.d_max
            );
            // (d)
            if d == self.d_max {
                break;
            }
            d += 1;
        }
        let mut generators = std::mem::take(&mut self.found);
        let counts = counts_by_degree(&generators);
        generators.shrink_to_fit();
        let top = generators.iter().map(|(e, _)| *e).max().unwrap_or(0);
        Ok(GeneratingSet {
            generators,
            counts_by_degree: counts,
            degree_bound: self.d_max.max(top),
            d_max: self.d_max,
            mode: self.options.mode,
            seeded_with_primary: !self.seed.is_empty(),
            trace: self.trace,
            seed: self.seed,
        })
    }

    /// Noether's bound puts every generator in degree at most `|G|`; the
    /// termination test then fires two degrees after the last generator.
    fn check_noether(&self, d: u32) -> Result<(), InvarError> {
        let Some(order) = self.spec.order() else {
            return Ok(());
        };
        let top = self.found.iter().map(|(e, _)| u64::from(*e)).max().unwrap_or(0);
        let limit = order.max(u64::from(self.max_s_degree())) + 2;
        if top > order || (self.d_max == 0 && u64::from(d) > limit) {
            return Err(InvarError::NoetherCapExceeded { degree: d, order });
        }
        Ok(())
    }

    /// Normal forms against a frozen snapshot run in parallel; commits are
    /// sequential in candidate order. A nonzero snapshot remainder is reduced
    /// again once the basis has grown, which yields the normal form against
    /// the current basis since normal forms are unique up to the valid degree.
    fn commit(&mut self, batch: CandidateBatch<F>) {
        let d = batch.degree;
        let snapshot: Vec<Polynomial<F>> = {
            let reducer = self.gb.reducer();
            batch.polys.par_iter().map(|b| reducer.reduce(b)).collect()
        };
        let snapshot_len = self.gb.len();
        for (b, r) in batch.polys.into_iter().zip(snapshot) {
            if r.is_zero() {
                continue;
            }
            let r = if self.gb.len() == snapshot_len {
                r
            } else {
                self.gb.normal_form(&r)
            };
            if r.is_zero() {
                continue;
            }
            let r = r.monic();
            self.gb = std::mem::replace(&mut self.gb, TruncatedGB::empty(self.spec.field().clone(), 0))
                .push_remainder(r.clone(), d);
            self.trace.push(TraceEntry {
                degree: d,
                remainder: r,
            });
            self.found.push((d, b.monic()));
            self.degrees.insert(d);
        }
    }
}

/// A minimal homogeneous generating set of the invariant ring.
pub fn invariant_algebra<F: Field>(spec: &GroupSpec<F>, options: Options) -> Result<GeneratingSet<F>, InvarError> {
    if options.mode == Mode::Reynolds && spec.elements().is_none() {
        return Err(InvarError::GroupNotEnumerated);
    }
    Run {
        spec,
        options,
        seed: Vec::new(),
        found: Vec::new(),
        trace: Vec::new(),
        gb: TruncatedGB::empty(spec.field().clone(), spec.nvars()),
        degrees: HashSet::new(),
        d_max: 0,
    }
    .execute()
}

/// Irreducible secondary invariants: the run is seeded with the primary
/// invariants and a full basis of their ideal, and only the invariants found
/// beyond them are returned.
pub fn irreducible_secondary<F: Field>(
    spec: &GroupSpec<F>,
    primary: &[Polynomial<F>],
    options: Options,
) -> Result<GeneratingSet<F>, InvarError> {
    if primary.is_empty() {
        return Err(InvarError::EmptyPrimary);
    }
    if options.mode == Mode::Reynolds && spec.elements().is_none() {
        return Err(InvarError::GroupNotEnumerated);
    }
    for (i, p) in primary.iter().enumerate() {
        if p.is_zero() || !p.is_homogeneous() {
            return Err(InvarError::NonHomogeneousPrimary(i + 1));
        }
        if !spec.is_invariant(p)? {
            return Err(InvarError::NonInvariantPrimary(i + 1));
        }
    }
    let gb = buchberger_full(primary)?;
    Run {
        spec,
        options,
        seed: primary.to_vec(),
        found: Vec::new(),
        trace: Vec::new(),
        gb,
        degrees: primary.iter().filter_map(Polynomial::degree).collect(),
        d_max: 0,
    }
    .execute()
}

/// Re-runs the insertions recorded in the trace: each generator must have the
/// recorded nonzero normal form against the basis of everything before it.
pub fn replay_trace<F: Field>(result: &GeneratingSet<F>, spec: &GroupSpec<F>) -> Result<bool, InvarError> {
    if result.trace.len() != result.generators.len() {
        return Ok(false);
    }
    let mut gb = if result.seed.is_empty() {
        TruncatedGB::empty(spec.field().clone(), spec.nvars())
    } else {
        buchberger_full(&result.seed)?
    };
    for ((d, b), entry) in result.generators.iter().zip(&result.trace) {
        if *d != entry.degree {
            return Ok(false);
        }
        gb = gb.raise_to(*d);
        let r = gb.normal_form(b);
        if r.is_zero() || r.monic() != entry.remainder {
            return Ok(false);
        }
        gb = gb.push_remainder(entry.remainder.clone(), *d);
    }
    Ok(true)
}

/// Bounds on the more expensive verification checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Minimality is checked for every generator when there are at most this
    /// many, and for this many evenly spaced generators otherwise.
    pub minimality_limit: usize,
    /// Completeness is checked only for at most this many variables...
    pub completeness_max_vars: usize,
    /// ...and in degrees up to this bound.
    pub completeness_max_degree: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            minimality_limit: 20,
            completeness_max_vars: 4,
            completeness_max_degree: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    /// One-based indices into `generators` of generators that are not invariant.
    pub non_invariant: Vec<usize>,
    pub non_homogeneous: Vec<usize>,
    /// Generators that lie in the ideal of the others.
    pub redundant: Vec<usize>,
    pub minimality_checked: usize,
    /// Degrees where generator products do not span the invariants.
    pub incomplete_degrees: Vec<u32>,
    /// Highest degree the completeness check covered, if it ran.
    pub completeness_checked_to: Option<u32>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.non_invariant.is_empty()
            && self.non_homogeneous.is_empty()
            && self.redundant.is_empty()
            && self.incomplete_degrees.is_empty()
    }
}

pub fn verify_generating_set<F: Field>(
    result: &GeneratingSet<F>,
    spec: &GroupSpec<F>,
    options: VerifyOptions,
) -> Result<VerificationReport, InvarError> {
    let mut report = VerificationReport::default();
    let gens: Vec<&Polynomial<F>> = result.polynomials().collect();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() || !g.is_homogeneous() {
            report.non_homogeneous.push(i + 1);
        } else if !spec.is_invariant(g)? {
            report.non_invariant.push(i + 1);
        }
    }
    if !report.non_homogeneous.is_empty() {
        return Ok(report);
    }

    // minimality: f is redundant iff it lies in the ideal of all other
    // generators (seed included), tested with a basis valid up to deg f
    let all: Vec<Polynomial<F>> = result.seed.iter().chain(gens.iter().copied()).cloned().collect();
    let offset = result.seed.len();
    let sample = sample_indices(gens.len(), options.minimality_limit);
    report.minimality_checked = sample.len();
    let redundant: Vec<usize> = sample
        .par_iter()
        .map(|&i| -> Result<Option<usize>, InvarError> {
            let f = gens[i];
            let d = f.degree().expect("nonzero");
            let others: Vec<Polynomial<F>> = all
                .iter()
                .enumerate()
                .filter(|&(j, p)| j != offset + i && p.degree().is_some_and(|e| e <= d))
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                return Ok(None);
            }
            let gb = buchberger_to_degree(&others, d)?;
            Ok(gb.normal_form(f).is_zero().then_some(i + 1))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    report.redundant = redundant;

    if spec.nvars() <= options.completeness_max_vars {
        let top = options.completeness_max_degree;
        report.incomplete_degrees = completeness_failures(&all, spec, top)?;
        report.completeness_checked_to = Some(top);
    }
    Ok(report)
}

fn sample_indices(len: usize, limit: usize) -> Vec<usize> {
    if len <= limit {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..limit).map(|k| k * len / limit).collect();
    idx.dedup();
    idx
}

/// Degrees `d <= top` where the span of products of `gens` differs from the
/// span of the invariants of degree `d`, by exact rank comparison.
fn completeness_failures<F: Field>(
    gens: &[Polynomial<F>],
    spec: &GroupSpec<F>,
    top: u32,
) -> Result<Vec<u32>, InvarError> {
    let field = spec.field().clone();
    let n = spec.nvars();
    // products[d]: echelon basis of the degree-d part of the generated algebra
    let mut products: HashMap<u32, Vec<Polynomial<F>>> = HashMap::new();
    products.insert(0, vec![Polynomial::constant(field.clone(), n, field.one())]);
    let mut failures = Vec::new();
    for d in 1..=top {
        let mut rows = Vec::new();
        for g in gens {
            let e = g.degree().expect("nonzero");
            if e > d {
                continue;
            }
            for p in &products[&(d - e)] {
                rows.push(g.mul(p));
            }
        }
        let span = echelonize(rows);
        let invariants = echelonize(invariant_spanning_set(spec, d)?);
        let mut union = span.clone();
        union.extend(invariants.iter().cloned());
        let joint = echelonize(union).len();
        if span.len() != invariants.len() || joint != span.len() {
            failures.push(d);
        }
        products.insert(d, span);
    }
    Ok(failures)
}

/// Reynolds images of all degree-`d` monomials when the group is enumerated,
/// orbit sums otherwise.
fn invariant_spanning_set<F: Field>(spec: &GroupSpec<F>, d: u32) -> Result<Vec<Polynomial<F>>, InvarError> {
    let monos = monomials_of_degree(spec.nvars(), d);
    match spec.elements() {
        Some(elements) => monos
            .into_iter()
            .map(|m| {
                let p = Polynomial::from_monomial(spec.field().clone(), spec.nvars(), m);
                Ok(reynolds(&p, elements)?)
            })
            .collect(),
        None => monos.iter().map(|m| Ok(orbit_sum(m, spec)?)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Permutation;
    use crate::coeff::{PrimeField, Rationals};
    use crate::families::cycle_images;

    fn q(text: &str, n: usize) -> Polynomial<Rationals> {
        Polynomial::parse(text, Rationals, n).unwrap()
    }

    fn perm_group<F: Field>(field: F, perms: &[&[usize]]) -> GroupSpec<F> {
        GroupSpec::permutations(
            field,
            perms.iter().map(|p| Permutation::from_images(p).unwrap()).collect(),
        )
        .unwrap()
    }

    fn generated_set(polys: Vec<Polynomial<Rationals>>) -> GeneratingSet<Rationals> {
        let generators: Vec<_> = polys.into_iter().map(|p| (p.degree().unwrap(), p)).collect();
        GeneratingSet {
            counts_by_degree: counts_by_degree(&generators),
            generators,
            degree_bound: 0,
            d_max: 0,
            mode: Mode::OrbitSums,
            seeded_with_primary: false,
            trace: Vec::new(),
            seed: Vec::new(),
        }
    }

    #[test]
    fn candidate_examples() {
        let c3 = perm_group(Rationals, &[&[2, 3, 1]]);
        let empty = TruncatedGB::empty(Rationals, 3);
        let batch = candidates(&empty, 1, &c3, Mode::OrbitSums, CandidateOrder::Descending).unwrap();
        assert_eq!(batch.polys, vec![q("x1 + x2 + x3", 3)]);

        let trivial = perm_group(Rationals, &[&[1, 2, 3]]);
        let batch = candidates(&empty, 1, &trivial, Mode::Reynolds, CandidateOrder::Descending).unwrap();
        assert_eq!(batch.polys, vec![q("x1", 3), q("x2", 3), q("x3", 3)]);

        // lm(x1 + x2) = x1 leaves only x2^2 standard in degree 2; with x1 + x2
        // it spans the symmetric quadrics
        let s2 = perm_group(Rationals, &[&[2, 1]]);
        let gb = buchberger_full(&[q("x1 + x2", 2)]).unwrap();
        let batch = candidates(&gb, 2, &s2, Mode::OrbitSums, CandidateOrder::Descending).unwrap();
        assert_eq!(batch.polys, vec![q("x1^2 + x2^2", 2)]);

        let s3 = perm_group(Rationals, &[&[2, 1, 3], &[2, 3, 1]]);
        let gb = TruncatedGB::empty(Rationals, 3);
        let desc = candidates(&gb, 2, &s3, Mode::OrbitSums, CandidateOrder::Descending).unwrap();
        assert_eq!(
            desc.polys,
            vec![q("x1^2 + x2^2 + x3^2", 3), q("x1*x2 + x1*x3 + x2*x3", 3)]
        );
        let asc = candidates(&gb, 2, &s3, Mode::OrbitSums, CandidateOrder::Ascending).unwrap();
        assert_eq!(
            asc.polys,
            vec![q("x1*x2 + x1*x3 + x2*x3", 3), q("x1^2 + x2^2 + x3^2", 3)]
        );
    }

    #[test]
    fn symmetric_group_on_two_variables() {
        let s2 = perm_group(Rationals, &[&[2, 1]]);
        for mode in [Mode::OrbitSums, Mode::Reynolds] {
            let res = invariant_algebra(&s2, Options::new(mode)).unwrap();
            assert_eq!(res.counts_by_degree, vec![1, 1]);
            // GB {x1 + x2, x2^2}: staircase {1, x2}
            assert_eq!(res.d_max, 1);
            assert_eq!(res.degree_bound, 2);
            let report = verify_generating_set(&res, &s2, VerifyOptions::default()).unwrap();
            assert!(report.passed(), "{report:?}");
            assert!(replay_trace(&res, &s2).unwrap());
        }
    }

    #[test]
    fn small_cyclic_groups() {
        let c3 = perm_group(Rationals, &[&cycle_images(3)]);
        let res = invariant_algebra(&c3, Options::new(Mode::OrbitSums)).unwrap();
        // x1+x2+x3, two quadrics... computed independently by the completeness check
        let report = verify_generating_set(&res, &c3, VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.completeness_checked_to, Some(8));
        assert!(res.max_degree().unwrap() <= 3);
    }

    #[test]
    fn redundant_generator_detected() {
        let s2 = perm_group(Rationals, &[&[2, 1]]);
        let set = generated_set(vec![q("x1 + x2", 2), q("x1^2 + 2*x1*x2 + x2^2", 2)]);
        let report = verify_generating_set(&set, &s2, VerifyOptions::default()).unwrap();
        assert_eq!(report.redundant, vec![2]);
        assert!(!report.incomplete_degrees.is_empty());
        assert!(!report.passed());
    }

    #[test]
    fn non_invariant_generator_detected() {
        let s2 = perm_group(Rationals, &[&[2, 1]]);
        let set = generated_set(vec![q("x1", 2)]);
        let report = verify_generating_set(&set, &s2, VerifyOptions::default()).unwrap();
        assert_eq!(report.non_invariant, vec![1]);
    }

    #[test]
    fn secondary_examples() {
        let trivial = perm_group(Rationals, &[&[1, 2, 3]]);
        let prim = vec![q("x1", 3), q("x2", 3), q("x3", 3)];
        let res = irreducible_secondary(&trivial, &prim, Options::new(Mode::OrbitSums)).unwrap();
        assert!(res.is_empty());
        assert!(res.seeded_with_primary);

        let c2 = perm_group(Rationals, &[&[2, 1]]);
        let prim = vec![q("x1^2 + x2^2", 2), q("x1*x2", 2)];
        let res = irreducible_secondary(&c2, &prim, Options::new(Mode::OrbitSums)).unwrap();
        assert_eq!(res.counts_by_degree, vec![1]);
        assert_eq!(res.generators[0].1, q("x1 + x2", 2));
        assert!(replay_trace(&res, &c2).unwrap());

        assert_eq!(
            irreducible_secondary(&c2, &[q("x1", 2)], Options::new(Mode::OrbitSums)).unwrap_err(),
            InvarError::NonInvariantPrimary(1)
        );
        assert_eq!(
            irreducible_secondary(&c2, &[], Options::new(Mode::OrbitSums)).unwrap_err(),
            InvarError::EmptyPrimary
        );
    }

    #[test]
    fn modular_prime_field_runs() {
        let f5 = PrimeField::new(5).unwrap();
        let c3 = perm_group(f5, &[&cycle_images(3)]);
        let res = invariant_algebra(&c3, Options::new(Mode::Reynolds)).unwrap();
        let q3 = perm_group(Rationals, &[&cycle_images(3)]);
        let res_q = invariant_algebra(&q3, Options::new(Mode::Reynolds)).unwrap();
        assert_eq!(res.counts_by_degree, res_q.counts_by_degree);
    }
}
