//! Cross-module properties: the incremental basis against full Buchberger,
//! Reynolds and orbit-sum identities, and invariance of the generating set
//! under the choice of mode and candidate order.

use std::collections::BTreeSet;

use invring::action::enumerate_group;
use invring::groebner::{buchberger_to_degree, extend_with_generator, GroebnerError};
use invring::poly::monomials_of_degree;
use invring::{
    act, invariant_algebra, orbit_sum, reynolds, verify_generating_set, CandidateOrder, GroupElement, GroupSpec,
    Matrix, Mode, Monomial, Options, Permutation, Polynomial, PrimeField, Rat, Rationals, TruncatedGB, VerifyOptions,
};
use proptest::prelude::*;

type Q = Polynomial<Rationals>;

fn arb_homogeneous(nvars: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Q> {
    let monos = monomials_of_degree(nvars, d);
    let count = monos.len();
    prop::collection::vec((0..count, -4i64..=4), 1..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            Rationals,
            nvars,
            terms.into_iter().map(|(i, c)| (monos[i].clone(), Rat::from(c))),
        )
    })
}

fn arb_generators(nvars: usize, max_degree: u32) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(1..=max_degree, 2..=4).prop_flat_map(move |degrees| {
        degrees
            .into_iter()
            .map(|d| arb_homogeneous(nvars, d, 4))
            .collect::<Vec<_>>()
    })
}

fn arb_monomial(nvars: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..=max_degree as u16, nvars)
        .prop_filter("degree bound", move |e| {
            e.iter().map(|&x| u32::from(x)).sum::<u32>() <= max_degree
        })
        .prop_map(|e| Monomial::from_exponents(e).unwrap())
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// A permutation group on 3 or 4 points from one or two random generators.
fn arb_perm_group() -> impl Strategy<Value = GroupSpec<Rationals>> {
    (3usize..=4)
        .prop_flat_map(|n| prop::collection::vec(arb_permutation(n), 1..=2))
        .prop_map(|perms| GroupSpec::permutations(Rationals, perms).unwrap())
}

/// Minimal generators of degree at most `d` of the ideal spanned by `lms`.
fn minimal_lms<'a>(lms: impl Iterator<Item = &'a Monomial>, d: u32) -> BTreeSet<Monomial> {
    let low: Vec<&Monomial> = lms.filter(|m| m.degree() <= d).collect();
    low.iter()
        .filter(|m| !low.iter().any(|o| o != *m && o.divides(m)))
        .map(|m| (*m).clone())
        .collect()
}

fn sorted_by_degree(mut gens: Vec<Q>) -> Vec<Q> {
    gens.retain(|g| !g.is_zero());
    gens.sort_by_key(|g| g.degree());
    gens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Extending a basis valid to `d` with one generator of degree `d` gives
    /// the same leading-monomial ideal up to `d` as Buchberger on the union.
    #[test]
    fn extension_matches_buchberger(gens in arb_generators(3, 5)) {
        let gens = sorted_by_degree(gens);
        prop_assume!(!gens.is_empty());
        let mut gb = TruncatedGB::empty(Rationals, 3);
        for (k, p) in gens.iter().enumerate() {
            let d = p.degree().unwrap();
            gb = gb.raise_to(d);
            gb = match extend_with_generator(gb.clone(), p) {
                Ok((next, r)) => {
                    prop_assert_eq!(r.degree(), Some(d));
                    next
                }
                Err(GroebnerError::RemainderZero) => gb,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let oracle = buchberger_to_degree(&gens[..=k], d).unwrap();
            prop_assert_eq!(minimal_lms(gb.leading_monomials(), d), minimal_lms(oracle.leading_monomials(), d));
        }
    }

    #[test]
    fn reynolds_is_an_idempotent_module_map(spec in arb_perm_group(), p in arb_homogeneous(4, 2, 3), r in arb_homogeneous(4, 1, 3), a in -3i64..=3, b in -3i64..=3) {
        let n = spec.nvars();
        let restrict = |q: &Q| Polynomial::from_terms(Rationals, n, q.terms().iter().map(|(m, c)| {
            (Monomial::from_exponents(m.exponents()[..n].iter().copied()).unwrap(), c.clone())
        }));
        let (p, r) = (restrict(&p), restrict(&r));
        let elems = spec.elements().unwrap();
        let rp = reynolds(&p, elems).unwrap();
        prop_assert_eq!(reynolds(&rp, elems).unwrap(), rp.clone());
        prop_assert!(spec.is_invariant(&rp).unwrap());
        // Rey(p q) = Rey(p) q for invariant q
        let q = reynolds(&r, elems).unwrap();
        prop_assert_eq!(reynolds(&p.mul(&q), elems).unwrap(), rp.mul(&q));
        let combo = p.scale(&Rat::from(a)).add(&r.scale(&Rat::from(b)));
        let expected = rp.scale(&Rat::from(a)).add(&reynolds(&r, elems).unwrap().scale(&Rat::from(b)));
        prop_assert_eq!(reynolds(&combo, elems).unwrap(), expected);
    }

    #[test]
    fn matrix_action_is_multiplicative(entries in prop::collection::vec(-2i64..=2, 9), p in arb_homogeneous(3, 2, 3), r in arb_homogeneous(3, 2, 3)) {
        let rows: Vec<Vec<Rat>> = entries.chunks(3).map(|row| row.iter().map(|&v| Rat::from(v)).collect()).collect();
        let m = Matrix::from_rows(&Rationals, rows);
        prop_assume!(m.is_ok());
        let g = GroupElement::Matrix(m.unwrap());
        let lhs = act(&g, &p.mul(&r)).unwrap();
        prop_assert_eq!(lhs, act(&g, &p).unwrap().mul(&act(&g, &r).unwrap()));
        prop_assert_eq!(act(&g, &p.add(&r)).unwrap(), act(&g, &p).unwrap().add(&act(&g, &r).unwrap()));
    }

    #[test]
    fn orbit_sum_is_scaled_reynolds(spec in arb_perm_group(), m in arb_monomial(4, 5)) {
        let n = spec.nvars();
        let m = Monomial::from_exponents(m.exponents()[..n].iter().copied()).unwrap();
        let orbit = spec.monomial_orbit(&m).unwrap().len();
        let rey = reynolds(&Polynomial::from_monomial(Rationals, n, m.clone()), spec.elements().unwrap()).unwrap();
        prop_assert_eq!(orbit_sum(&m, &spec).unwrap(), rey.scale(&Rat::from(orbit as i64)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mode_and_order_do_not_change_counts(spec in arb_perm_group()) {
        let base = invariant_algebra(&spec, Options::new(Mode::OrbitSums)).unwrap();
        for (mode, order) in [
            (Mode::Reynolds, CandidateOrder::Descending),
            (Mode::OrbitSums, CandidateOrder::Ascending),
            (Mode::Reynolds, CandidateOrder::Ascending),
        ] {
            let other = invariant_algebra(&spec, Options { mode, order }).unwrap();
            prop_assert_eq!(&other.counts_by_degree, &base.counts_by_degree);
        }
        for g in base.polynomials() {
            prop_assert!(spec.is_invariant(g).unwrap());
        }
        let report = verify_generating_set(&base, &spec, VerifyOptions::default()).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

/// Counts depend only on the group, not on a non-modular characteristic.
#[test]
fn cyclic_counts_agree_across_characteristics() {
    let perms = |n: usize| vec![Permutation::from_images(&(1..=n).map(|k| k % n + 1).collect::<Vec<_>>()).unwrap()];
    for (n, p) in [(4usize, 3u64), (5, 2), (5, 3)] {
        let q = invariant_algebra(
            &GroupSpec::permutations(Rationals, perms(n)).unwrap(),
            Options::new(Mode::Reynolds),
        )
        .unwrap();
        let f = PrimeField::new(p).unwrap();
        let spec = GroupSpec::permutations(f, perms(n)).unwrap();
        let modp = invariant_algebra(&spec, Options::new(Mode::Reynolds)).unwrap();
        assert_eq!(q.counts_by_degree, modp.counts_by_degree, "C{n} over GF({p})");
        assert!(modp.polynomials().all(|g| spec.is_invariant(g).unwrap()));
    }
}

/// The cyclic group of order 4 acting on the plane by a quarter turn.
#[test]
fn rotation_invariants() {
    let rows = vec![vec![Rat::from(0), Rat::from(-1)], vec![Rat::from(1), Rat::from(0)]];
    let g = GroupElement::Matrix(Matrix::from_rows(&Rationals, rows).unwrap());
    let spec = GroupSpec::new(Rationals, 2, vec![g], 64).unwrap();
    assert_eq!(spec.order(), Some(4));
    assert_eq!(enumerate_group(&spec, 64).unwrap().len(), 4);
    let result = invariant_algebra(&spec, Options::new(Mode::Reynolds)).unwrap();
    assert_eq!(result.counts_by_degree, vec![0, 1, 0, 2]);
    assert_eq!(result.polynomials().next().unwrap().to_string(), "x1^2 + x2^2");
}
