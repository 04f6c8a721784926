//! Standard polynomial and group families used by examples, tests and the
//! benchmark fixtures.

use crate::coeff::Field;
use crate::poly::{Monomial, Polynomial};

/// The elementary symmetric polynomials `e_1, ..., e_n` in `n` variables.
pub fn elementary_symmetric<F: Field>(field: F, n: usize) -> Vec<Polynomial<F>> {
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut terms = Vec::new();
        subsets(n, k, &mut |set| {
            let exps = (0..n).map(|i| u16::from(set.contains(&i)));
            let m = Monomial::from_exponents(exps).expect("small exponents");
            terms.push((m, field.one()));
        });
        out.push(Polynomial::from_terms(field.clone(), n, terms));
    }
    out
}

fn subsets(n: usize, k: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), visit);
}

/// Image vector (one-based) of the `n`-cycle `(1 2 ... n)`.
pub fn cycle_images(n: usize) -> Vec<usize> {
    (1..=n).map(|i| i % n + 1).collect()
}

/// One-based image vector of a product of disjoint cycles on `n` points,
/// e.g. `&[&[1, 6], &[2, 5], &[3, 4]]`.
pub fn cycles_to_images(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut images: Vec<usize> = (1..=n).collect();
    for cycle in cycles {
        for (k, &a) in cycle.iter().enumerate() {
            images[a - 1] = cycle[(k + 1) % cycle.len()];
        }
    }
    images
}
