//! Finite groups acting linearly on polynomial rings.
//!
//! Convention: an element `g` acts by the algebra homomorphism that
//! substitutes `x_i -> sum_j g[i][j] * x_j`, i.e. row `i` of the matrix
//! applied to the variable vector. A permutation `σ` acts as the matrix with
//! `g[i][σ(i)] = 1`, so `x_i -> x_{σ(i)}`. Composing two substitutions
//! reverses the order of the matrix product, but the set of polynomials fixed
//! by every generator does not depend on that choice, so invariants are the
//! same under either convention.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{check_nonmodular, CoeffError, Field};
use crate::poly::{Monomial, PolyError, Polynomial};

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_GROUP_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("image vector is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("group has more than {0} elements")]
    CapExceeded(usize),
    #[error("orbit sums need a permutation group")]
    NotPermutationGroup,
    #[error("permutation and matrix generators cannot be mixed")]
    MixedGenerators,
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A bijection of the variable indices, stored as zero-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// From one-based images: `images[k-1]` is the image of `k`.
    pub fn from_images(images: &[usize]) -> Result<Self, ActionError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(ActionError::NotAPermutation(n));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Zero-based images.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// One-based images, as written in group files.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    /// `self` followed by `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        m.permute(&self.images)
    }
}

/// A square matrix over `F`, row-major.
#[derive(Debug, Clone)]
pub struct Matrix<F: Field> {
    n: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn identity(field: &F, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Matrix { n, entries }
    }

    /// Square and invertible over `field`, or an error.
    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self, ActionError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(ActionError::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let m = Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        if !m.is_invertible(field) {
            return Err(ActionError::SingularMatrix);
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, field: &F, other: &Matrix<F>) -> Matrix<F> {
        let n = self.n;
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let prod = field.mul(a, other.get(k, j));
                    entries[i * n + j] = field.add(&entries[i * n + j], &prod);
                }
            }
        }
        Matrix { n, entries }
    }

    fn is_invertible(&self, field: &F) -> bool {
        let n = self.n;
        let mut a = self.entries.clone();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !field.is_zero(&a[r * n + col])) else {
                return false;
            };
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            let inv = field.inv(&a[col * n + col]).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = field.mul(&a[r * n + col], &inv);
                if field.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let sub = field.mul(&factor, &a[col * n + j]);
                    a[r * n + j] = field.sub(&a[r * n + j], &sub);
                }
            }
        }
        true
    }

    /// The linear form `sum_j self[i][j] x_j` substituted for `x_i`.
    fn row_form(&self, field: &F, i: usize) -> Polynomial<F> {
        let terms = (0..self.n)
            .map(|j| (Monomial::var(self.n, j), self.get(i, j).clone()))
            .collect::<Vec<_>>();
        Polynomial::from_terms(field.clone(), self.n, terms)
    }
}

#[derive(Debug, Clone)]
pub enum GroupElement<F: Field> {
    Perm(Permutation),
    Matrix(Matrix<F>),
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl<F: Field> PartialEq for GroupElement<F> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a == b,
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => a == b,
            _ => false,
        }
    }
}

impl<F: Field> Eq for GroupElement<F> {}

impl<F: Field> Hash for GroupElement<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            GroupElement::Perm(p) => p.hash(state),
            GroupElement::Matrix(m) => m.hash(state),
        }
    }
}

impl<F: Field> GroupElement<F> {
    pub fn nvars(&self) -> usize {
        match self {
            GroupElement::Perm(p) => p.len(),
            GroupElement::Matrix(m) => m.size(),
        }
    }

    fn compose(&self, field: &F, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.then(b)),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => GroupElement::Matrix(a.mul(field, b)),
            _ => unreachable!("generators are homogeneous in kind"),
        }
    }
}

/// `g.p`: the substitution homomorphism applied to `p`.
pub fn act<F: Field>(g: &GroupElement<F>, p: &Polynomial<F>) -> Result<Polynomial<F>, ActionError> {
    if g.nvars() != p.nvars() {
        return Err(ActionError::DimensionMismatch {
            expected: g.nvars(),
            found: p.nvars(),
        });
    }
    let field = p.field().clone();
    match g {
        GroupElement::Perm(s) => {
            let mut terms: Vec<_> = p
                .terms()
                .iter()
                .map(|(m, c)| (s.apply_monomial(m), c.clone()))
                .collect();
            terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            Ok(Polynomial::from_sorted_terms(field, p.nvars(), terms))
        }
        GroupElement::Matrix(mat) => {
            let n = p.nvars();
            let forms: Vec<_> = (0..n).map(|i| mat.row_form(&field, i)).collect();
            let mut powers: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
            let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
            for (m, c) in p.terms() {
                let mut img = Polynomial::constant(field.clone(), n, c.clone());
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let pw = powers.entry((i, e)).or_insert_with(|| forms[i].pow(u32::from(e)));
                    img = img.checked_mul(pw)?;
                }
                for (t, a) in img.into_terms() {
                    acc.entry(t).and_modify(|v| *v = field.add(v, &a)).or_insert(a);
                }
            }
            Ok(Polynomial::from_terms(field, n, acc))
        }
    }
}

/// A finite group given by generators, with its order once known.
#[derive(Debug, Clone)]
pub struct GroupSpec<F: Field> {
    field: F,
    nvars: usize,
    generators: Vec<GroupElement<F>>,
    elements: Option<Arc<Vec<GroupElement<F>>>>,
}

impl<F: Field> GroupSpec<F> {
    /// Validates the generators, enumerates the group up to `cap` elements and
    /// checks non-modularity. Over `Q` a group larger than `cap` is accepted
    /// with unknown order (only orbit sums can then be used); over `F_p` the
    /// order is needed for the non-modularity check and the cap is an error.
    pub fn new(field: F, nvars: usize, generators: Vec<GroupElement<F>>, cap: usize) -> Result<Self, ActionError> {
        if generators.is_empty() {
            return Err(ActionError::NoGenerators);
        }
        let is_perm = matches!(generators[0], GroupElement::Perm(_));
        for g in &generators {
            if matches!(g, GroupElement::Perm(_)) != is_perm {
                return Err(ActionError::MixedGenerators);
            }
            if g.nvars() != nvars {
                return Err(ActionError::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
        }
        let mut spec = GroupSpec {
            field,
            nvars,
            generators,
            elements: None,
        };
        match enumerate_group(&spec, cap) {
            Ok(els) => {
                check_nonmodular(spec.field.spec(), els.len() as u64)?;
                spec.elements = Some(Arc::new(els));
            }
            Err(ActionError::CapExceeded(c)) if spec.field.spec().is_rationals() => {
                let _ = c;
            }
            Err(e) => return Err(e),
        }
        Ok(spec)
    }

    pub fn permutations(field: F, perms: Vec<Permutation>) -> Result<Self, ActionError> {
        let n = perms.first().map_or(0, Permutation::len);
        Self::new(
            field,
            n,
            perms.into_iter().map(GroupElement::Perm).collect(),
            DEFAULT_GROUP_CAP,
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[GroupElement<F>] {
        &self.generators
    }

    pub fn is_permutation_group(&self) -> bool {
        matches!(self.generators[0], GroupElement::Perm(_))
    }

    /// `|G|`, when the group was enumerable under the cap.
    pub fn order(&self) -> Option<u64> {
        self.elements.as_ref().map(|e| e.len() as u64)
    }

    /// All group elements, when enumerable under the cap.
    pub fn elements(&self) -> Option<&[GroupElement<F>]> {
        self.elements.as_deref().map(Vec::as_slice)
    }

    fn perm_generators(&self) -> Result<Vec<&Permutation>, ActionError> {
        self.generators
            .iter()
            .map(|g| match g {
                GroupElement::Perm(p) => Ok(p),
                GroupElement::Matrix(_) => Err(ActionError::NotPermutationGroup),
            })
            .collect()
    }

    /// True iff every generator fixes `p`.
    pub fn is_invariant(&self, p: &Polynomial<F>) -> Result<bool, ActionError> {
        for g in &self.generators {
            if act(g, p)? != *p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The orbit `G.m` of a monomial under a permutation group, by closure
    /// under the generators.
    pub fn monomial_orbit(&self, m: &Monomial) -> Result<Vec<Monomial>, ActionError> {
        let gens = self.perm_generators()?;
        if m.nvars() != self.nvars {
            return Err(ActionError::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        let mut seen: HashSet<Monomial> = HashSet::new();
        seen.insert(m.clone());
        let mut orbit = vec![m.clone()];
        let mut next = 0;
        while next < orbit.len() {
            let cur = orbit[next].clone();
            next += 1;
            for g in &gens {
                let img = g.apply_monomial(&cur);
                if seen.insert(img.clone()) {
                    orbit.push(img);
                }
            }
        }
        Ok(orbit)
    }
}

/// Closure of the generators under composition, identity included.
pub fn enumerate_group<F: Field>(spec: &GroupSpec<F>, cap: usize) -> Result<Vec<GroupElement<F>>, ActionError> {
    let identity = if spec.is_permutation_group() {
        GroupElement::Perm(Permutation::identity(spec.nvars))
    } else {
        GroupElement::Matrix(Matrix::identity(&spec.field, spec.nvars))
    };
    let mut seen: HashSet<GroupElement<F>> = HashSet::new();
    seen.insert(identity.clone());
    let mut out = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(e) = queue.pop_front() {
        for g in &spec.generators {
            let h = e.compose(&spec.field, g);
            if !seen.contains(&h) {
                if out.len() >= cap {
                    return Err(ActionError::CapExceeded(cap));
                }
                seen.insert(h.clone());
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// `Rey(p) = 1/|G| sum_g g.p` over an explicit element list.
pub fn reynolds<F: Field>(p: &Polynomial<F>, elements: &[GroupElement<F>]) -> Result<Polynomial<F>, ActionError> {
    let field = p.field().clone();
    let n = p.nvars();
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
    let all_perms = elements.iter().all(|g| matches!(g, GroupElement::Perm(_)));
    for g in elements {
        let img = if all_perms {
            let GroupElement::Perm(s) = g else { unreachable!() };
            if s.len() != n {
                return Err(ActionError::DimensionMismatch {
                    expected: s.len(),
                    found: n,
                });
            }
            p.terms()
                .iter()
                .map(|(m, c)| (s.apply_monomial(m), c.clone()))
                .collect::<Vec<_>>()
        } else {
            act(g, p)?.into_terms()
        };
        for (m, c) in img {
            acc.entry(m).and_modify(|v| *v = field.add(v, &c)).or_insert(c);
        }
    }
    let order = field.from_i64(elements.len() as i64);
    let scale = field.inv(&order)?;
    let sum = Polynomial::from_terms(field, n, acc);
    Ok(sum.scale(&scale))
}

/// `m° = sum of the distinct monomials in G.m`.
pub fn orbit_sum<F: Field>(m: &Monomial, spec: &GroupSpec<F>) -> Result<Polynomial<F>, ActionError> {
    let orbit = spec.monomial_orbit(m)?;
    let one = spec.field.one();
    let mut terms: Vec<_> = orbit.into_iter().map(|t| (t, one.clone())).collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    Ok(Polynomial::from_sorted_terms(spec.field.clone(), spec.nvars, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals};
    use crate::families::cycle_images;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    fn q(text: &str, n: usize) -> Polynomial<Rationals> {
        Polynomial::parse(text, Rationals, n).unwrap()
    }

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied()).unwrap()
    }

    fn group(perms: &[&[usize]]) -> GroupSpec<Rationals> {
        GroupSpec::permutations(Rationals, perms.iter().map(|p| perm(p)).collect()).unwrap()
    }

    #[test]
    fn act_examples() {
        let c3 = GroupElement::Perm(perm(&[2, 3, 1]));
        assert_eq!(act(&c3, &q("x1", 3)).unwrap(), q("x2", 3));
        let id = GroupElement::Matrix(Matrix::identity(&Rationals, 2));
        let p = q("x1^2 - 3*x1*x2 + 1/2*x2", 2);
        assert_eq!(act(&id, &p).unwrap(), p);
        let one = Rationals.one();
        let zero = Rationals.zero();
        let swap = Matrix::from_rows(&Rationals, vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap();
        assert_eq!(
            act(&GroupElement::Matrix(swap), &q("x1^2 + 2*x1*x2", 2)).unwrap(),
            q("x2^2 + 2*x1*x2", 2)
        );
        assert!(act(&c3, &q("x1", 2)).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert_eq!(
            Permutation::from_images(&[1, 1, 2]),
            Err(ActionError::NotAPermutation(3))
        );
        assert_eq!(
            Permutation::from_images(&[1, 4, 2]),
            Err(ActionError::NotAPermutation(3))
        );
        let singular = Matrix::from_rows(&Rationals, vec![vec![Rationals.one(), Rationals.one()]; 2]);
        assert_eq!(singular, Err(ActionError::SingularMatrix));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(group(&[&[2, 3, 1]]).order(), Some(3));
        assert_eq!(group(&[&[2, 1, 3], &[2, 3, 1]]).order(), Some(6));
        let s3 = group(&[&[2, 1, 3], &[2, 3, 1]]);
        assert_eq!(enumerate_group(&s3, 2), Err(ActionError::CapExceeded(2)));
        assert_eq!(group(&[&cycle_images(7)]).order(), Some(7));
    }

    #[test]
    fn modular_groups_rejected() {
        let f2 = PrimeField::new(2).unwrap();
        let err = GroupSpec::permutations(f2, vec![perm(&[2, 1, 3])]).unwrap_err();
        assert_eq!(err, ActionError::Coeff(CoeffError::ModularCase { p: 2, order: 2 }));
        let f5 = PrimeField::new(5).unwrap();
        assert!(GroupSpec::permutations(f5, vec![perm(&cycle_images(6))]).is_ok());
    }

    #[test]
    fn reynolds_examples() {
        let c2 = group(&[&[2, 1]]);
        let els = c2.elements().unwrap();
        assert_eq!(reynolds(&q("x1", 2), els).unwrap(), q("1/2*x1 + 1/2*x2", 2));
        let inv = q("x1^2 + x2^2 - 7*x1*x2", 2);
        assert_eq!(reynolds(&inv, els).unwrap(), inv);
        let s3 = group(&[&[2, 1, 3], &[2, 3, 1]]);
        assert_eq!(
            reynolds(&q("x1^2*x2", 3), s3.elements().unwrap()).unwrap(),
            q("1/6*(x1^2*x2 + x1^2*x3 + x2^2*x1 + x2^2*x3 + x3^2*x1 + x3^2*x2)", 3)
        );
    }

    #[test]
    fn orbit_sum_examples() {
        let c3 = group(&[&[2, 3, 1]]);
        assert_eq!(orbit_sum(&mono(&[1, 0, 0]), &c3).unwrap(), q("x1 + x2 + x3", 3));
        let s3 = group(&[&[2, 1, 3], &[2, 3, 1]]);
        assert_eq!(orbit_sum(&mono(&[1, 1, 1]), &s3).unwrap(), q("x1*x2*x3", 3));
        assert_eq!(
            orbit_sum(&mono(&[2, 1, 0]), &c3).unwrap(),
            q("x1^2*x2 + x2^2*x3 + x3^2*x1", 3)
        );
        let swap = Matrix::from_rows(
            &Rationals,
            vec![
                vec![Rationals.zero(), Rationals.one()],
                vec![Rationals.one(), Rationals.zero()],
            ],
        )
        .unwrap();
        let mg = GroupSpec::new(Rationals, 2, vec![GroupElement::Matrix(swap)], 16).unwrap();
        assert_eq!(orbit_sum(&mono(&[1, 0]), &mg), Err(ActionError::NotPermutationGroup));
        assert_eq!(mg.order(), Some(2));
    }

    #[test]
    fn matrix_group_reynolds_can_vanish() {
        // x -> -x: odd-degree monomials average to zero
        let neg = Matrix::from_rows(&Rationals, vec![vec![Rationals.from_i64(-1)]]).unwrap();
        let g = GroupSpec::new(Rationals, 1, vec![GroupElement::Matrix(neg)], 16).unwrap();
        assert_eq!(g.order(), Some(2));
        assert!(reynolds(&q("x1^3", 1), g.elements().unwrap()).unwrap().is_zero());
        assert_eq!(reynolds(&q("x1^2", 1), g.elements().unwrap()).unwrap(), q("x1^2", 1));
    }
}
