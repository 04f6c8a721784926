//! Generators of invariant rings of finite groups, computed with truncated
//! Gröbner bases instead of linear algebra in the subalgebra.

pub mod action;
pub mod coeff;
pub mod families;
pub mod groebner;
pub mod invar;
pub mod poly;

pub use action::{act, orbit_sum, reynolds, ActionError, GroupElement, GroupSpec, Matrix, Permutation};
pub use coeff::{CoeffError, Field, FieldSpec, PrimeField, Rat, Rationals};
pub use groebner::{GroebnerError, TruncatedGB};
pub use invar::{
    invariant_algebra, irreducible_secondary, verify_generating_set, CandidateOrder, GeneratingSet, InvarError, Mode,
    Options, VerificationReport, VerifyOptions,
};
pub use poly::{Monomial, PolyError, Polynomial};
