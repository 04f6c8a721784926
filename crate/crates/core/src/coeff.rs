//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Polynomials are generic over [`Field`]. A field value carries whatever
//! context its arithmetic needs (the modulus for `F_p`), and elements are
//! plain values manipulated through it. Rational arithmetic is arbitrary
//! precision; nothing here ever touches floating point.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible prime characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("modular case: characteristic {p} divides the group order {order}")]
    ModularCase { p: u32, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Runtime description of a coefficient field: characteristic 0 means `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    /// Validates the characteristic: it must be 0 or a prime below 2^31.
    pub fn new(characteristic: u64) -> Result<Self, CoeffError> {
        if characteristic == 0 {
            return Ok(Self::RATIONALS);
        }
        if characteristic >= MAX_CHARACTERISTIC {
            return Err(CoeffError::CharacteristicTooLarge(characteristic));
        }
        if !is_prime(characteristic) {
            return Err(CoeffError::NotPrime(characteristic));
        }
        Ok(FieldSpec {
            characteristic: characteristic as u32,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rationals(&self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "QQ")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

/// Trial division; characteristics are below 2^31 so this is at most ~46k steps.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Succeeds iff the characteristic is 0 or does not divide `group_order`.
pub fn check_nonmodular(field: FieldSpec, group_order: u64) -> Result<(), CoeffError> {
    assert!(group_order >= 1, "group order must be positive");
    let p = field.characteristic();
    if p != 0 && group_order.is_multiple_of(u64::from(p)) {
        return Err(CoeffError::ModularCase { p, order: group_order });
    }
    Ok(())
}

/// An exact field. Implementations are cheap to clone and carry their own
/// arithmetic context.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, CoeffError>;
    // the field value carries the modulus, so conversions take `&self`
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Maps `num/den` into the field; fails when `den` vanishes there.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, CoeffError>;
    /// Canonical text: `a` or `a/b` over `Q`, least non-negative residue over `F_p`.
    fn format(&self, a: &Self::Elem) -> String;
    fn is_negative(&self, a: &Self::Elem) -> bool;

    /// `acc -= a * b`, the inner step of every reduction.
    fn sub_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.sub(acc, &prod);
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, CoeffError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// An exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i128` (numerator never
/// `i128::MIN`) are stored inline and computed with checked machine
/// arithmetic; everything else, including any operation that would overflow,
/// goes through [`BigRational`]. The representation is canonical, so derived
/// equality and hashing agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i128, i128),
    Big(Box<BigRational>),
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if a <= u128::from(u64::MAX) && b <= u128::from(u64::MAX) {
        u128::from((a as u64).gcd(&(b as u64)))
    } else {
        a.gcd(&b)
    }
}

/// `gcd(|a|, b)` for `b > 0`.
fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd_u128(a.unsigned_abs(), b as u128) as i128
}

impl Rat {
    pub fn zero() -> Self {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rat(Repr::Small(1, 1))
    }

    pub fn new(num: i64, den: i64) -> Result<Self, CoeffError> {
        if den == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        let (num, den) = (i128::from(num), i128::from(den));
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_i128(num, den);
        Ok(Rat(Repr::Small(num / g, den / g)))
    }

    pub fn from_big(v: BigRational) -> Self {
        match (v.numer().to_i128(), v.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Rat(Repr::Small(n, d)),
            _ => Rat(Repr::Big(Box::new(v))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(v) => (**v).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(v) => v.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(v) => v.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(v) => v.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(v) => v.is_negative(),
        }
    }

    /// Bit length of the larger of numerator and denominator.
    pub fn bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(n, d) => u64::from(128 - n.unsigned_abs().max(d.unsigned_abs()).leading_zeros()),
            Repr::Big(v) => v.numer().bits().max(v.denom().bits()),
        }
    }

    fn small_add(an: i128, ad: i128, bn: i128, bd: i128) -> Option<Rat> {
        if ad == bd {
            let num = an.checked_add(bn)?;
            if ad == 1 {
                return (num != i128::MIN).then_some(Rat(Repr::Small(num, 1)));
            }
            let g = gcd_i128(num, ad);
            return Some(Rat(Repr::Small(num / g, ad / g)));
        }
        let g = gcd_i128(ad, bd);
        let (ad_g, bd_g) = (ad / g, bd / g);
        let num = an.checked_mul(bd_g)?.checked_add(bn.checked_mul(ad_g)?)?;
        let g2 = gcd_i128(num, g);
        let den = ad_g.checked_mul(bd / g2)?;
        let num = num / g2;
        (num != i128::MIN).then_some(Rat(Repr::Small(num, den)))
    }

    fn small_mul(an: i128, ad: i128, bn: i128, bd: i128) -> Option<Rat> {
        if ad == 1 && bd == 1 {
            let num = an.checked_mul(bn)?;
            return (num != i128::MIN).then_some(Rat(Repr::Small(num, 1)));
        }
        let g1 = gcd_i128(an, bd).max(1);
        let g2 = gcd_i128(bn, ad).max(1);
        let num = (an / g1).checked_mul(bn / g2)?;
        let den = (ad / g2).checked_mul(bd / g1)?;
        (num != i128::MIN).then_some(Rat(Repr::Small(num, den)))
    }

    fn add(&self, other: &Rat) -> Rat {
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &other.0) {
            if let Some(r) = Self::small_add(*an, *ad, *bn, *bd) {
                return r;
            }
        }
        Rat::from_big(self.to_big() + other.to_big())
    }

    fn neg(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => Rat(Repr::Small(-n, *d)),
            Repr::Big(v) => Rat::from_big(-&**v),
        }
    }

    fn mul(&self, other: &Rat) -> Rat {
        if let (Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &other.0) {
            if let Some(r) = Self::small_mul(*an, *ad, *bn, *bd) {
                return r;
            }
        }
        Rat::from_big(self.to_big() * other.to_big())
    }

    fn recip(&self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) if *n < 0 => Rat(Repr::Small(-d, -n)),
            Repr::Small(n, d) => Rat(Repr::Small(*d, *n)),
            Repr::Big(v) => Rat::from_big(v.recip()),
        }
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat(Repr::Small(i128::from(v), 1))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Repr::Big(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The field of rational numbers, exact and arbitrary precision.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rat;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Rat) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(b)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a.add(&b.neg())
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a.mul(b)
    }
    fn neg(&self, a: &Rat) -> Rat {
        a.neg()
    }
    fn inv(&self, a: &Rat) -> Result<Rat, CoeffError> {
        if a.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(a.recip())
    }
    fn from_i64(&self, v: i64) -> Rat {
        Rat::from(v)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Rat, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Rat::from_big(BigRational::new(num.clone(), den.clone())))
    }
    fn format(&self, a: &Rat) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &Rat) -> bool {
        a.is_negative()
    }
    fn sub_mul_assign(&self, acc: &mut Rat, a: &Rat, b: &Rat) {
        if let (Repr::Small(n, 1), Repr::Small(an, 1), Repr::Small(bn, 1)) = (&mut acc.0, &a.0, &b.0) {
            if let Some(v) = an
                .checked_mul(*bn)
                .and_then(|p| n.checked_sub(p))
                .filter(|&v| v != i128::MIN)
            {
                *n = v;
                return;
            }
        }
        *acc = acc.add(&a.mul(b).neg());
    }
}

/// The prime field `F_p` with `p < 2^31`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, CoeffError> {
        let spec = FieldSpec::new(p)?;
        if spec.is_rationals() {
            return Err(CoeffError::NotPrime(0));
        }
        Ok(PrimeField {
            p: spec.characteristic(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u32().expect("residue fits in u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Result<u32, CoeffError> {
        if *a == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32, CoeffError> {
        let d = self.reduce_big(den);
        let n = self.reduce_big(num);
        self.div(&n, &d)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn is_negative(&self, _a: &u32) -> bool {
        false
    }
    fn sub_mul_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        let prod = self.mul(a, b);
        *acc = self.sub(acc, &prod);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn nonmodular_check() {
        assert!(check_nonmodular(FieldSpec::RATIONALS, 6).is_ok());
        assert_eq!(
            check_nonmodular(FieldSpec::new(2).unwrap(), 6),
            Err(CoeffError::ModularCase { p: 2, order: 6 })
        );
        assert!(check_nonmodular(FieldSpec::new(7).unwrap(), 6).is_ok());
    }

    #[test]
    fn inverses() {
        assert_eq!(Rationals.inv(&q(2, 3)).unwrap(), q(3, 2));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.inv(&3).unwrap(), 5);
        assert_eq!(f7.inv(&1).unwrap(), 1);
        assert_eq!(Rationals.inv(&q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(f7.inv(&0), Err(CoeffError::DivisionByZero));
        assert_eq!(Rationals.inv(&q(0, 1)), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn characteristic_validation() {
        assert_eq!(FieldSpec::new(4), Err(CoeffError::NotPrime(4)));
        assert_eq!(FieldSpec::new(1), Err(CoeffError::NotPrime(1)));
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(2_147_483_647).is_ok());
        assert!(matches!(
            FieldSpec::new(1 << 31),
            Err(CoeffError::CharacteristicTooLarge(_))
        ));
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = q(6, -4);
        assert_eq!(a.numer(), BigInt::from(-3));
        assert_eq!(a.denom(), BigInt::from(2));
        assert_eq!(Rationals.format(&a), "-3/2");
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.from_ratio(&BigInt::from(-1), &BigInt::from(3)).unwrap(), 3);
        assert!(f5.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn rationals_do_not_overflow() {
        let mut acc = Rationals.one();
        let big = q(i64::MAX, 3);
        for _ in 0..10 {
            acc = Rationals.mul(&acc, &big);
        }
        assert!(acc.bits() > 600);
        let back = (0..10).fold(acc, |a, _| Rationals.div(&a, &big).unwrap());
        assert!(back.is_one());
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u32..101, b in 0u32..101, c in 0u32..101) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }

        #[test]
        fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20,
                           cn in -50i64..50, cd in 1i64..20) {
            let (a, b, c) = (q(an, ad), q(bn, bd), q(cn, cd));
            let f = Rationals;
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if !a.is_zero() {
                prop_assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            }
            prop_assert!(a.denom().is_positive());
        }

        #[test]
        fn rat_matches_bigrational(an in any::<i64>(), ad in 1i64..=i64::MAX, bn in any::<i64>(), bd in 1i64..=i64::MAX,
                                   small in -1000i64..1000) {
            let big = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
            let (a, b) = (q(an, ad), q(bn, bd));
            let c = Rat::from(small);
            let f = Rationals;
            prop_assert_eq!(f.add(&a, &b).to_big(), big(an, ad) + big(bn, bd));
            prop_assert_eq!(f.sub(&a, &c).to_big(), big(an, ad) - big(small, 1));
            prop_assert_eq!(f.mul(&a, &b).to_big(), big(an, ad) * big(bn, bd));
            let mut acc = c.clone();
            f.sub_mul_assign(&mut acc, &a, &b);
            prop_assert_eq!(acc.to_big(), big(small, 1) - big(an, ad) * big(bn, bd));
            // products past i128 take the big path and come back canonical
            let mut p = a.clone();
            for _ in 0..4 {
                p = f.mul(&p, &b);
            }
            prop_assert_eq!(p.to_big(), big(an, ad) * big(bn, bd).pow(4));
            let back = (0..4).fold(p, |acc, _| f.div(&acc, &b).unwrap_or_else(|_| f.zero()));
            if !b.is_zero() {
                prop_assert_eq!(&back, &a);
            }
            // canonical form: a round trip through BigRational is the identity
            let s = f.add(&a, &b);
            prop_assert_eq!(Rat::from_big(s.to_big()), s);
            if !a.is_zero() {
                prop_assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            }
        }

        #[test]
        fn big_prime_inverse(a in 1u32..2_147_483_647) {
            let f = PrimeField::new(2_147_483_647).unwrap();
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }
}
