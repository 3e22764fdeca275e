//! Exact arithmetic in the lattice-ordered groups ℤ^d.
//!
//! Group operation is written additively: the identity `e` is the zero
//! vector, inverses are negations, and the lattice operations are the
//! componentwise minimum and maximum.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::KiteError;

/// Arbitrary-precision integer with an inline fast path for values that fit
/// in an `i64`.
///
/// Values are kept normalized: the `Big` variant never holds a value that
/// fits in `i64`, so derived equality and hashing agree with numeric
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.sign() == num_bigint::Sign::Minus,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Int::Small(v) => *v > 0,
            Int::Big(b) => b.sign() == num_bigint::Sign::Plus,
        }
    }

    /// The value as an `i64`, if it fits.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `true` when `m` divides the value. `m` must be non-zero.
    pub fn divisible_by(&self, m: &Int) -> bool {
        match (self, m) {
            (Int::Small(a), Int::Small(b)) => a.checked_rem(*b).is_none_or(|r| r == 0),
            _ => (self.to_big() % m.to_big()).is_zero(),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        let (mut a, mut b) = (self.abs().to_big(), other.abs().to_big());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        Int::from_big(a)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        if let Int::Small(a) = self {
            if let Some(n) = a.checked_neg() {
                return Int::Small(n);
            }
        }
        Int::from_big(-self.to_big())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which cone of the ℓ-group a vector is tested against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeSide {
    /// Every coordinate ≤ 0 (the cone G⁻).
    Negative,
    /// Every coordinate ≥ 0 (the cone G⁺).
    Positive,
}

/// An element of ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupVector {
    coords: SmallVec<[Int; 2]>,
}

impl GroupVector {
    /// The identity `e` of ℤ^d.
    pub fn identity(dim: usize) -> Self {
        GroupVector {
            coords: core::iter::repeat_n(Int::ZERO, dim).collect(),
        }
    }

    pub fn new(coords: impl IntoIterator<Item = Int>) -> Self {
        GroupVector {
            coords: coords.into_iter().collect(),
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Int::Small(c)))
    }

    /// A one-dimensional vector of ℤ.
    pub fn scalar(v: i64) -> Self {
        Self::from_i64s(&[v])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Int::is_zero)
    }

    fn check_dim(&self, other: &Self) -> Result<(), KiteError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(KiteError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Int, &Int) -> Int) -> Result<Self, KiteError> {
        self.check_dim(other)?;
        Ok(GroupVector {
            coords: self
                .coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, KiteError> {
        self.zip_with(other, |a, b| a + b)
    }

    /// `self - other`, i.e. `self + (-other)`.
    pub fn sub(&self, other: &Self) -> Result<Self, KiteError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn meet(&self, other: &Self) -> Result<Self, KiteError> {
        self.zip_with(other, |a, b| core::cmp::min(a, b).clone())
    }

    pub fn join(&self, other: &Self) -> Result<Self, KiteError> {
        self.zip_with(other, |a, b| core::cmp::max(a, b).clone())
    }

    pub fn neg(&self) -> Self {
        GroupVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Componentwise order `self ≤ other`.
    pub fn leq(&self, other: &Self) -> Result<bool, KiteError> {
        self.check_dim(other)?;
        Ok(self.coords.iter().zip(other.coords.iter()).all(|(a, b)| a <= b))
    }

    pub fn in_cone(&self, side: ConeSide) -> bool {
        match side {
            ConeSide::Negative => self.coords.iter().all(|c| !c.is_positive()),
            ConeSide::Positive => self.coords.iter().all(|c| !c.is_negative()),
        }
    }

    /// `max(self, e)` componentwise.
    pub fn join_identity(&self) -> Self {
        GroupVector {
            coords: self
                .coords
                .iter()
                .map(|c| if c.is_negative() { Int::ZERO } else { c.clone() })
                .collect(),
        }
    }

    /// `min(self, e)` componentwise.
    pub fn meet_identity(&self) -> Self {
        GroupVector {
            coords: self
                .coords
                .iter()
                .map(|c| if c.is_positive() { Int::ZERO } else { c.clone() })
                .collect(),
        }
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> Int {
        self.coords.iter().map(Int::abs).max().unwrap_or(Int::ZERO)
    }
}

impl fmt::Display for GroupVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GroupVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gv(c: &[i64]) -> GroupVector {
        GroupVector::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(gv(&[-1, -2]).add(&gv(&[-3, 0])).unwrap(), gv(&[-4, -2]));
        assert_eq!(gv(&[2]).add(&gv(&[-5])).unwrap(), gv(&[-3]));
        let a = gv(&[7, -3]);
        assert_eq!(a.add(&GroupVector::identity(2)).unwrap(), a);
    }

    #[test]
    fn lattice_and_cone_examples() {
        assert_eq!(gv(&[-1, 3]).meet(&gv(&[0, -2])).unwrap(), gv(&[-1, -2]));
        assert_eq!(gv(&[-1, 3]).join(&gv(&[0, -2])).unwrap(), gv(&[0, 3]));
        assert!(gv(&[-1, 0]).in_cone(ConeSide::Negative));
        assert!(!gv(&[-1, 1]).in_cone(ConeSide::Negative));
        assert!(gv(&[0, 1]).in_cone(ConeSide::Positive));
        assert_eq!(gv(&[-4]).neg(), gv(&[4]));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = gv(&[1]).add(&gv(&[1, 2])).unwrap_err();
        assert_eq!(err, KiteError::DimensionMismatch { left: 1, right: 2 });
        assert!(gv(&[1]).meet(&gv(&[])).is_err());
    }

    #[test]
    fn small_overflow_promotes_to_big() {
        let max = Int::Small(i64::MAX);
        let one = Int::Small(1);
        let sum = &max + &one;
        assert!(matches!(sum, Int::Big(_)));
        assert_eq!(&sum - &one, max);
        assert!(matches!(&sum - &one, Int::Small(_)));
        assert!(matches!(-&Int::Small(i64::MIN), Int::Big(_)));
        assert!(Int::Small(-5) < sum);
        assert!(sum.is_positive());
    }

    #[test]
    fn gcd_and_divisibility() {
        assert_eq!(Int::from(-4).gcd(&Int::from(6)), Int::from(2));
        assert_eq!(Int::from(0).gcd(&Int::from(-3)), Int::from(3));
        assert!(Int::from(-4).divisible_by(&Int::from(2)));
        assert!(!Int::from(-3).divisible_by(&Int::from(2)));
    }

    fn vec2() -> impl Strategy<Value = GroupVector> {
        (-6i64..=6, -6i64..=6).prop_map(|(a, b)| gv(&[a, b]))
    }

    proptest! {
        #[test]
        fn group_laws(a in vec2(), b in vec2(), c in vec2()) {
            let e = GroupVector::identity(2);
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.add(&e).unwrap(), a.clone());
            prop_assert_eq!(a.add(&a.neg()).unwrap(), e);
        }

        #[test]
        fn translation_distributes_over_meet_and_join(a in vec2(), b in vec2(), c in vec2(), d in vec2()) {
            let lhs = a.add(&b.meet(&c).unwrap()).unwrap().add(&d).unwrap();
            let rhs = a.add(&b).unwrap().add(&d).unwrap()
                .meet(&a.add(&c).unwrap().add(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = a.add(&b.join(&c).unwrap()).unwrap().add(&d).unwrap();
            let rhs = a.add(&b).unwrap().add(&d).unwrap()
                .join(&a.add(&c).unwrap().add(&d).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn negative_cone_is_meet_with_identity(a in vec2()) {
            let e = GroupVector::identity(2);
            prop_assert_eq!(a.in_cone(ConeSide::Negative), a.meet(&e).unwrap() == a);
            prop_assert_eq!(a.in_cone(ConeSide::Positive), a.join(&e).unwrap() == a);
        }
    }
}
