use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision signed integer with an inline fast path.
///
/// Values that fit in an `i64` are stored inline; anything larger spills to a
/// heap-allocated [`BigInt`]. The representation is canonical: the big variant
/// never holds a value that would fit inline, so derived equality is sound.
#[derive(Clone, PartialEq, Eq)]
pub struct Int(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub fn zero() -> Int {
        Int(Repr::Small(0))
    }

    pub fn one() -> Int {
        Int(Repr::Small(1))
    }

    pub fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int(Repr::Small(s)),
            Err(_) => Int(Repr::Big(Box::new(BigInt::from(v)))),
        }
    }

    pub fn from_bigint(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int(Repr::Small(s)),
            None => Int(Repr::Big(Box::new(v))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v == 0,
            Repr::Big(_) => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(*b) {
                Some(s) => Int(Repr::Small(s)),
                None => Int::from_i128(*a as i128 + *b as i128),
            },
            _ => Int::from_bigint(self.to_bigint() + other.to_bigint()),
        }
    }

    pub fn sub(&self, other: &Int) -> Int {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_sub(*b) {
                Some(s) => Int(Repr::Small(s)),
                None => Int::from_i128(*a as i128 - *b as i128),
            },
            _ => Int::from_bigint(self.to_bigint() - other.to_bigint()),
        }
    }

    pub fn mul(&self, other: &Int) -> Int {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => Int::from_i128(*a as i128 * *b as i128),
            _ => Int::from_bigint(self.to_bigint() * other.to_bigint()),
        }
    }

    pub fn neg(&self) -> Int {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(s) => Int(Repr::Small(s)),
                None => Int::from_i128(-(*v as i128)),
            },
            Repr::Big(b) => Int::from_bigint(-(**b).clone()),
        }
    }

    /// Division that must be exact; panics on a nonzero remainder.
    ///
    /// The elimination and polynomial routines only ever divide by known
    /// factors, so a remainder here is an internal logic error.
    pub fn exact_div(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "exact_div by zero");
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let (a, b) = (*a as i128, *b as i128);
                assert!(a % b == 0, "exact_div with nonzero remainder");
                Int::from_i128(a / b)
            }
            _ => {
                let (a, b) = (self.to_bigint(), other.to_bigint());
                assert!((&a % &b).is_zero(), "exact_div with nonzero remainder");
                Int::from_bigint(a / b)
            }
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int(Repr::Small(v))
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Int {
        Int(Repr::Small(v as i64))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
