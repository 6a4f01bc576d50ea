//! Ring abstraction used by every matrix and polynomial routine.
//!
//! Rings are values (contexts) and elements are plain data: a runtime field
//! such as GF(7^16) or a polynomial ring with named variables lives in the
//! ring value, so elements stay small and `Copy`-friendly where possible.

use std::fmt::Debug;

/// A commutative ring with identity.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the canonical map from the integers.
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Characteristic of the ring; 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Multiplicative inverse when `a` is a unit and the ring can find it.
    fn try_inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    /// True when every nonzero element is invertible.
    fn is_field(&self) -> bool {
        false
    }

    /// True when `a` annihilates some nonzero element. The default is right
    /// for integral domains.
    fn is_zero_divisor(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Short human-readable ring tag, used in serialized reports.
    fn tag(&self) -> String;
}

/// A ring in which every nonzero element has an inverse.
pub trait Field: Ring {
    /// Number of elements.
    fn size(&self) -> u128;

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The integers with overflow-checked machine arithmetic.
///
/// Arithmetic panics on `i64` overflow: every use in this crate has tiny
/// coefficients, so an overflow is a bug rather than a recoverable state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn from_i64(&self, n: i64) -> i64 {
        n
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow in addition")
    }
    fn neg(&self, a: &i64) -> i64 {
        a.checked_neg().expect("integer overflow in negation")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow in multiplication")
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn try_inv(&self, a: &i64) -> Option<i64> {
        match a {
            1 | -1 => Some(*a),
            _ => None,
        }
    }
    fn tag(&self) -> String {
        "Z".into()
    }
}
