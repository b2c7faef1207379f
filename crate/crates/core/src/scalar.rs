//! Integer coefficient types for forms.
//!
//! All form arithmetic is exact and checked: an operation that would leave
//! the range of the coefficient type fails with [`Error::Overflow`] instead
//! of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// A signed machine integer usable as a form coefficient.
pub trait Coeff:
    PrimInt
    + Signed
    + Integer
    + Hash
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    fn of(v: i64) -> Self;

    fn wide(self) -> i128;

    fn narrow(v: i128) -> Result<Self>;

    #[inline]
    fn add_c(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow)
    }

    #[inline]
    fn sub_c(self, rhs: Self) -> Result<Self> {
        self.checked_sub(&rhs).ok_or(Error::Overflow)
    }

    #[inline]
    fn mul_c(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow)
    }
}

impl Coeff for i64 {
    #[inline]
    fn of(v: i64) -> Self {
        v
    }

    #[inline]
    fn wide(self) -> i128 {
        self as i128
    }

    #[inline]
    fn narrow(v: i128) -> Result<Self> {
        i64::try_from(v).map_err(|_| Error::Overflow)
    }
}

impl Coeff for i128 {
    #[inline]
    fn of(v: i64) -> Self {
        v as i128
    }

    #[inline]
    fn wide(self) -> i128 {
        self
    }

    #[inline]
    fn narrow(v: i128) -> Result<Self> {
        Ok(v)
    }
}

/// Integer square root (floor) of a non-negative value.
pub fn isqrt<T: Coeff>(n: T) -> T {
    if n <= T::zero() {
        return T::zero();
    }
    let mut x = T::narrow((n.wide() as f64).sqrt() as i128).unwrap_or(n);
    while x > T::zero() && x.checked_mul(&x).is_none_or(|sq| sq > n) {
        x = x - T::one();
    }
    loop {
        let next = x + T::one();
        match next.checked_mul(&next) {
            Some(sq) if sq <= n => x = next,
            _ => break,
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_small_and_large() {
        for n in 0i64..2000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "{n}");
        }
        let big = i64::MAX;
        let r = isqrt(big);
        assert!(r.checked_mul(r).unwrap() <= big);
        assert!((r + 1).checked_mul(r + 1).is_none_or(|s| s > big));
        assert_eq!(isqrt(10i128.pow(30)), 10i128.pow(15));
    }

    #[test]
    fn checked_ops_report_overflow() {
        assert_eq!(i64::MAX.add_c(1), Err(Error::Overflow));
        assert_eq!(i64::MIN.sub_c(1), Err(Error::Overflow));
        assert_eq!((1i64 << 40).mul_c(1 << 40), Err(Error::Overflow));
        assert_eq!(i64::narrow(1i128 << 70), Err(Error::Overflow));
    }
}
