//! Exact scalar rings.
//!
//! Everything degenerate in this crate is a polynomial in the deformation
//! parameter λ, so the numeric code is written once against [`Ring`] and
//! instantiated twice: with [`Rational`] when λ is a fixed rational, and with
//! [`LambdaPoly`] when λ is kept as an indeterminate. Neither instantiation
//! rounds.

mod lambda_poly;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde_json::Value;

use crate::error::Result;

pub use lambda_poly::LambdaPoly;
pub use rational::Rational;

/// A commutative Q-algebra with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;

    fn one() -> Self;

    /// The image of a rational number under the structure map Q -> Self.
    fn from_rational(q: &Rational) -> Self;

    fn is_zero(&self) -> bool;

    /// Multiplication by a rational scalar. Division by a nonzero integer is
    /// `scale` by its reciprocal, which keeps every division exact.
    fn scale(&self, q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self^exp` by repeated squaring; `x^0 = 1`.
    fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * &base;
            }
        }
        result
    }
}

/// A [`Ring`] that can stand in for λ: either a fixed rational or the
/// indeterminate itself. Scalars have a canonical textual (JSON) form.
pub trait Scalar: Ring + Eq + fmt::Display + 'static {
    /// `"p/q"` string for rationals, array of such strings for polynomials.
    fn to_json(&self) -> Value;

    fn from_json(value: &Value) -> Result<Self>;
}

/// Derives the by-value and mixed-reference forms of a binary operator from
/// the `&T op &T` implementation.
macro_rules! forward_ref_binops {
    ([$($g:tt)*] $t:ty;) => {};
    ([$($g:tt)*] $t:ty; $Op:ident $op:ident $(, $rest:ident $rest_op:ident)*) => {
        impl<$($g)*> std::ops::$Op<$t> for $t {
            type Output = $t;
            fn $op(self, rhs: $t) -> $t {
                std::ops::$Op::$op(&self, &rhs)
            }
        }

        impl<'r, $($g)*> std::ops::$Op<&'r $t> for $t {
            type Output = $t;
            fn $op(self, rhs: &'r $t) -> $t {
                std::ops::$Op::$op(&self, rhs)
            }
        }

        impl<'l, $($g)*> std::ops::$Op<$t> for &'l $t {
            type Output = $t;
            fn $op(self, rhs: $t) -> $t {
                std::ops::$Op::$op(self, &rhs)
            }
        }

        $crate::ring::forward_ref_binops!([$($g)*] $t; $($rest $rest_op),*);
    };
}

/// `a += &b` and `a -= &b` in terms of the `&T op &T` implementation.
macro_rules! forward_assign_ops {
    ([$($g:tt)*] $t:ty) => {
        impl<'r, $($g)*> std::ops::AddAssign<&'r $t> for $t {
            fn add_assign(&mut self, rhs: &'r $t) {
                *self = &*self + rhs;
            }
        }

        impl<'r, $($g)*> std::ops::SubAssign<&'r $t> for $t {
            fn sub_assign(&mut self, rhs: &'r $t) {
                *self = &*self - rhs;
            }
        }

        impl<'l, $($g)*> std::ops::Neg for &'l $t {
            type Output = $t;
            fn neg(self) -> $t {
                -(self.clone())
            }
        }
    };
}

pub(crate) use forward_assign_ops;
pub(crate) use forward_ref_binops;

/// Exact binomial coefficient C(n, k) as an integer-valued rational; zero when
/// `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from_integer(acc)
}

/// `n!` as an integer-valued rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), Rational::from(10));
        assert_eq!(binomial(0, 0), Rational::from(1));
        assert_eq!(binomial(3, 4), Rational::from(0));
        assert_eq!(binomial(12, 6), Rational::from(924));
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), Rational::from(1));
        assert_eq!(factorial(5), Rational::from(120));
        assert_eq!(factorial(20), Rational::from(2_432_902_008_176_640_000i64));
    }

    #[test]
    fn pow_by_squaring_matches_repeated_product() {
        let q = Rational::new(-3, 2).unwrap();
        let mut expected = Rational::one();
        for e in 0..9u32 {
            assert_eq!(q.pow(e), expected);
            expected = expected * &q;
        }
        let p = LambdaPoly::lambda() + LambdaPoly::one();
        assert_eq!(p.pow(3), LambdaPoly::from_ints(&[1, 3, 3, 1]));
    }
}
