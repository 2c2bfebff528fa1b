use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{forward_assign_ops, forward_ref_binops, Rational, Ring, Scalar};

/// Polynomial in the Bell variable `x` over a scalar ring, lowest degree
/// first, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> XPolynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(S::is_zero) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        XPolynomial {
            coeffs: vec![S::zero(), S::one()],
        }
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = S::one();
        XPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(S::is_one)
    }

    pub fn eval(&self, at: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * at + c)
    }

    pub fn scale_by(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> XPolynomial<T> {
        XPolynomial::new(self.coeffs.iter().map(f).collect())
    }
}

/// The unique polynomial of degree `< points.len()` through
/// `(points[i], values[i])`, by Lagrange's formula. Points must be distinct.
pub fn interpolate<S: Ring>(points: &[Rational], values: &[S]) -> Result<XPolynomial<S>> {
    if points.len() != values.len() {
        return Err(Error::InvalidArgument(format!(
            "{} interpolation points but {} values",
            points.len(),
            values.len()
        )));
    }
    let mut acc = XPolynomial::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        let mut basis = XPolynomial::<S>::one();
        let mut denom = Rational::one();
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis * XPolynomial::new(vec![S::from_rational(&-xj.clone()), S::one()]);
            denom = denom * (xi - xj);
        }
        let inv = denom
            .recip()
            .ok_or_else(|| Error::InvalidArgument("interpolation points must be distinct".into()))?;
        acc += &basis.scale_by(yi).scale(&inv);
    }
    Ok(acc)
}

impl<S: Scalar> XPolynomial<S> {
    /// JSON array of scalar forms, index = power of `x`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(items) => items
                .iter()
                .map(S::from_json)
                .collect::<Result<Vec<_>>>()
                .map(XPolynomial::new),
            other => Err(Error::parse(
                "x polynomial",
                &other.to_string(),
                "expected an array of scalars",
            )),
        }
    }
}

impl<S: Scalar> std::str::FromStr for XPolynomial<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::parse("x polynomial", s, e.to_string()))?;
        XPolynomial::from_json(&value)
    }
}

impl<S: Ring> Default for XPolynomial<S> {
    fn default() -> Self {
        XPolynomial { coeffs: Vec::new() }
    }
}

impl<S: Ring> Add<&XPolynomial<S>> for &XPolynomial<S> {
    type Output = XPolynomial<S>;
    fn add(self, rhs: &XPolynomial<S>) -> XPolynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..len).map(|i| self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<S: Ring> Sub<&XPolynomial<S>> for &XPolynomial<S> {
    type Output = XPolynomial<S>;
    fn sub(self, rhs: &XPolynomial<S>) -> XPolynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..len).map(|i| self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<S: Ring> Mul<&XPolynomial<S>> for &XPolynomial<S> {
    type Output = XPolynomial<S>;
    fn mul(self, rhs: &XPolynomial<S>) -> XPolynomial<S> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return XPolynomial::default();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a.clone() * b);
            }
        }
        XPolynomial::new(out)
    }
}

impl<S: Ring> Neg for XPolynomial<S> {
    type Output = XPolynomial<S>;
    fn neg(self) -> XPolynomial<S> {
        XPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

forward_ref_binops!([S: Ring] XPolynomial<S>; Add add, Sub sub, Mul mul);
forward_assign_ops!([S: Ring] XPolynomial<S>);

/// Polynomials in `x` over a Q-algebra form a Q-algebra, which lets the
/// degenerate falling factorial run on `x + r` directly.
impl<S: Ring> Ring for XPolynomial<S> {
    fn zero() -> Self {
        XPolynomial::default()
    }

    fn one() -> Self {
        XPolynomial::constant(S::one())
    }

    fn from_rational(q: &Rational) -> Self {
        XPolynomial::constant(S::from_rational(q))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn scale(&self, q: &Rational) -> Self {
        XPolynomial::new(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }
}

impl<S: Scalar> fmt::Display for XPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl<S: fmt::Debug> fmt::Debug for XPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("XPolynomial").field(&self.coeffs).finish()
    }
}
