use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use super::{forward_assign_ops, forward_ref_binops, Rational, Ring, Scalar};
use crate::error::{Error, Result};

/// Polynomial in λ with rational coefficients, lowest degree first.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty
/// coefficient list and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        LambdaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate λ.
    pub fn lambda() -> Self {
        LambdaPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of λ^i, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at λ = `at`, by Horner's rule.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }
}

impl Add<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        LambdaPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&LambdaPoly> for &LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return LambdaPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        LambdaPoly::new(out)
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

forward_ref_binops!([] LambdaPoly; Add add, Sub sub, Mul mul);
forward_assign_ops!([] LambdaPoly);

impl Ring for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly::default()
    }

    fn one() -> Self {
        LambdaPoly::constant(Rational::one())
    }

    fn from_rational(q: &Rational) -> Self {
        LambdaPoly::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn scale(&self, q: &Rational) -> Self {
        LambdaPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }
}

impl Scalar for LambdaPoly {
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Array(items) => items
                .iter()
                .map(Rational::from_json)
                .collect::<Result<Vec<_>>>()
                .map(LambdaPoly::new),
            other => Err(Error::parse(
                "lambda polynomial",
                &other.to_string(),
                "expected an array of rational strings",
            )),
        }
    }
}

impl std::str::FromStr for LambdaPoly {
    type Err = Error;

    /// Parses the JSON array form, e.g. `["1","-1"]` for 1 − λ.
    fn from_str(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::parse("lambda polynomial", s, e.to_string()))?;
        LambdaPoly::from_json(&value)
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("λ")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaPoly({self})")
    }
}
