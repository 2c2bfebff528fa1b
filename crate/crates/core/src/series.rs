//! Truncated formal power series in `t` over an exact [`Ring`].
//!
//! Every generating function in this crate is built here: the series of
//! `log(1 + λt)/λ`, of `(1 + λt)^{a/λ}` and their powers and products. λ is
//! never divided by, so λ = 0 is an ordinary evaluation of the coefficients.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{factorial, Rational, Ring, Scalar};

/// `Σ_{n ≤ order} c_n t^n`; arithmetic silently drops terms beyond `t^order`.
///
/// Generating functions are read in exponential convention: the quantity
/// `a_n` of `Σ a_n t^n / n!` is [`TruncatedSeries::egf_coeff`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> TruncatedSeries<S> {
    /// Pads with zeros or drops terms so exactly `order + 1` coefficients are
    /// stored.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![S::one()], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::new(vec![S::zero(), S::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> Result<&S> {
        self.coeffs.get(n).ok_or_else(|| {
            Error::OutOfRange(format!(
                "coefficient t^{n} requested from a series of order {}",
                self.order()
            ))
        })
    }

    /// `n! · [t^n]`, the EGF value at index `n`.
    pub fn egf_coeff(&self, n: usize) -> Result<S> {
        Ok(self.coeff(n)?.scale(&factorial(n as u64)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = vec![S::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a.clone() * b);
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_by(&self, s: &S) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    /// `exp(self)` via `b_0 = 1`, `n·b_n = Σ_{k=1..n} k·f_k·b_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut b: Vec<S> = Vec::with_capacity(order + 1);
        b.push(S::one());
        for n in 1..=order {
            let mut acc = S::zero();
            for k in 1..=n {
                let f_k = &self.coeffs[k];
                if f_k.is_zero() {
                    continue;
                }
                acc += &(f_k.scale(&Rational::from(k as i64)) * &b[n - k]);
            }
            b.push(acc.scale(&Rational::new(1, n as i64).expect("n >= 1")));
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `self^k` by repeated squaring; `f^0 = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let order = self.order();
        let mut result = Self::one(order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("equal orders");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("equal orders");
            }
        }
        result
    }

    /// Applies `f` to every coefficient, e.g. to evaluate a symbolic-λ series
    /// at a fixed λ.
    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> TruncatedSeries<S> {
    /// JSON array of scalars, index = power of `t`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }
}

/// `log(1 + λt)/λ = Σ_{m≥1} (−1)^{m−1} λ^{m−1} t^m / m`, built term by term so
/// no division by λ ever happens.
pub fn dlog<S: Ring>(lambda: &S, order: usize) -> TruncatedSeries<S> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(S::zero());
    let neg_lambda = -lambda.clone();
    let mut power = S::one();
    for m in 1..=order {
        coeffs.push(power.scale(&Rational::new(1, m as i64).expect("m >= 1")));
        power = power * &neg_lambda;
    }
    TruncatedSeries::new(coeffs, order)
}

/// `(1 + λt)^{a/λ} = exp(a · log(1 + λt)/λ)`. Its EGF coefficient `n` is the
/// degenerate falling factorial `(a|λ)_n`.
pub fn binom_lambda<S: Ring>(a: &S, lambda: &S, order: usize) -> TruncatedSeries<S> {
    dlog(lambda, order)
        .scale_by(a)
        .exp()
        .expect("dlog has zero constant term")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LambdaPoly;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rs(coeffs: &[&str], order: usize) -> TruncatedSeries<Rational> {
        TruncatedSeries::new(coeffs.iter().map(|s| q(s)).collect(), order)
    }

    #[test]
    fn mul_examples() {
        let a = rs(&["1", "1"], 2);
        let b = rs(&["1", "-1"], 2);
        assert_eq!(a.mul(&b).unwrap(), rs(&["1", "0", "-1"], 2));
        let t = TruncatedSeries::<Rational>::t(1);
        assert_eq!(t.mul(&t).unwrap(), TruncatedSeries::zero(1));
    }

    #[test]
    fn mul_order_mismatch_rejected() {
        let a = rs(&["1"], 2);
        let b = rs(&["1"], 3);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch { left: 2, right: 3 }));
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
    }

    #[test]
    fn exp_examples() {
        let e = TruncatedSeries::<Rational>::t(3).exp().unwrap();
        assert_eq!(e, rs(&["1", "1", "1/2", "1/6"], 3));
        assert_eq!(
            TruncatedSeries::<Rational>::zero(4).exp().unwrap(),
            TruncatedSeries::one(4)
        );
        assert_eq!(
            TruncatedSeries::<Rational>::one(2).exp(),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn dlog_examples() {
        let lam = LambdaPoly::lambda();
        let d = dlog(&lam, 3);
        let expected = TruncatedSeries::new(
            vec![
                LambdaPoly::zero(),
                LambdaPoly::one(),
                LambdaPoly::new(vec![q("0"), q("-1/2")]),
                LambdaPoly::new(vec![q("0"), q("0"), q("1/3")]),
            ],
            3,
        );
        assert_eq!(d, expected);
        // λ = 0 collapses to t
        assert_eq!(d.map(|c| c.eval(&q("0"))), TruncatedSeries::t(3));
    }

    #[test]
    fn exp_of_dlog_is_degenerate_exponential() {
        let lam = LambdaPoly::lambda();
        let e = dlog(&lam, 2).exp().unwrap();
        assert_eq!(e.coeff(2).unwrap(), &LambdaPoly::new(vec![q("1/2"), q("-1/2")]));
    }

    #[test]
    fn binom_lambda_examples() {
        let s = binom_lambda(&q("2"), &q("1/2"), 3);
        assert_eq!(s.egf_coeff(2).unwrap(), q("3"));
        assert_eq!(binom_lambda(&q("0"), &q("1/2"), 3), TruncatedSeries::one(3));
        let lam = LambdaPoly::lambda();
        let s = binom_lambda(&LambdaPoly::one(), &lam, 3);
        assert_eq!(s.egf_coeff(3).unwrap(), LambdaPoly::from_ints(&[1, -3, 2]));
    }

    #[test]
    fn pow_examples() {
        let t = TruncatedSeries::<Rational>::t(4);
        assert_eq!(t.pow(3), rs(&["0", "0", "0", "1"], 4));
        assert_eq!(rs(&["3", "1"], 4).pow(0), TruncatedSeries::one(4));

        // ((1+λt)^{1/λ} − 1)^2: EGF coefficient 3 is 2!·S_{2,λ}(3,2) = 6(1 − λ)
        let lam = LambdaPoly::lambda();
        let e1 = binom_lambda(&LambdaPoly::one(), &lam, 3)
            .sub(&TruncatedSeries::one(3))
            .unwrap();
        let sq = e1.pow(2);
        assert_eq!(
            sq.egf_coeff(3).unwrap().scale(&q("1/2")),
            LambdaPoly::from_ints(&[3, -3])
        );
    }

    #[test]
    fn egf_coeff_examples() {
        assert_eq!(rs(&["1", "1", "1/2"], 2).egf_coeff(2).unwrap(), q("1"));
        assert!(rs(&["1"], 2).egf_coeff(3).is_err());

        let lam = LambdaPoly::lambda();
        let e1 = binom_lambda(&LambdaPoly::one(), &lam, 2)
            .sub(&TruncatedSeries::one(2))
            .unwrap();
        assert_eq!(e1.egf_coeff(2).unwrap(), LambdaPoly::from_ints(&[1, -1]));

        // k = 0, r = 3 of the extended generating function at λ = 1/2
        let s = binom_lambda(&q("3"), &q("1/2"), 2);
        assert_eq!(s.egf_coeff(2).unwrap(), q("15/2"));
    }

    #[test]
    fn e_times_e_minus_one() {
        // e(t)·(e(t) − 1) with e = (1+λt)^{1/λ}: t² coefficient (3 − λ)/2
        let lam = LambdaPoly::lambda();
        let e = binom_lambda(&LambdaPoly::one(), &lam, 2);
        let em1 = e.sub(&TruncatedSeries::one(2)).unwrap();
        let prod = e.mul(&em1).unwrap();
        assert_eq!(prod.coeff(2).unwrap(), &LambdaPoly::new(vec![q("3/2"), q("-1/2")]));
    }

    #[test]
    fn json_serialization() {
        assert_eq!(rs(&["1", "-1/2"], 2).to_json().to_string(), r#"["1","-1/2","0"]"#);
    }
}
