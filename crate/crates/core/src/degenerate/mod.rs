//! Degenerate and r-extended degenerate Stirling numbers of the second kind
//! and the matching Bell polynomials.
//!
//! [`Degenerate`] fixes λ (a rational, or the indeterminate) and a maximum
//! index, precomputes the classical triangles and the degenerate Stirling
//! table once, and then answers queries. Each extended Stirling value can be
//! produced by several unrelated formulas, selected with [`Method`].

mod dobinski;

use std::fmt;
use std::str::FromStr;

use crate::classical::{forward_diff, StirlingKind, StirlingTriangle};
use crate::error::{Error, Result};
use crate::ring::{binomial, factorial, Rational, Ring, Scalar};
use crate::series::{binom_lambda, TruncatedSeries};
use crate::xpoly::XPolynomial;

pub use dobinski::DobinskiEstimate;

/// Degenerate falling factorial `(a|λ)_n = a(a − λ)(a − 2λ)⋯(a − (n−1)λ)`,
/// `(a|λ)_0 = 1`. Works over any ring, so `a` may itself be a polynomial in x.
pub fn deg_falling<R: Ring>(a: &R, lambda: &R, n: usize) -> R {
    let mut acc = R::one();
    let mut shift = R::zero();
    for _ in 0..n {
        acc = acc * (a.clone() - &shift);
        shift += lambda;
    }
    acc
}

/// Evaluation route for `S_{2,r}(n + r, k + r | λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Coefficient extraction from `(1/k!)(1+λt)^{r/λ}((1+λt)^{1/λ} − 1)^k`.
    Series,
    /// `Σ_{l=k..n} Σ_{m=0..n−l} C(n,l) r^m λ^{n−m−l} S_1(n−l,m) S_{2,λ}(l,k)`.
    Thm1,
    /// `Σ_{m=0..n−k} C(m+k,m) C(r,m) m! S_{2,λ}(n, m+k)`.
    Eq17,
    /// `(1/k!) Σ_{m=0..n} λ^{n−m} S_1(n,m) Δ^k r^m`.
    Thm4,
    /// `(1/k!) Σ_{l=0..k} C(k,l) (−1)^{k−l} (l + r|λ)_n`.
    BinomClosedForm,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Series,
        Method::Thm1,
        Method::Eq17,
        Method::Thm4,
        Method::BinomClosedForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Thm1 => "thm1",
            Method::Eq17 => "eq17",
            Method::Thm4 => "thm4",
            Method::BinomClosedForm => "binom-closed-form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// An extended degenerate Stirling number together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegStirlingValue<S> {
    pub value: S,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub method: Method,
}

/// `Bel^{(r)}_{n,λ}(x)`; `r = 0` is the plain degenerate Bell polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegBellPolynomial<S> {
    pub poly: XPolynomial<S>,
    pub n: usize,
    pub r: usize,
}

/// Precomputed tables for one value of λ.
#[derive(Debug, Clone)]
pub struct Degenerate<S> {
    lambda: S,
    n_max: usize,
    s1: StirlingTriangle,
    s2: StirlingTriangle,
    lambda_pows: Vec<S>,
    /// `((1+λt)^{1/λ} − 1)^k / k!` for `k ≤ n_max`, at order `n_max`.
    stirling_gf: Vec<TruncatedSeries<S>>,
    /// `S_{2,λ}(n, k)` read off `stirling_gf`.
    s2_deg: Vec<Vec<S>>,
}

impl<S: Scalar> Degenerate<S> {
    pub fn new(lambda: S, n_max: usize) -> Self {
        let s1 = StirlingTriangle::new(StirlingKind::FirstSigned, n_max);
        let s2 = StirlingTriangle::new(StirlingKind::Second, n_max);
        let lambda_pows = std::iter::successors(Some(S::one()), |p| Some(p.clone() * &lambda))
            .take(n_max + 1)
            .collect();

        let e_minus_one = binom_lambda(&S::one(), &lambda, n_max)
            .sub(&TruncatedSeries::one(n_max))
            .expect("same order");
        let mut stirling_gf = vec![TruncatedSeries::one(n_max)];
        for k in 1..=n_max {
            let next = stirling_gf[k - 1]
                .mul(&e_minus_one)
                .expect("same order")
                .scale(&Rational::new(1, k as i64).expect("k >= 1"));
            stirling_gf.push(next);
        }
        let s2_deg = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|k| stirling_gf[k].egf_coeff(n).expect("n <= order"))
                    .collect()
            })
            .collect();

        Degenerate {
            lambda,
            n_max,
            s1,
            s2,
            lambda_pows,
            stirling_gf,
            s2_deg,
        }
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn s1_table(&self) -> &StirlingTriangle {
        &self.s1
    }

    pub fn s2_table(&self) -> &StirlingTriangle {
        &self.s2
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            Err(Error::OutOfRange(format!(
                "n = {n} exceeds the precomputed bound {}",
                self.n_max
            )))
        } else {
            Ok(())
        }
    }

    /// `λ^e` for `e ≤ n_max`.
    pub fn lambda_pow(&self, e: usize) -> &S {
        &self.lambda_pows[e]
    }

    /// Signed S_1 lifted into the scalar ring, zero for `k > n`.
    pub fn s1(&self, n: usize, k: usize) -> S {
        S::from_rational(&self.s1.value(n, k))
    }

    /// Classical S_2 lifted into the scalar ring, zero for `k > n`.
    pub fn s2(&self, n: usize, k: usize) -> S {
        S::from_rational(&self.s2.value(n, k))
    }

    /// `(a|λ)_n` at this context's λ.
    pub fn deg_falling(&self, a: &S, n: usize) -> S {
        deg_falling(a, &self.lambda, n)
    }

    /// `S_{2,λ}(n, k)` by coefficient extraction.
    pub fn s2_deg(&self, n: usize, k: usize) -> Result<S> {
        self.check_n(n)?;
        if k > n {
            return Err(Error::OutOfRange(format!(
                "degenerate Stirling index k = {k} exceeds n = {n}"
            )));
        }
        Ok(self.s2_deg[n][k].clone())
    }

    /// `S_{2,λ}(n, k)` extended by zero to `k > n`.
    pub(crate) fn s2_deg_value(&self, n: usize, k: usize) -> S {
        self.s2_deg[n].get(k).cloned().unwrap_or_else(S::zero)
    }

    /// `S_{2,λ}(n, k)` from `(1/k!) Σ_{l=0..k} C(k,l) (−1)^{k−l} (l|λ)_n`, which
    /// never touches the series engine.
    pub fn s2_deg_alternating(&self, n: usize, k: usize) -> Result<S> {
        self.check_n(n)?;
        if k > n {
            return Err(Error::OutOfRange(format!(
                "degenerate Stirling index k = {k} exceeds n = {n}"
            )));
        }
        Ok(self.alternating_sum(n, k, 0))
    }

    fn alternating_sum(&self, n: usize, k: usize, r: usize) -> S {
        let mut acc = S::zero();
        for l in 0..=k {
            let term = self
                .deg_falling(&S::from_int((l + r) as i64), n)
                .scale(&binomial(k as u64, l as u64));
            if (k - l).is_multiple_of(2) {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc.scale(&factorial(k as u64).recip().expect("k! > 0"))
    }

    /// `S_{2,r}(n + r, k + r | λ)` by the requested route. Zero when `n < k`.
    pub fn s2_ext(&self, n: usize, k: usize, r: usize, method: Method) -> Result<DegStirlingValue<S>> {
        self.check_n(n)?;
        let value = match method {
            Method::Series => self.s2_ext_series(n, k, r),
            Method::Thm1 => self.s2_ext_thm1(n, k, r),
            Method::Eq17 => self.s2_ext_eq17(n, k, r),
            Method::Thm4 => self.s2_ext_thm4(n, k, r),
            Method::BinomClosedForm => self.alternating_sum(n, k, r),
        };
        Ok(DegStirlingValue { value, n, k, r, method })
    }

    fn s2_ext_series(&self, n: usize, k: usize, r: usize) -> S {
        if k > n {
            // The k-th power starts at t^k.
            return S::zero();
        }
        let shift = binom_lambda(&S::from_int(r as i64), &self.lambda, self.n_max);
        shift
            .mul(&self.stirling_gf[k])
            .expect("same order")
            .egf_coeff(n)
            .expect("n <= order")
    }

    fn s2_ext_thm1(&self, n: usize, k: usize, r: usize) -> S {
        let r = Rational::from(r as i64);
        let mut acc = S::zero();
        for l in k..=n {
            let s2l = self.s2_deg_value(l, k);
            if s2l.is_zero() {
                continue;
            }
            let mut inner = S::zero();
            for m in 0..=n - l {
                let c = self.s1.value(n - l, m) * r.pow(m as u32);
                if c.is_zero() {
                    continue;
                }
                inner += &self.lambda_pow(n - m - l).scale(&c);
            }
            acc += &(inner * &s2l).scale(&binomial(n as u64, l as u64));
        }
        acc
    }

    fn s2_ext_eq17(&self, n: usize, k: usize, r: usize) -> S {
        if k > n {
            return S::zero();
        }
        (0..=n - k).fold(S::zero(), |acc, m| {
            let c = binomial((m + k) as u64, m as u64) * binomial(r as u64, m as u64) * factorial(m as u64);
            if c.is_zero() {
                acc
            } else {
                acc + self.s2_deg_value(n, m + k).scale(&c)
            }
        })
    }

    fn s2_ext_thm4(&self, n: usize, k: usize, r: usize) -> S {
        let r = Rational::from(r as i64);
        let sum = (0..=n).fold(S::zero(), |acc, m| {
            let c = self.s1.value(n, m) * forward_diff(k, m, &r);
            if c.is_zero() {
                acc
            } else {
                acc + self.lambda_pow(n - m).scale(&c)
            }
        });
        sum.scale(&factorial(k as u64).recip().expect("k! > 0"))
    }

    /// `Bel_{n,λ}(x) = Σ_k S_{2,λ}(n, k) x^k`.
    pub fn bell_deg_poly(&self, n: usize) -> Result<DegBellPolynomial<S>> {
        self.check_n(n)?;
        Ok(DegBellPolynomial {
            poly: XPolynomial::new(self.s2_deg[n].clone()),
            n,
            r: 0,
        })
    }

    /// `Bel^{(r)}_{n,λ}(x) = Σ_k S_{2,r}(n + r, k + r | λ) x^k`.
    pub fn bell_ext_poly(&self, n: usize, r: usize) -> Result<DegBellPolynomial<S>> {
        self.check_n(n)?;
        let coeffs = (0..=n).map(|k| self.s2_ext_eq17(n, k, r)).collect();
        Ok(DegBellPolynomial {
            poly: XPolynomial::new(coeffs),
            n,
            r,
        })
    }

    /// EGF coefficient `n` of `(1+λt)^{r/λ} exp(a((1+λt)^{1/λ} − 1))`, i.e.
    /// `Bel^{(r)}_{n,λ}(a)` straight from its generating function.
    pub fn bell_series_eval(&self, n: usize, r: usize, a: &Rational, order: usize) -> Result<S> {
        if n > order {
            return Err(Error::OutOfRange(format!(
                "series order {order} too small for coefficient {n}"
            )));
        }
        let e_minus_one = binom_lambda(&S::one(), &self.lambda, order).sub(&TruncatedSeries::one(order))?;
        let bell_gf = e_minus_one.scale(a).exp()?;
        let shift = binom_lambda(&S::from_int(r as i64), &self.lambda, order);
        shift.mul(&bell_gf)?.egf_coeff(n)
    }
}
