//! Classical Stirling numbers of both kinds, r-Stirling numbers of the
//! second kind, Bell polynomials and forward differences.

mod partitions;

use crate::error::{Error, Result};
use crate::ring::{binomial, Rational, Ring};
use crate::xpoly::XPolynomial;

pub use partitions::oracle_partitions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// Signed: `(x)_n = Σ_k S_1(n, k) x^k`.
    FirstSigned,
    Second,
}

/// Row-by-row cache of a Stirling triangle, `0 ≤ k ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    kind: StirlingKind,
    rows: Vec<Vec<Rational>>,
}

impl StirlingTriangle {
    pub fn new(kind: StirlingKind, n_max: usize) -> Self {
        let mut tri = StirlingTriangle {
            kind,
            rows: vec![vec![Rational::one()]],
        };
        tri.extend_to(n_max);
        tri
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Grows the cache to cover `n_max`; no-op if already large enough.
    pub fn extend_to(&mut self, n_max: usize) {
        while self.rows.len() <= n_max {
            let n = self.rows.len();
            let prev = &self.rows[n - 1];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
            let row = (0..=n)
                .map(|k| {
                    let diag = if k == 0 { Rational::zero() } else { at(k - 1) };
                    match self.kind {
                        // S_1(n,k) = S_1(n−1,k−1) − (n−1)·S_1(n−1,k)
                        StirlingKind::FirstSigned => diag - at(k) * Rational::from((n - 1) as i64),
                        // S_2(n,k) = k·S_2(n−1,k) + S_2(n−1,k−1)
                        StirlingKind::Second => at(k) * Rational::from(k as i64) + diag,
                    }
                })
                .collect();
            self.rows.push(row);
        }
    }

    /// Entry `(n, k)`; indices outside `0 ≤ k ≤ n ≤ n_max` are an error.
    pub fn get(&self, n: usize, k: usize) -> Result<&Rational> {
        if k > n {
            return Err(Error::OutOfRange(format!("Stirling index k = {k} exceeds n = {n}")));
        }
        self.rows
            .get(n)
            .map(|row| &row[k])
            .ok_or_else(|| Error::OutOfRange(format!("row {n} beyond cached triangle of size {}", self.n_max())))
    }

    /// Entry `(n, k)` extended by zero for `k > n`. Panics past `n_max`.
    pub fn value(&self, n: usize, k: usize) -> Rational {
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }
}

/// Signed Stirling number of the first kind.
pub fn s1(n: usize, k: usize) -> Result<Rational> {
    StirlingTriangle::new(StirlingKind::FirstSigned, n).get(n, k).cloned()
}

/// Stirling number of the second kind.
pub fn s2(n: usize, k: usize) -> Result<Rational> {
    StirlingTriangle::new(StirlingKind::Second, n).get(n, k).cloned()
}

/// The r-Stirling number `S_{2,r}(n + r, k + r) = Σ_{l=k..n} C(n,l) r^{n−l} S_2(l,k)`.
pub fn r_s2(n: usize, k: usize, r: usize) -> Result<Rational> {
    let s2 = StirlingTriangle::new(StirlingKind::Second, n);
    r_s2_with(&s2, n, k, r)
}

pub(crate) fn r_s2_with(s2: &StirlingTriangle, n: usize, k: usize, r: usize) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange(format!("r-Stirling index k = {k} exceeds n = {n}")));
    }
    let r = Rational::from(r as i64);
    Ok((k..=n).fold(Rational::zero(), |acc, l| {
        acc + binomial(n as u64, l as u64) * r.pow((n - l) as u32) * s2.get(l, k).expect("l <= n")
    }))
}

/// `Bel_n(x) = Σ_k S_2(n, k) x^k`.
pub fn bell_poly(n: usize) -> XPolynomial<Rational> {
    XPolynomial::new(StirlingTriangle::new(StirlingKind::Second, n).row(n).to_vec())
}

/// Expanded falling factorial `(x)_n = x(x − 1)⋯(x − n + 1)`.
pub fn falling_factorial_poly(n: usize) -> XPolynomial<Rational> {
    (0..n).fold(XPolynomial::one(), |acc, i| {
        acc * XPolynomial::new(vec![Rational::from(-(i as i64)), Rational::one()])
    })
}

/// k-th forward difference of `x^m` at `x = r`:
/// `Σ_{l=0..k} C(k,l) (−1)^{k−l} (l + r)^m`.
pub fn forward_diff(k: usize, m: usize, r: &Rational) -> Rational {
    (0..=k).fold(Rational::zero(), |acc, l| {
        let term = binomial(k as u64, l as u64) * (Rational::from(l as i64) + r).pow(m as u32);
        if (k - l).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    })
}
