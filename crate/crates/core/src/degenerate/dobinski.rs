//! Dobinski-type series for degenerate Bell polynomials.
//!
//! The infinite sums are truncated where a rigorous geometric tail bound
//! drops below half the requested tolerance. Partial sums are accumulated
//! exactly; the only approximation besides the truncation is `e^{a}`, which
//! is summed to a relative error far below any useful tolerance.

use super::{deg_falling, Degenerate};
use crate::error::{Error, Result};
use crate::ring::{Rational, Ring};

const MAX_TERMS: usize = 100_000;

/// Result of a truncated Dobinski evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DobinskiEstimate {
    /// `approx` rounded to the nearest `f64`.
    pub value: f64,
    /// Rational approximation of the series value.
    pub approx: Rational,
    /// Number of series terms summed.
    pub terms: usize,
    /// Rigorous bound on `|approx − exact|`; below `tol` on success.
    pub error_bound: f64,
}

fn validate(a: &Rational, tol: f64) -> Result<Rational> {
    if !a.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "Dobinski evaluation needs x > 0, got {a}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be a positive finite number, got {tol}"
        )));
    }
    Ok(Rational::from_f64(tol / 2.0).expect("finite"))
}

/// `e^a` for `a > 0` as a rational with relative error below `1e-40`.
/// Returns the approximation and a bound on its absolute error.
fn exp_rational(a: &Rational) -> (Rational, Rational) {
    let eps = Rational::new(1, 10i64.pow(18)).expect("nonzero").pow(2) * Rational::new(1, 10_000).expect("nonzero");
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut j = 0i64;
    loop {
        sum += &term;
        j += 1;
        term = term * a * Rational::new(1, j).expect("j >= 1");
        // Remaining terms shrink by at least 1/2 once j + 1 > 2a.
        if a * Rational::from(2) < j + 1 {
            let remainder = term.clone() * Rational::from(2);
            if remainder < eps {
                return (sum, remainder);
            }
        }
    }
}

fn finish(sum: Rational, tail_bound: Rational, terms: usize, a: &Rational) -> DobinskiEstimate {
    let (exp_a, exp_err) = exp_rational(a);
    let approx = &sum / &exp_a;
    // |sum/E − sum/e^a| ≤ |sum|·err/E because e^a ≥ 1; the tail contributes
    // at most its bound times e^{−a} ≤ 1.
    let error = tail_bound + sum.abs() * exp_err / &exp_a;
    DobinskiEstimate {
        value: approx.to_f64(),
        approx,
        terms,
        error_bound: error.to_f64(),
    }
}

impl Degenerate<Rational> {
    /// `Bel^{(r)}_{n,λ}(a) = e^{−a} Σ_{m=0..n} λ^{n−m} S_1(n,m) Σ_{k≥0} a^k (k+r)^m / k!`,
    /// truncated so the result is within `tol` of the exact value.
    pub fn dobinski_numeric(&self, n: usize, r: usize, a: &Rational, tol: f64) -> Result<DobinskiEstimate> {
        self.check_n(n)?;
        let half_tol = validate(a, tol)?;
        let weights: Vec<(usize, Rational)> = (0..=n)
            .map(|m| (m, self.lambda_pow(n - m) * self.s1_table().value(n, m)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let r_q = Rational::from(r as i64);
        let half = Rational::new(1, 2).expect("nonzero");

        let mut partial = vec![Rational::zero(); weights.len()];
        // a^k / k!
        let mut w = Rational::one();
        for k in 0..MAX_TERMS {
            let base = Rational::from(k as i64) + &r_q;
            for ((m, _), acc) in weights.iter().zip(partial.iter_mut()) {
                *acc += &(w.clone() * base.pow(*m as u32));
            }

            // Tail Σ_{i ≥ j} t_i with t_{i+1}/t_i ≤ ρ_j = a/(j+1)·(1 + 1/(j+r))^m.
            let j = k + 1;
            let w_next = w.clone() * a * Rational::new(1, j as i64).expect("j >= 1");
            let jr = Rational::from(j as i64) + &r_q;
            let growth = Rational::one() + jr.recip().expect("j + r >= 1");
            let shrink = a * Rational::new(1, (j + 1) as i64).expect("nonzero");
            let mut bound = Rational::zero();
            let mut converging = true;
            for (m, c) in &weights {
                let rho = shrink.clone() * growth.pow(*m as u32);
                if rho > half {
                    converging = false;
                    break;
                }
                bound += &(c.abs() * &w_next * jr.pow(*m as u32) * Rational::from(2));
            }
            if converging && bound < half_tol {
                let sum = weights
                    .iter()
                    .zip(&partial)
                    .fold(Rational::zero(), |acc, ((_, c), t)| acc + c * t);
                return Ok(finish(sum, bound, k + 1, a));
            }
            w = w_next;
        }
        Err(Error::InvalidArgument(format!(
            "Dobinski series did not reach tolerance {tol} within {MAX_TERMS} terms"
        )))
    }

    /// `Bel_{n,λ}(a) = e^{−a} Σ_{k≥0} (k|λ)_n a^k / k!`, truncated so the result
    /// is within `tol` of the exact value.
    pub fn dobinski_falling(&self, n: usize, a: &Rational, tol: f64) -> Result<DobinskiEstimate> {
        self.check_n(n)?;
        let half_tol = validate(a, tol)?;
        // Beyond k > (n−1)|λ| every factor k − iλ of (k|λ)_n is positive.
        let c = self.lambda().abs() * Rational::from(n.saturating_sub(1) as i64);
        let half = Rational::new(1, 2).expect("nonzero");

        let mut sum = Rational::zero();
        let mut w = Rational::one();
        for k in 0..MAX_TERMS {
            sum += &(w.clone() * deg_falling(&Rational::from(k as i64), self.lambda(), n));

            let j = k + 1;
            let w_next = w.clone() * a * Rational::new(1, j as i64).expect("j >= 1");
            let gap = Rational::from(j as i64) - &c;
            if gap.is_positive() {
                let rho = a
                    * Rational::new(1, (j + 1) as i64).expect("nonzero")
                    * (Rational::one() + gap.recip().expect("gap > 0")).pow(n as u32);
                if rho <= half {
                    let t_next = w_next.clone() * deg_falling(&Rational::from(j as i64), self.lambda(), n);
                    let bound = t_next.abs() * Rational::from(2);
                    if bound < half_tol {
                        return Ok(finish(sum, bound, k + 1, a));
                    }
                }
            }
            w = w_next;
        }
        Err(Error::InvalidArgument(format!(
            "Dobinski series did not reach tolerance {tol} within {MAX_TERMS} terms"
        )))
    }
}
