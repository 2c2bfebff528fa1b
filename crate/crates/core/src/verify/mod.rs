//! Grid-driven identity verification.
//!
//! Each identity is checked by evaluating its two sides through different
//! code paths (series coefficient extraction on one side, closed-form finite
//! sums on the other, wherever possible) at every point of a parameter grid.
//! Exact identities are compared for literal equality; the two Dobinski-type
//! series are compared against exact values within a tolerance.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "THM1")]
    Thm1,
    #[serde(rename = "THM2")]
    Thm2,
    #[serde(rename = "THM3")]
    Thm3,
    #[serde(rename = "THM4")]
    Thm4,
    #[serde(rename = "THM5")]
    Thm5,
    #[serde(rename = "THM6")]
    Thm6,
    #[serde(rename = "EQ10")]
    Eq10,
    #[serde(rename = "EQ11")]
    Eq11,
    #[serde(rename = "EQ12")]
    Eq12,
    #[serde(rename = "EQ13")]
    Eq13,
    #[serde(rename = "EQ17")]
    Eq17,
    #[serde(rename = "EQ24")]
    Eq24,
    #[serde(rename = "EQ27")]
    Eq27,
    #[serde(rename = "LIMIT_LAMBDA0")]
    LimitLambda0,
    #[serde(rename = "LIMIT_LAMBDA1")]
    LimitLambda1,
    #[serde(rename = "REMARK_BELLNUM")]
    RemarkBellnum,
}

/// Catalogue entry returned by [`list_identities`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub id: IdentityId,
    pub statement: &'static str,
    pub location: &'static str,
    /// Tolerance-based rather than exact.
    pub numeric: bool,
}

impl IdentityId {
    pub const ALL: [IdentityId; 16] = [
        IdentityId::Thm1,
        IdentityId::Thm2,
        IdentityId::Thm3,
        IdentityId::Thm4,
        IdentityId::Thm5,
        IdentityId::Thm6,
        IdentityId::Eq10,
        IdentityId::Eq11,
        IdentityId::Eq12,
        IdentityId::Eq13,
        IdentityId::Eq17,
        IdentityId::Eq24,
        IdentityId::Eq27,
        IdentityId::LimitLambda0,
        IdentityId::LimitLambda1,
        IdentityId::RemarkBellnum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::Thm1 => "THM1",
            IdentityId::Thm2 => "THM2",
            IdentityId::Thm3 => "THM3",
            IdentityId::Thm4 => "THM4",
            IdentityId::Thm5 => "THM5",
            IdentityId::Thm6 => "THM6",
            IdentityId::Eq10 => "EQ10",
            IdentityId::Eq11 => "EQ11",
            IdentityId::Eq12 => "EQ12",
            IdentityId::Eq13 => "EQ13",
            IdentityId::Eq17 => "EQ17",
            IdentityId::Eq24 => "EQ24",
            IdentityId::Eq27 => "EQ27",
            IdentityId::LimitLambda0 => "LIMIT_LAMBDA0",
            IdentityId::LimitLambda1 => "LIMIT_LAMBDA1",
            IdentityId::RemarkBellnum => "REMARK_BELLNUM",
        }
    }

    pub fn is_numeric(self) -> bool {
        matches!(self, IdentityId::Eq10 | IdentityId::Eq27)
    }

    pub fn info(self) -> IdentityInfo {
        let (statement, location) = match self {
            IdentityId::Thm1 => (
                "S_{2,r}(n+r,k+r|λ) = Σ_{l=k..n} Σ_{m=0..n-l} C(n,l) r^m λ^{n-m-l} S_1(n-l,m) S_{2,λ}(l,k)",
                "Theorem 1",
            ),
            IdentityId::Thm2 => (
                "(x+r|λ)_n = Σ_k S_{2,r}(n+r,k+r|λ) (x)_k = Σ_k λ^{n-k} S_1(n,k) (x+r)^k",
                "Theorem 2",
            ),
            IdentityId::Thm3 => (
                "Bel^{(r)}_{n,λ}(x) = Σ_k x^k S_{2,r}(n+r,k+r|λ) = Σ_k (Σ_{m=k..n} Σ_{l=0..n-m} C(n,m) r^l λ^{n-m-l} S_1(n-m,l) S_{2,λ}(m,k)) x^k",
                "Theorem 3",
            ),
            IdentityId::Thm4 => (
                "(1/k!) Σ_{m=0..n} λ^{n-m} S_1(n,m) Δ^k r^m = S_{2,r}(n+r,k+r|λ) for n >= k, 0 for n < k",
                "Theorem 4",
            ),
            IdentityId::Thm5 => (
                "Bel^{(r)}_{n,λ}(x) = Σ_{k=0..n} Σ_{m=0..k} C(n,k) Bel_{n-k,λ}(x) λ^{k-m} r^m S_1(k,m)",
                "Theorem 5",
            ),
            IdentityId::Thm6 => (
                "C(m+k,m) S_{2,r}(n+r,m+k+r|λ) = Σ_{l=m..n-k} C(n,l) S_{2,r}(l+r,m+r|λ) S_{2,λ}(n-l,k)",
                "Theorem 6",
            ),
            IdentityId::Eq10 => (
                "Bel_{n,λ}(x) = e^{-x} Σ_{k>=0} (k|λ)_n x^k / k!  (numeric, tolerance-based)",
                "Eq. (10)",
            ),
            IdentityId::Eq11 => (
                "Bel_{n,λ}(x) = x Σ_{k=1..n} Σ_{j=1..k} C(k-1,j-1) S_1(n,k) λ^{n-k} Bel_{j-1}(x), n >= 1",
                "Eq. (11)",
            ),
            IdentityId::Eq12 => (
                "Bel_{n,λ}(x) = Σ_{k=0..n} Σ_{m=0..k} S_2(k,m) S_1(n,k) λ^{n-k} x^m",
                "Eq. (12)",
            ),
            IdentityId::Eq13 => (
                "Bel_{n,λ}(x) = Σ_{k=0..n} x^k S_{2,λ}(n,k)",
                "Eq. (13)",
            ),
            IdentityId::Eq17 => (
                "S_{2,r}(n+r,k+r|λ) = Σ_{m=0..n-k} C(m+k,m) C(r,m) m! S_{2,λ}(n,m+k)",
                "Eq. (17)",
            ),
            IdentityId::Eq24 => (
                "Bel^{(r)}_{n,λ}(x) = Σ_{m=0..n} λ^{n-m} S_1(n,m) Σ_{k=0..n} x^k Δ^k r^m / k!",
                "Eq. (24)",
            ),
            IdentityId::Eq27 => (
                "Bel^{(r)}_{n,λ}(x) = e^{-x} Σ_{m=0..n} λ^{n-m} S_1(n,m) Σ_{k>=0} x^k (k+r)^m / k!  (numeric, tolerance-based)",
                "Eq. (27)",
            ),
            IdentityId::LimitLambda0 => (
                "at λ = 0: S_{2,r}(n+r,k+r|λ) = S_{2,r}(n+r,k+r), S_{2,λ}(n,k) = S_2(n,k), Bel_{n,λ}(x) = Bel_n(x), (x|λ)_n = x^n",
                "Eq. (7), Eq. (8) and the note after Theorem 1",
            ),
            IdentityId::LimitLambda1 => (
                "at λ = 1: S_{2,r}(n+r,k+r|λ) = C(n,k) (r)_{n-k}, (x|λ)_n = (x)_n",
                "Eq. (7) and Eq. (14)",
            ),
            IdentityId::RemarkBellnum => (
                "Bel^{(r)}_{n,λ}(1) = Σ_k S_{2,r}(n+r,k+r|λ) = Σ_k Σ_{m=k..n} Σ_{l=0..n-m} C(n,m) r^l λ^{n-m-l} S_1(n-m,l) S_{2,λ}(m,k)",
                "Remark after Theorem 3",
            ),
        };
        IdentityInfo {
            id: self,
            statement,
            location,
            numeric: self.is_numeric(),
        }
    }

    fn valid_names() -> String {
        IdentityId::ALL
            .iter()
            .map(|id| id.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownIdentity {
                name: s.to_string(),
                valid: IdentityId::valid_names(),
            })
    }
}

/// The full identity catalogue in id order.
pub fn list_identities() -> Vec<IdentityInfo> {
    IdentityId::ALL.into_iter().map(IdentityId::info).collect()
}

/// λ as a fixed rational or as the indeterminate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaSpec {
    Fixed(Rational),
    Symbolic,
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Fixed(q) => write!(f, "{q}"),
            LambdaSpec::Symbolic => f.write_str("symbolic"),
        }
    }
}

impl FromStr for LambdaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "symbolic" {
            Ok(LambdaSpec::Symbolic)
        } else {
            s.parse()
                .map(LambdaSpec::Fixed)
                .map_err(|_| Error::parse("lambda", s, "expected p, p/q or \"symbolic\""))
        }
    }
}

impl Serialize for LambdaSpec {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ser.collect_str(self)
    }
}

/// Parameter ranges for a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub n_max: usize,
    /// Upper bound on `k`, allowed past `n_max` to exercise `n < k` vanishing.
    pub k_max: usize,
    pub r_max: usize,
    pub lambdas: Vec<LambdaSpec>,
    /// Evaluation points for the Bell variable.
    pub xs: Vec<Rational>,
    /// Absolute tolerance for the numeric identities.
    pub tol: f64,
}

impl Default for Grid {
    fn default() -> Self {
        let q = |s: &str| s.parse::<Rational>().expect("literal");
        Grid {
            n_max: 10,
            k_max: 12,
            r_max: 3,
            lambdas: vec![
                LambdaSpec::Fixed(q("0")),
                LambdaSpec::Fixed(q("1")),
                LambdaSpec::Fixed(q("1/2")),
                LambdaSpec::Fixed(q("-1/3")),
                LambdaSpec::Symbolic,
            ],
            xs: vec![q("1/2"), q("1"), q("2")],
            tol: 1e-9,
        }
    }
}

/// Caps on grid sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: usize,
    pub max_r: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 30, max_r: 16 }
    }
}

impl Grid {
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        if self.n_max > limits.max_n || self.k_max > limits.max_n + 2 {
            return Err(Error::BoundExceeded(format!(
                "grid n_max = {}, k_max = {} exceeds the configured limit {}",
                self.n_max, self.k_max, limits.max_n
            )));
        }
        if self.r_max > limits.max_r {
            return Err(Error::BoundExceeded(format!(
                "grid r_max = {} exceeds the configured limit {}",
                self.r_max, limits.max_r
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// A grid point where the two sides disagreed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub params: BTreeMap<String, String>,
    pub left: Value,
    pub right: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub grid: Grid,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
    /// Set when the identity could not be evaluated at all.
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        if self.failures.is_empty() && self.error.is_none() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    /// `{identity, grid, checked, failures, elapsed_ms, status}` plus `error`
    /// when present.
    pub fn to_json(&self) -> Value {
        self.to_json_with_elapsed(self.elapsed.as_millis() as u64)
    }

    /// Same as [`Self::to_json`] with a caller-chosen `elapsed_ms`, so output
    /// can be made reproducible.
    pub fn to_json_with_elapsed(&self, elapsed_ms: u64) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("identity".into(), Value::String(self.identity.to_string()));
        obj.insert(
            "grid".into(),
            serde_json::to_value(&self.grid).expect("grid serializes"),
        );
        obj.insert("checked".into(), Value::from(self.checked));
        obj.insert(
            "failures".into(),
            serde_json::to_value(&self.failures).expect("failures serialize"),
        );
        obj.insert("elapsed_ms".into(), Value::from(elapsed_ms));
        obj.insert(
            "status".into(),
            serde_json::to_value(self.status()).expect("status serializes"),
        );
        if let Some(err) = &self.error {
            obj.insert("error".into(), Value::String(err.clone()));
        }
        Value::Object(obj)
    }
}

/// Which identities to run on which grid.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub ids: Vec<IdentityId>,
    pub grid: Grid,
    pub limits: Limits,
    /// Perturbs the right-hand side of this identity by one, for exercising
    /// failure reporting end to end.
    pub inject_fault: Option<IdentityId>,
}

/// Checks one identity over `grid`.
pub fn verify_identity(id: IdentityId, grid: &Grid) -> Result<VerificationReport> {
    verify_identity_impl(id, grid, &Limits::default(), false)
}

fn verify_identity_impl(id: IdentityId, grid: &Grid, limits: &Limits, fault: bool) -> Result<VerificationReport> {
    grid.validate(limits)?;
    let start = Instant::now();
    let tallies = grid
        .lambdas
        .par_iter()
        .map(|spec| checks::run(id, spec, grid, fault))
        .collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for tally in tallies {
        checked += tally.checked;
        failures.extend(tally.failures);
    }
    Ok(VerificationReport {
        identity: id,
        grid: grid.clone(),
        checked,
        failures,
        elapsed: start.elapsed(),
        error: None,
    })
}

/// Runs every configured identity, one report each, ordered by id. An
/// identity that errors yields a failing report carrying the error.
pub fn run_suite(config: &SuiteConfig) -> Vec<VerificationReport> {
    let mut ids = config.ids.clone();
    ids.sort();
    ids.dedup();
    ids.par_iter()
        .map(|&id| {
            let fault = config.inject_fault == Some(id);
            verify_identity_impl(id, &config.grid, &config.limits, fault).unwrap_or_else(|e| VerificationReport {
                identity: id,
                grid: config.grid.clone(),
                checked: 0,
                failures: Vec::new(),
                elapsed: Duration::ZERO,
                error: Some(e.to_string()),
            })
        })
        .collect()
}
