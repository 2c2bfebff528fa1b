//! Exact classical, degenerate and r-extended Stirling numbers of the second
//! kind, their Bell polynomials, and machinery to check the identities that
//! relate them by evaluating both sides along independent code paths.
//!
//! All arithmetic is exact. Quantities depending on the deformation parameter
//! λ are computed either at a fixed [`Rational`] λ or symbolically as a
//! [`LambdaPoly`], through the same generic code.
//!
//! ```
//! use degen::{Degenerate, LambdaPoly, Method, Rational};
//!
//! let sym = Degenerate::new(LambdaPoly::lambda(), 8);
//! let v = sym.s2_ext(2, 1, 1, Method::Series)?.value;
//! assert_eq!(v, LambdaPoly::from_ints(&[3, -1]));
//!
//! let half = Degenerate::new("1/2".parse::<Rational>()?, 8);
//! let bell = half.bell_ext_poly(2, 1)?.poly;
//! assert_eq!(bell.eval(&Rational::from(2)), "19/2".parse::<Rational>()?);
//! # Ok::<(), degen::Error>(())
//! ```

pub mod classical;
pub mod degenerate;
mod error;
pub mod ring;
pub mod series;
pub mod verify;
pub mod xpoly;

pub use degenerate::{deg_falling, DegBellPolynomial, DegStirlingValue, Degenerate, DobinskiEstimate, Method};
pub use error::{Error, Result};
pub use ring::{binomial, factorial, LambdaPoly, Rational, Ring, Scalar};
pub use series::TruncatedSeries;
pub use verify::{
    list_identities, run_suite, verify_identity, Failure, Grid, IdentityId, IdentityInfo, LambdaSpec, Limits, Status,
    SuiteConfig, VerificationReport,
};
pub use xpoly::XPolynomial;
