//! Exact elementary symmetric functions of reciprocal polynomial values,
//! `sigma_{k,f}(n) = e_k(1/f(1), ..., 1/f(n))`, together with certified
//! non-integrality arguments for polynomials with nonnegative coefficients.
//!
//! ```
//! use recipsym::{parse_poly, sigma_column, Fraction};
//!
//! let f = parse_poly("x^2").unwrap();
//! let col = sigma_column(&f, 3).unwrap();
//! assert_eq!(Fraction(&col.sigma(2)).to_string(), "7/18");
//! ```

pub mod bounds;
pub mod poly;
pub mod rational;
pub mod symfunc;
pub mod verify;

pub use bounds::{
    check_eq1, check_eq2, enclosure, ConstantId, Enclosure, InequalityReport, Refinement, Verdict,
};
pub use poly::{parse_poly, ClassTag, PolyClass, PolyError, Polynomial};
pub use rational::{Fraction, Rational};
pub use symfunc::{sigma_column, sigma_oracle, sigma_table, ColumnStream, SigmaColumn, SigmaError, SigmaTable};
pub use verify::{certify_noninteger, explore_conjecture, Certificate, VerifyError};
