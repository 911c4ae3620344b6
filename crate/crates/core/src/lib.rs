//! Exact counts of multiset permutations by descent set.
//!
//! For a descent set `I` and positive `n`, `m`, `d^m(I, n)` is the number of
//! permutations of `{1^m, 2^m, ..., n^m}` whose descent set is exactly `I`.
//! This crate computes it four independent ways:
//!
//! * [`oracle::count_naive`] walks every distinct permutation;
//! * [`oracle::count_prefix`] walks only the first `max(I)` letters;
//! * [`formulas::descent_count`] uses the recurrence through `D^m(I, n)`;
//! * [`schur::count_via_jacobi_trudi`] expands the ribbon Schur function.
//!
//! For `m` at or above the stabilization point the count is the polynomial
//! [`formulas::d_infinity`], whose coefficients in the bases `C(n+k, i)` are
//! handled by [`polybasis`].
//!
//! Polynomial routines are generic over [`Scalar`]; the aliases below fix
//! the arbitrary-precision choice used by the counting routines.

pub mod composition;
pub mod descent;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod polybasis;
pub mod report;
pub mod scalar;
pub mod schur;
pub mod suite;

pub use composition::{compositions, f_beta, Composition};
pub use descent::{descent_set, DescentSet};
pub use error::{Error, Result};
pub use oracle::EnumerationBudget;
pub use polybasis::BinomialBasisPoly;
pub use report::{Check, Report};
pub use scalar::Scalar;

/// Exact nonnegative count.
pub type Count = num_bigint::BigUint;
/// Exact signed value of a polynomial or coefficient.
pub type Coeff = num_bigint::BigInt;
/// Binomial-basis polynomial over arbitrary-precision integers.
pub type BigBasisPoly = BinomialBasisPoly<Coeff>;
/// Binomial-basis polynomial over `i64`, for small sets only.
pub type SmallBasisPoly = BinomialBasisPoly<i64>;
