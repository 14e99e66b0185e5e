//! Exact symbolic engine for nonsymmetric Macdonald polynomials of type A.
//!
//! Everything here is exact arithmetic over the field Q(q,t): the
//! polynomials E_lambda(x|q,t) are constructed as joint eigenfunctions of
//! rescaled q-Dunkl operators, and the classical identities they satisfy
//! (Cauchy-type kernel expansions, Cherednik scalar-product orthogonality
//! and norms, a reproducing-kernel identity, principal specializations)
//! are verified term by term with no floating point anywhere.
//!
//! Module map:
//! - [`qt_field`]: the coefficient field Q(q,t) (normalized fractions of
//!   integer bivariate polynomials, with gcd reduction).
//! - [`scalar`]: the coefficient abstraction; exact symbolic coefficients
//!   and a rational-evaluation scalar for fast regression screening.
//! - [`laurent`]: sparse multivariate Laurent polynomials over the scalars.
//! - [`hecke_ops`]: Demazure-Lusztig operators H_i, the rotation omega,
//!   and the rescaled q-Dunkl operators M_i.
//! - [`weights`]: compositions, diagram statistics, and all closed-form
//!   coefficients (a_lambda, b_lambda, f_lambda, norms, C_lambda, ...).
//! - [`macdonald`]: construction of E_lambda, parameter-inverted records,
//!   Hecke orbit traversal, and the symmetric P_lambda.
//! - [`kernel_series`]: truncated bigraded Cauchy kernels and their
//!   decompositions in the E- and P-bases.
//! - [`cherednik_ct`]: the scalar product as an exact constant term at
//!   t = q^k, and the reproducing-kernel check.
//! - [`suites`]: named verification suites shared by the CLI and the
//!   acceptance tests.

pub mod cherednik_ct;
pub mod hecke_ops;
pub mod kernel_series;
pub mod laurent;
pub mod linalg;
pub mod macdonald;
pub mod qt_field;
pub mod scalar;
pub mod suites;
pub mod weights;

pub use qt_field::{QTPoly, QTRat};
pub use scalar::{QNum, QtScalar, ScalarError};
