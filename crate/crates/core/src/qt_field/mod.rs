//! Exact arithmetic in the coefficient field Q(q,t).
//!
//! Every quantity in this crate is ultimately a fully reduced fraction of
//! bivariate integer polynomials in (q, t). Reduction runs a bivariate gcd
//! (primitive-part recursion through Z -> Z[q] -> Z[q][t] with a
//! subresultant remainder sequence), so two arithmetic routes to the same
//! value always produce structurally identical results.

mod poly;
mod rat;
mod upoly;

pub use poly::QTPoly;
pub use rat::QTRat;
