//! Coefficient abstraction shared by every polynomial pipeline.
//!
//! [`QTRat`] is the exact symbolic coefficient and is what all acceptance
//! checks run on. [`QNum`] is an evaluation homomorphism sending (q, t) to
//! a fixed pair of rationals: it carries the value at (q0, t0) *and* at
//! (1/q0, 1/t0), so the parameter-inversion involution stays computable on
//! evaluated data by swapping the two components. It exists for quick
//! regression screening only.

use crate::qt_field::QTRat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes identically under t = q^k")]
    PoleAtSubstitution,
    #[error("denominator vanishes at the evaluation point")]
    BadEvaluationPoint,
    #[error("evaluation parameters not set (call QNum::set_params first)")]
    ParamsUnset,
    #[error("evaluation parameters do not satisfy t = q^k")]
    ParamsNotTQk,
}

/// An element of (an image of) the field Q(q,t).
pub trait QtScalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn try_div(&self, other: &Self) -> Result<Self, ScalarError>;
    /// q^a t^b.
    fn qt_monomial(e_q: i64, e_t: i64) -> Self;
    /// The involution q -> 1/q, t -> 1/t.
    fn invert_params(&self) -> Self;
    /// The specialization t -> q^k.
    fn subst_t_qk(&self, k: u32) -> Result<Self, ScalarError>;
    /// Image of an exact field element.
    fn from_qtrat(r: &QTRat) -> Result<Self, ScalarError>;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl QtScalar for QTRat {
    fn zero() -> Self {
        QTRat::zero()
    }
    fn one() -> Self {
        QTRat::one()
    }
    fn from_int(n: i64) -> Self {
        QTRat::from_int(n)
    }
    fn is_zero(&self) -> bool {
        QTRat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        QTRat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QTRat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        QTRat::mul(self, other)
    }
    fn neg(&self) -> Self {
        QTRat::neg(self)
    }
    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        QTRat::try_div(self, other)
    }
    fn qt_monomial(e_q: i64, e_t: i64) -> Self {
        QTRat::monomial(e_q, e_t)
    }
    fn invert_params(&self) -> Self {
        QTRat::invert_params(self)
    }
    fn subst_t_qk(&self, k: u32) -> Result<Self, ScalarError> {
        QTRat::subst_t_qk(self, k)
    }
    fn from_qtrat(r: &QTRat) -> Result<Self, ScalarError> {
        Ok(r.clone())
    }
}

thread_local! {
    static QNUM_PARAMS: RefCell<Option<(BigRational, BigRational)>> = const { RefCell::new(None) };
}

/// Evaluation scalar for fast-check mode. The first component is the value
/// at (q0, t0), the second the value at (1/q0, 1/t0); this makes the pair
/// a field homomorphism that commutes with parameter inversion.
#[derive(Clone, PartialEq, Debug)]
pub struct QNum {
    v: BigRational,
    w: BigRational,
}

impl QNum {
    /// Fixes the evaluation point for the current thread. Both values must
    /// be nonzero and different from +-1 (otherwise inverse parameters
    /// collide with direct ones and denominators vanish spuriously).
    pub fn set_params(q0: BigRational, t0: BigRational) -> Result<(), ScalarError> {
        let bad = |x: &BigRational| x.is_zero() || x.abs().is_one();
        if bad(&q0) || bad(&t0) {
            return Err(ScalarError::BadEvaluationPoint);
        }
        QNUM_PARAMS.with(|p| *p.borrow_mut() = Some((q0, t0)));
        Ok(())
    }

    pub fn params() -> Option<(BigRational, BigRational)> {
        QNUM_PARAMS.with(|p| p.borrow().clone())
    }

    fn with_params<T>(
        f: impl FnOnce(&BigRational, &BigRational) -> Result<T, ScalarError>,
    ) -> Result<T, ScalarError> {
        match Self::params() {
            Some((q0, t0)) => f(&q0, &t0),
            None => Err(ScalarError::ParamsUnset),
        }
    }
}

fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    // base is nonzero by the set_params contract
    let mut acc = BigRational::one();
    let b = if e >= 0 {
        base.clone()
    } else {
        base.recip()
    };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

impl fmt::Display for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl QtScalar for QNum {
    fn zero() -> Self {
        QNum {
            v: BigRational::zero(),
            w: BigRational::zero(),
        }
    }
    fn one() -> Self {
        QNum {
            v: BigRational::one(),
            w: BigRational::one(),
        }
    }
    fn from_int(n: i64) -> Self {
        let r = BigRational::from(BigInt::from(n));
        QNum { v: r.clone(), w: r }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.w.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        QNum {
            v: &self.v + &other.v,
            w: &self.w + &other.w,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        QNum {
            v: &self.v - &other.v,
            w: &self.w - &other.w,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        QNum {
            v: &self.v * &other.v,
            w: &self.w * &other.w,
        }
    }
    fn neg(&self) -> Self {
        QNum {
            v: -self.v.clone(),
            w: -self.w.clone(),
        }
    }
    fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.v.is_zero() || other.w.is_zero() {
            return Err(if other.is_zero() {
                ScalarError::DivisionByZero
            } else {
                // symbolically nonzero but the sample point hit a zero
                ScalarError::BadEvaluationPoint
            });
        }
        Ok(QNum {
            v: &self.v / &other.v,
            w: &self.w / &other.w,
        })
    }
    fn qt_monomial(e_q: i64, e_t: i64) -> Self {
        Self::with_params(|q0, t0| {
            Ok(QNum {
                v: rat_pow(q0, e_q) * rat_pow(t0, e_t),
                w: rat_pow(q0, -e_q) * rat_pow(t0, -e_t),
            })
        })
        .expect("QNum::qt_monomial requires parameters to be set")
    }
    fn invert_params(&self) -> Self {
        QNum {
            v: self.w.clone(),
            w: self.v.clone(),
        }
    }
    fn subst_t_qk(&self, k: u32) -> Result<Self, ScalarError> {
        // Only valid when the sample point already lies on t = q^k.
        Self::with_params(|q0, t0| {
            if rat_pow(q0, k as i64) != *t0 {
                return Err(ScalarError::ParamsNotTQk);
            }
            Ok(self.clone())
        })
    }
    fn from_qtrat(r: &QTRat) -> Result<Self, ScalarError> {
        Self::with_params(|q0, t0| {
            let v = r.eval(q0, t0)?;
            let w = r.eval(&q0.recip(), &t0.recip())?;
            Ok(QNum { v, w })
        })
    }
}
