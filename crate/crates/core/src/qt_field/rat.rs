//! The coefficient field Q(q,t): fully reduced fractions of integer
//! polynomials, with the parameter inversion q -> 1/q, t -> 1/t and finite
//! q-Pochhammer products.

use super::poly::QTPoly;
use crate::scalar::ScalarError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// An element of Q(q,t). Invariants: `den` is nonzero, gcd(num, den) = 1
/// (integer content included), and the leading coefficient of `den` in
/// graded order is positive. Equality is plain structural equality.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QTRat {
    num: QTPoly,
    den: QTPoly,
}

impl QTRat {
    /// Builds num/den and normalizes. Errors when `den` is zero.
    pub fn new(num: QTPoly, den: QTPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QTRat {
                num: QTPoly::zero(),
                den: QTPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd must divide numerator");
        let mut den = den.exact_div(&g).expect("gcd must divide denominator");
        if den.canonical_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QTRat { num, den })
    }

    pub fn from_poly(num: QTPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        QTRat {
            num,
            den: QTPoly::one(),
        }
    }

    pub fn zero() -> Self {
        QTRat {
            num: QTPoly::zero(),
            den: QTPoly::one(),
        }
    }

    pub fn one() -> Self {
        QTRat {
            num: QTPoly::one(),
            den: QTPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(QTPoly::from_int(n))
    }

    /// q^a t^b with arbitrary (possibly negative) exponents.
    pub fn monomial(e_q: i64, e_t: i64) -> Self {
        let nq = e_q.max(0) as u32;
        let nt = e_t.max(0) as u32;
        let dq = (-e_q).max(0) as u32;
        let dt = (-e_t).max(0) as u32;
        QTRat {
            num: QTPoly::monomial(nq, nt, BigInt::one()),
            den: QTPoly::monomial(dq, dt, BigInt::one()),
        }
    }

    /// 1 - q^a t^b for arbitrary integer exponents.
    pub fn one_minus_monomial(e_q: i64, e_t: i64) -> Self {
        Self::one().sub(&Self::monomial(e_q, e_t))
    }

    pub fn num(&self) -> &QTPoly {
        &self.num
    }

    pub fn den(&self) -> &QTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        QTRat::new(num, den).expect("denominator product is nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QTRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-reduce first; the result is then already fully reduced.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let n2 = other.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let d2 = other.den.exact_div(&g1).unwrap();
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.canonical_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        QTRat { num, den }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.canonical_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QTRat { num, den })
    }

    /// The involutive field automorphism q -> q^{-1}, t -> t^{-1}:
    /// negative exponents are cleared by a common monomial, then the
    /// fraction is renormalized.
    pub fn invert_params(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let aq = self.num.deg_q().max(self.den.deg_q());
        let at = self.num.deg_t().max(self.den.deg_t());
        QTRat::new(self.num.reflect(aq, at), self.den.reflect(aq, at))
            .expect("reflection preserves nonzero denominators")
    }

    /// Finite q-Pochhammer product: with base a = q^{a_q} t^{a_t},
    /// returns (a;q)_m = prod_{i=0}^{m-1} (1 - a q^i).
    pub fn qpoch(a_exp: (i64, i64), m: u32) -> Self {
        let mut out = Self::one();
        for i in 0..m {
            out = out.mul(&Self::one_minus_monomial(a_exp.0 + i as i64, a_exp.1));
        }
        out
    }

    /// Substitution t -> q^k. Errors if the reduced denominator vanishes
    /// identically under the substitution.
    pub fn subst_t_qk(&self, k: u32) -> Result<Self, ScalarError> {
        let den = self.den.subst_t_qk(k);
        if den.is_zero() {
            return Err(ScalarError::PoleAtSubstitution);
        }
        QTRat::new(self.num.subst_t_qk(k), den)
    }

    /// Exact evaluation at rational (q0, t0); errors when the denominator
    /// vanishes at the point.
    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0, t0);
        if d.is_zero() {
            return Err(ScalarError::BadEvaluationPoint);
        }
        Ok(self.num.eval(q0, t0) / d)
    }
}

impl fmt::Display for QTRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, u32, i64)]) -> QTPoly {
        let mut p = QTPoly::zero();
        for &(eq, et, c) in terms {
            p.add_term(eq, et, BigInt::from(c));
        }
        p
    }

    fn q() -> QTRat {
        QTRat::monomial(1, 0)
    }

    #[test]
    fn construction_simplifies_common_factor() {
        // (q^2 - q*t)/(q - t) = q
        let num = poly(&[(2, 0, 1), (1, 1, -1)]);
        let den = poly(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(QTRat::new(num, den).unwrap(), q());
    }

    #[test]
    fn construction_cancels_exactly() {
        // (1 - q*t)(1 - q) / (1 - q) = 1 - q*t
        let omqt = poly(&[(0, 0, 1), (1, 1, -1)]);
        let omq = poly(&[(0, 0, 1), (1, 0, -1)]);
        let r = QTRat::new(omqt.mul(&omq), omq).unwrap();
        assert_eq!(r, QTRat::from_poly(poly(&[(0, 0, 1), (1, 1, -1)])));
    }

    #[test]
    fn zero_normalizes_denominator() {
        let den = poly(&[(0, 0, 1), (1, 2, -1)]);
        let r = QTRat::new(QTPoly::zero(), den).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            QTRat::one().try_div(&QTRat::zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert!(QTRat::new(QTPoly::one(), QTPoly::zero()).is_err());
    }

    #[test]
    fn invert_params_examples() {
        // 1 - q*t -> (q*t - 1)/(q*t)
        let a = QTRat::one_minus_monomial(1, 1);
        let expect = QTRat::new(poly(&[(1, 1, 1), (0, 0, -1)]), poly(&[(1, 1, 1)])).unwrap();
        assert_eq!(a.invert_params(), expect);
        // (1 - t)/(1 - q) -> q(1 - t)/(t(1 - q)) = (q*t - q)/(q*t - t)
        let b = QTRat::new(poly(&[(0, 0, 1), (0, 1, -1)]), poly(&[(0, 0, 1), (1, 0, -1)]))
            .unwrap();
        let expect =
            QTRat::new(poly(&[(1, 1, 1), (1, 0, -1)]), poly(&[(1, 1, 1), (0, 1, -1)])).unwrap();
        assert_eq!(b.invert_params(), expect);
        // constants are fixed
        let five = QTRat::from_int(5);
        assert_eq!(five.invert_params(), five);
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(QTRat::qpoch((1, 0), 1), QTRat::one_minus_monomial(1, 0));
        let expect = QTRat::one_minus_monomial(0, 1).mul(&QTRat::one_minus_monomial(1, 1));
        assert_eq!(QTRat::qpoch((0, 1), 2), expect);
        assert_eq!(QTRat::qpoch((2, 0), 1), QTRat::one_minus_monomial(2, 0));
        assert_eq!(QTRat::qpoch((1, 1), 0), QTRat::one());
    }

    #[test]
    fn display_fraction() {
        let r = QTRat::new(poly(&[(1, 0, 1), (1, 1, -1)]), poly(&[(0, 0, 1), (1, 1, -1)]))
            .unwrap();
        assert_eq!(r.to_string(), "(q - q*t)/(1 - q*t)");
        assert_eq!(QTRat::from_int(-3).to_string(), "-3");
    }

    #[test]
    fn subst_and_eval() {
        // (1 - t)/(1 - q) at t = q^2 gives (1 - q^2)/(1 - q) = 1 + q
        let b = QTRat::new(poly(&[(0, 0, 1), (0, 1, -1)]), poly(&[(0, 0, 1), (1, 0, -1)]))
            .unwrap();
        let s = b.subst_t_qk(2).unwrap();
        assert_eq!(s, QTRat::from_poly(poly(&[(0, 0, 1), (1, 0, 1)])));
        let q0 = BigRational::new(BigInt::from(1), BigInt::from(3));
        let t0 = BigRational::new(BigInt::from(1), BigInt::from(9));
        let v = b.eval(&q0, &t0).unwrap();
        assert_eq!(v, BigRational::new(BigInt::from(4), BigInt::from(3)));
    }
}
