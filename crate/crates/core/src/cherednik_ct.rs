//! Cherednik's scalar product as an exact constant term at t = q^k, and
//! the reproducing-kernel identity.
//!
//! At t = q^k the weight function collapses to the Laurent polynomial
//!
//!   w(y) = prod_{i<j} (y_i/y_j; q)_k (q y_j/y_i; q)_k,
//!
//! so the torus integral defining
//!
//!   (f, g) = CT_y [ f(y|q,t) g(y^{-1}|q^{-1},t^{-1}) w(y|q,t) ]
//!
//! is literally the coefficient of y^0. No numerical quadrature exists
//! anywhere; everything here is constant-term extraction.
//!
//! The reproducing kernel is expanded through
//!
//!   K(x;y|q,q^k) = prod_{i,j} 1/(q^{theta(i>j)} x_i/y_j; q)_{k + delta_ij}
//!
//! with 1/(z;q)_m = sum_l ((q^m;q)_l/(q;q)_l) z^l, truncated at total
//! x-degree D; integrating it against E_lambda(y) w(y) must return
//! C_lambda E_lambda(x) in degrees <= D and zero elsewhere.

use crate::kernel_series::qbinomial_coeff;
use crate::laurent::LPoly;
use crate::macdonald::{compute_e, MacdonaldError};
use crate::scalar::{QtScalar, ScalarError};
use crate::weights::{c_lambda, Composition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CherednikError {
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The weight Laurent polynomial at t = q^k.
#[derive(Clone, PartialEq, Debug)]
pub struct CTWeight<C: QtScalar> {
    pub n: usize,
    pub k: u32,
    pub poly: LPoly<C>,
}

/// w(y|q,q^k) = prod_{i<j} (y_i/y_j; q)_k (q y_j/y_i; q)_k, expanded.
pub fn weight_poly<C: QtScalar>(n: usize, k: u32) -> CTWeight<C> {
    let mut poly = LPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..k {
                // (1 - q^l y_i/y_j)
                let mut e = vec![0; n];
                e[i] = 1;
                e[j] = -1;
                let f1 = LPoly::one(n).sub(&LPoly::monomial(n, e, C::qt_monomial(l as i64, 0)));
                // (1 - q^{l+1} y_j/y_i)
                let mut e = vec![0; n];
                e[i] = -1;
                e[j] = 1;
                let f2 =
                    LPoly::one(n).sub(&LPoly::monomial(n, e, C::qt_monomial(l as i64 + 1, 0)));
                poly = poly.mul(&f1).mul(&f2);
            }
        }
    }
    CTWeight { n, k, poly }
}

/// Pairs h against w through the constant term: CT(h w) = sum_e h_e w_{-e}.
fn ct_pair<C: QtScalar>(h: &LPoly<C>, w: &LPoly<C>) -> C {
    let mut acc = C::zero();
    for (e, c) in h.terms() {
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        let wc = w.coeff(&neg);
        if !wc.is_zero() {
            acc = acc.add(&c.mul(&wc));
        }
    }
    acc
}

/// Cherednik's scalar product of two polynomials at t = q^k: the first
/// argument is specialized directly, the second has its parameters
/// inverted first (then t = q^k, i.e. t^{-1} = q^{-k}) and its variables
/// replaced by their inverses.
pub fn scalar_product<C: QtScalar>(
    f: &LPoly<C>,
    g: &LPoly<C>,
    n: usize,
    k: u32,
) -> Result<C, CherednikError> {
    let w = weight_poly::<C>(n, k);
    scalar_product_prepared(f, g, &w)
}

/// Scalar product against a precomputed weight; callers pairing many
/// polynomials at one (n, k) reuse the expanded weight this way.
pub fn scalar_product_prepared<C: QtScalar>(
    f: &LPoly<C>,
    g: &LPoly<C>,
    w: &CTWeight<C>,
) -> Result<C, CherednikError> {
    assert_eq!(f.nvars(), w.n);
    assert_eq!(g.nvars(), w.n);
    let fk = f.try_map_coeffs(|c| c.subst_t_qk(w.k))?;
    let gk = g
        .try_map_coeffs(|c| c.invert_params().subst_t_qk(w.k))?
        .invert_vars();
    let h = fk.mul(&gk);
    Ok(ct_pair(&h, &w.poly))
}

/// Truncated reproducing kernel K(x;y|q,q^k) in the 2n-variable ring
/// (x first, then y; y-exponents are negative), total x-degree <= d_max.
pub fn reproducing_kernel_trunc<C: QtScalar>(n: usize, k: u32, d_max: usize) -> LPoly<C> {
    let mut acc = LPoly::one(2 * n);
    for i in 0..n {
        for j in 0..n {
            let theta = if i > j { 1 } else { 0 };
            let m = k as i64 + if i == j { 1 } else { 0 };
            let mut factor = LPoly::zero(2 * n);
            for l in 0..=d_max {
                let c = qbinomial_coeff::<C>((m, 0), l)
                    .mul(&C::qt_monomial(theta * l as i64, 0));
                let mut e = vec![0; 2 * n];
                e[i] = l as i32;
                e[n + j] = -(l as i32);
                factor.add_term(e, c);
            }
            acc = acc
                .mul(&factor)
                .retain_by(|e| e[..n].iter().sum::<i32>() <= d_max as i32);
        }
    }
    acc
}

/// Outcome of the reproducing-kernel check, with both sides kept for
/// reporting.
#[derive(Clone, PartialEq, Debug)]
pub struct ReproducingReport<C: QtScalar> {
    pub passed: bool,
    pub lhs: LPoly<C>,
    pub expected: LPoly<C>,
}

/// Expands K(x;y|q,q^k) to x-degree d_max, multiplies by
/// E_lambda(y|q,q^k) w(y), takes the exact constant term in y, and
/// compares with C_lambda E_lambda(x|q,q^k).
pub fn reproducing_check<C: QtScalar>(
    lambda: &Composition,
    n: usize,
    k: u32,
    d_max: usize,
) -> Result<ReproducingReport<C>, CherednikError> {
    assert_eq!(lambda.len(), n);
    assert!(d_max >= lambda.weight() as usize);
    let e_rec = compute_e::<C>(lambda)?;
    let ek = e_rec.poly.try_map_coeffs(|c| c.subst_t_qk(k))?;
    let w = weight_poly::<C>(n, k);
    let a = ek.mul(&w.poly); // a(y) = E_lambda(y) w(y)
    let kernel = reproducing_kernel_trunc::<C>(n, k, d_max);
    // CT_y(K * a): a kernel term x^ex y^ey pairs with the coefficient of
    // y^{-ey} in a
    let mut lhs = LPoly::zero(n);
    for (e, c) in kernel.terms() {
        let neg: Vec<i32> = e[n..].iter().map(|x| -x).collect();
        let ac = a.coeff(&neg);
        if !ac.is_zero() {
            lhs.add_term(e[..n].to_vec(), c.mul(&ac));
        }
    }
    let c_const = C::from_qtrat(&c_lambda(lambda, k))?;
    let expected = ek.scalar_mul(&c_const);
    Ok(ReproducingReport {
        passed: lhs == expected,
        lhs,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_field::QTRat;
    use crate::weights::{compositions_of, norm_closed_form, NormMode};

    fn c(parts: &[i32]) -> Composition {
        Composition::of(parts)
    }

    fn e_poly(lam: &Composition) -> LPoly<QTRat> {
        compute_e::<QTRat>(lam).unwrap().poly
    }

    #[test]
    fn weight_examples() {
        // n=2, k=1: (1 - y1/y2)(1 - q y2/y1) = (1+q) - y1/y2 - q y2/y1
        let w = weight_poly::<QTRat>(2, 1);
        assert_eq!(w.poly.num_terms(), 3);
        assert_eq!(
            w.poly.coeff(&[0, 0]),
            QTRat::one().add(&QTRat::monomial(1, 0))
        );
        assert_eq!(w.poly.coeff(&[1, -1]), QTRat::from_int(-1));
        assert_eq!(w.poly.coeff(&[-1, 1]), QTRat::monomial(1, 0).neg());
        // k=0 is the empty product
        assert_eq!(weight_poly::<QTRat>(2, 0).poly, LPoly::one(2));
        // n=3, k=1 is a product of 6 binomial factors
        let w3 = weight_poly::<QTRat>(3, 1);
        assert!(w3.poly.num_terms() <= 64);
        assert!(!w3.poly.is_zero());
    }

    #[test]
    fn scalar_product_examples() {
        // (E_(1,0), E_(0,1)) = 0 at n=2, k=1
        let sp = scalar_product(&e_poly(&c(&[1, 0])), &e_poly(&c(&[0, 1])), 2, 1).unwrap();
        assert!(sp.is_zero());
        // (E_(0,0), E_(0,0)) = 1 + q
        let one: LPoly<QTRat> = LPoly::one(2);
        let sp = scalar_product(&one, &one, 2, 1).unwrap();
        assert_eq!(sp, QTRat::one().add(&QTRat::monomial(1, 0)));
        // (E_(0,1), E_(0,1)) = 1 + q
        let sp = scalar_product(&e_poly(&c(&[0, 1])), &e_poly(&c(&[0, 1])), 2, 1).unwrap();
        assert_eq!(sp, QTRat::one().add(&QTRat::monomial(1, 0)));
    }

    #[test]
    fn norms_match_closed_form_n2_k1() {
        for d in 0..=2 {
            for lam in compositions_of(d, 2) {
                let e = e_poly(&lam);
                let sp = scalar_product(&e, &e, 2, 1).unwrap();
                let want = norm_closed_form(&lam, NormMode::TEqQk(1));
                assert_eq!(sp, want, "{lam}");
            }
        }
    }

    #[test]
    fn reproducing_n1_examples() {
        // lambda = (0): left side is identically C_0 = 1
        let rep = reproducing_check::<QTRat>(&c(&[0]), 1, 1, 2).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.lhs, LPoly::one(1));
        // lambda = (1): left side is (1+q) x
        let rep = reproducing_check::<QTRat>(&c(&[1]), 1, 1, 2).unwrap();
        assert!(rep.passed);
        let want = LPoly::var(1, 0).scalar_mul(&QTRat::one().add(&QTRat::monomial(1, 0)));
        assert_eq!(rep.lhs, want);
    }

    #[test]
    fn reproducing_n2_zero_lambda() {
        // lambda = (0,0), k=1, D=1: (1+q) with zero degree-1 part
        let rep = reproducing_check::<QTRat>(&c(&[0, 0]), 2, 1, 1).unwrap();
        assert!(rep.passed);
        assert_eq!(
            rep.lhs,
            LPoly::constant(2, QTRat::one().add(&QTRat::monomial(1, 0)))
        );
    }
}
