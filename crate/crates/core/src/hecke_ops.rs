//! The operator algebra acting on Laurent polynomials, in rescaled form
//! free of half-integer t-powers:
//!
//!   H_i f = t f + ((x_{i+1} - t x_i)/(x_{i+1} - x_i)) (s_i f - f)
//!
//! (the Demazure-Lusztig operator scaled by t^{1/2}), its inverse
//! H_i^{-1} = (H_i - (t - 1))/t coming from the quadratic relation
//! (H_i - t)(H_i + 1) = 0, the rotation
//!
//!   (omega f)(x_1, ..., x_n) = f(q x_n, x_1, ..., x_{n-1}),
//!
//! and the commuting family
//!
//!   M_i = H_i ... H_{n-1} omega H_1^{-1} ... H_{i-1}^{-1}
//!
//! of rescaled q-Dunkl operators (M_i = t^{(n+1-2i)/2} Y_i). Operator
//! products act rightmost-first throughout.
//!
//! All functions here take a variable window (offset, n) so the same code
//! drives both plain n-variable polynomials and the x- or y-block of a
//! 2n-variable kernel.

use crate::laurent::LPoly;
use crate::scalar::QtScalar;

/// A window of `n` consecutive variables starting at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarBlock {
    pub offset: usize,
    pub n: usize,
}

impl VarBlock {
    pub fn whole(n: usize) -> Self {
        VarBlock { offset: 0, n }
    }

    pub fn x_of(n: usize) -> Self {
        VarBlock { offset: 0, n }
    }

    pub fn y_of(n: usize) -> Self {
        VarBlock { offset: n, n }
    }
}

/// s_i within the block (1 <= i <= n-1).
pub fn apply_s_in<C: QtScalar>(block: VarBlock, i: usize, f: &LPoly<C>) -> LPoly<C> {
    assert!(i >= 1 && i < block.n);
    f.swap_vars(block.offset + i - 1, block.offset + i)
}

/// H_i within the block.
pub fn apply_h_in<C: QtScalar>(block: VarBlock, i: usize, f: &LPoly<C>) -> LPoly<C> {
    assert!(i >= 1 && i < block.n);
    let a = block.offset + i - 1;
    let t = C::qt_monomial(0, 1);
    let sf = f.swap_vars(a, a + 1);
    let diff = sf.sub(f);
    let quot = diff
        .div_diff(a)
        .expect("s_i f - f must be divisible by x_i - x_{i+1}");
    // t*f - (x_{i+1} - t*x_i) * quot, where quot = (s_i f - f)/(x_i - x_{i+1})
    let mut d_hi = vec![0; f.nvars()];
    d_hi[a + 1] = 1;
    let mut d_lo = vec![0; f.nvars()];
    d_lo[a] = 1;
    let corr = quot
        .mul_by_monomial(&d_hi)
        .sub(&quot.mul_by_monomial(&d_lo).scalar_mul(&t));
    f.scalar_mul(&t).sub(&corr)
}

/// H_i^{-1} within the block: (H_i - (t-1))/t.
pub fn apply_h_inv_in<C: QtScalar>(block: VarBlock, i: usize, f: &LPoly<C>) -> LPoly<C> {
    let t = C::qt_monomial(0, 1);
    let tm1 = t.sub(&C::one());
    let h = apply_h_in(block, i, f);
    h.sub(&f.scalar_mul(&tm1)).scalar_mul(&C::qt_monomial(0, -1))
}

/// omega^{+1} or omega^{-1} within the block.
///
/// omega maps x^mu to q^{mu_1} x_1^{mu_2} ... x_{n-1}^{mu_n} x_n^{mu_1};
/// the inverse rotates the other way and divides by q^{mu_n}.
pub fn apply_omega_in<C: QtScalar>(block: VarBlock, e: i8, f: &LPoly<C>) -> LPoly<C> {
    assert!(e == 1 || e == -1);
    let (o, n) = (block.offset, block.n);
    let mut out = LPoly::zero(f.nvars());
    for (exps, c) in f.terms() {
        let mut ne = exps.clone();
        let qpow: i64;
        if e == 1 {
            // (mu_1, ..., mu_n) -> (mu_2, ..., mu_n, mu_1) with q^{mu_1}
            qpow = exps[o] as i64;
            for j in 0..n - 1 {
                ne[o + j] = exps[o + j + 1];
            }
            ne[o + n - 1] = exps[o];
        } else {
            // (mu_1, ..., mu_n) -> (mu_n, mu_1, ..., mu_{n-1}) with q^{-mu_n}
            qpow = -(exps[o + n - 1] as i64);
            for j in (1..n).rev() {
                ne[o + j] = exps[o + j - 1];
            }
            ne[o] = exps[o + n - 1];
        }
        out.add_term(ne, c.mul(&C::qt_monomial(qpow, 0)));
    }
    out
}

/// M_i within the block (1 <= i <= n), composed rightmost-first.
pub fn apply_m_in<C: QtScalar>(block: VarBlock, i: usize, f: &LPoly<C>) -> LPoly<C> {
    assert!(i >= 1 && i <= block.n);
    let mut g = f.clone();
    for j in (1..i).rev() {
        g = apply_h_inv_in(block, j, &g);
    }
    g = apply_omega_in(block, 1, &g);
    for j in (i..block.n).rev() {
        g = apply_h_in(block, j, &g);
    }
    g
}

pub fn apply_s<C: QtScalar>(i: usize, f: &LPoly<C>) -> LPoly<C> {
    apply_s_in(VarBlock::whole(f.nvars()), i, f)
}

pub fn apply_h<C: QtScalar>(i: usize, f: &LPoly<C>) -> LPoly<C> {
    apply_h_in(VarBlock::whole(f.nvars()), i, f)
}

pub fn apply_h_inv<C: QtScalar>(i: usize, f: &LPoly<C>) -> LPoly<C> {
    apply_h_inv_in(VarBlock::whole(f.nvars()), i, f)
}

pub fn apply_omega<C: QtScalar>(e: i8, f: &LPoly<C>) -> LPoly<C> {
    apply_omega_in(VarBlock::whole(f.nvars()), e, f)
}

pub fn apply_m<C: QtScalar>(i: usize, f: &LPoly<C>) -> LPoly<C> {
    apply_m_in(VarBlock::whole(f.nvars()), i, f)
}

/// The operators with parameters (q^{-1}, t^{-1}): conjugation of M_i by
/// the coefficient-wise parameter inversion.
pub fn apply_m_inverted_params<C: QtScalar>(i: usize, f: &LPoly<C>) -> LPoly<C> {
    let g = f.map_coeffs(|c| c.invert_params());
    apply_m(i, &g).map_coeffs(|c| c.invert_params())
}
