//! Dense univariate polynomial arithmetic over a GCD domain, used as the
//! engine behind the bivariate gcd: once over Z (polynomials in q), and
//! once over Z[q] (polynomials in t with Z[q] coefficients).
//!
//! The gcd follows the classical subresultant remainder sequence with
//! integer-content extraction, so every division below is exact in the
//! coefficient domain.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt::Debug;

/// A GCD domain with exact division and a canonical (sign-normalized)
/// associate. Implemented for `BigInt` and for `Vec<BigInt>` (dense
/// univariate polynomials over Z), which is what makes the recursion
/// Z -> Z[q] -> Z[q][t] work with one body of code.
pub(crate) trait Dom: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact division; `None` when `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;
    /// Canonical gcd (nonnegative / positive leading coefficient).
    fn gcd(&self, other: &Self) -> Self;
    /// True when the canonical associate differs from `self` by -1.
    fn is_negative(&self) -> bool;
}

impl Dom for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Dense coefficients, lowest degree first, no trailing zeros.
pub(crate) type UPoly<D> = Vec<D>;

pub(crate) fn up_trim<D: Dom>(p: &mut UPoly<D>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn up_is_zero<D: Dom>(p: &UPoly<D>) -> bool {
    p.is_empty()
}

pub(crate) fn up_deg<D: Dom>(p: &UPoly<D>) -> usize {
    debug_assert!(!p.is_empty());
    p.len() - 1
}

pub(crate) fn up_lc<D: Dom>(p: &UPoly<D>) -> &D {
    p.last().expect("leading coefficient of zero polynomial")
}

pub(crate) fn up_add<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> UPoly<D> {
    let mut out: UPoly<D> = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    up_trim(&mut out);
    out
}

pub(crate) fn up_sub<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> UPoly<D> {
    let mut out: UPoly<D> = Vec::with_capacity(a.len().max(b.len()));
    for i in 0..a.len().max(b.len()) {
        let x = match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.sub(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.neg(),
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    up_trim(&mut out);
    out
}

pub(crate) fn up_neg<D: Dom>(a: &UPoly<D>) -> UPoly<D> {
    a.iter().map(|c| c.neg()).collect()
}

pub(crate) fn up_mul<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> UPoly<D> {
    if up_is_zero(a) || up_is_zero(b) {
        return Vec::new();
    }
    let mut out: UPoly<D> = vec![D::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    up_trim(&mut out);
    out
}

pub(crate) fn up_scale<D: Dom>(a: &UPoly<D>, s: &D) -> UPoly<D> {
    if s.is_zero() {
        return Vec::new();
    }
    let mut out: UPoly<D> = a.iter().map(|c| c.mul(s)).collect();
    up_trim(&mut out);
    out
}

/// Divides every coefficient exactly by `s`; panics if not exact (callers
/// only divide by known common factors).
pub(crate) fn up_exact_div_scalar<D: Dom>(a: &UPoly<D>, s: &D) -> UPoly<D> {
    a.iter()
        .map(|c| c.exact_div(s).expect("inexact scalar division in PRS"))
        .collect()
}

/// Content: gcd of all coefficients, canonical associate. Zero for zero.
pub(crate) fn up_content<D: Dom>(a: &UPoly<D>) -> D {
    let mut g = D::zero();
    for c in a {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.clone() } else { g.gcd(c) };
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn up_primitive<D: Dom>(a: &UPoly<D>) -> UPoly<D> {
    if up_is_zero(a) {
        return Vec::new();
    }
    let mut c = up_content(a);
    if up_lc(a).is_negative() {
        c = c.neg();
    }
    up_exact_div_scalar(a, &c)
}

/// Pseudo-remainder: the R with lc(b)^(deg a - deg b + 1) * a = q*b + R.
pub(crate) fn up_pseudo_rem<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> UPoly<D> {
    debug_assert!(!up_is_zero(b));
    let db = up_deg(b);
    let lcb = up_lc(b).clone();
    let mut r = a.clone();
    if up_is_zero(&r) || up_deg(&r) < db {
        // lc(b)^(e) * a with e = 0 by convention when deg a < deg b
        return r;
    }
    let mut e = up_deg(&r) as i64 - db as i64 + 1;
    while !up_is_zero(&r) && up_deg(&r) >= db {
        let dr = up_deg(&r);
        let lead = up_lc(&r).clone();
        // r <- lc(b)*r - lead * x^(dr-db) * b
        let mut shifted: UPoly<D> = vec![D::zero(); dr - db];
        shifted.extend(b.iter().map(|c| c.mul(&lead)));
        r = up_sub(&up_scale(&r, &lcb), &shifted);
        e -= 1;
    }
    for _ in 0..e {
        r = up_scale(&r, &lcb);
    }
    r
}

/// Exact polynomial division; `None` if `b` does not divide `a`.
pub(crate) fn up_exact_div<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> Option<UPoly<D>> {
    if up_is_zero(b) {
        return None;
    }
    if up_is_zero(a) {
        return Some(Vec::new());
    }
    if up_deg(a) < up_deg(b) {
        return None;
    }
    let db = up_deg(b);
    let mut r = a.clone();
    let mut q: UPoly<D> = vec![D::zero(); up_deg(a) - db + 1];
    while !up_is_zero(&r) && up_deg(&r) >= db {
        let dr = up_deg(&r);
        let c = up_lc(&r).exact_div(up_lc(b))?;
        q[dr - db] = c.clone();
        let mut shifted: UPoly<D> = vec![D::zero(); dr - db];
        shifted.extend(b.iter().map(|x| x.mul(&c)));
        r = up_sub(&r, &shifted);
        if !up_is_zero(&r) && up_deg(&r) >= dr {
            return None; // no cancellation: not divisible
        }
    }
    if up_is_zero(&r) {
        up_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn pow<D: Dom>(base: &D, e: usize) -> D {
    let mut out = D::one();
    for _ in 0..e {
        out = out.mul(base);
    }
    out
}

/// Primitive gcd via the subresultant PRS, content included in the result.
pub(crate) fn up_gcd<D: Dom>(a: &UPoly<D>, b: &UPoly<D>) -> UPoly<D> {
    if up_is_zero(a) {
        return up_primitive_times_content(b);
    }
    if up_is_zero(b) {
        return up_primitive_times_content(a);
    }
    let ca = up_content(a);
    let cb = up_content(b);
    let c = ca.gcd(&cb);
    let mut f = up_exact_div_scalar(a, &ca);
    let mut g = up_exact_div_scalar(b, &cb);
    if up_deg(&f) < up_deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    let mut gg = D::one();
    let mut h = D::one();
    loop {
        let delta = up_deg(&f) - up_deg(&g);
        let r = up_pseudo_rem(&f, &g);
        if up_is_zero(&r) {
            break;
        }
        if up_deg(&r) == 0 {
            // gcd of the primitive parts is trivial
            g = vec![D::one()];
            break;
        }
        f = g;
        let divisor = gg.mul(&pow(&h, delta));
        g = up_exact_div_scalar(&r, &divisor);
        gg = up_lc(&f).clone();
        h = if delta == 0 {
            h
        } else {
            pow(&gg, delta)
                .exact_div(&pow(&h, delta - 1))
                .expect("inexact h update in subresultant PRS")
        };
    }
    let mut out = up_scale(&up_primitive(&g), &c);
    if up_lc(&out).is_negative() {
        out = up_neg(&out);
    }
    out
}

fn up_primitive_times_content<D: Dom>(a: &UPoly<D>) -> UPoly<D> {
    if up_is_zero(a) {
        return Vec::new();
    }
    if up_lc(a).is_negative() {
        up_neg(a)
    } else {
        a.clone()
    }
}

/// Z[q] as a GCD domain, so the same engine runs one level up for Z[q][t].
impl Dom for Vec<BigInt> {
    fn zero() -> Self {
        Vec::new()
    }
    fn one() -> Self {
        vec![BigInt::from(1)]
    }
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
    fn is_one(&self) -> bool {
        self.len() == 1 && self[0] == BigInt::from(1)
    }
    fn add(&self, other: &Self) -> Self {
        up_add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        up_sub(self, other)
    }
    fn neg(&self) -> Self {
        up_neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        up_mul(self, other)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        up_exact_div(self, other)
    }
    fn gcd(&self, other: &Self) -> Self {
        up_gcd(self, other)
    }
    fn is_negative(&self) -> bool {
        self.last().is_some_and(Signed::is_negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(coeffs: &[i64]) -> UPoly<BigInt> {
        let mut v: UPoly<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        up_trim(&mut v);
        v
    }

    #[test]
    fn gcd_over_z_common_factor() {
        // (1+q)(1-q) and (1+q)^2 share (1+q)
        let a = up_mul(&zp(&[1, 1]), &zp(&[1, -1]));
        let b = up_mul(&zp(&[1, 1]), &zp(&[1, 1]));
        assert_eq!(up_gcd(&a, &b), zp(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_is_content() {
        let a = zp(&[2, 2]); // 2(1+q)
        let b = zp(&[4, 0, 4]); // 4(1+q^2)
        assert_eq!(up_gcd(&a, &b), zp(&[2]));
    }

    #[test]
    fn exact_div_detects_failure() {
        let a = zp(&[1, 0, 1]);
        let b = zp(&[1, 1]);
        assert!(up_exact_div(&a, &b).is_none());
        let prod = up_mul(&a, &b);
        assert_eq!(up_exact_div(&prod, &b), Some(a));
    }

    #[test]
    fn pseudo_rem_degree_drops() {
        let a = zp(&[1, 2, 3, 4]);
        let b = zp(&[5, 6, 7]);
        let r = up_pseudo_rem(&a, &b);
        assert!(up_is_zero(&r) || up_deg(&r) < up_deg(&b));
    }

    #[test]
    fn bivariate_gcd_through_nested_dom() {
        // In Z[q][t]: a = (t - q) * (t + 1), b = (t - q) * (q*t + 2)
        let tq: UPoly<Vec<BigInt>> = vec![zp(&[0, -1]), zp(&[1])];
        let tp1: UPoly<Vec<BigInt>> = vec![zp(&[1]), zp(&[1])];
        let qt2: UPoly<Vec<BigInt>> = vec![zp(&[2]), zp(&[0, 1])];
        let a = up_mul(&tq, &tp1);
        let b = up_mul(&tq, &qt2);
        assert_eq!(up_gcd(&a, &b), tq);
    }
}
