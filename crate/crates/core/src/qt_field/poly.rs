//! Bivariate integer polynomials in (q, t): the numerators and
//! denominators of the coefficient field Q(q,t).

use super::upoly::{self, UPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in q and t with arbitrary-precision integer
/// coefficients and nonnegative exponents. No zero coefficient is ever
/// stored; serialization emits terms in graded order (constant first, and
/// within a degree the q-heavy terms first).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QTPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, 0, BigInt::from(n))
    }

    pub fn monomial(e_q: u32, e_t: u32, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((e_q, e_t), coeff);
        }
        QTPoly { terms }
    }

    /// 1 - q^a t^b (the ubiquitous binomial factor).
    pub fn one_minus(e_q: u32, e_t: u32) -> Self {
        let mut p = Self::one();
        p.add_term(e_q, e_t, -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&(0, 0)))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e_q: u32, e_t: u32) -> BigInt {
        self.terms.get(&(e_q, e_t)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e_q: u32, e_t: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((e_q, e_t)).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(e_q, e_t));
        }
    }

    pub fn deg_q(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(eq, et), c) in &other.terms {
            out.add_term(eq, et, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(eq, et), c) in &other.terms {
            out.add_term(eq, et, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        QTPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = QTPoly::zero();
        for (&(aq, at), ac) in &self.terms {
            for (&(bq, bt), bc) in &other.terms {
                out.add_term(aq + bq, at + bt, ac * bc);
            }
        }
        out
    }

    pub fn mul_monomial(&self, e_q: u32, e_t: u32, coeff: &BigInt) -> Self {
        if coeff.is_zero() {
            return QTPoly::zero();
        }
        QTPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, et), c)| ((eq + e_q, et + e_t), c * coeff))
                .collect(),
        }
    }

    /// First term in the canonical serialization order: lowest total
    /// degree, then highest q-exponent. This is the term whose sign fixes
    /// the canonical associate (so that 1 - q*t stays 1 - q*t).
    pub fn canonical_lead(&self) -> Option<((u32, u32), &BigInt)> {
        self.terms
            .iter()
            .min_by_key(|(&(eq, et), _)| ((eq as u64) + (et as u64), std::cmp::Reverse(eq)))
            .map(|(&k, c)| (k, c))
    }

    pub fn canonical_sign_negative(&self) -> bool {
        self.canonical_lead().is_some_and(|(_, c)| c.is_negative())
    }

    /// Splits off the largest common monomial factor q^a t^b and the core.
    pub fn extract_monomial(&self) -> ((u32, u32), QTPoly) {
        if self.is_zero() {
            return ((0, 0), QTPoly::zero());
        }
        let mq = self.terms.keys().map(|k| k.0).min().unwrap();
        let mt = self.terms.keys().map(|k| k.1).min().unwrap();
        if mq == 0 && mt == 0 {
            return ((0, 0), self.clone());
        }
        let core = QTPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, et), c)| ((eq - mq, et - mt), c.clone()))
                .collect(),
        };
        ((mq, mt), core)
    }

    /// Integer content, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QTPoly::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if d.is_monomial() {
            let (&(dq, dt), dc) = d.terms.iter().next().unwrap();
            let mut terms = BTreeMap::new();
            for (&(eq, et), c) in &self.terms {
                if eq < dq || et < dt {
                    return None;
                }
                let (quot, rem) = num_integer::Integer::div_rem(c, dc);
                if !rem.is_zero() {
                    return None;
                }
                terms.insert((eq - dq, et - dt), quot);
            }
            return Some(QTPoly { terms });
        }
        // Leading-term elimination in (e_q, e_t) lex order.
        let (dk, dc) = {
            let (k, c) = d.terms.iter().next_back().unwrap();
            (*k, c.clone())
        };
        let mut rem = self.clone();
        let mut quot = QTPoly::zero();
        while !rem.is_zero() {
            let (rk, rc) = {
                let (k, c) = rem.terms.iter().next_back().unwrap();
                (*k, c.clone())
            };
            if rk.0 < dk.0 || rk.1 < dk.1 {
                return None;
            }
            let (qc, qr) = num_integer::Integer::div_rem(&rc, &dc);
            if !qr.is_zero() {
                return None;
            }
            let shift = (rk.0 - dk.0, rk.1 - dk.1);
            quot.add_term(shift.0, shift.1, qc.clone());
            rem = rem.sub(&d.mul_monomial(shift.0, shift.1, &qc));
        }
        Some(quot)
    }

    /// Reflects exponents: (e_q, e_t) -> (a_q - e_q, a_t - e_t). Requires
    /// a_q >= deg_q and a_t >= deg_t; this is how q -> 1/q, t -> 1/t is
    /// realized after clearing by a common monomial.
    pub fn reflect(&self, a_q: u32, a_t: u32) -> Self {
        QTPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(eq, et), c)| ((a_q - eq, a_t - et), c.clone()))
                .collect(),
        }
    }

    /// The substitution t -> q^k, landing in polynomials in q alone.
    pub fn subst_t_qk(&self, k: u32) -> Self {
        let mut out = QTPoly::zero();
        for (&(eq, et), c) in &self.terms {
            out.add_term(eq + k * et, 0, c.clone());
        }
        out
    }

    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(eq, et), c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for _ in 0..eq {
                term *= q0;
            }
            for _ in 0..et {
                term *= t0;
            }
            acc += term;
        }
        acc
    }

    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return abs_poly(other);
        }
        if other.is_zero() {
            return abs_poly(self);
        }
        let ((aq, at), acore) = self.extract_monomial();
        let ((bq, bt), bcore) = other.extract_monomial();
        let mq = aq.min(bq);
        let mt = at.min(bt);
        let core = if acore == bcore || acore == bcore.neg() {
            abs_poly(&acore)
        } else if acore.is_monomial() || bcore.is_monomial() {
            // cores have trivial monomial part, so only content survives
            QTPoly::monomial(
                0,
                0,
                num_integer::Integer::gcd(&acore.content(), &bcore.content()),
            )
        } else {
            let g = upoly::up_gcd(&to_tpoly(&acore), &to_tpoly(&bcore));
            abs_poly(&from_tpoly(&g))
        };
        core.mul_monomial(mq, mt, &BigInt::one())
    }

    /// Canonical term order for serialization: ascending total degree,
    /// then descending q-exponent.
    fn sorted_terms(&self) -> Vec<((u32, u32), &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, c)| (k, c)).collect();
        v.sort_by_key(|&((eq, et), _)| ((eq as u64) + (et as u64), std::cmp::Reverse(eq)));
        v
    }
}

fn abs_poly(p: &QTPoly) -> QTPoly {
    if p.canonical_sign_negative() {
        p.neg()
    } else {
        p.clone()
    }
}

/// Conversion to dense form in t with dense Z[q] coefficients.
fn to_tpoly(p: &QTPoly) -> UPoly<Vec<BigInt>> {
    let dt = p.deg_t() as usize;
    let dq = p.deg_q() as usize;
    let mut out: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); dq + 1]; dt + 1];
    for (&(eq, et), c) in p.terms() {
        out[et as usize][eq as usize] = c.clone();
    }
    for row in &mut out {
        upoly::up_trim(row);
    }
    upoly::up_trim(&mut out);
    out
}

fn from_tpoly(p: &UPoly<Vec<BigInt>>) -> QTPoly {
    let mut out = QTPoly::zero();
    for (et, row) in p.iter().enumerate() {
        for (eq, c) in row.iter().enumerate() {
            out.add_term(eq as u32, et as u32, c.clone());
        }
    }
    out
}

fn write_monomial(f: &mut fmt::Formatter<'_>, eq: u32, et: u32) -> fmt::Result {
    if eq > 0 {
        write!(f, "q")?;
        if eq > 1 {
            write!(f, "^{eq}")?;
        }
        if et > 0 {
            write!(f, "*")?;
        }
    }
    if et > 0 {
        write!(f, "t")?;
        if et > 1 {
            write!(f, "^{et}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((eq, et), c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if eq == 0 && et == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, eq, et)?;
            }
        }
        Ok(())
    }
}
