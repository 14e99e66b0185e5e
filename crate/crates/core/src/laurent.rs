//! Sparse multivariate Laurent polynomials over a coefficient scalar,
//! with the variable actions the operator algebra needs: permutation,
//! q-shift, variable inversion, evaluation, coefficient extraction, and
//! exact division by x_i - x_{i+1}.

use crate::scalar::{QtScalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector; fixed length per ambient ring, negative entries allowed.
pub type ExpVec = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("polynomial is not divisible by x{0} - x{1}")]
    NotDivisible(usize, usize),
    #[error("evaluation at zero against a negative exponent")]
    EvalAtZero,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse Laurent polynomial. One entry per exponent vector, no zero
/// coefficients stored; term order is canonicalized only on serialization.
#[derive(Clone, PartialEq, Debug)]
pub struct LPoly<C: QtScalar> {
    nvars: usize,
    terms: BTreeMap<ExpVec, C>,
}

impl<C: QtScalar> LPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        LPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: ExpVec, c: C) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LPoly { nvars, terms }
    }

    /// The variable x_{i+1} (0-based index i).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, C::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, exps: ExpVec, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("nvars mismatch")
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("nvars mismatch")
    }

    pub fn neg(&self) -> Self {
        LPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: ExpVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("nvars mismatch")
    }

    pub fn scalar_mul(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(s));
        }
        out
    }

    /// Multiplies by the monomial with the given exponent offsets.
    pub fn mul_by_monomial(&self, delta: &[i32]) -> Self {
        assert_eq!(delta.len(), self.nvars);
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(delta).map(|(x, d)| x + d).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs(
        &self,
        f: impl Fn(&C) -> Result<C, ScalarError>,
    ) -> Result<Self, ScalarError> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn retain_by(&self, pred: impl Fn(&[i32]) -> bool) -> Self {
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| pred(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies w: x_j -> x_{w(j)} (0-based permutation table).
    pub fn permute(&self, w: &[usize]) -> Self {
        assert_eq!(w.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (j, &ej) in e.iter().enumerate() {
                ne[w[j]] = ej;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Swaps x_{i+1} and x_{i+2} (0-based i): the simple reflection s on
    /// adjacent variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.swap(i, j);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// x_i -> q^e x_i (0-based i): each term picks up q^{e * exp_i}.
    pub fn qshift(&self, i: usize, e: i32) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            let c2 = c.mul(&C::qt_monomial((e as i64) * (exps[i] as i64), 0));
            out.add_term(exps.clone(), c2);
        }
        out
    }

    /// x_i -> q^{e_q} t^{e_t} x_i.
    pub fn scale_var(&self, i: usize, e_q: i64, e_t: i64) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            let p = exps[i] as i64;
            out.add_term(exps.clone(), c.mul(&C::qt_monomial(e_q * p, e_t * p)));
        }
        out
    }

    /// Substitutes x_i by the scalar monomial q^{e_q} t^{e_t}; the
    /// exponent of x_i becomes 0.
    pub fn substitute_var_monomial(&self, i: usize, e_q: i64, e_t: i64) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (exps, c) in &self.terms {
            let p = exps[i] as i64;
            let mut ne = exps.clone();
            ne[i] = 0;
            out.add_term(ne, c.mul(&C::qt_monomial(e_q * p, e_t * p)));
        }
        out
    }

    /// Every x_j -> x_j^{-1}.
    pub fn invert_vars(&self) -> Self {
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Inverts only the variables in [from, to).
    pub fn invert_vars_in(&self, from: usize, to: usize) -> Self {
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let ne: ExpVec = e
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| if j >= from && j < to { -x } else { x })
                        .collect();
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[C]) -> Result<C, LaurentError> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut p = C::one();
                for _ in 0..e.unsigned_abs() {
                    p = p.mul(&point[j]);
                }
                if e > 0 {
                    term = term.mul(&p);
                } else {
                    if p.is_zero() {
                        return Err(LaurentError::EvalAtZero);
                    }
                    term = term.try_div(&p).map_err(|_| LaurentError::EvalAtZero)?;
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn total_degree_of(exps: &[i32]) -> i32 {
        exps.iter().sum()
    }

    /// Max over terms of the exponent sum over [from, to); None when zero.
    pub fn degree_in(&self, from: usize, to: usize) -> Option<i32> {
        self.terms
            .keys()
            .map(|e| e[from..to].iter().sum())
            .max()
    }

    /// Terms whose x-degree (first half) is d_x and y-degree (second
    /// half) is d_y; only meaningful on 2n-variable rings.
    pub fn bidegree_component(&self, d_x: i32, d_y: i32) -> Self {
        let n = self.nvars / 2;
        self.retain_by(|e| {
            e[..n].iter().sum::<i32>() == d_x && e[n..].iter().sum::<i32>() == d_y
        })
    }

    /// Embeds into a ring with `total` variables, mapping variable j to
    /// variable offset + j.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= total);
        let mut out = LPoly::zero(total);
        for (e, c) in &self.terms {
            let mut ne = vec![0; total];
            ne[offset..offset + self.nvars].copy_from_slice(e);
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Projects onto the variables [from, to); every term must have zero
    /// exponents outside the window.
    pub fn restrict_vars(&self, from: usize, to: usize) -> Self {
        let mut out = LPoly::zero(to - from);
        for (e, c) in &self.terms {
            assert!(
                e.iter()
                    .enumerate()
                    .all(|(j, &x)| (j >= from && j < to) || x == 0),
                "restrict_vars: nonzero exponent outside the window"
            );
            out.add_term(e[from..to].to_vec(), c.clone());
        }
        out
    }

    /// Exact division of `self` by x_{i+1} - x_{i+2} (0-based adjacent
    /// pair (i, i+1)). The caller guarantees divisibility; a non-divisible
    /// input signals an operator-application bug and errors out.
    pub fn div_diff(&self, i: usize) -> Result<Self, LaurentError> {
        assert!(i + 1 < self.nvars);
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Shift so that both variables have nonnegative exponents.
        let mut shift_a = 0i32;
        let mut shift_b = 0i32;
        for e in self.terms.keys() {
            shift_a = shift_a.min(e[i]);
            shift_b = shift_b.min(e[i + 1]);
        }
        let mut delta = vec![0; self.nvars];
        delta[i] = -shift_a;
        delta[i + 1] = -shift_b;
        let mut rem = self.mul_by_monomial(&delta);
        let mut quot = Self::zero(self.nvars);
        while !rem.is_zero() {
            // leading term under: exponent of x_i first, then the full
            // exponent vector as a tie-break
            let (le, lc) = rem
                .terms
                .iter()
                .max_by(|(ea, _), (eb, _)| ea[i].cmp(&eb[i]).then_with(|| ea.cmp(eb)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .unwrap();
            if le[i] <= 0 {
                return Err(LaurentError::NotDivisible(i + 1, i + 2));
            }
            let mut qe = le.clone();
            qe[i] -= 1;
            // rem -= (lc * x^qe) * (x_i - x_{i+1})
            rem.add_term(le, lc.neg());
            let mut other = qe.clone();
            other[i + 1] += 1;
            rem.add_term(other, lc.clone());
            quot.add_term(qe, lc);
        }
        delta[i] = shift_a;
        delta[i + 1] = shift_b;
        Ok(quot.mul_by_monomial(&delta))
    }

    /// Canonical text form: terms sorted by descending exponent vector,
    /// each as `coeff*monomial` with unit coefficients and empty
    /// monomials elided. `names` maps the variable index to its display
    /// name.
    pub fn to_string_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&ExpVec> = self.terms.keys().collect();
        keys.sort();
        keys.reverse();
        let mut out = String::new();
        for (idx, e) in keys.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let c = &self.terms[*e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| {
                    if x == 1 {
                        names(j)
                    } else {
                        format!("{}^{}", names(j), x)
                    }
                })
                .collect();
            let mono = mono.join("*");
            if mono.is_empty() {
                out.push_str(&format!("{c}"));
            } else if c.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{c}*{mono}"));
            }
        }
        out
    }

    /// Display with variables x1..xn.
    pub fn to_string_x(&self) -> String {
        self.to_string_with(&|j| format!("x{}", j + 1))
    }

    /// Display with variables x1..xn, y1..yn (2n-variable rings).
    pub fn to_string_xy(&self, n: usize) -> String {
        self.to_string_with(&|j| {
            if j < n {
                format!("x{}", j + 1)
            } else {
                format!("y{}", j + 1 - n)
            }
        })
    }
}

impl<C: QtScalar> fmt::Display for LPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_x())
    }
}

/// Maps a polynomial with exact coefficients into any scalar image.
pub fn from_qtrat_poly<C: QtScalar>(
    p: &LPoly<crate::qt_field::QTRat>,
) -> Result<LPoly<C>, ScalarError> {
    let mut out = LPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        out.add_term(e.clone(), C::from_qtrat(c)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_field::QTRat;

    type P = LPoly<QTRat>;

    fn x(i: usize) -> P {
        P::var(2, i)
    }

    #[test]
    fn difference_of_squares() {
        let f = x(0).add(&x(1));
        let g = x(0).sub(&x(1));
        let want = P::monomial(2, vec![2, 0], QTRat::one())
            .sub(&P::monomial(2, vec![0, 2], QTRat::one()));
        assert_eq!(f.mul(&g), want);
    }

    #[test]
    fn additive_identity_and_scalar_mul() {
        let f = x(0).add(&x(1));
        assert_eq!(f.add(&P::zero(2)), f);
        let s = QTRat::one_minus_monomial(0, 1)
            .try_div(&QTRat::one_minus_monomial(1, 0))
            .unwrap();
        let g = x(0).scalar_mul(&s);
        assert_eq!(g.coeff(&[1, 0]), s);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let f = P::var(2, 0);
        let g = P::var(3, 0);
        assert!(matches!(
            f.checked_add(&g),
            Err(LaurentError::NvarsMismatch(2, 3))
        ));
    }

    #[test]
    fn qshift_scales_by_q_powers() {
        // tau_1 on x1^2 x2 gives q^2 x1^2 x2
        let f = P::monomial(2, vec![2, 1], QTRat::one());
        let g = f.qshift(0, 1);
        assert_eq!(g.coeff(&[2, 1]), QTRat::monomial(2, 0));
        assert_eq!(g.qshift(0, -1), f);
    }

    #[test]
    fn permute_and_invert() {
        let f = x(0).sub(&x(1));
        assert_eq!(f.swap_vars(0, 1), f.neg());
        let g = x(0).add(&x(1));
        let want = P::monomial(2, vec![-1, 0], QTRat::one())
            .add(&P::monomial(2, vec![0, -1], QTRat::one()));
        assert_eq!(g.invert_vars(), want);
        assert_eq!(g.invert_vars().invert_vars(), g);
    }

    #[test]
    fn permute_composes_contravariantly() {
        // x^(w.mu) = w x^mu with (w.mu)_i = mu_{w^{-1}(i)}
        let f = P::monomial(3, vec![3, 1, 0], QTRat::one());
        // w = cycle 1->2->3->1 (0-based: 0->1, 1->2, 2->0)
        let w = [1usize, 2, 0];
        let g = f.permute(&w);
        assert_eq!(g.coeff(&[0, 3, 1]), QTRat::one());
    }

    #[test]
    fn constant_term_of_weight_factor() {
        // (1 - y1/y2)(1 - q y2/y1): constant term 1 + q
        let one = P::one(2);
        let a = one.sub(&P::monomial(2, vec![1, -1], QTRat::one()));
        let b = one.sub(&P::monomial(2, vec![-1, 1], QTRat::monomial(1, 0)));
        let prod = a.mul(&b);
        let want = QTRat::one().add(&QTRat::monomial(1, 0));
        assert_eq!(prod.constant_term(), want);
    }

    #[test]
    fn eval_examples() {
        let f = x(0).add(&x(1));
        let v = f
            .eval(&[QTRat::monomial(0, 1), QTRat::one()])
            .unwrap();
        assert_eq!(v, QTRat::one().add(&QTRat::monomial(0, 1)));
        // negative exponent at zero errors
        let g: P = P::monomial(2, vec![-1, 0], QTRat::one());
        assert!(matches!(
            g.eval(&[QTRat::zero(), QTRat::one()]),
            Err(LaurentError::EvalAtZero)
        ));
    }

    #[test]
    fn div_diff_examples() {
        // (x1 - x2)/(x1 - x2) = 1
        let f = x(0).sub(&x(1));
        assert_eq!(f.div_diff(0).unwrap(), P::one(2));
        // (x1^2 - x2^2)/(x1 - x2) = x1 + x2
        let f2 = P::monomial(2, vec![2, 0], QTRat::one())
            .sub(&P::monomial(2, vec![0, 2], QTRat::one()));
        assert_eq!(f2.div_diff(0).unwrap(), x(0).add(&x(1)));
        // zero divides to zero
        assert_eq!(P::zero(2).div_diff(0).unwrap(), P::zero(2));
        // x1 + x2 is not divisible
        assert!(matches!(
            x(0).add(&x(1)).div_diff(0),
            Err(LaurentError::NotDivisible(1, 2))
        ));
    }

    #[test]
    fn div_diff_on_laurent_input() {
        // s_1(x2^-1) - x2^-1 = x1^-1 - x2^-1 = (x2 - x1)/(x1 x2)
        let f = P::monomial(2, vec![-1, 0], QTRat::one())
            .sub(&P::monomial(2, vec![0, -1], QTRat::one()));
        let q = f.div_diff(0).unwrap();
        let back = q.mul(&x(0).sub(&x(1)));
        assert_eq!(back, f);
    }

    #[test]
    fn bidegree_reassembles() {
        let mut f = LPoly::<QTRat>::zero(4);
        f.add_term(vec![1, 0, 1, 0], QTRat::one());
        f.add_term(vec![2, 0, 1, 1], QTRat::from_int(3));
        f.add_term(vec![0, 0, 0, 0], QTRat::one());
        let mut sum = LPoly::<QTRat>::zero(4);
        for d in 0..=2 {
            sum = sum.add(&f.bidegree_component(d, d));
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn canonical_string() {
        let f = x(0).add(&x(1).scalar_mul(&QTRat::monomial(1, 0)));
        assert_eq!(f.to_string_x(), "x1 + q*x2");
        let g: P = P::monomial(2, vec![0, -2], QTRat::from_int(2));
        assert_eq!(g.to_string_x(), "2*x2^-2");
        assert_eq!(P::zero(2).to_string_x(), "0");
    }
}
