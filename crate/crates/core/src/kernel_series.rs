//! Truncated bigraded expansion of the two Cauchy-type kernels
//!
//!   E(x;y) = prod_{j<i} (qt x_i y_j; q)oo/(q x_i y_j; q)oo
//!            prod_i    (qt x_i y_i; q)oo/(x_i y_i; q)oo
//!            prod_{i<j} (t x_i y_j; q)oo/(x_i y_j; q)oo
//!
//!   Pi(x;y) = prod_{i,j} (t x_i y_j; q)oo/(x_i y_j; q)oo
//!
//! via the q-binomial theorem (az;q)oo/(z;q)oo = sum_l ((a;q)_l/(q;q)_l) z^l,
//! their decompositions in the E(x) (x) E(y|1/q,1/t) and P (x) P bases, and
//! series-level functional-equation checks. Every kernel is bihomogeneous:
//! the degree-d x-component has y-degree d as well, so truncation at total
//! x-degree D is exact for every retained component.

use crate::hecke_ops::{apply_h_in, apply_omega_in, VarBlock};
use crate::laurent::{from_qtrat_poly, LPoly};
use crate::linalg::{self, LinalgError};
use crate::macdonald::{compute_e_inverted, ETable, MacdonaldError};
use crate::scalar::{QtScalar, ScalarError};
use crate::weights::{coeff_f, compositions_of, partitions_of, Composition, WeightsError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("kernel decomposition failed: {0}")]
    Decomposition(LinalgError),
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<LinalgError> for KernelError {
    fn from(e: LinalgError) -> Self {
        KernelError::Decomposition(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    EKernel,
    PiKernel,
}

/// Bigraded truncation: component d is the bidegree-(d,d) part, a Laurent
/// polynomial in 2n variables (x first, then y).
#[derive(Clone, PartialEq, Debug)]
pub struct TruncKernel<C: QtScalar> {
    pub n: usize,
    pub d_max: usize,
    pub components: Vec<LPoly<C>>,
}

impl<C: QtScalar> TruncKernel<C> {
    pub fn component(&self, d: usize) -> &LPoly<C> {
        &self.components[d]
    }
}

/// The coefficient (a;q)_l / (q;q)_l with a = q^{a_q} t^{a_t}.
pub fn qbinomial_coeff<C: QtScalar>(a_exp: (i64, i64), l: usize) -> C {
    let mut acc = C::one();
    for m in 0..l {
        let num = C::one().sub(&C::qt_monomial(a_exp.0 + m as i64, a_exp.1));
        let den = C::one().sub(&C::qt_monomial(m as i64 + 1, 0));
        acc = acc.mul(&num.try_div(&den).expect("(q;q)_l factors are nonzero"));
    }
    acc
}

/// Truncated one-variable q-binomial series
/// sum_{l=0}^{D} ((a;q)_l/(q;q)_l) (s z)^l with a = q^{a_q} t^{a_t} and
/// the scale monomial s = q^{s_q} t^{s_t} folded into each coefficient.
pub fn qbinomial_series<C: QtScalar>(
    a_exp: (i64, i64),
    z_scale: (i64, i64),
    d_max: usize,
) -> LPoly<C> {
    let mut out = LPoly::zero(1);
    for l in 0..=d_max {
        let c = qbinomial_coeff::<C>(a_exp, l)
            .mul(&C::qt_monomial(z_scale.0 * l as i64, z_scale.1 * l as i64));
        out.add_term(vec![l as i32], c);
    }
    out
}

/// One kernel factor in the 2n-variable ring: the q-binomial series in
/// z = x_i y_j (0-based i, j).
fn kernel_factor<C: QtScalar>(
    n: usize,
    i: usize,
    j: usize,
    a_exp: (i64, i64),
    z_scale: (i64, i64),
    d_max: usize,
) -> LPoly<C> {
    let mut out = LPoly::zero(2 * n);
    for l in 0..=d_max {
        let c = qbinomial_coeff::<C>(a_exp, l)
            .mul(&C::qt_monomial(z_scale.0 * l as i64, z_scale.1 * l as i64));
        let mut e = vec![0; 2 * n];
        e[i] = l as i32;
        e[n + j] = l as i32;
        out.add_term(e, c);
    }
    out
}

fn truncate_x_degree<C: QtScalar>(p: LPoly<C>, n: usize, d_max: usize) -> LPoly<C> {
    p.retain_by(|e| e[..n].iter().sum::<i32>() <= d_max as i32)
}

/// Expands the chosen kernel as a product of n^2 per-factor q-binomial
/// series, truncated at total x-degree d_max, and splits it per bidegree.
///
/// Factor parameters, read off the infinite products: for the E-kernel the
/// factor at (i, j) is the (t; q)-binomial series in q x_i y_j when j < i,
/// the (qt; q) series in x_i y_i on the diagonal, and the (t; q) series in
/// x_i y_j when i < j; the Pi-kernel uses (t; q) in x_i y_j everywhere.
pub fn expand_kernel<C: QtScalar>(n: usize, d_max: usize, kind: KernelKind) -> TruncKernel<C> {
    let mut acc = LPoly::one(2 * n);
    for i in 0..n {
        for j in 0..n {
            let (a_exp, z_scale) = match kind {
                KernelKind::PiKernel => ((0, 1), (0, 0)),
                KernelKind::EKernel => {
                    if j < i {
                        ((0, 1), (1, 0))
                    } else if i == j {
                        ((1, 1), (0, 0))
                    } else {
                        ((0, 1), (0, 0))
                    }
                }
            };
            let factor = kernel_factor::<C>(n, i, j, a_exp, z_scale, d_max);
            acc = truncate_x_degree(acc.mul(&factor), n, d_max);
        }
    }
    let components = (0..=d_max)
        .map(|d| acc.bidegree_component(d as i32, d as i32))
        .collect();
    TruncKernel {
        n,
        d_max,
        components,
    }
}

/// The ratio E/Pi = prod_i 1/(1 - t x_i y_i) prod_{j<i} (1 - x_i y_j)/(1 - t x_i y_j),
/// truncated the same way; used by the factorization check.
pub fn expand_e_over_pi<C: QtScalar>(n: usize, d_max: usize) -> TruncKernel<C> {
    let mut acc = LPoly::one(2 * n);
    for i in 0..n {
        for j in 0..=i {
            // sum_l t^l (x_i y_j)^l
            let mut factor = LPoly::zero(2 * n);
            for l in 0..=d_max {
                let mut e = vec![0; 2 * n];
                e[i] = l as i32;
                e[n + j] = l as i32;
                factor.add_term(e, C::qt_monomial(0, l as i64));
            }
            if j < i {
                let mut e = vec![0; 2 * n];
                e[i] = 1;
                e[n + j] = 1;
                let num = LPoly::one(2 * n).sub(&LPoly::monomial(2 * n, e, C::one()));
                factor = truncate_x_degree(factor.mul(&num), n, d_max);
            }
            acc = truncate_x_degree(acc.mul(&factor), n, d_max);
        }
    }
    let components = (0..=d_max)
        .map(|d| acc.bidegree_component(d as i32, d as i32))
        .collect();
    TruncKernel {
        n,
        d_max,
        components,
    }
}

/// Solves for the coefficients of component d in the basis
/// {E_lambda(x) E_lambda(y | q^{-1}, t^{-1})} over compositions of d.
/// The system is overdetermined; a nonzero residual would mean the
/// expansion fails and surfaces as an error.
pub fn decompose_ee<C: QtScalar>(
    kernel: &TruncKernel<C>,
    d: usize,
    table: &mut ETable<C>,
) -> Result<Vec<(Composition, C)>, KernelError> {
    assert!(d <= kernel.d_max);
    let n = kernel.n;
    let lambdas = compositions_of(d as i32, n);
    let mut basis_polys = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        let ex = table.poly(lam)?.embed(2 * n, 0);
        let ey = compute_e_inverted::<C>(lam)?.poly.embed(2 * n, n);
        basis_polys.push(ex.mul(&ey));
    }
    solve_in_basis(kernel.component(d), &lambdas, &basis_polys)
}

/// Solves for the coefficients of component d of the Pi-kernel in the
/// basis {P_lambda(x) P_lambda(y)} over partitions of d.
pub fn decompose_pp<C: QtScalar>(
    kernel: &TruncKernel<C>,
    d: usize,
    table: &mut ETable<C>,
) -> Result<Vec<(Composition, C)>, KernelError> {
    assert!(d <= kernel.d_max);
    let n = kernel.n;
    let lambdas = partitions_of(d as i32, n);
    let mut basis_polys = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        let p = crate::macdonald::compute_p(table, lam)?;
        basis_polys.push(p.embed(2 * n, 0).mul(&p.embed(2 * n, n)));
    }
    solve_in_basis(kernel.component(d), &lambdas, &basis_polys)
}

fn solve_in_basis<C: QtScalar>(
    target: &LPoly<C>,
    lambdas: &[Composition],
    basis_polys: &[LPoly<C>],
) -> Result<Vec<(Composition, C)>, KernelError> {
    let mut monomials: std::collections::BTreeSet<Vec<i32>> = Default::default();
    for (e, _) in target.terms() {
        monomials.insert(e.clone());
    }
    for p in basis_polys {
        for (e, _) in p.terms() {
            monomials.insert(e.clone());
        }
    }
    let mut rows = Vec::with_capacity(monomials.len());
    let mut rhs = Vec::with_capacity(monomials.len());
    for e in &monomials {
        rows.push(basis_polys.iter().map(|p| p.coeff(e)).collect::<Vec<C>>());
        rhs.push(target.coeff(e));
    }
    let sol = linalg::solve_unique(rows, rhs)?;
    Ok(lambdas.iter().cloned().zip(sol).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalCheck {
    /// H_{i,x} K = H_{i,y} K on every component, after transporting the
    /// E-kernel to K(x;y) form by y -> y^{-1}.
    HeckeSymmetry(usize),
    /// omega_x K = omega_y^{-1} K, same transport.
    OmegaExchange,
    /// Evaluating y = (t^{n-1}, ..., t, 1) reproduces the truncation of
    /// prod_i (q t^n x_i; q)oo/(x_i; q)oo.
    SpecializeTDelta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Truncation of prod_i (q t^n x_i; q)oo/(x_i; q)oo, expanded by the
/// q-binomial theorem with parameter q t^n.
pub fn principal_specialization_series<C: QtScalar>(n: usize, d_max: usize) -> LPoly<C> {
    let mut acc = LPoly::one(n);
    for i in 0..n {
        let mut factor = LPoly::zero(n);
        for l in 0..=d_max {
            let mut e = vec![0; n];
            e[i] = l as i32;
            factor.add_term(e, qbinomial_coeff::<C>((1, n as i64), l));
        }
        acc = acc
            .mul(&factor)
            .retain_by(|e| e.iter().sum::<i32>() <= d_max as i32);
    }
    acc
}

/// Runs a series-level functional-equation check on an expanded E-kernel.
pub fn check_functional<C: QtScalar>(
    kernel: &TruncKernel<C>,
    which: FunctionalCheck,
) -> FunctionalReport {
    let n = kernel.n;
    let mut failures = Vec::new();
    for d in 0..=kernel.d_max {
        let comp = kernel.component(d);
        match which {
            FunctionalCheck::HeckeSymmetry(i) => {
                let g = comp.invert_vars_in(n, 2 * n);
                let lhs = apply_h_in(VarBlock::x_of(n), i, &g);
                let rhs = apply_h_in(VarBlock::y_of(n), i, &g);
                if lhs != rhs {
                    failures.push(format!("H_{i} symmetry fails at bidegree {d}"));
                }
            }
            FunctionalCheck::OmegaExchange => {
                let g = comp.invert_vars_in(n, 2 * n);
                let lhs = apply_omega_in(VarBlock::x_of(n), 1, &g);
                let rhs = apply_omega_in(VarBlock::y_of(n), -1, &g);
                if lhs != rhs {
                    failures.push(format!("omega exchange fails at bidegree {d}"));
                }
            }
            FunctionalCheck::SpecializeTDelta => {
                let mut s = comp.clone();
                for j in 0..n {
                    s = s.substitute_var_monomial(n + j, 0, (n - 1 - j) as i64);
                }
                let got = s.restrict_vars(0, n);
                let want = principal_specialization_series::<C>(n, kernel.d_max)
                    .retain_by(|e| e.iter().sum::<i32>() == d as i32);
                if got != want {
                    failures.push(format!("t^delta specialization fails at degree {d}"));
                }
            }
        }
    }
    FunctionalReport {
        passed: failures.is_empty(),
        failures,
    }
}

/// The n+1-variable expansion of prod_i (u x_i; q)oo/(x_i; q)oo with u as
/// variable 0 and x as variables 1..=n, truncated at x-degree d_max. The
/// coefficient of x^lambda is a polynomial in u.
pub fn expand_u_kernel<C: QtScalar>(n: usize, d_max: usize) -> LPoly<C> {
    let nv = n + 1;
    let mut acc = LPoly::one(nv);
    for i in 0..n {
        let mut factor = LPoly::zero(nv);
        for l in 0..=d_max {
            // (u; q)_l / (q; q)_l x_i^l, with (u;q)_l expanded in u
            let mut upoch = LPoly::one(nv);
            for m in 0..l {
                let mut e = vec![0; nv];
                e[0] = 1;
                let term = LPoly::monomial(nv, e, C::qt_monomial(m as i64, 0));
                upoch = upoch.mul(&LPoly::one(nv).sub(&term));
            }
            let mut den = C::one();
            for m in 1..=l {
                den = den.mul(&C::one().sub(&C::qt_monomial(m as i64, 0)));
            }
            let mut e = vec![0; nv];
            e[1 + i] = l as i32;
            factor = factor.add(
                &upoch
                    .mul_by_monomial(&e)
                    .scalar_mul(&C::one().try_div(&den).expect("(q;q)_l nonzero")),
            );
        }
        acc = acc
            .mul(&factor)
            .retain_by(|e| e[1..].iter().sum::<i32>() <= d_max as i32);
    }
    acc
}

/// Verifies that the degree-d x-component of the u-kernel decomposes over
/// {P_lambda} with coefficients f_lambda(u).
pub fn check_u_expansion<C: QtScalar>(
    n: usize,
    d: usize,
    table: &mut ETable<C>,
) -> Result<bool, KernelError> {
    let expansion = expand_u_kernel::<C>(n, d);
    let component = expansion.retain_by(|e| e[1..].iter().sum::<i32>() == d as i32);
    let mut rhs = LPoly::zero(n + 1);
    for lam in partitions_of(d as i32, n) {
        let p = crate::macdonald::compute_p(table, &lam)?.embed(n + 1, 1);
        let f = from_qtrat_poly::<C>(&coeff_f(&lam)?)?.embed(n + 1, 0);
        rhs = rhs.add(&p.mul(&f));
    }
    Ok(component == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_field::QTRat;
    use crate::weights::{coeff_a, coeff_b};

    fn omm(a: i64, b: i64) -> QTRat {
        QTRat::one_minus_monomial(a, b)
    }

    #[test]
    fn qbinomial_examples() {
        // a = qt: l = 1 gives (1-qt)/(1-q); l = 2 gives
        // (1-qt)(1-q^2 t)/((1-q)(1-q^2))
        let c1 = qbinomial_coeff::<QTRat>((1, 1), 1);
        assert_eq!(c1, omm(1, 1).try_div(&omm(1, 0)).unwrap());
        let c2 = qbinomial_coeff::<QTRat>((1, 1), 2);
        let want = omm(1, 1)
            .mul(&omm(2, 1))
            .try_div(&omm(1, 0).mul(&omm(2, 0)))
            .unwrap();
        assert_eq!(c2, want);
        // a = q: the geometric series, every coefficient 1
        for l in 0..5 {
            assert!(qbinomial_coeff::<QTRat>((1, 0), l).is_one());
        }
        let s = qbinomial_series::<QTRat>((1, 1), (1, 0), 2);
        assert_eq!(s.coeff(&[1]), c1.mul(&QTRat::monomial(1, 0)));
    }

    #[test]
    fn e_kernel_degree_one_coefficients() {
        let k = expand_kernel::<QTRat>(2, 1, KernelKind::EKernel);
        assert_eq!(k.component(0), &LPoly::one(4));
        let c = k.component(1);
        let omqt_omq = omm(1, 1).try_div(&omm(1, 0)).unwrap();
        let omt_omq = omm(0, 1).try_div(&omm(1, 0)).unwrap();
        assert_eq!(c.coeff(&[1, 0, 1, 0]), omqt_omq); // x1 y1
        assert_eq!(c.coeff(&[0, 1, 0, 1]), omqt_omq); // x2 y2
        assert_eq!(c.coeff(&[1, 0, 0, 1]), omt_omq); // x1 y2
        assert_eq!(c.coeff(&[0, 1, 1, 0]), omt_omq.mul(&QTRat::monomial(1, 0))); // x2 y1
        assert_eq!(c.num_terms(), 4);
    }

    #[test]
    fn pi_kernel_degree_one_coefficients() {
        let k = expand_kernel::<QTRat>(2, 1, KernelKind::PiKernel);
        let c = k.component(1);
        let omt_omq = omm(0, 1).try_div(&omm(1, 0)).unwrap();
        for e in [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]] {
            assert_eq!(c.coeff(&e), omt_omq);
        }
    }

    #[test]
    fn bigrading_no_off_diagonal() {
        let k = expand_kernel::<QTRat>(2, 3, KernelKind::EKernel);
        let mut total = 0;
        for d in 0..=3usize {
            total += k.component(d).num_terms();
        }
        // every term of the raw truncated product lies on the diagonal
        let mut raw = LPoly::one(4);
        for i in 0..2 {
            for j in 0..2 {
                let (a, s) = if j < i {
                    ((0, 1), (1, 0))
                } else if i == j {
                    ((1, 1), (0, 0))
                } else {
                    ((0, 1), (0, 0))
                };
                raw = raw.mul(&kernel_factor::<QTRat>(2, i, j, a, s, 3));
            }
        }
        let raw = raw.retain_by(|e| e[..2].iter().sum::<i32>() <= 3);
        assert_eq!(raw.num_terms(), total);
    }

    #[test]
    fn decompose_ee_degree_one() {
        let k = expand_kernel::<QTRat>(2, 1, KernelKind::EKernel);
        let mut table = ETable::<QTRat>::new(2);
        let coeffs = decompose_ee(&k, 1, &mut table).unwrap();
        for (lam, c) in coeffs {
            assert_eq!(c, coeff_a(&lam), "{lam}");
        }
        // degree 0 is the constant 1
        let coeffs = decompose_ee(&k, 0, &mut table).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert!(coeffs[0].1.is_one());
    }

    #[test]
    fn decompose_pp_small() {
        let k = expand_kernel::<QTRat>(2, 2, KernelKind::PiKernel);
        let mut table = ETable::<QTRat>::new(2);
        let coeffs = decompose_pp(&k, 1, &mut table).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0].1, coeff_b(&coeffs[0].0).unwrap());
        for (lam, c) in decompose_pp(&k, 2, &mut table).unwrap() {
            assert_eq!(c, coeff_b(&lam).unwrap(), "{lam}");
        }
    }

    #[test]
    fn factorization_e_equals_pi_times_ratio() {
        let n = 2;
        let d = 3;
        let e = expand_kernel::<QTRat>(n, d, KernelKind::EKernel);
        let pi = expand_kernel::<QTRat>(n, d, KernelKind::PiKernel);
        let ratio = expand_e_over_pi::<QTRat>(n, d);
        for dd in 0..=d {
            let mut acc = LPoly::zero(2 * n);
            for a in 0..=dd {
                acc = acc.add(&pi.component(a).mul(ratio.component(dd - a)));
            }
            assert_eq!(&acc, e.component(dd), "bidegree {dd}");
        }
    }

    #[test]
    fn functional_checks_pass_n2() {
        let k = expand_kernel::<QTRat>(2, 2, KernelKind::EKernel);
        assert!(check_functional(&k, FunctionalCheck::HeckeSymmetry(1)).passed);
        assert!(check_functional(&k, FunctionalCheck::OmegaExchange).passed);
        assert!(check_functional(&k, FunctionalCheck::SpecializeTDelta).passed);
    }

    #[test]
    fn specialize_tdelta_n1_coefficient() {
        // at n = 1 the degree-1 coefficient of the specialized kernel is
        // (1 - q t)/(1 - q)
        let s = principal_specialization_series::<QTRat>(1, 2);
        assert_eq!(s.coeff(&[1]), omm(1, 1).try_div(&omm(1, 0)).unwrap());
        let k = expand_kernel::<QTRat>(1, 2, KernelKind::EKernel);
        assert!(check_functional(&k, FunctionalCheck::SpecializeTDelta).passed);
    }

    #[test]
    fn u_expansion_small() {
        let mut table = ETable::<QTRat>::new(2);
        for d in 0..=2 {
            assert!(
                check_u_expansion::<QTRat>(2, d, &mut table).unwrap(),
                "d={d}"
            );
        }
    }
}
