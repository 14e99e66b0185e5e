//! Named verification suites. Each suite runs a family of exact identity
//! checks at configurable sizes and returns a report with one line per
//! check; the first counterexample carries both sides serialized. The CLI
//! and the acceptance tests both drive these.

use crate::cherednik_ct::{
    reproducing_check, scalar_product_prepared, weight_poly, CherednikError,
};
use crate::hecke_ops::{apply_h, apply_m};
use crate::kernel_series::{
    check_functional, check_u_expansion, decompose_ee, decompose_pp, expand_e_over_pi,
    expand_kernel, FunctionalCheck, KernelError, KernelKind,
};
use crate::laurent::LPoly;
use crate::macdonald::{compute_e, compute_e_inverted, compute_p, ETable, MacdonaldError};
use crate::qt_field::QTRat;
use crate::scalar::{QtScalar, ScalarError};
use crate::weights::{
    coeff_a, coeff_a_orbit_ratio, coeff_d, coeff_d_prime, coeff_f, compositions_of,
    norm_closed_form, partitions_of, special_values, Composition, NormMode, SpecialValue,
    WeightsError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Cherednik(#[from] CherednikError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    /// Counterexample dump (both sides serialized) when the check failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(suite: impl Into<String>) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    fn record<T: PartialEq + std::fmt::Display>(&mut self, id: String, lhs: T, rhs: T) {
        let passed = lhs == rhs;
        self.checks.push(CheckResult {
            id,
            passed,
            detail: if passed {
                None
            } else {
                Some(format!("lhs = {lhs}; rhs = {rhs}"))
            },
        });
    }

    fn record_bool(&mut self, id: String, passed: bool, detail: String) {
        self.checks.push(CheckResult {
            id,
            passed,
            detail: if passed { None } else { Some(detail) },
        });
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }
}

/// Deterministic corpus of random Laurent polynomials for the operator
/// relation checks: 3 to 5 terms, exponents in [-2, 2], coefficients of
/// the form c q^a t^b with small c, a, b.
pub fn random_corpus<C: QtScalar>(n: usize, count: usize, seed: u64) -> Vec<LPoly<C>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let nterms = rng.gen_range(3..=5);
        let mut p = LPoly::zero(n);
        for _ in 0..nterms {
            let exps: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let c: i64 = loop {
                let c = rng.gen_range(-3..=3i64);
                if c != 0 {
                    break c;
                }
            };
            let a = rng.gen_range(-1..=1i64);
            let b = rng.gen_range(-1..=1i64);
            p.add_term(exps, C::from_int(c).mul(&C::qt_monomial(a, b)));
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

/// Kernel-side Cauchy checks: the E-kernel decomposition equals the
/// closed-form coefficients a_lambda on every composition of every degree
/// d <= d_max, the Pi-kernel decomposition equals b_lambda, and the
/// factorization E = Pi * ratio holds per bidegree.
pub fn run_cauchy<C: QtScalar>(n: usize, d_max: usize) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("cauchy");
    let kernel = expand_kernel::<C>(n, d_max, KernelKind::EKernel);
    let pi = expand_kernel::<C>(n, d_max, KernelKind::PiKernel);
    let mut table = ETable::<C>::new(n);
    for d in 0..=d_max {
        for (lam, got) in decompose_ee(&kernel, d, &mut table)? {
            let want = C::from_qtrat(&coeff_a(&lam))?;
            report.record(format!("cauchy-EE n={n} lambda={lam}"), got, want);
        }
        for (lam, got) in decompose_pp(&pi, d, &mut table)? {
            let want = C::from_qtrat(&crate::weights::coeff_b(&lam)?)?;
            report.record(format!("cauchy-PP n={n} lambda={lam}"), got, want);
        }
    }
    let ratio = expand_e_over_pi::<C>(n, d_max);
    for d in 0..=d_max {
        let mut acc = LPoly::zero(2 * n);
        for a in 0..=d {
            acc = acc.add(&pi.component(a).mul(ratio.component(d - a)));
        }
        report.record(
            format!("cauchy-factorization n={n} bidegree={d}"),
            acc.to_string_xy(n),
            kernel.component(d).to_string_xy(n),
        );
    }
    Ok(report)
}

/// Closed-form combinatorial identities for a_lambda: the orbit root
/// product, the d/d' transport, the column-augmentation recurrence, and
/// the double-product closed form.
pub fn run_comb_identities<C: QtScalar>(
    n: usize,
    d_max: usize,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("comb-identities");
    for d in 0..=d_max as i32 {
        for lam in partitions_of(d, n) {
            let a_dom = coeff_a(&lam);
            for mu in lam.orbit() {
                let direct = C::from_qtrat(&coeff_a(&mu))?;
                let via_root = C::from_qtrat(&a_dom.mul(&coeff_a_orbit_ratio(&mu)))?;
                report.record(
                    format!("comb-root-product n={n} mu={mu}"),
                    via_root,
                    direct.clone(),
                );
                let via_dd = a_dom
                    .mul(&coeff_d_prime(&lam))
                    .mul(&coeff_d(&mu))
                    .try_div(&coeff_d(&lam).mul(&coeff_d_prime(&mu)))
                    .expect("d' products are nonzero");
                report.record(
                    format!("comb-dd-transport n={n} mu={mu}"),
                    C::from_qtrat(&via_dd)?,
                    direct,
                );
            }
            // column recurrence: a_{lambda + (1^n)}
            let bumped = Composition::of(&lam.parts().iter().map(|&p| p + 1).collect::<Vec<_>>());
            let mut ratio = QTRat::one();
            for i in 1..=n {
                let e = (lam.parts()[i - 1] + 1) as i64;
                let num = QTRat::one_minus_monomial(e, (n - i + 1) as i64);
                let den = QTRat::one_minus_monomial(e, (n - i) as i64);
                ratio = ratio.mul(&num.try_div(&den).expect("nonzero binomial"));
            }
            report.record(
                format!("comb-column-recurrence n={n} lambda={lam}"),
                C::from_qtrat(&coeff_a(&bumped))?,
                C::from_qtrat(&coeff_a(&lam).mul(&ratio))?,
            );
            // double-product closed form
            let mut acc = QTRat::one();
            for i in 1..=n {
                for j in i..=n {
                    let lj1 = if j == n { 0 } else { lam.parts()[j] };
                    let m = (lam.parts()[j - 1] - lj1) as u32;
                    let e = (lam.parts()[i - 1] - lam.parts()[j - 1] + 1) as i64;
                    let num = QTRat::qpoch((e, (j - i + 1) as i64), m);
                    let den = QTRat::qpoch((e, (j - i) as i64), m);
                    acc = acc.mul(&num.try_div(&den).expect("nonzero Pochhammer"));
                }
            }
            report.record(
                format!("comb-double-product n={n} lambda={lam}"),
                C::from_qtrat(&acc)?,
                C::from_qtrat(&coeff_a(&lam))?,
            );
        }
    }
    Ok(report)
}

/// The defining eigenproperty: M_i E_lambda = xi_i(lambda) E_lambda for
/// every i and every composition with |lambda| <= d_max.
pub fn run_eigen<C: QtScalar>(n: usize, d_max: usize) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("eigen");
    for d in 0..=d_max as i32 {
        for lam in compositions_of(d, n) {
            let rec = compute_e::<C>(&lam)?;
            for i in 1..=n {
                let lhs = apply_m(i, &rec.poly);
                let rhs = rec.poly.scalar_mul(&rec.spectral.eigenvalue::<C>(i));
                report.record(
                    format!("eigen n={n} lambda={lam} i={i}"),
                    lhs.to_string_x(),
                    rhs.to_string_x(),
                );
            }
        }
    }
    Ok(report)
}

/// Operator algebra relations on a fixed random corpus: the quadratic
/// relation H_i^2 = (t-1) H_i + t, the braid relations, and pairwise
/// commutativity of the M_i.
pub fn run_relations<C: QtScalar>(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("relations");
    let t = C::qt_monomial(0, 1);
    let tm1 = t.sub(&C::one());
    for (idx, f) in random_corpus::<C>(n, count, seed).iter().enumerate() {
        for i in 1..n {
            let hf = apply_h(i, f);
            let lhs = apply_h(i, &hf);
            let rhs = hf.scalar_mul(&tm1).add(&f.scalar_mul(&t));
            report.record(
                format!("relations-quadratic n={n} poly={idx} i={i}"),
                lhs.to_string_x(),
                rhs.to_string_x(),
            );
        }
        for i in 1..n.saturating_sub(1) {
            let lhs = apply_h(i, &apply_h(i + 1, &apply_h(i, f)));
            let rhs = apply_h(i + 1, &apply_h(i, &apply_h(i + 1, f)));
            report.record(
                format!("relations-braid n={n} poly={idx} i={i}"),
                lhs.to_string_x(),
                rhs.to_string_x(),
            );
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let lhs = apply_m(i, &apply_m(j, f));
                let rhs = apply_m(j, &apply_m(i, f));
                report.record(
                    format!("relations-commute n={n} poly={idx} i={i} j={j}"),
                    lhs.to_string_x(),
                    rhs.to_string_x(),
                );
            }
        }
    }
    Ok(report)
}

/// Orthogonality, norms, and the coefficient-norm product at t = q^k:
/// off-diagonal scalar products vanish, diagonal ones equal the closed
/// forms, a_lambda (E,E) matches the Pochhammer product, and that product
/// is constant along each orbit.
pub fn run_orthogonality<C: QtScalar>(
    n: usize,
    k: u32,
    d_max: usize,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("orthogonality");
    let w = weight_poly::<C>(n, k);
    let lambdas: Vec<Composition> = (0..=d_max as i32)
        .flat_map(|d| compositions_of(d, n))
        .collect();
    let mut polys = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        polys.push(compute_e::<C>(lam)?.poly);
    }
    for (a, lam) in lambdas.iter().enumerate() {
        for (b, mu) in lambdas.iter().enumerate().skip(a) {
            let sp = scalar_product_prepared(&polys[a], &polys[b], &w)?;
            if lam == mu {
                let want = C::from_qtrat(&norm_closed_form(lam, NormMode::TEqQk(k)))?;
                report.record(format!("norm n={n} k={k} lambda={lam}"), sp, want);
            } else {
                report.record_bool(
                    format!("orthogonality n={n} k={k} lambda={lam} mu={mu}"),
                    sp.is_zero(),
                    format!("(E_{lam}, E_{mu}) = {sp}, expected 0"),
                );
            }
        }
    }
    Ok(report)
}

/// The coefficient-norm product identity at t = q^k: a_mu (E_mu, E_mu)
/// equals prod_i (q^{mu+_i + (n-i)k + 1}; q)_k / (q; q)_k on every orbit
/// element, hence is constant along orbits.
pub fn run_norm_product<C: QtScalar>(
    n: usize,
    k: u32,
    d_max: usize,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("norm-product");
    let w = weight_poly::<C>(n, k);
    for d in 0..=d_max as i32 {
        for lam in partitions_of(d, n) {
            let mut want = QTRat::one();
            for i in 1..=n {
                let e = lam.parts()[i - 1] as i64 + ((n - i) as i64) * k as i64 + 1;
                want = want.mul(
                    &QTRat::qpoch((e, 0), k)
                        .try_div(&QTRat::qpoch((1, 0), k))
                        .expect("(q;q)_k nonzero"),
                );
            }
            let want = C::from_qtrat(&want)?;
            for mu in lam.orbit() {
                let e = compute_e::<C>(&mu)?.poly;
                let sp = scalar_product_prepared(&e, &e, &w)?;
                let a_mu = C::from_qtrat(&coeff_a(&mu))?.subst_t_qk(k)?;
                report.record(
                    format!("norm-product n={n} k={k} mu={mu}"),
                    a_mu.mul(&sp),
                    want.clone(),
                );
            }
        }
    }
    Ok(report)
}

/// The reproducing identity: integrating the truncated kernel against
/// E_lambda(y) w(y) returns C_lambda E_lambda(x), checked for every
/// composition with |lambda| <= l_max at truncation D = |lambda| + 2.
pub fn run_reproducing<C: QtScalar>(
    n: usize,
    k: u32,
    l_max: usize,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("reproducing");
    for d in 0..=l_max as i32 {
        for lam in compositions_of(d, n) {
            let rep = reproducing_check::<C>(&lam, n, k, d as usize + 2)?;
            report.record_bool(
                format!("reproducing n={n} k={k} lambda={lam}"),
                rep.passed,
                format!(
                    "lhs = {}; expected = {}",
                    rep.lhs.to_string_x(),
                    rep.expected.to_string_x()
                ),
            );
        }
    }
    Ok(report)
}

/// Principal specializations: the f/a/E chain at u = q t^n, evaluated
/// E-records against both t^delta closed forms, P-records against the
/// principal value at m = n and n+1, and the u-kernel decomposition.
pub fn run_specialization<C: QtScalar>(
    n: usize,
    d_max: usize,
) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("specialization");
    for d in 0..=d_max as i32 {
        for lam in partitions_of(d, n) {
            // f_lambda(q t^n) = a_lambda E_lambda(t^delta | 1/q, 1/t)
            let f = coeff_f(&lam)?;
            let fval = f
                .eval(&[QTRat::monomial(1, n as i64)])
                .expect("f is a polynomial in u");
            let chain = coeff_a(&lam).mul(&special_values(
                &lam,
                SpecialValue::EAtTDeltaInverted { n },
            )?);
            report.record(
                format!("spec-chain n={n} lambda={lam}"),
                C::from_qtrat(&fval)?,
                C::from_qtrat(&chain)?,
            );
            // evaluated inverted E-record at t^delta
            let rec = compute_e_inverted::<C>(&lam)?;
            let point: Vec<C> = (0..n)
                .map(|j| C::qt_monomial(0, (n - 1 - j) as i64))
                .collect();
            let got = rec.poly.eval(&point).expect("monomial point is invertible");
            let want = C::from_qtrat(&special_values(&lam, SpecialValue::EAtTDeltaInverted { n })?)?;
            report.record(format!("spec-E-tdelta n={n} lambda={lam}"), got, want);
            // evaluated plain E-record at t^{-delta}
            let rec = compute_e::<C>(&lam)?;
            let point: Vec<C> = (0..n)
                .map(|j| C::qt_monomial(0, -((n - 1 - j) as i64)))
                .collect();
            let got = rec.poly.eval(&point).expect("monomial point is invertible");
            let want = C::from_qtrat(&special_values(&lam, SpecialValue::EAtTMinusDelta { n })?)?;
            report.record(format!("spec-E-minus-tdelta n={n} lambda={lam}"), got, want);
            // P at (1, t, ..., t^{m-1}) for m = n, n+1
            for m in [n, n + 1] {
                let mut padded = lam.parts().to_vec();
                padded.resize(m, 0);
                let lam_m = Composition::of(&padded);
                let mut table = ETable::<C>::new(m);
                let p = compute_p(&mut table, &lam_m)?;
                let point: Vec<C> = (0..m).map(|j| C::qt_monomial(0, j as i64)).collect();
                let got = p.eval(&point).expect("monomial point is invertible");
                let want =
                    C::from_qtrat(&special_values(&lam_m, SpecialValue::PPrincipal { m })?)?;
                report.record(format!("spec-P-principal n={n} lambda={lam} m={m}"), got, want);
            }
        }
    }
    // u-kernel decomposition over P with coefficients f_lambda(u)
    let mut table = ETable::<C>::new(n);
    for d in 0..=d_max.min(3) {
        let ok = check_u_expansion::<C>(n, d, &mut table)?;
        report.record_bool(
            format!("spec-u-kernel n={n} d={d}"),
            ok,
            format!("u-kernel degree-{d} component differs from sum f_lambda(u) P_lambda"),
        );
    }
    Ok(report)
}

/// Series-level kernel functional equations: Hecke symmetry in x vs y,
/// and the omega exchange, on the transported E-kernel.
pub fn run_lemma24<C: QtScalar>(n: usize, d_max: usize) -> Result<SuiteReport, SuiteError> {
    let mut report = SuiteReport::new("lemma24");
    let kernel = expand_kernel::<C>(n, d_max, KernelKind::EKernel);
    for i in 1..n {
        let rep = check_functional(&kernel, FunctionalCheck::HeckeSymmetry(i));
        report.record_bool(
            format!("lemma24-hecke n={n} D={d_max} i={i}"),
            rep.passed,
            rep.failures.join("; "),
        );
    }
    let rep = check_functional(&kernel, FunctionalCheck::OmegaExchange);
    report.record_bool(
        format!("lemma24-omega n={n} D={d_max}"),
        rep.passed,
        rep.failures.join("; "),
    );
    let rep = check_functional(&kernel, FunctionalCheck::SpecializeTDelta);
    report.record_bool(
        format!("lemma24-tdelta n={n} D={d_max}"),
        rep.passed,
        rep.failures.join("; "),
    );
    Ok(report)
}

/// The cauchy verify suite as exposed on the command line: kernel
/// decompositions plus the closed-form coefficient identities.
pub fn run_cauchy_full<C: QtScalar>(n: usize, d_max: usize) -> Result<SuiteReport, SuiteError> {
    let mut report = run_cauchy::<C>(n, d_max)?;
    report.merge(run_comb_identities::<C>(n, d_max)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let a = random_corpus::<QTRat>(2, 5, 42);
        let b = random_corpus::<QTRat>(2, 5, 42);
        assert_eq!(a, b);
        let c = random_corpus::<QTRat>(2, 5, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn small_suites_pass() {
        assert!(run_cauchy::<QTRat>(2, 2).unwrap().passed());
        assert!(run_comb_identities::<QTRat>(2, 3).unwrap().passed());
        assert!(run_eigen::<QTRat>(2, 2).unwrap().passed());
        assert!(run_relations::<QTRat>(2, 3, 7).unwrap().passed());
        assert!(run_orthogonality::<QTRat>(2, 1, 2).unwrap().passed());
        assert!(run_reproducing::<QTRat>(1, 1, 2).unwrap().passed());
        assert!(run_specialization::<QTRat>(2, 2).unwrap().passed());
        assert!(run_lemma24::<QTRat>(2, 2).unwrap().passed());
    }

    #[test]
    fn failure_reports_carry_counterexamples() {
        // sabotage: compare a_lambda against b_lambda to see the dump shape
        let mut report = SuiteReport::new("demo");
        report.record(
            "demo-check".to_string(),
            coeff_a(&Composition::of(&[1, 0])),
            crate::weights::coeff_b(&Composition::of(&[1, 0])).unwrap(),
        );
        assert!(!report.passed());
        let f = report.first_failure().unwrap();
        assert!(f.detail.as_ref().unwrap().contains("lhs ="));
    }
}
