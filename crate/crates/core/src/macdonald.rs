//! Construction of the nonsymmetric Macdonald polynomials E_lambda as
//! joint eigenfunctions of the rescaled q-Dunkl operators, the
//! parameter-inverted records E_lambda(.|q^{-1},t^{-1}), orbit traversal
//! through the Hecke action, and the symmetric P_lambda.

use crate::hecke_ops::{apply_h, apply_m, apply_s};
use crate::laurent::LPoly;
use crate::linalg::{self, LinalgError};
use crate::scalar::{QtScalar, ScalarError};
use crate::weights::{
    compositions_of, partitions_of, spectral_vector, Composition, SpectralVector, WeightsError,
};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MacdonaldError {
    #[error("spectral vectors of {0:?} and {1:?} agree in every coordinate")]
    SpectralCollision(Vec<i32>, Vec<i32>),
    #[error("orbit step requires lambda_i != lambda_(i+1), got {0:?} at i={1}")]
    OrbitStepFixedPoint(Vec<i32>, usize),
    #[error("symmetry projection produced a singular system: {0}")]
    SingularSystem(LinalgError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A computed E_lambda: its coefficient table over the lower monomial
/// basis, together with the spectral vector. The coefficient of x^lambda
/// is exactly 1, and M_i poly = xi_i(lambda) poly for every i.
#[derive(Clone, PartialEq, Debug)]
pub struct EPolyRecord<C: QtScalar> {
    pub lambda: Composition,
    pub poly: LPoly<C>,
    pub spectral: SpectralVector,
}

/// All compositions mu of |lambda| into n parts with mu+ <= lambda+ in
/// dominance, in a deterministic linear extension of the partial ordering,
/// largest first: sort by the dominant rearrangement lexicographically
/// descending, then by the composition itself lexicographically
/// descending. (Lexicographic order extends dominance on equal weights.)
pub fn lower_basis(lambda: &Composition) -> Vec<Composition> {
    let lp = lambda.dominant();
    let mut out: Vec<Composition> = compositions_of(lambda.weight(), lambda.len())
        .into_iter()
        .filter(|mu| {
            let mp = mu.dominant();
            // dominance on equal-weight partitions by prefix sums
            let mut sa = 0;
            let mut sb = 0;
            for (a, b) in mp.parts().iter().zip(lp.parts()) {
                sa += a;
                sb += b;
                if sa > sb {
                    return false;
                }
            }
            true
        })
        .collect();
    out.sort_by(|a, b| {
        b.dominant()
            .parts()
            .cmp(a.dominant().parts())
            .then_with(|| b.parts().cmp(a.parts()))
    });
    out
}

/// Builds E_lambda by triangular back-substitution: c_lambda = 1, and for
/// every basis monomial mu below, the least i separating the spectra of mu
/// and lambda yields c_mu = (coefficient of x^mu in M_i applied to the
/// partial sum) / (xi_i(lambda) - xi_i(mu)).
pub fn compute_e<C: QtScalar>(lambda: &Composition) -> Result<EPolyRecord<C>, MacdonaldError> {
    let n = lambda.len();
    let basis = lower_basis(lambda);
    let spec_lambda = spectral_vector(lambda);
    let mut coeffs: BTreeMap<Vec<i32>, C> = BTreeMap::new();
    coeffs.insert(lambda.to_key(), C::one());
    // cache of M_i x^mu per (i, mu)
    let mut images: BTreeMap<(usize, Vec<i32>), LPoly<C>> = BTreeMap::new();
    for mu in &basis {
        if mu == lambda {
            continue;
        }
        let spec_mu = spectral_vector(mu);
        let Some(i) = (1..=n).find(|&i| spec_mu.pairs()[i - 1] != spec_lambda.pairs()[i - 1])
        else {
            return Err(MacdonaldError::SpectralCollision(
                lambda.to_key(),
                mu.to_key(),
            ));
        };
        let mut num = C::zero();
        let mu_key = mu.to_key();
        let mu_exp: Vec<i32> = mu_key.clone();
        for (nu_key, c_nu) in &coeffs {
            let image = images.entry((i, nu_key.clone())).or_insert_with(|| {
                let mono = LPoly::monomial(n, nu_key.clone(), C::one());
                apply_m(i, &mono)
            });
            let a = image.coeff(&mu_exp);
            if !a.is_zero() {
                num = num.add(&a.mul(c_nu));
            }
        }
        let gap = spec_lambda
            .eigenvalue::<C>(i)
            .sub(&spec_mu.eigenvalue::<C>(i));
        let c_mu = num.try_div(&gap)?;
        if !c_mu.is_zero() {
            coeffs.insert(mu_key, c_mu);
        }
    }
    let mut poly = LPoly::zero(n);
    for (e, c) in coeffs {
        poly.add_term(e, c);
    }
    Ok(EPolyRecord {
        lambda: lambda.clone(),
        poly,
        spectral: spec_lambda,
    })
}

/// E_lambda with parameters inverted: q -> q^{-1}, t -> t^{-1} applied to
/// every coefficient. Monic with the same support.
pub fn compute_e_inverted<C: QtScalar>(
    lambda: &Composition,
) -> Result<EPolyRecord<C>, MacdonaldError> {
    let rec = compute_e::<C>(lambda)?;
    Ok(EPolyRecord {
        lambda: rec.lambda,
        poly: rec.poly.map_coeffs(|c| c.invert_params()),
        spectral: rec.spectral,
    })
}

/// Memoized table of E-records for one fixed n.
pub struct ETable<C: QtScalar> {
    n: usize,
    records: BTreeMap<Vec<i32>, EPolyRecord<C>>,
}

impl<C: QtScalar> ETable<C> {
    pub fn new(n: usize) -> Self {
        ETable {
            n,
            records: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn record(&mut self, lambda: &Composition) -> Result<&EPolyRecord<C>, MacdonaldError> {
        assert_eq!(lambda.len(), self.n);
        if !self.records.contains_key(lambda.parts()) {
            let rec = compute_e::<C>(lambda)?;
            self.records.insert(lambda.to_key(), rec);
        }
        Ok(&self.records[lambda.parts()])
    }

    pub fn poly(&mut self, lambda: &Composition) -> Result<LPoly<C>, MacdonaldError> {
        Ok(self.record(lambda)?.poly.clone())
    }
}

/// Crosses the wall from E_lambda to E_{s_i lambda} using the Hecke
/// action H_i E = u E + v E_{s_i lambda}. Requires lambda_i != lambda_{i+1}.
pub fn orbit_step<C: QtScalar>(
    rec: &EPolyRecord<C>,
    i: usize,
) -> Result<EPolyRecord<C>, MacdonaldError> {
    let lambda = &rec.lambda;
    let a = lambda.parts()[i - 1] - lambda.parts()[i]; // <alpha_i, lambda>
    if a == 0 {
        return Err(MacdonaldError::OrbitStepFixedPoint(lambda.to_key(), i));
    }
    let k = lambda.k_vector();
    let b = k[i] - k[i - 1]; // <alpha_i, rho(lambda)>
    let t = C::qt_monomial(0, 1);
    // u = (t - 1)/(1 - q^{-a} t^{-b})
    let u = t.sub(&C::one()).try_div(
        &C::one().sub(&C::qt_monomial(-(a as i64), -(b as i64))),
    )?;
    let v = if a < 0 {
        t
    } else {
        // (1 - q^a t^{b+1})(1 - q^a t^{b-1}) / (1 - q^a t^b)^2
        let om = |db: i64| C::one().sub(&C::qt_monomial(a as i64, b as i64 + db));
        let den = om(0);
        om(1).mul(&om(-1)).try_div(&den.mul(&den))?
    };
    let hpoly = apply_h(i, &rec.poly);
    let poly = hpoly
        .sub(&rec.poly.scalar_mul(&u))
        .scalar_mul(&C::one().try_div(&v)?);
    let target = lambda.apply_s(i);
    let spectral = spectral_vector(&target);
    Ok(EPolyRecord {
        lambda: target,
        poly,
        spectral,
    })
}

/// The symmetric Macdonald polynomial P_lambda (lambda a partition):
/// the unique combination sum c_mu E_mu over the orbit with c_lambda = 1
/// that is invariant under every s_i, found by solving the exact linear
/// system {s_i P = P}.
pub fn compute_p<C: QtScalar>(
    table: &mut ETable<C>,
    lambda: &Composition,
) -> Result<LPoly<C>, MacdonaldError> {
    if !lambda.is_partition() {
        return Err(WeightsError::NotAPartition(lambda.parts().to_vec()).into());
    }
    let n = lambda.len();
    let orbit = lambda.orbit();
    let polys: Vec<LPoly<C>> = orbit
        .iter()
        .map(|mu| table.poly(mu))
        .collect::<Result<_, _>>()?;
    let lambda_pos = orbit.iter().position(|mu| mu == lambda).unwrap();
    if orbit.len() == 1 {
        return Ok(polys[lambda_pos].clone());
    }
    // unknowns: c_mu for mu != lambda; equations: coefficients of
    // s_i P - P = 0 for every i
    let unknowns: Vec<usize> = (0..orbit.len()).filter(|&j| j != lambda_pos).collect();
    let mut rows: Vec<Vec<C>> = Vec::new();
    let mut rhs: Vec<C> = Vec::new();
    for i in 1..n {
        let diffs: Vec<LPoly<C>> = polys.iter().map(|p| apply_s(i, p).sub(p)).collect();
        let mut monomials: std::collections::BTreeSet<Vec<i32>> = Default::default();
        for d in &diffs {
            for (e, _) in d.terms() {
                monomials.insert(e.clone());
            }
        }
        for e in monomials {
            let row: Vec<C> = unknowns.iter().map(|&j| diffs[j].coeff(&e)).collect();
            rows.push(row);
            rhs.push(diffs[lambda_pos].coeff(&e).neg());
        }
    }
    let sol = linalg::solve_unique(rows, rhs).map_err(MacdonaldError::SingularSystem)?;
    let mut p = polys[lambda_pos].clone();
    for (idx, &j) in unknowns.iter().enumerate() {
        p = p.add(&polys[j].scalar_mul(&sol[idx]));
    }
    Ok(p)
}

/// The orbit expansion coefficients of P_lambda in the E-basis, keyed by
/// composition; the dominant coefficient is 1.
pub fn p_expansion_coeffs<C: QtScalar>(
    table: &mut ETable<C>,
    lambda: &Composition,
) -> Result<Vec<(Composition, C)>, MacdonaldError> {
    let p = compute_p(table, lambda)?;
    // triangular read-off: the coefficient of x^mu in P determines c_mu
    // once the contributions of E_nu for nu above mu are subtracted
    let mut orbit = lambda.orbit();
    orbit.sort_by(|a, b| b.parts().cmp(a.parts()));
    let mut rem = p;
    let mut out = Vec::new();
    for mu in orbit {
        let c = rem.coeff(mu.parts());
        if !c.is_zero() {
            let e = table.poly(&mu)?;
            rem = rem.sub(&e.scalar_mul(&c));
        }
        out.push((mu, c));
    }
    debug_assert!(rem.is_zero());
    out.sort_by(|a, b| a.0.parts().cmp(b.0.parts()));
    Ok(out)
}

/// Unitriangular change-of-basis determinant between the E-records of one
/// degree and the monomial basis, in the lower_basis ordering.
pub fn basis_determinant<C: QtScalar>(n: usize, d: i32) -> Result<C, MacdonaldError> {
    let mut cs = compositions_of(d, n);
    cs.sort_by(|a, b| {
        b.dominant()
            .parts()
            .cmp(a.dominant().parts())
            .then_with(|| b.parts().cmp(a.parts()))
    });
    let mut mat: Vec<Vec<C>> = Vec::with_capacity(cs.len());
    for lam in &cs {
        let rec = compute_e::<C>(lam)?;
        mat.push(cs.iter().map(|mu| rec.poly.coeff(mu.parts())).collect());
    }
    linalg::determinant(mat).map_err(MacdonaldError::SingularSystem)
}

/// Partitions of every degree up to `dmax` with at most n parts.
pub fn partitions_up_to(dmax: i32, n: usize) -> Vec<Composition> {
    (0..=dmax).flat_map(|d| partitions_of(d, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_field::QTRat;
    use crate::weights::{special_values, SpecialValue};

    fn c(parts: &[i32]) -> Composition {
        Composition::of(parts)
    }

    fn omm(a: i64, b: i64) -> QTRat {
        QTRat::one_minus_monomial(a, b)
    }

    #[test]
    fn lower_basis_examples() {
        assert_eq!(lower_basis(&c(&[1, 0])), vec![c(&[1, 0]), c(&[0, 1])]);
        assert_eq!(
            lower_basis(&c(&[2, 0])),
            vec![c(&[2, 0]), c(&[0, 2]), c(&[1, 1])]
        );
        assert_eq!(lower_basis(&c(&[1, 1])), vec![c(&[1, 1])]);
    }

    #[test]
    fn lower_basis_is_a_linear_extension() {
        use crate::weights::{preceq_compare, PreceqOrd};
        for lam in [c(&[2, 0, 1]), c(&[3, 1]), c(&[0, 2, 2])] {
            let basis = lower_basis(&lam);
            for (i, mu) in basis.iter().enumerate() {
                for nu in &basis[i + 1..] {
                    // nothing later may dominate an earlier element
                    assert_ne!(preceq_compare(mu, nu), PreceqOrd::Less, "{mu} before {nu}");
                }
            }
        }
    }

    #[test]
    fn compute_e_base_cases() {
        // E_(0,1) = x2
        let rec = compute_e::<QTRat>(&c(&[0, 1])).unwrap();
        assert_eq!(rec.poly, LPoly::var(2, 1));
        // E_(1,1) = x1 x2
        let rec = compute_e::<QTRat>(&c(&[1, 1])).unwrap();
        assert_eq!(rec.poly, LPoly::monomial(2, vec![1, 1], QTRat::one()));
        // E_(1,0) = x1 + q(1-t)/(1-qt) x2
        let rec = compute_e::<QTRat>(&c(&[1, 0])).unwrap();
        let coef = QTRat::monomial(1, 0)
            .mul(&omm(0, 1))
            .try_div(&omm(1, 1))
            .unwrap();
        let want = LPoly::var(2, 0).add(&LPoly::var(2, 1).scalar_mul(&coef));
        assert_eq!(rec.poly, want);
    }

    #[test]
    fn eigen_property_small() {
        for n in 1..=3usize {
            for d in 0..=2 {
                for lam in compositions_of(d, n) {
                    let rec = compute_e::<QTRat>(&lam).unwrap();
                    for i in 1..=n {
                        let got = apply_m(i, &rec.poly);
                        let want = rec.poly.scalar_mul(&rec.spectral.eigenvalue::<QTRat>(i));
                        assert_eq!(got, want, "M_{i} on E_{lam}");
                    }
                }
            }
        }
    }

    #[test]
    fn support_is_monic_and_lower() {
        use crate::weights::{preceq_compare, PreceqOrd};
        for lam in compositions_of(3, 3) {
            let rec = compute_e::<QTRat>(&lam).unwrap();
            assert!(rec.poly.coeff(lam.parts()).is_one(), "monic at {lam}");
            for (e, _) in rec.poly.terms() {
                let mu = Composition::of(e);
                let ord = preceq_compare(&mu, &lam);
                assert!(
                    ord == PreceqOrd::Less || ord == PreceqOrd::Equal,
                    "support {mu} outside the lower set of {lam}"
                );
            }
        }
    }

    #[test]
    fn inverted_record_examples() {
        // E_(1,0) inverted: y1 + (1-t)/(1-qt) y2
        let rec = compute_e_inverted::<QTRat>(&c(&[1, 0])).unwrap();
        let coef = omm(0, 1).try_div(&omm(1, 1)).unwrap();
        let want = LPoly::var(2, 0).add(&LPoly::var(2, 1).scalar_mul(&coef));
        assert_eq!(rec.poly, want);
        assert_eq!(
            compute_e_inverted::<QTRat>(&c(&[0, 1])).unwrap().poly,
            LPoly::var(2, 1)
        );
        assert_eq!(
            compute_e_inverted::<QTRat>(&c(&[0, 0])).unwrap().poly,
            LPoly::one(2)
        );
    }

    #[test]
    fn inverted_record_is_eigenvector_of_inverted_operators() {
        use crate::hecke_ops::apply_m_inverted_params;
        for lam in compositions_of(2, 2) {
            let rec = compute_e_inverted::<QTRat>(&lam).unwrap();
            for i in 1..=2 {
                let got = apply_m_inverted_params(i, &rec.poly);
                let (eq, et) = rec.spectral.pairs()[i - 1];
                let want = rec
                    .poly
                    .scalar_mul(&QTRat::monomial(-(eq as i64), -(et as i64)));
                assert_eq!(got, want, "inverted M_{i} on {lam}");
            }
        }
    }

    #[test]
    fn orbit_step_examples() {
        // from E_(0,1) with i=1 to E_(1,0)
        let rec01 = compute_e::<QTRat>(&c(&[0, 1])).unwrap();
        let rec10 = orbit_step(&rec01, 1).unwrap();
        assert_eq!(rec10.poly, compute_e::<QTRat>(&c(&[1, 0])).unwrap().poly);
        // and back
        let back = orbit_step(&rec10, 1).unwrap();
        assert_eq!(back.poly, rec01.poly);
        // fixed point errors
        let rec11 = compute_e::<QTRat>(&c(&[1, 1])).unwrap();
        assert!(matches!(
            orbit_step(&rec11, 1),
            Err(MacdonaldError::OrbitStepFixedPoint(_, 1))
        ));
    }

    #[test]
    fn orbit_consistency() {
        for n in 2..=3usize {
            for d in 0..=3 {
                for lam in partitions_of(d, n) {
                    let rec = compute_e::<QTRat>(&lam).unwrap();
                    // walk every adjacent transposition chain from lambda
                    let mut frontier = vec![rec];
                    let mut seen = vec![lam.to_key()];
                    while let Some(r) = frontier.pop() {
                        for i in 1..n {
                            if r.lambda.parts()[i - 1] == r.lambda.parts()[i] {
                                continue;
                            }
                            let next = orbit_step(&r, i).unwrap();
                            let direct = compute_e::<QTRat>(&next.lambda).unwrap();
                            assert_eq!(next.poly, direct.poly, "orbit step to {}", next.lambda);
                            if !seen.contains(&next.lambda.to_key()) {
                                seen.push(next.lambda.to_key());
                                frontier.push(next);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn compute_p_examples() {
        let mut table = ETable::<QTRat>::new(2);
        // P_(1,0) = x1 + x2
        let p = compute_p(&mut table, &c(&[1, 0])).unwrap();
        assert_eq!(p, LPoly::var(2, 0).add(&LPoly::var(2, 1)));
        // P_(1,1) = x1 x2
        let p = compute_p(&mut table, &c(&[1, 1])).unwrap();
        assert_eq!(p, LPoly::monomial(2, vec![1, 1], QTRat::one()));
        // P_(2,0) = x1^2 + x2^2 + (1+q)(1-t)/(1-qt) x1 x2
        let p = compute_p(&mut table, &c(&[2, 0])).unwrap();
        let coef = QTRat::one()
            .add(&QTRat::monomial(1, 0))
            .mul(&omm(0, 1))
            .try_div(&omm(1, 1))
            .unwrap();
        let want = LPoly::monomial(2, vec![2, 0], QTRat::one())
            .add(&LPoly::monomial(2, vec![0, 2], QTRat::one()))
            .add(&LPoly::monomial(2, vec![1, 1], coef));
        assert_eq!(p, want);
        // symmetry and monicity for a 3-variable case
        let mut table3 = ETable::<QTRat>::new(3);
        let lam = c(&[2, 1, 0]);
        let p = compute_p(&mut table3, &lam).unwrap();
        for i in 1..3 {
            assert_eq!(apply_s(i, &p), p);
        }
        assert!(p.coeff(lam.parts()).is_one());
    }

    #[test]
    fn p_expansion_documents_orbit_coefficients() {
        // the empirical expansion coefficient of E_(0,1) inside P_(1,0)
        // is (1-q)/(1-qt)
        let mut table = ETable::<QTRat>::new(2);
        let coeffs = p_expansion_coeffs(&mut table, &c(&[1, 0])).unwrap();
        let c01 = coeffs.iter().find(|(mu, _)| mu == &c(&[0, 1])).unwrap();
        assert_eq!(c01.1, omm(1, 0).try_div(&omm(1, 1)).unwrap());
        let c10 = coeffs.iter().find(|(mu, _)| mu == &c(&[1, 0])).unwrap();
        assert!(c10.1.is_one());
    }

    #[test]
    fn symmetric_operator_eigenvalue_on_p() {
        // (sum_i t^{i-1} M_i) P_lambda = (sum_i q^{lambda_i} t^{n-i}) P_lambda
        for n in 2..=3usize {
            let mut table = ETable::<QTRat>::new(n);
            for d in 0..=2 {
                for lam in partitions_of(d, n) {
                    let p = compute_p(&mut table, &lam).unwrap();
                    let mut lhs = LPoly::zero(n);
                    let mut eig = QTRat::zero();
                    for i in 1..=n {
                        let ti = QTRat::monomial(0, (i - 1) as i64);
                        lhs = lhs.add(&apply_m(i, &p).scalar_mul(&ti));
                        eig = eig.add(&QTRat::monomial(
                            lam.parts()[i - 1] as i64,
                            (n - i) as i64,
                        ));
                    }
                    assert_eq!(lhs, p.scalar_mul(&eig), "{lam}");
                }
            }
        }
    }

    #[test]
    fn basis_determinant_is_one() {
        for n in 2..=3usize {
            for d in 0..=3 {
                let det = basis_determinant::<QTRat>(n, d).unwrap();
                assert!(det.is_one(), "n={n} d={d}: det = {det}");
            }
        }
    }

    #[test]
    fn principal_specializations() {
        // inverted E at (t^{n-1}, ..., t, 1) matches the closed form
        for n in 2..=3usize {
            for d in 0..=3 {
                for lam in partitions_of(d, n) {
                    let rec = compute_e_inverted::<QTRat>(&lam).unwrap();
                    let point: Vec<QTRat> = (0..n)
                        .map(|j| QTRat::monomial(0, (n - 1 - j) as i64))
                        .collect();
                    let got = rec.poly.eval(&point).unwrap();
                    let want =
                        special_values(&lam, SpecialValue::EAtTDeltaInverted { n }).unwrap();
                    assert_eq!(got, want, "{lam} n={n}");
                }
            }
        }
        // P at (1, t, ..., t^{m-1}) matches for m = n and n+1; for
        // m = n+1 the partition is padded with a zero part and P is
        // recomputed in m variables
        let n = 2usize;
        for d in 0..=3 {
            for lam in partitions_of(d, n) {
                for m in [n, n + 1] {
                    let mut padded = lam.parts().to_vec();
                    padded.resize(m, 0);
                    let lam_m = Composition::of(&padded);
                    let mut table = ETable::<QTRat>::new(m);
                    let p = compute_p(&mut table, &lam_m).unwrap();
                    let point: Vec<QTRat> =
                        (0..m).map(|j| QTRat::monomial(0, j as i64)).collect();
                    let got = p.eval(&point).unwrap();
                    let want =
                        special_values(&lam_m, SpecialValue::PPrincipal { m }).unwrap();
                    assert_eq!(got, want, "{lam} m={m}");
                }
            }
        }
    }
}
