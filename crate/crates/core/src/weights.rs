//! Combinatorics of compositions and partitions, and every closed-form
//! coefficient the engine verifies against:
//!
//! - the partial ordering on compositions (orbit dominance refined by
//!   dominance within an orbit),
//! - the k-vector k_i = #{j<i: mu_j >= mu_i} + #{j>i: mu_j > mu_i} and the
//!   spectral vector xi_i(mu) = q^{mu_i} t^{n-i-k_i} of eigenvalues of the
//!   rescaled q-Dunkl operators,
//! - diagram statistics: arm a(s) = mu_i - j, coarm a'(s) = j - 1, coleg
//!   l'(s) = i - 1, and the generalized leg
//!   l(s) = #{k>i: j <= mu_k <= mu_i} + #{k<i: j <= mu_k + 1 <= mu_i},
//! - the kernel coefficients a_mu = prod (1 - q^{a+1} t^{l+1})/(1 - q^{a+1} t^l)
//!   and b_lambda = prod (1 - q^a t^{l+1})/(1 - q^{a+1} t^l),
//! - f_lambda(u) = t^{n(lambda)} prod (1 - q^{a'} t^{-l'} u)/(1 - q^{a+1} t^l),
//! - scalar-product norms at t = q^k and the orbit ratio,
//! - the reproducing constant C_lambda, and principal specializations.

use crate::laurent::LPoly;
use crate::qt_field::QTRat;
use crate::scalar::QtScalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightsError {
    #[error("composition {0:?} is not a partition")]
    NotAPartition(Vec<i32>),
    #[error("parts must be nonnegative, got {0:?}")]
    NegativePart(Vec<i32>),
}

/// A vector of n nonnegative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Composition {
    parts: Vec<i32>,
}

impl Composition {
    pub fn new(parts: Vec<i32>) -> Result<Self, WeightsError> {
        if parts.iter().any(|&p| p < 0) {
            return Err(WeightsError::NegativePart(parts));
        }
        Ok(Composition { parts })
    }

    /// Convenience constructor for literal compositions; panics on
    /// negative parts.
    pub fn of(parts: &[i32]) -> Self {
        Self::new(parts.to_vec()).expect("nonnegative parts")
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> i32 {
        self.parts.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// The partition obtained by sorting the parts in decreasing order.
    pub fn dominant(&self) -> Composition {
        let mut p = self.parts.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Composition { parts: p }
    }

    /// k_i = #{j < i: mu_j >= mu_i} + #{j > i: mu_j > mu_i}.
    pub fn k_vector(&self) -> Vec<i32> {
        let n = self.parts.len();
        (0..n)
            .map(|i| {
                let before = self.parts[..i].iter().filter(|&&p| p >= self.parts[i]).count();
                let after = self.parts[i + 1..].iter().filter(|&&p| p > self.parts[i]).count();
                (before + after) as i32
            })
            .collect()
    }

    /// mu with parts i and i+1 exchanged (1-based i).
    pub fn apply_s(&self, i: usize) -> Composition {
        assert!(i >= 1 && i < self.parts.len());
        let mut p = self.parts.clone();
        p.swap(i - 1, i);
        Composition { parts: p }
    }

    /// All distinct rearrangements of the parts.
    pub fn orbit(&self) -> Vec<Composition> {
        let mut out = vec![self.dominant()];
        let mut frontier = out.clone();
        while let Some(c) = frontier.pop() {
            for i in 1..c.len() {
                let s = c.apply_s(i);
                if !out.contains(&s) {
                    out.push(s.clone());
                    frontier.push(s);
                }
            }
        }
        out.sort();
        out
    }

    /// Number of columns of the diagram, i.e. max part.
    pub fn max_part(&self) -> i32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// n(lambda) = sum over boxes of the coleg = sum_i (i-1) lambda_i.
    pub fn n_stat(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as i64) * (p as i64))
            .sum()
    }

    /// Conjugate partition column lengths; callers must pass a partition.
    pub fn conjugate_parts(&self) -> Vec<i32> {
        let m = self.max_part();
        (1..=m)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as i32)
            .collect()
    }

    pub fn to_key(&self) -> Vec<i32> {
        self.parts.clone()
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}]",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreceqOrd {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Dominance comparison of equal-weight integer vectors by prefix sums:
/// a <= b iff every prefix sum of a is <= the one of b.
fn dominance_leq(a: &[i32], b: &[i32]) -> bool {
    debug_assert_eq!(a.iter().sum::<i32>(), b.iter().sum::<i32>());
    let mut sa = 0;
    let mut sb = 0;
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

/// The partial ordering: mu preceq lambda iff mu+ < lambda+ strictly in
/// dominance, or mu+ = lambda+ and mu <= lambda in dominance. Defined only
/// within one degree; different weights (or lengths) are incomparable.
pub fn preceq_compare(mu: &Composition, lambda: &Composition) -> PreceqOrd {
    if mu.len() != lambda.len() || mu.weight() != lambda.weight() {
        return PreceqOrd::Incomparable;
    }
    if mu == lambda {
        return PreceqOrd::Equal;
    }
    let mp = mu.dominant();
    let lp = lambda.dominant();
    let (le, ge) = if mp == lp {
        (
            dominance_leq(mu.parts(), lambda.parts()),
            dominance_leq(lambda.parts(), mu.parts()),
        )
    } else {
        (
            dominance_leq(mp.parts(), lp.parts()),
            dominance_leq(lp.parts(), mp.parts()),
        )
    };
    match (le, ge) {
        (true, false) => PreceqOrd::Less,
        (false, true) => PreceqOrd::Greater,
        (false, false) => PreceqOrd::Incomparable,
        (true, true) => unreachable!("equal handled above; dominance is antisymmetric"),
    }
}

/// Joint eigenvalue data of the rescaled q-Dunkl operators on E_mu: at
/// position i the eigenvalue is q^{pairs[i].0} t^{pairs[i].1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectralVector {
    pairs: Vec<(i32, i32)>,
}

impl SpectralVector {
    pub fn pairs(&self) -> &[(i32, i32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The eigenvalue xi_i as a scalar (1-based i).
    pub fn eigenvalue<C: QtScalar>(&self, i: usize) -> C {
        let (eq, et) = self.pairs[i - 1];
        C::qt_monomial(eq as i64, et as i64)
    }
}

/// xi_i(mu) = q^{mu_i} t^{n - i - k_mu(i)}.
pub fn spectral_vector(mu: &Composition) -> SpectralVector {
    let n = mu.len() as i32;
    let k = mu.k_vector();
    SpectralVector {
        pairs: mu
            .parts()
            .iter()
            .zip(&k)
            .enumerate()
            .map(|(i0, (&p, &ki))| (p, n - (i0 as i32 + 1) - ki))
            .collect(),
    }
}

/// One box of a composition diagram with its statistics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DiagramBox {
    pub row: usize,
    pub col: usize,
    pub arm: i32,
    pub coarm: i32,
    pub leg: i32,
    pub coleg: i32,
}

/// All boxes (i, j), 1 <= j <= mu_i, with arm, coarm, generalized leg, and
/// coleg. For partitions the generalized leg reduces to the column leg.
#[allow(clippy::int_plus_one)] // keep the j <= mu_k + 1 <= mu_i shape
pub fn diagram_stats(mu: &Composition) -> Vec<DiagramBox> {
    let mut out = Vec::new();
    for (i0, &mi) in mu.parts().iter().enumerate() {
        let i = i0 + 1;
        for j in 1..=mi {
            let low = mu.parts()[i..]
                .iter()
                .filter(|&&mk| j <= mk && mk <= mi)
                .count() as i32;
            let up = mu.parts()[..i0]
                .iter()
                .filter(|&&mk| j <= mk + 1 && mk + 1 <= mi)
                .count() as i32;
            out.push(DiagramBox {
                row: i,
                col: j as usize,
                arm: mi - j,
                coarm: j - 1,
                leg: up + low,
                coleg: i0 as i32,
            });
        }
    }
    out
}

/// d_mu = prod over boxes of (1 - q^{a+1} t^{l+1}).
pub fn coeff_d(mu: &Composition) -> QTRat {
    diagram_stats(mu).iter().fold(QTRat::one(), |acc, b| {
        acc.mul(&QTRat::one_minus_monomial((b.arm + 1) as i64, (b.leg + 1) as i64))
    })
}

/// d'_mu = prod over boxes of (1 - q^{a+1} t^l).
pub fn coeff_d_prime(mu: &Composition) -> QTRat {
    diagram_stats(mu).iter().fold(QTRat::one(), |acc, b| {
        acc.mul(&QTRat::one_minus_monomial((b.arm + 1) as i64, b.leg as i64))
    })
}

/// The kernel coefficient a_mu = d_mu / d'_mu.
pub fn coeff_a(mu: &Composition) -> QTRat {
    diagram_stats(mu).iter().fold(QTRat::one(), |acc, b| {
        let num = QTRat::one_minus_monomial((b.arm + 1) as i64, (b.leg + 1) as i64);
        let den = QTRat::one_minus_monomial((b.arm + 1) as i64, b.leg as i64);
        acc.mul(&num.try_div(&den).expect("nonzero binomial"))
    })
}

/// The symmetric Cauchy coefficient b_lambda (partitions only).
pub fn coeff_b(lambda: &Composition) -> Result<QTRat, WeightsError> {
    if !lambda.is_partition() {
        return Err(WeightsError::NotAPartition(lambda.parts().to_vec()));
    }
    Ok(diagram_stats(lambda).iter().fold(QTRat::one(), |acc, b| {
        let num = QTRat::one_minus_monomial(b.arm as i64, (b.leg + 1) as i64);
        let den = QTRat::one_minus_monomial((b.arm + 1) as i64, b.leg as i64);
        acc.mul(&num.try_div(&den).expect("nonzero binomial"))
    }))
}

/// f_lambda(u) as a polynomial in one variable u over Q(q,t):
/// t^{n(lambda)} prod (1 - q^{a'} t^{-l'} u) / (1 - q^{a+1} t^l).
pub fn coeff_f(lambda: &Composition) -> Result<LPoly<QTRat>, WeightsError> {
    if !lambda.is_partition() {
        return Err(WeightsError::NotAPartition(lambda.parts().to_vec()));
    }
    let mut out = LPoly::constant(1, QTRat::monomial(0, lambda.n_stat()));
    for b in diagram_stats(lambda) {
        let factor = LPoly::one(1).sub(&LPoly::monomial(
            1,
            vec![1],
            QTRat::monomial(b.coarm as i64, -(b.coleg as i64)),
        ));
        let den = QTRat::one_minus_monomial((b.arm + 1) as i64, b.leg as i64);
        out = out
            .mul(&factor)
            .scalar_mul(&den.recip().expect("nonzero binomial"));
    }
    Ok(out)
}

/// Exponent data (a, b) = (-<alpha, mu>, -<alpha, rho(mu)>) over the
/// positive roots alpha with <alpha, mu> < 0. For alpha = e_i - e_j (i<j)
/// these are (mu_j - mu_i, k_mu(i) - k_mu(j)).
pub fn negative_root_data(mu: &Composition) -> Vec<(i32, i32)> {
    let k = mu.k_vector();
    let n = mu.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if mu.parts()[i] < mu.parts()[j] {
                out.push((mu.parts()[j] - mu.parts()[i], k[i] - k[j]));
            }
        }
    }
    out
}

/// The orbit ratio a_mu / a_{mu+} as the root product
/// prod (1 - q^a t^{b+1})(1 - q^a t^{b-1}) / (1 - q^a t^b)^2.
pub fn coeff_a_orbit_ratio(mu: &Composition) -> QTRat {
    negative_root_data(mu).iter().fold(QTRat::one(), |acc, &(a, b)| {
        let num = QTRat::one_minus_monomial(a as i64, (b + 1) as i64)
            .mul(&QTRat::one_minus_monomial(a as i64, (b - 1) as i64));
        let den = QTRat::one_minus_monomial(a as i64, b as i64);
        let den = den.mul(&den);
        acc.mul(&num.try_div(&den).expect("nonzero binomial"))
    })
}

/// The norm ratio (E_mu, E_mu)/(E_{mu+}, E_{mu+}), the reciprocal of the
/// orbit ratio for a_mu, in full (q, t).
pub fn norm_orbit_ratio(mu: &Composition) -> QTRat {
    coeff_a_orbit_ratio(mu)
        .recip()
        .expect("orbit ratio is nonzero")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMode {
    /// Exact value at t = q^k, a rational function of q alone.
    TEqQk(u32),
    /// The general-t infinite products with every infinite q-Pochhammer
    /// truncated at D factors; display only.
    InfiniteProductTruncated(u32),
}

/// Closed form of the self scalar product (E_mu, E_mu). For partitions at
/// t = q^k this is prod_{i<j} (q^{mu_i - mu_j + 1 + k(j-i)}; q)_k /
/// (q^{mu_i - mu_j + 1 + k(j-i-1)}; q)_k; a composition picks up the orbit
/// ratio on top of its dominant rearrangement.
pub fn norm_closed_form(mu: &Composition, mode: NormMode) -> QTRat {
    let lp = mu.dominant();
    let n = lp.len();
    let base = match mode {
        NormMode::TEqQk(k) => {
            let mut acc = QTRat::one();
            for i in 1..=n {
                for j in i + 1..=n {
                    let d = (lp.parts()[i - 1] - lp.parts()[j - 1]) as i64;
                    let ki = k as i64;
                    let num = QTRat::qpoch((d + 1 + ki * ((j - i) as i64), 0), k);
                    let den = QTRat::qpoch((d + 1 + ki * ((j - i - 1) as i64), 0), k);
                    acc = acc.mul(&num.try_div(&den).expect("nonzero Pochhammer"));
                }
            }
            acc
        }
        NormMode::InfiniteProductTruncated(depth) => {
            let mut acc = QTRat::one();
            for i in 1..=n {
                for j in i + 1..=n {
                    let d = (lp.parts()[i - 1] - lp.parts()[j - 1] + 1) as i64;
                    let ji = (j - i) as i64;
                    let num = QTRat::qpoch((d, ji), depth);
                    let num = num.mul(&num.clone());
                    let den = QTRat::qpoch((d, ji + 1), depth)
                        .mul(&QTRat::qpoch((d, ji - 1), depth));
                    acc = acc.mul(&num.try_div(&den).expect("nonzero Pochhammer"));
                }
            }
            acc
        }
    };
    if mu.is_partition() {
        return base;
    }
    let ratio = match mode {
        NormMode::TEqQk(k) => norm_orbit_ratio(mu)
            .subst_t_qk(k)
            .expect("orbit ratio regular at t = q^k"),
        NormMode::InfiniteProductTruncated(_) => norm_orbit_ratio(mu),
    };
    base.mul(&ratio)
}

/// The reproducing constant at t = q^k:
/// C_mu = prod_i (q^{mu+_i + (n-i)k + 1}; q)_k / (q; q)_k. Depends only on
/// the orbit of mu.
pub fn c_lambda(mu: &Composition, k: u32) -> QTRat {
    let lp = mu.dominant();
    let n = lp.len();
    let mut acc = QTRat::one();
    for i in 1..=n {
        let e = lp.parts()[i - 1] as i64 + ((n - i) as i64) * (k as i64) + 1;
        let num = QTRat::qpoch((e, 0), k);
        let den = QTRat::qpoch((1, 0), k);
        acc = acc.mul(&num.try_div(&den).expect("(q;q)_k is nonzero"));
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialValue {
    /// E_lambda(t^delta | q^{-1}, t^{-1}) with t^delta = (t^{n-1}, ..., t, 1):
    /// t^{n(lambda)} prod (1 - q^{a'+1} t^{n-l'}) / (1 - q^{a+1} t^{l+1}).
    EAtTDeltaInverted { n: usize },
    /// E_lambda(t^{-delta} | q, t):
    /// t^{-(n-1)|lambda| + n(lambda)} prod (1 - q^{a'+1} t^{n-l'}) / (1 - q^{a+1} t^{l+1}).
    EAtTMinusDelta { n: usize },
    /// P_lambda(1, t, ..., t^{m-1}):
    /// t^{n(lambda)} prod (1 - q^{a'} t^{m-l'}) / (1 - q^a t^{l+1}).
    PPrincipal { m: usize },
}

/// Closed-form principal specializations (partitions only).
pub fn special_values(lambda: &Composition, which: SpecialValue) -> Result<QTRat, WeightsError> {
    if !lambda.is_partition() {
        return Err(WeightsError::NotAPartition(lambda.parts().to_vec()));
    }
    let boxes = diagram_stats(lambda);
    let value = match which {
        SpecialValue::EAtTDeltaInverted { n } => {
            let mut acc = QTRat::monomial(0, lambda.n_stat());
            for b in &boxes {
                let num =
                    QTRat::one_minus_monomial((b.coarm + 1) as i64, n as i64 - b.coleg as i64);
                let den = QTRat::one_minus_monomial((b.arm + 1) as i64, (b.leg + 1) as i64);
                acc = acc.mul(&num.try_div(&den).expect("nonzero binomial"));
            }
            acc
        }
        SpecialValue::EAtTMinusDelta { n } => {
            let shift = -((n as i64 - 1) * lambda.weight() as i64) + lambda.n_stat();
            let mut acc = QTRat::monomial(0, shift);
            for b in &boxes {
                let num =
                    QTRat::one_minus_monomial((b.coarm + 1) as i64, n as i64 - b.coleg as i64);
                let den = QTRat::one_minus_monomial((b.arm + 1) as i64, (b.leg + 1) as i64);
                acc = acc.mul(&num.try_div(&den).expect("nonzero binomial"));
            }
            acc
        }
        SpecialValue::PPrincipal { m } => {
            let mut acc = QTRat::monomial(0, lambda.n_stat());
            for b in &boxes {
                let num = QTRat::one_minus_monomial(b.coarm as i64, m as i64 - b.coleg as i64);
                let den = QTRat::one_minus_monomial(b.arm as i64, (b.leg + 1) as i64);
                acc = acc.mul(&num.try_div(&den).expect("nonzero binomial"));
            }
            acc
        }
    };
    Ok(value)
}

/// All compositions of `d` into `n` nonnegative parts.
pub fn compositions_of(d: i32, n: usize) -> Vec<Composition> {
    fn rec(d: i32, n: usize, prefix: &mut Vec<i32>, out: &mut Vec<Composition>) {
        if n == 1 {
            prefix.push(d);
            out.push(Composition::of(prefix));
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            rec(d - first, n - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Composition::of(&[]));
        }
        return out;
    }
    rec(d, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `d` with at most `n` parts, zero-padded to length n.
pub fn partitions_of(d: i32, n: usize) -> Vec<Composition> {
    compositions_of(d, n)
        .into_iter()
        .filter(|c| c.is_partition())
        .collect()
}
