//! Multiplicity lower bounds from vanishing normalized derivatives.
//!
//! If every generator of `I` has `∂_γ g (a) = 0` for all `γ` in a lower
//! saturated `Σ`, and `m_a` is a minimal prime of `I`, then the local length
//! of `A/I` at `a` is at least `#Σ`. [`vanishing_staircase`] finds the
//! largest such `Σ` up to a degree cap and packages it as a
//! [`BoundCertificate`]; [`verify_bound_at_point`] compares it with the
//! Gröbner length oracle.
//!
//! Checking generators suffices: by the Leibniz rule
//! `∂_γ(g h) = Σ_{γ1+γ2=γ} ∂_{γ1} g · ∂_{γ2} h`, and every `γ1 ≤ γ` lies in
//! `Σ` when `Σ` is lower saturated.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::groebner::{
    buchberger, local_length_at_point, Colength, GroebnerBasis, GroebnerError, IdealPresentation,
    LengthReport, Limits, LocalLengthOptions, MonomialOrder,
};
use crate::polynomial::{EvalPoint, PolyError, Polynomial};
use crate::rational::{factorial, rational_from_uint, rational_pow, Rational};
use crate::staircase::{AxisSubset, Exponent, StaircaseError, StaircaseSet, WeightVector};

pub const DEFAULT_CAP: u32 = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DerboundError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the prime presentation generates the unit ideal")]
    ImproperPrime,
    #[error("inconsistent prime profile: {0}")]
    InconsistentProfile(String),
    #[error("invalid simplex group {index}: {reason}")]
    InvalidGroup { index: usize, reason: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
}

/// Whether `∂_γ f` vanishes at `a`, together with the exact value.
pub fn derivative_vanishes(
    f: &Polynomial,
    gamma: &Exponent,
    point: &EvalPoint,
) -> Result<(bool, Rational), DerboundError> {
    let value = f.normalized_diff(gamma)?.evaluate(point)?;
    Ok((value.is_zero(), value))
}

/// Exact values `∂_γ g_j (a)` for every evaluated `γ`, one entry per
/// generator `g_j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VanishingTable {
    values: BTreeMap<Exponent, Vec<Rational>>,
}

impl VanishingTable {
    pub fn get(&self, gamma: &Exponent) -> Option<&[Rational]> {
        self.values.get(gamma).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, &[Rational])> {
        self.values.iter().map(|(g, v)| (g, v.as_slice()))
    }
}

/// A vanishing staircase at a point together with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub point: EvalPoint,
    /// `None` when some generator does not vanish at the point.
    pub staircase: Option<StaircaseSet>,
    pub table: VanishingTable,
    /// Rejected candidates: all predecessors in the staircase, degree within
    /// the cap, some generator derivative nonzero.
    pub frontier: Vec<Exponent>,
    /// `#Σ`.
    pub bound: usize,
    /// Some staircase element reaches the cap, so a larger cap might grow it.
    pub truncated: bool,
    pub cap: u32,
    pub note: Option<String>,
}

impl BoundCertificate {
    /// Nonzero frontier entries as `(generator index, γ, value)`.
    pub fn witnesses(&self) -> Vec<(usize, &Exponent, &Rational)> {
        self.frontier
            .iter()
            .flat_map(|gamma| {
                self.table.values[gamma]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(j, v)| (j, gamma, v))
            })
            .collect()
    }

    /// Every table entry on the staircase is zero.
    pub fn staircase_values_zero(&self) -> bool {
        self.staircase.as_ref().is_none_or(|s| {
            s.points()
                .all(|g| self.table.values[g].iter().all(Zero::is_zero))
        })
    }
}

/// Largest lower saturated `Σ` with `|γ| ≤ cap` on which every generator's
/// normalized derivatives vanish at `point`.
///
/// Grows breadth-first by total degree, lexicographic within a degree. A
/// candidate is tried only when all its immediate predecessors were
/// accepted, so a rejection blocks everything above it. Values are Taylor
/// coefficients of the generators translated to the point.
pub fn vanishing_staircase(
    ideal: &IdealPresentation,
    point: &EvalPoint,
    cap: u32,
) -> Result<BoundCertificate, DerboundError> {
    let n = ideal.nvars();
    if point.dim() != n {
        return Err(DerboundError::DimensionMismatch {
            expected: n,
            found: point.dim(),
        });
    }
    let shifted: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.translate(point))
        .collect::<Result<_, _>>()?;

    let mut table = VanishingTable::default();
    let mut accepted: BTreeSet<Exponent> = BTreeSet::new();
    let mut frontier = Vec::new();
    let mut level = vec![Exponent::zero(n)];
    let mut top_level_hit = false;

    for degree in 0..=cap {
        if level.is_empty() {
            break;
        }
        let evaluated: Vec<(Exponent, Vec<Rational>)> = level
            .par_iter()
            .map(|gamma| {
                (
                    gamma.clone(),
                    shifted.iter().map(|g| g.coeff(gamma)).collect(),
                )
            })
            .collect();
        let mut next: BTreeSet<Exponent> = BTreeSet::new();
        for (gamma, values) in evaluated {
            let vanishes = values.iter().all(Zero::is_zero);
            table.values.insert(gamma.clone(), values);
            if !vanishes {
                frontier.push(gamma);
                continue;
            }
            if degree == cap {
                top_level_hit = true;
            }
            next.extend(gamma.successors());
            accepted.insert(gamma);
        }
        level = next
            .into_iter()
            .filter(|c| c.predecessors().all(|p| accepted.contains(&p)))
            .collect();
        level.sort_by(|a, b| a.cmp_grlex(b));
    }

    let (staircase, note) = if accepted.is_empty() {
        (
            None,
            Some(
                "point not on variety: some generator is nonzero at the point; bound is 0"
                    .to_string(),
            ),
        )
    } else {
        (Some(StaircaseSet::from_closed(n, accepted)), None)
    };
    let bound = staircase.as_ref().map_or(0, StaircaseSet::len);
    Ok(BoundCertificate {
        point: point.clone(),
        staircase,
        table,
        frontier,
        bound,
        truncated: top_level_hit,
        cap,
        note,
    })
}

/// Result of checking `∂_γ(I) ⊆ 𝔭` on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypothesisCheck {
    Holds,
    Fails {
        generator: usize,
        gamma: Exponent,
        remainder: Polynomial,
    },
}

impl HypothesisCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HypothesisCheck::Holds)
    }
}

/// Checks `normal_form(∂_γ g, P) = 0` for every generator `g` and every
/// `γ ∈ Σ`, in graded lex order; reports the first failure.
pub fn check_hypothesis_mod_prime(
    ideal: &IdealPresentation,
    prime: &GroebnerBasis,
    sigma: &StaircaseSet,
) -> Result<HypothesisCheck, DerboundError> {
    let n = ideal.nvars();
    for found in [prime.nvars(), sigma.dim()] {
        if found != n {
            return Err(DerboundError::DimensionMismatch { expected: n, found });
        }
    }
    if prime.is_unit() {
        return Err(DerboundError::ImproperPrime);
    }
    let mut gammas: Vec<&Exponent> = sigma.points().collect();
    gammas.sort_by(|a, b| a.cmp_grlex(b));
    for gamma in gammas {
        for (j, g) in ideal.generators().iter().enumerate() {
            let remainder = prime.normal_form(&g.normalized_diff(gamma)?)?;
            if !remainder.is_zero() {
                return Ok(HypothesisCheck::Fails {
                    generator: j,
                    gamma: gamma.clone(),
                    remainder,
                });
            }
        }
    }
    Ok(HypothesisCheck::Holds)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub gamma: Exponent,
    /// Normal form of `X^γ` modulo the previous ideal in the chain.
    pub normal_form: Polynomial,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub steps: Vec<ChainStep>,
    /// All inclusions strict, certifying `length(A/I) ≥ #Σ`.
    pub success: bool,
}

/// Builds `I ⊂ I + (X^{γ_1}) ⊂ … ⊂ I + (X^{γ_1}, …, X^{γ_N})` with the
/// `γ_i` in non-increasing total degree (ties in ascending lex order) and
/// checks each inclusion is strict, i.e. `X^{γ_i}` is not in the previous
/// ideal. `sigma` need not be lower saturated; duplicates are ignored.
pub fn chain_witness(
    sigma: &[Exponent],
    ideal: &IdealPresentation,
    limits: &Limits,
) -> Result<ChainReport, DerboundError> {
    let n = ideal.nvars();
    if let Some(g) = sigma.iter().find(|g| g.dim() != n) {
        return Err(DerboundError::DimensionMismatch {
            expected: n,
            found: g.dim(),
        });
    }
    let mut ordered: Vec<Exponent> = sigma
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    ordered.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));

    let order = MonomialOrder::grevlex(n);
    let mut current = ideal.clone();
    let mut steps = Vec::with_capacity(ordered.len());
    for gamma in ordered {
        let monomial = Polynomial::monomial(gamma.clone(), Rational::one());
        let basis = buchberger(&current, &order, limits)?;
        let normal_form = basis.normal_form(&monomial)?;
        let strict = !normal_form.is_zero();
        steps.push(ChainStep {
            gamma,
            normal_form,
            strict,
        });
        current = current.with_generators([monomial])?;
    }
    let success = steps.iter().all(|s| s.strict);
    Ok(ChainReport { steps, success })
}

/// Transcendence-degree profile of a prime `𝔭` along
/// `K_i = Q(x_i, …, x_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeProfile {
    /// `σ_i = trdeg(K_i / K_{i+1}) ∈ {0, 1}`.
    pub sigma: Vec<u8>,
    /// Axes with `σ_i = 0` (0-based).
    pub upsilon: AxisSubset,
    /// `#Υ`, the codimension of `𝔭`.
    pub s: usize,
    /// `trdeg(K_i / Q)` for `i = 1 … n+1`; the last entry is 0.
    pub dims: Vec<usize>,
}

impl PrimeProfile {
    /// Profile with the given `σ`; dims are the suffix sums.
    pub fn from_sigma(sigma: Vec<u8>) -> Self {
        let n = sigma.len();
        let mut dims = vec![0usize; n + 1];
        for i in (0..n).rev() {
            dims[i] = dims[i + 1] + usize::from(sigma[i]);
        }
        let upsilon = AxisSubset::new(n, (0..n).filter(|&i| sigma[i] == 0)).expect("in range");
        let s = upsilon.len();
        PrimeProfile {
            sigma,
            upsilon,
            s,
            dims,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dims[0]
    }
}

/// Computes `σ`, `Υ` and `s` for a prime given by generators. Primality is
/// trusted, not checked.
///
/// `dims_i` is the Krull dimension of `Q[X_i, …, X_n] / (𝔭 ∩ Q[X_i, …, X_n])`,
/// read off one lex basis. The sum of `σ` is cross-checked against the
/// Krull dimension of a separately computed grevlex basis.
pub fn upsilon_set(
    prime: &IdealPresentation,
    limits: &Limits,
) -> Result<PrimeProfile, DerboundError> {
    let n = prime.nvars();
    let lex = buchberger(prime, &MonomialOrder::lex(n), limits)?;
    if lex.is_unit() {
        return Err(DerboundError::ImproperPrime);
    }
    let mut dims = vec![0usize; n + 1];
    for (from, dim) in dims.iter_mut().enumerate().take(n) {
        let leading: Vec<Exponent> = lex
            .elements()
            .iter()
            .zip(lex.leading_exponents())
            .filter(|(g, _)| {
                g.terms()
                    .all(|(e, _)| e.coords()[..from].iter().all(|&k| k == 0))
            })
            .map(|(_, lm)| lm.clone())
            .collect();
        // In the full ring the eliminated variables are free.
        *dim = crate::groebner::independent_set_size(&leading, n) - from;
    }
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        match dims[i].checked_sub(dims[i + 1]) {
            Some(d @ (0 | 1)) => sigma.push(d as u8),
            _ => {
                return Err(DerboundError::InconsistentProfile(format!(
                    "transcendence degrees {dims:?} do not drop by 0 or 1 at position {}",
                    i + 1
                )))
            }
        }
    }
    let grevlex = buchberger(prime, &MonomialOrder::grevlex(n), limits)?;
    let krull = grevlex.krull_dimension()?;
    let profile = PrimeProfile::from_sigma(sigma);
    if profile.dims != dims || krull != profile.dimension() {
        return Err(DerboundError::InconsistentProfile(format!(
            "sum of sigma {} differs from Krull dimension {krull}",
            profile.dimension()
        )));
    }
    Ok(profile)
}

/// `(ε^s / s!) · ∏ d_i^{1-σ_i}`: the volume of the weighted simplex
/// `{|φ|_d ≤ ε}` restricted to the axes in `Υ`.
pub fn simplex_bound(
    weights: &WeightVector,
    eps: &Rational,
    profile: &PrimeProfile,
) -> Result<Rational, DerboundError> {
    if weights.dim() != profile.sigma.len() {
        return Err(DerboundError::DimensionMismatch {
            expected: profile.sigma.len(),
            found: weights.dim(),
        });
    }
    let product = weights
        .weights()
        .iter()
        .zip(&profile.sigma)
        .filter(|(_, &s)| s == 0)
        .fold(Rational::one(), |acc, (d, _)| acc * d);
    Ok(eps_power_over_factorial(eps, profile.s) * product)
}

fn eps_power_over_factorial(eps: &Rational, s: usize) -> Rational {
    rational_pow(eps, s as i64) / rational_from_uint(factorial(s as u64))
}

/// A run of equal consecutive weights: common weight `𝔡`, run length `𝔫`,
/// and `δ`, the transcendence degree gained across the run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplexGroup {
    #[serde(serialize_with = "crate::formats::ser_rational")]
    pub weight: Rational,
    pub size: usize,
    pub delta: usize,
}

/// `(ε^s / s!) · ∏ 𝔡_i^{𝔫_i - δ_i}`.
pub fn grouped_simplex_bound(
    groups: &[SimplexGroup],
    eps: &Rational,
    s: usize,
) -> Result<Rational, DerboundError> {
    let mut total = 0usize;
    let mut product = Rational::one();
    for (index, g) in groups.iter().enumerate() {
        let invalid = |reason: &str| DerboundError::InvalidGroup {
            index,
            reason: reason.to_string(),
        };
        if g.size == 0 {
            return Err(invalid("empty group"));
        }
        if g.delta > g.size {
            return Err(invalid("delta exceeds group size"));
        }
        if g.weight <= Rational::zero() {
            return Err(invalid("weight must be positive"));
        }
        total += g.size;
        product *= rational_pow(&g.weight, (g.size - g.delta) as i64);
    }
    if s > total {
        return Err(DerboundError::InvalidGroup {
            index: groups.len(),
            reason: format!("codimension {s} exceeds the {total} grouped variables"),
        });
    }
    Ok(eps_power_over_factorial(eps, s) * product)
}

/// Splits `d` into maximal runs of equal weights, each with its `δ`.
pub fn group_by_weight(
    weights: &WeightVector,
    profile: &PrimeProfile,
) -> Result<Vec<SimplexGroup>, DerboundError> {
    if weights.dim() != profile.sigma.len() {
        return Err(DerboundError::DimensionMismatch {
            expected: profile.sigma.len(),
            found: weights.dim(),
        });
    }
    let mut groups: Vec<SimplexGroup> = Vec::new();
    for (d, &sigma) in weights.weights().iter().zip(&profile.sigma) {
        match groups.last_mut() {
            Some(g) if &g.weight == d => {
                g.size += 1;
                g.delta += usize::from(sigma);
            }
            _ => groups.push(SimplexGroup {
                weight: d.clone(),
                size: 1,
                delta: usize::from(sigma),
            }),
        }
    }
    Ok(groups)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub certificate: BoundCertificate,
    pub length: LengthReport,
    /// `bound ≤ length`.
    pub holds: bool,
    /// `bound = length`.
    pub tight: bool,
}

/// Certificate plus oracle length at the same point.
pub fn verify_bound_at_point(
    ideal: &IdealPresentation,
    point: &EvalPoint,
    cap: u32,
    options: &LocalLengthOptions,
) -> Result<VerificationReport, DerboundError> {
    let certificate = vanishing_staircase(ideal, point, cap)?;
    let length = local_length_at_point(ideal, point, options)?;
    let bound = certificate.bound as u64;
    let (holds, tight) = match length.value {
        Colength::Finite(v) => (bound <= v, bound == v),
        Colength::Infinite => (true, false),
    };
    Ok(VerificationReport {
        certificate,
        length,
        holds,
        tight,
    })
}
