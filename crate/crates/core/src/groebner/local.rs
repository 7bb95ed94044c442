//! Lengths: global colength, local length at a rational point via the
//! `m_a`-adic stabilization of `colength(I + m_a^N)`, and elimination ideals.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{buchberger, Colength, GroebnerError, IdealPresentation, Limits, MonomialOrder};
use crate::polynomial::{EvalPoint, Polynomial};
use crate::rational::Rational;
use crate::staircase::Exponent;

pub const DEFAULT_CONFIRM: u32 = 2;
pub const DEFAULT_STABILIZATION_CAP: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalLengthOptions {
    /// Accept once the colength repeats this many extra times in a row.
    pub confirm: u32,
    /// Largest power `N` of `m_a` tried.
    pub cap: u32,
    pub limits: Limits,
}

impl Default for LocalLengthOptions {
    fn default() -> Self {
        LocalLengthOptions {
            confirm: DEFAULT_CONFIRM,
            cap: DEFAULT_STABILIZATION_CAP,
            limits: Limits::default(),
        }
    }
}

/// Length of `A/I` (globally, or localized at a point).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub value: Colength,
    /// `(N, colength(I + m_a^N))` pairs; empty for a global length.
    pub trace: Vec<(u32, u64)>,
    pub confirm: u32,
    pub cap: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_at: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `dim_Q A/I` from a grevlex basis.
pub fn global_length(
    ideal: &IdealPresentation,
    limits: &Limits,
) -> Result<LengthReport, GroebnerError> {
    let g = buchberger(ideal, &MonomialOrder::grevlex(ideal.nvars()), limits)?;
    Ok(LengthReport {
        value: g.colength(),
        trace: Vec::new(),
        confirm: 0,
        cap: 0,
        stabilized_at: None,
        note: None,
    })
}

/// All monomials of total degree `degree` in `nvars` variables.
pub(crate) fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Exponent> {
    fn fill(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Exponent::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Exponent::zero(0));
        }
        return out;
    }
    fill(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Local length `length_{A_m}((A/I)_m)` at the maximal ideal `m_a` of a
/// rational point.
///
/// The ideal is translated so that `a` is the origin, and
/// `colength(I + m^N)` is computed for `N = 1, 2, …`. The sequence is
/// non-decreasing, and once two consecutive values agree the ideals
/// `I + m^N` and `I + m^{N+1}` coincide, so the value is final (Nakayama).
/// The value is accepted after `confirm + 1` equal readings. If `m_a` is not
/// a minimal prime of `I` the sequence grows without bound and the run fails
/// with [`GroebnerError::NotStabilized`] at `cap`.
pub fn local_length_at_point(
    ideal: &IdealPresentation,
    point: &EvalPoint,
    options: &LocalLengthOptions,
) -> Result<LengthReport, GroebnerError> {
    let n = ideal.nvars();
    if point.dim() != n {
        return Err(GroebnerError::DimensionMismatch {
            expected: n,
            found: point.dim(),
        });
    }
    let shifted: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.translate(point))
        .collect::<Result<_, _>>()?;
    let mut report = LengthReport {
        value: Colength::Finite(0),
        trace: Vec::new(),
        confirm: options.confirm,
        cap: options.cap,
        stabilized_at: None,
        note: None,
    };
    if shifted.iter().any(|g| !g.constant_term().is_zero()) {
        report.note = Some("point not in zero set: some generator is a unit at the point".into());
        report.stabilized_at = Some(0);
        return Ok(report);
    }
    let grevlex = MonomialOrder::grevlex(n);
    let mut run = 0u32;
    for power in 1..=options.cap {
        // Terms of degree ≥ N already lie in m^N.
        let truncated = shifted.iter().map(|g| {
            Polynomial::from_terms(
                n,
                g.terms()
                    .filter(|(e, _)| e.degree() < u64::from(power))
                    .map(|(e, c)| (e.clone(), c.clone())),
            )
        });
        let monomials = monomials_of_degree(n, power)
            .into_iter()
            .map(|e| Polynomial::monomial(e, Rational::one()));
        let presentation = IdealPresentation::new(n, truncated.chain(monomials).collect())?;
        let basis = buchberger(&presentation, &grevlex, &options.limits)?;
        let value = basis
            .colength()
            .finite()
            .expect("I + m^N has finite colength");
        match report.trace.last() {
            Some(&(_, prev)) if prev == value => run += 1,
            _ => run = 0,
        }
        report.trace.push((power, value));
        if run >= options.confirm {
            report.value = Colength::Finite(value);
            report.stabilized_at = Some(power - options.confirm);
            return Ok(report);
        }
    }
    Err(GroebnerError::NotStabilized {
        cap: options.cap,
        trace: report.trace,
    })
}

/// Generators of `I ∩ Q[X_{from}, …, X_n]` (0-based `from`, `0 ..= n`),
/// read off a lex basis with `x1 > … > xn`. The result lives in the full
/// ring; an empty generator list is the zero ideal.
pub fn elimination_ideal(
    ideal: &IdealPresentation,
    from: usize,
    limits: &Limits,
) -> Result<IdealPresentation, GroebnerError> {
    let n = ideal.nvars();
    if from > n {
        return Err(GroebnerError::DimensionMismatch {
            expected: n,
            found: from,
        });
    }
    if from == n {
        // Q[∅] = Q: the intersection is 0 unless I is the unit ideal.
        let basis = buchberger(ideal, &MonomialOrder::lex(n), limits)?;
        let gens = if basis.is_unit() {
            vec![Polynomial::one(n)]
        } else {
            Vec::new()
        };
        return IdealPresentation::new(n, gens);
    }
    let basis = buchberger(ideal, &MonomialOrder::lex(n), limits)?;
    Ok(eliminate_from_lex(&basis.as_ideal(), from))
}

/// Keeps the generators free of `X_1 … X_{from}`.
pub(crate) fn eliminate_from_lex(lex_basis: &IdealPresentation, from: usize) -> IdealPresentation {
    let kept = lex_basis
        .generators()
        .iter()
        .filter(|g| {
            g.terms()
                .all(|(e, _)| e.coords()[..from].iter().all(|&k| k == 0))
        })
        .cloned()
        .collect();
    IdealPresentation::new(lex_basis.nvars(), kept).expect("same ring")
}
