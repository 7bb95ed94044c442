//! Sparse multivariate polynomials over `Q`.
//!
//! A [`Polynomial`] maps exponents to nonzero rational coefficients. Display
//! order is graded lexicographic, highest term first, with `x1 > x2 > …`.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{binomial, falling_factorial, rational_from_uint, Rational};
use crate::staircase::Exponent;

pub use parse::{parse_polynomial, parse_polynomial_with, ParseError, ParseOptions};

/// Default cap on total degree accepted by the parser and ideal constructors.
pub const DEFAULT_DEGREE_LIMIT: u64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total degree {degree} exceeds limit {limit}")]
    DegreeLimit { degree: u64, limit: u64 },
}

/// Rational point `a = (a_1, …, a_n)`; the maximal ideal
/// `m_a = (X_1 - a_1, …, X_n - a_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvalPoint(Vec<Rational>);

impl EvalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        EvalPoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        EvalPoint(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> EvalPoint {
        EvalPoint(self.0.iter().map(|c| -c).collect())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let nvars = exp.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    /// The variable `X_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), Rational::one())
    }

    /// Builds from possibly repeated or zero terms; repeats are summed.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.dim(), nvars, "exponent dimension");
            p.add_term(e, c);
        }
        p
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

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// Terms in graded lexicographic order, highest first.
    pub fn terms_grlex_desc(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_grlex(a.0));
        v
    }

    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// `Supp(f) = {γ : a_γ ≠ 0}`.
    pub fn support(&self) -> BTreeSet<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn check_degree(&self, limit: u64) -> Result<(), PolyError> {
        match self.total_degree() {
            Some(degree) if degree > limit => Err(PolyError::DegreeLimit { degree, limit }),
            _ => Ok(()),
        }
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn check_exponent(&self, gamma: &Exponent) -> Result<(), PolyError> {
        if gamma.dim() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: gamma.dim(),
            });
        }
        Ok(())
    }

    fn check_point(&self, a: &EvalPoint) -> Result<(), PolyError> {
        if a.dim() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                found: a.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c · X^exp`.
    pub fn mul_monomial(&self, exp: &Exponent, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.add(exp), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Iterated partial derivative `∂^γ f`.
    pub fn diff_power(&self, gamma: &Exponent) -> Result<Polynomial, PolyError> {
        self.check_exponent(gamma)?;
        Ok(self.termwise_derivative(gamma, falling_factorial))
    }

    /// Normalized (divided-power) derivative `∂_γ f = ∂^γ f / ∏ e_i!`, acting
    /// on monomials by `∂_γ X^γ' = ∏ C(e'_i, e_i) X^{γ'-γ}`.
    pub fn normalized_diff(&self, gamma: &Exponent) -> Result<Polynomial, PolyError> {
        self.check_exponent(gamma)?;
        Ok(self.termwise_derivative(gamma, binomial))
    }

    fn termwise_derivative(
        &self,
        gamma: &Exponent,
        factor: impl Fn(u64, u64) -> num_bigint::BigUint,
    ) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let Some(rest) = e.checked_sub(gamma) else {
                continue;
            };
            let mult = e
                .coords()
                .iter()
                .zip(gamma.coords())
                .map(|(&have, &take)| factor(have.into(), take.into()))
                .product();
            out.add_term(rest, c * rational_from_uint(mult));
        }
        out
    }

    pub fn evaluate(&self, a: &EvalPoint) -> Result<Rational, PolyError> {
        self.check_point(a)?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (&k, x) in e.coords().iter().zip(a.coords()) {
                for _ in 0..k {
                    term *= x;
                }
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// `g(X) = f(X + a)`: the point `a` is moved to the origin.
    pub fn translate(&self, a: &EvalPoint) -> Result<Polynomial, PolyError> {
        self.check_point(a)?;
        let mut current = self.clone();
        for (i, shift) in a.coords().iter().enumerate() {
            if shift.is_zero() {
                continue;
            }
            let mut next = Polynomial::zero(self.nvars);
            for (e, c) in &current.terms {
                let top = e.coords()[i];
                // (X_i + s)^top = Σ_k C(top, k) s^(top-k) X_i^k
                let mut shift_pow = Rational::one();
                for k in (0..=top).rev() {
                    let mut coords = e.coords().to_vec();
                    coords[i] = k;
                    let coef = c * &shift_pow * rational_from_uint(binomial(top.into(), k.into()));
                    next.add_term(Exponent::new(coords), coef);
                    shift_pow *= shift;
                }
            }
            current = next;
        }
        Ok(current)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

/// Canonical rendering, e.g. `x1^2 - 2*x1*x2 + 1`. Round-trips through
/// [`parse_polynomial`].
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn ex(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn pt(v: &[i64]) -> EvalPoint {
        EvalPoint::new(v.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn ring_operations() {
        assert_eq!(&p("x1 + x2", 2) * &p("x1 - x2", 2), p("x1^2 - x2^2", 2));
        let f = p("3*x1*x2 - 1/2", 2);
        assert!((&f + &f.scale(&q(-1, 1))).is_zero());
        assert_eq!(&p("x1 + 1", 1) * &p("x1^2 - x1 + 1", 1), p("x1^3 + 1", 1));
        assert_eq!(
            p("x1", 2).checked_add(&p("x1", 3)).unwrap_err(),
            PolyError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
        assert_eq!(p("x1 + 1", 1).pow(3), p("x1^3 + 3*x1^2 + 3*x1 + 1", 1));
    }

    #[test]
    fn product_agrees_with_pointwise_evaluation() {
        let f = p("x1 + 1", 1);
        let g = p("x1^2 - x1 + 1", 1);
        let fg = &f * &g;
        for x in [q(2, 3), q(-7, 5), q(11, 2)] {
            let a = EvalPoint::new(vec![x]);
            assert_eq!(
                fg.evaluate(&a).unwrap(),
                f.evaluate(&a).unwrap() * g.evaluate(&a).unwrap()
            );
        }
    }

    #[test]
    fn supports() {
        assert_eq!(
            p("x1^2*x2 - 3*x2", 2).support(),
            BTreeSet::from([ex(&[2, 1]), ex(&[0, 1])])
        );
        assert!(Polynomial::zero(2).support().is_empty());
        assert!((&p("x1 + x2", 2) + &p("-x1 - x2", 2)).support().is_empty());
    }

    #[test]
    fn plain_derivatives() {
        let f = p("x1^3*x2", 2);
        assert_eq!(f.diff_power(&ex(&[2, 0])).unwrap(), p("6*x1*x2", 2));
        assert!(p("x1^3", 2).diff_power(&ex(&[0, 1])).unwrap().is_zero());
        let g = ex(&[3, 2]);
        let mono = Polynomial::monomial(g.clone(), q(1, 1));
        assert_eq!(
            mono.diff_power(&g).unwrap(),
            Polynomial::constant(2, q(12, 1))
        );
        assert!(f.diff_power(&ex(&[1])).is_err());
    }

    #[test]
    fn normalized_derivatives() {
        assert_eq!(
            p("x1^3*x2", 2).normalized_diff(&ex(&[2, 0])).unwrap(),
            p("3*x1*x2", 2)
        );
        for g in [ex(&[0, 0]), ex(&[3, 2]), ex(&[5, 1])] {
            let mono = Polynomial::monomial(g.clone(), q(1, 1));
            assert_eq!(mono.normalized_diff(&g).unwrap(), Polynomial::one(2));
        }
        assert_eq!(
            p("x1^2*x2^2", 2).normalized_diff(&ex(&[1, 1])).unwrap(),
            p("4*x1*x2", 2)
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("x1^2 + x2", 2).evaluate(&pt(&[2, 3])).unwrap(), q(7, 1));
        assert_eq!(p("x1^2*x2", 2).evaluate(&pt(&[0, 0])).unwrap(), q(0, 1));
        assert_eq!(
            p("(x1 - 1)^2 + (x2 - 2)", 2)
                .evaluate(&pt(&[1, 2]))
                .unwrap(),
            q(0, 1)
        );
        assert!(p("x1", 2).evaluate(&pt(&[1])).is_err());
    }

    #[test]
    fn translation() {
        assert_eq!(
            p("(x1 - 1)^2", 1).translate(&pt(&[1])).unwrap(),
            p("x1^2", 1)
        );
        let f = p("x1^3*x2 - 2/3*x2 + 5", 2);
        assert_eq!(f.translate(&pt(&[0, 0])).unwrap(), f);
        let g = p("x1*x2", 2).translate(&pt(&[1, 1])).unwrap();
        assert_eq!(g, p("x1*x2 + x1 + x2 + 1", 2));
        for a in [[q(1, 2), q(-3, 1)], [q(0, 1), q(7, 4)], [q(5, 1), q(5, 1)]] {
            let b = EvalPoint::new(a.to_vec());
            let expected = p("x1*x2", 2)
                .evaluate(&EvalPoint::new(vec![&a[0] + q(1, 1), &a[1] + q(1, 1)]))
                .unwrap();
            assert_eq!(g.evaluate(&b).unwrap(), expected);
        }
    }

    #[test]
    fn degree_guard() {
        let f = p("x1^10", 1);
        assert!(f.check_degree(10).is_ok());
        assert_eq!(
            f.check_degree(9).unwrap_err(),
            PolyError::DegreeLimit {
                degree: 10,
                limit: 9
            }
        );
    }

    #[test]
    fn canonical_formatting() {
        assert_eq!(p("1 - 2*x2*x1 + x1^2", 2).to_string(), "x1^2 - 2*x1*x2 + 1");
        assert_eq!(p("-1/2*x1 + x2^3", 2).to_string(), "x2^3 - 1/2*x1");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(p("-7", 1).to_string(), "-7");
    }
}
