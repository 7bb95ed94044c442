//! Gröbner bases over `Q`: the independent length oracle.
//!
//! Reduced bases come from Buchberger's algorithm; from them we get normal
//! forms (ideal membership), colength via standard monomials, Krull
//! dimension, elimination ideals, and the local length at a rational point.

mod buchberger;
mod local;
mod order;

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::polynomial::{parse_polynomial_with, ParseError, ParseOptions, PolyError, Polynomial};
use crate::staircase::Exponent;
use buchberger::SortedPoly;

pub use local::{
    elimination_ideal, global_length, local_length_at_point, LengthReport, LocalLengthOptions,
    DEFAULT_CONFIRM, DEFAULT_STABILIZATION_CAP,
};
pub use order::{MonomialOrder, OrderKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroebnerError {
    #[error("Gröbner computation limit exceeded: {reason}")]
    LimitExceeded {
        reason: String,
        /// Basis elements collected before the limit hit.
        partial: Vec<Polynomial>,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unit ideal: the variety is empty")]
    EmptyVariety,
    #[error("local length did not stabilize by N = {cap}; trace {trace:?}")]
    NotStabilized { cap: u32, trace: Vec<(u32, u64)> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Caps on a Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of S-polynomial reductions.
    pub max_steps: usize,
    /// Maximum total degree of any basis element.
    pub max_degree: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: 100_000,
            max_degree: 512,
        }
    }
}

/// Generators of an ideal of `Q[X_1, …, X_n]`. Zero generators are dropped;
/// an empty list presents the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(GroebnerError::DimensionMismatch {
                expected: nvars,
                found: g.nvars(),
            });
        }
        Ok(IdealPresentation {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// Parses each generator with the default degree guard.
    pub fn parse<S: AsRef<str>>(nvars: usize, generators: &[S]) -> Result<Self, ParseError> {
        Self::parse_with(nvars, generators, ParseOptions::default())
    }

    pub fn parse_with<S: AsRef<str>>(
        nvars: usize,
        generators: &[S],
        options: ParseOptions,
    ) -> Result<Self, ParseError> {
        let polys = generators
            .iter()
            .map(|g| parse_polynomial_with(g.as_ref(), nvars, options))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealPresentation {
            nvars,
            generators: polys.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// `I + (extra)`.
    pub fn with_generators(
        &self,
        extra: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        IdealPresentation::new(self.nvars, gens)
    }

    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        limits: &Limits,
    ) -> Result<GroebnerBasis, GroebnerError> {
        buchberger(self, order, limits)
    }
}

/// Number of standard monomials, `dim_Q A/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(v) => Some(v),
            Colength::Infinite => None,
        }
    }
}

impl std::fmt::Display for Colength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Colength::Finite(v) => write!(f, "{v}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Colength {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Colength::Finite(v) => s.serialize_u64(*v),
            Colength::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted ascending by
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    sorted: Vec<SortedPoly>,
    elements: Vec<Polynomial>,
    leading: Vec<Exponent>,
}

/// Reduced Gröbner basis of `ideal` under `order`.
///
/// Pairs are selected by the normal strategy (smallest lcm degree, then
/// smallest lcm in the order), so the output is deterministic.
pub fn buchberger(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    if order.nvars() != ideal.nvars {
        return Err(GroebnerError::DimensionMismatch {
            expected: ideal.nvars,
            found: order.nvars(),
        });
    }
    let sorted = buchberger::buchberger(&ideal.generators, ideal.nvars, order, limits)?;
    Ok(GroebnerBasis::from_sorted(
        ideal.nvars,
        order.clone(),
        sorted,
    ))
}

impl GroebnerBasis {
    fn from_sorted(nvars: usize, order: MonomialOrder, sorted: Vec<SortedPoly>) -> Self {
        let elements = sorted.iter().map(|g| g.to_poly(nvars)).collect();
        let leading = sorted.iter().map(|g| g.leading().clone()).collect();
        GroebnerBasis {
            nvars,
            order,
            sorted,
            elements,
            leading,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_exponents(&self) -> &[Exponent] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Exponent::is_zero)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_ideal(&self) -> IdealPresentation {
        IdealPresentation {
            nvars: self.nvars,
            generators: self.elements.clone(),
        }
    }

    /// Unique remainder of `f` modulo the basis; zero iff `f ∈ ⟨G⟩`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if f.nvars() != self.nvars {
            return Err(GroebnerError::DimensionMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let sf = SortedPoly::from_poly(f, &self.order);
        Ok(buchberger::reduce(&sf, &self.sorted, None, &self.order).to_poly(self.nvars))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks the Buchberger criterion directly: every S-polynomial of two
    /// basis elements reduces to zero.
    pub fn s_polynomials_reduce_to_zero(&self) -> bool {
        let n = self.sorted.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let (f, g) = (&self.elements[i], &self.elements[j]);
                let lcm = self.leading[i].lcm(&self.leading[j]);
                let one = num_traits::One::one();
                let a = f.mul_monomial(&lcm.checked_sub(&self.leading[i]).unwrap(), &one);
                let b = g.mul_monomial(&lcm.checked_sub(&self.leading[j]).unwrap(), &one);
                self.normal_form(&(&a - &b))
                    .map(|r| r.is_zero())
                    .unwrap_or(false)
            })
        })
    }

    /// `dim_Q A/⟨G⟩` by counting standard monomials; infinite when some
    /// variable has no pure power among the leading monomials.
    pub fn colength(&self) -> Colength {
        if self.is_unit() {
            return Colength::Finite(0);
        }
        let has_pure_power = |v: usize| {
            self.leading.iter().any(|e| {
                e.coords()
                    .iter()
                    .enumerate()
                    .all(|(i, &k)| if i == v { k > 0 } else { k == 0 })
            })
        };
        if !(0..self.nvars).all(has_pure_power) {
            return Colength::Infinite;
        }
        // Standard monomials form a finite downward-closed set; grow it from 1.
        let mut seen: BTreeSet<Exponent> = BTreeSet::new();
        let mut stack = vec![Exponent::zero(self.nvars)];
        while let Some(e) = stack.pop() {
            if seen.contains(&e) || self.leading.iter().any(|l| l.le(&e)) {
                continue;
            }
            stack.extend(e.successors());
            seen.insert(e);
        }
        Colength::Finite(seen.len() as u64)
    }

    /// Krull dimension of `A/⟨G⟩`: the largest variable set `S` such that no
    /// leading monomial involves only variables of `S`.
    pub fn krull_dimension(&self) -> Result<usize, GroebnerError> {
        if self.is_unit() {
            return Err(GroebnerError::EmptyVariety);
        }
        Ok(independent_set_size(&self.leading, self.nvars))
    }
}

/// Largest `S ⊆ {0..n}` with no exponent in `leading` supported inside `S`.
pub(crate) fn independent_set_size(leading: &[Exponent], nvars: usize) -> usize {
    assert!(nvars < 64, "too many variables for subset enumeration");
    let supports: Vec<u64> = leading
        .iter()
        .map(|e| {
            e.coords()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();
    let mut best = 0;
    for mask in 0u64..(1u64 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    best
}
