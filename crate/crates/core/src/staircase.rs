//! Lower saturated sets: lattice staircases `Σ ⊂ Z≥0^n`, their inner and
//! outer real envelopes, and weighted simplex staircases.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{floor_to_u64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StaircaseError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("negative coordinate in real point")]
    NegativeCoordinate,
    #[error("weight {index} is not positive")]
    NonPositiveWeight { index: usize },
    #[error("negative radius")]
    NegativeRadius,
    #[error("point set is not lower saturated")]
    NotLowerSaturated,
    #[error("axis index {index} out of range for dimension {dim}")]
    AxisOutOfRange { index: usize, dim: usize },
    #[error("staircase has {found} points, expected {expected}")]
    CardinalityMismatch { expected: usize, found: usize },
}

/// Exponent vector `γ = (e_1, …, e_n)`, used both for monomials `X^γ` and for
/// derivative orders.
///
/// The derived `Ord` is lexicographic with the first coordinate most
/// significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    /// The `i`-th unit vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut coords = vec![0; dim];
        coords[i] = 1;
        Exponent(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    /// Total degree `|γ|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self ≤ other`. Also divisibility `X^self | X^other`.
    pub fn le(&self, other: &Exponent) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when `other ≤ self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    /// Least common multiple (componentwise maximum).
    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when no variable occurs in both.
    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Immediate predecessors `γ - e_i` for every `i` with `e_i > 0`.
    pub fn predecessors(&self) -> impl Iterator<Item = Exponent> + '_ {
        (0..self.dim()).filter(|&i| self.0[i] > 0).map(move |i| {
            let mut c = self.0.clone();
            c[i] -= 1;
            Exponent(c)
        })
    }

    /// Immediate successors `γ + e_i`.
    pub fn successors(&self) -> impl Iterator<Item = Exponent> + '_ {
        (0..self.dim()).map(move |i| {
            let mut c = self.0.clone();
            c[i] += 1;
            Exponent(c)
        })
    }

    /// Graded lexicographic comparison: total degree first, then lex.
    pub fn cmp_grlex(&self, other: &Exponent) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// All exponents `≤ self` componentwise, in lex order.
    pub fn lower_box(&self) -> Vec<Exponent> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Exponent).collect()
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Point `φ = (ξ_1, …, ξ_n)` of `R≥0^n` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealPoint(Vec<Rational>);

impl RealPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, StaircaseError> {
        if coords.iter().any(|c| c.is_negative()) {
            return Err(StaircaseError::NegativeCoordinate);
        }
        Ok(RealPoint(coords))
    }

    pub fn from_exponent(gamma: &Exponent) -> Self {
        RealPoint(
            gamma
                .coords()
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Componentwise floor, `None` if some coordinate does not fit in `u32`.
    pub fn floor(&self) -> Option<Exponent> {
        self.0
            .iter()
            .map(|c| floor_to_u64(c).and_then(|v| u32::try_from(v).ok()))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }
}

/// Positive weights `d = (d_1, …, d_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self, StaircaseError> {
        if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
            return Err(StaircaseError::NonPositiveWeight { index });
        }
        Ok(WeightVector(weights))
    }

    pub fn ones(dim: usize) -> Self {
        WeightVector(vec![Rational::from_integer(1.into()); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }
}

/// Subset `Υ ⊆ {0, …, n-1}` of coordinate axes (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisSubset {
    dim: usize,
    indices: BTreeSet<usize>,
}

impl AxisSubset {
    pub fn new(
        dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, StaircaseError> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&index) = indices.iter().find(|&&i| i >= dim) {
            return Err(StaircaseError::AxisOutOfRange { index, dim });
        }
        Ok(AxisSubset { dim, indices })
    }

    pub fn full(dim: usize) -> Self {
        AxisSubset {
            dim,
            indices: (0..dim).collect(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        AxisSubset {
            dim,
            indices: BTreeSet::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.indices.contains(&axis)
    }

    /// Sorted axis indices.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }
}

/// A finite lower `Z≥0`-saturated set `Σ ⊂ Z≥0^n`.
///
/// Invariants: contains the origin, closed under componentwise decrement,
/// and `maximal` is exactly its set of maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseSet {
    dim: usize,
    points: BTreeSet<Exponent>,
    maximal: Vec<Exponent>,
}

impl StaircaseSet {
    /// The one-point staircase `{0}`.
    pub fn origin(dim: usize) -> Self {
        Self::from_closed(dim, BTreeSet::from([Exponent::zero(dim)]))
    }

    /// Smallest lower saturated set containing `generators` and the origin.
    pub fn downward_closure<'a>(
        generators: impl IntoIterator<Item = &'a Exponent>,
        dim: usize,
    ) -> Result<Self, StaircaseError> {
        let mut points = BTreeSet::from([Exponent::zero(dim)]);
        for g in generators {
            if g.dim() != dim {
                return Err(StaircaseError::DimensionMismatch {
                    expected: dim,
                    found: g.dim(),
                });
            }
            if points.contains(g) {
                continue;
            }
            points.extend(g.lower_box());
        }
        Ok(Self::from_closed(dim, points))
    }

    /// Wraps an explicit point set, rejecting it unless lower saturated.
    pub fn from_points(
        points: impl IntoIterator<Item = Exponent>,
        dim: usize,
    ) -> Result<Self, StaircaseError> {
        let points: BTreeSet<Exponent> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(StaircaseError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        if !is_lower_saturated_grid(&points, dim) {
            return Err(StaircaseError::NotLowerSaturated);
        }
        Ok(Self::from_closed(dim, points))
    }

    /// `points` must already be lower saturated.
    pub(crate) fn from_closed(dim: usize, points: BTreeSet<Exponent>) -> Self {
        debug_assert!(is_lower_saturated_grid(&points, dim));
        let maximal = points
            .iter()
            .filter(|p| p.successors().all(|s| !points.contains(&s)))
            .cloned()
            .collect();
        StaircaseSet {
            dim,
            points,
            maximal,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `#Σ`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, gamma: &Exponent) -> bool {
        self.points.contains(gamma)
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> impl ExactSizeIterator<Item = &Exponent> {
        self.points.iter()
    }

    pub fn maximal(&self) -> &[Exponent] {
        &self.maximal
    }

    /// Componentwise maximum over all points.
    pub fn bounding_corner(&self) -> Exponent {
        self.maximal
            .iter()
            .fold(Exponent::zero(self.dim), |acc, m| acc.lcm(m))
    }

    fn check_dim(&self, found: usize) -> Result<(), StaircaseError> {
        if found != self.dim {
            return Err(StaircaseError::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Membership in `Δ(Σ) = ⋃_{γ∈Σ} [0,γ]`.
    pub fn delta_contains(&self, phi: &RealPoint) -> Result<bool, StaircaseError> {
        self.check_dim(phi.dim())?;
        Ok(self.maximal.iter().any(|gamma| {
            phi.coords()
                .iter()
                .zip(gamma.coords())
                .all(|(x, &e)| *x <= Rational::from_integer(e.into()))
        }))
    }

    /// Membership in `Δ′(Σ) = ⋃_{γ∈Σ} ∏ [e_i, e_i + 1)`, i.e. `⌊φ⌋ ∈ Σ`.
    pub fn delta_prime_contains(&self, phi: &RealPoint) -> Result<bool, StaircaseError> {
        self.check_dim(phi.dim())?;
        Ok(phi.floor().is_some_and(|f| self.points.contains(&f)))
    }

    /// Lebesgue volume of `Δ(Σ)`: the number of unit cells `[e, e+1]` whose
    /// top corner lies in `Σ`.
    pub fn volume_delta(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.coords().iter().all(|&e| e >= 1))
            .count()
    }

    /// Lebesgue volume of `Δ′(Σ)`, which is `#Σ`.
    pub fn volume_delta_prime(&self) -> usize {
        self.points.len()
    }

    /// `Σ_Υ = Σ ∩ (R^n)_Υ`, reindexed to dimension `#Υ`.
    pub fn restrict(&self, axes: &AxisSubset) -> Result<RestrictedStaircase, StaircaseError> {
        self.check_dim(axes.dim())?;
        let kept: Vec<usize> = axes.indices().collect();
        let points: BTreeSet<Exponent> = self
            .points
            .iter()
            .filter(|p| {
                p.coords()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| e == 0 || axes.contains(j))
            })
            .map(|p| Exponent(kept.iter().map(|&j| p.coords()[j]).collect()))
            .collect();
        Ok(RestrictedStaircase {
            staircase: StaircaseSet::from_closed(kept.len(), points),
            axes: kept,
        })
    }
}

/// Result of [`StaircaseSet::restrict`]: the reindexed staircase plus the
/// original axis of each new coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedStaircase {
    pub staircase: StaircaseSet,
    pub axes: Vec<usize>,
}

/// True iff the origin is present and the set is closed under componentwise
/// decrement. The empty set is not lower saturated.
pub fn is_lower_saturated_grid(points: &BTreeSet<Exponent>, dim: usize) -> bool {
    points.contains(&Exponent::zero(dim))
        && points
            .iter()
            .all(|p| p.dim() == dim && p.predecessors().all(|q| points.contains(&q)))
}

/// `|γ|_d = Σ γ_i / d_i`.
pub fn weighted_norm(gamma: &Exponent, weights: &WeightVector) -> Result<Rational, StaircaseError> {
    if gamma.dim() != weights.dim() {
        return Err(StaircaseError::DimensionMismatch {
            expected: weights.dim(),
            found: gamma.dim(),
        });
    }
    Ok(gamma
        .coords()
        .iter()
        .zip(weights.weights())
        .map(|(&e, d)| Rational::from_integer(e.into()) / d)
        .fold(Rational::zero(), |acc, t| acc + t))
}

/// Lattice points of the weighted simplex `{φ ≥ 0 : |φ|_d ≤ ε}`.
pub fn simplex_staircase(
    weights: &WeightVector,
    eps: &Rational,
) -> Result<StaircaseSet, StaircaseError> {
    if eps.is_negative() {
        return Err(StaircaseError::NegativeRadius);
    }
    let dim = weights.dim();
    let mut points = BTreeSet::new();
    let mut current = vec![0u32; dim];
    simplex_fill(weights.weights(), 0, eps, &mut current, &mut points);
    Ok(StaircaseSet::from_closed(dim, points))
}

fn simplex_fill(
    weights: &[Rational],
    axis: usize,
    budget: &Rational,
    current: &mut Vec<u32>,
    out: &mut BTreeSet<Exponent>,
) {
    if axis == weights.len() {
        out.insert(Exponent(current.clone()));
        return;
    }
    // e / d ≤ budget  ⇔  e ≤ budget · d
    let max_e = floor_to_u64(&(budget * &weights[axis])).unwrap_or(0) as u32;
    for e in 0..=max_e {
        current[axis] = e;
        let rest = budget - Rational::from_integer(e.into()) / &weights[axis];
        simplex_fill(weights, axis + 1, &rest, current, out);
    }
    current[axis] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(v: &[(i64, i64)]) -> RealPoint {
        RealPoint::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn set(v: &[&[u32]]) -> BTreeSet<Exponent> {
        v.iter().map(|p| ex(p)).collect()
    }

    #[test]
    fn closure_of_single_box() {
        let s = StaircaseSet::downward_closure(&[ex(&[1, 1])], 2).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(
            s.points().cloned().collect::<BTreeSet<_>>(),
            set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
        );
        assert_eq!(s.maximal(), &[ex(&[1, 1])]);
    }

    #[test]
    fn closure_of_two_generators() {
        let s = StaircaseSet::downward_closure(&[ex(&[2, 0]), ex(&[0, 1])], 2).unwrap();
        assert_eq!(
            s.points().cloned().collect::<BTreeSet<_>>(),
            set(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]])
        );
        assert_eq!(s.maximal(), &[ex(&[0, 1]), ex(&[2, 0])]);
    }

    #[test]
    fn closure_of_nothing_is_origin() {
        let s = StaircaseSet::downward_closure(&[], 3).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(&ex(&[0, 0, 0])));
    }

    #[test]
    fn closure_rejects_mixed_dimensions() {
        let err = StaircaseSet::downward_closure(&[ex(&[1, 0]), ex(&[1])], 2).unwrap_err();
        assert_eq!(
            err,
            StaircaseError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn saturation_predicate() {
        assert!(is_lower_saturated_grid(&set(&[&[0, 0], &[1, 0]]), 2));
        assert!(!is_lower_saturated_grid(&set(&[&[0, 0], &[1, 1]]), 2));
        assert!(!is_lower_saturated_grid(&set(&[&[1, 0]]), 2));
        assert!(!is_lower_saturated_grid(&BTreeSet::new(), 2));
        assert_eq!(
            StaircaseSet::from_points(set(&[&[0, 0], &[1, 1]]), 2).unwrap_err(),
            StaircaseError::NotLowerSaturated
        );
    }

    #[test]
    fn inner_envelope_membership() {
        let square = StaircaseSet::downward_closure(&[ex(&[1, 1])], 2).unwrap();
        assert!(square.delta_contains(&pt(&[(1, 2), (1, 1)])).unwrap());
        assert!(!square.delta_contains(&pt(&[(3, 2), (0, 1)])).unwrap());
        let ell = StaircaseSet::downward_closure(&[ex(&[2, 0]), ex(&[0, 1])], 2).unwrap();
        assert!(!ell.delta_contains(&pt(&[(3, 2), (1, 2)])).unwrap());
        assert!(ell.delta_contains(&pt(&[(3, 2), (0, 1)])).unwrap());
        assert!(square.delta_contains(&pt(&[(1, 1)])).is_err());
    }

    #[test]
    fn outer_envelope_membership() {
        let square = StaircaseSet::downward_closure(&[ex(&[1, 1])], 2).unwrap();
        assert!(square.delta_prime_contains(&pt(&[(3, 2), (0, 1)])).unwrap());
        assert!(!square.delta_prime_contains(&pt(&[(2, 1), (0, 1)])).unwrap());
        let origin = StaircaseSet::origin(2);
        assert!(origin.delta_prime_contains(&pt(&[(0, 1), (0, 1)])).unwrap());
        assert!(origin
            .delta_prime_contains(&pt(&[(99, 100), (1, 2)]))
            .unwrap());
    }

    #[test]
    fn volumes() {
        let square = StaircaseSet::downward_closure(&[ex(&[1, 1])], 2).unwrap();
        assert_eq!(square.volume_delta(), 1);
        assert_eq!(square.volume_delta_prime(), 4);
        let cross = StaircaseSet::downward_closure(&[ex(&[1, 0]), ex(&[0, 1])], 2).unwrap();
        assert_eq!(cross.volume_delta(), 0);
        assert_eq!(StaircaseSet::origin(2).volume_delta(), 0);
        assert_eq!(StaircaseSet::origin(2).volume_delta_prime(), 1);
        let ell = StaircaseSet::downward_closure(&[ex(&[2, 0]), ex(&[0, 1])], 2).unwrap();
        assert_eq!(ell.volume_delta_prime(), 4);
    }

    #[test]
    fn dimension_zero_staircase_has_unit_volume() {
        let s = StaircaseSet::origin(0);
        assert_eq!(s.len(), 1);
        assert_eq!(s.volume_delta(), 1);
    }

    #[test]
    fn restriction_cases() {
        let square = StaircaseSet::downward_closure(&[ex(&[1, 1])], 2).unwrap();
        let r = square.restrict(&AxisSubset::new(2, [0]).unwrap()).unwrap();
        assert_eq!(r.axes, vec![0]);
        assert_eq!(
            r.staircase.points().cloned().collect::<Vec<_>>(),
            vec![ex(&[0]), ex(&[1])]
        );
        let full = square.restrict(&AxisSubset::full(2)).unwrap();
        assert_eq!(full.staircase, square);
        let none = square.restrict(&AxisSubset::empty(2)).unwrap();
        assert_eq!(none.staircase.dim(), 0);
        assert_eq!(none.staircase.len(), 1);
    }

    #[test]
    fn weighted_norms() {
        let d = WeightVector::new(vec![q(2, 1), q(3, 1)]).unwrap();
        assert_eq!(weighted_norm(&ex(&[1, 1]), &d).unwrap(), q(5, 6));
        assert_eq!(weighted_norm(&ex(&[0, 0]), &d).unwrap(), q(0, 1));
        assert_eq!(
            weighted_norm(&ex(&[2, 0]), &WeightVector::ones(2)).unwrap(),
            q(2, 1)
        );
        assert!(weighted_norm(&ex(&[1]), &d).is_err());
        assert!(WeightVector::new(vec![q(1, 1), q(0, 1)]).is_err());
    }

    #[test]
    fn simplex_staircases() {
        let s = simplex_staircase(&WeightVector::ones(2), &q(2, 1)).unwrap();
        assert_eq!(s.len(), 6);
        let d = WeightVector::new(vec![q(2, 1), q(3, 1)]).unwrap();
        let s = simplex_staircase(&d, &q(1, 1)).unwrap();
        assert_eq!(
            s.points().cloned().collect::<BTreeSet<_>>(),
            set(&[
                &[0, 0],
                &[1, 0],
                &[2, 0],
                &[0, 1],
                &[0, 2],
                &[0, 3],
                &[1, 1]
            ])
        );
        let s = simplex_staircase(&d, &q(0, 1)).unwrap();
        assert_eq!(s.len(), 1);
        assert!(simplex_staircase(&d, &q(-1, 1)).is_err());
    }

    // Brute force over the bounding box e_i ≤ ε d_i.
    fn simplex_oracle(d: &[Rational], eps: &Rational) -> BTreeSet<Exponent> {
        let corner: Vec<u32> = d
            .iter()
            .map(|di| floor_to_u64(&(eps * di)).unwrap() as u32)
            .collect();
        Exponent::new(corner)
            .lower_box()
            .into_iter()
            .filter(|g| {
                let norm: Rational = g
                    .coords()
                    .iter()
                    .zip(d)
                    .map(|(&e, di)| Rational::from_integer(e.into()) / di)
                    .sum();
                norm <= *eps
            })
            .collect()
    }

    #[test]
    fn simplex_matches_box_enumeration() {
        for (d, eps) in [
            (vec![q(1, 1), q(1, 1), q(1, 1)], q(3, 1)),
            (vec![q(3, 2), q(5, 7)], q(7, 3)),
            (vec![q(2, 1)], q(5, 2)),
        ] {
            let w = WeightVector::new(d.clone()).unwrap();
            let s = simplex_staircase(&w, &eps).unwrap();
            assert_eq!(
                s.points().cloned().collect::<BTreeSet<_>>(),
                simplex_oracle(&d, &eps)
            );
        }
    }
}
