//! Grid sandwich estimates for volumes of lower saturated regions.
//!
//! For a lower saturated `Δ ⊂ R≥0^n`, a box size `N` and `m` subdivisions per
//! unit, the grid set is `Δ ∩ J^n` with `J = {j/m : 0 ≤ j ≤ mN}`. Its inner
//! region (boxes below grid points) and outer region (cells above grid
//! points) bracket `vol(Δ ∩ [0,N]^n)`, and their volumes differ by at most
//! `n (1+N)^{n-1} / m`.
//!
//! All grid coordinates are integers `j`; predicates receive the exact
//! rationals `j/m`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::rational::{rational_pow, Rational};
use crate::staircase::{RealPoint, StaircaseSet, WeightVector};

/// Comparable pairs sampled by the saturation spot check.
pub const DEFAULT_SPOT_CHECKS: usize = 256;
const SPOT_CHECK_SEED: u64 = 0x6d75_6c74_626e_6421;
/// Largest number of grid columns evaluated in one estimate.
pub const MAX_COLUMNS: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VolumeError {
    #[error("box size and subdivisions must be positive")]
    InvalidSpec,
    #[error("regions must have dimension at least 1")]
    ZeroDimension,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("grid with {columns} columns exceeds the limit of {limit}")]
    GridTooLarge { columns: u128, limit: u64 },
    #[error("region is not lower saturated: {detail}")]
    SaturationViolation { detail: String },
    #[error("tolerance needs m = {required}, above the limit m_max = {m_max}")]
    ToleranceUnreachable { required: u64, m_max: u64 },
}

/// Membership test for a region that the caller declares lower saturated.
pub trait RegionPredicate: Sync {
    fn dimension(&self) -> usize;
    /// `point` has `dimension()` non-negative coordinates.
    fn contains(&self, point: &[Rational]) -> bool;
}

/// `{φ ≥ 0 : Σ φ_i / d_i ≤ ε}`.
#[derive(Debug, Clone)]
pub struct SimplexRegion {
    pub weights: WeightVector,
    pub eps: Rational,
}

impl RegionPredicate for SimplexRegion {
    fn dimension(&self) -> usize {
        self.weights.dim()
    }

    fn contains(&self, point: &[Rational]) -> bool {
        let norm = point
            .iter()
            .zip(self.weights.weights())
            .fold(Rational::zero(), |acc, (x, d)| acc + x / d);
        norm <= self.eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Envelope {
    /// `Δ(Σ)`, the closed union of boxes `[0, γ]`.
    Delta,
    /// `Δ′(Σ)`, the half-open union of cells `[γ, γ+1)`.
    DeltaPrime,
}

#[derive(Debug, Clone)]
pub struct StaircaseRegion {
    pub staircase: StaircaseSet,
    pub envelope: Envelope,
}

impl RegionPredicate for StaircaseRegion {
    fn dimension(&self) -> usize {
        self.staircase.dim()
    }

    fn contains(&self, point: &[Rational]) -> bool {
        let Ok(phi) = RealPoint::new(point.to_vec()) else {
            return false;
        };
        let inside = match self.envelope {
            Envelope::Delta => self.staircase.delta_contains(&phi),
            Envelope::DeltaPrime => self.staircase.delta_prime_contains(&phi),
        };
        inside.unwrap_or(false)
    }
}

/// Intersection of half-spaces `Σ c_i x_i ≤ b`, one `(c, b)` per row.
/// Lower saturated when every `c_i ≥ 0`.
#[derive(Debug, Clone)]
pub struct HalfspaceRegion {
    dim: usize,
    rows: Vec<(Vec<Rational>, Rational)>,
}

impl HalfspaceRegion {
    pub fn new(dim: usize, rows: Vec<(Vec<Rational>, Rational)>) -> Option<Self> {
        rows.iter()
            .all(|(c, _)| c.len() == dim)
            .then_some(HalfspaceRegion { dim, rows })
    }
}

impl RegionPredicate for HalfspaceRegion {
    fn dimension(&self) -> usize {
        self.dim
    }

    fn contains(&self, point: &[Rational]) -> bool {
        self.rows.iter().all(|(c, b)| {
            let lhs = c
                .iter()
                .zip(point)
                .fold(Rational::zero(), |acc, (ci, x)| acc + ci * x);
            &lhs <= b
        })
    }
}

/// Wraps a closure.
pub struct FnRegion<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[Rational]) -> bool + Sync> FnRegion<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnRegion { dim, f }
    }
}

impl<F: Fn(&[Rational]) -> bool + Sync> RegionPredicate for FnRegion<F> {
    fn dimension(&self) -> usize {
        self.dim
    }

    fn contains(&self, point: &[Rational]) -> bool {
        (self.f)(point)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    /// `N`: the region is measured inside `[0, N]^n`.
    pub box_size: u64,
    /// `m`: grid step `1/m`.
    pub subdivisions: u64,
}

impl GridSpec {
    pub fn new(box_size: u64, subdivisions: u64) -> Result<Self, VolumeError> {
        if box_size == 0 || subdivisions == 0 {
            return Err(VolumeError::InvalidSpec);
        }
        Ok(GridSpec {
            box_size,
            subdivisions,
        })
    }

    /// Largest grid index `mN`.
    pub fn side(&self) -> u64 {
        self.box_size * self.subdivisions
    }
}

/// A downward-closed set of grid indices, stored as column heights: for each
/// prefix `(j_1, …, j_{n-1})` the number of `j_n` values in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSet {
    dim: usize,
    spec: GridSpec,
    heights: Vec<u64>,
}

impl GridSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    /// `#Σ_{N,m}`.
    pub fn len(&self) -> u64 {
        self.heights.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn prefix(&self, mut index: usize) -> Vec<u64> {
        let base = self.spec.side() + 1;
        let mut out = vec![0u64; self.dim - 1];
        for slot in out.iter_mut().rev() {
            *slot = index as u64 % base;
            index /= base as usize;
        }
        out
    }

    pub fn contains(&self, point: &[u64]) -> bool {
        let base = self.spec.side() + 1;
        if point.len() != self.dim || point.iter().any(|&j| j >= base) {
            return false;
        }
        let (last, prefix) = point.split_last().expect("dimension at least 1");
        let index = prefix.iter().fold(0u64, |acc, &j| acc * base + j) as usize;
        *last < self.heights[index]
    }

    /// All grid indices, lexicographically.
    pub fn points(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for (index, &h) in self.heights.iter().enumerate() {
            let prefix = self.prefix(index);
            for j in 0..h {
                let mut p = prefix.clone();
                p.push(j);
                out.push(p);
            }
        }
        out
    }

    /// `(#Σ, #{u ∈ Σ : all u_i ≥ 1})`.
    fn counts(&self) -> (u64, u64) {
        let mut inner = 0u64;
        for (index, &h) in self.heights.iter().enumerate() {
            if h > 1 && self.prefix(index).iter().all(|&j| j >= 1) {
                inner += h - 1;
            }
        }
        (self.len(), inner)
    }

    fn is_downward_closed(&self) -> bool {
        let base = (self.spec.side() + 1) as usize;
        let mut stride = 1usize;
        for _ in 0..self.dim - 1 {
            for index in 0..self.heights.len() {
                let coord = (index / stride) % base;
                if coord > 0 && self.heights[index] > self.heights[index - stride] {
                    return false;
                }
            }
            stride *= base;
        }
        true
    }
}

fn grid_coords(indices: &[u64], m: u64) -> Vec<Rational> {
    indices
        .iter()
        .map(|&j| Rational::new(BigInt::from(j), BigInt::from(m)))
        .collect()
}

fn render(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `Δ ∩ J_{N,m}^n`, with the predicate's lower saturation spot checked.
pub fn grid_points<P: RegionPredicate + ?Sized>(
    pred: &P,
    spec: GridSpec,
) -> Result<GridSet, VolumeError> {
    grid_points_checked(pred, spec, DEFAULT_SPOT_CHECKS)
}

/// As [`grid_points`] with an explicit number of spot checks.
pub fn grid_points_checked<P: RegionPredicate + ?Sized>(
    pred: &P,
    spec: GridSpec,
    spot_checks: usize,
) -> Result<GridSet, VolumeError> {
    let n = pred.dimension();
    if n == 0 {
        return Err(VolumeError::ZeroDimension);
    }
    GridSpec::new(spec.box_size, spec.subdivisions)?;
    let base = spec.side() + 1;
    let columns = (base as u128)
        .checked_pow((n - 1) as u32)
        .unwrap_or(u128::MAX);
    if columns > u128::from(MAX_COLUMNS) {
        return Err(VolumeError::GridTooLarge {
            columns,
            limit: MAX_COLUMNS,
        });
    }
    let m = spec.subdivisions;
    let side = spec.side();
    let heights: Vec<u64> = (0..columns as usize)
        .into_par_iter()
        .map(|index| {
            let mut indices = vec![0u64; n];
            let mut rest = index as u64;
            for slot in indices[..n - 1].iter_mut().rev() {
                *slot = rest % base;
                rest /= base;
            }
            // First j_n outside the region; membership is monotone in j_n.
            let (mut lo, mut hi) = (0u64, side + 1);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                indices[n - 1] = mid;
                if pred.contains(&grid_coords(&indices, m)) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        })
        .collect();
    let set = GridSet {
        dim: n,
        spec,
        heights,
    };
    spot_check(pred, &set, spot_checks)?;
    if !set.is_downward_closed() {
        return Err(VolumeError::SaturationViolation {
            detail: "column heights are not downward closed".into(),
        });
    }
    Ok(set)
}

/// Samples `φ` from the grid set and `ψ ≤ φ` on the half-step grid, and
/// checks `ψ` is in the region. Also checks each sampled column's height
/// against a direct membership test.
fn spot_check<P: RegionPredicate + ?Sized>(
    pred: &P,
    set: &GridSet,
    samples: usize,
) -> Result<(), VolumeError> {
    let m = set.spec.subdivisions;
    let occupied: Vec<usize> = (0..set.heights.len())
        .filter(|&i| set.heights[i] > 0)
        .collect();
    if occupied.is_empty() {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
    for _ in 0..samples {
        let column = occupied[rng.gen_range(0..occupied.len())];
        let mut upper = set.prefix(column);
        upper.push(rng.gen_range(0..set.heights[column]));
        let upper_q = grid_coords(&upper, m);
        let lower_q: Vec<Rational> = upper
            .iter()
            .map(|&j| Rational::new(BigInt::from(rng.gen_range(0..=2 * j)), BigInt::from(2 * m)))
            .collect();
        if !pred.contains(&upper_q) {
            return Err(VolumeError::SaturationViolation {
                detail: format!("column below {:?} has a gap", render(&upper_q)),
            });
        }
        if !pred.contains(&lower_q) {
            return Err(VolumeError::SaturationViolation {
                detail: format!(
                    "contains {:?} but not {:?}",
                    render(&upper_q),
                    render(&lower_q)
                ),
            });
        }
    }
    Ok(())
}

/// `(inner, outer) = (#{u : all u_i ≥ 1} / m^n, #points / m^n)`.
pub fn inner_outer(points: &GridSet) -> (Rational, Rational) {
    let (count, inner) = points.counts();
    let cell = cell_volume(points.dim, points.spec.subdivisions);
    (
        Rational::from_integer(inner.into()) * &cell,
        Rational::from_integer(count.into()) * cell,
    )
}

fn cell_volume(n: usize, m: u64) -> Rational {
    rational_pow(&Rational::from_integer(m.into()), -(n as i64))
}

/// `n (1+N)^{n-1} / m`.
pub fn error_bound(n: usize, spec: GridSpec) -> Rational {
    let one_plus_n = Rational::from_integer(BigInt::from(spec.box_size) + 1);
    Rational::from_integer(n.into()) * rational_pow(&one_plus_n, n as i64 - 1)
        / Rational::from_integer(spec.subdivisions.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEstimate {
    pub spec: GridSpec,
    pub dim: usize,
    pub inner: Rational,
    pub outer: Rational,
    pub error_bound: Rational,
    pub grid_count: u64,
}

impl GridEstimate {
    pub fn gap(&self) -> Rational {
        &self.outer - &self.inner
    }

    pub fn brackets(&self, value: &Rational) -> bool {
        &self.inner <= value && value <= &self.outer
    }
}

pub fn estimate_volume<P: RegionPredicate + ?Sized>(
    pred: &P,
    spec: GridSpec,
) -> Result<GridEstimate, VolumeError> {
    let set = grid_points(pred, spec)?;
    let (inner, outer) = inner_outer(&set);
    Ok(GridEstimate {
        spec,
        dim: set.dim,
        inner,
        outer,
        error_bound: error_bound(set.dim, spec),
        grid_count: set.len(),
    })
}

/// Smallest power of two `m` with `n (1+N)^{n-1} / m ≤ tol`.
pub fn required_subdivisions(n: usize, box_size: u64, tol: &Rational) -> Result<u64, VolumeError> {
    if !tol.is_positive() {
        return Err(VolumeError::NonPositiveTolerance);
    }
    let mut m = 1u64;
    while error_bound(n, GridSpec::new(box_size, m)?) > *tol {
        m = m.checked_mul(2).ok_or(VolumeError::ToleranceUnreachable {
            required: u64::MAX,
            m_max: u64::MAX,
        })?;
    }
    Ok(m)
}

/// Estimate on the coarsest power-of-two grid meeting `tol`.
pub fn refine_to_tolerance<P: RegionPredicate + ?Sized>(
    pred: &P,
    box_size: u64,
    tol: &Rational,
    m_max: u64,
) -> Result<GridEstimate, VolumeError> {
    let m = required_subdivisions(pred.dimension(), box_size, tol)?;
    if m > m_max {
        return Err(VolumeError::ToleranceUnreachable { required: m, m_max });
    }
    estimate_volume(pred, GridSpec::new(box_size, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::Exponent;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn spec(n: u64, m: u64) -> GridSpec {
        GridSpec::new(n, m).unwrap()
    }

    fn triangle() -> SimplexRegion {
        SimplexRegion {
            weights: WeightVector::ones(2),
            eps: q(1, 1),
        }
    }

    #[test]
    fn triangle_grid() {
        let set = grid_points(&triangle(), spec(1, 10)).unwrap();
        assert_eq!(set.len(), 66);
        let brute = (0..=10u64)
            .flat_map(|i| (0..=10u64).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j <= 10)
            .count();
        assert_eq!(brute, 66);
        assert!(set.contains(&[3, 7]));
        assert!(!set.contains(&[4, 7]));
        let (inner, outer) = inner_outer(&set);
        assert_eq!((inner, outer), (q(45, 100), q(66, 100)));
    }

    #[test]
    fn trivial_grids() {
        let all = FnRegion::new(2, |_: &[Rational]| true);
        let set = grid_points(&all, spec(1, 2)).unwrap();
        assert_eq!(set.len(), 9);
        assert_eq!(inner_outer(&set), (q(1, 1), q(9, 4)));

        let origin = FnRegion::new(2, |p: &[Rational]| p.iter().all(Zero::is_zero));
        let set = grid_points(&origin, spec(1, 5)).unwrap();
        assert_eq!(set.points(), vec![vec![0, 0]]);
        assert_eq!(inner_outer(&set), (q(0, 1), q(1, 25)));
    }

    #[test]
    fn error_bounds() {
        assert_eq!(error_bound(2, spec(1, 10)), q(4, 10));
        assert_eq!(error_bound(1, spec(7, 3)), q(1, 3));
        assert_eq!(error_bound(3, spec(2, 100)), q(27, 100));
    }

    #[test]
    fn triangle_estimate() {
        let e = estimate_volume(&triangle(), spec(1, 10)).unwrap();
        assert_eq!(e.inner, q(9, 20));
        assert_eq!(e.outer, q(33, 50));
        assert_eq!(e.gap(), q(21, 100));
        assert!(e.gap() <= e.error_bound);
        assert!(e.brackets(&q(1, 2)));
        assert_eq!(e.grid_count, 66);
    }

    #[test]
    fn unit_box() {
        let unit_box = HalfspaceRegion::new(
            2,
            vec![
                (vec![q(1, 1), q(0, 1)], q(1, 1)),
                (vec![q(0, 1), q(1, 1)], q(1, 1)),
            ],
        )
        .unwrap();
        let e = estimate_volume(&unit_box, spec(1, 4)).unwrap();
        assert_eq!(e.inner, q(1, 1));
        assert_eq!(e.outer, q(25, 16));
    }

    #[test]
    fn tolerance_schedule() {
        let e = refine_to_tolerance(&triangle(), 1, &q(1, 100), 1 << 20).unwrap();
        assert_eq!(e.spec.subdivisions, 512);
        assert_eq!(required_subdivisions(2, 1, &q(4, 1)).unwrap(), 1);
        assert_eq!(
            refine_to_tolerance(&triangle(), 1, &q(1, 1000), 64),
            Err(VolumeError::ToleranceUnreachable {
                required: 4096,
                m_max: 64
            })
        );
        assert_eq!(
            required_subdivisions(2, 1, &q(0, 1)),
            Err(VolumeError::NonPositiveTolerance)
        );
    }

    #[test]
    fn refinement_is_monotone() {
        let region = SimplexRegion {
            weights: WeightVector::new(vec![q(2, 1), q(3, 1)]).unwrap(),
            eps: q(1, 2),
        };
        let mut previous: Option<GridEstimate> = None;
        for k in 0..7 {
            let e = estimate_volume(&region, spec(2, 1 << k)).unwrap();
            assert!(e.brackets(&q(3, 4)));
            if let Some(p) = previous {
                assert!(e.inner >= p.inner && e.outer <= p.outer);
            }
            previous = Some(e);
        }
    }

    #[test]
    fn staircase_envelopes() {
        let s = StaircaseSet::downward_closure(
            &[Exponent::new(vec![2, 0]), Exponent::new(vec![1, 1])],
            2,
        )
        .unwrap();
        let prime = StaircaseRegion {
            staircase: s.clone(),
            envelope: Envelope::DeltaPrime,
        };
        let e = estimate_volume(&prime, spec(4, 1)).unwrap();
        assert_eq!(e.outer, q(s.len() as i64, 1));
        let delta = StaircaseRegion {
            staircase: s.clone(),
            envelope: Envelope::Delta,
        };
        let e = estimate_volume(&delta, spec(4, 16)).unwrap();
        assert_eq!(e.inner, q(s.volume_delta() as i64, 1));
    }

    #[test]
    fn saturation_violation_is_reported() {
        let annulus = FnRegion::new(2, |p: &[Rational]| {
            let s = &p[0] + &p[1];
            s <= q(1, 1) && s >= q(1, 2)
        });
        assert!(matches!(
            grid_points(&annulus, spec(1, 8)),
            Err(VolumeError::SaturationViolation { .. })
        ));
        let negative = HalfspaceRegion::new(2, vec![(vec![q(1, 1), q(-1, 1)], q(0, 1))]).unwrap();
        assert!(matches!(
            grid_points(&negative, spec(1, 8)),
            Err(VolumeError::SaturationViolation { .. })
        ));
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(GridSpec::new(0, 1), Err(VolumeError::InvalidSpec));
        assert_eq!(GridSpec::new(1, 0), Err(VolumeError::InvalidSpec));
        let empty = FnRegion::new(0, |_: &[Rational]| true);
        assert_eq!(
            grid_points(&empty, spec(1, 1)),
            Err(VolumeError::ZeroDimension)
        );
    }
}
