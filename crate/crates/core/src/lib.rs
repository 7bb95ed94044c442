//! Certified lower bounds for local multiplicities of polynomial ideals.
//!
//! The bound side lives in [`derbound`]: a point `a` and an ideal `I` give the
//! largest downward-closed set of derivative orders on which every generator's
//! normalized derivative vanishes at `a`, and its cardinality bounds the local
//! length of `A/I` at `a` from below. The [`groebner`] module is the
//! independent length oracle, and [`volgrid`] estimates volumes of lower
//! saturated regions with an explicit error bound.
//!
//! Everything is exact: coefficients and coordinates are arbitrary precision
//! rationals and no floating point enters any decision.

pub mod derbound;
pub mod formats;
pub mod groebner;
pub mod polynomial;
pub mod rational;
pub mod staircase;
pub mod volgrid;

pub use derbound::{
    BoundCertificate, ChainReport, ChainStep, HypothesisCheck, PrimeProfile, SimplexGroup,
    VanishingTable, VerificationReport,
};
pub use groebner::{
    Colength, GroebnerBasis, GroebnerError, IdealPresentation, LengthReport, Limits, MonomialOrder,
    OrderKind,
};
pub use polynomial::{EvalPoint, ParseError, PolyError, Polynomial};
pub use rational::Rational;
pub use staircase::{
    AxisSubset, Exponent, RealPoint, RestrictedStaircase, StaircaseError, StaircaseSet,
    WeightVector,
};
pub use volgrid::{GridEstimate, GridSet, GridSpec, RegionPredicate, VolumeError};
