//! JSON file formats and result views.
//!
//! Rationals are written as `"p/q"` strings (`"p"` when integral); counts
//! and exponents are plain integers.

use serde::{Deserialize, Serialize, Serializer};

use crate::derbound::{BoundCertificate, ChainReport, HypothesisCheck, PrimeProfile, SimplexGroup};
use crate::groebner::{IdealPresentation, LengthReport};
use crate::polynomial::{EvalPoint, ParseError};
use crate::rational::{parse_rational, Rational, RationalParseError};
use crate::staircase::{Exponent, StaircaseError, StaircaseSet, WeightVector};
use crate::volgrid::{
    Envelope, GridEstimate, HalfspaceRegion, RegionPredicate, SimplexRegion, StaircaseRegion,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{field}: {source}")]
    Rational {
        field: String,
        source: RationalParseError,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
    #[error("{0}")]
    Shape(String),
}

pub fn ser_rational<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn ser_rationals<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(ToString::to_string))
}

fn rational_field(field: &str, text: &str) -> Result<Rational, FormatError> {
    parse_rational(text).map_err(|source| FormatError::Rational {
        field: field.to_string(),
        source,
    })
}

/// Parses a comma separated list of rationals, e.g. `0,1/2,3`.
pub fn parse_point(text: &str) -> Result<EvalPoint, FormatError> {
    if text.trim().is_empty() {
        return Ok(EvalPoint::new(Vec::new()));
    }
    text.split(',')
        .enumerate()
        .map(|(i, c)| rational_field(&format!("point[{i}]"), c))
        .collect::<Result<Vec<_>, _>>()
        .map(EvalPoint::new)
}

pub fn parse_rational_list(field: &str, text: &str) -> Result<Vec<Rational>, FormatError> {
    text.split(',')
        .enumerate()
        .map(|(i, c)| rational_field(&format!("{field}[{i}]"), c))
        .collect()
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

/// `{"n": 2, "points": [[1,1],[2,0]], "expect_cardinality": 5}`; the points
/// generate the staircase by downward closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StaircaseFile {
    pub n: usize,
    pub points: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_cardinality: Option<usize>,
}

impl StaircaseFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        from_json(text)
    }

    pub fn staircase(&self) -> Result<StaircaseSet, FormatError> {
        let points: Vec<Exponent> = self.points.iter().cloned().map(Exponent::new).collect();
        let s = StaircaseSet::downward_closure(&points, self.n)?;
        if let Some(expected) = self.expect_cardinality {
            if expected != s.len() {
                return Err(StaircaseError::CardinalityMismatch {
                    expected,
                    found: s.len(),
                }
                .into());
            }
        }
        Ok(s)
    }
}

/// `{"n": 2, "generators": ["x1^2", "x1*x2"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub n: usize,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        from_json(text)
    }

    pub fn ideal(&self) -> Result<IdealPresentation, FormatError> {
        Ok(IdealPresentation::parse(self.n, &self.generators)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Delta,
    DeltaPrime,
}

/// Region for the volume estimator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionSpec {
    /// `Σ x_i / d_i ≤ eps`.
    Simplex { d: Vec<String>, eps: String },
    /// An envelope of the staircase generated by `points`.
    Staircase {
        which: Which,
        points: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
    },
    /// Each row `[c_1, …, c_n, b]` means `Σ c_i x_i ≤ b`.
    Halfspaces { rows: Vec<Vec<String>> },
}

impl RegionSpec {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        from_json(text)
    }

    pub fn region(&self) -> Result<Box<dyn RegionPredicate>, FormatError> {
        match self {
            RegionSpec::Simplex { d, eps } => {
                let weights = d
                    .iter()
                    .enumerate()
                    .map(|(i, w)| rational_field(&format!("d[{i}]"), w))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Box::new(SimplexRegion {
                    weights: WeightVector::new(weights)?,
                    eps: rational_field("eps", eps)?,
                }))
            }
            RegionSpec::Staircase { which, points, n } => {
                let n = match (n, points.first()) {
                    (Some(n), _) => *n,
                    (None, Some(p)) => p.len(),
                    (None, None) => {
                        return Err(FormatError::Shape(
                            "staircase region needs points or n".into(),
                        ))
                    }
                };
                let file = StaircaseFile {
                    n,
                    points: points.clone(),
                    expect_cardinality: None,
                };
                let envelope = match which {
                    Which::Delta => Envelope::Delta,
                    Which::DeltaPrime => Envelope::DeltaPrime,
                };
                Ok(Box::new(StaircaseRegion {
                    staircase: file.staircase()?,
                    envelope,
                }))
            }
            RegionSpec::Halfspaces { rows } => {
                let width = rows
                    .first()
                    .map(Vec::len)
                    .ok_or_else(|| FormatError::Shape("halfspaces need at least one row".into()))?;
                if width < 2 {
                    return Err(FormatError::Shape(
                        "a halfspace row needs coefficients and a bound".into(),
                    ));
                }
                let mut parsed = Vec::with_capacity(rows.len());
                for (r, row) in rows.iter().enumerate() {
                    if row.len() != width {
                        return Err(FormatError::Shape(format!(
                            "row {r} has {} entries, expected {width}",
                            row.len()
                        )));
                    }
                    let mut values = row
                        .iter()
                        .enumerate()
                        .map(|(i, v)| rational_field(&format!("rows[{r}][{i}]"), v))
                        .collect::<Result<Vec<_>, _>>()?;
                    let b = values.pop().expect("width at least 2");
                    parsed.push((values, b));
                }
                Ok(Box::new(
                    HalfspaceRegion::new(width - 1, parsed).expect("rows have equal width"),
                ))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub generator: usize,
    pub gamma: Exponent,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    #[serde(serialize_with = "ser_rationals")]
    pub point: Vec<Rational>,
    pub sigma_points: Vec<Exponent>,
    pub bound: usize,
    pub truncated: bool,
    pub cap: u32,
    pub witnesses: Vec<WitnessJson>,
    pub staircase_values_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&BoundCertificate> for CertificateJson {
    fn from(c: &BoundCertificate) -> Self {
        CertificateJson {
            point: c.point.coords().to_vec(),
            sigma_points: c
                .staircase
                .as_ref()
                .map(|s| s.points().cloned().collect())
                .unwrap_or_default(),
            bound: c.bound,
            truncated: c.truncated,
            cap: c.cap,
            witnesses: c
                .witnesses()
                .into_iter()
                .map(|(generator, gamma, value)| WitnessJson {
                    generator,
                    gamma: gamma.clone(),
                    value: value.clone(),
                })
                .collect(),
            staircase_values_zero: c.staircase_values_zero(),
            note: c.note.clone(),
        }
    }
}

/// Length report plus the policy note that accompanies every local length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthJson {
    #[serde(flatten)]
    pub report: LengthReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
}

impl LengthJson {
    pub fn local(report: LengthReport) -> Self {
        let policy = format!(
            "accepted after {} repeated colength readings of I + m^N, N <= {}",
            report.confirm, report.cap
        );
        LengthJson {
            report,
            policy: Some(policy),
        }
    }

    pub fn global(report: LengthReport) -> Self {
        LengthJson {
            report,
            policy: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileJson {
    pub sigma: Vec<u8>,
    /// 1-based axis indices.
    pub upsilon: Vec<usize>,
    pub s: usize,
    pub dims: Vec<usize>,
    pub primality: &'static str,
}

impl From<&PrimeProfile> for ProfileJson {
    fn from(p: &PrimeProfile) -> Self {
        ProfileJson {
            sigma: p.sigma.clone(),
            upsilon: p.upsilon.indices().map(|i| i + 1).collect(),
            s: p.s,
            dims: p.dims.clone(),
            primality: "trusted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStepJson {
    pub gamma: Exponent,
    pub normal_form: String,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainJson {
    pub steps: Vec<ChainStepJson>,
    pub success: bool,
    pub certified_length_at_least: Option<usize>,
}

impl From<&ChainReport> for ChainJson {
    fn from(r: &ChainReport) -> Self {
        ChainJson {
            steps: r
                .steps
                .iter()
                .map(|s| ChainStepJson {
                    gamma: s.gamma.clone(),
                    normal_form: s.normal_form.to_string(),
                    strict: s.strict,
                })
                .collect(),
            success: r.success,
            certified_length_at_least: r.success.then_some(r.steps.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisJson {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
}

impl From<&HypothesisCheck> for HypothesisJson {
    fn from(h: &HypothesisCheck) -> Self {
        match h {
            HypothesisCheck::Holds => HypothesisJson {
                holds: true,
                generator: None,
                gamma: None,
                remainder: None,
            },
            HypothesisCheck::Fails {
                generator,
                gamma,
                remainder,
            } => HypothesisJson {
                holds: false,
                generator: Some(*generator),
                gamma: Some(gamma.clone()),
                remainder: Some(remainder.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EstimateJson {
    pub n: usize,
    #[serde(rename = "N")]
    pub box_size: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_rational")]
    pub inner: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub outer: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub gap: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub error_bound: Rational,
    pub grid_count: u64,
}

impl From<&GridEstimate> for EstimateJson {
    fn from(e: &GridEstimate) -> Self {
        EstimateJson {
            n: e.dim,
            box_size: e.spec.box_size,
            m: e.spec.subdivisions,
            inner: e.inner.clone(),
            outer: e.outer.clone(),
            gap: e.gap(),
            error_bound: e.error_bound.clone(),
            grid_count: e.grid_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupsJson {
    pub groups: Vec<SimplexGroup>,
    #[serde(serialize_with = "ser_rational")]
    pub grouped_bound: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derbound::vanishing_staircase;

    #[test]
    fn staircase_file_roundtrip() {
        let f =
            StaircaseFile::from_json(r#"{"n":2,"points":[[1,1],[2,0]],"expect_cardinality":5}"#)
                .unwrap();
        assert_eq!(f.staircase().unwrap().len(), 5);
        let bad =
            StaircaseFile::from_json(r#"{"n":2,"points":[[1,1]],"expect_cardinality":5}"#).unwrap();
        assert_eq!(
            bad.staircase(),
            Err(FormatError::Staircase(
                StaircaseError::CardinalityMismatch {
                    expected: 5,
                    found: 4
                }
            ))
        );
        assert!(StaircaseFile::from_json(r#"{"n":2}"#).is_err());
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(StaircaseFile::from_json(&text).unwrap(), f);
    }

    #[test]
    fn ideal_file() {
        let f = IdealFile::from_json(r#"{"n":2,"generators":["x1^2","x1*x2","x2^2"]}"#).unwrap();
        assert_eq!(f.ideal().unwrap().generators().len(), 3);
        let bad = IdealFile::from_json(r#"{"n":1,"generators":["x2"]}"#).unwrap();
        assert!(matches!(bad.ideal(), Err(FormatError::Parse(_))));
    }

    #[test]
    fn region_specs() {
        let half = [
            Rational::new(1.into(), 4.into()),
            Rational::new(1.into(), 4.into()),
        ];
        let r = RegionSpec::from_json(r#"{"kind":"simplex","d":["2","3"],"eps":"1"}"#).unwrap();
        let p = r.region().unwrap();
        assert_eq!(p.dimension(), 2);
        assert!(p.contains(&half));
        let r = RegionSpec::from_json(r#"{"kind":"halfspaces","rows":[["1","1","1/2"]]}"#).unwrap();
        let p = r.region().unwrap();
        assert!(p.contains(&half));
        let r =
            RegionSpec::from_json(r#"{"kind":"staircase","which":"delta_prime","points":[[1,0]]}"#)
                .unwrap();
        assert_eq!(r.region().unwrap().dimension(), 2);
        assert!(RegionSpec::from_json(r#"{"kind":"ball"}"#).is_err());
        let r = RegionSpec::from_json(r#"{"kind":"simplex","d":["0"],"eps":"1"}"#).unwrap();
        assert!(r.region().is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let ideal = IdealPresentation::parse(2, &["x1^2", "x1*x2", "x2^2"]).unwrap();
        let c = vanishing_staircase(&ideal, &EvalPoint::origin(2), 10).unwrap();
        let json = serde_json::to_string(&CertificateJson::from(&c)).unwrap();
        assert_eq!(
            json,
            r#"{"point":["0","0"],"sigma_points":[[0,0],[0,1],[1,0]],"bound":3,"truncated":false,"cap":10,"witnesses":[{"generator":2,"gamma":[0,2],"value":"1"},{"generator":1,"gamma":[1,1],"value":"1"},{"generator":0,"gamma":[2,0],"value":"1"}],"staircase_values_zero":true}"#
        );
    }

    #[test]
    fn points_parse() {
        let p = parse_point("1, 1/2,0").unwrap();
        assert_eq!(p.dim(), 3);
        assert!(parse_point("1,x").is_err());
        assert_eq!(parse_point("").unwrap().dim(), 0);
    }
}
