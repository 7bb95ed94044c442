use std::path::Path;

use multbound_core::derbound::{
    chain_witness, check_hypothesis_mod_prime, group_by_weight, grouped_simplex_bound,
    simplex_bound, upsilon_set, vanishing_staircase,
};
use multbound_core::formats::{
    parse_point, parse_rational_list, CertificateJson, ChainJson, EstimateJson, HypothesisJson,
    IdealFile, LengthJson, ProfileJson, RegionSpec, StaircaseFile,
};
use multbound_core::groebner::{global_length, local_length_at_point, LocalLengthOptions};
use multbound_core::rational::parse_rational;
use multbound_core::staircase::simplex_staircase;
use multbound_core::volgrid::{estimate_volume, refine_to_tolerance};
use multbound_core::{
    Colength, EvalPoint, Exponent, GridSpec, GroebnerError, IdealPresentation, Limits,
    MonomialOrder, PrimeProfile, Rational, StaircaseSet, WeightVector,
};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_BOUND_EXCEEDS_LENGTH};
use crate::report::ReportBuilder;
use crate::{Command, GroebnerArgs, LengthArgs};

pub struct Outcome {
    pub builder: ReportBuilder,
    pub result: Value,
    pub code: i32,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(builder: ReportBuilder, result: Value) -> Self {
        Outcome {
            builder,
            result,
            code: 0,
            diagnostics: Vec::new(),
        }
    }
}

fn limits(args: &GroebnerArgs) -> Limits {
    Limits {
        max_steps: args.max_steps,
        max_degree: args.max_degree,
    }
}

fn length_options(length: &LengthArgs, groebner: &GroebnerArgs) -> LocalLengthOptions {
    LocalLengthOptions {
        confirm: length.confirm,
        cap: length.stabilization_cap,
        limits: limits(groebner),
    }
}

fn record_groebner(b: &mut ReportBuilder, args: &GroebnerArgs) {
    b.arg("max_steps", args.max_steps);
    b.arg("max_degree", args.max_degree);
}

fn record_length(b: &mut ReportBuilder, args: &LengthArgs) {
    b.arg("confirm", args.confirm);
    b.arg("stabilization_cap", args.stabilization_cap);
}

fn load_ideal(b: &mut ReportBuilder, path: &Path) -> Result<IdealPresentation, CliError> {
    let text = b.read_input(path)?;
    Ok(IdealFile::from_json(&text)?.ideal()?)
}

fn load_point(text: &str, n: usize) -> Result<EvalPoint, CliError> {
    let point = parse_point(text)?;
    if point.dim() != n {
        return Err(CliError::input(format!(
            "point has {} coordinates but the ring has {n} variables",
            point.dim()
        )));
    }
    Ok(point)
}

fn parse_weights(text: &str) -> Result<WeightVector, CliError> {
    WeightVector::new(parse_rational_list("d", text)?).map_err(|e| CliError::input(e.to_string()))
}

fn parse_eps(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::input(format!("eps: {e}")))
}

fn to_value(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(command: &Command, digits: Option<usize>) -> Result<Outcome, CliError> {
    match command {
        Command::Bound {
            ideal,
            point,
            cap,
            verify,
            prime,
            length,
            groebner,
        } => {
            let mut b = ReportBuilder::new("bound", digits);
            b.arg("ideal", ideal.display().to_string());
            b.arg("point", point);
            b.arg("cap", cap);
            b.arg("verify", verify);
            record_length(&mut b, length);
            record_groebner(&mut b, groebner);
            let ideal = load_ideal(&mut b, ideal)?;
            let point = load_point(point, ideal.nvars())?;
            let cert = vanishing_staircase(&ideal, &point, *cap)?;
            let view = CertificateJson::from(&cert);
            for (i, w) in view.witnesses.iter().enumerate() {
                b.decimal(format!("certificate.witnesses[{i}].value"), &w.value);
            }
            let mut result = json!({ "certificate": to_value(&view) });
            let mut outcome_code = 0;
            let mut diagnostics = Vec::new();

            if let Some(prime_path) = prime {
                b.arg("prime", prime_path.display().to_string());
                let prime_ideal = load_ideal(&mut b, prime_path)?;
                let basis = prime_ideal.groebner_basis(
                    &MonomialOrder::grevlex(prime_ideal.nvars()),
                    &limits(groebner),
                )?;
                let sigma = cert
                    .staircase
                    .clone()
                    .unwrap_or_else(|| StaircaseSet::origin(ideal.nvars()));
                let check = check_hypothesis_mod_prime(&ideal, &basis, &sigma)?;
                result["hypothesis_mod_prime"] = to_value(HypothesisJson::from(&check));
                result["primality"] = json!("trusted");
            }

            if *verify {
                match local_length_at_point(&ideal, &point, &length_options(length, groebner)) {
                    Ok(report) => {
                        let bound = cert.bound as u64;
                        let (holds, tight) = match report.value {
                            Colength::Finite(v) => (bound <= v, bound == v),
                            Colength::Infinite => (true, false),
                        };
                        result["length"] = to_value(LengthJson::local(report));
                        result["verdict"] = json!(if holds { "OK" } else { "VIOLATED" });
                        result["tight"] = json!(tight);
                        if !holds {
                            outcome_code = EXIT_BOUND_EXCEEDS_LENGTH;
                            diagnostics.push(
                                "error: certified bound exceeds the oracle length".to_string(),
                            );
                        }
                    }
                    Err(e @ GroebnerError::NotStabilized { .. }) => {
                        let err = CliError::from(e.clone());
                        if let GroebnerError::NotStabilized { cap, trace } = e {
                            result["length"] =
                                json!({ "stabilized": false, "cap": cap, "trace": trace });
                        }
                        result["verdict"] = json!("UNVERIFIED");
                        outcome_code = err.code;
                        diagnostics.push(format!("error: {}", err.message));
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(Outcome {
                builder: b,
                result,
                code: outcome_code,
                diagnostics,
            })
        }

        Command::Volume {
            region,
            box_size,
            m,
            tol,
            m_max,
        } => {
            let mut b = ReportBuilder::new("volume", digits);
            b.arg("region", region.display().to_string());
            b.arg("N", box_size);
            b.arg("m", m);
            b.arg("tol", tol);
            b.arg("m_max", m_max);
            let text = b.read_input(region)?;
            let predicate = RegionSpec::from_json(&text)?.region()?;
            let estimate = match (m, tol) {
                (Some(m), _) => estimate_volume(predicate.as_ref(), GridSpec::new(*box_size, *m)?)?,
                (None, Some(tol)) => {
                    let tol =
                        parse_rational(tol).map_err(|e| CliError::input(format!("tol: {e}")))?;
                    refine_to_tolerance(predicate.as_ref(), *box_size, &tol, *m_max)?
                }
                (None, None) => return Err(CliError::input("either --m or --tol is required")),
            };
            let view = EstimateJson::from(&estimate);
            b.decimal("inner", &view.inner);
            b.decimal("outer", &view.outer);
            b.decimal("gap", &view.gap);
            b.decimal("error_bound", &view.error_bound);
            Ok(Outcome::ok(b, to_value(view)))
        }

        Command::Length {
            ideal,
            point,
            length,
            groebner,
        } => {
            let mut b = ReportBuilder::new("length", digits);
            b.arg("ideal", ideal.display().to_string());
            b.arg("point", point);
            record_length(&mut b, length);
            record_groebner(&mut b, groebner);
            let ideal = load_ideal(&mut b, ideal)?;
            let view = match point {
                Some(p) => {
                    let p = load_point(p, ideal.nvars())?;
                    LengthJson::local(local_length_at_point(
                        &ideal,
                        &p,
                        &length_options(length, groebner),
                    )?)
                }
                None => LengthJson::global(global_length(&ideal, &limits(groebner))?),
            };
            Ok(Outcome::ok(b, to_value(view)))
        }

        Command::Chain {
            ideal,
            staircase,
            no_closure,
            groebner,
        } => {
            let mut b = ReportBuilder::new("chain", digits);
            b.arg("ideal", ideal.display().to_string());
            b.arg("staircase", staircase.display().to_string());
            b.arg("closure", !no_closure);
            record_groebner(&mut b, groebner);
            let ideal = load_ideal(&mut b, ideal)?;
            let file = StaircaseFile::from_json(&b.read_input(staircase)?)?;
            let points: Vec<Exponent> = if *no_closure {
                let mut pts: Vec<Exponent> =
                    file.points.iter().cloned().map(Exponent::new).collect();
                if pts.iter().any(|p| p.dim() != file.n) {
                    return Err(CliError::input("staircase point dimension differs from n"));
                }
                pts.dedup();
                pts
            } else {
                file.staircase()?.points().cloned().collect()
            };
            let report = chain_witness(&points, &ideal, &limits(groebner))?;
            Ok(Outcome::ok(b, to_value(ChainJson::from(&report))))
        }

        Command::Profile {
            prime,
            d,
            eps,
            groebner,
        } => {
            let mut b = ReportBuilder::new("profile", digits);
            b.arg("prime", prime.display().to_string());
            b.arg("d", d);
            b.arg("eps", eps);
            record_groebner(&mut b, groebner);
            let prime = load_ideal(&mut b, prime)?;
            let profile = upsilon_set(&prime, &limits(groebner))?;
            let mut result = json!({ "profile": to_value(ProfileJson::from(&profile)) });
            if let (Some(d), Some(eps)) = (d, eps) {
                let weights = parse_weights(d)?;
                let eps = parse_eps(eps)?;
                bounds_into(&mut b, &mut result, &weights, &eps, &profile)?;
            }
            Ok(Outcome::ok(b, result))
        }

        Command::Simplex { d, eps, sigma } => {
            let mut b = ReportBuilder::new("simplex", digits);
            b.arg("d", d);
            b.arg("eps", eps);
            b.arg("sigma", sigma);
            let weights = parse_weights(d)?;
            let eps = parse_eps(eps)?;
            let sigma = match sigma {
                Some(text) => text
                    .split(',')
                    .map(|s| match s.trim() {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        other => Err(CliError::input(format!(
                            "sigma entries must be 0 or 1, got `{other}`"
                        ))),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![0; weights.dim()],
            };
            if sigma.len() != weights.dim() {
                return Err(CliError::input("sigma and d have different lengths"));
            }
            let profile = PrimeProfile::from_sigma(sigma);
            let staircase =
                simplex_staircase(&weights, &eps).map_err(|e| CliError::input(e.to_string()))?;
            let restricted = staircase
                .restrict(&profile.upsilon)
                .map_err(|e| CliError::input(e.to_string()))?;
            let mut result = json!({
                "staircase": {
                    "n": staircase.dim(),
                    "cardinality": staircase.len(),
                    "maximal": to_value(staircase.maximal()),
                    "volume_delta": staircase.volume_delta(),
                    "volume_delta_prime": staircase.volume_delta_prime(),
                },
                "restricted": {
                    "axes": restricted.axes.iter().map(|a| a + 1).collect::<Vec<_>>(),
                    "cardinality": restricted.staircase.len(),
                },
                "profile": to_value(ProfileJson::from(&profile)),
            });
            if let Some(obj) = result["profile"].as_object_mut() {
                obj.remove("primality");
            }
            bounds_into(&mut b, &mut result, &weights, &eps, &profile)?;
            Ok(Outcome::ok(b, result))
        }
    }
}

fn bounds_into(
    b: &mut ReportBuilder,
    result: &mut Value,
    weights: &WeightVector,
    eps: &Rational,
    profile: &PrimeProfile,
) -> Result<(), CliError> {
    let bound = simplex_bound(weights, eps, profile)?;
    let groups = group_by_weight(weights, profile)?;
    let grouped = grouped_simplex_bound(&groups, eps, profile.s)?;
    b.decimal("simplex_bound", &bound);
    b.decimal("grouped_bound", &grouped);
    result["simplex_bound"] = json!(bound.to_string());
    result["groups"] = to_value(&groups);
    result["grouped_bound"] = json!(grouped.to_string());
    Ok(())
}
