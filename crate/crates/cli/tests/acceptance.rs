//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use multbound_core::derbound::{simplex_bound, upsilon_set, vanishing_staircase};
use multbound_core::groebner::{local_length_at_point, LocalLengthOptions};
use multbound_core::polynomial::parse_polynomial;
use multbound_core::volgrid::{estimate_volume, SimplexRegion};
use multbound_core::{
    Colength, EvalPoint, Exponent, GridSpec, IdealPresentation, Limits, MonomialOrder, OrderKind,
    Polynomial, PrimeProfile, Rational, RealPoint, StaircaseSet, WeightVector,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed <= Duration::from_secs(limit_secs), || {
        format!("took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn fill(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Exponent::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            fill(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, d, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut v = 0;
    while v == 0 {
        v = rng.gen_range(-4..=4);
    }
    q(v, rng.gen_range(1..=3))
}

/// `⟨random combinations of monomials of degree > t⟩ + m^{t+2}`, moved to
/// `a`. All degrees stay at most 6.
fn random_m_primary(rng: &mut ChaCha8Rng, n: usize, t: u32, a: &EvalPoint) -> IdealPresentation {
    let high: Vec<Exponent> = (t + 1..=6)
        .flat_map(|d| monomials_of_degree(n, d))
        .collect();
    let mut gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let terms: Vec<(Exponent, Rational)> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    (
                        high[rng.gen_range(0..high.len())].clone(),
                        random_rational(rng),
                    )
                })
                .collect();
            Polynomial::from_terms(n, terms)
        })
        .collect();
    gens.extend(
        monomials_of_degree(n, t + 2)
            .into_iter()
            .map(|e| Polynomial::monomial(e, q(1, 1))),
    );
    let moved = gens
        .iter()
        .map(|g| g.translate(&a.neg()).unwrap())
        .collect();
    IdealPresentation::new(n, moved).unwrap()
}

fn random_polynomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u32, terms: usize) -> Polynomial {
    let terms: Vec<(Exponent, Rational)> = (0..rng.gen_range(1..=terms))
        .map(|_| {
            let e = Exponent::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
            (e, random_rational(rng))
        })
        .collect();
    Polynomial::from_terms(n, terms)
}

fn soundness_sweep() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut tight = 0;
    for case in 0..200 {
        let n = rng.gen_range(1..=3);
        let t = rng.gen_range(0..=4);
        let a = EvalPoint::new(
            (0..n)
                .map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
                .collect(),
        );
        let ideal = random_m_primary(&mut rng, n, t, &a);
        let cert = vanishing_staircase(&ideal, &a, 32).map_err(|e| format!("case {case}: {e}"))?;
        let report = local_length_at_point(&ideal, &a, &LocalLengthOptions::default())
            .map_err(|e| format!("case {case}: {e}"))?;
        let Colength::Finite(length) = report.value else {
            return Err(format!("case {case}: infinite length"));
        };
        ensure(cert.bound as u64 <= length, || {
            format!("case {case}: bound {} > length {length}", cert.bound)
        })?;
        tight += usize::from(cert.bound as u64 == length);
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "200 ideals, 0 violations, {tight} tight, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn tightness_family() -> Check {
    let start = Instant::now();
    for n in 1..=3usize {
        for eps in 0..=4u32 {
            let gens: Vec<Polynomial> = monomials_of_degree(n, eps + 1)
                .into_iter()
                .map(|e| Polynomial::monomial(e, q(1, 1)))
                .collect();
            let ideal = IdealPresentation::new(n, gens).unwrap();
            let origin = EvalPoint::origin(n);
            let bound = vanishing_staircase(&ideal, &origin, 32)
                .map_err(|e| e.to_string())?
                .bound as u64;
            let length = local_length_at_point(&ideal, &origin, &LocalLengthOptions::default())
                .map_err(|e| e.to_string())?
                .value;
            let expected = binomial(n as u64 + u64::from(eps), n as u64);
            ensure(
                bound == expected && length == Colength::Finite(expected),
                || format!("n={n} eps={eps}: bound {bound}, length {length}, expected {expected}"),
            )?;
            let volume = simplex_bound(
                &WeightVector::ones(n),
                &q(i64::from(eps), 1),
                &PrimeProfile::from_sigma(vec![0; n]),
            )
            .map_err(|e| e.to_string())?;
            let factorial: i64 = (1..=n as i64).product();
            let closed = q(i64::from(eps).pow(n as u32), factorial);
            ensure(volume == closed, || {
                format!("n={n} eps={eps}: volume {volume} != {closed}")
            })?;
        }
    }
    within(start.elapsed(), 10)?;
    Ok("15 cases: bound = length = C(n+eps, n), volume = eps^n/n!".into())
}

fn strictness_witness() -> Check {
    let ideal = IdealPresentation::parse(2, &["x2 - x1^2", "x2^2"]).unwrap();
    let origin = EvalPoint::origin(2);
    let cert = vanishing_staircase(&ideal, &origin, 32).map_err(|e| e.to_string())?;
    let length = local_length_at_point(&ideal, &origin, &LocalLengthOptions::default())
        .map_err(|e| e.to_string())?
        .value;
    let sigma: BTreeSet<Exponent> = cert
        .staircase
        .iter()
        .flat_map(|s| s.points().cloned())
        .collect();
    let expected: BTreeSet<Exponent> = [vec![0, 0], vec![1, 0]]
        .into_iter()
        .map(Exponent::new)
        .collect();
    ensure(
        sigma == expected && cert.bound == 2 && length == Colength::Finite(4),
        || format!("bound {}, length {length}", cert.bound),
    )?;
    Ok("bound 2 < length 4".into())
}

fn leibniz_suite() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for case in 0..200 {
        let n = rng.gen_range(1..=3);
        let f = random_polynomial(&mut rng, n, 4, 5);
        let g = random_polynomial(&mut rng, n, 4, 5);
        let gamma = Exponent::new((0..n).map(|_| rng.gen_range(0..=3)).collect());
        let lhs = (&f * &g).normalized_diff(&gamma).unwrap();
        let rhs = gamma
            .lower_box()
            .iter()
            .fold(Polynomial::zero(n), |acc, g1| {
                let g2 = gamma.checked_sub(g1).unwrap();
                &acc + &(&f.normalized_diff(g1).unwrap() * &g.normalized_diff(&g2).unwrap())
            });
        ensure(lhs == rhs, || format!("case {case}: {lhs} != {rhs}"))?;
    }
    within(start.elapsed(), 10)?;
    Ok("200 instances, exact term equality".into())
}

fn sandwich_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let mut built = 0;
    while built < 100 {
        let n = rng.gen_range(1..=4);
        let generators: Vec<Exponent> = (0..rng.gen_range(1..=4))
            .map(|_| Exponent::new((0..n).map(|_| rng.gen_range(0..=5)).collect()))
            .collect();
        let s = StaircaseSet::downward_closure(&generators, n).unwrap();
        if s.len() > 200 {
            continue;
        }
        built += 1;
        let corner = s.bounding_corner().add(&Exponent::new(vec![1; n]));
        for gamma in corner.lower_box() {
            let phi = RealPoint::from_exponent(&gamma);
            let inside = s.contains(&gamma);
            let delta = s.delta_contains(&phi).unwrap();
            let prime = s.delta_prime_contains(&phi).unwrap();
            ensure(delta == inside && prime == inside, || {
                format!(
                    "lattice identity fails at {gamma} for staircase of {} points",
                    s.len()
                )
            })?;
        }
        ensure(s.volume_delta() <= s.len(), || {
            "volume_delta exceeds #staircase".into()
        })?;
        for _ in 0..1000 {
            let phi = RealPoint::new(
                corner
                    .coords()
                    .iter()
                    .map(|&c| {
                        let den = rng.gen_range(1..=7);
                        q(rng.gen_range(0..=i64::from(c) * den), den)
                    })
                    .collect(),
            )
            .unwrap();
            if s.delta_contains(&phi).unwrap() {
                ensure(s.delta_prime_contains(&phi).unwrap(), || {
                    "delta point outside delta prime".into()
                })?;
            }
        }
    }
    Ok("100 staircases, lattice identities and containment hold".into())
}

fn grid_error_bound() -> Check {
    let start = Instant::now();
    let region = SimplexRegion {
        weights: WeightVector::ones(2),
        eps: q(1, 1),
    };
    let half = q(1, 2);
    for m in [10u64, 100, 1000] {
        let e =
            estimate_volume(&region, GridSpec::new(1, m).unwrap()).map_err(|e| e.to_string())?;
        ensure(e.brackets(&half), || {
            format!("m={m}: [{}, {}] misses 1/2", e.inner, e.outer)
        })?;
        ensure(e.gap() <= q(4, m as i64), || {
            format!("m={m}: gap {} > 4/m", e.gap())
        })?;
        if m == 10 {
            ensure(e.gap() == q(21, 100), || format!("m=10: gap {}", e.gap()))?;
        }
    }
    within(start.elapsed(), 5)?;
    Ok("m = 10, 100, 1000 bracket 1/2; gap(10) = 21/100".into())
}

fn groebner_cross_checks() -> Check {
    let lim = Limits::default();
    let square = IdealPresentation::parse(2, &["x1^2", "x1*x2", "x2^2"]).unwrap();
    let colength = square
        .groebner_basis(&MonomialOrder::grevlex(2), &lim)
        .map_err(|e| e.to_string())?
        .colength();
    ensure(colength == Colength::Finite(3), || {
        format!("colength {colength}")
    })?;

    let tangent = IdealPresentation::parse(2, &["x2 - x1^2", "x2^2"]).unwrap();
    let lex = tangent
        // Lex with x2 > x1, so that x2 - x1^2 leads with x2.
        .groebner_basis(
            &MonomialOrder::with_priority(OrderKind::Lex, vec![1, 0]).unwrap(),
            &lim,
        )
        .map_err(|e| e.to_string())?;
    let expected = vec![
        parse_polynomial("x1^4", 2).unwrap(),
        parse_polynomial("x2 - x1^2", 2).unwrap(),
    ];
    ensure(lex.elements() == expected.as_slice(), || {
        format!("lex basis {:?}", lex.elements())
    })?;
    ensure(lex.colength() == Colength::Finite(4), || {
        format!("lex colength {}", lex.colength())
    })?;

    let two_points = IdealPresentation::parse(2, &["x1^2 - x1", "x2"]).unwrap();
    let report = local_length_at_point(
        &two_points,
        &EvalPoint::origin(2),
        &LocalLengthOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        report.value == Colength::Finite(1) && report.trace == vec![(1, 1), (2, 1), (3, 1)],
        || format!("local length {} trace {:?}", report.value, report.trace),
    )?;
    Ok("colength 3; lex basis {x2 - x1^2, x1^4}, colength 4; local length 1".into())
}

fn upsilon_computation() -> Check {
    let lim = Limits::default();
    let cases = [
        (vec!["x2 - x1^2"], vec![1usize], 1usize),
        (vec!["x1", "x2"], vec![1, 2], 2),
    ];
    for (gens, upsilon, s) in cases {
        let prime = IdealPresentation::parse(2, &gens).unwrap();
        let profile = upsilon_set(&prime, &lim).map_err(|e| e.to_string())?;
        let got: Vec<usize> = profile.upsilon.indices().map(|i| i + 1).collect();
        let krull = prime
            .groebner_basis(&MonomialOrder::grevlex(2), &lim)
            .and_then(|g| g.krull_dimension())
            .map_err(|e| e.to_string())?;
        let sum: usize = profile.sigma.iter().map(|&x| usize::from(x)).sum();
        ensure(got == upsilon && profile.s == s && sum == krull, || {
            format!(
                "{gens:?}: upsilon {got:?}, s {}, sum sigma {sum}, Krull {krull}",
                profile.s
            )
        })?;
    }
    Ok("(x2 - x1^2): upsilon {1}, s 1; (x1, x2): s 2; sum sigma = Krull dimension".into())
}

fn determinism() -> Check {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let file = |name: &str| data.join(name).display().to_string();
    let commands: Vec<Vec<String>> = vec![
        vec![
            "bound".into(),
            "--ideal".into(),
            file("square.json"),
            "--point".into(),
            "0,0".into(),
            "--verify".into(),
        ],
        vec![
            "bound".into(),
            "--ideal".into(),
            file("parabola_tangent.json"),
            "--point".into(),
            "0,0".into(),
            "--verify".into(),
            "--prime".into(),
            file("origin.json"),
        ],
        vec![
            "volume".into(),
            "--region".into(),
            file("triangle.json"),
            "--N".into(),
            "1".into(),
            "--m".into(),
            "100".into(),
            "--render".into(),
            "decimal:6".into(),
        ],
        vec![
            "volume".into(),
            "--region".into(),
            file("triangle.json"),
            "--N".into(),
            "1".into(),
            "--tol".into(),
            "1/100".into(),
        ],
        vec![
            "length".into(),
            "--ideal".into(),
            file("two_points.json"),
            "--point".into(),
            "0,0".into(),
        ],
        vec![
            "chain".into(),
            "--ideal".into(),
            file("square.json"),
            "--staircase".into(),
            file("first_order.json"),
        ],
        vec![
            "profile".into(),
            "--prime".into(),
            file("origin.json"),
            "--d".into(),
            "2,3".into(),
            "--eps".into(),
            "1".into(),
        ],
        vec![
            "simplex".into(),
            "--d".into(),
            "2,3".into(),
            "--eps".into(),
            "3/2".into(),
            "--sigma".into(),
            "0,1".into(),
        ],
    ];
    let exe = env!("CARGO_BIN_EXE_multbound");
    for args in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "2", "0"] {
            let out = Command::new(exe)
                .args(args)
                .args(["--threads", threads])
                .output()
                .map_err(|e| e.to_string())?;
            ensure(out.status.success(), || {
                format!(
                    "`{}` failed: {}",
                    args.join(" "),
                    String::from_utf8_lossy(&out.stderr)
                )
            })?;
            outputs.push(out.stdout);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
            format!("`{}` output differs between runs", args.join(" "))
        })?;
        serde_json::from_slice::<serde_json::Value>(&outputs[0])
            .map_err(|e| format!("invalid JSON: {e}"))?;
    }
    Ok(format!(
        "{} commands x 3 runs byte-identical",
        commands.len()
    ))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 9] = [
        ("soundness sweep", soundness_sweep),
        ("tightness family", tightness_family),
        ("strictness witness", strictness_witness),
        ("Leibniz property", leibniz_suite),
        ("sandwich suite", sandwich_suite),
        ("grid error bound", grid_error_bound),
        ("Groebner oracle cross-checks", groebner_cross_checks),
        ("upsilon computation", upsilon_computation),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL  {}. {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
