//! Buchberger's algorithm over `Q` with the normal selection strategy.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::order::MonomialOrder;
use super::{GroebnerError, Limits};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::staircase::Exponent;

/// Polynomial with terms sorted ascending under a fixed order; the leading
/// term is the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    pub(crate) terms: Vec<(Exponent, Rational)>,
}

impl SortedPoly {
    pub(crate) fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SortedPoly { terms }
    }

    pub(crate) fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn leading(&self) -> &Exponent {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn leading_coeff(&self) -> &Rational {
        &self.terms.last().expect("nonzero polynomial").1
    }

    pub(crate) fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = self.leading_coeff().recip();
        if inv.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c *= &inv;
        }
    }

    /// `self - c · X^shift · other`, merging two ascending term lists.
    fn sub_scaled(
        &self,
        other: &SortedPoly,
        shift: &Exponent,
        c: &Rational,
        order: &MonomialOrder,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(e, v)| (e.add(shift), v * c))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (e, v) = b.next().unwrap();
                    out.push((e, -v));
                }
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (e, v) = b.next().unwrap();
                        out.push((e, -v));
                    }
                    Ordering::Equal => {
                        let (e, v) = b.next().unwrap();
                        let (_, u) = a.next().unwrap();
                        let diff = u - v;
                        if !diff.is_zero() {
                            out.push((e, diff));
                        }
                    }
                },
            }
        }
        SortedPoly { terms: out }
    }
}

/// Fully reduces `f` modulo monic `basis`. The remainder has no term
/// divisible by any leading monomial of `basis`.
pub(crate) fn reduce(
    f: &SortedPoly,
    basis: &[SortedPoly],
    skip: Option<usize>,
    order: &MonomialOrder,
) -> SortedPoly {
    let mut p = f.clone();
    // Remainder terms are produced in descending order.
    let mut remainder: Vec<(Exponent, Rational)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last().cloned() {
        let divisor = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, g)| g)
            .find(|g| g.leading().le(&lm));
        match divisor {
            Some(g) => {
                let shift = lm.checked_sub(g.leading()).expect("divisible");
                p = p.sub_scaled(g, &shift, &lc, order);
            }
            None => {
                p.terms.pop();
                remainder.push((lm, lc));
            }
        }
    }
    remainder.reverse();
    SortedPoly { terms: remainder }
}

fn s_polynomial(f: &SortedPoly, g: &SortedPoly, order: &MonomialOrder) -> SortedPoly {
    let lcm = f.leading().lcm(g.leading());
    let sf = lcm.checked_sub(f.leading()).unwrap();
    let sg = lcm.checked_sub(g.leading()).unwrap();
    let zero = SortedPoly { terms: vec![] };
    let lifted_f = zero.sub_scaled(f, &sf, &-Rational::one(), order);
    lifted_f.sub_scaled(g, &sg, &Rational::one(), order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
}

fn select_pair(pairs: &[Pair], order: &MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let ord = a
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| order.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Runs Buchberger's algorithm and returns the reduced basis, sorted
/// ascending by leading monomial.
pub(crate) fn buchberger(
    generators: &[Polynomial],
    nvars: usize,
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<SortedPoly>, GroebnerError> {
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut steps = 0usize;

    let mut seeds: Vec<SortedPoly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, order))
        .collect();
    // Process low leading monomials first so early reducers are small.
    seeds.sort_by(|a, b| order.cmp(a.leading(), b.leading()));

    let partial = |basis: &[SortedPoly]| basis.iter().map(|g| g.to_poly(nvars)).collect::<Vec<_>>();

    let add = |mut h: SortedPoly,
               basis: &mut Vec<SortedPoly>,
               pairs: &mut Vec<Pair>,
               pending: &mut BTreeSet<(usize, usize)>| {
        h.make_monic();
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading().lcm(h.leading());
            pairs.push(Pair { i, j, lcm });
            pending.insert((i, j));
        }
        basis.push(h);
    };

    for seed in seeds {
        let h = reduce(&seed, &basis, None, order);
        if h.is_zero() {
            continue;
        }
        if h.leading().is_zero() {
            return Ok(vec![unit(nvars)]);
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    while !pairs.is_empty() {
        let pick = select_pair(&pairs, order);
        let pair = pairs.swap_remove(pick);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi.leading().is_coprime(fj.leading()) {
            continue;
        }
        // Chain criterion: some other leading monomial divides the lcm and
        // both connecting pairs were already treated.
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading().le(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        steps += 1;
        if steps > limits.max_steps {
            return Err(GroebnerError::LimitExceeded {
                reason: format!("more than {} S-polynomial reductions", limits.max_steps),
                partial: partial(&basis),
            });
        }
        let s = s_polynomial(fi, fj, order);
        let h = reduce(&s, &basis, None, order);
        if h.is_zero() {
            continue;
        }
        if h.leading().is_zero() {
            return Ok(vec![unit(nvars)]);
        }
        let degree = h.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
        if degree > limits.max_degree {
            return Err(GroebnerError::LimitExceeded {
                reason: format!(
                    "basis element of degree {degree} exceeds cap {}",
                    limits.max_degree
                ),
                partial: partial(&basis),
            });
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    Ok(interreduce(basis, order))
}

fn unit(nvars: usize) -> SortedPoly {
    SortedPoly {
        terms: vec![(Exponent::zero(nvars), Rational::one())],
    }
}

/// Minimalizes, tail-reduces and normalizes a Gröbner basis.
fn interreduce(basis: Vec<SortedPoly>, order: &MonomialOrder) -> Vec<SortedPoly> {
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, other)| {
            k != i && other.leading().le(g.leading()) && (other.leading() != g.leading() || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<SortedPoly> = (0..minimal.len())
        .map(|i| {
            let mut r = reduce(&minimal[i], &minimal, Some(i), order);
            r.make_monic();
            r
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(a.leading(), b.leading()));
    reduced
}
