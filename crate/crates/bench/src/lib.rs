//! Workloads shared by the benchmarks.

use multbound_core::{IdealPresentation, Polynomial, Rational};

/// Cyclic-n roots: the elementary symmetric-style system
/// `Σ x_i, Σ x_i x_{i+1}, …, x_1 ⋯ x_n - 1`.
pub fn cyclic(n: usize) -> IdealPresentation {
    let mut gens = Vec::with_capacity(n);
    for k in 1..n {
        let mut sum = Polynomial::zero(n);
        for start in 0..n {
            let term = (0..k).fold(Polynomial::one(n), |acc, j| {
                &acc * &Polynomial::var(n, (start + j) % n)
            });
            sum = &sum + &term;
        }
        gens.push(sum);
    }
    let product = (0..n).fold(Polynomial::one(n), |acc, i| &acc * &Polynomial::var(n, i));
    gens.push(&product - &Polynomial::one(n));
    IdealPresentation::new(n, gens).expect("same ring")
}

/// `m^{d}` at the origin of `Q[x_1..x_n]`, given by all degree-`d` monomials.
pub fn power_of_maximal(n: usize, d: u32) -> IdealPresentation {
    let mut gens = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), d)];
    while let Some((prefix, left)) = stack.pop() {
        if prefix.len() + 1 == n {
            let mut e = prefix.clone();
            e.push(left);
            gens.push(Polynomial::monomial(
                multbound_core::Exponent::new(e),
                Rational::from_integer(1.into()),
            ));
            continue;
        }
        for k in 0..=left {
            let mut p = prefix.clone();
            p.push(k);
            stack.push((p, left - k));
        }
    }
    IdealPresentation::new(n, gens).expect("same ring")
}
