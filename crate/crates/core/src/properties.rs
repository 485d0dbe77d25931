//! Randomized algebraic checks of the series layer, reproducible from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{rational, Rational};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Equal on every coefficient both sides determine.
pub fn agree(a: &Series<Rational>, b: &Series<Rational>) -> bool {
    let t = a.trunc_order().min(b.trunc_order());
    a.truncate(t) == b.truncate(t)
}

pub fn random_series(rng: &mut impl Rng, start: i64, len: usize, trunc: i64) -> Series<Rational> {
    let coeffs = (0..len)
        .map(|_| rational(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    Series::new(start, coeffs, trunc)
}

fn random_unit_linear(rng: &mut impl Rng, trunc: i64) -> Series<Rational> {
    let mut a = random_series(rng, 1, (trunc - 1) as usize, trunc);
    if a.coeff(1).map_or(true, |c| c == rational(0, 1)) {
        a = &a + &Series::monomial(rational(rng.gen_range(1..=3), 1), 1, trunc);
    }
    a
}

/// Runs every property on `cases` random inputs drawn from `seed`.
pub fn series_properties(seed: u64, cases: usize) -> Vec<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut run = |name: &'static str, rng: &mut ChaCha8Rng, f: &dyn Fn(&mut ChaCha8Rng) -> bool| {
        let failures = (0..cases).filter(|_| !f(rng)).count();
        out.push(PropertyOutcome {
            name,
            cases,
            failures,
        });
    };

    run("add commutative", &mut rng, &|r| {
        let a = random_series(r, -2, 6, 5);
        let b = random_series(r, 0, 7, 7);
        &a + &b == &b + &a
    });
    run("mul commutative", &mut rng, &|r| {
        let a = random_series(r, -1, 6, 6);
        let b = random_series(r, 1, 5, 7);
        &a * &b == &b * &a
    });
    run("mul associative", &mut rng, &|r| {
        let a = random_series(r, -1, 5, 6);
        let b = random_series(r, 0, 5, 6);
        let c = random_series(r, 2, 4, 8);
        &(&a * &b) * &c == &a * &(&b * &c)
    });
    run("distributive", &mut rng, &|r| {
        let a = random_series(r, -2, 6, 5);
        let b = random_series(r, 0, 6, 6);
        let c = random_series(r, 1, 6, 7);
        &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
    });
    run("compose with reversion is identity", &mut rng, &|r| {
        let a = random_unit_linear(r, 8);
        let b = a.reversion().expect("unit linear term");
        let id = a.compose(&b).expect("valuation one");
        agree(&id, &Series::variable(i64::MAX))
    });
    run("reversion is an involution", &mut rng, &|r| {
        let a = random_unit_linear(r, 8);
        let back = a.reversion().and_then(|b| b.reversion()).expect("unit linear term");
        agree(&back, &a)
    });
    run("exp inverts log1p", &mut rng, &|r| {
        let a = random_series(r, 1, 7, 8);
        let round = a.log1p().and_then(|l| l.exp()).expect("positive valuation");
        agree(&round, &(&Series::one(i64::MAX) + &a))
    });
    run("log1p inverts exp", &mut rng, &|r| {
        let a = random_series(r, 1, 7, 8);
        let round = a
            .exp()
            .and_then(|e| (&e - &Series::one(i64::MAX)).log1p())
            .expect("positive valuation");
        agree(&round, &a)
    });
    run("derivative has no residue", &mut rng, &|r| {
        let a = random_series(r, -4, 9, 5);
        a.derivative().residue() == Ok(rational(0, 1))
    });
    run("deterministic", &mut rng, &|r| {
        let a = random_unit_linear(r, 7);
        a.reversion() == a.reversion() && a.exp() == a.exp()
    });
    out
}
