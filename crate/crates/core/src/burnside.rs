//! Character-theoretic ground truth for simple Hurwitz numbers.
//!
//! Disconnected cover counts come from Burnside's character sum. They are
//! assembled into the graded generating function `Z` in the power sums `p_μ`
//! and the genus parameter `g_s`; the connected numbers are read off its
//! degree-graded logarithm `F = ln Z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partitions::{class_size, dim_irrep, f_c2_content, partitions_of, CharacterTable, Partition};
use crate::scalar::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("|μ| = {size} exceeds the configured degree bound {n_max}")]
    DegreeOutOfRange { size: u32, n_max: u32 },
    #[error("genus {g} exceeds the configured genus bound {g_max}")]
    GenusOutOfRange { g: u32, g_max: u32 },
    #[error("number of simple branch points would be negative for g = {g}, μ = {mu}")]
    NegativeBranchPoints { g: u32, mu: Partition },
}

/// Number of simple branch points `b = 2g − 2 + |μ| + ℓ(μ)` (Riemann–Hurwitz).
pub fn branch_points(g: u32, mu: &Partition) -> i64 {
    2 * i64::from(g) - 2 + i64::from(mu.size()) + mu.len() as i64
}

/// `Cov*(μ, b) = Σ_{|λ|=n} (dim λ / n!)² f_λ(C_μ) f_λ(C_2)^b`.
pub fn cov_disconnected(mu: &Partition, b: u32) -> Rational {
    let table = CharacterTable::new(mu.size());
    cov_with_table(&table, mu, b)
}

pub(crate) fn cov_with_table(table: &CharacterTable, mu: &Partition, b: u32) -> Rational {
    let n = mu.size();
    let n_fact = factorial(u64::from(n));
    let class = Rational::from_integer(class_size(mu));
    let mut total = Rational::zero();
    for lambda in table.partitions() {
        let dim = Rational::from_integer(dim_irrep(lambda, lambda.len()).expect("valid length"));
        let chi = table.get(lambda, mu).expect("table covers all classes");
        if chi == 0 {
            continue;
        }
        let f_mu = class.clone() * Rational::from_integer(BigInt::from(chi)) / dim.clone();
        let f_2 = f_c2_content(lambda);
        let weight = (dim / n_fact.clone()).pow(2);
        total += weight * f_mu * f_2.pow(b as i32);
    }
    total
}

/// Key of one monomial `p_μ g_s^e`.
pub type Monomial = (Partition, i64);

/// Degree-graded series in the power sums `p_μ` and `g_s`: entry `n` holds the
/// coefficient of `t^n` as a map from monomials to rationals.
///
/// Terms of degree `n` whose `g_s` exponent exceeds
/// `2·g_max − 2 + 2·(n_max − n)` are dropped: multiplied by anything of total
/// degree at most `n_max` they can never reach exponent `2·g_max − 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PSeriesZ {
    n_max: u32,
    g_max: u32,
    grades: Vec<BTreeMap<Monomial, Rational>>,
}

impl PSeriesZ {
    fn empty(n_max: u32, g_max: u32) -> Self {
        Self {
            n_max,
            g_max,
            grades: vec![BTreeMap::new(); n_max as usize + 1],
        }
    }

    fn exponent_cap(&self, degree: u32) -> i64 {
        2 * i64::from(self.g_max) - 2 + 2 * i64::from(self.n_max - degree)
    }

    /// The disconnected generating function `Z` from Burnside counts.
    pub fn generating_function(n_max: u32, g_max: u32) -> Self {
        let mut z = Self::empty(n_max, g_max);
        z.grades[0].insert((Partition::empty(), 0), Rational::one());
        for n in 1..=n_max {
            let table = CharacterTable::new(n);
            let cap = z.exponent_cap(n);
            for mu in partitions_of(n) {
                let offset = i64::from(n) + mu.len() as i64;
                let b_max = cap + offset;
                for b in 0..=b_max {
                    let value = cov_with_table(&table, &mu, b as u32);
                    if value.is_zero() {
                        continue;
                    }
                    let coeff = value / factorial(b as u64);
                    z.grades[n as usize].insert((mu.clone(), b - offset), coeff);
                }
            }
        }
        z
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn grade(&self, n: u32) -> &BTreeMap<Monomial, Rational> {
        &self.grades[n as usize]
    }

    pub fn coeff(&self, mu: &Partition, gs_exp: i64) -> Rational {
        self.grades
            .get(mu.size() as usize)
            .and_then(|g| g.get(&(mu.clone(), gs_exp)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (dst, src) in self.grades.iter_mut().zip(&other.grades) {
            for (k, v) in src {
                let e = dst.entry(k.clone()).or_insert_with(Rational::zero);
                *e += v * c;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.n_max, self.g_max);
        for (i, a) in self.grades.iter().enumerate() {
            for (j, b) in other.grades.iter().enumerate().take(self.n_max as usize + 1 - i) {
                let degree = (i + j) as u32;
                let cap = out.exponent_cap(degree);
                for ((mu, e1), c1) in a {
                    for ((nu, e2), c2) in b {
                        if e1 + e2 > cap {
                            continue;
                        }
                        let key = (mu.union(nu), e1 + e2);
                        let slot = out.grades[degree as usize]
                            .entry(key)
                            .or_insert_with(Rational::zero);
                        *slot += c1 * c2;
                    }
                }
            }
        }
        for g in &mut out.grades {
            g.retain(|_, v| !v.is_zero());
        }
        out
    }

    fn without_constant(&self) -> (Rational, Self) {
        let mut rest = self.clone();
        let c = rest.grades[0]
            .remove(&(Partition::empty(), 0))
            .unwrap_or_else(Rational::zero);
        (c, rest)
    }

    /// `ln` in the degree grading; requires constant term 1.
    pub fn log(&self) -> Self {
        let (c, a) = self.without_constant();
        assert!(c.is_one(), "log needs constant term 1");
        let mut out = Self::empty(self.n_max, self.g_max);
        let mut power = a.clone();
        for j in 1..=self.n_max {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&power, &Rational::new(BigInt::from(sign), BigInt::from(j)));
            power = power.mul(&a);
        }
        out
    }

    /// `exp` in the degree grading; requires vanishing constant term.
    pub fn exp(&self) -> Self {
        let (c, a) = self.without_constant();
        assert!(c.is_zero(), "exp needs a vanishing constant term");
        let mut out = Self::empty(self.n_max, self.g_max);
        out.grades[0].insert((Partition::empty(), 0), Rational::one());
        let mut power = a.clone();
        let mut inv_fact = Rational::one();
        for j in 1..=self.n_max {
            inv_fact /= Rational::from_integer(BigInt::from(j));
            out.add_scaled(&power, &inv_fact);
            power = power.mul(&a);
        }
        out
    }
}

/// Connected simple Hurwitz numbers from `F = ln Z`.
#[derive(Debug, Clone)]
pub struct HurwitzOracle {
    z: PSeriesZ,
    f: PSeriesZ,
}

impl HurwitzOracle {
    pub fn new(n_max: u32, g_max: u32) -> Self {
        let z = PSeriesZ::generating_function(n_max, g_max);
        let f = z.log();
        Self { z, f }
    }

    pub fn z(&self) -> &PSeriesZ {
        &self.z
    }

    pub fn f(&self) -> &PSeriesZ {
        &self.f
    }

    /// `H_{g,μ} = b! · [t^{|μ|} g_s^{2g−2} p_μ] F`.
    pub fn hurwitz_connected(&self, g: u32, mu: &Partition) -> Result<Rational, OracleError> {
        if mu.size() > self.f.n_max {
            return Err(OracleError::DegreeOutOfRange {
                size: mu.size(),
                n_max: self.f.n_max,
            });
        }
        if g > self.f.g_max {
            return Err(OracleError::GenusOutOfRange {
                g,
                g_max: self.f.g_max,
            });
        }
        let b = branch_points(g, mu);
        if b < 0 {
            return Err(OracleError::NegativeBranchPoints { g, mu: mu.clone() });
        }
        let c = self.f.coeff(mu, 2 * i64::from(g) - 2);
        Ok(c * factorial(b as u64))
    }
}

/// One-shot convenience wrapper around [`HurwitzOracle`].
pub fn hurwitz_connected(g: u32, mu: &Partition) -> Result<Rational, OracleError> {
    HurwitzOracle::new(mu.size().max(1), g).hurwitz_connected(g, mu)
}
