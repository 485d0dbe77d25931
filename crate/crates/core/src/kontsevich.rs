//! The Lambert curve near its branch point, rewritten in the coordinate
//! `ξ` with `x = −1 − ξ²/2`: Kontsevich times, the `f`/`g` series, and
//! internal consistency checks of the ELSV formula against the oracle.

use serde::{Deserialize, Serialize};

use crate::burnside::{HurwitzOracle, OracleError};
use crate::partitions::{partitions_of, Partition};
use crate::scalar::{factorial, format_rational, Rational, Scalar};
use crate::series::{Series, SeriesError, EXACT};

/// `t_2, t_3, …, t_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimesSequence<T = Rational> {
    values: Vec<T>,
}

impl<T: Scalar> TimesSequence<T> {
    pub fn from_values(values: Vec<T>) -> Self {
        Self { values }
    }

    /// `t_m`, or `None` outside `2..=t_max`.
    pub fn get(&self, m: usize) -> Option<&T> {
        m.checked_sub(2).and_then(|i| self.values.get(i))
    }

    pub fn t_max(&self) -> usize {
        self.values.len() + 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &T)> {
        self.values.iter().enumerate().map(|(i, t)| (i + 2, t))
    }
}

impl TimesSequence<Rational> {
    /// Two columns, `m` and `t_m` as `num/den`.
    pub fn to_table(&self) -> String {
        let mut out = String::from("m\tt_m\n");
        for (m, t) in self.iter() {
            out.push_str(&format!("{m}\t{}\n", format_rational(t)));
        }
        out
    }
}

/// `ζ(ξ)` with `½ξ² = ζ − ln(1 + ζ)`, the branch with `ζ = ξ + O(ξ²)`.
pub fn zeta_of_xi<T: Scalar>(order: i64) -> Result<Series<T>, SeriesError> {
    let zeta = Series::<T>::variable(order + 2);
    let half_xi_sq = &zeta - &zeta.log1p()?;
    // ξ = ζ √(2(ζ − ln(1+ζ))/ζ²)
    let xi = half_xi_sq
        .shift(-2)
        .scale(&T::from_int(2))
        .sqrt_unit()?
        .shift(1);
    Ok(xi.reversion()?.truncate(order + 1))
}

/// `y = 1 + ζ(ξ)` through `ξ^order`.
pub fn y_of_xi<T: Scalar>(order: i64) -> Result<Series<T>, SeriesError> {
    Ok(&Series::one(EXACT) + &zeta_of_xi::<T>(order)?)
}

/// Reads `y = 1 − 2ξ + Σ_{m≥1} t_{m+2} ξ^m` off the curve, `t_2 = 0`.
pub fn times_from_curve<T: Scalar>(t_max: usize) -> Result<TimesSequence<T>, SeriesError> {
    let y = y_of_xi::<T>(t_max as i64 - 2)?;
    let mut values = vec![T::zero()];
    for m in 1..=t_max as i64 - 2 {
        let c = y.coeff(m)?;
        values.push(if m == 1 { c + T::from_int(2) } else { c });
    }
    Ok(TimesSequence { values })
}

/// `t_{m+1} = t_m/m − ½ Σ_{l=2}^{m−2} t_{l+2} t_{m+2−l}` from
/// `t_2 = 0, t_3 = 3, t_4 = 1/3`.
pub fn times_by_recursion<T: Scalar>(t_max: usize) -> TimesSequence<T> {
    let mut t: Vec<T> = vec![T::zero(), T::zero(), T::zero(), T::from_int(3), T::ratio(1, 3)];
    for m in 4..t_max {
        let mut sum = T::zero();
        for l in 2..=m - 2 {
            sum = sum + t[l + 2].clone() * t[m + 2 - l].clone();
        }
        let next = t[m].clone() / T::from_int(m as i64) - sum / T::from_int(2);
        t.push(next);
    }
    t.truncate(t_max + 1);
    TimesSequence {
        values: t.split_off(2),
    }
}

/// `f(z) = Σ_{m≥1} (2m+1)!/m! · t_{2m+3}/(2 − t_3) · z^m` through `z^order`.
pub fn f_series(times: &TimesSequence<Rational>, order: usize) -> Series<Rational> {
    let t3 = times.get(3).cloned().unwrap_or_default();
    let denom = Rational::from_integer(2.into()) - t3;
    Series::from_fn(0, order as i64 + 1, |m| {
        if m == 0 {
            return Rational::default();
        }
        let m = m as u64;
        let t = times.get(2 * m as usize + 3).cloned().unwrap_or_default();
        factorial(2 * m + 1) / factorial(m) * t / denom.clone()
    })
}

/// `g(z) = −ln(1 − f(z))` through `z^order`.
pub fn g_series(order: usize) -> Result<Series<Rational>, SeriesError> {
    let times = times_by_recursion(2 * order + 3);
    (-&f_series(&times, order)).log1p().map(|s| -&s)
}

/// One family of ELSV instances sharing `(g, ℓ)`: the Hodge integral is
/// linear in a few unknown intersection numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ElsvFamily {
    pub name: String,
    pub g: u32,
    pub ell: usize,
    pub unknowns: Vec<(String, Rational)>,
    pub solved_from: Vec<Partition>,
    pub rows: Vec<ElsvRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElsvRow {
    pub g: u32,
    pub mu: Partition,
    pub elsv: Rational,
    pub oracle: Rational,
}

impl ElsvRow {
    pub fn equal(&self) -> bool {
        self.elsv == self.oracle
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ElsvReport {
    pub families: Vec<ElsvFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElsvRowJson {
    pub g: u32,
    pub mu: Vec<u32>,
    pub elsv: String,
    pub oracle: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElsvUnknownJson {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElsvFamilyJson {
    pub family: String,
    pub unknowns: Vec<ElsvUnknownJson>,
    pub solved_from: Vec<Vec<u32>>,
    pub rows: Vec<ElsvRowJson>,
}

impl ElsvReport {
    pub fn all_equal(&self) -> bool {
        self.families
            .iter()
            .all(|f| f.rows.iter().all(ElsvRow::equal))
    }

    pub fn prediction_count(&self) -> usize {
        self.families.iter().map(|f| f.rows.len()).sum()
    }

    pub fn family(&self, name: &str) -> Option<&ElsvFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> Vec<ElsvFamilyJson> {
        self.families
            .iter()
            .map(|f| ElsvFamilyJson {
                family: f.name.clone(),
                unknowns: f
                    .unknowns
                    .iter()
                    .map(|(n, v)| ElsvUnknownJson {
                        name: n.clone(),
                        value: format_rational(v),
                    })
                    .collect(),
                solved_from: f.solved_from.iter().map(|p| p.parts().to_vec()).collect(),
                rows: f
                    .rows
                    .iter()
                    .map(|r| ElsvRowJson {
                        g: r.g,
                        mu: r.mu.parts().to_vec(),
                        elsv: format_rational(&r.elsv),
                        oracle: format_rational(&r.oracle),
                        equal: r.equal(),
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.families {
            out.push_str(&format!("{}\n", f.name));
            for (n, v) in &f.unknowns {
                out.push_str(&format!("  {n} = {}\n", format_rational(v)));
            }
            for r in &f.rows {
                out.push_str(&format!(
                    "  g={} mu={} elsv={} oracle={} equal={}\n",
                    r.g,
                    r.mu,
                    format_rational(&r.elsv),
                    format_rational(&r.oracle),
                    r.equal()
                ));
            }
        }
        out
    }
}

/// `(2g − 2 + |μ| + ℓ)! / |Aut μ| · Π μ_i^{μ_i}/μ_i!`.
fn elsv_prefactor(g: u32, mu: &Partition) -> Rational {
    let b = (2 * i64::from(g) - 2 + i64::from(mu.size()) + mu.len() as i64) as u64;
    let mut acc = factorial(b) / Rational::from_integer(mu.automorphisms().into());
    for &m in mu.parts() {
        acc = acc * Rational::from_integer(num_bigint::BigInt::from(m).pow(m)) / factorial(u64::from(m));
    }
    acc
}

type AnsatzCoeffs = Box<dyn Fn(&Partition) -> Vec<Rational>>;

struct Ansatz {
    name: String,
    g: u32,
    ell: usize,
    unknowns: Vec<String>,
    /// coefficients of the unknowns in `∫ Λ^∨(1) / Π(1 − μ_i ψ_i)`
    coeffs: AnsatzCoeffs,
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ansatze(g_max: u32) -> Vec<Ansatz> {
    let mut out = vec![
        // ∫_{M_{0,1}} 1/(1 − dψ) continued as d^{−2}⟨τ_{−2}⟩
        Ansatz {
            name: "g0_l1".into(),
            g: 0,
            ell: 1,
            unknowns: vec!["<tau_-2>_0".into()],
            coeffs: Box::new(|mu| {
                let d = q(i64::from(mu.parts()[0]));
                vec![q(1) / (d.clone() * d)]
            }),
        },
        // ∫_{M_{0,2}} 1/((1 − μ₁ψ₁)(1 − μ₂ψ₂)) continued as X/(μ₁ + μ₂)
        Ansatz {
            name: "g0_l2".into(),
            g: 0,
            ell: 2,
            unknowns: vec!["X_0,2".into()],
            coeffs: Box::new(|mu| vec![q(1) / q(i64::from(mu.size()))]),
        },
        Ansatz {
            name: "g0_l3".into(),
            g: 0,
            ell: 3,
            unknowns: vec!["<tau_0^3>_0".into()],
            coeffs: Box::new(|_| vec![q(1)]),
        },
    ];
    if g_max >= 1 {
        // degree-2 part of (1 − λ₁)/((1 − μ₁ψ₁)(1 − μ₂ψ₂)) on M_{1,2}
        out.push(Ansatz {
            name: "g1_l2".into(),
            g: 1,
            ell: 2,
            unknowns: vec![
                "<tau_2 tau_0>_1".into(),
                "<tau_1 tau_1>_1".into(),
                "<lambda_1 tau_1>_1,2".into(),
            ],
            coeffs: Box::new(|mu| {
                let a = q(i64::from(mu.parts()[0]));
                let b = q(i64::from(mu.parts()[1]));
                vec![
                    a.clone() * a.clone() + b.clone() * b.clone(),
                    a.clone() * b.clone(),
                    -(a + b),
                ]
            }),
        });
    }
    // ∫_{M_{g,1}} Λ^∨(1)/(1 − dψ) = Σ_i (−1)^i d^{3g−2−i} ⟨λ_i τ_{3g−2−i}⟩
    for g in 1..=g_max {
        let unknowns = (0..=g)
            .map(|i| format!("<lambda_{i} tau_{}>_{g}", 3 * g - 2 - i))
            .collect();
        out.push(Ansatz {
            name: format!("g{g}_l1"),
            g,
            ell: 1,
            unknowns,
            coeffs: Box::new(move |mu| {
                let d = i64::from(mu.parts()[0]);
                (0..=g)
                    .map(|i| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        q(sign * d.pow(3 * g - 2 - i))
                    })
                    .collect()
            }),
        });
    }
    out
}

/// Solves `rows · u = rhs` exactly, choosing the first rows that raise the
/// rank. Returns the solution and the indices used, or `None` if the system
/// never reaches full rank.
fn solve_greedy(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<(Vec<Rational>, Vec<usize>)> {
    let n = rows.first()?.len();
    let mut basis: Vec<(Vec<Rational>, Rational, usize)> = Vec::new();
    let mut used = Vec::new();
    for (idx, (row, r)) in rows.iter().zip(rhs).enumerate() {
        // reduce against pivots
        let mut v = row.clone();
        let mut b = r.clone();
        for (pivot_row, pivot_rhs, p) in &basis {
            if v[*p] != Rational::default() {
                let f = v[*p].clone() / pivot_row[*p].clone();
                for (x, y) in v.iter_mut().zip(pivot_row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
                b -= f * pivot_rhs.clone();
            }
        }
        if let Some(p) = v.iter().position(|x| *x != Rational::default()) {
            // eliminate the new pivot from older rows
            for (old_row, old_rhs, _) in basis.iter_mut() {
                if old_row[p] != Rational::default() {
                    let f = old_row[p].clone() / v[p].clone();
                    for (x, y) in old_row.iter_mut().zip(&v) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                    *old_rhs = old_rhs.clone() - f * b.clone();
                }
            }
            basis.push((v, b, p));
            used.push(idx);
            if basis.len() == n {
                let mut u = vec![Rational::default(); n];
                for (row, rhs, p) in &basis {
                    u[*p] = rhs.clone() / row[*p].clone();
                }
                return Some((u, used));
            }
        }
    }
    None
}

/// Solves each family's unknowns from the smallest admissible `μ` with the
/// oracle, then predicts every remaining `μ` with `|μ| <= n_max`.
pub fn elsv_consistency(g_max: u32, n_max: u32) -> Result<ElsvReport, OracleError> {
    let oracle = HurwitzOracle::new(n_max, g_max);
    let mut report = ElsvReport::default();
    for ansatz in ansatze(g_max) {
        let cases: Vec<Partition> = (1..=n_max)
            .flat_map(partitions_of)
            .filter(|p| p.len() == ansatz.ell)
            .collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for mu in &cases {
            let h = oracle.hurwitz_connected(ansatz.g, mu)?;
            rows.push((ansatz.coeffs)(mu));
            rhs.push(h / elsv_prefactor(ansatz.g, mu));
        }
        let Some((u, used)) = solve_greedy(&rows, &rhs) else {
            continue;
        };
        let mut family = ElsvFamily {
            name: ansatz.name.clone(),
            g: ansatz.g,
            ell: ansatz.ell,
            unknowns: ansatz.unknowns.iter().cloned().zip(u.iter().cloned()).collect(),
            solved_from: used.iter().map(|&i| cases[i].clone()).collect(),
            rows: Vec::new(),
        };
        for (i, mu) in cases.iter().enumerate() {
            if used.contains(&i) {
                continue;
            }
            let integral = rows[i]
                .iter()
                .zip(&u)
                .fold(Rational::default(), |acc, (c, x)| acc + c.clone() * x.clone());
            family.rows.push(ElsvRow {
                g: ansatz.g,
                mu: mu.clone(),
                elsv: elsv_prefactor(ansatz.g, mu) * integral,
                oracle: oracle.hurwitz_connected(ansatz.g, mu)?,
            });
        }
        report.families.push(family);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn y_matches_display() {
        let y = y_of_xi::<Rational>(6).unwrap();
        let expected = [
            rational(1, 1),
            rational(1, 1),
            rational(1, 3),
            rational(1, 36),
            rational(-1, 270),
            rational(1, 4320),
        ];
        for (m, e) in expected.iter().enumerate() {
            assert_eq!(&y.coeff(m as i64).unwrap(), e, "xi^{m}");
        }
    }

    #[test]
    fn zeta_back_substitution() {
        let zeta = zeta_of_xi::<Rational>(8).unwrap();
        let half_xi_sq = &zeta - &zeta.log1p().unwrap();
        let trunc = half_xi_sq.trunc_order();
        assert_eq!(
            half_xi_sq,
            Series::monomial(rational(1, 2), 2, EXACT).truncate(trunc)
        );
    }

    #[test]
    fn times_seed_values() {
        let t = times_from_curve::<Rational>(6).unwrap();
        assert_eq!(t.get(2), Some(&rational(0, 1)));
        assert_eq!(t.get(3), Some(&rational(3, 1)));
        assert_eq!(t.get(4), Some(&rational(1, 3)));
        assert_eq!(t.get(5), Some(&rational(1, 36)));
        assert_eq!(t.get(6), Some(&rational(-1, 270)));
        assert_eq!(t.t_max(), 6);
    }

    #[test]
    fn recursion_matches_curve() {
        let a = times_by_recursion::<Rational>(20);
        let b = times_from_curve::<Rational>(20).unwrap();
        assert_eq!(a.t_max(), 20);
        assert_eq!(a, b);
    }

    #[test]
    fn g_series_display() {
        let g = g_series(8).unwrap();
        assert_eq!(g.coeff(1).unwrap(), rational(-1, 6));
        assert_eq!(g.coeff(3).unwrap(), rational(1, 45));
        assert_eq!(g.coeff(5).unwrap(), rational(-8, 315));
        assert_eq!(g.coeff(7).unwrap(), rational(8, 105));
        for m in [0, 2, 4, 6, 8] {
            assert_eq!(g.coeff(m).unwrap(), rational(0, 1), "z^{m}");
        }
    }

    #[test]
    fn elsv_genus_one_solve() {
        let report = elsv_consistency(1, 4).unwrap();
        let f = report.family("g1_l1").unwrap();
        assert_eq!(f.unknowns[0].1, rational(1, 24));
        assert_eq!(f.unknowns[1].1, rational(1, 24));
        let h3 = f.rows.iter().find(|r| r.mu.parts() == [3]).unwrap();
        assert_eq!(h3.elsv, rational(9, 1));
        assert!(report.all_equal(), "{}", report.to_text());
    }

    #[test]
    fn elsv_genus_two_single_part() {
        let report = elsv_consistency(2, 5).unwrap();
        let f = report.family("g2_l1").unwrap();
        assert_eq!(f.unknowns[0].1, rational(1, 1152));
        assert!(report.all_equal(), "{}", report.to_text());
    }

    #[test]
    fn solver_skips_dependent_rows() {
        let rows = vec![
            vec![rational(1, 1), rational(1, 1)],
            vec![rational(2, 1), rational(2, 1)],
            vec![rational(1, 1), rational(-1, 1)],
        ];
        let rhs = vec![rational(3, 1), rational(6, 1), rational(1, 1)];
        let (u, used) = solve_greedy(&rows, &rhs).unwrap();
        assert_eq!(u, vec![rational(2, 1), rational(1, 1)]);
        assert_eq!(used, vec![0, 2]);
    }
}
