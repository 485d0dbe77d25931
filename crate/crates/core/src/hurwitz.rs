//! From correlation forms on the Lambert curve to simple Hurwitz numbers.
//!
//! Each variable of `W_k^(g) / Π dx(z_i)` is pulled back along `z = L(v)`,
//! the Lambert series, so `1/(z − 1)^a` becomes a power series `P_a(v)`.
//! The multivariate expansion in `v_i = e^{x_i}` carries the Hurwitz numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burnside::{HurwitzOracle, OracleError};
use crate::partitions::{partitions_of, Partition};
use crate::scalar::{factorial, format_rational, Rational, Scalar};
use crate::series::{Series, SeriesError, EXACT};
use crate::toprec::{distinct_permutations, is_stable, Conventions, RecursionError, TopRec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("partition {mu} has length {len}, series has arity {k}")]
    ArityMismatch { mu: Partition, len: usize, k: u32 },
    #[error("partition {mu} exceeds the expansion degree {n_max}")]
    OutOfRange { mu: Partition, n_max: u32 },
    #[error(transparent)]
    Recursion(#[from] RecursionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `H^(g)(v₁,…,v_k)` expanded in monomials `Π v_i^{μ_i}` with every
/// `μ_i >= 1` and `Σ μ_i <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct HSeries<T = Rational> {
    pub g: u32,
    pub k: u32,
    pub n_max: u32,
    pub coeffs: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> HSeries<T> {
    pub fn coeff(&self, exponents: &[u32]) -> T {
        self.coeffs.get(exponents).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| {
            distinct_permutations(e)
                .iter()
                .all(|p| self.coeffs.get(p).unwrap_or(&T::zero()) == c)
        })
    }

    pub fn has_no_zero_exponent(&self) -> bool {
        self.coeffs.keys().all(|e| !e.contains(&0))
    }
}

/// `L(v) = Σ m^{m−1} v^m / m!`, the inverse of `v = z e^{−z}`, through `v^order`.
pub fn lambert_series<T: Scalar>(order: i64) -> Result<Series<T>, SeriesError> {
    let z = Series::<T>::variable(order + 1);
    let v = &z * &(-&z).exp()?;
    v.reversion()
}

/// `[1/(z − 1)^a] · [1/x′(z)]` at `z = L(v)`, i.e. `−L / (L − 1)^{a+1}`,
/// through `v^order`.
pub fn pole_factor_series<T: Scalar>(a: u32, order: i64) -> Result<Series<T>, SeriesError> {
    let l = lambert_series::<T>(order)?;
    let inv = (&l - &Series::one(EXACT)).invert_unit()?;
    Ok(-&(&l * &inv.powi(i64::from(a) + 1)?))
}

/// Exponent tuples of length `k`, entries `>= 1`, sum `<= n_max`.
fn exponent_tuples(k: u32, n_max: u32) -> Vec<Vec<u32>> {
    fn rec(k: u32, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for m in 1..=budget.saturating_sub(k - 1) {
            prefix.push(m);
            rec(k - 1, budget - m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n_max {
        rec(k, n_max, &mut Vec::new(), &mut out);
    }
    out
}

/// Pulls `W_k^(g)` back along the Lambert series.
pub fn h_series<T: Scalar>(
    engine: &mut TopRec<T>,
    g: u32,
    k: u32,
    n_max: u32,
) -> Result<HSeries<T>, ExtractError> {
    let form = engine.w(g, k)?;
    let order = i64::from(n_max);
    let max_pole = form.max_pole_order();
    let factors = (0..=max_pole)
        .map(|a| {
            if a == 0 {
                Ok(Vec::new())
            } else {
                let p = pole_factor_series::<T>(a, order)?;
                (0..=order).map(|m| p.coeff(m)).collect()
            }
        })
        .collect::<Result<Vec<Vec<T>>, SeriesError>>()?;

    let mut coeffs = BTreeMap::new();
    for mu in exponent_tuples(k, n_max) {
        let mut total = T::zero();
        for (a, c) in &form.terms {
            let mut term = c.clone();
            for (ai, mi) in a.iter().zip(&mu) {
                term = term * factors[*ai as usize][*mi as usize].clone();
                if term.is_zero() {
                    break;
                }
            }
            total = total + term;
        }
        if !total.is_zero() {
            coeffs.insert(mu, total);
        }
    }
    Ok(HSeries { g, k, n_max, coeffs })
}

/// Number of simple branch points `2g − 2 + |μ| + ℓ(μ)` as an index.
fn branch_count(g: u32, mu: &Partition) -> u64 {
    (2 * i64::from(g) - 2 + i64::from(mu.size()) + mu.len() as i64) as u64
}

/// `H_{g,μ}` from the coefficient of `Π v_i^{μ_i}`, `μ` read in its stored
/// (descending) order.
pub fn extract_hurwitz(hs: &HSeries<Rational>, mu: &Partition) -> Result<Rational, ExtractError> {
    extract_hurwitz_at(hs, mu, mu.parts())
}

/// As [`extract_hurwitz`] but reading the coefficient at a given ordering of
/// the parts.
pub fn extract_hurwitz_at(
    hs: &HSeries<Rational>,
    mu: &Partition,
    ordering: &[u32],
) -> Result<Rational, ExtractError> {
    if mu.len() != hs.k as usize {
        return Err(ExtractError::ArityMismatch {
            mu: mu.clone(),
            len: mu.len(),
            k: hs.k,
        });
    }
    if mu.size() > hs.n_max {
        return Err(ExtractError::OutOfRange {
            mu: mu.clone(),
            n_max: hs.n_max,
        });
    }
    let mut sorted = ordering.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(sorted, mu.parts(), "ordering is not a rearrangement of μ");
    let prod: u64 = mu.parts().iter().map(|&m| u64::from(m)).product();
    let denom = Rational::from_integer((prod * mu.automorphisms()).into());
    Ok(hs.coeff(ordering) * factorial(branch_count(hs.g, mu)) / denom)
}

/// How a Hurwitz number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recursion => "recursion",
            Method::Oracle => "oracle",
        }
    }
}

/// One computed `H_{g,μ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HurwitzRecord {
    pub g: u32,
    pub mu: Partition,
    pub method: Method,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BmRow {
    pub g: u32,
    pub mu: Partition,
    pub recursion: Rational,
    pub oracle: Rational,
}

impl BmRow {
    pub fn equal(&self) -> bool {
        self.recursion == self.oracle
    }
}

/// JSON shape of one comparison row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BmRowJson {
    pub g: u32,
    pub mu: Vec<u32>,
    pub recursion: String,
    pub oracle: String,
    pub equal: bool,
}

/// Recursion against oracle, in the order the cases were checked. Stops
/// after the first disagreement.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BmReport {
    pub rows: Vec<BmRow>,
}

impl BmReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(BmRow::equal)
    }

    pub fn first_mismatch(&self) -> Option<&BmRow> {
        self.rows.iter().find(|r| !r.equal())
    }

    pub fn to_json_rows(&self) -> Vec<BmRowJson> {
        self.rows
            .iter()
            .map(|r| BmRowJson {
                g: r.g,
                mu: r.mu.parts().to_vec(),
                recursion: format_rational(&r.recursion),
                oracle: format_rational(&r.oracle),
                equal: r.equal(),
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .to_json_rows()
            .into_iter()
            .map(|r| {
                [
                    r.g.to_string(),
                    Partition::new(r.mu).map(|p| p.to_string()).unwrap_or_default(),
                    r.recursion,
                    r.oracle,
                    r.equal.to_string(),
                ]
            })
            .collect();
        let header = ["g", "mu", "recursion", "oracle", "equal"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = r
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

/// Stable `(g, μ)` with `g <= g_max`, `|μ| <= n_max`, ordered by genus, then
/// degree, then partition.
pub fn stable_cases(g_max: u32, n_max: u32) -> Vec<(u32, Partition)> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 1..=n_max {
            for mu in partitions_of(n) {
                if is_stable(g, mu.len() as u32) {
                    out.push((g, mu));
                }
            }
        }
    }
    out
}

/// Every `(g, μ)` with `g <= g_max`, `1 <= |μ| <= n_max`, stable or not.
pub fn all_cases(g_max: u32, n_max: u32) -> Vec<(u32, Partition)> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 1..=n_max {
            out.extend(partitions_of(n).into_iter().map(|mu| (g, mu)));
        }
    }
    out
}

/// Recursion-route values on the stable cases within the bounds.
pub fn recursion_records(
    engine: &mut TopRec<Rational>,
    g_max: u32,
    n_max: u32,
) -> Result<Vec<HurwitzRecord>, ExtractError> {
    let mut series: BTreeMap<(u32, u32), HSeries<Rational>> = BTreeMap::new();
    let mut out = Vec::new();
    for (g, mu) in stable_cases(g_max, n_max) {
        let k = mu.len() as u32;
        if let std::collections::btree_map::Entry::Vacant(e) = series.entry((g, k)) {
            e.insert(h_series(engine, g, k, n_max)?);
        }
        out.push(HurwitzRecord {
            g,
            value: extract_hurwitz(&series[&(g, k)], &mu)?,
            mu,
            method: Method::Recursion,
        });
    }
    Ok(out)
}

/// Oracle values on the given cases.
pub fn oracle_records(
    oracle: &HurwitzOracle,
    cases: &[(u32, Partition)],
) -> Result<Vec<HurwitzRecord>, ExtractError> {
    cases
        .iter()
        .map(|(g, mu)| {
            Ok(HurwitzRecord {
                g: *g,
                mu: mu.clone(),
                method: Method::Oracle,
                value: oracle.hurwitz_connected(*g, mu)?,
            })
        })
        .collect()
}

/// Truncation order that makes every `W_k^(g)` needed for the bounds exact.
pub fn order_for_bounds(g_max: u32, n_max: u32) -> i64 {
    crate::toprec::required_order(g_max, n_max.max(1))
}

/// Compares recursion and oracle on every stable case within the bounds.
pub fn verify_bm_with(
    engine: &mut TopRec<Rational>,
    oracle: &HurwitzOracle,
    g_max: u32,
    n_max: u32,
) -> Result<BmReport, ExtractError> {
    let mut report = BmReport::default();
    let mut series: BTreeMap<(u32, u32), HSeries<Rational>> = BTreeMap::new();
    for (g, mu) in stable_cases(g_max, n_max) {
        let k = mu.len() as u32;
        if let std::collections::btree_map::Entry::Vacant(e) = series.entry((g, k)) {
            e.insert(h_series(engine, g, k, n_max)?);
        }
        let row = BmRow {
            g,
            recursion: extract_hurwitz(&series[&(g, k)], &mu)?,
            oracle: oracle.hurwitz_connected(g, &mu)?,
            mu,
        };
        let stop = !row.equal();
        report.rows.push(row);
        if stop {
            break;
        }
    }
    Ok(report)
}

pub fn verify_bm(g_max: u32, n_max: u32, conventions: Conventions) -> Result<BmReport, ExtractError> {
    let curve = crate::toprec::make_lambert_curve(order_for_bounds(g_max, n_max))?;
    let mut engine = TopRec::new(curve, conventions)?;
    let oracle = HurwitzOracle::new(n_max, g_max);
    verify_bm_with(&mut engine, &oracle, g_max, n_max)
}
