//! Topological recursion on a genus-zero spectral curve with one simple
//! branch point, specialised to the Lambert curve `x = −z + ln z`, `y = z`.
//!
//! Correlation forms are kept in the pole basis
//! `Σ c_a Π_i dz_i / (z_i − z*)^{a_i}`. Inside the residue the integration
//! variable sits at `z* + ζ` or at its deck image `z* + σ(ζ)`; every other
//! variable stays symbolic in the pole basis, so the output is exact.
//!
//! The engine memoizes one canonical (sorted) coefficient table per `(g, k)`.
//! Each new table is computed for every placement of the kernel variable, and
//! the placements must agree; a disagreement is reported as an error rather
//! than silently symmetrized.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::series::{Series, SeriesError, EXACT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecursionError {
    #[error("(g, k) = ({g}, {k}) is outside the stable range 2g − 2 + k > 0")]
    Unstable { g: u32, k: u32 },
    #[error("(g, k) = ({0}, 2) with g = 0 is the Bergman kernel, a base case, not a recursion output")]
    BergmanBaseCase(u32),
    #[error("truncation order {order} is insufficient for (g, k) = ({g}, {k})")]
    InsufficientOrder { g: u32, k: u32, order: i64 },
    #[error("branch point is not simple: {0}")]
    NonSimpleBranchPoint(String),
    #[error("kernel denominator has valuation {0}, expected 2")]
    BadKernelDenominator(i64),
    #[error("W_{k}^({g}) is not symmetric at pole orders {index:?}")]
    Asymmetric { g: u32, k: u32, index: Vec<u32> },
    #[error("F_g is only defined here for g >= 2 (got {0})")]
    FgGenus(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn is_stable(g: u32, k: u32) -> bool {
    2 * g + k > 2
}

/// Accepts exactly the `(g, k)` the recursion produces.
pub fn validate_stable(g: u32, k: u32) -> Result<(), RecursionError> {
    if g == 0 && k == 2 {
        return Err(RecursionError::BergmanBaseCase(g));
    }
    if k == 0 || !is_stable(g, k) {
        return Err(RecursionError::Unstable { g, k });
    }
    Ok(())
}

/// Default truncation order for computing `W_k^(g)`: `2(3g − 3 + k) + 8`.
pub fn required_order(g: u32, k: u32) -> i64 {
    2 * (3 * i64::from(g) - 3 + i64::from(k)) + 8
}

/// Sign choices entering the recursion. The fingerprint is part of every
/// cache key so that changing a convention invalidates cached forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// Kernel `kernel_sign · ½ ∫_{σ(z)}^{z} B(z₀,·) / ((y(z) − y(σ(z))) dx(z))`.
    /// `+1` reproduces the character-formula Hurwitz numbers through the
    /// Lambert pullback; `−1` flips every `W_k^(g)` by `(−1)^k` and serves as
    /// a negative control.
    pub kernel_sign: i8,
}

impl Default for Conventions {
    fn default() -> Self {
        Self { kernel_sign: 1 }
    }
}

impl Conventions {
    pub fn corrupted() -> Self {
        Self { kernel_sign: -1 }
    }

    pub fn fingerprint(&self) -> String {
        format!(
            "lambert(x=-z+ln z,y=z,z*=1);B=dz1dz2/(z1-z2)^2;K=s/2*int/((y-y(s))dx);s={}",
            self.kernel_sign
        )
    }
}

/// Local data of a spectral curve around its branch point, in `ζ = z − z*`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCurve<T = Rational> {
    pub branch: T,
    pub x_local: Series<T>,
    pub y_local: Series<T>,
    pub sigma: Series<T>,
    pub omega_local: Series<T>,
    pub order: i64,
}

impl<T: Scalar> LocalCurve<T> {
    /// Completes `(x, y)` near a simple branch point with the deck involution
    /// and the kernel denominator `(y(ζ) − y(σ(ζ))) x′(ζ)`.
    pub fn from_local(
        branch: T,
        x_local: Series<T>,
        y_local: Series<T>,
        order: i64,
    ) -> Result<Self, RecursionError> {
        let x_local = x_local.truncate(order);
        let sigma = deck_involution(&x_local)?;
        let y_sigma = y_local.compose(&sigma)?;
        let omega_local = &(&y_local - &y_sigma) * &x_local.derivative();
        if omega_local.valuation() != Some(2) {
            return Err(RecursionError::BadKernelDenominator(omega_local.min_exponent()));
        }
        Ok(Self {
            branch,
            x_local,
            y_local,
            sigma,
            omega_local,
            order,
        })
    }
}

/// The Lambert curve `x(z) = −z + ln z`, `y(z) = z` around `z* = 1`.
pub fn make_lambert_curve<T: Scalar>(order: i64) -> Result<LocalCurve<T>, RecursionError> {
    let zeta = Series::<T>::variable(order);
    let x_local = &(&zeta.log1p()? - &zeta) - &Series::one(EXACT);
    let y_local = Series::polynomial(0, vec![T::one(), T::one()]);
    LocalCurve::from_local(T::one(), x_local, y_local, order)
}

/// The local involution `σ(ζ) = −ζ + O(ζ²)` with `x(σ(ζ)) = x(ζ)`.
///
/// Writes `x − x(z*) = c₂ s²` with `s = ζ √(1 + …)`; then `σ = s⁻¹(−s)`.
pub fn deck_involution<T: Scalar>(x_local: &Series<T>) -> Result<Series<T>, RecursionError> {
    let c1 = x_local.coeff(1)?;
    let c2 = x_local.coeff(2)?;
    if !c1.is_zero() || c2.is_zero() {
        return Err(RecursionError::NonSimpleBranchPoint(
            "need x'(z*) = 0 and x''(z*) != 0".into(),
        ));
    }
    let x0 = x_local.coeff(0)?;
    let h = (x_local - &Series::constant(x0, EXACT))
        .shift(-2)
        .scale(&(T::one() / c2));
    let s = h.sqrt_unit()?.shift(1);
    Ok(s.reversion()?.compose(&-&s)?)
}

/// `B(z₀, z* + ζ) = Σ_m (m+1) ζ^m dz₀ dζ / (z₀ − z*)^{m+2}`, one arity-1 form
/// per power of `ζ`.
pub fn bergman_expansion<T: Scalar>(order: usize) -> Vec<PoleForm<T>> {
    (0..order)
        .map(|m| {
            let mut terms = BTreeMap::new();
            terms.insert(vec![m as u32 + 2], T::from_int(m as i64 + 1));
            PoleForm { g: 0, k: 1, terms }
        })
        .collect()
}

/// Recursion kernel expanded in `ζ`: entry `m` is the series multiplying
/// `dz₀ / (z₀ − z*)^{m+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionKernel<T = Rational> {
    pub coeffs: Vec<Series<T>>,
}

impl<T: Scalar> RecursionKernel<T> {
    /// Lowest `ζ` power over all pole orders.
    pub fn min_exponent(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(Series::valuation)
            .min()
            .unwrap_or(0)
    }
}

/// `K(z₀, ζ) = ±½ (1/(z₀ − z) − 1/(z₀ − σ(z))) / ((y(z) − y(σ(z))) x′(z))`
/// with `1/(z₀ − z* − ζ) = Σ_m ζ^m / (z₀ − z*)^{m+1}`.
pub fn recursion_kernel<T: Scalar>(
    curve: &LocalCurve<T>,
    conventions: Conventions,
) -> Result<RecursionKernel<T>, RecursionError> {
    let inv_omega = curve.omega_local.invert_unit()?;
    let prefactor = T::ratio(i64::from(conventions.kernel_sign), 2);
    let zeta = Series::<T>::variable(EXACT);
    let mut coeffs = vec![Series::zero(EXACT)];
    let mut zeta_pow = Series::one(EXACT);
    let mut sigma_pow = Series::one(EXACT);
    for _ in 1..curve.order {
        zeta_pow = &zeta_pow * &zeta;
        sigma_pow = &sigma_pow * &curve.sigma;
        let num = &zeta_pow - &sigma_pow;
        coeffs.push((&num * &inv_omega).scale(&prefactor));
    }
    Ok(RecursionKernel { coeffs })
}

/// `W_k^(g)` as `Σ_a c_a Π dz_i/(z_i − z*)^{a_i}` over full multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleForm<T = Rational> {
    pub g: u32,
    pub k: u32,
    pub terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> PoleForm<T> {
    /// Expands a table keyed by sorted multi-indices to all orderings.
    pub fn from_canonical(g: u32, k: u32, canonical: &BTreeMap<Vec<u32>, T>) -> Self {
        let mut terms = BTreeMap::new();
        for (key, c) in canonical {
            for perm in distinct_permutations(key) {
                terms.insert(perm, c.clone());
            }
        }
        Self { g, k, terms }
    }

    pub fn coeff(&self, index: &[u32]) -> T {
        self.terms.get(index).cloned().unwrap_or_else(T::zero)
    }

    pub fn max_pole_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|a| a.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Invariance under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(a, c)| {
            distinct_permutations(&sorted_desc(a))
                .iter()
                .all(|p| self.terms.get(p) == Some(c))
        })
    }

    /// Per-variable residue at `z*`: for each variable and each assignment of
    /// the others, the coefficient with a simple pole in that variable.
    pub fn is_residue_free(&self) -> bool {
        self.terms.keys().all(|a| !a.contains(&1))
    }
}

/// Canonical JSON shape `{"g","k","terms":[{"a":[…],"c":"num/den"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleFormJson {
    pub g: u32,
    pub k: u32,
    pub terms: Vec<PoleTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleTermJson {
    pub a: Vec<u32>,
    pub c: String,
}

impl PoleForm<Rational> {
    pub fn to_json(&self) -> PoleFormJson {
        PoleFormJson {
            g: self.g,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| PoleTermJson {
                    a: a.clone(),
                    c: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PoleFormJson) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for t in &json.terms {
            if t.a.len() != json.k as usize {
                return None;
            }
            terms.insert(t.a.clone(), parse_rational(&t.c)?);
        }
        Some(Self {
            g: json.g,
            k: json.k,
            terms,
        })
    }
}

fn sorted_desc(a: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Every distinct ordering of a multiset, lexicographically increasing.
pub fn distinct_permutations(a: &[u32]) -> Vec<Vec<u32>> {
    let mut v = a.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// Removes one occurrence of `value` from a sorted multi-index.
fn remove_one(key: &[u32], value: u32) -> Vec<u32> {
    let mut v = key.to_vec();
    let pos = v.iter().position(|&x| x == value).expect("value present");
    v.remove(pos);
    v
}

fn distinct_values(key: &[u32]) -> Vec<u32> {
    let mut v = key.to_vec();
    v.dedup();
    v
}

fn merge_desc(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

/// Sub-multisets of a sorted multi-index with the number of position subsets
/// realising each, paired with their complements.
fn sub_multisets(key: &[u32]) -> Vec<(Vec<u32>, Vec<u32>, u64)> {
    let groups: Vec<(u32, usize)> = {
        let mut g: Vec<(u32, usize)> = Vec::new();
        for &x in key {
            match g.last_mut() {
                Some((v, m)) if *v == x => *m += 1,
                _ => g.push((x, 1)),
            }
        }
        g
    };
    let mut out = vec![(Vec::new(), Vec::new(), 1u64)];
    for (value, mult) in groups {
        let mut next = Vec::new();
        for (sub, rest, w) in &out {
            for take in 0..=mult {
                let mut s = sub.clone();
                let mut r = rest.clone();
                s.extend(std::iter::repeat_n(value, take));
                r.extend(std::iter::repeat_n(value, mult - take));
                next.push((s, r, w * binomial(mult as u64, take as u64)));
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Memoized coefficient table of one `W_k^(g)` with lookup indices.
#[derive(Debug)]
struct Table<T> {
    canonical: BTreeMap<Vec<u32>, T>,
    /// rest (sorted) → [(pole order of the distinguished variable, coeff)]
    single: HashMap<Vec<u32>, Vec<(u32, T)>>,
    /// rest (sorted) → [(a, b, coeff)] for two distinguished variables
    double: HashMap<Vec<u32>, Vec<(u32, u32, T)>>,
    max_pole: u32,
}

impl<T: Scalar> Table<T> {
    fn new(canonical: BTreeMap<Vec<u32>, T>) -> Self {
        let mut single: HashMap<Vec<u32>, Vec<(u32, T)>> = HashMap::new();
        let mut double: HashMap<Vec<u32>, Vec<(u32, u32, T)>> = HashMap::new();
        let mut max_pole = 0;
        for (key, c) in &canonical {
            max_pole = max_pole.max(key[0]);
            for a in distinct_values(key) {
                let rest = remove_one(key, a);
                for b in distinct_values(&rest) {
                    double
                        .entry(remove_one(&rest, b))
                        .or_default()
                        .push((a, b, c.clone()));
                }
                single.entry(rest).or_default().push((a, c.clone()));
            }
        }
        Self {
            canonical,
            single,
            double,
            max_pole,
        }
    }
}

/// Which object occupies one side of a product inside the residue.
#[derive(Clone)]
enum Factor<T> {
    Bergman,
    Form(Arc<Table<T>>),
}

impl<T: Scalar> Factor<T> {
    fn max_pole(&self) -> u32 {
        match self {
            Factor::Bergman => 0,
            Factor::Form(t) => t.max_pole,
        }
    }

    fn rests(&self, size: usize, other_max_pole: u32) -> Vec<Vec<u32>> {
        match self {
            Factor::Bergman => (2..=2 + other_max_pole).map(|b| vec![b]).collect(),
            Factor::Form(t) => t
                .single
                .keys()
                .filter(|r| r.len() == size)
                .cloned()
                .collect(),
        }
    }
}

/// Topological recursion engine with a memo table of correlation forms.
pub struct TopRec<T = Rational> {
    curve: LocalCurve<T>,
    conventions: Conventions,
    kernel: RecursionKernel<T>,
    /// `σ^{-b} σ′` for `b >= 1` (index `b`)
    sigma_neg: Vec<Series<T>>,
    /// `σ^{n} σ′` for `n >= 0`
    sigma_pos: Vec<Series<T>>,
    /// `B(z, σ(z)) / dζ² = σ′ / (ζ − σ)²`
    bergman_pair: Series<T>,
    memo: BTreeMap<(u32, u32), Arc<Table<T>>>,
}

impl<T: Scalar> TopRec<T> {
    pub fn new(curve: LocalCurve<T>, conventions: Conventions) -> Result<Self, RecursionError> {
        let kernel = recursion_kernel(&curve, conventions)?;
        let dsigma = curve.sigma.derivative();
        let inv_sigma = curve.sigma.invert_unit()?;
        let mut sigma_neg = vec![Series::zero(EXACT)];
        let mut p = Series::one(EXACT);
        let mut sigma_pos = Vec::new();
        let mut q = Series::one(EXACT);
        for _ in 0..=curve.order + 2 {
            sigma_pos.push(&q * &dsigma);
            q = &q * &curve.sigma;
            p = &p * &inv_sigma;
            sigma_neg.push(&p * &dsigma);
        }
        let diff = &Series::variable(EXACT) - &curve.sigma;
        let bergman_pair = &dsigma * &diff.powi(-2)?;
        Ok(Self {
            curve,
            conventions,
            kernel,
            sigma_neg,
            sigma_pos,
            bergman_pair,
            memo: BTreeMap::new(),
        })
    }

    /// Engine on the Lambert curve with the default conventions.
    pub fn lambert(order: i64) -> Result<Self, RecursionError> {
        Self::new(make_lambert_curve(order)?, Conventions::default())
    }

    pub fn curve(&self) -> &LocalCurve<T> {
        &self.curve
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn kernel(&self) -> &RecursionKernel<T> {
        &self.kernel
    }

    pub fn order(&self) -> i64 {
        self.curve.order
    }

    /// Sorted-index coefficient table of `W_k^(g)`.
    pub fn w_canonical(&mut self, g: u32, k: u32) -> Result<&BTreeMap<Vec<u32>, T>, RecursionError> {
        validate_stable(g, k)?;
        self.ensure(g, k)?;
        Ok(&self.memo[&(g, k)].canonical)
    }

    /// `W_k^(g)` over all multi-indices.
    pub fn w(&mut self, g: u32, k: u32) -> Result<PoleForm<T>, RecursionError> {
        let canonical = self.w_canonical(g, k)?;
        Ok(PoleForm::from_canonical(g, k, canonical))
    }

    /// Memoized `(g, k)` pairs with their canonical tables.
    pub fn memo_entries(&self) -> impl Iterator<Item = ((u32, u32), &BTreeMap<Vec<u32>, T>)> {
        self.memo.iter().map(|(key, t)| (*key, &t.canonical))
    }

    /// Seeds the memo table, e.g. from a cache file.
    pub fn preload(&mut self, g: u32, k: u32, canonical: BTreeMap<Vec<u32>, T>) {
        self.memo.insert((g, k), Arc::new(Table::new(canonical)));
    }

    fn factor(&mut self, g: u32, k: u32) -> Result<Factor<T>, RecursionError> {
        if g == 0 && k == 2 {
            return Ok(Factor::Bergman);
        }
        self.ensure(g, k)?;
        Ok(Factor::Form(self.memo[&(g, k)].clone()))
    }

    fn ensure(&mut self, g: u32, k: u32) -> Result<(), RecursionError> {
        if self.memo.contains_key(&(g, k)) {
            return Ok(());
        }
        let canonical = self.compute(g, k)?;
        self.memo.insert((g, k), Arc::new(Table::new(canonical)));
        Ok(())
    }

    fn compute(&mut self, g: u32, k: u32) -> Result<BTreeMap<Vec<u32>, T>, RecursionError> {
        let insufficient = RecursionError::InsufficientOrder {
            g,
            k,
            order: self.curve.order,
        };
        let rest_len = k as usize - 1;

        // the W_{k+1}^{(g-1)}(z, σ(z), K) term
        let pair = if g >= 1 {
            Some(self.factor(g - 1, k + 1)?)
        } else {
            None
        };

        // the split terms W_{|J|+1}^{(h)}(z, J) W_{k-|J|}^{(g-h)}(σ(z), K∖J)
        let mut splits = Vec::new();
        for h in 0..=g {
            for j in 0..=rest_len {
                if (h == 0 && j == 0) || (h == g && j == rest_len) {
                    continue;
                }
                let left = self.factor(h, j as u32 + 1)?;
                let right = self.factor(g - h, (k as usize - j) as u32)?;
                splits.push((h, j, left, right));
            }
        }

        let mut candidates: BTreeSet<Vec<u32>> = BTreeSet::new();
        match &pair {
            Some(Factor::Bergman) => {
                candidates.insert(Vec::new());
            }
            Some(Factor::Form(t)) => candidates.extend(t.double.keys().cloned()),
            None => {}
        }
        for (_, j, left, right) in &splits {
            let lr = left.rests(*j, right.max_pole());
            let rr = right.rests(rest_len - j, left.max_pole());
            for a in &lr {
                for b in &rr {
                    candidates.insert(merge_desc(a, b));
                }
            }
        }

        let mut left_cache: HashMap<(u32, Vec<u32>), Series<T>> = HashMap::new();
        let mut right_cache: HashMap<(u32, Vec<u32>), Series<T>> = HashMap::new();
        let mut placements: HashMap<Vec<u32>, Vec<(u32, T)>> = HashMap::new();

        for alpha in &candidates {
            let mut bracket = Series::<T>::zero(1);
            match &pair {
                Some(Factor::Bergman) => {
                    bracket = &bracket + &self.bergman_pair;
                }
                Some(Factor::Form(t)) => {
                    if let Some(list) = t.double.get(alpha) {
                        for (a, b, c) in list {
                            let s = self.sigma_neg(*b)?.shift(-i64::from(*a)).scale(c);
                            bracket = &bracket + &s;
                        }
                    }
                }
                None => {}
            }
            for (sub, rest, weight) in sub_multisets(alpha) {
                let weight = T::from_int(weight as i64);
                for (h, j, left, right) in &splits {
                    if sub.len() != *j {
                        continue;
                    }
                    let l = match left_cache.get(&(*h, sub.clone())) {
                        Some(s) => s.clone(),
                        None => {
                            let s = self.eval_at_point(left, &sub);
                            left_cache.insert((*h, sub.clone()), s.clone());
                            s
                        }
                    };
                    if l.is_zero() {
                        continue;
                    }
                    let r = match right_cache.get(&(g - h, rest.clone())) {
                        Some(s) => s.clone(),
                        None => {
                            let s = self.eval_at_image(right, &rest)?;
                            right_cache.insert((g - h, rest.clone()), s.clone());
                            s
                        }
                    };
                    if r.is_zero() {
                        continue;
                    }
                    bracket = &bracket + &l.mul_capped(&r, 1).scale(&weight);
                }
            }
            if bracket.is_zero() {
                if bracket.trunc_order() < 1 {
                    return Err(insufficient);
                }
                continue;
            }
            let br_val = bracket.min_exponent();
            let mut m = 1usize;
            loop {
                let Some(km) = self.kernel.coeffs.get(m) else {
                    return Err(insufficient);
                };
                if km.min_exponent() + br_val > -1 {
                    // kernel valuations grow with m
                    if m + 1 >= self.kernel.coeffs.len()
                        || self.kernel.coeffs[m + 1].min_exponent() + br_val > -1
                    {
                        break;
                    }
                    m += 1;
                    continue;
                }
                let value = km
                    .mul_capped(&bracket, 0)
                    .residue()
                    .map_err(|_| insufficient.clone())?;
                if !value.is_zero() {
                    let full = merge_desc(alpha, &[m as u32 + 1]);
                    placements.entry(full).or_default().push((m as u32 + 1, value));
                }
                m += 1;
            }
        }

        let mut canonical = BTreeMap::new();
        for (key, values) in placements {
            let distinct = distinct_values(&key);
            let (_, first) = &values[0];
            let consistent = values.len() == distinct.len()
                && values.iter().all(|(_, v)| v.same(first));
            if !consistent {
                return Err(RecursionError::Asymmetric { g, k, index: key });
            }
            canonical.insert(key, first.clone());
        }
        Ok(canonical)
    }

    fn sigma_neg(&self, b: u32) -> Result<&Series<T>, RecursionError> {
        self.sigma_neg
            .get(b as usize)
            .ok_or(RecursionError::InsufficientOrder {
                g: 0,
                k: 0,
                order: self.curve.order,
            })
    }

    /// The factor with its distinguished variable at `z* + ζ` (exact).
    fn eval_at_point(&self, factor: &Factor<T>, rest: &[u32]) -> Series<T> {
        match factor {
            Factor::Bergman => {
                let b = rest[0];
                Series::monomial(T::from_int(i64::from(b) - 1), i64::from(b) - 2, EXACT)
            }
            Factor::Form(t) => {
                let Some(list) = t.single.get(rest) else {
                    return Series::zero(EXACT);
                };
                let lo = list.iter().map(|(a, _)| *a).max().unwrap_or(0);
                let mut coeffs = vec![T::zero(); lo as usize + 1];
                for (a, c) in list {
                    coeffs[(lo - a) as usize] = c.clone();
                }
                Series::polynomial(-i64::from(lo), coeffs)
            }
        }
    }

    /// The factor with its distinguished variable at `z* + σ(ζ)`, including `σ′`.
    fn eval_at_image(&self, factor: &Factor<T>, rest: &[u32]) -> Result<Series<T>, RecursionError> {
        match factor {
            Factor::Bergman => {
                let b = rest[0];
                let base = self.sigma_pos.get(b as usize - 2).ok_or(
                    RecursionError::InsufficientOrder {
                        g: 0,
                        k: 2,
                        order: self.curve.order,
                    },
                )?;
                Ok(base.scale(&T::from_int(i64::from(b) - 1)))
            }
            Factor::Form(t) => {
                let mut acc = Series::zero(EXACT);
                if let Some(list) = t.single.get(rest) {
                    for (a, c) in list {
                        acc = &acc + &self.sigma_neg(*a)?.scale(c);
                    }
                }
                Ok(acc)
            }
        }
    }

    /// `W(z* + ζ, rest) + W(z* + σ(ζ), rest)` in the first variable; vanishes
    /// to the known order for every stable form.
    pub fn sigma_symmetrized(
        &mut self,
        g: u32,
        k: u32,
        rest: &[u32],
    ) -> Result<Series<T>, RecursionError> {
        validate_stable(g, k)?;
        let f = self.factor(g, k)?;
        let rest = sorted_desc(rest);
        let at_point = self.eval_at_point(&f, &rest);
        let at_image = self.eval_at_image(&f, &rest)?;
        Ok(&at_point + &at_image)
    }

    /// `F_g = (1/(2−2g)) Res W₁^(g) Φ` with `Φ = ∫_{z*}^{z} y dx + shift`.
    pub fn f_g_shifted(&mut self, g: u32, shift: T) -> Result<T, RecursionError> {
        if g < 2 {
            return Err(RecursionError::FgGenus(g));
        }
        let w1 = self.w_canonical(g, 1)?.clone();
        let ydx = &self.curve.y_local * &self.curve.x_local.derivative();
        let phi = &integrate(&ydx) + &Series::constant(shift, EXACT);
        let mut total = T::zero();
        for (a, c) in &w1 {
            let pole = Series::monomial(c.clone(), -i64::from(a[0]), EXACT);
            let r = (&pole * &phi).residue().map_err(|_| RecursionError::InsufficientOrder {
                g,
                k: 0,
                order: self.curve.order,
            })?;
            total = total + r;
        }
        Ok(total / T::from_int(2 - 2 * i64::from(g)))
    }

    pub fn f_g(&mut self, g: u32) -> Result<T, RecursionError> {
        self.f_g_shifted(g, T::zero())
    }
}

fn integrate<T: Scalar>(s: &Series<T>) -> Series<T> {
    let trunc = if s.is_exact() { EXACT } else { s.trunc_order() + 1 };
    let mut out = Series::zero(trunc);
    for (n, c) in s.terms() {
        assert!(n != -1, "primitive of a simple pole");
        out = &out + &Series::monomial(c.clone() / T::from_int(n + 1), n + 1, EXACT);
    }
    out
}
