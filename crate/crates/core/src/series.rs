//! Truncated formal power and Laurent series in one indeterminate.
//!
//! A [`Series`] stores a dense run of coefficients starting at its minimal
//! exponent together with an explicit truncation order: coefficients at
//! exponents `>= trunc_order` are unknown. Every operation computes the
//! tightest truncation order the operands determine and never reports a
//! coefficient beyond it. A truncation order of [`EXACT`] marks a finite
//! polynomial (nothing is unknown).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{Rational, Scalar};

/// Truncation order of a series known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is zero up to its truncation order {0}")]
    ZeroSeries(i64),
    #[error("series has a nonzero constant term or negative powers (valuation {0}); a valuation of at least 1 is required")]
    ConstantTerm(i64),
    #[error("series is not reversible: need a(0) = 0 and a nonzero linear coefficient (valuation {0})")]
    NotReversible(i64),
    #[error("coefficient at exponent {exponent} is unknown (truncation order {trunc})")]
    UnknownCoefficient { exponent: i64, trunc: i64 },
    #[error("operation on an exact polynomial yields an infinite series; truncate the operand first")]
    Unbounded,
    #[error("expected a unit with leading coefficient 1 at exponent 0")]
    NotNormalizedUnit,
}

fn ord_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

fn ord_mul(n: i64, v: i64) -> i64 {
    if n == EXACT {
        EXACT
    } else {
        n * v
    }
}

/// Truncated Laurent series `Σ c_n ζ^n + O(ζ^trunc)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T = Rational> {
    min_exp: i64,
    coeffs: Vec<T>,
    trunc: i64,
}

impl<T: Scalar> Series<T> {
    /// Builds a series from coefficients starting at `min_exp`, normalizing away
    /// leading and trailing zeros and anything at or beyond `trunc`.
    pub fn new(min_exp: i64, mut coeffs: Vec<T>, trunc: i64) -> Self {
        if trunc != EXACT {
            let keep = (trunc - min_exp).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero(trunc);
        }
        coeffs.drain(..lead);
        Self {
            min_exp: min_exp + lead as i64,
            coeffs,
            trunc,
        }
    }

    pub fn polynomial(min_exp: i64, coeffs: Vec<T>) -> Self {
        Self::new(min_exp, coeffs, EXACT)
    }

    pub fn zero(trunc: i64) -> Self {
        Self {
            min_exp: trunc,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(T::one(), 0, trunc)
    }

    pub fn constant(c: T, trunc: i64) -> Self {
        Self::monomial(c, 0, trunc)
    }

    pub fn monomial(c: T, exp: i64, trunc: i64) -> Self {
        Self::new(exp, vec![c], trunc)
    }

    /// The indeterminate `ζ` itself.
    pub fn variable(trunc: i64) -> Self {
        Self::monomial(T::one(), 1, trunc)
    }

    /// Series with coefficients `f(n)` for `start <= n < trunc`.
    pub fn from_fn(start: i64, trunc: i64, f: impl FnMut(i64) -> T) -> Self {
        assert!(trunc != EXACT, "from_fn needs a finite truncation order");
        Self::new(start, (start..trunc).map(f).collect(), trunc)
    }

    /// Smallest exponent with a nonzero coefficient; equals the truncation
    /// order for a series that is zero as far as it is known.
    pub fn min_exponent(&self) -> i64 {
        self.min_exp
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.min_exp)
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent carrying a nonzero coefficient.
    pub fn max_exponent(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn coeff(&self, n: i64) -> Result<T, SeriesError> {
        if n >= self.trunc {
            return Err(SeriesError::UnknownCoefficient {
                exponent: n,
                trunc: self.trunc,
            });
        }
        Ok(self.get(n))
    }

    /// Coefficient lookup without the truncation check.
    pub(crate) fn get(&self, n: i64) -> T {
        if n < self.min_exp {
            return T::zero();
        }
        self.coeffs
            .get((n - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Coefficient of `ζ^{-1}`.
    pub fn residue(&self) -> Result<T, SeriesError> {
        self.coeff(-1)
    }

    /// Forgets every coefficient at exponent `>= n`.
    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.trunc {
            return self.clone();
        }
        Self::new(self.min_exp, self.coeffs.clone(), n)
    }

    /// Multiplication by `ζ^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero(ord_add(self.trunc, k));
        }
        Self {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            trunc: ord_add(self.trunc, k),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.min_exp,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            self.trunc,
        )
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.is_zero() && other.is_zero() {
            return Self::zero(trunc);
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = [self.max_exponent(), other.max_exponent()]
            .into_iter()
            .flatten()
            .max()
            .unwrap_or(lo);
        let hi = if trunc == EXACT { hi } else { hi.min(trunc - 1) };
        if hi < lo {
            return Self::zero(trunc);
        }
        let coeffs = (lo..=hi)
            .map(|n| {
                let b = other.get(n);
                if negate {
                    self.get(n) - b
                } else {
                    self.get(n) + b
                }
            })
            .collect();
        Self::new(lo, coeffs, trunc)
    }

    /// Cauchy product; only coefficients below `cap` are computed.
    pub fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        let trunc = ord_add(self.min_exp, other.trunc)
            .min(ord_add(other.min_exp, self.trunc))
            .min(cap);
        if self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let min = self.min_exp + other.min_exp;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if trunc != EXACT {
            len = len.min((trunc - min).max(0) as usize);
        }
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(min, out, trunc)
    }

    /// Multiplicative inverse of a Laurent unit.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroSeries(self.trunc))?;
        let lead = self.coeffs[0].clone();
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::polynomial(-v, vec![T::one() / lead]));
            }
            return Err(SeriesError::Unbounded);
        }
        let rel = (self.trunc - v) as usize;
        let mut inv: Vec<T> = Vec::with_capacity(rel);
        inv.push(T::one() / lead.clone());
        for i in 1..rel {
            let mut acc = T::zero();
            for j in 1..=i.min(self.coeffs.len() - 1) {
                acc = acc + self.coeffs[j].clone() * inv[i - j].clone();
            }
            inv.push(-acc / lead.clone());
        }
        Ok(Self::new(-v, inv, -v + rel as i64))
    }

    /// Integer power; negative exponents go through [`Series::invert_unit`].
    pub fn powi(&self, n: i64) -> Result<Self, SeriesError> {
        let base = if n < 0 {
            self.invert_unit()?
        } else {
            self.clone()
        };
        let mut acc = Self::one(EXACT);
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn check_positive_valuation(&self) -> Result<(), SeriesError> {
        match self.valuation() {
            Some(v) if v < 1 => Err(SeriesError::ConstantTerm(v)),
            None if self.trunc < 1 => Err(SeriesError::ConstantTerm(self.trunc)),
            _ => Ok(()),
        }
    }

    /// Formal substitution `outer(inner(ζ))`.
    ///
    /// `inner` must have positive valuation. Negative powers of `outer` are
    /// realized through powers of `invert_unit(inner)`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        inner.check_positive_valuation()?;
        let v = inner.min_exponent();
        let rel = if inner.is_exact() {
            EXACT
        } else {
            inner.trunc - v
        };
        let mut target = ord_mul(self.trunc, v);
        for (n, _) in self.terms() {
            if n != 0 {
                target = target.min(ord_add(n * v, rel));
            }
        }
        let mut acc = Self::zero(target);
        let (neg, pos): (Vec<_>, Vec<_>) = self.terms().partition(|(n, _)| *n < 0);
        if !neg.is_empty() {
            let inv = inner.invert_unit()?;
            let mut power = Self::one(EXACT);
            let mut at = 0;
            for (n, c) in neg.into_iter().rev() {
                while at > n {
                    power = &power * &inv;
                    at -= 1;
                }
                acc = &acc + &power.scale(c);
            }
        }
        let mut power = Self::one(EXACT);
        let mut at = 0;
        for (n, c) in pos {
            if target != EXACT && n * v >= target {
                break;
            }
            while at < n {
                power = power.mul_capped(inner, target);
                at += 1;
            }
            acc = &acc + &power.scale(c);
        }
        Ok(acc.truncate(target))
    }

    /// Compositional inverse: returns `b` with `self ∘ b = ζ` to the known order.
    ///
    /// Uses Lagrange inversion, `[w^n] b = (1/n) [ζ^{n-1}] (ζ/a(ζ))^n`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        match self.valuation() {
            Some(1) => {}
            Some(v) => return Err(SeriesError::NotReversible(v)),
            None => return Err(SeriesError::NotReversible(self.trunc)),
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::polynomial(1, vec![T::one() / self.coeffs[0].clone()]));
            }
            return Err(SeriesError::Unbounded);
        }
        let rel = self.trunc - 1;
        let phi = self.shift(-1).invert_unit()?;
        let mut out = Vec::with_capacity(rel as usize);
        let mut power = Self::one(EXACT);
        for n in 1..=rel {
            power = power.mul_capped(&phi, rel);
            out.push(power.get(n - 1) / T::from_int(n));
        }
        Ok(Self::new(1, out, rel + 1))
    }

    fn power_sum(&self, mut weight: impl FnMut(i64) -> T) -> Result<Self, SeriesError> {
        self.check_positive_valuation()?;
        if self.is_zero() {
            return Ok(Self::zero(self.trunc));
        }
        if self.is_exact() {
            return Err(SeriesError::Unbounded);
        }
        let target = self.trunc;
        let v = self.min_exp;
        let mut acc = Self::zero(target);
        let mut power = Self::one(EXACT);
        let mut n = 1;
        while n * v < target {
            power = power.mul_capped(self, target);
            acc = &acc + &power.scale(&weight(n));
            n += 1;
        }
        Ok(acc)
    }

    /// `log(1 + a)` for `a` of positive valuation.
    pub fn log1p(&self) -> Result<Self, SeriesError> {
        self.power_sum(|n| {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            T::ratio(sign, n)
        })
    }

    /// `exp(a)` for `a` of positive valuation.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let mut inv_fact = vec![T::one()];
        let tail = self.power_sum(|n| {
            while inv_fact.len() <= n as usize {
                let k = inv_fact.len() as i64;
                let next = inv_fact[k as usize - 1].clone() / T::from_int(k);
                inv_fact.push(next);
            }
            inv_fact[n as usize].clone()
        })?;
        Ok(&tail + &Self::one(EXACT))
    }

    /// Square root of a power series with constant term 1.
    pub fn sqrt_unit(&self) -> Result<Self, SeriesError> {
        if self.valuation() != Some(0) || !self.coeffs[0].is_one() {
            return Err(SeriesError::NotNormalizedUnit);
        }
        let shifted = self - &Self::one(EXACT);
        shifted.log1p()?.scale(&T::ratio(1, 2)).exp()
    }

    /// Termwise formal derivative in `ζ`.
    pub fn derivative(&self) -> Self {
        let trunc = if self.is_exact() { EXACT } else { self.trunc - 1 };
        if self.is_zero() {
            return Self::zero(trunc);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * T::from_int(self.min_exp + i as i64))
            .collect();
        Self::new(self.min_exp - 1, coeffs, trunc)
    }
}

impl<T: Scalar> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: Self) -> Series<T> {
        self.combine(rhs, false)
    }
}

impl<T: Scalar> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: Self) -> Series<T> {
        self.combine(rhs, true)
    }
}

impl<T: Scalar> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: Self) -> Series<T> {
        self.mul_capped(rhs, EXACT)
    }
}

impl<T: Scalar> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        if self.trunc != EXACT {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(z^{})", self.trunc)?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
