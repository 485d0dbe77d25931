//! Integer partitions, their bead (`h`) encoding, and symmetric-group
//! characters via the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    Malformed(Vec<u32>),
    #[error("encoding length {n} is smaller than the partition length {len}")]
    TooShort { n: usize, len: usize },
    #[error("size mismatch: |λ| = {lambda}, |μ| = {mu}")]
    SizeMismatch { lambda: u32, mu: u32 },
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(parts))
        } else {
            Err(PartitionError::Malformed(parts))
        }
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_parts(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_r`: how many parts equal `r`.
    pub fn multiplicity(&self, r: u32) -> usize {
        self.0.iter().filter(|&&p| p == r).count()
    }

    /// `(r, m_r)` for every part value present, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((r, m)) if *r == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `Π_r m_r!`, the order of the stabilizer of the part sequence.
    pub fn automorphisms(&self) -> u64 {
        self.multiplicities()
            .iter()
            .map(|&(_, m)| (1..=m as u64).product::<u64>())
            .product()
    }

    /// Multiset union, kept sorted.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in lexicographically descending order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Strictly decreasing positions `h_i = λ_i - i + N` of the `N`-padded partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HEncoding {
    pub n: usize,
    pub h: Vec<u32>,
}

pub fn h_encoding(lambda: &Partition, n: usize) -> Result<HEncoding, PartitionError> {
    if n < lambda.len() {
        return Err(PartitionError::TooShort {
            n,
            len: lambda.len(),
        });
    }
    let h = (0..n)
        .map(|i| lambda.0.get(i).copied().unwrap_or(0) + (n - 1 - i) as u32)
        .collect();
    Ok(HEncoding { n, h })
}

fn factorial_int(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `|C_μ| = |μ|! / Π_r m_r! r^{m_r}`.
pub fn class_size(mu: &Partition) -> BigInt {
    let mut den = BigInt::one();
    for (r, m) in mu.multiplicities() {
        den *= factorial_int(m as u32) * BigInt::from(r).pow(m as u32);
    }
    factorial_int(mu.size()) / den
}

/// Dimension of the irreducible representation `λ` computed from the bead
/// positions: `|λ|! Π_{i<j} (h_i - h_j) / Π h_i!`. Independent of `n`.
pub fn dim_irrep(lambda: &Partition, n: usize) -> Result<BigInt, PartitionError> {
    let enc = h_encoding(lambda, n)?;
    let mut num = factorial_int(lambda.size());
    for i in 0..enc.h.len() {
        for j in i + 1..enc.h.len() {
            num *= enc.h[i] - enc.h[j];
        }
    }
    let den = enc.h.iter().fold(BigInt::one(), |acc, &h| acc * factorial_int(h));
    Ok(num / den)
}

/// `χ_λ(C_μ)` by recursive border-strip removal.
///
/// Strips are removed in the order of `μ`'s parts, largest first. In bead
/// language removing a strip of length `r` moves a bead from `h` to `h - r`;
/// the sign is `(-1)^{beads jumped over}`, which is the strip height.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, PartitionError> {
    if lambda.size() != mu.size() {
        return Err(PartitionError::SizeMismatch {
            lambda: lambda.size(),
            mu: mu.size(),
        });
    }
    let beads = h_encoding(lambda, lambda.len())?.h;
    Ok(mn_beads(&beads, mu.parts()))
}

fn mn_beads(beads: &[u32], strips: &[u32]) -> i64 {
    let Some((&r, rest)) = strips.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &h) in beads.iter().enumerate() {
        if h < r || beads.contains(&(h - r)) {
            continue;
        }
        let target = h - r;
        let jumped = beads.iter().filter(|&&b| b > target && b < h).count();
        let mut next = beads.to_vec();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beads(&next, rest);
    }
    total
}

/// The full character table of `S_n`, filled once and read thereafter.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: u32,
    partitions: Vec<Partition>,
    values: HashMap<(Partition, Partition), i64>,
}

impl CharacterTable {
    pub fn new(n: u32) -> Self {
        let partitions = partitions_of(n);
        let mut values = HashMap::new();
        for lambda in &partitions {
            for mu in &partitions {
                let chi = character(lambda, mu).expect("same size");
                values.insert((lambda.clone(), mu.clone()), chi);
            }
        }
        Self {
            n,
            partitions,
            values,
        }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<i64> {
        self.values.get(&(lambda.clone(), mu.clone())).copied()
    }
}

/// Central character `f_λ(C_μ) = |C_μ| χ_λ(C_μ) / dim λ`.
pub fn f_central(lambda: &Partition, mu: &Partition) -> Result<Rational, PartitionError> {
    let chi = character(lambda, mu)?;
    let dim = dim_irrep(lambda, lambda.len())?;
    Ok(Rational::new(class_size(mu) * chi, dim))
}

/// `f_λ(C_2)` as the content sum `Σ_i λ_i (λ_i - 2i + 1) / 2`.
pub fn f_c2_content(lambda: &Partition) -> Rational {
    let mut twice = BigInt::zero();
    for (i, &l) in lambda.parts().iter().enumerate() {
        let l = i64::from(l);
        twice += l * (l - 2 * (i as i64 + 1) + 1);
    }
    Rational::new(twice, BigInt::from(2))
}

/// The same quantity from bead positions:
/// `½Σh_i² − (N−½)Σh_i + N(N−1)(2N−1)/6`.
pub fn f_c2_from_h(enc: &HEncoding) -> Rational {
    let n = enc.n as i64;
    let sum: i64 = enc.h.iter().map(|&h| i64::from(h)).sum();
    let sum_sq: i64 = enc.h.iter().map(|&h| i64::from(h) * i64::from(h)).sum();
    let q = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
    q(sum_sq, 2) - q((2 * n - 1) * sum, 2) + q(n * (n - 1) * (2 * n - 1), 6)
}
