//! Integer compositions and the combinatorics built on them: descent sets,
//! refinement, shuffles and quasi-shuffles, parity boundaries, odd-min
//! coarsenings, and the coefficients that define the shuffle basis.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("composition parts must be positive, found {0}")]
    NonPositivePart(i64),
    #[error("descent {element} lies outside 1..{n}")]
    DescentOutOfRange { element: usize, n: usize },
    #[error("{beta} is not in the interval below {alpha}")]
    NotInInterval { alpha: Composition, beta: Composition },
    #[error("malformed composition {0:?}")]
    Malformed(String),
}

/// A finite sequence of positive integers.
///
/// Compositions are ordered by degree, then length, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CompositionError> {
        if parts.contains(&0) {
            return Err(CompositionError::NonPositivePart(0));
        }
        Ok(Composition(parts))
    }

    /// Builds a composition from parts already known to be positive.
    ///
    /// Panics on a zero part.
    pub fn from_parts(parts: &[usize]) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "zero part in {parts:?}");
        Composition(parts.to_vec())
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every part is odd (vacuously true for the empty composition).
    pub fn is_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// All ways of writing `self` as a concatenation `βγ`, from `((), self)` to `(self, ())`.
    pub fn deconcatenations(&self) -> impl Iterator<Item = (Composition, Composition)> + '_ {
        (0..=self.0.len()).map(move |i| {
            (
                Composition(self.0[..i].to_vec()),
                Composition(self.0[i..].to_vec()),
            )
        })
    }

    /// Partial sums excluding the total.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut acc = 0;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    /// Inverse of [`Composition::descent_set`] for compositions of `n`.
    pub fn from_descent_set(set: &BTreeSet<usize>, n: usize) -> Result<Self, CompositionError> {
        if let Some(&bad) = set.iter().find(|&&s| s == 0 || s >= n) {
            return Err(CompositionError::DescentOutOfRange { element: bad, n });
        }
        if n == 0 {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &s in set.iter().chain(std::iter::once(&n)) {
            parts.push(s - prev);
            prev = s;
        }
        Ok(Composition(parts))
    }

    /// `self` refines `coarser`: same degree and the descent set of `coarser`
    /// is contained in that of `self`.
    pub fn refines(&self, coarser: &Composition) -> bool {
        self.degree() == coarser.degree() && coarser.descent_set().is_subset(&self.descent_set())
    }

    /// Odd-to-even and even-to-odd boundary positions (1-based).
    pub fn parity_sets(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut ote = BTreeSet::new();
        let mut eto = BTreeSet::new();
        for (i, w) in self.0.windows(2).enumerate() {
            match (w[0] % 2, w[1] % 2) {
                (1, 0) => {
                    ote.insert(i + 1);
                }
                (0, 1) => {
                    eto.insert(i + 1);
                }
                _ => {}
            }
        }
        (ote, eto)
    }

    /// Coarsening of `self` split exactly at its odd-to-even boundaries.
    pub fn odd_min(&self) -> Composition {
        if self.0.is_empty() {
            return Composition::empty();
        }
        let (ote, _) = self.parity_sets();
        let mut parts = Vec::new();
        let mut acc = 0;
        for (i, &p) in self.0.iter().enumerate() {
            acc += p;
            if ote.contains(&(i + 1)) || i + 1 == self.0.len() {
                parts.push(acc);
                acc = 0;
            }
        }
        Composition(parts)
    }

    /// Every `β` with `odd_min(self) ≤ β ≤ self`, finest first, then by
    /// decreasing length and lexicographic order.
    pub fn interval(&self) -> Vec<Composition> {
        let l = self.0.len();
        if l == 0 {
            return vec![Composition::empty()];
        }
        let (ote, _) = self.parity_sets();
        // Boundaries that may be erased without crossing an odd-to-even split.
        let mergeable: Vec<usize> = (1..l).filter(|i| !ote.contains(i)).collect();
        let mut out = Vec::with_capacity(1 << mergeable.len());
        for mask in 0u64..(1u64 << mergeable.len()) {
            let merged: BTreeSet<usize> = mergeable
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &b)| b)
                .collect();
            let mut parts = Vec::new();
            let mut acc = 0;
            for (i, &p) in self.0.iter().enumerate() {
                acc += p;
                if !merged.contains(&(i + 1)) {
                    parts.push(acc);
                    acc = 0;
                }
            }
            out.push(Composition(parts));
        }
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Groups the parts of `self` into the consecutive blocks summing to the
    /// parts of `coarser`. Returns `None` unless `self` refines `coarser`.
    pub fn blocks<'a>(&'a self, coarser: &Composition) -> Option<Vec<&'a [usize]>> {
        if self.degree() != coarser.degree() {
            return None;
        }
        let mut out = Vec::with_capacity(coarser.len());
        let mut start = 0;
        for &target in &coarser.0 {
            let mut acc = 0;
            let mut end = start;
            while acc < target && end < self.0.len() {
                acc += self.0[end];
                end += 1;
            }
            if acc != target {
                return None;
            }
            out.push(&self.0[start..end]);
            start = end;
        }
        Some(out)
    }

    /// The shuffle-basis coefficient `c_α^β`: the product over the blocks of
    /// `β` of `1/(odd! even!)`, counting odd and even parts of `α` in each block.
    pub fn coeff(&self, beta: &Composition) -> Result<Rational, CompositionError> {
        let not_in = || CompositionError::NotInInterval {
            alpha: self.clone(),
            beta: beta.clone(),
        };
        if !beta.refines(&self.odd_min()) {
            return Err(not_in());
        }
        let blocks = self.blocks(beta).ok_or_else(not_in)?;
        let mut denom = BigInt::one();
        for block in blocks {
            let odd = block.iter().filter(|p| *p % 2 == 1).count();
            denom *= factorial(odd) * factorial(block.len() - odd);
        }
        Ok(Rational::new(BigInt::one(), denom))
    }

    /// Parts sorted decreasingly together with `z = Π m_i! i^{m_i}`.
    pub fn sort_and_z(&self) -> (Composition, BigInt) {
        let mut sorted = self.0.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &sorted {
            *mult.entry(p).or_default() += 1;
        }
        let mut z = BigInt::one();
        for (part, m) in mult {
            z *= factorial(m) * BigInt::from(part).pow(m as u32);
        }
        (Composition(sorted), z)
    }

    pub fn sorted_decreasing(&self) -> Composition {
        let mut sorted = self.0.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Composition(sorted)
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Composition {
    type Err = CompositionError;

    /// Parses the bracketed form `[3,1,2]`; `[]` is the empty composition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| CompositionError::Malformed(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let v: i64 = tok
                .trim()
                .parse()
                .map_err(|_| CompositionError::Malformed(s.to_string()))?;
            if v <= 0 {
                return Err(CompositionError::NonPositivePart(v));
            }
            parts.push(v as usize);
        }
        Ok(Composition(parts))
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = CompositionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

/// A multiset of compositions with explicit multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompositionMultiset {
    entries: BTreeMap<Composition, u64>,
}

impl CompositionMultiset {
    pub fn insert(&mut self, c: Composition, mult: u64) {
        if mult > 0 {
            *self.entries.entry(c).or_default() += mult;
        }
    }

    pub fn multiplicity(&self, c: &Composition) -> u64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    /// Size counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, u64)> {
        self.entries.iter().map(|(c, &m)| (c, m))
    }
}

impl FromIterator<(Composition, u64)> for CompositionMultiset {
    fn from_iter<I: IntoIterator<Item = (Composition, u64)>>(iter: I) -> Self {
        let mut m = CompositionMultiset::default();
        for (c, k) in iter {
            m.insert(c, k);
        }
        m
    }
}

/// All interleavings of `a` and `b` that keep the internal order of each,
/// one entry per interleaving (repeats encode multiplicity).
pub fn interleavings<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.len() + b.len());
    interleave_rec(a, b, &mut cur, &mut out);
    out
}

fn interleave_rec<T: Clone>(a: &[T], b: &[T], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if a.is_empty() || b.is_empty() {
        let mut done = cur.clone();
        done.extend_from_slice(a);
        done.extend_from_slice(b);
        out.push(done);
        return;
    }
    cur.push(a[0].clone());
    interleave_rec(&a[1..], b, cur, out);
    cur.pop();
    cur.push(b[0].clone());
    interleave_rec(a, &b[1..], cur, out);
    cur.pop();
}

pub fn shuffle(alpha: &Composition, beta: &Composition) -> CompositionMultiset {
    interleavings(&alpha.0, &beta.0)
        .into_iter()
        .map(|w| (Composition(w), 1))
        .collect()
}

/// Quasi-shuffle, via `u ⧢̄ v = u₁(u′⧢̄v) + v₁(u⧢̄v′) + (u₁+v₁)(u′⧢̄v′)`.
pub fn quasi_shuffle(alpha: &Composition, beta: &Composition) -> CompositionMultiset {
    let mut out = CompositionMultiset::default();
    let mut cur = Vec::new();
    quasi_rec(&alpha.0, &beta.0, &mut cur, &mut out);
    out
}

fn quasi_rec(a: &[usize], b: &[usize], cur: &mut Vec<usize>, out: &mut CompositionMultiset) {
    if a.is_empty() || b.is_empty() {
        let mut done = cur.clone();
        done.extend_from_slice(a);
        done.extend_from_slice(b);
        out.insert(Composition(done), 1);
        return;
    }
    cur.push(a[0]);
    quasi_rec(&a[1..], b, cur, out);
    cur.pop();
    cur.push(b[0]);
    quasi_rec(a, &b[1..], cur, out);
    cur.pop();
    cur.push(a[0] + b[0]);
    quasi_rec(&a[1..], &b[1..], cur, out);
    cur.pop();
}

/// Compositions of `n`, optionally restricted to all-odd parts, in the
/// canonical composition order.
pub fn enumerate(n: usize, odd_only: bool) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    enumerate_rec(n, odd_only, &mut cur, &mut out);
    out.sort();
    out
}

fn enumerate_rec(rem: usize, odd_only: bool, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if rem == 0 {
        out.push(Composition(cur.clone()));
        return;
    }
    for p in 1..=rem {
        if odd_only && p % 2 == 0 {
            continue;
        }
        cur.push(p);
        enumerate_rec(rem - p, odd_only, cur, out);
        cur.pop();
    }
}

/// Every composition of degree at most `max_degree`, in canonical order.
pub fn enumerate_up_to(max_degree: usize) -> Vec<Composition> {
    (0..=max_degree).flat_map(|n| enumerate(n, false)).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
