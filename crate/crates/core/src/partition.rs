//! Integer partitions, their multiplicity statistics and the factorial
//! helpers used throughout the crate.
//!
//! A partition is written canonically as its parts joined by `+`, largest
//! first (`"3+1+1"`). The empty string denotes the unique partition of 0.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{domain, Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Size, length and part multiplicities of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: usize,
    pub length: usize,
    /// part value -> number of times it occurs
    pub multiplicities: BTreeMap<usize, usize>,
}

impl Partition {
    /// Builds a partition from arbitrary positive parts, sorting them.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be positive and sorted.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The single-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// n(λ), the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// l(λ), the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// l_i(λ), the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            weight: self.weight(),
            length: self.len(),
            multiplicities: self.multiplicities(),
        }
    }

    /// The transpose partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Returns `(c(λ), d(λ))` with c(λ) = Π l_i! · i^{l_i} and d(λ) = Π l_i!.
    pub fn weights(&self) -> (BigUint, BigUint) {
        let mut c = BigUint::one();
        let mut d = BigUint::one();
        for (part, mult) in self.multiplicities() {
            let f = factorial(mult);
            c *= &f * BigUint::from(part).pow(mult as u32);
            d *= f;
        }
        (c, d)
    }

    /// Size of the conjugacy class of cycle type λ in S_{n(λ)}, i.e. n!/c(λ).
    pub fn class_size(&self) -> BigUint {
        let (c, _) = self.weights();
        factorial(self.weight()) / c
    }

    /// Removes every part equal to 1.
    pub fn strip_ones(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|&p| p > 1).collect(),
        }
    }

    /// Appends parts equal to 1 until the weight is `n`.
    pub fn pad_ones(&self, n: usize) -> Result<Partition> {
        let w = self.weight();
        if n < w {
            return Err(domain(format!(
                "cannot pad partition {self} of weight {w} to {n}"
            )));
        }
        let mut parts = self.parts.clone();
        parts.extend(std::iter::repeat_n(1, n - w));
        Ok(Partition { parts })
    }

    /// Iterates over all partitions of `n` in reverse-lexicographic order.
    pub fn all(n: usize) -> Partitions {
        Partitions::new(n)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split('+')
            .map(|tok| {
                let tok = tok.trim();
                match tok.parse::<usize>() {
                    Ok(0) => Err(Error::Parse(format!("zero part in {s:?}"))),
                    Ok(v) => Ok(v),
                    Err(_) => Err(Error::Parse(format!("bad part {tok:?} in {s:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Reverse-lexicographic partition iterator: `(n), (n-1,1), ..., (1^n)`.
#[derive(Clone, Debug)]
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Partitions {
    fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions { next: Some(first) }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Find the rightmost part greater than one, decrement it and refill
        // the tail greedily with parts no larger than the decremented value.
        let mut parts = current.clone();
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let cap = last - 1;
            parts.push(cap);
            let mut rest = ones + 1;
            while rest > 0 {
                let take = rest.min(cap);
                parts.push(take);
                rest -= take;
            }
            self.next = Some(parts);
        }
        Some(Partition::from_sorted(current))
    }
}

/// All partitions of `n`, collected.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    Partition::all(n).collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// n(n-1)...(n-m+1); zero when m > n.
pub fn falling_factorial(n: usize, m: usize) -> BigUint {
    if m > n {
        return BigUint::ZERO;
    }
    ((n - m + 1)..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// m!! = m(m-2)(m-4)...; 0!! = 1.
pub fn double_factorial(m: usize) -> BigUint {
    (1..=m)
        .rev()
        .step_by(2)
        .fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
