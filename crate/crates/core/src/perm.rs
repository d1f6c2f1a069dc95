//! Finite-support permutations of the positive integers and ordered tuples
//! of permutations written in cycle notation.
//!
//! Products are read left to right: in `p.then(&q)` the permutation `p` is
//! applied first. Under this convention the tuple `(1 2);(1 3);(5 6);(1 6)`
//! multiplies out to the 5-cycle `(1 2 3 6 5)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::partition::Partition;

/// A bijection of the positive integers moving finitely many points.
/// Only moved points are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: BTreeMap<usize, usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds the product of disjoint cycles. Points must be positive and no
    /// point may repeat across the cycles.
    pub fn from_cycles<C: AsRef<[usize]>>(cycles: &[C]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for cycle in cycles {
            let cycle = cycle.as_ref();
            if cycle.len() < 2 {
                return Err(domain(format!("cycle {cycle:?} has length < 2")));
            }
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 {
                    return Err(domain("points are positive integers"));
                }
                let y = cycle[(i + 1) % cycle.len()];
                if map.insert(x, y).is_some() {
                    return Err(domain(format!("point {x} repeated")));
                }
            }
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of {1..n} from one-line notation (`image[i-1]` is
    /// the image of `i`).
    pub fn from_images(image: &[usize]) -> Self {
        let map = image
            .iter()
            .enumerate()
            .filter(|&(i, &y)| i + 1 != y)
            .map(|(i, &y)| (i + 1, y))
            .collect();
        Permutation { map }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map.get(&x).copied().unwrap_or(x)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn max_point(&self) -> usize {
        self.map.keys().next_back().copied().unwrap_or(0)
    }

    /// Left-to-right product: `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        let mut map = BTreeMap::new();
        for x in self.map.keys().chain(other.map.keys()) {
            let y = other.apply(self.apply(*x));
            if y != *x {
                map.insert(*x, y);
            }
        }
        Permutation { map }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.map.iter().map(|(&x, &y)| (y, x)).collect(),
        }
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.map.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.apply(start);
            while x != start {
                seen.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type padded with fixed points up to `ambient`. An ambient size of
    /// zero returns the nontrivial cycle lengths only.
    pub fn cycle_type(&self, ambient: usize) -> Result<Partition> {
        let lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let nontrivial = Partition::new(lengths)?;
        if ambient == 0 {
            return Ok(nontrivial);
        }
        if self.max_point() > ambient {
            return Err(domain(format!(
                "permutation moves {} which is outside S_{ambient}",
                self.max_point()
            )));
        }
        nontrivial.pad_ones(ambient)
    }
}

/// Left-to-right composition: the result maps `x` to `q(p(x))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Permutation {
    p.then(q)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for cycle in self.cycles() {
            write_cycle(f, &cycle)?;
        }
        Ok(())
    }
}

fn write_cycle(f: &mut fmt::Formatter<'_>, cycle: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in cycle.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// A single cycle as written, e.g. `[1, 2, 3]` for `(1 2 3)`.
pub type Cycle = Vec<usize>;

/// An ordered tuple of permutations, each kept as the list of cycles it was
/// written with. The order of cycles and their starting points matter for
/// the reduction procedure, so they are preserved verbatim.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CycleTuple {
    entries: Vec<Vec<Cycle>>,
}

impl CycleTuple {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates disjointness within each entry and cycle length >= 2.
    pub fn new(entries: Vec<Vec<Cycle>>) -> Result<Self> {
        for entry in &entries {
            if entry.is_empty() {
                return Err(domain("tuple entry without cycles"));
            }
            Permutation::from_cycles(entry)?;
        }
        Ok(CycleTuple { entries })
    }

    /// A tuple of single-cycle entries.
    pub fn from_cycles(cycles: Vec<Cycle>) -> Result<Self> {
        Self::new(cycles.into_iter().map(|c| vec![c]).collect())
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<Vec<Cycle>>) -> Self {
        CycleTuple { entries }
    }

    pub fn entries(&self) -> &[Vec<Cycle>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry_permutation(&self, i: usize) -> Permutation {
        Permutation::from_cycles(&self.entries[i]).expect("validated on construction")
    }

    /// Left-to-right product of all entries.
    pub fn product(&self) -> Permutation {
        (0..self.entries.len()).fold(Permutation::identity(), |acc, i| {
            acc.then(&self.entry_permutation(i))
        })
    }

    /// Occurrence count of every point across all written cycles.
    pub fn occurrences(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for x in self.entries.iter().flatten().flatten() {
            *counts.entry(*x).or_insert(0) += 1;
        }
        counts
    }

    /// The symbol: occurrence counts sorted decreasingly.
    pub fn symbol(&self) -> Partition {
        Partition::new(self.occurrences().into_values().collect()).expect("counts are positive")
    }

    /// Total number of points written, with multiplicity.
    pub fn points_written(&self) -> usize {
        self.entries.iter().flatten().map(Vec::len).sum()
    }

    /// Concatenation of two tuples.
    pub fn concat(&self, other: &CycleTuple) -> CycleTuple {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        CycleTuple { entries }
    }

    /// Applies a relabelling of the ground set to every written point.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> CycleTuple {
        CycleTuple {
            entries: self
                .entries
                .iter()
                .map(|e| e.iter().map(|c| c.iter().map(|&x| f(x)).collect()).collect())
                .collect(),
        }
    }
}

/// Left-to-right product of a tuple.
pub fn tuple_product(tuple: &CycleTuple) -> Permutation {
    tuple.product()
}

/// Symbol of a tuple.
pub fn tuple_symbol(tuple: &CycleTuple) -> Partition {
    tuple.symbol()
}

impl fmt::Display for CycleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for cycle in entry {
                write_cycle(f, cycle)?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycleTuple {
    type Err = Error;

    /// Parses `"(1 2)(3 4);(1 3)"`. The empty string is the empty tuple.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(CycleTuple::empty());
        }
        let entries = s
            .split(';')
            .map(parse_entry)
            .collect::<Result<Vec<_>>>()?;
        CycleTuple::new(entries).map_err(|e| match e {
            Error::Domain(msg) => Error::Parse(msg),
            other => other,
        })
    }
}

fn parse_entry(text: &str) -> Result<Vec<Cycle>> {
    let bad = |why: &str| Error::Parse(format!("{why} in {text:?}"));
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty entry"));
    }
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = rest.find(')').ok_or_else(|| bad("unclosed '('"))?;
        let body = &rest[..close];
        if body.contains('(') {
            return Err(bad("nested '('"));
        }
        let cycle = body
            .split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(0) | Err(_) => Err(bad("bad point")),
                Ok(v) => Ok(v),
            })
            .collect::<Result<Vec<_>>>()?;
        if cycle.len() < 2 {
            return Err(bad("cycle of length < 2"));
        }
        cycles.push(cycle);
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Lazily yields every permutation of S_n of cycle type `class`, in
/// lexicographic order of one-line notation.
pub fn enumerate_class(n: usize, class: &Partition) -> Result<ClassIter> {
    if class.weight() != n {
        return Err(domain(format!("{class} is not a partition of {n}")));
    }
    Ok(ClassIter {
        target: class.clone(),
        next: Some((1..=n).collect()),
    })
}

#[derive(Clone, Debug)]
pub struct ClassIter {
    target: Partition,
    next: Option<Vec<usize>>,
}

impl Iterator for ClassIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let current = self.next.take()?;
            let mut successor = current.clone();
            if next_lex_permutation(&mut successor) {
                self.next = Some(successor);
            }
            if one_line_cycle_type(&current) == self.target {
                return Some(Permutation::from_images(&current));
            }
        }
    }
}

fn next_lex_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).expect("exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Cycle type of a permutation of {1..n} in one-line notation.
pub(crate) fn one_line_cycle_type(image: &[usize]) -> Partition {
    let mut seen = vec![false; image.len()];
    let mut lengths = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = image[x] - 1;
            len += 1;
        }
        lengths.push(len);
    }
    Partition::new(lengths).expect("cycle lengths are positive")
}

/// Every permutation of S_n grouped by cycle type. Handy for oracles that
/// sweep over many classes of the same group.
pub fn classes_of(n: usize) -> HashMap<Partition, Vec<Permutation>> {
    let mut out: HashMap<Partition, Vec<Permutation>> = HashMap::new();
    let mut image: Vec<usize> = (1..=n).collect();
    loop {
        out.entry(one_line_cycle_type(&image))
            .or_default()
            .push(Permutation::from_images(&image));
        if !next_lex_permutation(&mut image) {
            break;
        }
    }
    out
}
