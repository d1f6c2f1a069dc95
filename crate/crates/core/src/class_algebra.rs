//! Counting tuples of permutations with prescribed classes and product.
//!
//! The character-theoretic count is the Frobenius formula: the number of
//! tuples `(g_1, ..., g_m)` with `g_j` in class `C_j` and `g_1 ... g_m = w` is
//!
//! ```text
//! (Π_j |C_j| / |G|) · Σ_χ χ(C_1) ... χ(C_m) χ(w) / χ(1)^(m-1)
//! ```
//!
//! Every count here has an exhaustive counterpart so the two can be checked
//! against each other.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::character::CharacterTable;
use crate::error::{domain, Error, Result};
use crate::partition::{factorial, falling_factorial, Partition};
use crate::perm::{classes_of, Permutation};
use crate::radical::as_natural;

/// A class ν (written without fixed points, or padded) repeated `reps` times.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    pub class: Partition,
    pub reps: usize,
}

impl ClassSpec {
    pub fn new(class: Partition, reps: usize) -> Self {
        ClassSpec { class, reps }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.class, self.reps)
    }
}

/// Renders a spec list as `2^2;3^1`.
pub fn format_specs(specs: &[ClassSpec]) -> String {
    specs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// The product must equal this permutation.
    Element(Permutation),
    /// The product must lie in this class (a partition of n).
    Class(Partition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCountQuery {
    pub n: usize,
    pub specs: Vec<ClassSpec>,
    pub target: Target,
}

impl TupleCountQuery {
    /// The class sequence C_1, ..., C_m, each padded to n.
    fn classes(&self) -> Result<Vec<Partition>> {
        expand(self.n, &self.specs)
    }
}

fn expand(n: usize, specs: &[ClassSpec]) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for spec in specs {
        let padded = spec.class.pad_ones(n)?;
        out.extend(std::iter::repeat_n(padded, spec.reps));
    }
    Ok(out)
}

/// Limits on exhaustive enumeration. Exceeding them is refused rather than
/// truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceBounds {
    pub max_n: usize,
    pub max_len: usize,
}

impl Default for BruteForceBounds {
    fn default() -> Self {
        BruteForceBounds { max_n: 6, max_len: 4 }
    }
}

impl BruteForceBounds {
    fn admit(&self, n: usize, len: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Refused(format!(
                "exhaustive enumeration over S_{n} exceeds max_n = {}",
                self.max_n
            )));
        }
        if len > self.max_len {
            return Err(Error::Refused(format!(
                "tuple length {len} exceeds max_len = {}",
                self.max_len
            )));
        }
        Ok(())
    }
}

/// Character-theoretic count of tuples from the query's classes whose
/// product is the target. A class target is answered as (count for one
/// representative) x (class size).
pub fn frobenius_count(query: &TupleCountQuery, table: &CharacterTable) -> Result<BigUint> {
    let n = query.n;
    if table.n() != n {
        return Err(domain(format!("table is for S_{}, query for S_{n}", table.n())));
    }
    let classes = query.classes()?;
    match &query.target {
        Target::Element(w) => element_count(&classes, &w.cycle_type(n)?, table),
        Target::Class(delta) => {
            if delta.weight() != n {
                return Err(domain(format!("{delta} is not a partition of {n}")));
            }
            Ok(element_count(&classes, delta, table)? * delta.class_size())
        }
    }
}

fn element_count(
    classes: &[Partition],
    target_class: &Partition,
    table: &CharacterTable,
) -> Result<BigUint> {
    let n = table.n();
    let m = classes.len() as i32;
    let cols = classes
        .iter()
        .map(|c| table.index_of(c))
        .collect::<Result<Vec<_>>>()?;
    let target_col = table.index_of(target_class)?;

    let mut sum = BigRational::zero();
    for row in 0..table.partitions().len() {
        let mut numer = BigInt::from(table.value_at(row, target_col));
        for &c in &cols {
            numer *= table.value_at(row, c);
        }
        if numer.is_zero() {
            continue;
        }
        let dim = BigRational::from_integer(BigInt::from(table.dim_at(row)));
        sum += BigRational::from_integer(numer) * pow_signed(&dim, 1 - m);
    }
    let sizes: BigUint = classes.iter().map(Partition::class_size).product();
    let count = sum * BigRational::new(BigInt::from(sizes), BigInt::from(factorial(n)));
    as_natural(&count).ok_or_else(|| {
        Error::Consistency(format!("Frobenius count {count} is not a natural number"))
    })
}

fn pow_signed(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Exhaustive count of the same quantity as [`frobenius_count`].
pub fn brute_force_count(query: &TupleCountQuery, bounds: &BruteForceBounds) -> Result<BigUint> {
    let classes = query.classes()?;
    bounds.admit(query.n, classes.len())?;
    let by_class = classes_of(query.n);
    let members: Vec<&[Permutation]> = classes
        .iter()
        .map(|c| by_class.get(c).map(Vec::as_slice).unwrap_or(&[]))
        .collect();
    let n = query.n;
    let mut count = 0u64;
    match &query.target {
        Target::Element(w) => {
            if w.max_point() > n {
                return Err(domain(format!("{w} is not in S_{n}")));
            }
            walk(&members, &Permutation::identity(), &mut |p| {
                if p == w {
                    count += 1;
                }
            });
        }
        Target::Class(delta) => {
            if delta.weight() != n {
                return Err(domain(format!("{delta} is not a partition of {n}")));
            }
            walk(&members, &Permutation::identity(), &mut |p| {
                if &p.cycle_type(n).expect("inside S_n") == delta {
                    count += 1;
                }
            });
        }
    }
    Ok(BigUint::from(count))
}

/// Visits the left-to-right product of every tuple drawn from `members`.
fn walk(members: &[&[Permutation]], prefix: &Permutation, visit: &mut impl FnMut(&Permutation)) {
    match members.split_first() {
        None => visit(prefix),
        Some((first, rest)) => {
            for g in *first {
                walk(rest, &prefix.then(g), visit);
            }
        }
    }
}

fn check_moment_hypotheses(n: usize, specs: &[ClassSpec]) -> Result<()> {
    for spec in specs {
        let nu = &spec.class;
        if nu.is_empty() || nu.weight() >= n || nu.multiplicity(1) != 0 {
            return Err(domain(format!(
                "class {nu} must be nonempty, have no parts equal to 1 and weight below {n}"
            )));
        }
    }
    Ok(())
}

/// The B quantity: the number of tuples with entries from the given classes
/// whose product lies in class δ, evaluated through the character table as
///
/// ```text
/// Π_i ([n]_{n(ν_i)} / c(ν_i))^{k_i} / n! · Σ_λ Π_i χ^λ(ν_i)^{k_i} / (f^λ)^{k-1} · χ^λ(δ) · n!/c(δ)
/// ```
pub fn b_count(
    n: usize,
    specs: &[ClassSpec],
    delta: &Partition,
    table: &CharacterTable,
) -> Result<BigUint> {
    check_moment_hypotheses(n, specs)?;
    if delta.weight() != n || table.n() != n {
        return Err(domain(format!("{delta} and the table must both be of size {n}")));
    }
    let k: usize = specs.iter().map(|s| s.reps).sum();
    let cols = specs
        .iter()
        .map(|s| table.index_of(&s.class.pad_ones(n)?))
        .collect::<Result<Vec<_>>>()?;
    let delta_col = table.index_of(delta)?;

    let mut sum = BigRational::zero();
    for row in 0..table.partitions().len() {
        let mut numer = BigInt::from(table.value_at(row, delta_col));
        for (spec, &c) in specs.iter().zip(&cols) {
            numer *= num_traits::pow(BigInt::from(table.value_at(row, c)), spec.reps);
        }
        if numer.is_zero() {
            continue;
        }
        let dim = BigRational::from_integer(BigInt::from(table.dim_at(row)));
        sum += BigRational::from_integer(numer) * pow_signed(&dim, 1 - k as i32);
    }

    let mut prefactor = BigRational::one();
    for spec in specs {
        let (c, _) = spec.class.weights();
        let size = BigRational::new(
            BigInt::from(falling_factorial(n, spec.class.weight())),
            BigInt::from(c),
        );
        prefactor *= num_traits::pow(size, spec.reps);
    }
    let (c_delta, _) = delta.weights();
    // the n! of the prefactor cancels against n!/c(δ)
    let value = prefactor * sum / BigRational::from_integer(BigInt::from(c_delta));
    as_natural(&value)
        .ok_or_else(|| Error::Consistency(format!("B count {value} is not a natural number")))
}

/// Exhaustive tally of the cycle type of the product over every tuple with
/// entries from the given classes (padded to n). Sums to Π |C_i|^{k_i}.
pub fn product_class_tally(
    n: usize,
    specs: &[ClassSpec],
    bounds: &BruteForceBounds,
) -> Result<HashMap<Partition, BigUint>> {
    let classes = expand(n, specs)?;
    bounds.admit(n, classes.len())?;
    let by_class = classes_of(n);
    let members: Vec<&[Permutation]> = classes
        .iter()
        .map(|c| by_class.get(c).map(Vec::as_slice).unwrap_or(&[]))
        .collect();
    let mut tally: HashMap<Permutation, u64> = HashMap::new();
    walk(&members, &Permutation::identity(), &mut |p| {
        *tally.entry(p.clone()).or_insert(0) += 1;
    });
    let mut out: HashMap<Partition, BigUint> = HashMap::new();
    for (p, c) in tally {
        *out.entry(p.cycle_type(n)?).or_default() += BigUint::from(c);
    }
    Ok(out)
}

/// C_{μ,δ,ν,k}: tuples over S_ground with entries from the given classes,
/// symbol exactly μ and product of cycle type δ (fixed points ignored on
/// both sides).
pub fn c_count(
    mu: &Partition,
    delta: &Partition,
    specs: &[ClassSpec],
    ground: usize,
    bounds: &BruteForceBounds,
) -> Result<BigUint> {
    let classes = expand(ground, specs)?;
    bounds.admit(ground, classes.len())?;
    if classes.iter().any(|c| c.multiplicity(1) == ground) {
        return Err(domain("identity entries have no cycles to write"));
    }
    let by_class = classes_of(ground);
    let members: Vec<&[Permutation]> = classes
        .iter()
        .map(|c| by_class.get(c).map(Vec::as_slice).unwrap_or(&[]))
        .collect();
    let target = delta.strip_ones();
    let mut count = 0u64;
    let mut occurrences = vec![0usize; ground + 1];
    symbol_walk(&members, &Permutation::identity(), &mut occurrences, &mut |p, occ| {
        if p.cycle_type(0).expect("no ambient") != target {
            return;
        }
        let counts: Vec<usize> = occ.iter().copied().filter(|&c| c > 0).collect();
        if Partition::new(counts).expect("positive") == *mu {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

fn symbol_walk(
    members: &[&[Permutation]],
    prefix: &Permutation,
    occurrences: &mut [usize],
    visit: &mut impl FnMut(&Permutation, &[usize]),
) {
    match members.split_first() {
        None => visit(prefix, occurrences),
        Some((first, rest)) => {
            for g in *first {
                for x in g.support() {
                    occurrences[x] += 1;
                }
                symbol_walk(rest, &prefix.then(g), occurrences, visit);
                for x in g.support() {
                    occurrences[x] -= 1;
                }
            }
        }
    }
}
