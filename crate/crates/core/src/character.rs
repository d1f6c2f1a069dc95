//! Irreducible characters of S_n.
//!
//! Single values come from the Murnaghan–Nakayama rule with memoization
//! ([`MnCache`]). Full tables are built column by column: for a class
//! `mu = (m_1, m_2, ...)` the signed sum over chains of rim hooks of sizes
//! `m_1, m_2, ...` is accumulated by *adding* hooks to the empty shape, and
//! classes that share leading parts share the partial sums. Shapes are
//! handled through beta-sets, where adding or removing an `r`-hook moves a
//! bead by `r` positions and the sign counts the beads jumped over.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::partition::{factorial, Partition};

/// Largest n for which [`CharacterTable::build`] is supported. Every value
/// is bounded by f^λ ≤ sqrt(n!), which fits an `i64` well past this point;
/// the bound keeps the dense table within a few hundred megabytes.
pub const MAX_TABLE_N: usize = 28;

/// Beta-set of `shape` with `rows` beads (`rows >= shape.len()`), largest
/// first.
fn beta_set(shape: &[usize], rows: usize) -> Vec<usize> {
    (0..rows)
        .map(|i| shape.get(i).copied().unwrap_or(0) + (rows - 1 - i))
        .collect()
}

fn shape_from_beta(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let rows = beta.len();
    let parts = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (rows - 1 - i))
        .filter(|&p| p > 0)
        .collect();
    Partition::from_sorted(parts)
}

/// Every way of removing a rim hook of size `r`, with its sign.
pub fn remove_rim_hooks(shape: &Partition, r: usize) -> Vec<(Partition, i64)> {
    let beta = beta_set(shape.parts(), shape.len());
    let mut out = Vec::new();
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut moved = beta.clone();
        moved[k] = b - r;
        out.push((shape_from_beta(moved), sign(jumped)));
    }
    out
}

/// Every way of adding a rim hook of size `r`, with its sign.
pub fn add_rim_hooks(shape: &Partition, r: usize) -> Vec<(Partition, i64)> {
    let beta = beta_set(shape.parts(), shape.len() + r);
    let mut out = Vec::new();
    for (k, &b) in beta.iter().enumerate() {
        if beta.contains(&(b + r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b && x < b + r).count();
        let mut moved = beta.clone();
        moved[k] = b + r;
        out.push((shape_from_beta(moved), sign(jumped)));
    }
    out
}

fn sign(height: usize) -> i64 {
    if height % 2 == 0 {
        1
    } else {
        -1
    }
}

/// f^λ by the hook length formula.
pub fn hook_dimension(shape: &Partition) -> BigUint {
    let conj = shape.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(shape.weight()) / hooks
}

/// Memoized Murnaghan–Nakayama evaluation, keyed on (remaining shape,
/// remaining class). Parts of the class are stripped largest first.
#[derive(Debug, Default)]
pub struct MnCache {
    memo: HashMap<(Partition, Partition), i64>,
}

impl MnCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn character(&mut self, shape: &Partition, class: &Partition) -> Result<i64> {
        if shape.weight() != class.weight() {
            return Err(domain(format!(
                "character of {shape} at {class}: weights differ"
            )));
        }
        self.eval(shape, class.parts()).ok_or_else(|| {
            Error::Refused(format!("character of {shape} at {class} exceeds 64 bits"))
        })
    }

    fn eval(&mut self, shape: &Partition, class: &[usize]) -> Option<i64> {
        let Some((&r, rest)) = class.split_first() else {
            return Some(1);
        };
        let key = (shape.clone(), Partition::from_sorted(class.to_vec()));
        if let Some(&v) = self.memo.get(&key) {
            return Some(v);
        }
        let mut total = 0i64;
        for (smaller, s) in remove_rim_hooks(shape, r) {
            total = total.checked_add(s.checked_mul(self.eval(&smaller, rest)?)?)?;
        }
        self.memo.insert(key, total);
        Some(total)
    }
}

/// χ^λ(μ) by the Murnaghan–Nakayama rule.
pub fn mn_character(shape: &Partition, class: &Partition) -> Result<i64> {
    MnCache::new().character(shape, class)
}

/// The full character table of S_n, rows and columns in reverse-lex order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// row-major: `values[row * p + col]` is χ^{row}(col)
    values: Vec<i64>,
    colsums: Vec<i128>,
}

impl CharacterTable {
    pub fn build(n: usize) -> Result<Self> {
        if n > MAX_TABLE_N {
            return Err(Error::Refused(format!(
                "character tables are limited to n <= {MAX_TABLE_N}"
            )));
        }
        let partitions: Vec<Partition> = Partition::all(n).collect();
        let index: HashMap<Partition, usize> = partitions
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let p = partitions.len();
        let mut values = vec![0i64; p * p];
        let mut prefix = Vec::with_capacity(n);
        fill_columns(
            &[(Partition::empty(), 1)],
            n,
            n,
            &mut prefix,
            &index,
            &mut values,
        );
        let colsums = (0..p)
            .map(|row| values[row * p..(row + 1) * p].iter().map(|&v| v as i128).sum())
            .collect();
        Ok(CharacterTable {
            n,
            partitions,
            index,
            values,
            colsums,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Partitions of n in enumeration order; they index both rows and columns.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, l: &Partition) -> Result<usize> {
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| domain(format!("{l} is not a partition of {}", self.n)))
    }

    pub fn value_at(&self, row: usize, col: usize) -> i64 {
        self.values[row * self.partitions.len() + col]
    }

    /// χ^λ(μ) for λ, μ ⊢ n.
    pub fn chi(&self, shape: &Partition, class: &Partition) -> Result<i64> {
        Ok(self.value_at(self.index_of(shape)?, self.index_of(class)?))
    }

    /// χ^λ at a class of S_m, m ≤ n, padded with fixed points.
    pub fn chi_padded(&self, shape: &Partition, class: &Partition) -> Result<i64> {
        self.chi(shape, &class.pad_ones(self.n)?)
    }

    /// f^λ, the character at the identity class.
    pub fn dim_at(&self, row: usize) -> i64 {
        self.value_at(row, self.partitions.len() - 1)
    }

    pub fn dim(&self, shape: &Partition) -> Result<i64> {
        Ok(self.dim_at(self.index_of(shape)?))
    }

    /// Σ over classes μ of χ^λ(μ).
    pub fn colsum_at(&self, row: usize) -> i128 {
        self.colsums[row]
    }

    /// `(lambda, mu, chi)` in row-major enumeration order.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &Partition, i64)> + '_ {
        let p = self.partitions.len();
        (0..p * p).map(move |k| {
            (
                &self.partitions[k / p],
                &self.partitions[k % p],
                self.values[k],
            )
        })
    }
}

/// Depth-first over classes with parts added in non-increasing order.
/// `state` holds the signed hook-chain sums over shapes of the current weight.
fn fill_columns(
    state: &[(Partition, i64)],
    remaining: usize,
    max_part: usize,
    prefix: &mut Vec<usize>,
    index: &HashMap<Partition, usize>,
    values: &mut [i64],
) {
    if remaining == 0 {
        let p = index.len();
        let col = index[&Partition::from_sorted(prefix.clone())];
        for (shape, v) in state {
            values[index[shape] * p + col] = *v;
        }
        return;
    }
    for r in (1..=max_part.min(remaining)).rev() {
        let mut next: HashMap<Partition, i64> = HashMap::new();
        for (shape, v) in state {
            for (bigger, s) in add_rim_hooks(shape, r) {
                let slot = next.entry(bigger).or_insert(0);
                *slot = slot
                    .checked_add(s * v)
                    .expect("character value overflowed i64");
            }
        }
        let next: Vec<(Partition, i64)> = next.into_iter().filter(|(_, v)| *v != 0).collect();
        prefix.push(r);
        fill_columns(&next, remaining - r, r, prefix, index, values);
        prefix.pop();
    }
}

/// Builds the table of S_n.
pub fn build_table(n: usize) -> Result<CharacterTable> {
    CharacterTable::build(n)
}

/// m(S^λ, ψ) = Σ_C χ^λ(C), the multiplicity of S^λ in the conjugacy
/// representation. Always a non-negative integer.
pub fn conjugacy_multiplicity(table: &CharacterTable, shape: &Partition) -> Result<BigUint> {
    let s = table.colsum_at(table.index_of(shape)?);
    BigUint::try_from(s)
        .map_err(|_| Error::Consistency(format!("negative column sum {s} for {shape}")))
}

/// Character of the conjugacy representation at class μ: |G| / |class| = c(μ).
pub fn conjugacy_rep_character(n: usize, class: &Partition) -> Result<BigUint> {
    if class.weight() != n {
        return Err(domain(format!("{class} is not a partition of {n}")));
    }
    Ok(class.weights().0)
}

/// Σ_μ |C_μ| χ^λ(μ) χ^λ'(μ) = n! [λ = λ'] for every pair of rows.
pub fn verify_orthogonality(table: &CharacterTable) -> bool {
    let p = table.partitions.len();
    let sizes: Vec<BigInt> = table
        .partitions
        .iter()
        .map(|mu| BigInt::from(mu.class_size()))
        .collect();
    let order = BigInt::from(factorial(table.n));
    for a in 0..p {
        for b in a..p {
            let mut sum = BigInt::zero();
            for (col, size) in sizes.iter().enumerate() {
                let prod = i128::from(table.value_at(a, col)) * i128::from(table.value_at(b, col));
                sum += size * BigInt::from(prod);
            }
            let expected = if a == b { order.clone() } else { BigInt::zero() };
            if sum != expected {
                return false;
            }
        }
    }
    true
}

/// Builds each table at most once and hands out shared references.
#[derive(Debug, Default)]
pub struct TableCache {
    tables: Mutex<HashMap<usize, Arc<CharacterTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().expect("poisoned").get(&n) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(CharacterTable::build(n)?);
        self.tables
            .lock()
            .expect("poisoned")
            .entry(n)
            .or_insert_with(|| Arc::clone(&table));
        Ok(table)
    }
}
