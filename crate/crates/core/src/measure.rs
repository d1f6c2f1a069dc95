//! Plancherel and conjugacy measures on the partitions of n.
//!
//! Both measures have denominator n!: the Plancherel mass of λ is
//! (f^λ)²/n! and the conjugacy mass is f^λ·m(S^λ, ψ)/n!, where m(S^λ, ψ) is
//! the column sum of the character table. Masses are kept as integer
//! numerators over n!, which also makes sampling exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::character::{conjugacy_multiplicity, CharacterTable};
use crate::error::{domain, Error, Result};
use crate::partition::{factorial, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Plancherel,
    Conjugacy,
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureKind::Plancherel => "plancherel",
            MeasureKind::Conjugacy => "conjugacy",
        })
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plancherel" => Ok(MeasureKind::Plancherel),
            "conjugacy" => Ok(MeasureKind::Conjugacy),
            other => Err(Error::Parse(format!("unknown measure kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    n: usize,
    kind: MeasureKind,
    atoms: Vec<Partition>,
    /// mass of `atoms[i]` is `numerators[i] / n!`
    numerators: Vec<BigUint>,
    denominator: BigUint,
}

impl SpectralMeasure {
    pub fn new(kind: MeasureKind, table: &CharacterTable) -> Result<Self> {
        let atoms = table.partitions().to_vec();
        let numerators = atoms
            .iter()
            .enumerate()
            .map(|(row, shape)| {
                let dim = BigUint::try_from(table.dim_at(row))
                    .map_err(|_| Error::Consistency(format!("negative dimension for {shape}")))?;
                Ok(match kind {
                    MeasureKind::Plancherel => &dim * &dim,
                    MeasureKind::Conjugacy => dim * conjugacy_multiplicity(table, shape)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectralMeasure {
            n: table.n(),
            kind,
            atoms,
            numerators,
            denominator: factorial(table.n()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    /// Atoms in enumeration order, zero-mass atoms included.
    pub fn atoms(&self) -> &[Partition] {
        &self.atoms
    }

    pub fn mass_at(&self, i: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerators[i].clone()),
            BigInt::from(self.denominator.clone()),
        )
    }

    pub fn mass(&self, shape: &Partition) -> Result<BigRational> {
        let i = self
            .atoms
            .iter()
            .position(|a| a == shape)
            .ok_or_else(|| domain(format!("{shape} is not a partition of {}", self.n)))?;
        Ok(self.mass_at(i))
    }

    /// `(atom, mass)` pairs in enumeration order.
    pub fn masses(&self) -> impl Iterator<Item = (&Partition, BigRational)> + '_ {
        self.atoms.iter().enumerate().map(|(i, a)| (a, self.mass_at(i)))
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    /// Exact sum of all masses.
    pub fn total_mass(&self) -> BigRational {
        let total: BigUint = self.numerators.iter().sum();
        BigRational::new(BigInt::from(total), BigInt::from(self.denominator.clone()))
    }

    /// Draws `count` atoms by inverse CDF over the enumeration order. The
    /// driver is ChaCha8 seeded with `seed`; each draw is a uniform integer
    /// below the numerator total, so no rounding is involved.
    pub fn sample(&self, seed: u64, count: usize) -> Vec<Partition> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total: BigUint = self.numerators.iter().sum();
        if total.is_zero() {
            return Vec::new();
        }
        let mut cumulative = Vec::with_capacity(self.numerators.len());
        let mut acc = BigUint::zero();
        for w in &self.numerators {
            acc += w;
            cumulative.push(acc.clone());
        }
        (0..count)
            .map(|_| {
                let u = rng.gen_biguint_below(&total);
                // first atom whose cumulative weight exceeds u; a zero-mass
                // atom never does so strictly before its predecessor
                let i = cumulative.partition_point(|c| c <= &u);
                self.atoms[i].clone()
            })
            .collect()
    }
}

/// μ_φ(λ) = (f^λ)² / n!.
pub fn plancherel(table: &CharacterTable) -> Result<SpectralMeasure> {
    SpectralMeasure::new(MeasureKind::Plancherel, table)
}

/// μ_ψ(λ) = f^λ Σ_K χ^λ(K) / n!.
pub fn conjugacy(table: &CharacterTable) -> Result<SpectralMeasure> {
    SpectralMeasure::new(MeasureKind::Conjugacy, table)
}
