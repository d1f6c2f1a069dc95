//! Numbers of the form `a * sqrt(s)` with `a` rational and `s` a squarefree
//! positive integer.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalRational {
    coeff: BigRational,
    radicand: u64,
}

impl RadicalRational {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(coeff: BigRational) -> Self {
        RadicalRational { coeff, radicand: 1 }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(v.into()))
    }

    /// `sqrt(n)` with its square part pulled into the coefficient.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (root, free) = square_split(n);
        RadicalRational {
            coeff: BigRational::from_integer(BigInt::from(root)),
            radicand: free,
        }
    }

    /// `a * sqrt(s)`; `s` need not be squarefree.
    pub fn new(coeff: BigRational, radicand: u64) -> Self {
        Self::rational(coeff) * Self::sqrt(radicand)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::rational(r.clone()) * self.clone()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }

    /// Exact sum. Both terms must carry the same radicand unless one is zero.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::Consistency(format!(
                "cannot add sqrt({}) and sqrt({}) terms",
                self.radicand, other.radicand
            )));
        }
        Ok(self.normalized(&self.coeff + &other.coeff))
    }

    fn normalized(&self, coeff: BigRational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            RadicalRational {
                coeff,
                radicand: self.radicand,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.coeff) * (self.radicand as f64).sqrt()
    }
}

impl Mul for RadicalRational {
    type Output = RadicalRational;

    fn mul(self, rhs: RadicalRational) -> RadicalRational {
        let g = self.radicand.gcd(&rhs.radicand);
        let radicand = (self.radicand / g)
            .checked_mul(rhs.radicand / g)
            .expect("squarefree radicand exceeds u64");
        let coeff = self.coeff * rhs.coeff * BigRational::from_integer(BigInt::from(g));
        if coeff.is_zero() {
            return RadicalRational::zero();
        }
        RadicalRational { coeff, radicand }
    }
}

impl Neg for RadicalRational {
    type Output = RadicalRational;

    fn neg(self) -> RadicalRational {
        RadicalRational {
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for RadicalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Writes `n = root^2 * free` with `free` squarefree.
pub fn square_split(mut n: u64) -> (u64, u64) {
    let mut root = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (root, free * n)
}

/// Float value of a big rational without overflowing on huge numerators or
/// denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let shift = |x: &BigInt| x.bits().saturating_sub(60);
    let (num, den) = (r.numer(), r.denom());
    let (sn, sd) = (shift(num), shift(den));
    let n = (num.abs() >> sn).to_f64().unwrap_or(0.0);
    let d = (den >> sd).to_f64().unwrap_or(1.0);
    let sign = if num.is_negative() { -1.0 } else { 1.0 };
    sign * n / d * 2f64.powi(sn as i32 - sd as i32)
}

/// Non-negative integer value of a rational, if it is one.
pub fn as_natural(r: &BigRational) -> Option<BigUint> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_biguint()
    } else {
        None
    }
}
