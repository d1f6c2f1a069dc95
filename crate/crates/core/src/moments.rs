//! Normalized character ratios and their moments.
//!
//! For a class ν without fixed points and n > n(ν), the ratio
//!
//! ```text
//! W_{n,ν}(λ) = [n]_{n(ν)} χ^λ(ν) sqrt(d(ν)) / (f^λ n^{n(ν)/2} sqrt(c(ν)))
//! ```
//!
//! is a random variable under either spectral measure (under the Plancherel
//! measure it is usually called X). Exact moments are sums of
//! [`RadicalRational`]s sharing one radicand. The large-n limits are
//! Gaussian integrals of products of probabilists' Hermite polynomials,
//! evaluated symbolically.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::character::CharacterTable;
use crate::class_algebra::{
    b_count, format_specs, product_class_tally, BruteForceBounds, ClassSpec,
};
use crate::error::{domain, Error, Result};
use crate::measure::{MeasureKind, SpectralMeasure};
use crate::partition::{factorial, falling_factorial, Partition};
use crate::radical::{ratio_to_f64, RadicalRational};

fn check_class(n: usize, nu: &Partition) -> Result<()> {
    if nu.is_empty() || nu.weight() >= n || nu.multiplicity(1) != 0 {
        return Err(domain(format!(
            "class {nu} must be nonempty, have no parts equal to 1 and weight below {n}"
        )));
    }
    Ok(())
}

fn to_u64(x: BigUint, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Refused(format!("{what} = {x} does not fit in 64 bits")))
}

/// n^{-e/2} as an exact radical.
fn inv_sqrt_power(n: usize, e: usize) -> RadicalRational {
    let whole = BigInt::from(n).pow((e / 2) as u32);
    let r = RadicalRational::rational(BigRational::new(1.into(), whole));
    if e % 2 == 1 {
        r * RadicalRational::sqrt(n as u64)
            * RadicalRational::rational(BigRational::new(1.into(), BigInt::from(n)))
    } else {
        r
    }
}

/// The λ-independent factor [n]_{n(ν)} sqrt(d(ν) / (c(ν) n^{n(ν)})).
fn normalizer(n: usize, nu: &Partition) -> Result<RadicalRational> {
    let (c, d) = nu.weights();
    let c = to_u64(c, "c(nu)")?;
    let d = to_u64(d, "d(nu)")?;
    let m = nu.weight();
    let falling = BigRational::from_integer(BigInt::from(falling_factorial(n, m)));
    Ok(RadicalRational::rational(falling)
        * RadicalRational::sqrt(d)
        * RadicalRational::sqrt(c)
        * RadicalRational::rational(BigRational::new(1.into(), BigInt::from(c)))
        * inv_sqrt_power(n, m))
}

/// W_{n,ν}(λ), with χ^λ(ν) read at ν padded with fixed points.
pub fn char_ratio(
    shape: &Partition,
    nu: &Partition,
    n: usize,
    table: &CharacterTable,
) -> Result<RadicalRational> {
    check_class(n, nu)?;
    if table.n() != n || shape.weight() != n {
        return Err(domain(format!("{shape} and the table must both be of size {n}")));
    }
    let row = table.index_of(shape)?;
    let chi = table.chi_padded(shape, nu)?;
    let ratio = BigRational::new(BigInt::from(chi), BigInt::from(table.dim_at(row)));
    Ok(normalizer(n, nu)?.scale(&ratio))
}

/// E[Π_i W_{n,ν_i}^{k_i}] under `measure`.
pub fn exact_mixed_moment(
    measure: &SpectralMeasure,
    specs: &[ClassSpec],
    table: &CharacterTable,
) -> Result<RadicalRational> {
    let n = measure.n();
    if table.n() != n {
        return Err(domain("measure and table are for different n"));
    }
    let mut total = RadicalRational::zero();
    for (shape, mass) in measure.masses() {
        if mass.is_zero() {
            continue;
        }
        let mut term = RadicalRational::rational(mass);
        for spec in specs {
            term = term * char_ratio(shape, &spec.class, n, table)?.pow(spec.reps as u32);
        }
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// Π_i (d(ν_i) c(ν_i) / n^{n(ν_i)})^{k_i/2}.
fn count_weight(n: usize, specs: &[ClassSpec]) -> Result<RadicalRational> {
    let mut w = RadicalRational::one();
    for spec in specs {
        let (c, d) = spec.class.weights();
        let dc = to_u64(c * d, "c(nu) d(nu)")?;
        let factor = RadicalRational::sqrt(dc) * inv_sqrt_power(n, spec.class.weight());
        w = w * factor.pow(spec.reps as u32);
    }
    Ok(w)
}

fn moment_from_b(n: usize, specs: &[ClassSpec], b: impl Fn(&Partition) -> Result<BigUint>) -> Result<RadicalRational> {
    let order = BigInt::from(factorial(n));
    let mut sum = BigRational::zero();
    for delta in Partition::all(n) {
        let count = b(&delta)?;
        if count.is_zero() {
            continue;
        }
        let (c, _) = delta.weights();
        sum += BigRational::new(BigInt::from(c) * BigInt::from(count), order.clone());
    }
    Ok(count_weight(n, specs)?.scale(&sum))
}

/// The conjugacy-measure moment rewritten over product classes,
///
/// ```text
/// Σ_δ c(δ)/n! · B_δ · Π_i (d(ν_i) c(ν_i) / n^{n(ν_i)})^{k_i/2},
/// ```
///
/// with each B_δ obtained by enumerating tuples (no characters involved).
pub fn moment_via_counts(
    n: usize,
    specs: &[ClassSpec],
    bounds: &BruteForceBounds,
) -> Result<RadicalRational> {
    for spec in specs {
        check_class(n, &spec.class)?;
    }
    let tally = product_class_tally(n, specs, bounds)?;
    moment_from_b(n, specs, |delta| Ok(tally.get(delta).cloned().unwrap_or_default()))
}

/// Same decomposition with B_δ evaluated through the character table.
pub fn moment_via_b(n: usize, specs: &[ClassSpec], table: &CharacterTable) -> Result<RadicalRational> {
    for spec in specs {
        check_class(n, &spec.class)?;
    }
    moment_from_b(n, specs, |delta| b_count(n, specs, delta, table))
}

/// Coefficients (constant term first) of the probabilists' Hermite
/// polynomial He_j: He_0 = 1, He_1 = x, He_{j+1} = x He_j - j He_{j-1}.
pub fn hermite(j: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::from(1)];
    if j == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(1)];
    for i in 1..j {
        let mut next = vec![BigInt::zero(); i + 2];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c * BigInt::from(i);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// E[Z^m] for a standard normal Z: (m-1)!! for even m, 0 for odd m.
pub fn gaussian_moment(m: usize) -> BigUint {
    if m % 2 == 1 {
        BigUint::zero()
    } else if m == 0 {
        BigUint::from(1u32)
    } else {
        crate::partition::double_factorial(m - 1)
    }
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// E[p(Z)] for a standard normal Z, term by term.
pub fn gaussian_expectation(poly: &[BigInt]) -> BigInt {
    poly.iter()
        .enumerate()
        .map(|(m, c)| c * BigInt::from(gaussian_moment(m)))
        .sum()
}

/// Π_{j>=2} E[Π_i He_{l_j(ν_i)}(Z)^{k_i}], the large-n limit of the mixed
/// moment.
pub fn limit_mixed_moment(specs: &[ClassSpec]) -> Result<BigRational> {
    for spec in specs {
        if spec.class.multiplicity(1) != 0 {
            return Err(domain(format!("class {} has parts equal to 1", spec.class)));
        }
    }
    let mut lengths: Vec<usize> = specs
        .iter()
        .flat_map(|s| s.class.parts().iter().copied())
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut total = BigInt::from(1);
    for j in lengths {
        let mut poly = vec![BigInt::from(1)];
        for spec in specs {
            let h = hermite(spec.class.multiplicity(j));
            for _ in 0..spec.reps {
                poly = poly_mul(&poly, &h);
            }
        }
        total *= gaussian_expectation(&poly);
    }
    Ok(BigRational::from_integer(total))
}

/// One row of a convergence table.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub n: usize,
    pub kind: MeasureKind,
    pub specs: Vec<ClassSpec>,
    pub exact: RadicalRational,
    pub limit: BigRational,
}

impl MomentReport {
    /// Double-precision value of the exact moment (approximate).
    pub fn float(&self) -> f64 {
        self.exact.to_f64()
    }

    pub fn abs_dev(&self) -> f64 {
        (self.float() - ratio_to_f64(&self.limit)).abs()
    }

    pub fn specs_label(&self) -> String {
        format_specs(&self.specs)
    }
}

/// Exact moments for each n next to their limit.
pub fn convergence_report<P>(
    n_values: &[usize],
    kind: MeasureKind,
    specs: &[ClassSpec],
    tables: P,
) -> Result<Vec<MomentReport>>
where
    P: Fn(usize) -> Result<Arc<CharacterTable>>,
{
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("n values must be strictly increasing"));
    }
    let limit = limit_mixed_moment(specs)?;
    n_values
        .iter()
        .map(|&n| {
            let table = tables(n)?;
            let measure = SpectralMeasure::new(kind, &table)?;
            Ok(MomentReport {
                n,
                kind,
                specs: specs.to_vec(),
                exact: exact_mixed_moment(&measure, specs, &table)?,
                limit: limit.clone(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{build_table, TableCache};
    use crate::measure::{conjugacy, plancherel};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn spec(nu: &str, k: usize) -> ClassSpec {
        ClassSpec::new(p(nu), k)
    }

    #[test]
    fn ratios_in_s3() {
        let t = build_table(3).unwrap();
        let nu = p("2");
        assert!(char_ratio(&p("2+1"), &nu, 3, &t).unwrap().is_zero());
        assert_eq!(char_ratio(&p("3"), &nu, 3, &t).unwrap(), RadicalRational::sqrt(2));
        assert_eq!(char_ratio(&p("1+1+1"), &nu, 3, &t).unwrap(), -RadicalRational::sqrt(2));
        assert!(char_ratio(&p("3"), &p("3"), 3, &t).is_err());
        assert!(char_ratio(&p("3"), &p("1+1"), 3, &t).is_err());
    }

    #[test]
    fn moments_in_s3() {
        let t = build_table(3).unwrap();
        let m = conjugacy(&t).unwrap();
        assert_eq!(
            exact_mixed_moment(&m, &[spec("2", 1)], &t).unwrap(),
            RadicalRational::new(q(1, 3), 2)
        );
        assert_eq!(
            exact_mixed_moment(&m, &[spec("2", 2)], &t).unwrap(),
            RadicalRational::rational(q(4, 3))
        );
        let bounds = BruteForceBounds::default();
        assert_eq!(
            moment_via_counts(3, &[spec("2", 1)], &bounds).unwrap(),
            RadicalRational::new(q(1, 3), 2)
        );
    }

    #[test]
    fn plancherel_first_moment_vanishes() {
        for n in 3..=12 {
            let t = build_table(n).unwrap();
            let m = plancherel(&t).unwrap();
            assert!(exact_mixed_moment(&m, &[spec("2", 1)], &t).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn counts_route_agrees() {
        let bounds = BruteForceBounds::default();
        let cases: &[&[ClassSpec]] = &[
            &[spec("2", 2)],
            &[spec("2", 1), spec("3", 1)],
            &[spec("3", 2)],
        ];
        for n in 4..=5 {
            let t = build_table(n).unwrap();
            let m = conjugacy(&t).unwrap();
            for specs in cases {
                let direct = exact_mixed_moment(&m, specs, &t).unwrap();
                assert_eq!(moment_via_counts(n, specs, &bounds).unwrap(), direct);
                assert_eq!(moment_via_b(n, specs, &t).unwrap(), direct);
            }
        }
    }

    #[test]
    fn radicand_structure() {
        let t = build_table(7).unwrap();
        let m = conjugacy(&t).unwrap();
        let even = exact_mixed_moment(&m, &[spec("3", 2)], &t).unwrap();
        assert!(even.is_rational());
        let odd = exact_mixed_moment(&m, &[spec("3", 1)], &t).unwrap();
        // squarefree part of d·c·n^{n(ν)} = 1·3·7³
        if !odd.is_zero() {
            assert_eq!(odd.radicand(), 21);
        }
        let odd = exact_mixed_moment(&m, &[spec("4", 3)], &t).unwrap();
        assert!(odd.is_zero() || odd.is_rational());
    }

    #[test]
    fn hermite_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(hermite(0), ints(&[1]));
        assert_eq!(hermite(2), ints(&[-1, 0, 1]));
        assert_eq!(hermite(3), ints(&[0, -3, 0, 1]));
        assert_eq!(hermite(4), ints(&[3, 0, -6, 0, 1]));
    }

    #[test]
    fn gaussian_moments() {
        assert_eq!(gaussian_moment(4), 3u32.into());
        assert_eq!(gaussian_moment(7), 0u32.into());
        assert_eq!(gaussian_moment(0), 1u32.into());
        assert_eq!(gaussian_moment(6), 15u32.into());
    }

    #[test]
    fn hermite_orthogonality() {
        for a in 0..=6 {
            for b in 0..=6 {
                let e = gaussian_expectation(&poly_mul(&hermite(a), &hermite(b)));
                let expected = if a == b { BigInt::from(factorial(a)) } else { BigInt::zero() };
                assert_eq!(e, expected, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn limits() {
        let lim = |specs: &[ClassSpec]| limit_mixed_moment(specs).unwrap();
        assert_eq!(lim(&[spec("2", 4)]), q(3, 1));
        assert_eq!(lim(&[spec("3", 3)]), q(0, 1));
        assert_eq!(lim(&[spec("2+2", 2)]), q(2, 1));
        assert_eq!(lim(&[]), q(1, 1));
        for qq in 2..=6 {
            assert_eq!(lim(&[spec(&qq.to_string(), 2)]), q(1, 1));
        }
        // distinct cycle lengths are independent in the limit
        assert_eq!(lim(&[spec("2", 2), spec("3", 2)]), q(1, 1));
        assert_eq!(lim(&[spec("2", 1), spec("3", 1)]), q(0, 1));
        assert!(limit_mixed_moment(&[spec("2+1", 2)]).is_err());
    }

    #[test]
    fn report_rows() {
        let cache = TableCache::new();
        let rows = convergence_report(&[4, 6, 8], MeasureKind::Plancherel, &[spec("2", 1)], |n| {
            cache.get(n)
        })
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.exact.is_zero() && r.abs_dev() == 0.0));
        let rows = convergence_report(&[6], MeasureKind::Conjugacy, &[spec("2", 4)], |n| cache.get(n)).unwrap();
        assert_eq!(rows[0].limit, q(3, 1));
        assert!(convergence_report(&[6, 6], MeasureKind::Conjugacy, &[], |n| cache.get(n)).is_err());
    }
}
