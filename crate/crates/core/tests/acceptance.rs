//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use symclt_core::character::{
    build_table, conjugacy_multiplicity, hook_dimension, mn_character, TableCache,
};
use symclt_core::class_algebra::{
    brute_force_count, c_count, frobenius_count, BruteForceBounds, ClassSpec, Target,
    TupleCountQuery,
};
use symclt_core::measure::{conjugacy, plancherel, MeasureKind, SpectralMeasure};
use symclt_core::moments::{convergence_report, exact_mixed_moment, limit_mixed_moment, moment_via_counts};
use symclt_core::partition::{double_factorial, factorial, Partition};
use symclt_core::perm::{classes_of, tuple_product, CycleTuple, Permutation};
use symclt_core::reduction::{check_pairing, identity_by_reduction};

const SAMPLE_SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn spec(nu: &str, k: usize) -> ClassSpec {
    ClassSpec::new(p(nu), k)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn normalization() -> Outcome {
    for n in 0..=14 {
        let t = build_table(n).map_err(|e| e.to_string())?;
        for kind in [MeasureKind::Plancherel, MeasureKind::Conjugacy] {
            let m = SpectralMeasure::new(kind, &t).map_err(|e| e.to_string())?;
            ensure(m.total_mass().is_one(), || format!("{kind} mass at n={n} is {}", m.total_mass()))?;
        }
    }
    Ok("n = 0..14, both measures".into())
}

fn multiplicities_are_natural() -> Outcome {
    let mut checked = 0;
    for n in 1..=14 {
        let t = build_table(n).map_err(|e| e.to_string())?;
        for shape in t.partitions() {
            conjugacy_multiplicity(&t, shape).map_err(|e| format!("n={n} {shape}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} multiplicities"))
}

fn character_soundness() -> Outcome {
    for n in 1..=12 {
        let t = build_table(n).map_err(|e| e.to_string())?;
        let parts = t.partitions();
        // column orthogonality: Σ_λ χ^λ(μ) χ^λ(μ') = c(μ) [μ = μ']
        for a in 0..parts.len() {
            for b in a..parts.len() {
                let sum: i128 = (0..parts.len())
                    .map(|row| i128::from(t.value_at(row, a)) * i128::from(t.value_at(row, b)))
                    .sum();
                let expected = if a == b { parts[a].weights().0 } else { BigUint::zero() };
                ensure(BigInt::from(sum) == BigInt::from(expected), || {
                    format!("columns {} and {} at n={n}", parts[a], parts[b])
                })?;
            }
        }
        let mut squares = BigUint::zero();
        for shape in parts {
            let f = hook_dimension(shape);
            let chi = mn_character(shape, &Partition::column(n)).map_err(|e| e.to_string())?;
            ensure(BigInt::from(chi) == BigInt::from(f.clone()), || format!("dimension of {shape}"))?;
            squares += &f * &f;
        }
        ensure(squares == factorial(n), || format!("sum of squared dimensions at n={n}"))?;
    }
    Ok("n = 1..12".into())
}

fn sequences(len: usize, alphabet: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..alphabet).map(move |a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

fn frobenius_vs_brute_force() -> Outcome {
    let bounds = BruteForceBounds::default();
    let mut queries = 0;
    for (n, max_m) in [(4, 3), (5, 2)] {
        let t = build_table(n).map_err(|e| e.to_string())?;
        let classes = t.partitions().to_vec();
        let reps: Vec<Permutation> = {
            let by_class = classes_of(n);
            classes.iter().map(|c| by_class[c][0].clone()).collect()
        };
        for m in 0..=max_m {
            for seq in sequences(m, classes.len()) {
                let specs: Vec<ClassSpec> = seq.iter().map(|&i| ClassSpec::new(classes[i].clone(), 1)).collect();
                for rep in &reps {
                    let q = TupleCountQuery { n, specs: specs.clone(), target: Target::Element(rep.clone()) };
                    let fc = frobenius_count(&q, &t).map_err(|e| e.to_string())?;
                    let bf = brute_force_count(&q, &bounds).map_err(|e| e.to_string())?;
                    ensure(fc == bf, || format!("S_{n} {seq:?} -> {rep}: {fc} vs {bf}"))?;
                    queries += 1;
                }
            }
        }
    }
    Ok(format!("{queries} queries"))
}

/// Cycles of length 2 and 3 on {1..6}, smallest point first.
fn short_cycles() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 1..=6 {
        for b in a + 1..=6 {
            out.push(vec![a, b]);
        }
    }
    for a in 1..=6 {
        for b in a + 1..=6 {
            for c in a + 1..=6 {
                if c != b {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

fn images(cycle: &[usize]) -> [u8; 7] {
    let mut map = [0, 1, 2, 3, 4, 5, 6];
    for (i, &x) in cycle.iter().enumerate() {
        map[x] = cycle[(i + 1) % cycle.len()] as u8;
    }
    map
}

struct SweepState<'a> {
    cycles: &'a [Vec<usize>],
    maps: Vec<[u8; 7]>,
    chosen: Vec<usize>,
    occurrences: [usize; 7],
    checked: u64,
    mismatches: Vec<String>,
}

impl SweepState<'_> {
    fn shape_ok(&self) -> bool {
        let mut big = 0;
        let mut two = 0;
        for &c in &self.occurrences[1..] {
            if c >= 3 {
                big += 1;
            } else if c == 2 {
                two += 1;
            }
        }
        big <= 1 && (big == 1 || two > 0)
    }

    fn visit(&mut self, product: [u8; 7]) {
        if !self.shape_ok() {
            return;
        }
        let tuple = CycleTuple::from_cycles(self.chosen.iter().map(|&i| self.cycles[i].clone()).collect())
            .expect("valid cycles");
        let is_identity = product.iter().enumerate().all(|(i, &x)| i == x as usize);
        debug_assert_eq!(is_identity, tuple_product(&tuple).is_identity());
        match identity_by_reduction(&tuple) {
            Ok(reduced) if reduced == is_identity => {}
            Ok(reduced) => {
                if self.mismatches.len() < 5 {
                    self.mismatches.push(format!("{tuple}: reduced={reduced} identity={is_identity}"));
                }
            }
            Err(e) => self.mismatches.push(format!("{tuple}: {e}")),
        }
        self.checked += 1;
    }

    fn extend(&mut self, depth: usize, product: [u8; 7]) {
        if depth > 0 {
            self.visit(product);
        }
        if depth == 4 {
            return;
        }
        for i in 0..self.cycles.len() {
            let cycle = &self.cycles[i];
            let mut next = self.occurrences;
            for &x in cycle {
                next[x] += 1;
            }
            // two points seen three or more times can never recover
            if next[1..].iter().filter(|&&c| c >= 3).count() > 1 {
                continue;
            }
            let saved = std::mem::replace(&mut self.occurrences, next);
            let map = self.maps[i];
            let mut composed = [0u8; 7];
            for x in 0..7 {
                composed[x] = map[product[x] as usize];
            }
            self.chosen.push(i);
            self.extend(depth + 1, composed);
            self.chosen.pop();
            self.occurrences = saved;
        }
    }
}

fn reduction_equivalence() -> Outcome {
    let cycles = short_cycles();
    let mut state = SweepState {
        maps: cycles.iter().map(|c| images(c)).collect(),
        cycles: &cycles,
        chosen: Vec::new(),
        occurrences: [0; 7],
        checked: 0,
        mismatches: Vec::new(),
    };
    state.extend(0, [0, 1, 2, 3, 4, 5, 6]);
    if state.mismatches.is_empty() {
        Ok(format!("{} tuples", state.checked))
    } else {
        Err(format!("{} tuples, mismatches: {}", state.checked, state.mismatches.join(", ")))
    }
}

fn pairing_equivalence() -> Outcome {
    let mut checked = 0u64;
    for q in 2..=4 {
        let perms: Vec<Permutation> = classes_of(q)
            .into_values()
            .flatten()
            .filter(|g| !g.is_identity())
            .collect();
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), vec![0; q + 1])];
        while let Some((chosen, occ)) = stack.pop() {
            if !chosen.is_empty() && occ[1..].iter().all(|&c| c == 2) {
                let entries = chosen.iter().map(|&i| perms[i].cycles()).collect();
                let tuple = CycleTuple::new(entries).map_err(|e| e.to_string())?;
                let paired = check_pairing(&tuple).map_err(|e| e.to_string())?;
                let identity = tuple_product(&tuple).is_identity();
                ensure(paired == identity, || format!("{tuple}: paired={paired} identity={identity}"))?;
                checked += 1;
                continue;
            }
            for (i, g) in perms.iter().enumerate() {
                let mut next = occ.clone();
                for x in g.support() {
                    next[x] += 1;
                }
                if next.iter().all(|&c| c <= 2) {
                    let mut c = chosen.clone();
                    c.push(i);
                    stack.push((c, next));
                }
            }
        }
    }
    Ok(format!("{checked} tuples"))
}

fn limiting_moments() -> Outcome {
    for q in 2..=4 {
        for k in 1..=6 {
            let got = limit_mixed_moment(&[spec(&q.to_string(), k)]).map_err(|e| e.to_string())?;
            let expected = if k % 2 == 0 { BigInt::from(double_factorial(k - 1)) } else { BigInt::zero() };
            ensure(got == BigRational::from_integer(expected.clone()), || {
                format!("q={q} k={k}: {got} vs {expected}")
            })?;
        }
    }
    Ok("q = 2..4, k = 1..6".into())
}

fn moments_two_ways() -> Outcome {
    let bounds = BruteForceBounds::default();
    let cases = [
        vec![spec("2", 1)],
        vec![spec("2", 2)],
        vec![spec("3", 1)],
        vec![spec("2", 1), spec("3", 1)],
    ];
    for n in [4, 5] {
        let t = build_table(n).map_err(|e| e.to_string())?;
        let m = conjugacy(&t).map_err(|e| e.to_string())?;
        for specs in &cases {
            let direct = exact_mixed_moment(&m, specs, &t).map_err(|e| e.to_string())?;
            let counted = moment_via_counts(n, specs, &bounds).map_err(|e| e.to_string())?;
            ensure(direct == counted, || format!("n={n} {specs:?}: {direct} vs {counted}"))?;
        }
    }
    Ok("n = 4, 5; 4 spec lists".into())
}

fn c_counts() -> Outcome {
    let bounds = BruteForceBounds::default();
    let cases = [("2+2", "1+1+1+1", "2", 2, 1u32), ("2+2+2", "1+1+1+1+1+1", "3", 2, 2), ("2+2+2+2", "1+1+1+1+1+1+1+1", "2", 4, 18)];
    for (mu, delta, nu, k, expected) in cases {
        let mu = p(mu);
        let ground = mu.len();
        let c = c_count(&mu, &p(delta), &[spec(nu, k)], ground, &bounds).map_err(|e| e.to_string())?;
        ensure(c == BigUint::from(expected), || format!("C({mu}) = {c}, expected {expected}"))?;
        // C q^{k'} / (q k')! = (2k'-1)!! with k = 2k'
        let q: usize = nu.parse().unwrap();
        let half = k / 2;
        let lhs = BigRational::new(
            BigInt::from(c * BigUint::from(q).pow(half as u32)),
            BigInt::from(factorial(q * half)),
        );
        let rhs = BigRational::from_integer(BigInt::from(double_factorial(2 * half - 1)));
        ensure(lhs == rhs, || format!("q={q} k'={half}: {lhs} vs {rhs}"))?;
    }
    Ok("C = 1, 2, 18".into())
}

fn clt_trend() -> Outcome {
    let cache = TableCache::new();
    let tables = |n| cache.get(n);
    let ns = [8, 12, 16, 20, 24];
    let first = convergence_report(&ns, MeasureKind::Conjugacy, &[spec("2", 1)], tables).map_err(|e| e.to_string())?;
    let second = convergence_report(&[8, 24], MeasureKind::Conjugacy, &[spec("2", 2)], tables).map_err(|e| e.to_string())?;
    let fourth = convergence_report(&[8, 24], MeasureKind::Conjugacy, &[spec("2", 4)], tables).map_err(|e| e.to_string())?;
    let trend: Vec<String> = first.iter().map(|r| format!("n={} E[W]={:.4}", r.n, r.float())).collect();
    println!("      E[W] under conjugacy, nu=(2): {}", trend.join(", "));
    println!(
        "      |E[W^2]-1|: {:.4} -> {:.4}; |E[W^4]-3|: {:.4} -> {:.4}",
        second[0].abs_dev(),
        second[1].abs_dev(),
        fourth[0].abs_dev(),
        fourth[1].abs_dev()
    );
    ensure(second[1].abs_dev() < second[0].abs_dev(), || "second moment did not improve".into())?;
    ensure(fourth[1].abs_dev() < fourth[0].abs_dev(), || "fourth moment did not improve".into())?;
    for n in 3..=12 {
        let t = cache.get(n).map_err(|e| e.to_string())?;
        let m = plancherel(&t).map_err(|e| e.to_string())?;
        for nu in Partition::all(n - 1)
            .chain((2..n - 1).flat_map(Partition::all))
            .filter(|nu| nu.multiplicity(1) == 0)
        {
            let e = exact_mixed_moment(&m, &[ClassSpec::new(nu.clone(), 1)], &t).map_err(|e| e.to_string())?;
            ensure(e.is_zero(), || format!("Plancherel E[X] for {nu} at n={n} is {e}"))?;
        }
    }
    Ok("deviations shrink from n=8 to n=24; Plancherel E[X] = 0 for n <= 12".into())
}

fn sampling_fit() -> Outcome {
    let draws = 100_000;
    let t = build_table(6).map_err(|e| e.to_string())?;
    let m = conjugacy(&t).map_err(|e| e.to_string())?;
    let sample = m.sample(SAMPLE_SEED, draws);
    let mut stat = 0.0;
    let mut cells = 0;
    for (atom, mass) in m.masses() {
        let expected = draws as f64 * symclt_core::radical::ratio_to_f64(&mass);
        let observed = sample.iter().filter(|s| *s == atom).count() as f64;
        if expected == 0.0 {
            ensure(observed == 0.0, || format!("zero-mass atom {atom} drawn"))?;
            continue;
        }
        stat += (observed - expected).powi(2) / expected;
        cells += 1;
    }
    let dist = ChiSquared::new((cells - 1) as f64).map_err(|e| e.to_string())?;
    let p_value = 1.0 - dist.cdf(stat);
    ensure(p_value > 1e-3, || format!("chi2={stat:.3}, p={p_value:.2e}"))?;
    Ok(format!("seed {SAMPLE_SEED}, chi2={stat:.3} on {} df, p={p_value:.3}", cells - 1))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("measures normalize for n <= 14", normalization),
        ("conjugacy multiplicities are natural numbers", multiplicities_are_natural),
        ("orthogonality, hook dimensions, sum of squares", character_soundness),
        ("Frobenius count equals brute force in S_4 and S_5", frobenius_vs_brute_force),
        ("reduction to empty iff identity product", reduction_equivalence),
        ("inverse pairing iff identity product", pairing_equivalence),
        ("Hermite limits are (2k-1)!! and 0", limiting_moments),
        ("moments by characters equal moments by counts", moments_two_ways),
        ("C counts and double factorial identities", c_counts),
        ("conjugacy moments approach the Gaussian", clt_trend),
        ("seeded sampling fits conjugacy(6)", sampling_fit),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
