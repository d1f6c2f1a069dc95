use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

use symclt_core::character::{
    build_table, conjugacy_multiplicity, conjugacy_rep_character, hook_dimension, mn_character,
};
use symclt_core::class_algebra::{b_count, product_class_tally, BruteForceBounds, ClassSpec};
use symclt_core::measure::conjugacy;
use symclt_core::moments::{exact_mixed_moment, moment_via_counts};
use symclt_core::partition::factorial;
use symclt_core::perm::{tuple_product, CycleTuple};
use symclt_core::radical::square_split;
use symclt_core::reduction::identity_by_reduction;
use symclt_core::Partition;

fn fixed_point_free(max_weight: usize) -> Vec<Partition> {
    (2..=max_weight)
        .flat_map(Partition::all)
        .filter(|p| p.multiplicity(1) == 0)
        .collect()
}

#[test]
fn dimension_weighted_multiplicities_sum_to_order() {
    for n in 1..=12 {
        let t = build_table(n).unwrap();
        let total: BigUint = t
            .partitions()
            .iter()
            .map(|l| hook_dimension(l) * conjugacy_multiplicity(&t, l).unwrap())
            .sum();
        assert_eq!(total, factorial(n), "n={n}");
    }
}

#[test]
fn regular_character_rows() {
    for n in 1..=11 {
        let t = build_table(n).unwrap();
        let order = BigInt::from(factorial(n));
        for (col, mu) in t.partitions().iter().enumerate() {
            let sum: i128 = (0..t.partitions().len())
                .map(|row| i128::from(t.dim_at(row)) * i128::from(t.value_at(row, col)))
                .sum();
            let expected = if mu.multiplicity(1) == n { order.clone() } else { BigInt::zero() };
            assert_eq!(BigInt::from(sum), expected, "n={n} mu={mu}");
        }
    }
}

#[test]
fn multiplicity_through_the_conjugation_character() {
    // m(S^λ, ψ) = (1/n!) Σ_μ |C_μ| χ^λ(μ) ψ(μ) with ψ(μ) = c(μ), which
    // collapses to Σ_μ χ^λ(μ)
    for n in 1..=9 {
        let t = build_table(n).unwrap();
        for l in t.partitions() {
            let mut sum = BigInt::zero();
            for mu in t.partitions() {
                let psi = conjugacy_rep_character(n, mu).unwrap();
                sum += BigInt::from(mu.class_size()) * BigInt::from(t.chi(l, mu).unwrap()) * BigInt::from(psi);
            }
            let m = sum / BigInt::from(factorial(n));
            assert_eq!(m, BigInt::from(conjugacy_multiplicity(&t, l).unwrap()), "{l}");
        }
    }
}

#[test]
fn moments_two_ways_for_small_n() {
    let bounds = BruteForceBounds::default();
    for n in 3..=5 {
        let t = build_table(n).unwrap();
        let m = conjugacy(&t).unwrap();
        for nu in fixed_point_free(n - 1) {
            for k in 1..=4 {
                if nu.weight() * k > 6 {
                    continue;
                }
                let specs = [ClassSpec::new(nu.clone(), k)];
                let direct = exact_mixed_moment(&m, &specs, &t).unwrap();
                assert_eq!(moment_via_counts(n, &specs, &bounds).unwrap(), direct, "n={n} {nu}^{k}");
            }
        }
    }
}

#[test]
fn b_counts_match_enumeration() {
    let bounds = BruteForceBounds::default();
    for n in 3..=6 {
        let t = build_table(n).unwrap();
        for nu in fixed_point_free(n - 1) {
            for k in 1..=2 {
                let specs = [ClassSpec::new(nu.clone(), k)];
                let tally = product_class_tally(n, &specs, &bounds).unwrap();
                for delta in Partition::all(n) {
                    let expected = tally.get(&delta).cloned().unwrap_or_default();
                    assert_eq!(b_count(n, &specs, &delta, &t).unwrap(), expected, "n={n} {nu}^{k} -> {delta}");
                }
            }
        }
    }
}

#[test]
fn odd_power_radicands() {
    for n in 5..=9 {
        let t = build_table(n).unwrap();
        let m = conjugacy(&t).unwrap();
        for q in 2..n {
            let e = exact_mixed_moment(&m, &[ClassSpec::new(Partition::row(q), 1)], &t).unwrap();
            if e.is_zero() {
                continue;
            }
            let (_, free) = square_split((q * n.pow(q as u32)) as u64);
            assert_eq!(e.radicand(), free, "n={n} q={q}");
        }
    }
}

fn partition_strategy(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        let all = Partition::all(n).collect::<Vec<_>>();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn tuple_strategy() -> impl Strategy<Value = Vec<Vec<usize>>> {
    let cycle = prop::sample::subsequence((1..=6).collect::<Vec<usize>>(), 2..=3).prop_shuffle();
    prop::collection::vec(cycle, 1..=4)
}

proptest! {
    #[test]
    fn table_agrees_with_recursive_characters(l in partition_strategy(14), seed in any::<usize>()) {
        let n = l.weight();
        let t = build_table(n).unwrap();
        let mu = &t.partitions()[seed % t.partitions().len()];
        prop_assert_eq!(t.chi(&l, mu).unwrap(), mn_character(&l, mu).unwrap());
    }

    #[test]
    fn reduction_matches_product(cycles in tuple_strategy()) {
        let tuple = CycleTuple::from_cycles(cycles).unwrap();
        if let Ok(reduced) = identity_by_reduction(&tuple) {
            prop_assert_eq!(reduced, tuple_product(&tuple).is_identity());
        }
    }

    #[test]
    fn reduction_ignores_labels(cycles in tuple_strategy(), perm in Just((1..=6).collect::<Vec<usize>>()).prop_shuffle()) {
        let tuple = CycleTuple::from_cycles(cycles).unwrap();
        let relabeled = tuple.relabel(|x| perm[x - 1]);
        if let Ok(reduced) = identity_by_reduction(&tuple) {
            prop_assert_eq!(reduced, identity_by_reduction(&relabeled).unwrap());
        }
    }
}
