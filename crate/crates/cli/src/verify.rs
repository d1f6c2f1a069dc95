use num_traits::One;
use symclt_core::character::TableCache;
use symclt_core::class_algebra::{
    brute_force_count, format_specs, frobenius_count, BruteForceBounds, ClassSpec, Target,
    TupleCountQuery,
};
use symclt_core::measure::{conjugacy, MeasureKind, SpectralMeasure};
use symclt_core::moments::{exact_mixed_moment, moment_via_counts};
use symclt_core::perm::{classes_of, tuple_product, CycleTuple, Permutation};
use symclt_core::reduction::{check_pairing, check_symbol_shape, identity_by_reduction_with, RuleSet};
use symclt_core::{Partition, Result};

pub struct Check {
    pub label: String,
    pub ok: bool,
}

impl Check {
    fn new(label: String, ok: bool) -> Self {
        Check { label, ok }
    }
}

fn class_sequences(classes: &[Partition], len: usize) -> Vec<Vec<Partition>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<Partition>| {
                classes.iter().map(move |c| {
                    let mut t = s.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Frobenius against brute force for every class sequence of length at most
/// `max_m`, one target per class.
pub fn frobenius(n: usize, max_m: usize, bounds: &BruteForceBounds, tables: &TableCache) -> Result<Vec<Check>> {
    let table = tables.get(n)?;
    let classes = table.partitions().to_vec();
    let by_class = classes_of(n);
    let mut checks = Vec::new();
    for m in 0..=max_m {
        for seq in class_sequences(&classes, m) {
            let specs: Vec<ClassSpec> = seq.into_iter().map(|c| ClassSpec::new(c, 1)).collect();
            for class in &classes {
                let rep = by_class[class][0].clone();
                let query = TupleCountQuery { n, specs: specs.clone(), target: Target::Element(rep.clone()) };
                let fc = frobenius_count(&query, &table)?;
                let bf = brute_force_count(&query, bounds)?;
                let label = format!("S_{n} [{}] -> {rep}: frobenius={fc} brute={bf}", format_specs(&specs));
                checks.push(Check::new(label, fc == bf));
            }
        }
    }
    Ok(checks)
}

fn cycles_on(ground: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 1..=ground {
        for b in a + 1..=ground {
            out.push(vec![a, b]);
            for c in a + 1..=ground {
                if c != b {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// Reduction to the empty tuple against the product, over all tuples of
/// 2- and 3-cycles on {1..ground} with at most `max_len` entries and an
/// admissible symbol.
pub fn reduction(ground: usize, max_len: usize, rules: RuleSet) -> Result<Vec<Check>> {
    let cycles = cycles_on(ground);
    let mut checks = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &frontier {
            for i in 0..cycles.len() {
                let mut chosen = prefix.clone();
                chosen.push(i);
                let tuple = CycleTuple::from_cycles(chosen.iter().map(|&j| cycles[j].clone()).collect())?;
                let symbol = tuple.symbol();
                if symbol.parts().iter().filter(|&&c| c >= 3).count() <= 1 {
                    next.push(chosen);
                }
                if check_symbol_shape(&symbol).is_err() {
                    continue;
                }
                let identity = tuple_product(&tuple).is_identity();
                let reduced = identity_by_reduction_with(&tuple, rules)?;
                let label = format!("{tuple}: reduced={reduced} identity={identity}");
                checks.push(Check::new(label, reduced == identity));
            }
        }
        frontier = next;
    }
    Ok(checks)
}

/// Inverse pairing against the product, over all tuples on {1..q} with
/// symbol {2^q}, q = 2..=max_q.
pub fn pairing(max_q: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for q in 2..=max_q {
        let mut perms: Vec<Permutation> = classes_of(q).into_values().flatten().filter(|g| !g.is_identity()).collect();
        perms.sort_by_key(|g| g.to_string());
        let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), vec![0; q + 1])];
        while let Some((chosen, occ)) = stack.pop() {
            if !chosen.is_empty() && occ[1..].iter().all(|&c| c == 2) {
                let tuple = CycleTuple::new(chosen.iter().map(|&i| perms[i].cycles()).collect())?;
                let paired = check_pairing(&tuple)?;
                let identity = tuple_product(&tuple).is_identity();
                checks.push(Check::new(format!("{tuple}: paired={paired} identity={identity}"), paired == identity));
                continue;
            }
            for (i, g) in perms.iter().enumerate() {
                let mut next = occ.clone();
                g.support().for_each(|x| next[x] += 1);
                if next.iter().all(|&c| c <= 2) {
                    let mut c = chosen.clone();
                    c.push(i);
                    stack.push((c, next));
                }
            }
        }
    }
    Ok(checks)
}

/// Moments through characters against moments through enumerated counts.
pub fn eq5(
    n_values: &[usize],
    spec_lists: &[Vec<ClassSpec>],
    bounds: &BruteForceBounds,
    tables: &TableCache,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &n in n_values {
        let table = tables.get(n)?;
        let measure = conjugacy(&table)?;
        for specs in spec_lists {
            let direct = exact_mixed_moment(&measure, specs, &table)?;
            let counted = moment_via_counts(n, specs, bounds)?;
            let label = format!("n={n} [{}]: characters={direct} counts={counted}", format_specs(specs));
            checks.push(Check::new(label, direct == counted));
        }
    }
    Ok(checks)
}

pub fn normalization(n_values: &[usize], tables: &TableCache) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &n in n_values {
        let table = tables.get(n)?;
        for kind in [MeasureKind::Plancherel, MeasureKind::Conjugacy] {
            let total = SpectralMeasure::new(kind, &table)?.total_mass();
            checks.push(Check::new(format!("n={n} {kind}: total={total}"), total.is_one()));
        }
    }
    Ok(checks)
}
