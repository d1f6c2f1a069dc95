//! Pairwise deletion on cycle tuples whose symbol has the shape
//! `{q, 2, ..., 2, 1, ..., 1}` with `q >= 2`.
//!
//! A pivot `a` of maximal multiplicity is chosen and the cycles containing it
//! are listed in tuple order, each rotated to start at `a`. Two cyclically
//! adjacent cycles `c_t, c_{t+1}` (the last one wraps to the first) admit a
//! deletion when `c_t[-1] == c_{t+1}[2]`; the common element is removed from
//! both and any cycle left as a singleton is dropped. The procedure stops
//! once no point occurs more than once or no deletion is admissible.
//!
//! With left-to-right products a non-wrapping deletion leaves the product
//! unchanged and a wrapping one conjugates it, so the cycle type of the
//! product is invariant. The mirrored test `c_t[2] == c_{t+1}[-1]` is the
//! invariant deletion for right-to-left products; admitting both tests at
//! once ([`RuleSet::Both`]) lets a non-identity product reduce to the empty
//! tuple, e.g. `(1 3 2);(1 3);(1 2)`. It is kept for comparison only.

use std::collections::HashSet;
use std::fmt;

use crate::error::{domain, Result};
use crate::partition::Partition;
use crate::perm::{Cycle, CycleTuple};

/// Which equality licensed a deletion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchRule {
    /// `c_t[-1] == c_{t+1}[2]`
    LastSecond,
    /// `c_t[2] == c_{t+1}[-1]`
    SecondLast,
}

/// Which match tests a step may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RuleSet {
    /// `LastSecond` only; consistent with left-to-right products.
    #[default]
    LeftToRight,
    /// `LastSecond` then `SecondLast`.
    Both,
}

impl RuleSet {
    fn rules(self) -> &'static [MatchRule] {
        match self {
            RuleSet::LeftToRight => &[MatchRule::LastSecond],
            RuleSet::Both => &[MatchRule::LastSecond, MatchRule::SecondLast],
        }
    }
}

/// How many successors [`reduction_step`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepPolicy {
    /// Smallest pivot, first admissible pair in scan order, rules tried in
    /// the order listed by the [`RuleSet`].
    Deterministic,
    /// Every admissible (pivot, pair, rule) choice.
    Enumerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    Deterministic,
    /// Backtracking over all choices; finds an empty reduced tuple if any
    /// exists.
    Search,
}

/// Location of a cycle: entry index and cycle index within the entry, both
/// zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclePos {
    pub entry: usize,
    pub cycle: usize,
}

impl fmt::Display for CyclePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.entry + 1, self.cycle + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReductionStep {
    pub pivot: usize,
    /// c_t
    pub first: CyclePos,
    /// c_{t+1}
    pub second: CyclePos,
    pub deleted: usize,
    pub rule: MatchRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: CycleTuple,
    pub steps: Vec<ReductionStep>,
    pub final_tuple: CycleTuple,
    pub reached_empty: bool,
}

impl ReductionTrace {
    /// Re-applies the recorded steps to the initial tuple.
    pub fn replay(&self) -> Result<CycleTuple> {
        self.steps
            .iter()
            .try_fold(self.initial.clone(), |t, step| apply_step(&t, step))
    }

    /// One line per step followed by the final tuple.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: pivot={}, delete {} from {}~{}\n",
                k + 1,
                s.pivot,
                s.deleted,
                s.first,
                s.second
            ));
        }
        let shown = if self.final_tuple.is_empty() {
            "()".to_string()
        } else {
            self.final_tuple.to_string()
        };
        out.push_str(&format!("final: {shown}\n"));
        out.push_str(&format!("reached_empty: {}\n", self.reached_empty));
        out
    }
}

/// Checks the `{q, 2, ..., 2, 1, ..., 1}`, `q >= 2` shape.
pub fn check_symbol_shape(symbol: &Partition) -> Result<()> {
    let parts = symbol.parts();
    match parts.first() {
        Some(&q) if q >= 2 && parts[1..].iter().all(|&p| p <= 2) => Ok(()),
        _ => Err(domain(format!(
            "symbol {symbol} is not of the form {{q,2,...,2,1,...,1}} with q >= 2"
        ))),
    }
}

/// Successor tuples reachable by one deletion.
pub fn reduction_step(
    tuple: &CycleTuple,
    policy: StepPolicy,
) -> Result<Vec<(CycleTuple, ReductionStep)>> {
    reduction_step_with(tuple, policy, RuleSet::default())
}

pub fn reduction_step_with(
    tuple: &CycleTuple,
    policy: StepPolicy,
    rules: RuleSet,
) -> Result<Vec<(CycleTuple, ReductionStep)>> {
    check_symbol_shape(&tuple.symbol())?;
    let occurrences = tuple.occurrences();
    let top = occurrences.values().copied().max().unwrap_or(0);
    let pivots = occurrences
        .iter()
        .filter(|&(_, &c)| c == top)
        .map(|(&x, _)| x);

    let mut out = Vec::new();
    for pivot in pivots {
        let around = cycles_through(tuple, pivot);
        let q = around.len();
        for t in 0..q {
            let (pos_t, ref c_t) = around[t];
            let (pos_u, ref c_u) = around[(t + 1) % q];
            for &rule in rules.rules() {
                let (x, y) = match rule {
                    MatchRule::LastSecond => (c_t[c_t.len() - 1], c_u[1]),
                    MatchRule::SecondLast => (c_t[1], c_u[c_u.len() - 1]),
                };
                if x != y {
                    continue;
                }
                let step = ReductionStep {
                    pivot,
                    first: pos_t,
                    second: pos_u,
                    deleted: x,
                    rule,
                };
                let next = apply_step(tuple, &step)?;
                out.push((next, step));
                if policy == StepPolicy::Deterministic {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Cycles containing `pivot`, in tuple order, rotated to start at `pivot`.
fn cycles_through(tuple: &CycleTuple, pivot: usize) -> Vec<(CyclePos, Cycle)> {
    let mut out = Vec::new();
    for (i, entry) in tuple.entries().iter().enumerate() {
        for (j, cycle) in entry.iter().enumerate() {
            if let Some(k) = cycle.iter().position(|&x| x == pivot) {
                let mut rotated = cycle.clone();
                rotated.rotate_left(k);
                out.push((CyclePos { entry: i, cycle: j }, rotated));
            }
        }
    }
    out
}

/// Deletes `step.deleted` from the two recorded cycles, then drops
/// singleton cycles and entries left without cycles.
pub fn apply_step(tuple: &CycleTuple, step: &ReductionStep) -> Result<CycleTuple> {
    let mut entries: Vec<Vec<Cycle>> = tuple.entries().to_vec();
    for pos in [step.first, step.second] {
        let cycle = entries
            .get_mut(pos.entry)
            .and_then(|e| e.get_mut(pos.cycle))
            .ok_or_else(|| domain(format!("no cycle at {pos}")))?;
        let k = cycle
            .iter()
            .position(|&x| x == step.deleted)
            .ok_or_else(|| domain(format!("{} not in cycle at {pos}", step.deleted)))?;
        cycle.remove(k);
    }
    for entry in &mut entries {
        entry.retain(|c| c.len() >= 2);
    }
    entries.retain(|e| !e.is_empty());
    Ok(CycleTuple::from_entries_unchecked(entries))
}

fn is_terminal(tuple: &CycleTuple) -> bool {
    tuple.occurrences().values().all(|&c| c <= 1)
}

/// Runs the procedure to a reduced tuple.
pub fn reduce(tuple: &CycleTuple, mode: ReduceMode) -> Result<ReductionTrace> {
    reduce_with(tuple, mode, RuleSet::default())
}

pub fn reduce_with(tuple: &CycleTuple, mode: ReduceMode, rules: RuleSet) -> Result<ReductionTrace> {
    if !tuple.is_empty() {
        check_symbol_shape(&tuple.symbol())?;
    }
    let steps = match mode {
        ReduceMode::Deterministic => deterministic_path(tuple, rules)?,
        ReduceMode::Search => {
            let mut visited = HashSet::new();
            let mut path = Vec::new();
            if search_empty(tuple, rules, &mut visited, &mut path)? {
                path
            } else {
                deterministic_path(tuple, rules)?
            }
        }
    };
    let final_tuple = steps
        .iter()
        .try_fold(tuple.clone(), |t, s| apply_step(&t, s))?;
    Ok(ReductionTrace {
        initial: tuple.clone(),
        steps,
        reached_empty: final_tuple.is_empty(),
        final_tuple,
    })
}

fn deterministic_path(tuple: &CycleTuple, rules: RuleSet) -> Result<Vec<ReductionStep>> {
    let mut current = tuple.clone();
    let mut steps = Vec::new();
    while !is_terminal(&current) {
        match reduction_step_with(&current, StepPolicy::Deterministic, rules)?.pop() {
            Some((next, step)) => {
                steps.push(step);
                current = next;
            }
            None => break,
        }
    }
    Ok(steps)
}

fn search_empty(
    tuple: &CycleTuple,
    rules: RuleSet,
    visited: &mut HashSet<CycleTuple>,
    path: &mut Vec<ReductionStep>,
) -> Result<bool> {
    if tuple.is_empty() {
        return Ok(true);
    }
    if is_terminal(tuple) || !visited.insert(tuple.clone()) {
        return Ok(false);
    }
    for (next, step) in reduction_step_with(tuple, StepPolicy::Enumerate, rules)? {
        path.push(step);
        if search_empty(&next, rules, visited, path)? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Decides whether some reduced tuple is empty.
pub fn identity_by_reduction(tuple: &CycleTuple) -> Result<bool> {
    identity_by_reduction_with(tuple, RuleSet::default())
}

pub fn identity_by_reduction_with(tuple: &CycleTuple, rules: RuleSet) -> Result<bool> {
    check_symbol_shape(&tuple.symbol())?;
    Ok(reduce_with(tuple, ReduceMode::Search, rules)?.reached_empty)
}

/// For tuples in which every point occurs exactly twice: can the cycles be
/// split into pairs of mutually inverse cycles taken from distinct entries?
pub fn check_pairing(tuple: &CycleTuple) -> Result<bool> {
    let symbol = tuple.symbol();
    if symbol.parts().iter().any(|&c| c != 2) {
        return Err(domain(format!("symbol {symbol} is not of the form {{2^q}}")));
    }
    let cycles: Vec<(usize, Cycle)> = tuple
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |c| (i, normalize(c))))
        .collect();
    let mut used = vec![false; cycles.len()];
    Ok(match_inverses(&cycles, &mut used))
}

fn normalize(cycle: &[usize]) -> Cycle {
    let k = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let mut c = cycle.to_vec();
    c.rotate_left(k);
    c
}

fn inverse_normalized(cycle: &[usize]) -> Cycle {
    let mut c = cycle.to_vec();
    c[1..].reverse();
    c
}

fn match_inverses(cycles: &[(usize, Cycle)], used: &mut [bool]) -> bool {
    let Some(first) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[first] = true;
    let (entry, ref cycle) = cycles[first];
    let wanted = inverse_normalized(cycle);
    for k in first + 1..cycles.len() {
        if !used[k] && cycles[k].0 != entry && cycles[k].1 == wanted {
            used[k] = true;
            if match_inverses(cycles, used) {
                return true;
            }
            used[k] = false;
        }
    }
    used[first] = false;
    false
}
