//! Finite-inheritance experiments: decide a property on every small edge
//! subset and on the whole family, and extract 1-minimal witnesses when the
//! whole family fails a property that all small subsets satisfy.
//!
//! Subsets are enumerated by size and then lexicographically by index set,
//! so `smallest_failing_subset` is the lexicographically least failing
//! subset of minimum size in exhaustive mode. When the subset space exceeds
//! the check budget, distinct subsets are sampled uniformly (size weighted
//! by the number of subsets of that size) from the seeded generator, and
//! runs are byte-reproducible from the seed.
//!
//! Cores are 1-minimal, not globally minimum: removing any single edge of
//! the returned subset destroys the witnessed failure, which is exactly the
//! finiteness content needed. They are found by greedy deletion in edge
//! index order, retesting after each tentative removal.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::generators::{binomial, seeded_rng};
use crate::hypergraph::{EdgeSubset, Hypergraph};
use crate::properties::{holds, PropertyKind};
use crate::solvers::{covering_number, Budget, SolverError};

pub const DEFAULT_CHECK_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExploreMode {
    Exhaustive,
    Sampled,
}

/// Outcome of testing a property on all (or sampled) small edge subsets
/// against the whole family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeritabilityReport {
    pub property: PropertyKind,
    pub max_subset_size: usize,
    pub mode: ExploreMode,
    pub subsets_checked: u64,
    pub all_small_hold: bool,
    pub smallest_failing_subset: Option<EdgeSubset>,
    pub whole_holds: bool,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    pub max_subset_size: usize,
    /// Maximum number of subset checks; above this, sampling kicks in.
    pub check_budget: u64,
    pub seed: u64,
    pub solver_budget: Budget,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            max_subset_size: 3,
            check_budget: DEFAULT_CHECK_BUDGET,
            seed: 0,
            solver_budget: Budget::default(),
        }
    }
}

pub fn explore(
    h: &Hypergraph,
    property: PropertyKind,
    options: &ExploreOptions,
) -> Result<HeritabilityReport, SolverError> {
    explore_trace(h, property, options).map(|(report, _)| report)
}

/// Like [`explore`], also returning the per-subset outcomes in the order
/// they were checked.
pub fn explore_trace(
    h: &Hypergraph,
    property: PropertyKind,
    options: &ExploreOptions,
) -> Result<(HeritabilityReport, Vec<(EdgeSubset, bool)>), SolverError> {
    let m = h.edge_count() as u64;
    let s = options.max_subset_size.min(h.edge_count());
    let total: u128 = (0..=s as u64).map(|k| binomial(m, k)).sum();
    let exhaustive = total <= options.check_budget as u128;

    let mut outcomes: Vec<(EdgeSubset, bool)> = Vec::new();
    if exhaustive {
        for size in 0..=s {
            let mut indices: Vec<usize> = (0..size).collect();
            loop {
                let subset = EdgeSubset::new(indices.iter().copied());
                let ok = subset_holds(h, &subset, property, &options.solver_budget)?;
                outcomes.push((subset, ok));
                if !next_combination(&mut indices, h.edge_count()) {
                    break;
                }
            }
        }
    } else {
        let weights: Vec<u128> = (0..=s as u64).map(|k| binomial(m, k)).collect();
        let mut rng = seeded_rng(options.seed);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        while (outcomes.len() as u64) < options.check_budget {
            let mut r = rng.random_range(0..total);
            let mut size = 0usize;
            for (k, &w) in weights.iter().enumerate() {
                if r < w {
                    size = k;
                    break;
                }
                r -= w;
            }
            let subset = sample_index_subset(&mut rng, h.edge_count(), size);
            if !seen.insert(subset.clone()) {
                continue;
            }
            let subset = EdgeSubset::new(subset);
            let ok = subset_holds(h, &subset, property, &options.solver_budget)?;
            outcomes.push((subset, ok));
        }
    }

    let smallest_failing_subset = outcomes
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(subset, _)| subset)
        .min_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.indices().cmp(b.indices()))
        })
        .cloned();
    let whole_holds = holds(h, property, &options.solver_budget)?;
    let report = HeritabilityReport {
        property,
        max_subset_size: options.max_subset_size,
        mode: if exhaustive {
            ExploreMode::Exhaustive
        } else {
            ExploreMode::Sampled
        },
        subsets_checked: outcomes.len() as u64,
        all_small_hold: smallest_failing_subset.is_none(),
        smallest_failing_subset,
        whole_holds,
        seed: if exhaustive { None } else { Some(options.seed) },
    };
    Ok((report, outcomes))
}

fn subset_holds(
    h: &Hypergraph,
    subset: &EdgeSubset,
    property: PropertyKind,
    budget: &Budget,
) -> Result<bool, SolverError> {
    let (induced, _) = h.induced(subset).expect("enumerated indices are in range");
    holds(&induced, property, budget)
}

/// Advances `indices` to the next k-combination of `0..m` in lexicographic
/// order; false when exhausted.
fn next_combination(indices: &mut [usize], m: usize) -> bool {
    let k = indices.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < m - k + i {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Uniform `size`-subset of `0..m`, unsorted draw order, returned sorted.
fn sample_index_subset(rng: &mut rand_chacha::ChaCha8Rng, m: usize, size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    for i in 0..size {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut subset = pool[..size].to_vec();
    subset.sort_unstable();
    subset
}

/// Greedy deletion core for "not bipartite": `None` when `h` is bipartite,
/// otherwise a subset that is non-bipartite and becomes bipartite after
/// removing any single edge.
pub fn minimal_nonbipartite_core(
    h: &Hypergraph,
    budget: &Budget,
) -> Result<Option<EdgeSubset>, SolverError> {
    minimal_failure_core(h, PropertyKind::Bipartite, budget)
}

/// Greedy deletion core for "no exact transversal".
pub fn minimal_non_cp_core(
    h: &Hypergraph,
    budget: &Budget,
) -> Result<Option<EdgeSubset>, SolverError> {
    minimal_failure_core(h, PropertyKind::Cp, budget)
}

fn minimal_failure_core(
    h: &Hypergraph,
    property: PropertyKind,
    budget: &Budget,
) -> Result<Option<EdgeSubset>, SolverError> {
    if holds(h, property, budget)? {
        return Ok(None);
    }
    let mut kept: Vec<usize> = (0..h.edge_count()).collect();
    let mut position = 0;
    while position < kept.len() {
        let mut candidate = kept.clone();
        candidate.remove(position);
        let (induced, _) = h
            .induced(&EdgeSubset::new(candidate.iter().copied()))
            .expect("kept indices are in range");
        if holds(&induced, property, budget)? {
            position += 1;
        } else {
            kept = candidate;
        }
    }
    Ok(Some(EdgeSubset::new(kept)))
}

/// A 1-minimal edge subset whose covering number equals that of the whole
/// family, by greedy deletion in index order.
pub fn cover_critical_core(h: &Hypergraph, budget: &Budget) -> Result<EdgeSubset, SolverError> {
    let target = covering_number(h, budget)?.solution.nu;
    let mut kept: Vec<usize> = (0..h.edge_count()).collect();
    let mut position = 0;
    while position < kept.len() {
        let mut candidate = kept.clone();
        candidate.remove(position);
        let (induced, _) = h
            .induced(&EdgeSubset::new(candidate.iter().copied()))
            .expect("kept indices are in range");
        if covering_number(&induced, budget)?.solution.nu == target {
            kept = candidate;
        } else {
            position += 1;
        }
    }
    Ok(EdgeSubset::new(kept))
}
