//! Deterministic construction of the example families at finite scale, plus
//! seeded random instances.
//!
//! Each family is a finite truncation of an infinite construction, and the
//! regime in which the truncation reproduces the behaviour of interest is
//! part of the contract:
//!
//! * [`cofinite_family`]`(n, k)` — all subsets of `0..n` whose complement has
//!   at most `k` elements. Any subfamily of at most `(n-1)/k` edges has a
//!   common vertex (the complements cannot exhaust the vertex set), so small
//!   subfamilies admit a singleton cover while the whole family does not.
//! * [`large_subsets_family`]`(n, m)` — all subsets of size at least `m`.
//!   Subfamilies with fewer than `m` edges are split by the set of per-edge
//!   minima; the whole family is unsplittable once `n >= 2m`.
//! * [`affine_lines_family`]`(p)` — the `p^2 + p` lines of the affine plane
//!   over the `p`-element field: a family of `p`-element sets in which two
//!   distinct edges meet in at most one point.
//!
//! Randomness comes from a named, versioned generator ([`RNG_ALGORITHM`]) so
//! a seed identifies a corpus across implementations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use itertools::Itertools;

use crate::hypergraph::{Hypergraph, VertexId};

/// Identity of the seeded generator: ChaCha8 keyed with the little-endian
/// 64-bit seed in the first key bytes, remaining key and stream zero.
pub const RNG_ALGORITHM: &str = "chacha8-le64";

/// Largest edge family a generator will materialize.
pub const MAX_GENERATED_EDGES: u128 = 1_000_000;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("cofinite family requires 0 <= k < n (got n={n}, k={k})")]
    CofiniteParameters { n: u32, k: u32 },
    #[error("large-subsets family requires 1 <= m <= n (got n={n}, m={m})")]
    LargeSubsetsParameters { n: u32, m: u32 },
    #[error("affine plane order must be a prime at most 13 (got {p})")]
    AffineOrder { p: u32 },
    #[error("complete graph requires n >= 1 (got {n})")]
    CompleteParameters { n: u32 },
    #[error("cycle requires n >= 3 (got {n})")]
    CycleParameters { n: u32 },
    #[error("path requires n >= 1 (got {n})")]
    PathParameters { n: u32 },
    #[error("random hypergraph requires max_arity >= 1")]
    ZeroArity,
    #[error("cannot draw {requested} distinct edges: only {available} exist")]
    ImpossibleEdgeCount { requested: u64, available: u128 },
    #[error("family would have {edges} edges, above the {MAX_GENERATED_EDGES} limit")]
    TooManyEdges { edges: u128 },
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    result
}

/// All subsets of `0..n` missing at most `k` vertices.
pub fn cofinite_family(n: u32, k: u32) -> Result<Hypergraph, GeneratorError> {
    if n == 0 || k >= n {
        return Err(GeneratorError::CofiniteParameters { n, k });
    }
    let total: u128 = (0..=k as u64).map(|i| binomial(n as u64, i)).sum();
    if total > MAX_GENERATED_EDGES {
        return Err(GeneratorError::TooManyEdges { edges: total });
    }
    let mut edges = Vec::new();
    for size in 0..=k as usize {
        for complement in (0..n).combinations(size) {
            let edge: Vec<VertexId> = (0..n).filter(|v| !complement.contains(v)).collect();
            edges.push(edge);
        }
    }
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

/// All subsets of `0..n` with at least `m` vertices.
pub fn large_subsets_family(n: u32, m: u32) -> Result<Hypergraph, GeneratorError> {
    if m == 0 || m > n {
        return Err(GeneratorError::LargeSubsetsParameters { n, m });
    }
    let total: u128 = (m as u64..=n as u64).map(|i| binomial(n as u64, i)).sum();
    if total > MAX_GENERATED_EDGES {
        return Err(GeneratorError::TooManyEdges { edges: total });
    }
    let mut edges = Vec::new();
    for size in m as usize..=n as usize {
        for edge in (0..n).combinations(size) {
            edges.push(edge);
        }
    }
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

/// The lines of the affine plane of prime order `p`: `p^2` points indexed as
/// `x * p + y`, and `p^2 + p` lines of `p` points each.
pub fn affine_lines_family(p: u32) -> Result<Hypergraph, GeneratorError> {
    if p > 13 || !is_prime(p) {
        return Err(GeneratorError::AffineOrder { p });
    }
    let point = |x: u32, y: u32| x * p + y;
    let mut lines = Vec::with_capacity((p * p + p) as usize);
    for slope in 0..p {
        for intercept in 0..p {
            lines.push(
                (0..p)
                    .map(|x| point(x, (slope * x + intercept) % p))
                    .collect::<Vec<_>>(),
            );
        }
    }
    for x in 0..p {
        lines.push((0..p).map(|y| point(x, y)).collect());
    }
    Ok(Hypergraph::new(p * p, lines).expect("generated lines are valid"))
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn complete_graph(n: u32) -> Result<Hypergraph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::CompleteParameters { n });
    }
    let edges = (0..n).tuple_combinations().map(|(a, b)| vec![a, b]);
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

pub fn cycle_graph(n: u32) -> Result<Hypergraph, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::CycleParameters { n });
    }
    let edges = (0..n).map(|i| vec![i, (i + 1) % n]);
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

pub fn path_graph(n: u32) -> Result<Hypergraph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::PathParameters { n });
    }
    let edges = (0..n.saturating_sub(1)).map(|i| vec![i, i + 1]);
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

/// `m_edges` distinct non-empty edges of size at most `max_arity`, drawn by
/// rejection from the seeded generator. The same seed always yields the same
/// hypergraph.
pub fn random_hypergraph(
    n: u32,
    m_edges: u64,
    max_arity: u32,
    seed: u64,
) -> Result<Hypergraph, GeneratorError> {
    if max_arity == 0 {
        return Err(GeneratorError::ZeroArity);
    }
    let arity = max_arity.min(n);
    let available: u128 = (1..=arity as u64).map(|s| binomial(n as u64, s)).sum();
    if (m_edges as u128) > available {
        return Err(GeneratorError::ImpossibleEdgeCount {
            requested: m_edges,
            available,
        });
    }
    if (m_edges as u128) > MAX_GENERATED_EDGES {
        return Err(GeneratorError::TooManyEdges {
            edges: m_edges as u128,
        });
    }
    let mut rng = seeded_rng(seed);
    let mut seen = std::collections::BTreeSet::new();
    let mut attempts: u64 = 0;
    while (seen.len() as u64) < m_edges {
        attempts += 1;
        if attempts > 1_000_000 {
            // Practically unreachable given the availability check above.
            return Err(GeneratorError::ImpossibleEdgeCount {
                requested: m_edges,
                available,
            });
        }
        let size = rng.random_range(1..=arity);
        let edge = sample_subset(&mut rng, n, size as usize);
        seen.insert(edge);
    }
    Ok(Hypergraph::new(n, seen).expect("generated edges are valid"))
}

/// Uniform `size`-subset of `0..n` by partial Fisher-Yates, returned sorted.
fn sample_subset(rng: &mut ChaCha8Rng, n: u32, size: usize) -> Vec<VertexId> {
    let mut pool: Vec<VertexId> = (0..n).collect();
    for i in 0..size {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut subset: Vec<VertexId> = pool[..size].to_vec();
    subset.sort_unstable();
    subset
}
