//! Exhaustive enumeration oracle and shared instance corpus.
//!
//! The oracle works on plain vertex lists with no pruning, no bitsets, and
//! no shared code with the solvers, so agreement between the two is
//! meaningful evidence.

use konig::generators::{
    affine_lines_family, cofinite_family, complete_graph, cycle_graph, large_subsets_family,
    path_graph, random_hypergraph, seeded_rng,
};
use konig::{Hypergraph, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

const MAX_ORACLE_EDGES: usize = 20;
const MAX_ORACLE_VERTICES: u32 = 20;

fn edges_pairwise_disjoint(h: &Hypergraph, indices: &[usize]) -> bool {
    for (pos, &i) in indices.iter().enumerate() {
        for &j in &indices[pos + 1..] {
            if h.edge(i).iter().any(|v| h.edge(j).contains(v)) {
                return false;
            }
        }
    }
    true
}

/// Every matching, as sorted edge-index lists, by filtering all subsets.
pub fn all_matchings(h: &Hypergraph) -> Vec<Vec<usize>> {
    let m = h.edge_count();
    assert!(m <= MAX_ORACLE_EDGES, "oracle is for small instances");
    let mut result = Vec::new();
    for mask in 0u32..(1 << m) {
        let indices: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        if edges_pairwise_disjoint(h, &indices) {
            result.push(indices);
        }
    }
    result
}

pub fn oracle_max_matching_size(h: &Hypergraph) -> usize {
    all_matchings(h).iter().map(Vec::len).max().unwrap_or(0)
}

pub fn all_maximum_matchings(h: &Hypergraph) -> Vec<Vec<usize>> {
    let all = all_matchings(h);
    let best = all.iter().map(Vec::len).max().unwrap_or(0);
    all.into_iter().filter(|m| m.len() == best).collect()
}

/// The lexicographically least maximum matching (sorted index lists compared
/// element-wise).
pub fn lex_least_maximum_matching(h: &Hypergraph) -> Vec<usize> {
    all_maximum_matchings(h).into_iter().min().unwrap_or_default()
}

fn vertex_subsets(h: &Hypergraph) -> impl Iterator<Item = Vec<VertexId>> + '_ {
    let n = h.vertex_count();
    assert!(n <= MAX_ORACLE_VERTICES, "oracle is for small instances");
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
}

fn covers_all_edges(h: &Hypergraph, vertices: &[VertexId]) -> bool {
    h.edges()
        .iter()
        .all(|edge| edge.iter().any(|v| vertices.contains(v)))
}

pub fn oracle_covering_number(h: &Hypergraph) -> usize {
    vertex_subsets(h)
        .filter(|c| covers_all_edges(h, c))
        .map(|c| c.len())
        .min()
        .expect("the full vertex set covers everything")
}

pub fn all_minimum_covers(h: &Hypergraph) -> Vec<Vec<VertexId>> {
    let nu = oracle_covering_number(h);
    vertex_subsets(h)
        .filter(|c| c.len() == nu && covers_all_edges(h, c))
        .collect()
}

pub fn oracle_bipartite(h: &Hypergraph) -> bool {
    vertex_subsets(h).any(|side| {
        h.edges().iter().all(|edge| {
            edge.len() <= 1
                || (edge.iter().any(|v| side.contains(v))
                    && edge.iter().any(|v| !side.contains(v)))
        })
    })
}

pub fn oracle_exact_transversal(h: &Hypergraph) -> bool {
    vertex_subsets(h).any(|choice| {
        h.edges()
            .iter()
            .all(|edge| edge.iter().filter(|v| choice.contains(v)).count() == 1)
    })
}

/// Strict König search: some matching and some choice of one representative
/// per matched edge whose representative set covers every edge.
pub fn oracle_konig(h: &Hypergraph) -> bool {
    for matching in all_matchings(h) {
        if matching.is_empty() {
            if h.edge_count() == 0 {
                return true;
            }
            continue;
        }
        let sizes: Vec<usize> = matching.iter().map(|&i| h.edge(i).len()).collect();
        let mut picks = vec![0usize; matching.len()];
        loop {
            let representatives: Vec<VertexId> = matching
                .iter()
                .zip(&picks)
                .map(|(&edge, &pick)| h.edge(edge)[pick])
                .collect();
            if covers_all_edges(h, &representatives) {
                return true;
            }
            let mut digit = 0;
            loop {
                if digit == picks.len() {
                    break;
                }
                picks[digit] += 1;
                if picks[digit] < sizes[digit] {
                    break;
                }
                picks[digit] = 0;
                digit += 1;
            }
            if digit == picks.len() {
                break;
            }
        }
    }
    false
}

/// Deterministic batch of small random hypergraphs with mixed shapes.
pub fn random_instances(count: usize, base_seed: u64, max_n: u32, max_m: u64) -> Vec<Hypergraph> {
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0u64;
    while out.len() < count {
        let seed = base_seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9));
        attempt += 1;
        let n = 1 + (seed % max_n as u64) as u32;
        let arity = 1 + ((seed >> 8) % n as u64) as u32;
        let m = (seed >> 16) % (max_m + 1);
        if let Ok(h) = random_hypergraph(n, m, arity, seed) {
            out.push(h);
        }
    }
    out
}

/// Deterministic random graph: `m` distinct pairs on `n` vertices.
pub fn random_graph(n: u32, m: usize, seed: u64) -> Hypergraph {
    let mut pairs: Vec<Vec<VertexId>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push(vec![a, b]);
        }
    }
    let mut rng = seeded_rng(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    Hypergraph::new(n, pairs).expect("pairs are valid edges")
}

/// Deterministic random bipartite graph: vertices are split by seeded coin
/// flips and `m` distinct cross pairs are drawn.
pub fn random_bipartite_graph(n: u32, m: usize, seed: u64) -> Hypergraph {
    let mut rng = seeded_rng(seed);
    let sides: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut cross: Vec<Vec<VertexId>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if sides[a as usize] != sides[b as usize] {
                cross.push(vec![a, b]);
            }
        }
    }
    cross.shuffle(&mut rng);
    cross.truncate(m);
    Hypergraph::new(n, cross).expect("pairs are valid edges")
}

/// The six-vertex probe: three disjoint pairs plus a triangle on one side.
pub fn matched_triangle_probe() -> Hypergraph {
    Hypergraph::new(
        6,
        [
            vec![0, 1],
            vec![2, 3],
            vec![4, 5],
            vec![0, 2],
            vec![2, 4],
            vec![0, 4],
        ],
    )
    .unwrap()
}

/// Named instances exercised by the cross-cutting checks.
pub fn corpus() -> Vec<(String, Hypergraph)> {
    let mut items: Vec<(String, Hypergraph)> = Vec::new();
    for n in 1..=6 {
        items.push((format!("path{n}"), path_graph(n).unwrap()));
    }
    for n in 3..=7 {
        items.push((format!("cycle{n}"), cycle_graph(n).unwrap()));
    }
    for n in 2..=6 {
        items.push((format!("complete{n}"), complete_graph(n).unwrap()));
    }
    items.push(("cofinite5_0".into(), cofinite_family(5, 0).unwrap()));
    items.push(("cofinite5_1".into(), cofinite_family(5, 1).unwrap()));
    items.push(("cofinite6_2".into(), cofinite_family(6, 2).unwrap()));
    items.push(("cofinite12_1".into(), cofinite_family(12, 1).unwrap()));
    items.push(("large4_2".into(), large_subsets_family(4, 2).unwrap()));
    items.push(("large4_3".into(), large_subsets_family(4, 3).unwrap()));
    items.push(("large6_3".into(), large_subsets_family(6, 3).unwrap()));
    items.push(("large8_4".into(), large_subsets_family(8, 4).unwrap()));
    items.push(("affine2".into(), affine_lines_family(2).unwrap()));
    items.push(("affine3".into(), affine_lines_family(3).unwrap()));
    items.push(("probe".into(), matched_triangle_probe()));
    for (i, h) in random_instances(200, 0xC0FFEE, 8, 8).into_iter().enumerate() {
        items.push((format!("random{i}"), h));
    }
    items
}
