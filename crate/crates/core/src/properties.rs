//! Certified deciders for the four hypergraph properties, plus the
//! graph-only results (matching/cover upgrade and odd-cycle extraction).
//!
//! `has_konig` runs its own complete search instead of combining
//! `has_weak_konig` with the graph upgrade, because the upgrade argument is
//! specific to graphs. A budget overrun surfaces as
//! [`SolverError::BudgetExceeded`] and is never coerced to "does not hold".

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::hypergraph::{
    verify_konig_certificate, Hypergraph, KonigCertificate, Matching, VertexId,
};
use crate::solvers::{
    bipartition, covering_number, exact_transversal, max_matching, BipartitionOutcome, Budget,
    SolveStats, SolverError, TransversalOutcome,
};

/// The four decidable properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Konig,
    WeakKonig,
    Bipartite,
    Cp,
}

impl std::fmt::Display for PropertyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            PropertyKind::Konig => "konig",
            PropertyKind::WeakKonig => "weak-konig",
            PropertyKind::Bipartite => "bipartite",
            PropertyKind::Cp => "cp",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("input is not a graph: edge {index} has {size} vertices")]
    NotAGraph { index: usize, size: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KonigOutcome {
    pub certificate: Option<KonigCertificate>,
    pub stats: SolveStats,
}

impl KonigOutcome {
    pub fn holds(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Decides whether some matching admits a choice of one representative
/// vertex per matched edge that covers every edge. The search targets the
/// lowest-index edge not yet covered by the chosen representatives and
/// branches over each of its vertices `v` and each edge through `v` disjoint
/// from the current matching, backtracking exhaustively.
pub fn has_konig(h: &Hypergraph, budget: &Budget) -> Result<KonigOutcome, SolverError> {
    struct Search<'a> {
        h: &'a Hypergraph,
        nodes: u64,
        max_nodes: u64,
        edges_of: Vec<Vec<usize>>,
        matched_union: BitSet,
        matching: Vec<usize>,
        representatives: Vec<VertexId>,
        rep_hits: Vec<u32>,
        unhit: usize,
    }

    impl Search<'_> {
        fn recurse(&mut self) -> Result<bool, SolverError> {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(SolverError::BudgetExceeded {
                    nodes_explored: self.nodes,
                });
            }
            if self.unhit == 0 {
                return Ok(true);
            }
            let target = (0..self.h.edge_count())
                .find(|&j| self.rep_hits[j] == 0)
                .expect("unhit edge exists");
            let vertices: Vec<VertexId> = self.h.edge(target).to_vec();
            for v in vertices {
                for i in 0..self.edges_of[v as usize].len() {
                    let e = self.edges_of[v as usize][i];
                    if !self.matched_union.is_disjoint(self.h.edge_set(e)) {
                        continue;
                    }
                    self.matching.push(e);
                    self.representatives.push(v);
                    self.matched_union.union_with(self.h.edge_set(e));
                    for j in 0..self.edges_of[v as usize].len() {
                        let f = self.edges_of[v as usize][j];
                        self.rep_hits[f] += 1;
                        if self.rep_hits[f] == 1 {
                            self.unhit -= 1;
                        }
                    }
                    let found = self.recurse()?;
                    for j in 0..self.edges_of[v as usize].len() {
                        let f = self.edges_of[v as usize][j];
                        self.rep_hits[f] -= 1;
                        if self.rep_hits[f] == 0 {
                            self.unhit += 1;
                        }
                    }
                    if found {
                        return Ok(true);
                    }
                    self.matched_union.difference_with(self.h.edge_set(e));
                    self.representatives.pop();
                    self.matching.pop();
                }
            }
            Ok(false)
        }
    }

    let start = Instant::now();
    let n = h.vertex_count() as usize;
    let mut edges_of = vec![Vec::new(); n];
    for e in 0..h.edge_count() {
        for &v in h.edge(e) {
            edges_of[v as usize].push(e);
        }
    }
    let mut search = Search {
        h,
        nodes: 0,
        max_nodes: budget.max_nodes,
        edges_of,
        matched_union: BitSet::new(n),
        matching: Vec::new(),
        representatives: Vec::new(),
        rep_hits: vec![0; h.edge_count()],
        unhit: h.edge_count(),
    };
    let found = search.recurse()?;
    let certificate = found.then(|| {
        let mut cover = search.representatives.clone();
        cover.sort_unstable();
        KonigCertificate {
            matching: Matching::new(search.matching.iter().copied()),
            cover,
        }
    });
    Ok(KonigOutcome {
        certificate,
        stats: SolveStats {
            nodes_explored: search.nodes,
            elapsed_ms: start.elapsed().as_millis() as u64,
            optimum_proved: true,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakKonigOutcome {
    pub holds: bool,
    pub matching: Matching,
    pub cover: crate::hypergraph::CoverSolution,
    pub stats: SolveStats,
}

/// Holds iff the maximum matching size equals the covering number; both
/// optimal witnesses are returned either way.
pub fn has_weak_konig(h: &Hypergraph, budget: &Budget) -> Result<WeakKonigOutcome, SolverError> {
    let matching = max_matching(h, budget)?;
    let cover = covering_number(h, budget)?;
    let stats = SolveStats {
        nodes_explored: matching.stats.nodes_explored + cover.stats.nodes_explored,
        elapsed_ms: matching.stats.elapsed_ms + cover.stats.elapsed_ms,
        optimum_proved: true,
    };
    Ok(WeakKonigOutcome {
        holds: matching.size() == cover.solution.nu,
        matching: matching.matching,
        cover: cover.solution,
        stats,
    })
}

pub fn is_bipartite(h: &Hypergraph, budget: &Budget) -> Result<BipartitionOutcome, SolverError> {
    bipartition(h, budget)
}

/// Exact-transversal existence. Defined here for arbitrary edges; singleton
/// edges simply force their vertex into the choice set (callers that want
/// the classical setting can check [`Hypergraph::has_singleton_edge`]).
pub fn has_cp(h: &Hypergraph, budget: &Budget) -> Result<TransversalOutcome, SolverError> {
    exact_transversal(h, budget)
}

/// Decides `kind` on `h`, discarding witnesses.
pub fn holds(h: &Hypergraph, kind: PropertyKind, budget: &Budget) -> Result<bool, SolverError> {
    match kind {
        PropertyKind::Konig => Ok(has_konig(h, budget)?.holds()),
        PropertyKind::WeakKonig => Ok(has_weak_konig(h, budget)?.holds),
        PropertyKind::Bipartite => Ok(is_bipartite(h, budget)?.bipartition.is_some()),
        PropertyKind::Cp => Ok(has_cp(h, budget)?.transversal.is_some()),
    }
}

/// For a graph whose maximum matching size equals its covering number, any
/// minimum cover meets each maximum-matching edge in exactly one vertex and
/// contains nothing else, so the two optimal witnesses already form a strict
/// certificate. Returns `None` when the optima differ.
pub fn graph_konig_upgrade(
    g: &Hypergraph,
    budget: &Budget,
) -> Result<Option<KonigCertificate>, PropertyError> {
    require_graph(g)?;
    let matching = max_matching(g, budget)?;
    let cover = covering_number(g, budget)?;
    if matching.size() != cover.solution.nu {
        return Ok(None);
    }
    let certificate = KonigCertificate {
        matching: matching.matching,
        cover: cover.solution.cover,
    };
    verify_konig_certificate(g, &certificate)
        .expect("equal optima on a graph always yield a valid certificate");
    Ok(Some(certificate))
}

/// BFS two-coloring; on a same-color edge the tree paths to the common
/// ancestor close an odd cycle, returned as its vertex sequence.
pub fn odd_cycle(g: &Hypergraph) -> Result<Option<Vec<VertexId>>, PropertyError> {
    require_graph(g)?;
    let n = g.vertex_count() as usize;
    let mut adjacency = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        let (a, b) = (g.edge(e)[0], g.edge(e)[1]);
        adjacency[a as usize].push(b);
        adjacency[b as usize].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut depth = vec![0u32; n];
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = std::collections::VecDeque::from([root as VertexId]);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u as usize] {
                match color[w as usize] {
                    None => {
                        color[w as usize] = Some(!color[u as usize].unwrap());
                        parent[w as usize] = Some(u);
                        depth[w as usize] = depth[u as usize] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if c == color[u as usize].unwrap() => {
                        return Ok(Some(close_cycle(u, w, &parent, &depth)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

fn close_cycle(
    u: VertexId,
    w: VertexId,
    parent: &[Option<VertexId>],
    depth: &[u32],
) -> Vec<VertexId> {
    let mut up_u = vec![u];
    let mut up_w = vec![w];
    let (mut a, mut b) = (u, w);
    while depth[a as usize] > depth[b as usize] {
        a = parent[a as usize].unwrap();
        up_u.push(a);
    }
    while depth[b as usize] > depth[a as usize] {
        b = parent[b as usize].unwrap();
        up_w.push(b);
    }
    while a != b {
        a = parent[a as usize].unwrap();
        b = parent[b as usize].unwrap();
        up_u.push(a);
        up_w.push(b);
    }
    // up_u ends at the common ancestor; append the other path back down to w.
    let mut cycle = up_u;
    cycle.extend(up_w.iter().rev().skip(1));
    cycle
}

fn require_graph(g: &Hypergraph) -> Result<(), PropertyError> {
    for (index, edge) in g.edges().iter().enumerate() {
        if edge.len() != 2 {
            return Err(PropertyError::NotAGraph {
                index,
                size: edge.len(),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        affine_lines_family, cofinite_family, complete_graph, cycle_graph, path_graph,
    };
    use crate::hypergraph::EdgeSubset;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn empty_edge_set_has_konig_vacuously() {
        let h = Hypergraph::new(4, Vec::<Vec<VertexId>>::new()).unwrap();
        let outcome = has_konig(&h, &budget()).unwrap();
        let cert = outcome.certificate.unwrap();
        assert!(cert.matching.is_empty() && cert.cover.is_empty());
    }

    #[test]
    fn cofinite_family_fails_konig() {
        let h = cofinite_family(5, 1).unwrap();
        assert!(!has_konig(&h, &budget()).unwrap().holds());
    }

    #[test]
    fn cycle_has_konig_with_expected_certificate() {
        let c4 = cycle_graph(4).unwrap();
        let cert = has_konig(&c4, &budget()).unwrap().certificate.unwrap();
        verify_konig_certificate(&c4, &cert).unwrap();
        // Canonical edges [0,1],[0,3],[1,2],[2,3]: matching {[0,1],[2,3]}, cover {0,2}.
        assert_eq!(cert.matching.indices(), &[0, 3]);
        assert_eq!(cert.cover, vec![0, 2]);
    }

    #[test]
    fn path_has_konig_via_shared_vertex() {
        let p3 = path_graph(3).unwrap();
        let cert = has_konig(&p3, &budget()).unwrap().certificate.unwrap();
        verify_konig_certificate(&p3, &cert).unwrap();
        assert_eq!(cert.cover.len(), cert.matching.len());
    }

    #[test]
    fn weak_konig_on_graphs() {
        let k4 = complete_graph(4).unwrap();
        let outcome = has_weak_konig(&k4, &budget()).unwrap();
        assert!(!outcome.holds);
        assert_eq!(outcome.matching.len(), 2);
        assert_eq!(outcome.cover.nu, 3);

        let c4 = cycle_graph(4).unwrap();
        assert!(has_weak_konig(&c4, &budget()).unwrap().holds);

        let empty = Hypergraph::new(0, Vec::<Vec<VertexId>>::new()).unwrap();
        let outcome = has_weak_konig(&empty, &budget()).unwrap();
        assert!(outcome.holds);
        assert_eq!(outcome.cover.nu, 0);
    }

    #[test]
    fn bipartite_cycles() {
        assert!(is_bipartite(&cycle_graph(5).unwrap(), &budget())
            .unwrap()
            .bipartition
            .is_none());
        assert!(is_bipartite(&cycle_graph(6).unwrap(), &budget())
            .unwrap()
            .bipartition
            .is_some());
    }

    #[test]
    fn parallel_lines_are_bipartite() {
        // One parallel class of the 4-point plane: two disjoint lines.
        let h = Hypergraph::new(4, [vec![0, 1], vec![2, 3]]).unwrap();
        assert!(is_bipartite(&h, &budget()).unwrap().bipartition.is_some());
    }

    #[test]
    fn cp_on_affine_lines() {
        let h = affine_lines_family(3).unwrap();
        assert!(!has_cp(&h, &budget()).unwrap().transversal.is_some());
        let (three, _) = h.induced(&EdgeSubset::new([0, 1, 2])).unwrap();
        assert!(has_cp(&three, &budget()).unwrap().transversal.is_some());
        let empty = Hypergraph::new(2, Vec::<Vec<VertexId>>::new()).unwrap();
        let t = has_cp(&empty, &budget()).unwrap().transversal.unwrap();
        assert!(t.choice.is_empty());
    }

    #[test]
    fn upgrade_on_even_cycle() {
        let c4 = cycle_graph(4).unwrap();
        let cert = graph_konig_upgrade(&c4, &budget()).unwrap().unwrap();
        verify_konig_certificate(&c4, &cert).unwrap();
        assert_eq!(cert.matching.len(), 2);
    }

    #[test]
    fn upgrade_absent_on_odd_cycle() {
        let c5 = cycle_graph(5).unwrap();
        assert!(graph_konig_upgrade(&c5, &budget()).unwrap().is_none());
    }

    #[test]
    fn upgrade_on_single_edge() {
        let h = Hypergraph::new(2, [vec![0, 1]]).unwrap();
        let cert = graph_konig_upgrade(&h, &budget()).unwrap().unwrap();
        assert_eq!(cert.matching.indices(), &[0]);
        assert_eq!(cert.cover, vec![0]);
    }

    #[test]
    fn upgrade_rejects_hypergraphs() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            graph_konig_upgrade(&h, &budget()),
            Err(PropertyError::NotAGraph { index: 0, size: 3 })
        ));
    }

    fn assert_is_cycle(g: &Hypergraph, cycle: &[VertexId]) {
        assert!(cycle.len() >= 3 && cycle.len() % 2 == 1);
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), cycle.len(), "cycle repeats a vertex");
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            let mut pair = vec![a, b];
            pair.sort_unstable();
            assert!(
                g.edges().iter().any(|e| e == &pair),
                "cycle step {a}-{b} is not an edge"
            );
        }
    }

    #[test]
    fn odd_cycle_extraction() {
        let c5 = cycle_graph(5).unwrap();
        let cycle = odd_cycle(&c5).unwrap().unwrap();
        assert_eq!(cycle.len(), 5);
        assert_is_cycle(&c5, &cycle);

        assert!(odd_cycle(&cycle_graph(6).unwrap()).unwrap().is_none());

        let k4 = complete_graph(4).unwrap();
        let triangle = odd_cycle(&k4).unwrap().unwrap();
        assert_eq!(triangle.len(), 3);
        assert_is_cycle(&k4, &triangle);
    }

    #[test]
    fn odd_cycle_matches_bipartiteness_on_graphs() {
        for g in [
            path_graph(5).unwrap(),
            cycle_graph(4).unwrap(),
            cycle_graph(7).unwrap(),
            complete_graph(5).unwrap(),
        ] {
            let has_odd = odd_cycle(&g).unwrap().is_some();
            let bipartite = is_bipartite(&g, &budget()).unwrap().bipartition.is_some();
            assert_eq!(has_odd, !bipartite);
        }
    }

    #[test]
    fn konig_implies_weak_konig_on_samples() {
        for h in [
            cycle_graph(4).unwrap(),
            path_graph(4).unwrap(),
            cofinite_family(5, 1).unwrap(),
            complete_graph(4).unwrap(),
        ] {
            if has_konig(&h, &budget()).unwrap().holds() {
                assert!(has_weak_konig(&h, &budget()).unwrap().holds);
            }
        }
    }

    #[test]
    fn konig_does_not_force_bipartite() {
        // Three disjoint pairs matched and covered on one side of a triangle:
        // the strict property holds while a triangle blocks bipartiteness.
        let h = Hypergraph::new(
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
        .unwrap();
        let outcome = has_konig(&h, &budget()).unwrap();
        let cert = outcome.certificate.expect("strict certificate exists");
        verify_konig_certificate(&h, &cert).unwrap();
        assert!(is_bipartite(&h, &budget()).unwrap().bipartition.is_none());
    }
}
