//! Exact search: maximum matching (set packing), covering number (hitting
//! set), vertex-set splitting, and exact transversal.
//!
//! Every solver is a complete, deterministic backtracking search over the
//! canonical edge/vertex order, so identical inputs produce identical
//! witnesses: the witness returned is the first one found under
//! lowest-index-first branching (lexicographically minimal in that order,
//! not globally canonical). Searches are budgeted by node count and abort
//! with [`SolverError::BudgetExceeded`] instead of returning a possibly
//! non-optimal answer.

use std::time::Instant;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::hypergraph::{
    Bipartition, CoverSolution, ExactTransversal, Hypergraph, Matching, VertexId,
};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Node-count cap for a single solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver budget exceeded after {nodes_explored} nodes")]
    BudgetExceeded { nodes_explored: u64 },
}

/// Search effort accounting for one solve.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub optimum_proved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSolution {
    pub matching: Matching,
    pub stats: SolveStats,
}

impl MatchingSolution {
    pub fn size(&self) -> usize {
        self.matching.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverOutcome {
    pub solution: CoverSolution,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionOutcome {
    pub bipartition: Option<Bipartition>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalOutcome {
    pub transversal: Option<ExactTransversal>,
    pub stats: SolveStats,
}

struct NodeCounter {
    nodes: u64,
    max_nodes: u64,
}

impl NodeCounter {
    fn new(budget: &Budget) -> Self {
        NodeCounter {
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SolverError::BudgetExceeded {
                nodes_explored: self.nodes,
            });
        }
        Ok(())
    }

    fn finish(&self, start: Instant) -> SolveStats {
        SolveStats {
            nodes_explored: self.nodes,
            elapsed_ms: start.elapsed().as_millis() as u64,
            optimum_proved: true,
        }
    }
}

/// Maximum-cardinality set of pairwise disjoint edges, by branch and bound
/// over edge inclusion (include before exclude, lowest edge index first).
/// The bound at each node is `min(available edges, free vertices / smallest
/// available edge)`; the first descent is the greedy lowest-index packing.
pub fn max_matching(h: &Hypergraph, budget: &Budget) -> Result<MatchingSolution, SolverError> {
    struct Search<'a> {
        h: &'a Hypergraph,
        counter: NodeCounter,
        used: BitSet,
        current: Vec<usize>,
        best: Vec<usize>,
        has_best: bool,
    }

    impl Search<'_> {
        fn recurse(&mut self, from: usize) -> Result<(), SolverError> {
            self.counter.tick()?;
            let m = self.h.edge_count();
            let mut available = 0usize;
            let mut min_size = usize::MAX;
            let mut next = None;
            for j in from..m {
                if self.used.is_disjoint(self.h.edge_set(j)) {
                    available += 1;
                    min_size = min_size.min(self.h.edge(j).len());
                    if next.is_none() {
                        next = Some(j);
                    }
                }
            }
            let Some(next) = next else {
                if !self.has_best || self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                    self.has_best = true;
                }
                return Ok(());
            };
            let free = self.h.vertex_count() as usize - self.used.count();
            let bound = available.min(free / min_size);
            if self.has_best && self.current.len() + bound <= self.best.len() {
                return Ok(());
            }
            self.used.union_with(self.h.edge_set(next));
            self.current.push(next);
            self.recurse(next + 1)?;
            self.current.pop();
            self.used.difference_with(self.h.edge_set(next));
            self.recurse(next + 1)
        }
    }

    let start = Instant::now();
    let mut search = Search {
        h,
        counter: NodeCounter::new(budget),
        used: BitSet::new(h.vertex_count() as usize),
        current: Vec::new(),
        best: Vec::new(),
        has_best: false,
    };
    search.recurse(0)?;
    Ok(MatchingSolution {
        matching: Matching::new(search.best),
        stats: search.counter.finish(start),
    })
}

/// Minimum vertex cover (hitting set), branching on the vertices of the
/// lowest-index uncovered edge in ascending order, pruned by a greedy
/// packing of pairwise disjoint uncovered edges.
pub fn covering_number(h: &Hypergraph, budget: &Budget) -> Result<CoverOutcome, SolverError> {
    struct Search<'a> {
        h: &'a Hypergraph,
        counter: NodeCounter,
        covered: Vec<bool>,
        uncovered: usize,
        current: Vec<VertexId>,
        best: Option<Vec<VertexId>>,
    }

    impl Search<'_> {
        fn packing_bound(&self) -> usize {
            let mut union = BitSet::new(self.h.vertex_count() as usize);
            let mut count = 0;
            for j in 0..self.h.edge_count() {
                if !self.covered[j] && union.is_disjoint(self.h.edge_set(j)) {
                    union.union_with(self.h.edge_set(j));
                    count += 1;
                }
            }
            count
        }

        fn recurse(&mut self) -> Result<(), SolverError> {
            self.counter.tick()?;
            if self.uncovered == 0 {
                if self.best.as_ref().is_none_or(|b| self.current.len() < b.len()) {
                    self.best = Some(self.current.clone());
                }
                return Ok(());
            }
            if let Some(best) = &self.best {
                if self.current.len() + self.packing_bound() >= best.len() {
                    return Ok(());
                }
            }
            let target = (0..self.h.edge_count())
                .find(|&j| !self.covered[j])
                .expect("uncovered edge exists");
            let vertices: Vec<VertexId> = self.h.edge(target).to_vec();
            for v in vertices {
                let mut newly = Vec::new();
                for j in 0..self.h.edge_count() {
                    if !self.covered[j] && self.h.edge_set(j).contains(v as usize) {
                        self.covered[j] = true;
                        newly.push(j);
                    }
                }
                self.uncovered -= newly.len();
                self.current.push(v);
                self.recurse()?;
                self.current.pop();
                self.uncovered += newly.len();
                for j in newly {
                    self.covered[j] = false;
                }
            }
            Ok(())
        }
    }

    let start = Instant::now();
    let mut search = Search {
        h,
        counter: NodeCounter::new(budget),
        covered: vec![false; h.edge_count()],
        uncovered: h.edge_count(),
        current: Vec::new(),
        best: None,
    };
    search.recurse()?;
    let mut cover = search.best.expect("search always records a cover");
    cover.sort_unstable();
    let nu = cover.len();
    Ok(CoverOutcome {
        solution: CoverSolution { cover, nu },
        stats: search.counter.finish(start),
    })
}

/// Splits the vertex set so that every edge with more than one vertex meets
/// both sides, by backtracking over the constrained vertices in ascending
/// order ("in D" tried first) with unit propagation: an edge whose assigned
/// vertices are all on one side and with a single vertex left forces that
/// vertex to the other side. Unconstrained vertices stay outside `D`.
pub fn bipartition(h: &Hypergraph, budget: &Budget) -> Result<BipartitionOutcome, SolverError> {
    struct Search<'a> {
        h: &'a Hypergraph,
        counter: NodeCounter,
        big_edges: Vec<usize>,
        edges_of: Vec<Vec<usize>>,
        assignment: Vec<Option<bool>>,
        inside: Vec<u32>,
        outside: Vec<u32>,
        unassigned: Vec<u32>,
    }

    impl Search<'_> {
        /// Assigns and propagates; returns assigned vertices on success and
        /// rolls back internally on conflict.
        fn propagate(&mut self, v: usize, value: bool) -> Option<Vec<usize>> {
            let mut trail = Vec::new();
            let mut queue = vec![(v, value)];
            while let Some((v, value)) = queue.pop() {
                match self.assignment[v] {
                    Some(existing) => {
                        if existing != value {
                            self.rollback(&trail);
                            return None;
                        }
                        continue;
                    }
                    None => {
                        self.assignment[v] = Some(value);
                        trail.push(v);
                    }
                }
                // Apply all counter updates for v before examining any edge,
                // so a conflict rollback sees consistent counters.
                for local in 0..self.edges_of[v].len() {
                    let e = self.edges_of[v][local];
                    if value {
                        self.inside[e] += 1;
                    } else {
                        self.outside[e] += 1;
                    }
                    self.unassigned[e] -= 1;
                }
                for local in 0..self.edges_of[v].len() {
                    let e = self.edges_of[v][local];
                    let mono_inside = self.outside[e] == 0;
                    let mono_outside = self.inside[e] == 0;
                    if self.unassigned[e] == 0 && (mono_inside || mono_outside) {
                        self.rollback(&trail);
                        return None;
                    }
                    if self.unassigned[e] == 1 && (mono_inside || mono_outside) {
                        let forced_value = mono_outside;
                        let pending = self
                            .h
                            .edge(self.big_edges[e])
                            .iter()
                            .map(|&w| w as usize)
                            .find(|&w| self.assignment[w].is_none())
                            .expect("edge has one unassigned vertex");
                        queue.push((pending, forced_value));
                    }
                }
            }
            Some(trail)
        }

        fn rollback(&mut self, trail: &[usize]) {
            for &v in trail {
                let value = self.assignment[v].take().expect("trail vertex assigned");
                for &e in &self.edges_of[v] {
                    if value {
                        self.inside[e] -= 1;
                    } else {
                        self.outside[e] -= 1;
                    }
                    self.unassigned[e] += 1;
                }
            }
        }

        fn recurse(&mut self, from: usize) -> Result<bool, SolverError> {
            self.counter.tick()?;
            let next = (from..self.assignment.len())
                .find(|&v| !self.edges_of[v].is_empty() && self.assignment[v].is_none());
            let Some(v) = next else {
                return Ok(true);
            };
            for value in [true, false] {
                if let Some(trail) = self.propagate(v, value) {
                    if self.recurse(v + 1)? {
                        return Ok(true);
                    }
                    self.rollback(&trail);
                }
            }
            Ok(false)
        }
    }

    let start = Instant::now();
    let n = h.vertex_count() as usize;
    let big_edges: Vec<usize> = (0..h.edge_count()).filter(|&i| h.edge(i).len() > 1).collect();
    let mut edges_of = vec![Vec::new(); n];
    for (local, &e) in big_edges.iter().enumerate() {
        for &v in h.edge(e) {
            edges_of[v as usize].push(local);
        }
    }
    let sizes: Vec<u32> = big_edges.iter().map(|&e| h.edge(e).len() as u32).collect();
    let mut search = Search {
        h,
        counter: NodeCounter::new(budget),
        big_edges,
        edges_of,
        assignment: vec![None; n],
        inside: vec![0; sizes.len()],
        outside: vec![0; sizes.len()],
        unassigned: sizes,
    };
    let found = search.recurse(0)?;
    let bipartition = found.then(|| {
        let side: Vec<VertexId> = search
            .assignment
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == Some(true))
            .map(|(v, _)| v as VertexId)
            .collect();
        Bipartition { side }
    });
    Ok(BipartitionOutcome {
        bipartition,
        stats: search.counter.finish(start),
    })
}

/// Vertex set meeting every edge exactly once, by backtracking on the
/// lowest-index unhit edge: each of its non-excluded vertices is tried in
/// ascending order; choosing a vertex hits all edges through it and excludes
/// their remaining vertices, so no edge is ever hit twice.
pub fn exact_transversal(
    h: &Hypergraph,
    budget: &Budget,
) -> Result<TransversalOutcome, SolverError> {
    struct Search<'a> {
        h: &'a Hypergraph,
        counter: NodeCounter,
        edges_of: Vec<Vec<usize>>,
        banned: BitSet,
        hit: Vec<bool>,
        chosen: Vec<VertexId>,
    }

    impl Search<'_> {
        fn recurse(&mut self) -> Result<bool, SolverError> {
            self.counter.tick()?;
            let Some(target) = (0..self.h.edge_count()).find(|&j| !self.hit[j]) else {
                return Ok(true);
            };
            let vertices: Vec<VertexId> = self.h.edge(target).to_vec();
            for v in vertices {
                if self.banned.contains(v as usize) {
                    continue;
                }
                let mut newly_hit = Vec::new();
                let mut newly_banned = Vec::new();
                for &e in &self.edges_of[v as usize] {
                    debug_assert!(!self.hit[e], "unbanned vertex lies on an unhit edge only");
                    self.hit[e] = true;
                    newly_hit.push(e);
                    for &w in self.h.edge(e) {
                        if w != v && !self.banned.contains(w as usize) {
                            self.banned.insert(w as usize);
                            newly_banned.push(w as usize);
                        }
                    }
                }
                self.chosen.push(v);
                if self.recurse()? {
                    return Ok(true);
                }
                self.chosen.pop();
                for e in newly_hit {
                    self.hit[e] = false;
                }
                for w in newly_banned {
                    self.banned.remove(w);
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
        counter: NodeCounter::new(budget),
        edges_of,
        banned: BitSet::new(n),
        hit: vec![false; h.edge_count()],
        chosen: Vec::new(),
    };
    let found = search.recurse()?;
    let transversal = found.then(|| {
        let mut choice = search.chosen.clone();
        choice.sort_unstable();
        ExactTransversal { choice }
    });
    Ok(TransversalOutcome {
        transversal,
        stats: search.counter.finish(start),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{
        affine_lines_family, cofinite_family, complete_graph, cycle_graph, large_subsets_family,
        path_graph,
    };
    use crate::hypergraph::{
        is_matching, verify_bipartition, verify_cover, verify_exact_transversal,
    };

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn matching_on_complete_graph() {
        let k4 = complete_graph(4).unwrap();
        let result = max_matching(&k4, &budget()).unwrap();
        assert_eq!(result.size(), 2);
        assert!(is_matching(&k4, &result.matching));
        // First-found under include-first branching: edges [0,1] and [2,3].
        assert_eq!(result.matching.indices(), &[0, 5]);
        assert!(result.stats.optimum_proved);
        assert!(result.stats.nodes_explored >= 1);
    }

    #[test]
    fn matching_on_cofinite_family() {
        let h = cofinite_family(5, 1).unwrap();
        assert_eq!(max_matching(&h, &budget()).unwrap().size(), 1);
    }

    #[test]
    fn matching_on_disjoint_edges() {
        let h = Hypergraph::new(4, [vec![0, 1], vec![2, 3]]).unwrap();
        let result = max_matching(&h, &budget()).unwrap();
        assert_eq!(result.size(), 2);
        assert_eq!(result.matching.indices(), &[0, 1]);
    }

    #[test]
    fn matching_on_empty_edge_set() {
        let h = Hypergraph::new(3, Vec::<Vec<VertexId>>::new()).unwrap();
        let result = max_matching(&h, &budget()).unwrap();
        assert_eq!(result.size(), 0);
        assert!(result.matching.is_empty());
    }

    #[test]
    fn cover_on_complete_graph() {
        let k4 = complete_graph(4).unwrap();
        let result = covering_number(&k4, &budget()).unwrap();
        assert_eq!(result.solution.nu, 3);
        assert!(verify_cover(&k4, &result.solution.cover));
    }

    #[test]
    fn cover_on_cofinite_family() {
        let h = cofinite_family(5, 1).unwrap();
        let result = covering_number(&h, &budget()).unwrap();
        assert_eq!(result.solution.nu, 2);
        assert!(verify_cover(&h, &result.solution.cover));
    }

    #[test]
    fn cover_of_single_edge() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let result = covering_number(&h, &budget()).unwrap();
        assert_eq!(result.solution.nu, 1);
        assert_eq!(result.solution.cover, vec![0]);
    }

    #[test]
    fn cover_of_empty_edge_set() {
        let h = Hypergraph::new(4, Vec::<Vec<VertexId>>::new()).unwrap();
        let result = covering_number(&h, &budget()).unwrap();
        assert_eq!(result.solution.nu, 0);
        assert!(result.solution.cover.is_empty());
    }

    #[test]
    fn bipartition_of_even_cycle() {
        let c4 = cycle_graph(4).unwrap();
        let result = bipartition(&c4, &budget()).unwrap();
        let d = result.bipartition.unwrap();
        assert!(verify_bipartition(&c4, &d));
        assert_eq!(d.side, vec![0, 2]);
    }

    #[test]
    fn bipartition_of_odd_cycle_absent() {
        let c5 = cycle_graph(5).unwrap();
        assert!(bipartition(&c5, &budget()).unwrap().bipartition.is_none());
    }

    #[test]
    fn bipartition_of_large_subsets_family() {
        let h = large_subsets_family(8, 4).unwrap();
        assert!(bipartition(&h, &budget()).unwrap().bipartition.is_none());

        let (three, _) = h
            .induced(&crate::hypergraph::EdgeSubset::new([0, 1, 2]))
            .unwrap();
        let found = bipartition(&three, &budget()).unwrap().bipartition.unwrap();
        assert!(verify_bipartition(&three, &found));
        // The per-edge minima set is another witness.
        let minima: Vec<VertexId> = three.edges().iter().map(|e| e[0]).collect();
        assert!(verify_bipartition(&three, &Bipartition { side: minima }));
    }

    #[test]
    fn bipartition_of_empty_and_singletons() {
        let empty = Hypergraph::new(0, Vec::<Vec<VertexId>>::new()).unwrap();
        assert_eq!(
            bipartition(&empty, &budget()).unwrap().bipartition,
            Some(Bipartition { side: vec![] })
        );
        let singles = Hypergraph::new(2, [vec![0], vec![1]]).unwrap();
        assert_eq!(
            bipartition(&singles, &budget()).unwrap().bipartition,
            Some(Bipartition { side: vec![] })
        );
    }

    #[test]
    fn transversal_of_shared_vertex_path() {
        let h = Hypergraph::new(3, [vec![0, 1], vec![1, 2]]).unwrap();
        let result = exact_transversal(&h, &budget()).unwrap();
        let t = result.transversal.unwrap();
        assert!(verify_exact_transversal(&h, &t));
        // Both {1} and {0,2} are exact transversals; the first one found
        // under ascending vertex branching is {0,2}.
        assert_eq!(t.choice, vec![0, 2]);
    }

    #[test]
    fn transversal_of_disjoint_edges() {
        let h = Hypergraph::new(4, [vec![0, 1], vec![2, 3]]).unwrap();
        let t = exact_transversal(&h, &budget()).unwrap().transversal.unwrap();
        assert_eq!(t.choice, vec![0, 2]);
    }

    #[test]
    fn transversal_of_affine_plane_absent() {
        let h = affine_lines_family(3).unwrap();
        assert!(exact_transversal(&h, &budget()).unwrap().transversal.is_none());
    }

    #[test]
    fn transversal_of_triangle_absent() {
        let h = Hypergraph::new(3, [vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(exact_transversal(&h, &budget()).unwrap().transversal.is_none());
    }

    #[test]
    fn transversal_respects_singleton_edges() {
        let h = Hypergraph::new(3, [vec![0], vec![0, 1, 2]]).unwrap();
        let t = exact_transversal(&h, &budget()).unwrap().transversal.unwrap();
        assert_eq!(t.choice, vec![0]);
    }

    #[test]
    fn empty_edge_set_has_empty_transversal() {
        let h = Hypergraph::new(2, Vec::<Vec<VertexId>>::new()).unwrap();
        let t = exact_transversal(&h, &budget()).unwrap().transversal.unwrap();
        assert!(t.choice.is_empty());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let k4 = complete_graph(4).unwrap();
        let tiny = Budget { max_nodes: 1 };
        assert!(matches!(
            max_matching(&k4, &tiny),
            Err(SolverError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            covering_number(&k4, &tiny),
            Err(SolverError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn matching_bound_never_beats_cover() {
        for h in [
            complete_graph(5).unwrap(),
            cycle_graph(5).unwrap(),
            path_graph(6).unwrap(),
            cofinite_family(6, 2).unwrap(),
            large_subsets_family(5, 2).unwrap(),
        ] {
            let m = max_matching(&h, &budget()).unwrap().size();
            let nu = covering_number(&h, &budget()).unwrap().solution.nu;
            assert!(m <= nu, "matching {m} exceeds covering number {nu}");
        }
    }
}
