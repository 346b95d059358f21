//! Hypergraph data model, canonical form, and certificate verification.
//!
//! A [`Hypergraph`] is a finite vertex set `0..vertex_count` together with a
//! family of distinct non-empty edges. Construction canonicalizes the edge
//! list: each edge is a sorted, deduplicated vertex list, the family is
//! deduplicated as a set of sets, and edges are ordered lexicographically by
//! their sorted vertex lists. All later machinery (solvers, deciders, file
//! formats, certificates) refers to edges by their index in this canonical
//! order, so two structurally equal hypergraphs are byte-identical.
//!
//! The certificate types here are passive data: anything may be constructed,
//! and the `verify_*` functions check it against a host hypergraph. A
//! [`KonigCertificate`] is accepted under the strict reading: the cover must
//! consist of exactly one vertex from each matched edge and nothing else, so
//! a valid certificate always has `|cover| = |matching|`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

/// Vertices are dense integers `0..vertex_count`; labels are presentation-only.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("empty edge")]
    EmptyEdge,
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: VertexId, vertex_count: u32 },
    #[error("edge index {index} out of range ({edge_count} edges)")]
    EdgeIndexOutOfRange { index: usize, edge_count: usize },
    #[error("label count {labels} does not match vertex count {vertex_count}")]
    LabelCountMismatch { labels: usize, vertex_count: u32 },
}

/// Finite hypergraph in canonical form. Immutable after construction.
#[derive(Clone)]
pub struct Hypergraph {
    vertex_count: u32,
    edges: Vec<Vec<VertexId>>,
    edge_sets: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

impl Hypergraph {
    /// Builds a validated, canonicalized hypergraph. Edges are deduplicated
    /// as sets and sorted lexicographically by sorted vertex list.
    pub fn new<I, E>(vertex_count: u32, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = VertexId>,
    {
        let mut canonical: Vec<Vec<VertexId>> = Vec::new();
        for edge in edges {
            let mut vertices: Vec<VertexId> = edge.into_iter().collect();
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.is_empty() {
                return Err(HypergraphError::EmptyEdge);
            }
            if let Some(&v) = vertices.iter().find(|&&v| v >= vertex_count) {
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count,
                });
            }
            canonical.push(vertices);
        }
        canonical.sort_unstable();
        canonical.dedup();
        let edge_sets = canonical
            .iter()
            .map(|e| BitSet::from_indices(vertex_count as usize, e.iter().map(|&v| v as usize)))
            .collect();
        Ok(Hypergraph {
            vertex_count,
            edges: canonical,
            edge_sets,
            labels: None,
        })
    }

    /// Attaches presentation labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, HypergraphError> {
        if labels.len() != self.vertex_count as usize {
            return Err(HypergraphError::LabelCountMismatch {
                labels: labels.len(),
                vertex_count: self.vertex_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[VertexId] {
        &self.edges[index]
    }

    pub(crate) fn edge_set(&self, index: usize) -> &BitSet {
        &self.edge_sets[index]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// True when every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn has_singleton_edge(&self) -> bool {
        self.edges.iter().any(|e| e.len() == 1)
    }

    /// Restriction to the selected edges over the same vertex set. Also
    /// returns the mapping from new edge indices to indices in `self`.
    pub fn induced(
        &self,
        subset: &EdgeSubset,
    ) -> Result<(Hypergraph, Vec<usize>), HypergraphError> {
        for &i in subset.indices() {
            if i >= self.edges.len() {
                return Err(HypergraphError::EdgeIndexOutOfRange {
                    index: i,
                    edge_count: self.edges.len(),
                });
            }
        }
        // Subset indices are ascending and host edges are canonically sorted,
        // so the selection is already in canonical order.
        let edges: Vec<Vec<VertexId>> = subset
            .indices()
            .iter()
            .map(|&i| self.edges[i].clone())
            .collect();
        let edge_sets = subset
            .indices()
            .iter()
            .map(|&i| self.edge_sets[i].clone())
            .collect();
        let induced = Hypergraph {
            vertex_count: self.vertex_count,
            edges,
            edge_sets,
            labels: self.labels.clone(),
        };
        Ok((induced, subset.indices().to_vec()))
    }

    pub(crate) fn vertex_bitset<I: IntoIterator<Item = VertexId>>(&self, vertices: I) -> BitSet {
        BitSet::from_indices(
            self.vertex_count as usize,
            vertices.into_iter().map(|v| v as usize),
        )
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.labels == other.labels
    }
}

impl Eq for Hypergraph {}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypergraph")
            .field("vertex_count", &self.vertex_count)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Sorted, duplicate-free set of edge indices into a host hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSubset {
    indices: Vec<usize>,
}

impl EdgeSubset {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        EdgeSubset { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Set of edge indices intended to be pairwise disjoint; validity is checked
/// against a host by [`verify_matching`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    indices: Vec<usize>,
}

impl Matching {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        Matching { indices }
    }

    pub fn empty() -> Self {
        Matching { indices: Vec::new() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// A vertex cover together with the covering number it witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    pub cover: Vec<VertexId>,
    pub nu: usize,
}

/// Matching plus a cover made of exactly one vertex from each matched edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KonigCertificate {
    pub matching: Matching,
    pub cover: Vec<VertexId>,
}

impl KonigCertificate {
    pub fn empty() -> Self {
        KonigCertificate {
            matching: Matching::empty(),
            cover: Vec::new(),
        }
    }
}

/// One side `D` of a splitting of the vertex set: every edge with more than
/// one vertex meets both `D` and its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub side: Vec<VertexId>,
}

/// Vertex set meeting every edge in exactly one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactTransversal {
    pub choice: Vec<VertexId>,
}

/// Reason a claimed matching is not one.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingViolation {
    #[error("edge index {index} out of range")]
    IndexOutOfRange { index: usize },
    #[error("edges {first} and {second} share vertex {vertex}")]
    Overlap {
        first: usize,
        second: usize,
        vertex: VertexId,
    },
}

/// Reason a claimed König certificate is invalid.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("invalid matching: {0}")]
    Matching(#[from] MatchingViolation),
    #[error("cover vertex {vertex} out of range")]
    CoverVertexOutOfRange { vertex: VertexId },
    #[error("cover misses edge {edge}")]
    NotACover { edge: usize },
    #[error("cover meets matched edge {edge} in {count} vertices instead of 1")]
    RepresentativeCount { edge: usize, count: usize },
    #[error("cover vertex {vertex} lies outside the matched edges")]
    CoverOutsideMatching { vertex: VertexId },
}

/// Checks that the referenced edges exist and are pairwise disjoint.
pub fn verify_matching(h: &Hypergraph, matching: &Matching) -> Result<(), MatchingViolation> {
    let mut used = BitSet::new(h.vertex_count() as usize);
    let mut owner: Vec<Option<usize>> = vec![None; h.vertex_count() as usize];
    for &index in matching.indices() {
        if index >= h.edge_count() {
            return Err(MatchingViolation::IndexOutOfRange { index });
        }
        if used.intersects(h.edge_set(index)) {
            let vertex = h
                .edge(index)
                .iter()
                .copied()
                .find(|&v| used.contains(v as usize))
                .expect("intersecting edge has a shared vertex");
            let first = owner[vertex as usize].expect("shared vertex has an owner");
            return Err(MatchingViolation::Overlap {
                first,
                second: index,
                vertex,
            });
        }
        used.union_with(h.edge_set(index));
        for &v in h.edge(index) {
            owner[v as usize] = Some(index);
        }
    }
    Ok(())
}

pub fn is_matching(h: &Hypergraph, matching: &Matching) -> bool {
    verify_matching(h, matching).is_ok()
}

/// True iff the vertex set meets every edge.
pub fn verify_cover(h: &Hypergraph, cover: &[VertexId]) -> bool {
    if cover.iter().any(|&v| v >= h.vertex_count()) {
        return false;
    }
    let set = h.vertex_bitset(cover.iter().copied());
    first_uncovered_edge(h, &set).is_none()
}

pub(crate) fn first_uncovered_edge(h: &Hypergraph, cover: &BitSet) -> Option<usize> {
    (0..h.edge_count()).find(|&i| cover.is_disjoint(h.edge_set(i)))
}

/// Checks the strict certificate invariants against `h`:
/// valid matching, cover hits every edge, cover meets each matched edge in
/// exactly one vertex, and every cover vertex lies on a matched edge.
pub fn verify_konig_certificate(
    h: &Hypergraph,
    cert: &KonigCertificate,
) -> Result<(), CertificateViolation> {
    verify_matching(h, &cert.matching)?;
    if let Some(&v) = cert.cover.iter().find(|&&v| v >= h.vertex_count()) {
        return Err(CertificateViolation::CoverVertexOutOfRange { vertex: v });
    }
    let cover_set = h.vertex_bitset(cert.cover.iter().copied());
    if let Some(edge) = first_uncovered_edge(h, &cover_set) {
        return Err(CertificateViolation::NotACover { edge });
    }
    let mut matched_union = BitSet::new(h.vertex_count() as usize);
    for &index in cert.matching.indices() {
        let count = cover_set.intersection_count(h.edge_set(index));
        if count != 1 {
            return Err(CertificateViolation::RepresentativeCount { edge: index, count });
        }
        matched_union.union_with(h.edge_set(index));
    }
    if let Some(v) = cover_set.iter().find(|&v| !matched_union.contains(v)) {
        return Err(CertificateViolation::CoverOutsideMatching {
            vertex: v as VertexId,
        });
    }
    Ok(())
}

/// True iff every edge with more than one vertex meets both sides.
pub fn verify_bipartition(h: &Hypergraph, bipartition: &Bipartition) -> bool {
    if bipartition.side.iter().any(|&v| v >= h.vertex_count()) {
        return false;
    }
    let side = h.vertex_bitset(bipartition.side.iter().copied());
    (0..h.edge_count()).all(|i| {
        let edge = h.edge_set(i);
        if h.edge(i).len() <= 1 {
            return true;
        }
        let inside = side.intersection_count(edge);
        inside >= 1 && inside < h.edge(i).len()
    })
}

/// True iff the choice set meets every edge in exactly one vertex.
pub fn verify_exact_transversal(h: &Hypergraph, transversal: &ExactTransversal) -> bool {
    if transversal.choice.iter().any(|&v| v >= h.vertex_count()) {
        return false;
    }
    let choice = h.vertex_bitset(transversal.choice.iter().copied());
    (0..h.edge_count()).all(|i| choice.intersection_count(h.edge_set(i)) == 1)
}
