//! JSON certificates for the four properties.
//!
//! A certificate is self-contained evidence checkable against an instance
//! without re-running any search:
//!
//! * `konig` — matching edge indices plus a cover of one vertex per matched
//!   edge (checked by the strict verifier).
//! * `weak-konig` — a matching and a cover of equal size; since no matching
//!   can be larger than any cover, equality pins both optima.
//! * `bipartite` — the vertex set `D` of a valid splitting.
//! * `cp` — an exact transversal.
//!
//! Matchings are arrays of edge indices into the canonical edge order of the
//! instance file; vertex arrays are sorted ascending.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{
    verify_bipartition, verify_cover, verify_exact_transversal, verify_konig_certificate,
    verify_matching, Bipartition, CertificateViolation, ExactTransversal, Hypergraph,
    KonigCertificate, Matching, MatchingViolation, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Konig {
        matching: Vec<usize>,
        cover: Vec<VertexId>,
    },
    WeakKonig {
        matching: Vec<usize>,
        cover: Vec<VertexId>,
    },
    Bipartite {
        side: Vec<VertexId>,
    },
    Cp {
        choice: Vec<VertexId>,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error(transparent)]
    Konig(#[from] CertificateViolation),
    #[error("invalid matching: {0}")]
    Matching(#[from] MatchingViolation),
    #[error("claimed cover does not hit every edge")]
    NotACover,
    #[error("matching size {matching} does not equal cover size {cover}")]
    SizeMismatch { matching: usize, cover: usize },
    #[error("claimed side is not a valid bipartition")]
    NotABipartition,
    #[error("claimed choice is not an exact transversal")]
    NotATransversal,
}

impl Certificate {
    pub fn konig(cert: &KonigCertificate) -> Self {
        Certificate::Konig {
            matching: cert.matching.indices().to_vec(),
            cover: cert.cover.clone(),
        }
    }

    pub fn weak_konig(matching: &Matching, cover: &[VertexId]) -> Self {
        Certificate::WeakKonig {
            matching: matching.indices().to_vec(),
            cover: cover.to_vec(),
        }
    }

    pub fn bipartite(bipartition: &Bipartition) -> Self {
        Certificate::Bipartite {
            side: bipartition.side.clone(),
        }
    }

    pub fn cp(transversal: &ExactTransversal) -> Self {
        Certificate::Cp {
            choice: transversal.choice.clone(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::Konig { .. } => "konig",
            Certificate::WeakKonig { .. } => "weak-konig",
            Certificate::Bipartite { .. } => "bipartite",
            Certificate::Cp { .. } => "cp",
        }
    }

    /// Checks the certificate against `h`.
    pub fn verify(&self, h: &Hypergraph) -> Result<(), CertificateError> {
        match self {
            Certificate::Konig { matching, cover } => {
                let cert = KonigCertificate {
                    matching: Matching::new(matching.iter().copied()),
                    cover: sorted(cover),
                };
                verify_konig_certificate(h, &cert)?;
                Ok(())
            }
            Certificate::WeakKonig { matching, cover } => {
                let matching = Matching::new(matching.iter().copied());
                verify_matching(h, &matching)?;
                let cover = sorted(cover);
                if !verify_cover(h, &cover) {
                    return Err(CertificateError::NotACover);
                }
                if matching.len() != cover.len() {
                    return Err(CertificateError::SizeMismatch {
                        matching: matching.len(),
                        cover: cover.len(),
                    });
                }
                Ok(())
            }
            Certificate::Bipartite { side } => {
                let bipartition = Bipartition { side: sorted(side) };
                if verify_bipartition(h, &bipartition) {
                    Ok(())
                } else {
                    Err(CertificateError::NotABipartition)
                }
            }
            Certificate::Cp { choice } => {
                let transversal = ExactTransversal {
                    choice: sorted(choice),
                };
                if verify_exact_transversal(h, &transversal) {
                    Ok(())
                } else {
                    Err(CertificateError::NotATransversal)
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("certificates serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn sorted(vertices: &[VertexId]) -> Vec<VertexId> {
    let mut out = vertices.to_vec();
    out.sort_unstable();
    out
}
