//! Machine-checkable claims of minimal crossing number.

use serde::Serialize;

use crate::diagram::Diagram;

/// How a minimality claim is justified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Route {
    /// The diagram is an adequate link diagram.
    AdequateLink,
    /// Single-vertex spatial graph diagram, adequate in every smoothing.
    OneVertexAdequate,
    /// Composition of minimal pieces on a crossingless framework.
    Framework,
    /// Rigid-vertex criterion: even valent, rigid, reduced, alternating, no
    /// uncrossed cycle. Minimal as a rigid-vertex diagram.
    AdamsRigid,
    /// Externally trusted claim with a citation.
    Asserted { citation: String },
}

/// A minimal-crossing-number certificate: the claim, its route, and the
/// sub-certificates it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Digest of the subject diagram (canonical-form hash).
    pub subject: String,
    /// The certified minimal crossing number.
    pub claim: usize,
    pub route: Route,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Certificate>,
}

impl Certificate {
    pub fn leaf(subject: &Diagram, claim: usize, route: Route) -> Certificate {
        Certificate {
            subject: subject.digest(),
            claim,
            route,
            children: Vec::new(),
        }
    }
}

/// A declined certification. Not a claim of non-minimality: the diagram may
/// still be minimal, the tool just has no route to prove it.
#[derive(Debug, Clone, Serialize)]
pub struct Refusal {
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// Outcome of a certification attempt.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CertifyOutcome {
    Certified { certificate: Certificate },
    Refused { refusal: Refusal },
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certified { certificate } => Some(certificate),
            CertifyOutcome::Refused { .. } => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate().is_some()
    }
}
