//! Combinatorial diagrams of links and spatial graphs, adequacy checks, and
//! machine-checkable minimal-crossing-number certificates.
//!
//! The crate decides, for diagrams given as rotation systems on the sphere:
//!
//! - link-level predicates: A-/A⁻¹-adequate, reduced, alternating
//!   ([`resolution`]);
//! - spatial-graph predicates over all vertex smoothings, plus the
//!   rigid-vertex reduced/alternating checks ([`spatial`]);
//! - tangle doubling and closure adequacy, certifying single-vertex
//!   diagrams ([`tangle`]);
//! - composition of minimal pieces on crossingless frameworks
//!   ([`framework`]);
//! - Reidemeister moves R1-R5 and a randomized reduction search used as an
//!   empirical oracle against certificates ([`moves`]).

pub mod certificate;
pub mod codec;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod framework;
pub mod moves;
pub mod resolution;
pub mod samples;
pub mod spatial;
pub mod tangle;

pub use certificate::{Certificate, CertifyOutcome, Refusal, Route};
pub use diagram::{DartId, Diagram, Face, Node, NodeId, NodeKind, OverPair, Strand};
pub use error::{Error, Result};
pub use resolution::{ResolutionKind, StateCircles};
pub use spatial::{AdamsReport, Smoothing, SpatialCheck};
pub use tangle::Tangle;
