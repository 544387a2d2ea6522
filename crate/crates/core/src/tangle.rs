//! Tangles associated to single-vertex diagrams: mirroring, doubling,
//! closure enumeration, tangle adequacy, and the one-vertex certifier.
//!
//! A tangle is stored as a diagram together with a hub vertex standing for
//! the closed complement of the tangle disk: the hub's darts are the tangle's
//! boundary endpoints. Closures are exactly the smoothings of the hub, and
//! the double glues the tangle to its mirror image endpoint by endpoint.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::certificate::{Certificate, CertifyOutcome, Refusal, Route};
use crate::diagram::{DartId, Diagram, Node, NodeId};
use crate::error::{Error, Result};
use crate::resolution::is_adequate_link;
use crate::spatial::{self, non_crossing_matchings};

/// A tangle: an inner link diagram with `2n` numbered boundary endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tangle {
    diagram: Diagram,
    hub: NodeId,
}

impl Tangle {
    /// Wraps a diagram whose unique vertex is reinterpreted as the boundary
    /// circle of the tangle disk.
    pub fn new(diagram: Diagram, hub: NodeId) -> Result<Tangle> {
        diagram.require_valid()?;
        match diagram.nodes.get(&hub) {
            Some(n) if n.is_vertex() => {}
            _ => return Err(Error::NotSingleVertex),
        }
        if diagram.vertices().count() != 1 {
            return Err(Error::NotSingleVertex);
        }
        let valence = diagram.nodes[&hub].valence();
        if !valence.is_multiple_of(2) {
            return Err(Error::OddValence(hub, valence));
        }
        Ok(Tangle { diagram, hub })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn hub(&self) -> NodeId {
        self.hub
    }

    /// Number of strings.
    pub fn strings(&self) -> usize {
        self.diagram.nodes[&self.hub].valence() / 2
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }

    /// Boundary endpoints numbered 1..2n: starting at the least dart of the
    /// hub and proceeding against the hub rotation, so the numbering runs
    /// clockwise on the disk boundary.
    pub fn endpoints(&self) -> Vec<DartId> {
        let rot = &self.diagram.nodes[&self.hub].rotation;
        let start = rot
            .iter()
            .enumerate()
            .min_by_key(|(_, d)| **d)
            .map(|(i, _)| i)
            .expect("hub has darts");
        let n = rot.len();
        (0..n).map(|k| rot[(start + n - k) % n]).collect()
    }

    /// Mirror image: endpoint `k` coincides positionally with endpoint `k`.
    pub fn mirror(&self) -> Tangle {
        Tangle {
            diagram: self.diagram.mirror(),
            hub: self.hub,
        }
    }
}

/// The tangle associated to a single-vertex diagram: the vertex neighbourhood
/// becomes the closed complement of the tangle disk. Crossings are untouched.
pub fn associated_tangle(d: &Diagram) -> Result<Tangle> {
    d.require_valid()?;
    let mut vertices = d.vertices();
    let v = vertices.next().ok_or(Error::NotSingleVertex)?;
    if vertices.next().is_some() {
        return Err(Error::NotSingleVertex);
    }
    Tangle::new(d.clone(), v.id)
}

/// Glues the tangle to its mirror image endpoint by endpoint, producing a
/// link diagram with twice the crossings.
pub fn double_tangle(t: &Tangle) -> Result<Diagram> {
    let mirror = t.mirror();
    let (node_off, dart_off) = t.diagram.next_ids();

    // disjoint union, mirror copy relabelled
    let mut nodes: BTreeMap<NodeId, Node> = t.diagram.nodes.clone();
    let mut pairing: BTreeMap<DartId, DartId> = t.diagram.pairing.clone();
    for n in mirror.diagram.nodes.values() {
        let id = NodeId(n.id.0 + node_off);
        nodes.insert(
            id,
            Node {
                id,
                kind: n.kind.clone(),
                rotation: n.rotation.iter().map(|d| DartId(d.0 + dart_off)).collect(),
            },
        );
    }
    for (a, b) in &mirror.diagram.pairing {
        pairing.insert(DartId(a.0 + dart_off), DartId(b.0 + dart_off));
    }
    let union = Diagram {
        nodes,
        pairing,
        free_loops: t.diagram.free_loops + mirror.diagram.free_loops,
    };

    // zip the two hubs: each boundary position glues to its mirror copy
    let hub_a = t.hub;
    let hub_b = NodeId(t.hub.0 + node_off);
    let gone: BTreeSet<NodeId> = [hub_a, hub_b].into_iter().collect();
    let mut jump = BTreeMap::new();
    for d in &t.diagram.nodes[&hub_a].rotation {
        let image = DartId(d.0 + dart_off);
        jump.insert(*d, image);
        jump.insert(image, *d);
    }
    let doubled = union.eliminate_nodes(&gone, &jump)?.diagram;
    doubled.require_valid()?;
    Ok(doubled)
}

/// One closure: the outer-disk matching and the resulting link diagram.
#[derive(Debug, Clone, Serialize)]
pub struct Closure {
    pub matching: Vec<(usize, usize)>,
    pub result: Diagram,
}

/// All closures of the tangle: one per non-crossing perfect matching of the
/// `2n` endpoints in the outer disk.
pub fn enumerate_closures(t: &Tangle) -> Result<Vec<Closure>> {
    let valence = t.diagram.nodes[&t.hub].valence();
    let mut out = Vec::new();
    for matching in non_crossing_matchings(valence) {
        let matchings: BTreeMap<NodeId, spatial::SlotMatching> =
            [(t.hub, matching.clone())].into_iter().collect();
        let result = spatial::apply_smoothing(&t.diagram, &matchings)?;
        out.push(Closure { matching, result });
    }
    Ok(out)
}

/// Outcome of the all-closures adequacy check.
#[derive(Debug, Clone, Serialize)]
pub struct TangleCheck {
    pub holds: bool,
    pub witness: Option<Closure>,
}

/// True when every closure is an adequate link diagram.
pub fn is_adequate_tangle(t: &Tangle) -> Result<TangleCheck> {
    for c in enumerate_closures(t)? {
        if !is_adequate_link(&c.result)? {
            return Ok(TangleCheck {
                holds: false,
                witness: Some(c),
            });
        }
    }
    Ok(TangleCheck {
        holds: true,
        witness: None,
    })
}

/// Certifies minimal crossing number of a single-vertex diagram: adequate in
/// every smoothing of the vertex. The doubled associated tangle is checked
/// as cross-validation; an adequate diagram whose double fails adequacy
/// signals an internal inconsistency.
pub fn certify_one_vertex(d: &Diagram) -> Result<CertifyOutcome> {
    let tangle = associated_tangle(d)?;
    let check = spatial::is_adequate_spatial(d)?;
    match check.witness {
        Some(w) => Ok(CertifyOutcome::Refused {
            refusal: Refusal {
                reason: "diagram is not adequate: a smoothing yields an inadequate link".into(),
                witness: Some(serde_json::to_value(&w).expect("serializable")),
            },
        }),
        None => {
            let doubled = double_tangle(&tangle)?;
            if !is_adequate_link(&doubled)? {
                return Err(Error::Internal(
                    "adequate one-vertex diagram with inadequate double".into(),
                ));
            }
            Ok(CertifyOutcome::Certified {
                certificate: Certificate::leaf(d, d.crossing_count(), Route::OneVertexAdequate),
            })
        }
    }
}

/// Certifies an adequate link diagram at its crossing count.
pub fn certify_link(d: &Diagram) -> Result<CertifyOutcome> {
    d.require_valid()?;
    if let Some(v) = d.nodes.values().find(|n| n.is_vertex()) {
        return Err(Error::NotALink(v.id));
    }
    if is_adequate_link(d)? {
        Ok(CertifyOutcome::Certified {
            certificate: Certificate::leaf(d, d.crossing_count(), Route::AdequateLink),
        })
    } else {
        Ok(CertifyOutcome::Refused {
            refusal: Refusal {
                reason: "link diagram is not adequate".into(),
                witness: None,
            },
        })
    }
}

/// Certifies via the rigid-vertex criterion.
pub fn certify_adams(d: &Diagram) -> Result<CertifyOutcome> {
    let report = spatial::adams_hypotheses(d)?;
    if report.all_hold() {
        Ok(CertifyOutcome::Certified {
            certificate: Certificate::leaf(d, d.crossing_count(), Route::AdamsRigid),
        })
    } else {
        Ok(CertifyOutcome::Refused {
            refusal: Refusal {
                reason: "rigid-vertex hypotheses fail".into(),
                witness: Some(serde_json::to_value(&report).expect("serializable")),
            },
        })
    }
}
