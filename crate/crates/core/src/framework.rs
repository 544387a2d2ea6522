//! Planar-framework composition: replacing edges and vertices of a
//! crossingless embedded graph by diagram fragments in disjoint
//! neighbourhoods, and certifying the composite when every fragment carries
//! minimality evidence.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, CertifyOutcome, Refusal, Route};
use crate::diagram::{DartId, Diagram, Node, NodeId};
use crate::error::{Error, Result};
use crate::resolution::is_adequate_link;

/// A crossingless embedded graph.
#[derive(Debug, Clone)]
pub struct PlanarFramework {
    diagram: Diagram,
}

impl PlanarFramework {
    pub fn new(diagram: Diagram) -> Result<PlanarFramework> {
        diagram.require_valid()?;
        if diagram.crossing_count() != 0 {
            return Err(Error::InvalidFragment(
                "framework must have no crossings".into(),
            ));
        }
        Ok(PlanarFramework { diagram })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }
}

/// What a replacement applies to: an edge of the framework (identified by its
/// strand id) or a vertex together with all its incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Edge(DartId),
    Vertex(NodeId),
}

/// Minimality evidence for one fragment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// The tool checks that the fragment's closed components form an
    /// adequate link diagram and its open edges are uncrossed.
    Adequate,
    /// Externally trusted claim with a citation.
    Asserted { citation: String },
}

/// One edge or vertex replacement: the fragment diagram and its attachment
/// vertices, in the order of the target's incident edges (for an edge
/// target: its two endpoints in strand order).
#[derive(Debug, Clone)]
pub struct Replacement {
    pub target: Target,
    pub fragment: Diagram,
    pub attachments: Vec<NodeId>,
    pub evidence: Option<Evidence>,
}

fn splice_rotation(rotation: &[DartId], at: DartId, insert: &[DartId]) -> Vec<DartId> {
    let mut out = Vec::with_capacity(rotation.len() - 1 + insert.len());
    for &d in rotation {
        if d == at {
            out.extend_from_slice(insert);
        } else {
            out.push(d);
        }
    }
    out
}

/// Composes the framework with the given replacements. The composite's
/// crossing count is the sum of the fragments' crossing counts.
pub fn compose(p: &PlanarFramework, reps: &[Replacement]) -> Result<Diagram> {
    let base = &p.diagram;
    let strands = base.strands();

    // validate targets
    let mut edge_targets: BTreeSet<DartId> = BTreeSet::new();
    let mut vertex_targets: BTreeSet<NodeId> = BTreeSet::new();
    for rep in reps {
        match rep.target {
            Target::Edge(e) => {
                if !edge_targets.insert(e) {
                    return Err(Error::OverlappingTargets(format!("edge {e} twice")));
                }
            }
            Target::Vertex(v) => {
                if !vertex_targets.insert(v) {
                    return Err(Error::OverlappingTargets(format!("vertex {v} twice")));
                }
                if !base.nodes.contains_key(&v) {
                    return Err(Error::InvalidFragment(format!("no vertex {v} in framework")));
                }
            }
        }
    }
    for rep in reps {
        if let Target::Edge(e) = rep.target {
            let strand = strands
                .iter()
                .find(|s| s.id == e)
                .ok_or(Error::NoSuchEdge(e))?;
            let (a, b) = strand.ends.expect("framework edges are open");
            let (u, _) = base.position(a);
            let (w, _) = base.position(b);
            if vertex_targets.contains(&u) || vertex_targets.contains(&w) {
                return Err(Error::OverlappingTargets(format!(
                    "edge {e} is incident to a replaced vertex"
                )));
            }
        }
    }
    // replaced vertices must be pairwise non-adjacent and loop-free
    for &v in &vertex_targets {
        for &dart in &base.nodes[&v].rotation {
            let (far, _) = base.position(base.pair(dart));
            if far == v {
                return Err(Error::InvalidFragment(format!(
                    "replaced vertex {v} has a loop edge"
                )));
            }
            if vertex_targets.contains(&far) {
                return Err(Error::OverlappingTargets(format!(
                    "replaced vertices {v} and {far} are adjacent"
                )));
            }
        }
    }

    let mut nodes: BTreeMap<NodeId, Node> = base.nodes.clone();
    let mut pairing: BTreeMap<DartId, DartId> = base.pairing.clone();
    let mut free_loops = base.free_loops;
    let (mut node_off, mut dart_off) = base.next_ids();

    for rep in reps {
        rep.fragment.require_valid()?;
        // import fragment with fresh ids
        let node_map: BTreeMap<NodeId, NodeId> = rep
            .fragment
            .nodes
            .keys()
            .enumerate()
            .map(|(k, &id)| (id, NodeId(node_off + k as u32)))
            .collect();
        node_off += node_map.len() as u32;
        let dart_map: BTreeMap<DartId, DartId> = rep
            .fragment
            .darts()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(k, id)| (id, DartId(dart_off + k as u32)))
            .collect();
        dart_off += dart_map.len() as u32;
        for n in rep.fragment.nodes.values() {
            let id = node_map[&n.id];
            nodes.insert(
                id,
                Node {
                    id,
                    kind: n.kind.clone(),
                    rotation: n.rotation.iter().map(|d| dart_map[d]).collect(),
                },
            );
        }
        for (a, b) in &rep.fragment.pairing {
            pairing.insert(dart_map[a], dart_map[b]);
        }
        free_loops += rep.fragment.free_loops;

        let attachments: Vec<NodeId> = rep
            .attachments
            .iter()
            .map(|a| {
                node_map.get(a).copied().ok_or_else(|| {
                    Error::InvalidFragment(format!("attachment {a} not in fragment"))
                })
            })
            .collect::<Result<_>>()?;
        if attachments.iter().collect::<BTreeSet<_>>().len() != attachments.len() {
            return Err(Error::InvalidFragment("attachments must be distinct".into()));
        }
        for &a in &attachments {
            if !nodes[&a].is_vertex() {
                return Err(Error::InvalidFragment(format!(
                    "attachment {a} is not a vertex"
                )));
            }
        }

        // host darts: the rotation slots (at surviving vertices) that the
        // attachment vertices splice into, in incidence order
        let host_darts: Vec<DartId> = match rep.target {
            Target::Edge(e) => {
                let strand = strands.iter().find(|s| s.id == e).unwrap();
                let (a, b) = strand.ends.unwrap();
                vec![a, b]
            }
            Target::Vertex(v) => base.nodes[&v]
                .rotation
                .iter()
                .map(|&d| base.pair(d))
                .collect(),
        };
        if host_darts.len() != attachments.len() {
            return Err(Error::ArityMismatch {
                target: format!("{:?}", rep.target),
                expected: host_darts.len(),
                got: attachments.len(),
            });
        }

        for (&host_dart, &attach) in host_darts.iter().zip(&attachments) {
            let (host_node, _) = base.position(host_dart);
            let insert = nodes[&attach].rotation.clone();
            let host = nodes.get_mut(&host_node).expect("host vertex present");
            host.rotation = splice_rotation(&host.rotation, host_dart, &insert);
            nodes.remove(&attach);
            pairing.remove(&host_dart);
        }
        // remove the replaced star itself
        match rep.target {
            Target::Edge(e) => {
                let strand = strands.iter().find(|s| s.id == e).unwrap();
                let (a, b) = strand.ends.unwrap();
                pairing.remove(&a);
                pairing.remove(&b);
            }
            Target::Vertex(v) => {
                for &dart in &base.nodes[&v].rotation {
                    pairing.remove(&dart);
                    pairing.remove(&base.pair(dart));
                }
                nodes.remove(&v);
            }
        }
    }

    let composed = Diagram {
        nodes,
        pairing,
        free_loops,
    };
    composed.require_valid()?;
    Ok(composed)
}

fn fragment_evidence_certificate(rep: &Replacement) -> std::result::Result<Certificate, String> {
    let claim = rep.fragment.crossing_count();
    match &rep.evidence {
        None => Err("no minimality evidence".into()),
        Some(Evidence::Asserted { citation }) => {
            if citation.trim().is_empty() {
                Err("asserted evidence requires a citation".into())
            } else {
                Ok(Certificate::leaf(
                    &rep.fragment,
                    claim,
                    Route::Asserted {
                        citation: citation.clone(),
                    },
                ))
            }
        }
        Some(Evidence::Adequate) => {
            // open edges must be uncrossed; the closed components must form
            // an adequate link diagram
            let strands = rep.fragment.strands();
            if strands.iter().any(|s| s.is_edge() && !s.is_uncrossed()) {
                return Err("fragment has a knotted open edge; no adequacy route".into());
            }
            let link = closed_part(&rep.fragment);
            if link.crossing_count() != claim {
                return Err("fragment crossings not on closed components".into());
            }
            match is_adequate_link(&link) {
                Ok(true) => Ok(Certificate::leaf(&rep.fragment, claim, Route::AdequateLink)),
                Ok(false) => Err("fragment's link part is not adequate".into()),
                Err(e) => Err(format!("adequacy check failed: {e}")),
            }
        }
    }
}

/// The sub-diagram of closed strands: vertices and their (uncrossed) edges
/// removed.
fn closed_part(d: &Diagram) -> Diagram {
    let vertex_darts: BTreeSet<DartId> = d
        .vertices()
        .flat_map(|v| v.rotation.iter().copied())
        .collect();
    let nodes: BTreeMap<NodeId, Node> = d
        .nodes
        .iter()
        .filter(|(_, n)| n.is_crossing())
        .map(|(id, n)| (*id, n.clone()))
        .collect();
    let pairing = d
        .pairing
        .iter()
        .filter(|(a, b)| !vertex_darts.contains(a) && !vertex_darts.contains(b))
        .map(|(a, b)| (*a, *b))
        .collect();
    Diagram {
        nodes,
        pairing,
        free_loops: d.free_loops,
    }
}

/// Certifies the composite when every replacement carries valid evidence.
/// The certificate's claim is the sum of the fragment claims, which equals
/// the composite's crossing count.
pub fn certify_framework(p: &PlanarFramework, reps: &[Replacement]) -> Result<CertifyOutcome> {
    let composed = compose(p, reps)?;
    let mut children = Vec::new();
    let mut failures = Vec::new();
    for (k, rep) in reps.iter().enumerate() {
        match fragment_evidence_certificate(rep) {
            Ok(cert) => children.push(cert),
            Err(reason) => failures.push(format!("replacement {k}: {reason}")),
        }
    }
    if !failures.is_empty() {
        return Ok(CertifyOutcome::Refused {
            refusal: Refusal {
                reason: failures.join("; "),
                witness: None,
            },
        });
    }
    let claim: usize = children.iter().map(|c| c.claim).sum();
    debug_assert_eq!(claim, composed.crossing_count());
    Ok(CertifyOutcome::Certified {
        certificate: Certificate {
            subject: composed.digest(),
            claim,
            route: Route::Framework,
            children,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::NodeKind;
    use crate::fixtures;
    use crate::samples::Builder;

    fn single_edge_framework() -> (PlanarFramework, DartId) {
        let mut b = Builder::new();
        let (_, u) = b.vertex(1, false);
        let (_, w) = b.vertex(1, false);
        b.join(u[0], w[0]);
        let d = b.build();
        let e = d.strands()[0].id;
        (PlanarFramework::new(d).unwrap(), e)
    }

    /// Trefoil-knotted closed strand with two valence-2 marker vertices.
    fn trefoil_with_two_marks() -> (Diagram, NodeId, NodeId) {
        let d = fixtures::trefoil3();
        let faces = d.faces();
        // cut two distinct arcs bordering the first face of degree >= 2
        let face = faces
            .iter()
            .find(|f| {
                let mut arcs: Vec<DartId> = f.corners.iter().map(|&c| c.min(d.pair(c))).collect();
                arcs.sort();
                arcs.dedup();
                arcs.len() >= 2
            })
            .unwrap();
        let mut cut = Vec::new();
        let mut seen = Vec::new();
        for &c in &face.corners {
            let arc = c.min(d.pair(c));
            if !seen.contains(&arc) {
                seen.push(arc);
                cut.push(c);
            }
            if cut.len() == 2 {
                break;
            }
        }
        // split each cut arc with a valence-2 vertex
        let mut out = d.clone();
        let (mut node_off, mut dart_off) = d.next_ids();
        let mut marks = Vec::new();
        for &g in &cut {
            let h = out.pairing[&g];
            let id = NodeId(node_off);
            let a = DartId(dart_off);
            let bb = DartId(dart_off + 1);
            node_off += 1;
            dart_off += 2;
            out.nodes.insert(
                id,
                Node {
                    id,
                    kind: NodeKind::Vertex { rigid: false },
                    rotation: vec![a, bb],
                },
            );
            out.pairing.insert(g, a);
            out.pairing.insert(a, g);
            out.pairing.insert(h, bb);
            out.pairing.insert(bb, h);
            marks.push(id);
        }
        assert!(out.validate().is_valid());
        (out, marks[0], marks[1])
    }

    #[test]
    fn single_edge_trefoil_replacement() {
        let (p, e) = single_edge_framework();
        let (fragment, m1, m2) = trefoil_with_two_marks();
        let rep = Replacement {
            target: Target::Edge(e),
            fragment,
            attachments: vec![m1, m2],
            evidence: None,
        };
        let composed = compose(&p, &[rep]).unwrap();
        assert_eq!(composed.crossing_count(), 3);
        assert!(composed.validate().is_valid());
    }

    #[test]
    fn empty_replacement_list_is_identity() {
        let (p, _) = single_edge_framework();
        let composed = compose(&p, &[]).unwrap();
        assert!(composed.isomorphic(p.diagram()));
        let outcome = certify_framework(&p, &[]).unwrap();
        assert_eq!(outcome.certificate().unwrap().claim, 0);
    }

    #[test]
    fn kink_fragment_refused() {
        let (p, e) = single_edge_framework();
        let fragment = fixtures::kink_fragment();
        let marks: Vec<NodeId> = fragment.vertices().map(|v| v.id).collect();
        let rep = Replacement {
            target: Target::Edge(e),
            fragment,
            attachments: marks,
            evidence: Some(Evidence::Adequate),
        };
        assert!(compose(&p, std::slice::from_ref(&rep)).is_ok());
        let outcome = certify_framework(&p, &[rep]).unwrap();
        assert!(!outcome.is_certified());
    }

    #[test]
    fn overlap_checks() {
        let (p, e) = single_edge_framework();
        let (fragment, m1, m2) = trefoil_with_two_marks();
        let rep = Replacement {
            target: Target::Edge(e),
            fragment,
            attachments: vec![m1, m2],
            evidence: None,
        };
        let err = compose(&p, &[rep.clone(), rep]).unwrap_err();
        assert!(matches!(err, Error::OverlappingTargets(_)));
    }

    #[test]
    fn composed_example_counts_and_certificate() {
        let (p, reps) = fixtures::fig8_composition();
        let composed = compose(&p, &reps).unwrap();
        assert!(composed.validate().is_valid());
        let piece_sum: usize = reps.iter().map(|r| r.fragment.crossing_count()).sum();
        assert_eq!(piece_sum, 3 + 2 + 5 + 3);
        assert_eq!(composed.crossing_count(), piece_sum);

        let outcome = certify_framework(&p, &reps).unwrap();
        let cert = outcome.certificate().expect("all pieces carry evidence");
        assert_eq!(cert.claim, piece_sum);
        assert_eq!(cert.children.len(), 4);
    }

    #[test]
    fn composition_order_independent() {
        let (p, mut reps) = fixtures::fig8_composition();
        let a = compose(&p, &reps).unwrap();
        reps.reverse();
        let b = compose(&p, &reps).unwrap();
        assert!(a.isomorphic(&b));
        reps.swap(0, 2);
        let c = compose(&p, &reps).unwrap();
        assert!(a.isomorphic(&c));
    }

    #[test]
    fn arity_mismatch() {
        let (p, e) = single_edge_framework();
        let (fragment, m1, _) = trefoil_with_two_marks();
        let rep = Replacement {
            target: Target::Edge(e),
            fragment,
            attachments: vec![m1],
            evidence: None,
        };
        assert!(matches!(
            compose(&p, &[rep]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
