//! The JSON diagram interchange format.
//!
//! ```json
//! {
//!   "nodes": [
//!     {"id": 0, "kind": "crossing", "rotation": [0,1,2,3], "over": [0,2]},
//!     {"id": 1, "kind": "vertex", "rotation": [4,5,6], "rigid": false}
//!   ],
//!   "pairing": [[0,4], [1,5], ...],
//!   "freeLoops": 0
//! }
//! ```
//!
//! Dart ids are arbitrary distinct non-negative integers. `over` names the
//! rotation slots of the overstrand and must be `[0,2]` or `[1,3]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diagram::{DartId, Diagram, Node, NodeId, NodeKind, OverPair};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct NodeJson {
    id: u32,
    kind: String,
    rotation: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    over: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rigid: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DiagramJson {
    nodes: Vec<NodeJson>,
    pairing: Vec<[u32; 2]>,
    #[serde(rename = "freeLoops", default)]
    free_loops: u32,
}

/// Parses a diagram from its JSON text. Structural invariants are not yet
/// checked; run [`Diagram::validate`] on the result.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let json: DiagramJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(format!("bad JSON: {e}")))?;
    let mut nodes = BTreeMap::new();
    for n in json.nodes {
        let id = NodeId(n.id);
        let kind = match n.kind.as_str() {
            "crossing" => {
                let over = match n.over {
                    Some([0, 2]) => OverPair::Axis02,
                    Some([1, 3]) => OverPair::Axis13,
                    Some(other) => {
                        return Err(Error::InvalidDiagram(format!(
                            "crossing {id}: over must be [0,2] or [1,3], got {other:?}"
                        )))
                    }
                    None => {
                        return Err(Error::InvalidDiagram(format!(
                            "crossing {id} is missing \"over\""
                        )))
                    }
                };
                NodeKind::Crossing { over }
            }
            "vertex" => NodeKind::Vertex {
                rigid: n.rigid.unwrap_or(false),
            },
            other => {
                return Err(Error::InvalidDiagram(format!(
                    "node {id}: unknown kind {other:?}"
                )))
            }
        };
        if nodes
            .insert(
                id,
                Node {
                    id,
                    kind,
                    rotation: n.rotation.into_iter().map(DartId).collect(),
                },
            )
            .is_some()
        {
            return Err(Error::InvalidDiagram(format!("duplicate node id {id}")));
        }
    }
    let mut pairing = BTreeMap::new();
    for [a, b] in json.pairing {
        pairing.insert(DartId(a), DartId(b));
        pairing.insert(DartId(b), DartId(a));
    }
    Ok(Diagram {
        nodes,
        pairing,
        free_loops: json.free_loops,
    })
}

/// Serializes a diagram. Each arc appears once, lower dart first; keys are
/// emitted in sorted order, so equal diagrams serialize identically.
pub fn diagram_to_json(d: &Diagram) -> Value {
    let nodes: Vec<NodeJson> = d
        .nodes
        .values()
        .map(|n| {
            let (kind, over, rigid) = match n.kind {
                NodeKind::Crossing { over } => (
                    "crossing".to_string(),
                    Some(match over {
                        OverPair::Axis02 => [0, 2],
                        OverPair::Axis13 => [1, 3],
                    }),
                    None,
                ),
                NodeKind::Vertex { rigid } => ("vertex".to_string(), None, Some(rigid)),
            };
            NodeJson {
                id: n.id.0,
                kind,
                rotation: n.rotation.iter().map(|d| d.0).collect(),
                over,
                rigid,
            }
        })
        .collect();
    let pairing: Vec<[u32; 2]> = d
        .pairing
        .iter()
        .filter(|(a, b)| a < b)
        .map(|(a, b)| [a.0, b.0])
        .collect();
    serde_json::json!({
        "nodes": nodes.into_iter().map(|n| serde_json::to_value(n).expect("serializable")).collect::<Vec<_>>(),
        "pairing": pairing,
        "freeLoops": d.free_loops,
    })
}

/// Canonical serialized form: the diagram is relabelled canonically first,
/// so isomorphic diagrams emit byte-identical JSON.
pub fn diagram_to_canonical_json(d: &Diagram) -> Value {
    diagram_to_json(&d.canonicalize())
}
