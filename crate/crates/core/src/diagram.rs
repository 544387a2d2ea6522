//! Combinatorial diagrams of links and spatial graphs on the 2-sphere.
//!
//! A diagram is stored as a rotation system: every node (crossing or graph
//! vertex) carries a counterclockwise cyclic list of darts, and a fixed-point
//! free involution pairs darts into arcs. Faces are orbits of the permutation
//! `d -> rot_prev(pair(d))`, so each dart lies on the face to the left of the
//! walk from its node towards its partner. Closed curves that meet no node at
//! all are counted separately in `free_loops`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Identifier of a dart (half-arc). Arbitrary distinct non-negative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DartId(pub u32);

/// Identifier of a node (crossing or vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which opposite slot pair of a crossing carries the overstrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OverPair {
    /// Slots 0 and 2 are the overstrand.
    Axis02,
    /// Slots 1 and 3 are the overstrand.
    Axis13,
}

impl OverPair {
    pub fn contains(self, slot: usize) -> bool {
        match self {
            OverPair::Axis02 => slot.is_multiple_of(2),
            OverPair::Axis13 => slot % 2 == 1,
        }
    }

    pub fn flipped(self) -> OverPair {
        match self {
            OverPair::Axis02 => OverPair::Axis13,
            OverPair::Axis13 => OverPair::Axis02,
        }
    }

    pub fn slots(self) -> [usize; 2] {
        match self {
            OverPair::Axis02 => [0, 2],
            OverPair::Axis13 => [1, 3],
        }
    }
}

/// Node payload: a crossing with over/under data, or a graph vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Crossing { over: OverPair },
    Vertex { rigid: bool },
}

/// A node of the diagram with its counterclockwise rotation of darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub rotation: Vec<DartId>,
}

impl Node {
    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, NodeKind::Crossing { .. })
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self.kind, NodeKind::Vertex { .. })
    }

    pub fn valence(&self) -> usize {
        self.rotation.len()
    }
}

/// A face of the embedding: the cyclic list of darts visited by the face
/// walk, each dart standing for one side of one arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub corners: Vec<DartId>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// One invariant violation found by [`Diagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

/// Result of validation; empty means the diagram is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, rule: &str, detail: String) {
        self.violations.push(Violation {
            rule: rule.to_string(),
            detail,
        });
    }
}

/// An immutable diagram of a link or spatial graph on the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub nodes: BTreeMap<NodeId, Node>,
    pub pairing: BTreeMap<DartId, DartId>,
    pub free_loops: u32,
}

impl Diagram {
    /// The empty diagram with a number of free loops.
    pub fn unknots(free_loops: u32) -> Diagram {
        Diagram {
            nodes: BTreeMap::new(),
            pairing: BTreeMap::new(),
            free_loops,
        }
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[&id]
    }

    /// Partner dart across the arc.
    pub fn pair(&self, d: DartId) -> DartId {
        self.pairing[&d]
    }

    /// (node, slot) holding a dart.
    pub fn position(&self, d: DartId) -> (NodeId, usize) {
        self.positions()[&d]
    }

    pub fn positions(&self) -> BTreeMap<DartId, (NodeId, usize)> {
        let mut map = BTreeMap::new();
        for node in self.nodes.values() {
            for (slot, &d) in node.rotation.iter().enumerate() {
                map.insert(d, (node.id, slot));
            }
        }
        map
    }

    /// Next dart counterclockwise around the node of `d`.
    pub fn rot_next(&self, d: DartId) -> DartId {
        let (n, s) = self.position(d);
        let rot = &self.nodes[&n].rotation;
        rot[(s + 1) % rot.len()]
    }

    /// Previous dart (clockwise neighbour) around the node of `d`.
    pub fn rot_prev(&self, d: DartId) -> DartId {
        let (n, s) = self.position(d);
        let rot = &self.nodes[&n].rotation;
        rot[(s + rot.len() - 1) % rot.len()]
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> + '_ {
        self.nodes.values().flat_map(|n| n.rotation.iter().copied())
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.values().filter(|n| n.is_crossing()).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values().filter(|n| n.is_vertex())
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values().filter(|n| n.is_crossing())
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();

        // Darts appear in exactly one rotation slot.
        let mut seen: BTreeMap<DartId, NodeId> = BTreeMap::new();
        for node in self.nodes.values() {
            for &d in &node.rotation {
                if let Some(prev) = seen.insert(d, node.id) {
                    report.push(
                        "dart-unique",
                        format!("dart {d} appears at node {prev} and node {}", node.id),
                    );
                }
            }
        }

        for node in self.nodes.values() {
            match node.kind {
                NodeKind::Crossing { .. } => {
                    if node.rotation.len() != 4 {
                        report.push(
                            "crossing-valence",
                            format!("crossing {} has rotation length {}", node.id, node.rotation.len()),
                        );
                    }
                }
                NodeKind::Vertex { .. } => {
                    if node.rotation.is_empty() {
                        report.push("vertex-valence", format!("vertex {} has empty rotation", node.id));
                    }
                }
            }
        }

        // Pairing must be a fixed-point-free involution on exactly the dart set.
        for (&a, &b) in &self.pairing {
            if a == b {
                report.push("pairing-involution", format!("dart {a} paired with itself"));
            }
            match self.pairing.get(&b) {
                Some(&back) if back == a => {}
                _ => report.push(
                    "pairing-involution",
                    format!("pairing not an involution at darts {a},{b}"),
                ),
            }
            if !seen.contains_key(&a) {
                report.push("pairing-domain", format!("paired dart {a} not in any rotation"));
            }
        }
        for &d in seen.keys() {
            if !self.pairing.contains_key(&d) {
                report.push("pairing-total", format!("dart {d} has no partner"));
            }
        }

        if !report.is_valid() {
            return report;
        }

        // Euler characteristic 2 for each connected component of the map.
        let positions = self.positions();
        let faces = self.faces_with(&positions);
        for comp in self.component_node_sets() {
            let v = comp.len();
            let darts: usize = comp.iter().map(|n| self.nodes[n].rotation.len()).sum();
            let e = darts / 2;
            let f = faces
                .iter()
                .filter(|face| {
                    face.corners
                        .first()
                        .map(|&d| comp.contains(&positions[&d].0))
                        .unwrap_or(false)
                })
                .count();
            if v + f != e + 2 {
                report.push(
                    "planarity",
                    format!(
                        "component with {v} nodes, {e} arcs traces {f} faces (V-E+F = {})",
                        v as i64 - e as i64 + f as i64
                    ),
                );
            }
        }

        report
    }

    /// Validation as a hard precondition.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(
                report
                    .violations
                    .iter()
                    .map(|v| format!("{}: {}", v.rule, v.detail))
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    /// Faces of the embedding: orbits of `d -> rot_prev(pair(d))`, started at
    /// the lowest unvisited dart.
    pub fn faces(&self) -> Vec<Face> {
        self.faces_with(&self.positions())
    }

    fn faces_with(&self, positions: &BTreeMap<DartId, (NodeId, usize)>) -> Vec<Face> {
        let step = |d: DartId| {
            let p = self.pair(d);
            let (n, s) = positions[&p];
            let rot = &self.nodes[&n].rotation;
            rot[(s + rot.len() - 1) % rot.len()]
        };
        let mut faces = Vec::new();
        let mut visited: BTreeSet<DartId> = BTreeSet::new();
        for &start in positions.keys() {
            if visited.contains(&start) {
                continue;
            }
            let mut corners = Vec::new();
            let mut d = start;
            loop {
                visited.insert(d);
                corners.push(d);
                d = step(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face {
                id: faces.len(),
                corners,
            });
        }
        faces
    }

    /// Face id at each dart, for corner lookups. The face at corner
    /// `(slot, slot+1)` of a node is the face containing `rotation[slot]`.
    pub fn face_index(&self) -> BTreeMap<DartId, usize> {
        let mut map = BTreeMap::new();
        for face in self.faces() {
            for &d in &face.corners {
                map.insert(d, face.id);
            }
        }
        map
    }

    fn component_node_sets(&self) -> Vec<BTreeSet<NodeId>> {
        let positions = self.positions();
        let mut uf = UnionFind::new();
        for node in self.nodes.values() {
            uf.add(node.id.0);
        }
        for (&a, &b) in &self.pairing {
            let (na, _) = positions[&a];
            let (nb, _) = positions[&b];
            uf.union(na.0, nb.0);
        }
        let mut groups: BTreeMap<u32, BTreeSet<NodeId>> = BTreeMap::new();
        for node in self.nodes.keys() {
            groups.entry(uf.find(node.0)).or_default().insert(*node);
        }
        groups.into_values().collect()
    }

    /// Connected components. Node and dart ids are preserved; free loops are
    /// split off one per component.
    pub fn components(&self) -> Vec<Diagram> {
        let mut out = Vec::new();
        for set in self.component_node_sets() {
            let nodes: BTreeMap<NodeId, Node> = self
                .nodes
                .iter()
                .filter(|(id, _)| set.contains(id))
                .map(|(id, n)| (*id, n.clone()))
                .collect();
            let darts: BTreeSet<DartId> =
                nodes.values().flat_map(|n| n.rotation.iter().copied()).collect();
            let pairing = self
                .pairing
                .iter()
                .filter(|(a, _)| darts.contains(a))
                .map(|(a, b)| (*a, *b))
                .collect();
            out.push(Diagram {
                nodes,
                pairing,
                free_loops: 0,
            });
        }
        for _ in 0..self.free_loops {
            out.push(Diagram::unknots(1));
        }
        out
    }

    /// Mirror image: every rotation is reversed and every crossing's
    /// overstrand slot pair is swapped, which together keep each overstrand
    /// over while reflecting the embedding. An involution up to isomorphism.
    pub fn mirror(&self) -> Diagram {
        let nodes = self
            .nodes
            .iter()
            .map(|(&id, node)| {
                let rotation: Vec<DartId> = node.rotation.iter().rev().copied().collect();
                let kind = match node.kind {
                    NodeKind::Crossing { over } => NodeKind::Crossing { over: over.flipped() },
                    NodeKind::Vertex { rigid } => NodeKind::Vertex { rigid },
                };
                (id, Node { id, kind, rotation })
            })
            .collect();
        Diagram {
            nodes,
            pairing: self.pairing.clone(),
            free_loops: self.free_loops,
        }
    }

    /// Fresh ids above every id in use.
    pub fn next_ids(&self) -> (u32, u32) {
        let node = self.nodes.keys().map(|n| n.0 + 1).max().unwrap_or(0);
        let dart = self.darts().map(|d| d.0 + 1).max().unwrap_or(0);
        (node, dart)
    }
}

/// Plain union-find over u32 keys.
#[derive(Debug, Default, Clone)]
pub struct UnionFind {
    parent: BTreeMap<u32, u32>,
}

impl UnionFind {
    pub fn new() -> Self {
        UnionFind::default()
    }

    pub fn add(&mut self, x: u32) {
        self.parent.entry(x).or_insert(x);
    }

    pub fn find(&mut self, x: u32) -> u32 {
        self.add(x);
        let mut root = x;
        while self.parent[&root] != root {
            root = self.parent[&root];
        }
        // path compression
        let mut cur = x;
        while self.parent[&cur] != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Returns false when the two were already in one set.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent.insert(ra.max(rb), ra.min(rb));
        true
    }
}

/// A maximal strand: a walk through crossings, terminated by vertex ends
/// (an open edge) or closed up (a knotted/linked circle component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    /// Smallest dart on the strand; used as a stable edge identifier.
    pub id: DartId,
    /// Entry darts of the arcs traversed, in walk order.
    pub arc_darts: Vec<DartId>,
    /// Crossing passages in walk order: (crossing, entry slot, strand is over).
    pub passages: Vec<(NodeId, usize, bool)>,
    /// Vertex end darts for an open edge; `None` for a closed strand.
    pub ends: Option<(DartId, DartId)>,
}

impl Strand {
    pub fn is_edge(&self) -> bool {
        self.ends.is_some()
    }

    pub fn is_uncrossed(&self) -> bool {
        self.passages.is_empty()
    }
}

impl Diagram {
    /// Decomposes the diagram into maximal strands. Open edges are listed
    /// before closed strands; order is deterministic.
    pub fn strands(&self) -> Vec<Strand> {
        let positions = self.positions();
        let mut used: BTreeSet<DartId> = BTreeSet::new();
        let mut out = Vec::new();

        let vertex_darts: Vec<DartId> = self
            .nodes
            .values()
            .filter(|n| n.is_vertex())
            .flat_map(|n| n.rotation.iter().copied())
            .collect();

        // Open edges: walk from each vertex dart to the far vertex end.
        let mut vertex_starts: Vec<DartId> = vertex_darts.clone();
        vertex_starts.sort();
        for start in vertex_starts {
            if used.contains(&start) {
                continue;
            }
            let mut arc_darts = Vec::new();
            let mut passages = Vec::new();
            let mut d = start;
            let end = loop {
                used.insert(d);
                arc_darts.push(d);
                let far = self.pair(d);
                used.insert(far);
                let (node, slot) = positions[&far];
                match self.nodes[&node].kind {
                    NodeKind::Vertex { .. } => break far,
                    NodeKind::Crossing { over } => {
                        passages.push((node, slot, over.contains(slot)));
                        d = self.nodes[&node].rotation[(slot + 2) % 4];
                    }
                }
            };
            let id = arc_darts
                .iter()
                .copied()
                .chain(std::iter::once(end))
                .min()
                .unwrap();
            out.push(Strand {
                id,
                arc_darts,
                passages,
                ends: Some((start, end)),
            });
        }

        // Closed strands through the remaining darts.
        let mut remaining: Vec<DartId> = self.darts().filter(|d| !used.contains(d)).collect();
        remaining.sort();
        for start in remaining {
            if used.contains(&start) {
                continue;
            }
            let mut arc_darts = Vec::new();
            let mut passages = Vec::new();
            let mut d = start;
            loop {
                used.insert(d);
                arc_darts.push(d);
                let far = self.pair(d);
                used.insert(far);
                let (node, slot) = positions[&far];
                let over = match self.nodes[&node].kind {
                    NodeKind::Crossing { over } => over,
                    NodeKind::Vertex { .. } => unreachable!("vertex dart in closed strand walk"),
                };
                passages.push((node, slot, over.contains(slot)));
                d = self.nodes[&node].rotation[(slot + 2) % 4];
                if d == start {
                    break;
                }
            }
            let id = *arc_darts.iter().min().unwrap();
            out.push(Strand {
                id,
                arc_darts,
                passages,
                ends: None,
            });
        }
        out.sort_by_key(|s| (s.ends.is_none(), s.id));
        out
    }

    /// Looks up a strand by its edge id.
    pub fn strand_by_id(&self, id: DartId) -> Option<Strand> {
        self.strands().into_iter().find(|s| s.id == id)
    }
}

// ---- canonical form ----------------------------------------------------

impl Diagram {
    /// Canonical code: relabel-invariant encoding. Two diagrams are
    /// isomorphic (as oriented maps with over/under and vertex data) exactly
    /// when their codes agree. Per component the code is the lexicographic
    /// minimum over all starting darts of a deterministic breadth-first
    /// labelling; component codes are sorted.
    pub fn canonical_code(&self) -> Vec<i64> {
        let positions = self.positions();
        let mut component_codes: Vec<Vec<i64>> = self
            .component_node_sets()
            .into_iter()
            .map(|set| {
                let comp_darts: Vec<DartId> = {
                    let mut v: Vec<DartId> = set
                        .iter()
                        .flat_map(|n| self.nodes[n].rotation.iter().copied())
                        .collect();
                    v.sort();
                    v
                };
                comp_darts
                    .iter()
                    .map(|&s| self.encode_from(s, &positions))
                    .min()
                    .expect("component has darts")
            })
            .collect();
        component_codes.sort();
        let mut code = vec![self.free_loops as i64, component_codes.len() as i64];
        for c in component_codes {
            code.push(c.len() as i64);
            code.extend(c);
        }
        code
    }

    fn encode_from(&self, start: DartId, positions: &BTreeMap<DartId, (NodeId, usize)>) -> Vec<i64> {
        let mut label: BTreeMap<DartId, i64> = BTreeMap::new();
        let mut order: Vec<DartId> = Vec::new();
        let mut emitted: BTreeSet<NodeId> = BTreeSet::new();
        let mut nodes_code: Vec<i64> = Vec::new();
        let mut alpha_code: Vec<i64> = Vec::new();

        let assign = |d: DartId, label: &mut BTreeMap<DartId, i64>, order: &mut Vec<DartId>| {
            if let std::collections::btree_map::Entry::Vacant(e) = label.entry(d) {
                e.insert(order.len() as i64);
                order.push(d);
            }
        };
        assign(start, &mut label, &mut order);

        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            let (node_id, slot) = positions[&d];
            let node = &self.nodes[&node_id];
            if emitted.insert(node_id) {
                let len = node.rotation.len();
                match node.kind {
                    NodeKind::Crossing { over } => {
                        nodes_code.push(1);
                        nodes_code.push(if over.contains(slot) { 0 } else { 1 });
                    }
                    NodeKind::Vertex { rigid } => {
                        nodes_code.push(2);
                        nodes_code.push(i64::from(rigid));
                    }
                }
                nodes_code.push(len as i64);
                for k in 0..len {
                    assign(node.rotation[(slot + k) % len], &mut label, &mut order);
                }
            }
            assign(self.pair(d), &mut label, &mut order);
            alpha_code.push(label[&self.pair(d)]);
            i += 1;
        }

        let mut code = nodes_code;
        code.push(-1);
        code.append(&mut alpha_code);
        code
    }

    /// Canonical-form isomorphism test.
    pub fn isomorphic(&self, other: &Diagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    /// Hex digest of the canonical code; stable identifier of the diagram up
    /// to relabelling.
    pub fn digest(&self) -> String {
        let code = self.canonical_code();
        let mut hasher = Sha256::new();
        for v in code {
            hasher.update(v.to_le_bytes());
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the diagram with canonical node and dart numbering, so that
    /// serialized output is stable across relabellings of the same diagram.
    pub fn canonicalize(&self) -> Diagram {
        let positions = self.positions();
        // Choose, per component, the start dart realizing the minimal code,
        // then lay out components in sorted code order.
        let mut comps: Vec<(Vec<i64>, DartId)> = self
            .component_node_sets()
            .into_iter()
            .map(|set| {
                let mut darts: Vec<DartId> = set
                    .iter()
                    .flat_map(|n| self.nodes[n].rotation.iter().copied())
                    .collect();
                darts.sort();
                darts
                    .iter()
                    .map(|&s| (self.encode_from(s, &positions), s))
                    .min()
                    .expect("component has darts")
            })
            .collect();
        comps.sort();

        let mut dart_map: BTreeMap<DartId, DartId> = BTreeMap::new();
        let mut node_map: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        for (_, start) in &comps {
            // Re-run the labelling walk to get the dart order.
            let mut order: Vec<DartId> = Vec::new();
            let mut seen: BTreeSet<DartId> = BTreeSet::new();
            let mut emitted: BTreeSet<NodeId> = BTreeSet::new();
            let push = |d: DartId, order: &mut Vec<DartId>, seen: &mut BTreeSet<DartId>| {
                if seen.insert(d) {
                    order.push(d);
                }
            };
            push(*start, &mut order, &mut seen);
            let mut i = 0;
            while i < order.len() {
                let d = order[i];
                let (node_id, slot) = positions[&d];
                let node = &self.nodes[&node_id];
                if emitted.insert(node_id) {
                    let len = node.rotation.len();
                    for k in 0..len {
                        push(node.rotation[(slot + k) % len], &mut order, &mut seen);
                    }
                }
                push(self.pair(d), &mut order, &mut seen);
                i += 1;
            }
            for d in order {
                let fresh = DartId(dart_map.len() as u32);
                dart_map.insert(d, fresh);
                let (n, _) = positions[&d];
                if !node_map.contains_key(&n) {
                    let fresh_node = NodeId(node_map.len() as u32);
                    node_map.insert(n, fresh_node);
                }
            }
        }

        let mut nodes = BTreeMap::new();
        for node in self.nodes.values() {
            let id = node_map[&node.id];
            // Start the rotation at the smallest relabelled dart.
            let relabeled: Vec<DartId> = node.rotation.iter().map(|d| dart_map[d]).collect();
            let min_pos = relabeled
                .iter()
                .enumerate()
                .min_by_key(|(_, d)| **d)
                .map(|(i, _)| i)
                .unwrap_or(0);
            let rotation: Vec<DartId> = (0..relabeled.len())
                .map(|k| relabeled[(min_pos + k) % relabeled.len()])
                .collect();
            let kind = match node.kind {
                NodeKind::Crossing { over } => {
                    let over = if over.contains(min_pos) {
                        OverPair::Axis02
                    } else {
                        OverPair::Axis13
                    };
                    NodeKind::Crossing { over }
                }
                NodeKind::Vertex { rigid } => NodeKind::Vertex { rigid },
            };
            nodes.insert(id, Node { id, kind, rotation });
        }
        let pairing = self
            .pairing
            .iter()
            .map(|(a, b)| (dart_map[a], dart_map[b]))
            .collect();
        Diagram {
            nodes,
            pairing,
            free_loops: self.free_loops,
        }
    }
}

// ---- node elimination engine --------------------------------------------

/// Strand reconnection through a set of eliminated nodes.
///
/// `jump` must be a fixed-point-free involution on exactly the darts of the
/// eliminated nodes; it encodes how a strand entering an eliminated node
/// leaves it again (pass-throughs for crossing removal, matchings for vertex
/// smoothing, hub-to-hub zips for tangle gluing). Chains of eliminated darts
/// are contracted; chains that close up become free loops.
pub struct Elimination {
    pub diagram: Diagram,
    /// Number of free loops created by closed chains.
    pub closed_chains: u32,
}

impl Diagram {
    pub fn eliminate_nodes(
        &self,
        gone: &BTreeSet<NodeId>,
        jump: &BTreeMap<DartId, DartId>,
    ) -> Result<Elimination> {
        let gone_darts: BTreeSet<DartId> = gone
            .iter()
            .flat_map(|n| self.nodes[n].rotation.iter().copied())
            .collect();
        for (&a, &b) in jump {
            if !gone_darts.contains(&a) || !gone_darts.contains(&b) || a == b {
                return Err(Error::Internal(format!("bad jump pair {a},{b}")));
            }
            if jump.get(&b) != Some(&a) {
                return Err(Error::Internal("jump is not an involution".into()));
            }
        }
        if jump.len() != gone_darts.len() {
            return Err(Error::Internal("jump must cover eliminated darts".into()));
        }

        let mut pairing: BTreeMap<DartId, DartId> = BTreeMap::new();
        let mut visited: BTreeSet<DartId> = BTreeSet::new();

        for (&a, &b) in &self.pairing {
            if gone_darts.contains(&a) || !gone_darts.contains(&b) {
                // handle each external arc once, from its external side
                if gone_darts.contains(&a) {
                    continue;
                }
            }
            if gone_darts.contains(&b) {
                // walk the chain from external dart `a`
                let mut cur = b;
                loop {
                    visited.insert(cur);
                    let hop = jump[&cur];
                    visited.insert(hop);
                    let next = self.pair(hop);
                    if !gone_darts.contains(&next) {
                        pairing.insert(a, next);
                        pairing.insert(next, a);
                        break;
                    }
                    cur = next;
                }
            } else {
                pairing.insert(a, b);
                pairing.insert(b, a);
            }
        }

        // Closed chains: cycles alternating jump / pairing entirely inside.
        let mut closed = 0u32;
        for &d in &gone_darts {
            if visited.contains(&d) {
                continue;
            }
            let mut cur = d;
            loop {
                visited.insert(cur);
                let hop = jump[&cur];
                visited.insert(hop);
                cur = self.pair(hop);
                if cur == d {
                    break;
                }
            }
            closed += 1;
        }

        let nodes: BTreeMap<NodeId, Node> = self
            .nodes
            .iter()
            .filter(|(id, _)| !gone.contains(id))
            .map(|(id, n)| (*id, n.clone()))
            .collect();
        Ok(Elimination {
            diagram: Diagram {
                nodes,
                pairing,
                free_loops: self.free_loops + closed,
            },
            closed_chains: closed,
        })
    }

    /// Follows a strand out of the eliminated region starting from the arc at
    /// eliminated dart `x`; `None` when the chain closes onto itself.
    pub fn resolve_out(
        &self,
        x: DartId,
        gone_darts: &BTreeSet<DartId>,
        jump: &BTreeMap<DartId, DartId>,
    ) -> Option<DartId> {
        let mut cur = self.pair(x);
        let mut steps = 0usize;
        while gone_darts.contains(&cur) {
            cur = self.pair(jump[&cur]);
            steps += 1;
            if steps > self.pairing.len() + 1 {
                return None;
            }
        }
        Some(cur)
    }
}
