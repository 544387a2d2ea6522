//! Deterministic diagram builders and seeded random generators.
//!
//! Everything here is reproducible: generators take an explicit seed and use
//! a counter-based ChaCha stream, so test corpora are stable across runs and
//! platforms.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DartId, Diagram, Node, NodeId, NodeKind, OverPair};

/// Incremental diagram assembly with fresh ids.
#[derive(Debug, Default)]
pub struct Builder {
    nodes: BTreeMap<NodeId, Node>,
    pairing: BTreeMap<DartId, DartId>,
    free_loops: u32,
    next_node: u32,
    next_dart: u32,
}

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }

    pub fn crossing(&mut self, over: OverPair) -> [DartId; 4] {
        let darts = [
            DartId(self.next_dart),
            DartId(self.next_dart + 1),
            DartId(self.next_dart + 2),
            DartId(self.next_dart + 3),
        ];
        self.next_dart += 4;
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.nodes.insert(
            id,
            Node {
                id,
                kind: NodeKind::Crossing { over },
                rotation: darts.to_vec(),
            },
        );
        darts
    }

    pub fn vertex(&mut self, valence: usize, rigid: bool) -> (NodeId, Vec<DartId>) {
        let darts: Vec<DartId> = (0..valence).map(|k| DartId(self.next_dart + k as u32)).collect();
        self.next_dart += valence as u32;
        let id = NodeId(self.next_node);
        self.next_node += 1;
        self.nodes.insert(
            id,
            Node {
                id,
                kind: NodeKind::Vertex { rigid },
                rotation: darts.clone(),
            },
        );
        (id, darts)
    }

    pub fn join(&mut self, a: DartId, b: DartId) {
        self.pairing.insert(a, b);
        self.pairing.insert(b, a);
    }

    pub fn free_loops(&mut self, n: u32) {
        self.free_loops += n;
    }

    pub fn build(self) -> Diagram {
        Diagram {
            nodes: self.nodes,
            pairing: self.pairing,
            free_loops: self.free_loops,
        }
    }
}

/// Trace closure of a braid word on `strands` strands. Each letter is the
/// 0-based position of the crossed pair; all crossings start with the same
/// overstrand axis (use [`make_alternating`] afterwards for an alternating
/// assignment). Strands untouched by the word close into free loops.
pub fn braid_closure(strands: usize, word: &[usize]) -> Diagram {
    let mut b = Builder::new();
    let mut bottom: Vec<Option<DartId>> = vec![None; strands];
    let mut top: Vec<Option<DartId>> = vec![None; strands];
    for &pos in word {
        assert!(pos + 1 < strands, "letter out of range");
        // rotation [NE, NW, SW, SE]; NW/NE face up, SW/SE hang down
        let [ne, nw, sw, se] = b.crossing(OverPair::Axis02);
        match bottom[pos] {
            Some(prev) => b.join(nw, prev),
            None => top[pos] = Some(nw),
        }
        match bottom[pos + 1] {
            Some(prev) => b.join(ne, prev),
            None => top[pos + 1] = Some(ne),
        }
        bottom[pos] = Some(sw);
        bottom[pos + 1] = Some(se);
    }
    for s in 0..strands {
        match (bottom[s], top[s]) {
            (Some(bot), Some(t)) => b.join(bot, t),
            (None, None) => b.free_loops(1),
            _ => unreachable!("strand touched by word has both ends"),
        }
    }
    b.build()
}

/// Two-colors the faces of a link diagram (possible exactly when every node
/// has even valence) and reassigns each crossing's overstrand so that the
/// diagram becomes alternating. Panics if the diagram cannot be two-colored.
pub fn make_alternating(d: &Diagram) -> Diagram {
    let faces = d.faces();
    let face_at = d.face_index();
    let mut color: Vec<Option<bool>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = vec![start];
        while let Some(f) = queue.pop() {
            let c = color[f].unwrap();
            for &dart in &faces[f].corners {
                let g = face_at[&d.pair(dart)];
                match color[g] {
                    None => {
                        color[g] = Some(!c);
                        queue.push(g);
                    }
                    Some(other) => assert_ne!(other, c, "faces not two-colorable"),
                }
            }
        }
    }
    let mut out = d.clone();
    for node in out.nodes.values_mut() {
        if let NodeKind::Crossing { ref mut over } = node.kind {
            // make the corners after each over slot black
            let black_corner0 = color[face_at[&node.rotation[0]]].unwrap();
            *over = if black_corner0 { OverPair::Axis02 } else { OverPair::Axis13 };
        }
    }
    out
}

/// Random connected alternating link diagram with at most `max_crossings`
/// crossings. Optionally filtered to reduced diagrams.
pub fn random_alternating_link(seed: u64, max_crossings: usize, reduced: bool) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let strands = rng.gen_range(2..=3usize);
        let len = rng.gen_range(2..=max_crossings);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..strands - 1)).collect();
        let d = braid_closure(strands, &word);
        if d.free_loops > 0 || d.nodes.is_empty() {
            continue;
        }
        if d.components().len() != 1 {
            continue;
        }
        let d = make_alternating(&d);
        if reduced && !crate::resolution::nugatory_crossings(&d).is_empty() {
            continue;
        }
        debug_assert!(d.validate().is_valid());
        return d;
    }
}

/// Inserts a vertex of valence `2 * arcs.len()` into the face `face_id`,
/// cutting each listed boundary arc once and routing both cut ends to the new
/// vertex. The arcs are identified by distinct darts of the face's corner
/// list lying on distinct arcs.
pub fn insert_vertex_on_face(d: &Diagram, face_id: usize, cut_darts: &[DartId], rigid: bool) -> Diagram {
    let faces = d.faces();
    let face = &faces[face_id];
    let mut picked: Vec<DartId> = Vec::new();
    for &g in cut_darts {
        assert!(face.corners.contains(&g), "cut dart not on face");
        assert!(
            !picked.contains(&g) && !picked.contains(&d.pair(g)),
            "cut darts must lie on distinct arcs"
        );
        picked.push(g);
    }
    // order cuts along the face walk
    let mut ordered: Vec<DartId> = face
        .corners
        .iter()
        .copied()
        .filter(|c| picked.contains(c))
        .collect();
    // keep caller ordering if it matches the walk starting elsewhere
    if ordered.len() != picked.len() {
        ordered = picked.clone();
    }

    let (node_off, dart_off) = d.next_ids();
    let mut out = d.clone();
    let vid = NodeId(node_off);
    let mut rotation = Vec::new();
    let mut next_dart = dart_off;
    for (t, &g) in ordered.iter().enumerate() {
        let h = d.pair(g);
        let a = DartId(next_dart + 2 * t as u32);
        let b = DartId(next_dart + 2 * t as u32 + 1);
        rotation.push(a);
        rotation.push(b);
        out.pairing.insert(g, a);
        out.pairing.insert(a, g);
        out.pairing.insert(h, b);
        out.pairing.insert(b, h);
    }
    next_dart += 2 * ordered.len() as u32;
    let _ = next_dart;
    out.nodes.insert(
        vid,
        Node {
            id: vid,
            kind: NodeKind::Vertex { rigid },
            rotation,
        },
    );
    out
}

/// Random spatial-graph diagram with one vertex: a random alternating link
/// with a vertex of valence `2 * cuts` inserted into a random face.
pub fn random_one_vertex(seed: u64, max_crossings: usize, cuts: usize) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(17));
    loop {
        let link = random_alternating_link(rng.gen(), max_crossings, false);
        let faces = link.faces();
        let candidates: Vec<usize> = faces
            .iter()
            .filter(|f| {
                let mut arcs: Vec<DartId> = f
                    .corners
                    .iter()
                    .map(|&c| c.min(link.pair(c)))
                    .collect();
                arcs.sort();
                arcs.dedup();
                arcs.len() >= cuts
            })
            .map(|f| f.id)
            .collect();
        let Some(&fid) = candidates.first() else { continue };
        let face = &faces[fid];
        let mut arcs_seen: Vec<DartId> = Vec::new();
        let mut cut_darts: Vec<DartId> = Vec::new();
        for &c in &face.corners {
            let arc = c.min(link.pair(c));
            if !arcs_seen.contains(&arc) {
                arcs_seen.push(arc);
                cut_darts.push(c);
                if cut_darts.len() == cuts {
                    break;
                }
            }
        }
        if cut_darts.len() < cuts {
            continue;
        }
        let d = insert_vertex_on_face(&link, fid, &cut_darts, false);
        debug_assert!(d.validate().is_valid());
        return d;
    }
}

/// Adds an uncrossed loop edge at vertex `v`, inserted between rotation
/// positions `slot` and `slot+1`, bounding a trivial monogon.
pub fn add_tight_loop(d: &Diagram, v: NodeId, slot: usize) -> Diagram {
    let (_, dart_off) = d.next_ids();
    let a = DartId(dart_off);
    let b = DartId(dart_off + 1);
    let mut out = d.clone();
    let node = out.nodes.get_mut(&v).expect("vertex exists");
    let at = (slot + 1).min(node.rotation.len());
    node.rotation.insert(at, b);
    node.rotation.insert(at, a);
    out.pairing.insert(a, b);
    out.pairing.insert(b, a);
    out
}
