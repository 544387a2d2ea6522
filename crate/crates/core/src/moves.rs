//! Reidemeister moves for spatial-graph diagrams (R1-R5) and a randomized
//! crossing-reduction search.
//!
//! Decreasing moves are detected on faces of the embedding: monogons at a
//! crossing (R1), coherent bigons between two crossings (R2), trigons with a
//! coherent slider strand (R3), bigons between a vertex and a crossing
//! (untwist, R5), and strand blocks crossing consecutive legs of a vertex
//! (slide, R4). Crossing-increasing duals exist at every arc, face, and leg
//! pair. Applying a move re-checks its applicability and validates the
//! result.

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{DartId, Diagram, Node, NodeId, NodeKind, OverPair};
use crate::error::{Error, Result};

/// Where an added kink goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KinkTarget {
    /// Twist an arc, identified by one of its darts.
    Arc(DartId),
    /// Twist a free loop into a one-crossing component.
    FreeLoop,
}

/// A move with its site.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    R1Add {
        target: KinkTarget,
        /// Loop on the far side of the arc when set.
        far_side: bool,
        over: OverPair,
    },
    R1Remove {
        /// The dart of the monogon face.
        monogon: DartId,
    },
    R2Add {
        /// Dart of the pushed arc, on the shared face.
        over_arc: DartId,
        /// Dart of the arc pushed across, on the same face.
        under_arc: DartId,
    },
    R2Remove {
        /// Least dart of the bigon face.
        bigon: DartId,
    },
    R3 {
        /// The trigon-orbit dart at the crossing opposite the slider side.
        apex: DartId,
    },
    R4 {
        vertex: NodeId,
        /// First leg slot of the crossed block.
        start_slot: usize,
        /// Number of legs crossed by the sliding strand.
        len: usize,
    },
    R5Add {
        vertex: NodeId,
        /// Twist legs at slots (slot, slot+1).
        slot: usize,
        /// The lower-slot leg passes over.
        first_leg_over: bool,
    },
    R5Remove {
        vertex: NodeId,
        /// The twisted legs sit at slots (slot, slot+1).
        slot: usize,
    },
}

impl Move {
    /// Crossing-count change of the move on diagram `d`.
    pub fn delta(&self, d: &Diagram) -> i64 {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
            Move::R4 { vertex, len, .. } => {
                let m = d.nodes[vertex].valence() as i64;
                m - 2 * *len as i64
            }
            Move::R5Add { .. } => 1,
            Move::R5Remove { .. } => -1,
        }
    }

    pub fn is_decreasing(&self, d: &Diagram) -> bool {
        self.delta(d) < 0
    }
}

fn pass_through_jump(d: &Diagram, crossings: &BTreeSet<NodeId>) -> BTreeMap<DartId, DartId> {
    let mut jump = BTreeMap::new();
    for c in crossings {
        let rot = &d.nodes[c].rotation;
        jump.insert(rot[0], rot[2]);
        jump.insert(rot[2], rot[0]);
        jump.insert(rot[1], rot[3]);
        jump.insert(rot[3], rot[1]);
    }
    jump
}

fn over_at(d: &Diagram, node: NodeId, slot: usize) -> bool {
    match d.nodes[&node].kind {
        NodeKind::Crossing { over } => over.contains(slot),
        NodeKind::Vertex { .. } => unreachable!("over_at on vertex"),
    }
}

// ---- detection -----------------------------------------------------------

fn monogon_sites(d: &Diagram, faces: &[crate::diagram::Face]) -> Vec<Move> {
    faces
        .iter()
        .filter(|f| f.degree() == 1)
        .filter(|f| d.nodes[&d.position(f.corners[0]).0].is_crossing())
        .map(|f| Move::R1Remove { monogon: f.corners[0] })
        .collect()
}

fn bigon_sites(d: &Diagram, faces: &[crate::diagram::Face]) -> Vec<Move> {
    let mut out = Vec::new();
    for f in faces {
        if f.degree() != 2 {
            continue;
        }
        let (x, y) = (f.corners[0], f.corners[1]);
        let (nx, sx) = d.position(x);
        let (ny, sy) = d.position(y);
        match (d.nodes[&nx].is_crossing(), d.nodes[&ny].is_crossing()) {
            (true, true) => {
                if nx == ny {
                    continue;
                }
                // coherence: the strand of one bigon arc is over at both
                // crossings (its partner is then under at both)
                let far = d.position(d.pair(x)).1; // slot of next(y) at ny
                if over_at(d, nx, sx) == over_at(d, ny, far) {
                    out.push(Move::R2Remove {
                        bigon: f.corners.iter().copied().min().unwrap(),
                    });
                }
            }
            (false, true) | (true, false) => {
                // untwist site: vertex leg pair crossed adjacent to the vertex
                let (v, slot) = if d.nodes[&nx].is_vertex() { (nx, sx) } else { (ny, sy) };
                out.push(Move::R5Remove { vertex: v, slot });
            }
            (false, false) => {}
        }
    }
    out
}

fn trigon_sites(d: &Diagram, faces: &[crate::diagram::Face]) -> Vec<Move> {
    let mut out = Vec::new();
    for f in faces {
        if f.degree() != 3 {
            continue;
        }
        let nodes: Vec<NodeId> = f.corners.iter().map(|&c| d.position(c).0).collect();
        if !nodes.iter().all(|n| d.nodes[n].is_crossing()) {
            continue;
        }
        if nodes[0] == nodes[1] || nodes[1] == nodes[2] || nodes[0] == nodes[2] {
            continue;
        }
        // each corner dart is a candidate apex; the slider is the side
        // joining the other two crossings
        for &apex in &f.corners {
            if r3_labels(d, apex).is_some() {
                out.push(Move::R3 { apex });
            }
        }
    }
    out
}

/// The twelve darts of an R3 site, recovered from the apex dart, when the
/// slider strand is coherently over or under both of its trigon crossings.
struct R3Labels {
    /// (n1 nw3)(s1 se3)(n2 ne3)(s2 sw3)(w1 w2)(e1 e2) as an involution.
    swap: BTreeMap<DartId, DartId>,
}

fn r3_labels(d: &Diagram, apex: DartId) -> Option<R3Labels> {
    let face_step = |x: DartId| d.rot_prev(d.pair(x));
    let ne3 = apex;
    let w2 = face_step(ne3);
    let s1 = face_step(w2);
    if face_step(s1) != ne3 {
        return None; // not a trigon orbit
    }
    let c3 = d.position(ne3).0;
    let c2 = d.position(w2).0;
    let c1 = d.position(s1).0;
    if c1 == c2 || c2 == c3 || c1 == c3 {
        return None;
    }
    if !(d.nodes[&c1].is_crossing() && d.nodes[&c2].is_crossing() && d.nodes[&c3].is_crossing()) {
        return None;
    }
    let s2 = d.pair(ne3);
    let e1 = d.pair(w2);
    let nw3 = d.pair(s1);
    // slider = the arc {e1, w2} between c1 and c2; it must be coherently
    // over or under at both
    if over_at(d, c1, d.position(e1).1) != over_at(d, c2, d.position(w2).1) {
        return None;
    }
    let n1 = d.rot_next(e1);
    let w1 = d.rot_next(n1);
    let e2 = d.rot_next(s2);
    let n2 = d.rot_next(e2);
    let sw3 = d.rot_next(nw3);
    let se3 = d.rot_next(sw3);

    let mut swap = BTreeMap::new();
    for (a, b) in [(n1, nw3), (s1, se3), (n2, ne3), (s2, sw3), (w1, w2), (e1, e2)] {
        swap.insert(a, b);
        swap.insert(b, a);
    }
    if swap.len() != 12 {
        return None; // degenerate incidences
    }
    Some(R3Labels { swap })
}

/// R4 block data: the block crossings and handles of the sliding strand.
struct R4Site {
    block: Vec<(usize, DartId, NodeId)>, // (slot, leg dart, first crossing)
    strand_over: bool,
}

fn r4_site(d: &Diagram, v: NodeId, start_slot: usize, len: usize) -> Option<R4Site> {
    let node = d.nodes.get(&v)?;
    if !node.is_vertex() {
        return None;
    }
    let m = node.valence();
    if len == 0 || len > m || (len == m && m == 0) {
        return None;
    }
    let mut block = Vec::new();
    let mut crossings = BTreeSet::new();
    let mut sense: Option<bool> = None;
    for t in 0..len {
        let slot = (start_slot + t) % m;
        let leg = node.rotation[slot];
        let e = d.pair(leg);
        let (c, es) = d.position(e);
        if !d.nodes[&c].is_crossing() {
            return None;
        }
        if !crossings.insert(c) {
            return None;
        }
        let leg_over = over_at(d, c, es);
        match sense {
            None => sense = Some(leg_over),
            Some(s) if s == leg_over => {}
            _ => return None,
        }
        block.push((slot, leg, c));
    }
    // consecutive legs of the block must be crossed by one strand with no
    // intervening crossings
    for w in block.windows(2) {
        let (_, _, c_a) = w[0];
        let (_, _, c_b) = w[1];
        let e_a = d.pair(w[0].1);
        let e_b = d.pair(w[1].1);
        let toward_next = d.rot_prev(e_a); // strand dart on the far-block side
        let toward_prev_b = d.rot_next(e_b);
        let _ = (c_a, c_b);
        if d.pair(toward_next) != toward_prev_b {
            return None;
        }
    }
    let strand_over = !sense.unwrap();
    Some(R4Site { block, strand_over })
}

fn r4_sites(d: &Diagram) -> Vec<Move> {
    let mut out = Vec::new();
    for node in d.vertices() {
        let m = node.valence();
        for start_slot in 0..m {
            for len in 1..=m {
                if r4_applicable(d, node.id, start_slot, len) {
                    out.push(Move::R4 {
                        vertex: node.id,
                        start_slot,
                        len,
                    });
                }
            }
        }
    }
    out
}

fn r4_applicable(d: &Diagram, v: NodeId, start_slot: usize, len: usize) -> bool {
    let Some(site) = r4_site(d, v, start_slot, len) else {
        return false;
    };
    // reject slides whose strand ends on the vertex itself
    r4_handles(d, v, &site).is_ok()
}

struct R4Handles {
    gone: BTreeSet<NodeId>,
    jump: BTreeMap<DartId, DartId>,
    /// External darts the re-threaded strand attaches to, `None` for a
    /// closed strand.
    ends: Option<(DartId, DartId)>,
}

fn r4_handles(d: &Diagram, v: NodeId, site: &R4Site) -> Result<R4Handles> {
    let gone: BTreeSet<NodeId> = site.block.iter().map(|&(_, _, c)| c).collect();
    let jump = pass_through_jump(d, &gone);
    let gone_darts: BTreeSet<DartId> = gone
        .iter()
        .flat_map(|c| d.nodes[c].rotation.iter().copied())
        .collect();

    let first = &site.block[0];
    let last = &site.block[site.block.len() - 1];
    let s_pre = d.rot_next(d.pair(first.1)); // strand dart toward the entry gap
    let s_post = d.rot_prev(d.pair(last.1)); // strand dart toward the exit gap
    let a1 = d.resolve_out(s_pre, &gone_darts, &jump);
    let a2 = d.resolve_out(s_post, &gone_darts, &jump);
    let ends = match (a1, a2) {
        (Some(a), Some(b)) => {
            let v_darts: BTreeSet<DartId> = d.nodes[&v].rotation.iter().copied().collect();
            if v_darts.contains(&a) || v_darts.contains(&b) {
                return Err(Error::InapplicableMove(
                    "sliding strand ends on the vertex".into(),
                ));
            }
            Some((a, b))
        }
        (None, None) => None,
        _ => return Err(Error::Internal("inconsistent strand chain".into())),
    };
    Ok(R4Handles { gone, jump, ends })
}

fn r5_remove_applicable(d: &Diagram, v: NodeId, slot: usize) -> Option<(NodeId, DartId, DartId)> {
    let node = d.nodes.get(&v)?;
    if !node.is_vertex() {
        return None;
    }
    let m = node.valence();
    if m < 2 {
        return None;
    }
    let a = node.rotation[slot % m];
    let b = node.rotation[(slot + 1) % m];
    if a == b {
        return None;
    }
    let p = d.pair(a);
    let q = d.pair(b);
    let (cp, _) = d.position(p);
    let (cq, _) = d.position(q);
    if cp != cq || !d.nodes[&cp].is_crossing() {
        return None;
    }
    if d.rot_next(q) != p {
        return None;
    }
    Some((cp, p, q))
}

/// Every applicable move, in a deterministic order: decreasing and sliding
/// moves first, then the crossing-increasing duals at every site.
pub fn enumerate_moves(d: &Diagram) -> Result<Vec<Move>> {
    d.require_valid()?;
    let faces = d.faces();
    let mut out = Vec::new();
    out.extend(monogon_sites(d, &faces));
    // bigon sites cover R2Remove and R5Remove; keep only verified untwists
    for m in bigon_sites(d, &faces) {
        match m {
            Move::R5Remove { vertex, slot } => {
                if r5_remove_applicable(d, vertex, slot).is_some() {
                    out.push(Move::R5Remove { vertex, slot });
                }
            }
            other => out.push(other),
        }
    }
    out.extend(trigon_sites(d, &faces));
    out.extend(r4_sites(d));

    // increasing duals
    let mut arcs: Vec<DartId> = d
        .pairing
        .iter()
        .filter(|(a, b)| a < b)
        .map(|(&a, _)| a)
        .collect();
    arcs.sort();
    for &a in &arcs {
        for far_side in [false, true] {
            for over in [OverPair::Axis02, OverPair::Axis13] {
                out.push(Move::R1Add {
                    target: KinkTarget::Arc(a),
                    far_side,
                    over,
                });
            }
        }
    }
    if d.free_loops > 0 {
        for over in [OverPair::Axis02, OverPair::Axis13] {
            out.push(Move::R1Add {
                target: KinkTarget::FreeLoop,
                far_side: false,
                over,
            });
        }
    }
    for f in &faces {
        for (i, &x) in f.corners.iter().enumerate() {
            for &y in f.corners.iter().skip(i + 1) {
                if x == y || d.pair(x) == y {
                    continue;
                }
                if x.min(d.pair(x)) == y.min(d.pair(y)) {
                    continue; // same arc
                }
                out.push(Move::R2Add { over_arc: x, under_arc: y });
                out.push(Move::R2Add { over_arc: y, under_arc: x });
            }
        }
    }
    for v in d.vertices() {
        for slot in 0..v.valence() {
            if v.valence() < 2 {
                continue;
            }
            for first_leg_over in [false, true] {
                out.push(Move::R5Add {
                    vertex: v.id,
                    slot,
                    first_leg_over,
                });
            }
        }
    }
    Ok(out)
}

// ---- application ---------------------------------------------------------

fn fresh_crossing(d: &Diagram, extra: u32) -> (NodeId, [DartId; 4]) {
    let (node_off, dart_off) = d.next_ids();
    let id = NodeId(node_off + extra);
    let base = dart_off + 4 * extra;
    (id, [DartId(base), DartId(base + 1), DartId(base + 2), DartId(base + 3)])
}

fn insert_crossing(d: &mut Diagram, id: NodeId, darts: [DartId; 4], over: OverPair) {
    d.nodes.insert(
        id,
        Node {
            id,
            kind: NodeKind::Crossing { over },
            rotation: darts.to_vec(),
        },
    );
}

fn join(d: &mut Diagram, a: DartId, b: DartId) {
    d.pairing.insert(a, b);
    d.pairing.insert(b, a);
}

/// Applies a move; the site is re-checked and the result validated.
pub fn apply_move(d: &Diagram, m: &Move) -> Result<Diagram> {
    let out = apply_unchecked(d, m)?;
    out.require_valid()
        .map_err(|e| Error::Internal(format!("move produced invalid diagram: {e}")))?;
    Ok(out)
}

fn apply_unchecked(d: &Diagram, m: &Move) -> Result<Diagram> {
    d.require_valid()?;
    match m {
        Move::R1Add { target, far_side, over } => {
            let mut out = d.clone();
            let (id, [n0, n1, n2, n3]) = fresh_crossing(d, 0);
            insert_crossing(&mut out, id, [n0, n1, n2, n3], *over);
            match target {
                KinkTarget::Arc(a) => {
                    let e = *d
                        .pairing
                        .get(a)
                        .ok_or_else(|| Error::InapplicableMove(format!("no arc at dart {a}")))?;
                    if *far_side {
                        join(&mut out, *a, n0);
                        join(&mut out, n2, n3);
                        join(&mut out, n1, e);
                    } else {
                        join(&mut out, *a, n0);
                        join(&mut out, n1, n2);
                        join(&mut out, n3, e);
                    }
                }
                KinkTarget::FreeLoop => {
                    if d.free_loops == 0 {
                        return Err(Error::InapplicableMove("no free loop to twist".into()));
                    }
                    out.free_loops -= 1;
                    join(&mut out, n1, n2);
                    join(&mut out, n3, n0);
                }
            }
            Ok(out)
        }
        Move::R1Remove { monogon } => {
            let (c, slot) = d.position(*monogon);
            if !d.nodes[&c].is_crossing() {
                return Err(Error::InapplicableMove("monogon not at a crossing".into()));
            }
            let loop_partner = d.pair(*monogon);
            if loop_partner != d.rot_next(*monogon) && d.rot_prev(*monogon) != loop_partner {
                return Err(Error::InapplicableMove("dart is not on a monogon".into()));
            }
            let _ = slot;
            let gone: BTreeSet<NodeId> = [c].into_iter().collect();
            let jump = pass_through_jump(d, &gone);
            Ok(d.eliminate_nodes(&gone, &jump)?.diagram)
        }
        Move::R2Add { over_arc, under_arc } => {
            let x = *over_arc;
            let y = *under_arc;
            let face_at = d.face_index();
            if !face_at.contains_key(&x) || !face_at.contains_key(&y) || face_at[&x] != face_at[&y] {
                return Err(Error::InapplicableMove("darts not on one face".into()));
            }
            if x == y || x.min(d.pair(x)) == y.min(d.pair(y)) {
                return Err(Error::InapplicableMove("need two distinct arcs".into()));
            }
            let e_x = d.pair(x);
            let e_y = d.pair(y);
            let mut out = d.clone();
            let (c1, p) = fresh_crossing(d, 0);
            let (c2, q) = fresh_crossing(d, 1);
            // pushed strand passes both crossings on slots {0,2}
            insert_crossing(&mut out, c1, p, OverPair::Axis02);
            insert_crossing(&mut out, c2, q, OverPair::Axis02);
            join(&mut out, x, p[0]);
            join(&mut out, p[2], q[2]);
            join(&mut out, q[0], e_x);
            join(&mut out, y, q[1]);
            join(&mut out, q[3], p[1]);
            join(&mut out, p[3], e_y);
            Ok(out)
        }
        Move::R2Remove { bigon } => {
            let x = *bigon;
            let y = d.rot_prev(d.pair(x));
            if d.rot_prev(d.pair(y)) != x || x == y {
                return Err(Error::InapplicableMove("dart is not on a bigon".into()));
            }
            let (c1, sx) = d.position(x);
            let (c2, _) = d.position(y);
            if c1 == c2 || !d.nodes[&c1].is_crossing() || !d.nodes[&c2].is_crossing() {
                return Err(Error::InapplicableMove("bigon not between two crossings".into()));
            }
            let far = d.position(d.pair(x)).1;
            if over_at(d, c1, sx) != over_at(d, c2, far) {
                return Err(Error::InapplicableMove("bigon strands are not coherent".into()));
            }
            let gone: BTreeSet<NodeId> = [c1, c2].into_iter().collect();
            let jump = pass_through_jump(d, &gone);
            Ok(d.eliminate_nodes(&gone, &jump)?.diagram)
        }
        Move::R3 { apex } => {
            let labels = r3_labels(d, *apex)
                .ok_or_else(|| Error::InapplicableMove("no coherent trigon at apex".into()))?;
            let swap = |x: DartId| labels.swap.get(&x).copied().unwrap_or(x);
            let mut pairing = BTreeMap::new();
            for (&a, &b) in &d.pairing {
                pairing.insert(swap(a), swap(b));
            }
            Ok(Diagram {
                nodes: d.nodes.clone(),
                pairing,
                free_loops: d.free_loops,
            })
        }
        Move::R4 { vertex, start_slot, len } => {
            let site = r4_site(d, *vertex, *start_slot, *len)
                .ok_or_else(|| Error::InapplicableMove("no slide block at site".into()))?;
            let handles = r4_handles(d, *vertex, &site)?;
            let elimination = d.eliminate_nodes(&handles.gone, &handles.jump)?;
            let mut out = elimination.diagram;

            let m = d.nodes[vertex].valence();
            let k = *len;
            if k == m {
                return Ok(out);
            }
            // complement legs in the order the strand now crosses them
            let order: Vec<usize> = (0..m - k)
                .map(|t| (start_slot + m - 1 - t) % m)
                .collect();
            let over = if site.strand_over { OverPair::Axis02 } else { OverPair::Axis13 };
            let (node_off, dart_off) = {
                // fresh ids above both the original and eliminated diagram
                let (n0, d0) = d.next_ids();
                let (n1, d1) = out.next_ids();
                (n0.max(n1), d0.max(d1))
            };
            let mut new_cross: Vec<[DartId; 4]> = Vec::new();
            for (t, &slot) in order.iter().enumerate() {
                let id = NodeId(node_off + t as u32);
                let base = dart_off + 4 * t as u32;
                let darts = [
                    DartId(base),     // w: outgoing along the strand
                    DartId(base + 1), // b: leg continuation away from v
                    DartId(base + 2), // u: incoming along the strand
                    DartId(base + 3), // a: toward v
                ];
                insert_crossing(&mut out, id, darts, over);
                let leg = d.nodes[vertex].rotation[slot];
                let prev_partner = out.pairing[&leg];
                join(&mut out, leg, darts[3]);
                join(&mut out, darts[1], prev_partner);
                new_cross.push(darts);
            }
            for w in new_cross.windows(2) {
                join(&mut out, w[0][0], w[1][2]); // w_t - u_{t+1}
            }
            match handles.ends {
                Some((a1, x1)) => {
                    join(&mut out, a1, new_cross[0][2]);
                    join(&mut out, new_cross[new_cross.len() - 1][0], x1);
                }
                None => {
                    join(
                        &mut out,
                        new_cross[new_cross.len() - 1][0],
                        new_cross[0][2],
                    );
                    out.free_loops -= elimination.closed_chains.min(1);
                }
            }
            Ok(out)
        }
        Move::R5Add { vertex, slot, first_leg_over } => {
            let node = d
                .nodes
                .get(vertex)
                .filter(|n| n.is_vertex())
                .ok_or_else(|| Error::InapplicableMove("no such vertex".into()))?;
            let m = node.valence();
            if m < 2 {
                return Err(Error::InapplicableMove("vertex too small to twist".into()));
            }
            let a = node.rotation[slot % m];
            let b = node.rotation[(slot + 1) % m];
            if a == b {
                return Err(Error::InapplicableMove("need two distinct legs".into()));
            }
            let pa = d.pair(a);
            let pb = d.pair(b);
            let over = if *first_leg_over { OverPair::Axis13 } else { OverPair::Axis02 };
            let mut out = d.clone();
            let (id, [n0, n1, n2, n3]) = fresh_crossing(d, 0);
            insert_crossing(&mut out, id, [n0, n1, n2, n3], over);
            join(&mut out, a, n3);
            join(&mut out, b, n2);
            if pa == b {
                // the twisted pair was a tight loop
                join(&mut out, n1, n0);
            } else {
                // the twisted strands exchange their outward directions
                join(&mut out, n0, pa);
                join(&mut out, n1, pb);
            }
            Ok(out)
        }
        Move::R5Remove { vertex, slot } => {
            let (c, p, q) = r5_remove_applicable(d, *vertex, *slot)
                .ok_or_else(|| Error::InapplicableMove("no twist at leg pair".into()))?;
            // untwisting exchanges the legs' outward directions back
            let rot = &d.nodes[&c].rotation;
            let pass = |x: DartId| {
                let s = rot.iter().position(|&r| r == x).unwrap();
                rot[(s + 2) % 4]
            };
            let gone: BTreeSet<NodeId> = [c].into_iter().collect();
            let mut jump = BTreeMap::new();
            jump.insert(p, pass(q));
            jump.insert(pass(q), p);
            jump.insert(q, pass(p));
            jump.insert(pass(p), q);
            Ok(d.eliminate_nodes(&gone, &jump)?.diagram)
        }
    }
}

// ---- search ---------------------------------------------------------------

/// One step of a search trace.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub mv: Move,
    pub crossings: usize,
}

/// Result of a randomized reduction walk.
#[derive(Debug, Clone, Serialize)]
pub struct MoveTrace {
    pub initial: String,
    pub initial_crossings: usize,
    pub steps: Vec<TraceStep>,
    pub best_crossings: usize,
    #[serde(skip)]
    pub best_diagram: Diagram,
}

fn decreasing_and_level_moves(d: &Diagram) -> (Vec<Move>, Vec<Move>) {
    let faces = d.faces();
    let mut dec = Vec::new();
    let mut level = Vec::new();
    dec.extend(monogon_sites(d, &faces));
    for m in bigon_sites(d, &faces) {
        match m {
            Move::R5Remove { vertex, slot } => {
                if r5_remove_applicable(d, vertex, slot).is_some() {
                    dec.push(Move::R5Remove { vertex, slot });
                }
            }
            other => dec.push(other),
        }
    }
    level.extend(trigon_sites(d, &faces));
    for m in r4_sites(d) {
        match m.delta(d) {
            x if x < 0 => dec.push(m),
            0 => level.push(m),
            _ => {}
        }
    }
    (dec, level)
}

fn sample_increasing(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<Move> {
    let arcs: Vec<DartId> = d
        .pairing
        .iter()
        .filter(|(a, b)| a < b)
        .map(|(&a, _)| a)
        .collect();
    let vertices: Vec<&Node> = d.vertices().filter(|v| v.valence() >= 2).collect();
    for _ in 0..8 {
        match rng.gen_range(0..3u8) {
            0 => {
                if let Some(&a) = arcs.as_slice().choose(rng) {
                    return Some(Move::R1Add {
                        target: KinkTarget::Arc(a),
                        far_side: rng.gen(),
                        over: if rng.gen() { OverPair::Axis02 } else { OverPair::Axis13 },
                    });
                }
                if d.free_loops > 0 {
                    return Some(Move::R1Add {
                        target: KinkTarget::FreeLoop,
                        far_side: false,
                        over: if rng.gen() { OverPair::Axis02 } else { OverPair::Axis13 },
                    });
                }
            }
            1 => {
                let faces = d.faces();
                let candidates: Vec<_> = faces.iter().filter(|f| f.degree() >= 2).collect();
                if let Some(f) = candidates.as_slice().choose(rng) {
                    let x = *f.corners.as_slice().choose(rng).unwrap();
                    let y = *f.corners.as_slice().choose(rng).unwrap();
                    if x != y && x.min(d.pair(x)) != y.min(d.pair(y)) {
                        return Some(Move::R2Add { over_arc: x, under_arc: y });
                    }
                }
            }
            _ => {
                if let Some(v) = vertices.as_slice().choose(rng) {
                    return Some(Move::R5Add {
                        vertex: v.id,
                        slot: rng.gen_range(0..v.valence()),
                        first_leg_over: rng.gen(),
                    });
                }
            }
        }
    }
    None
}

/// Randomized annealing walk over moves: greedy on decreasing moves, with
/// level moves (R3, balanced slides) and crossing-increasing excursions whose
/// acceptance decays geometrically over the budget. Deterministic per seed.
pub fn search_reduce(d: &Diagram, budget: usize, seed: u64) -> Result<MoveTrace> {
    d.require_valid()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = d.clone();
    let mut best = d.crossing_count();
    let mut best_diagram = d.clone();
    let mut steps = Vec::new();

    let mut accept_increase = 0.9_f64;
    let decay = if budget > 0 {
        // decay to about 1% acceptance by the end of the budget
        (0.01_f64 / 0.9).powf(1.0 / budget as f64)
    } else {
        1.0
    };

    for _ in 0..budget {
        let (dec, level) = decreasing_and_level_moves(&state);
        let chosen = if !dec.is_empty() && rng.gen_bool(0.85) {
            Some(dec.as_slice().choose(&mut rng).unwrap().clone())
        } else if !level.is_empty() && rng.gen_bool(0.5) {
            Some(level.as_slice().choose(&mut rng).unwrap().clone())
        } else if rng.gen_bool(accept_increase.clamp(0.0, 1.0)) {
            sample_increasing(&state, &mut rng)
        } else if !dec.is_empty() {
            Some(dec.as_slice().choose(&mut rng).unwrap().clone())
        } else if !level.is_empty() {
            Some(level.as_slice().choose(&mut rng).unwrap().clone())
        } else {
            sample_increasing(&state, &mut rng)
        };
        accept_increase *= decay;

        let Some(mv) = chosen else { break };
        let Ok(next) = apply_move(&state, &mv) else {
            continue;
        };
        let crossings = next.crossing_count();
        steps.push(TraceStep { mv, crossings });
        if crossings < best {
            best = crossings;
            best_diagram = next.clone();
        }
        state = next;
        if best == 0 && state.crossing_count() == 0 {
            break;
        }
    }

    Ok(MoveTrace {
        initial: d.digest(),
        initial_crossings: d.crossing_count(),
        steps,
        best_crossings: best,
        best_diagram,
    })
}
