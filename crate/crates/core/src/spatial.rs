//! Vertex smoothings and the spatial-graph predicates.
//!
//! A smoothing replaces the neighbourhood of every vertex by non-crossing
//! planar arcs pairing the incident edge ends. A spatial-graph diagram is
//! reduced / alternating / adequate when every smoothing yields a link
//! diagram with the corresponding property; failures carry the witness
//! smoothing. Separately, the rigid-vertex checks (`adams_*`) test the
//! reduced/alternating conditions formulated directly on the diagram.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diagram::{DartId, Diagram, NodeId, NodeKind, UnionFind};
use crate::error::{Error, Result};
use crate::resolution::{cyclic_alternates, is_adequate_link, is_alternating_link, is_reduced_link, nugatory_crossings};

/// Non-crossing perfect matchings of `2m` cyclically ordered points, as slot
/// pairs, in the deterministic order "match the first point to each
/// admissible partner, recurse".
pub fn non_crossing_matchings(len: usize) -> Vec<SlotMatching> {
    // Each chord splits its region in two; regions are matched independently.
    fn rec(
        regions: Vec<Vec<usize>>,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(idx) = regions.iter().position(|r| !r.is_empty()) else {
            out.push(acc.clone());
            return;
        };
        let pts = regions[idx].clone();
        let first = pts[0];
        // the partner must leave an even number of points on each side
        for k in (1..pts.len()).step_by(2) {
            acc.push((first, pts[k]));
            let mut next = regions.clone();
            next[idx] = pts[1..k].to_vec();
            next.insert(idx + 1, pts[k + 1..].to_vec());
            rec(next, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(vec![(0..len).collect()], &mut Vec::new(), &mut out);
    out
}

/// Slot pairs of one vertex's non-crossing matching.
pub type SlotMatching = Vec<(usize, usize)>;

/// One smoothing: a non-crossing perfect matching per vertex and the
/// resulting link diagram.
#[derive(Debug, Clone, Serialize)]
pub struct Smoothing {
    pub matchings: BTreeMap<NodeId, SlotMatching>,
    pub result: Diagram,
}

fn even_valent_vertices(d: &Diagram) -> Result<Vec<NodeId>> {
    let mut ids = Vec::new();
    for v in d.vertices() {
        if v.valence() % 2 != 0 {
            return Err(Error::OddValence(v.id, v.valence()));
        }
        ids.push(v.id);
    }
    Ok(ids)
}

/// Applies one matching per vertex, reconnecting strands through the
/// eliminated vertices.
pub fn apply_smoothing(d: &Diagram, matchings: &BTreeMap<NodeId, SlotMatching>) -> Result<Diagram> {
    let gone: BTreeSet<NodeId> = matchings.keys().copied().collect();
    let mut jump: BTreeMap<DartId, DartId> = BTreeMap::new();
    for (v, pairs) in matchings {
        let rot = &d.nodes[v].rotation;
        for &(i, j) in pairs {
            jump.insert(rot[i], rot[j]);
            jump.insert(rot[j], rot[i]);
        }
    }
    Ok(d.eliminate_nodes(&gone, &jump)?.diagram)
}

/// Enumerates every smoothing of the diagram's vertices: the cartesian
/// product over vertices of the non-crossing matchings of each rotation.
pub fn enumerate_smoothings(d: &Diagram) -> Result<Vec<Smoothing>> {
    d.require_valid()?;
    let vertices = even_valent_vertices(d)?;
    let options: Vec<(NodeId, Vec<SlotMatching>)> = vertices
        .iter()
        .map(|&v| (v, non_crossing_matchings(d.nodes[&v].valence())))
        .collect();

    let mut out = Vec::new();
    let mut index = vec![0usize; options.len()];
    loop {
        let matchings: BTreeMap<NodeId, SlotMatching> = options
            .iter()
            .zip(&index)
            .map(|((v, ms), &i)| (*v, ms[i].clone()))
            .collect();
        let result = apply_smoothing(d, &matchings)?;
        out.push(Smoothing { matchings, result });

        // odometer increment
        let mut k = options.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < options[k].1.len() {
                break;
            }
            index[k] = 0;
        }
        if options.is_empty() {
            return Ok(out);
        }
    }
}

/// Outcome of an all-smoothings predicate, with a witness on failure.
#[derive(Debug, Clone, Serialize)]
pub struct SpatialCheck {
    pub holds: bool,
    pub witness: Option<Smoothing>,
}

impl SpatialCheck {
    fn pass() -> Self {
        SpatialCheck { holds: true, witness: None }
    }

    fn fail(witness: Smoothing) -> Self {
        SpatialCheck { holds: false, witness: Some(witness) }
    }
}

fn check_all_smoothings(
    d: &Diagram,
    pred: impl Fn(&Diagram) -> Result<bool>,
) -> Result<SpatialCheck> {
    for s in enumerate_smoothings(d)? {
        if !pred(&s.result)? {
            return Ok(SpatialCheck::fail(s));
        }
    }
    Ok(SpatialCheck::pass())
}

/// Every smoothing yields a reduced link diagram.
pub fn is_reduced_spatial(d: &Diagram) -> Result<SpatialCheck> {
    check_all_smoothings(d, is_reduced_link)
}

/// Every smoothing yields an alternating link diagram.
pub fn is_alternating_spatial(d: &Diagram) -> Result<SpatialCheck> {
    check_all_smoothings(d, is_alternating_link)
}

/// Every smoothing yields an adequate link diagram.
pub fn is_adequate_spatial(d: &Diagram) -> Result<SpatialCheck> {
    check_all_smoothings(d, is_adequate_link)
}

/// Removes an uncrossed edge (given by its strand id) from a single-vertex
/// diagram and reports whether the remainder is adequate. A `true` answer
/// certifies adequacy of the whole diagram without enumerating its larger
/// smoothing set.
pub fn uncrossed_edge_shortcut(d: &Diagram, edge: DartId) -> Result<bool> {
    d.require_valid()?;
    let mut vertices = d.vertices();
    let v = vertices.next().ok_or(Error::NotSingleVertex)?;
    if vertices.next().is_some() {
        return Err(Error::NotSingleVertex);
    }
    let strand = d.strand_by_id(edge).ok_or(Error::NoSuchEdge(edge))?;
    let Some((a, b)) = strand.ends else {
        return Err(Error::NoSuchEdge(edge));
    };
    if !strand.is_uncrossed() {
        return Err(Error::EdgeHasCrossings(edge));
    }
    let remainder = delete_uncrossed_edge(d, v.id, a, b);
    remainder.require_valid()?;
    Ok(is_adequate_spatial(&remainder)?.holds)
}

fn delete_uncrossed_edge(d: &Diagram, v: NodeId, a: DartId, b: DartId) -> Diagram {
    let mut out = d.clone();
    out.pairing.remove(&a);
    out.pairing.remove(&b);
    let node = out.nodes.get_mut(&v).expect("vertex");
    node.rotation.retain(|&x| x != a && x != b);
    if node.rotation.is_empty() {
        out.nodes.remove(&v);
    }
    out
}

// ---- rigid-vertex (Adams) checks ----------------------------------------

/// No circle in the diagram sphere meets the diagram transversely in a
/// single crossing: no crossing has equal opposite corner faces.
pub fn adams_reduced(d: &Diagram) -> Result<bool> {
    d.require_valid()?;
    Ok(nugatory_crossings(d).is_empty())
}

/// Crossings alternate along every edge and along every closed strand, and
/// around each component of the neighbourhood of vertices and uncrossed
/// edges the first crossings of exiting edge ends alternate.
pub fn adams_alternating(d: &Diagram) -> Result<bool> {
    d.require_valid()?;
    let strands = d.strands();
    for s in &strands {
        if s.is_edge() {
            // open edge: consecutive passages alternate, ends are free
            if s.passages.windows(2).any(|w| w[0].2 == w[1].2) {
                return Ok(false);
            }
        } else if !cyclic_alternates(&s.passages) {
            return Ok(false);
        }
    }
    for cycle in neighborhood_boundaries(d) {
        let senses: Vec<bool> = cycle
            .iter()
            .map(|&exit| first_sense_from(d, exit).expect("exiting dart has a crossing"))
            .collect();
        if senses.len() > 1 {
            let n = senses.len();
            if (0..n).any(|i| senses[i] == senses[(i + 1) % n]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Over/under sense of the first crossing along the strand leaving `start`.
/// `None` when the strand reaches a vertex before any crossing (uncrossed
/// edges never exit the neighbourhood, so exits always see a crossing first).
fn first_sense_from(d: &Diagram, start: DartId) -> Option<bool> {
    let far = d.pair(start);
    let (node, slot) = d.position(far);
    match d.nodes[&node].kind {
        NodeKind::Vertex { .. } => None,
        NodeKind::Crossing { over } => Some(over.contains(slot)),
    }
}

/// Uncrossed-edge dart set: vertex darts whose strand reaches another vertex
/// without passing a crossing.
fn uncrossed_edge_darts(d: &Diagram) -> BTreeSet<DartId> {
    d.strands()
        .iter()
        .filter(|s| s.is_edge() && s.is_uncrossed())
        .flat_map(|s| {
            let (a, b) = s.ends.unwrap();
            [a, b]
        })
        .collect()
}

/// Boundary cycles of the components of N (vertices plus uncrossed edges):
/// the exiting edge ends of each component in boundary order, one vector per
/// boundary circle.
pub fn neighborhood_boundaries(d: &Diagram) -> Vec<Vec<DartId>> {
    let uncrossed = uncrossed_edge_darts(d);
    let exits: BTreeSet<DartId> = d
        .vertices()
        .flat_map(|v| v.rotation.iter().copied())
        .filter(|dart| !uncrossed.contains(dart))
        .collect();

    let next_exit = |start: DartId| -> DartId {
        let mut e = d.rot_next(start);
        while uncrossed.contains(&e) {
            e = d.rot_next(d.pair(e));
        }
        e
    };

    let mut cycles = Vec::new();
    let mut visited: BTreeSet<DartId> = BTreeSet::new();
    for &start in &exits {
        if visited.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            visited.insert(cur);
            cycle.push(cur);
            cur = next_exit(cur);
            if cur == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// The subgraph of uncrossed edges contains a cycle (loops included); free
/// loops count as uncrossed cycles.
pub fn has_uncrossed_cycle(d: &Diagram) -> Result<bool> {
    d.require_valid()?;
    if d.free_loops > 0 {
        return Ok(true);
    }
    let mut uf = UnionFind::new();
    for s in d.strands() {
        if s.is_edge() && s.is_uncrossed() {
            let (a, b) = s.ends.unwrap();
            let (u, _) = d.position(a);
            let (w, _) = d.position(b);
            if u == w || !uf.union(u.0, w.0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Pairs `(crossing, edge)` such that the two opposite corner faces at the
/// crossing are distinct yet share an arc of the edge: a circle can pass
/// transversely through exactly that crossing and that edge.
pub fn circle_through_crossing_and_edge(d: &Diagram) -> Result<Vec<(NodeId, DartId)>> {
    d.require_valid()?;
    let face_at = d.face_index();
    let strands = d.strands();
    let strand_of_arc: BTreeMap<DartId, DartId> = strands
        .iter()
        .flat_map(|s| {
            let id = s.id;
            s.arc_darts
                .iter()
                .map(move |&a| (a.min(d.pair(a)), id))
                .collect::<Vec<_>>()
        })
        .collect();

    let mut found = BTreeSet::new();
    for node in d.crossings() {
        let f = |i: usize| face_at[&node.rotation[i]];
        for (i, j) in [(0usize, 2usize), (1, 3)] {
            let (fa, fb) = (f(i), f(j));
            if fa == fb {
                continue;
            }
            for (&arc_a, &arc_b) in &d.pairing {
                if arc_a > arc_b {
                    continue;
                }
                let sides = (face_at[&arc_a], face_at[&arc_b]);
                if (sides.0 == fa && sides.1 == fb) || (sides.0 == fb && sides.1 == fa) {
                    let edge = strand_of_arc[&arc_a.min(arc_b)];
                    found.insert((node.id, edge));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Conjunction report for the rigid-vertex minimality criterion.
#[derive(Debug, Clone, Serialize)]
pub struct AdamsReport {
    pub even_valent: bool,
    pub all_rigid: bool,
    pub reduced: bool,
    pub alternating: bool,
    pub no_uncrossed_cycle: bool,
}

impl AdamsReport {
    pub fn all_hold(&self) -> bool {
        self.even_valent && self.all_rigid && self.reduced && self.alternating && self.no_uncrossed_cycle
    }
}

/// Evaluates every hypothesis of the rigid-vertex criterion.
pub fn adams_hypotheses(d: &Diagram) -> Result<AdamsReport> {
    d.require_valid()?;
    Ok(AdamsReport {
        even_valent: d.vertices().all(|v| v.valence() % 2 == 0),
        all_rigid: d.vertices().all(|v| matches!(v.kind, NodeKind::Vertex { rigid: true })),
        reduced: adams_reduced(d)?,
        alternating: adams_alternating(d)?,
        no_uncrossed_cycle: !has_uncrossed_cycle(d)?,
    })
}
