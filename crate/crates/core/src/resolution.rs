//! All-A / all-A⁻¹ resolutions of link diagrams and the link-level
//! predicates: A-/A⁻¹-adequate, reduced (no nugatory crossing), alternating.
//!
//! Smoothing convention: at a crossing, the regions swept by rotating the
//! overstrand counterclockwise onto the understrand are the A-regions, and
//! the A-smoothing joins them. In slot terms this pairs each over slot with
//! its rotation predecessor; the A⁻¹-smoothing pairs each over slot with its
//! successor. With this convention a positive kink resolves to two circles
//! under all-A and to one circle under all-A⁻¹.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{DartId, Diagram, NodeId, NodeKind, UnionFind};
use crate::error::{Error, Result};

/// Which resolution is applied at every crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ResolutionKind {
    A,
    AInverse,
}

/// One grey segment: the ghost of a resolved crossing, recording the two
/// circles its smoothing arcs lie on (possibly the same circle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreySegment {
    pub crossing: NodeId,
    pub left: usize,
    pub right: usize,
}

impl GreySegment {
    pub fn joins_distinct(&self) -> bool {
        self.left != self.right
    }
}

/// The circles of an all-A or all-A⁻¹ resolution together with the grey
/// segments. Circles are listed as sorted dart sets; circles arising from
/// free loops carry no darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateCircles {
    pub kind: ResolutionKind,
    pub circles: Vec<Vec<DartId>>,
    pub grey: Vec<GreySegment>,
}

impl StateCircles {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// Slot pairs joined by the smoothing of a crossing.
pub fn smoothing_pairs(over: crate::diagram::OverPair, kind: ResolutionKind) -> [(usize, usize); 2] {
    let [o1, o2] = over.slots();
    match kind {
        // each over slot joins its rotation predecessor
        ResolutionKind::A => [((o1 + 3) % 4, o1), ((o2 + 3) % 4, o2)],
        // each over slot joins its rotation successor
        ResolutionKind::AInverse => [(o1, (o1 + 1) % 4), (o2, (o2 + 1) % 4)],
    }
}

fn require_link(d: &Diagram) -> Result<()> {
    d.require_valid()?;
    if let Some(v) = d.nodes.values().find(|n| n.is_vertex()) {
        return Err(Error::NotALink(v.id));
    }
    Ok(())
}

/// Resolves every crossing and traces the resulting circles by union-find
/// over darts.
pub fn resolve_all(d: &Diagram, kind: ResolutionKind) -> Result<StateCircles> {
    require_link(d)?;

    let mut uf = UnionFind::new();
    for dart in d.darts() {
        uf.add(dart.0);
    }
    for (&a, &b) in &d.pairing {
        uf.union(a.0, b.0);
    }
    for node in d.crossings() {
        let over = match node.kind {
            NodeKind::Crossing { over } => over,
            _ => unreachable!(),
        };
        for (i, j) in smoothing_pairs(over, kind) {
            uf.union(node.rotation[i].0, node.rotation[j].0);
        }
    }

    let mut classes: BTreeMap<u32, Vec<DartId>> = BTreeMap::new();
    for dart in d.darts() {
        classes.entry(uf.find(dart.0)).or_default().push(dart);
    }
    let mut circles: Vec<Vec<DartId>> = classes.into_values().collect();
    circles.sort_by_key(|c| c[0]);
    let circle_of: BTreeMap<DartId, usize> = circles
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&d| (d, i)))
        .collect();
    for _ in 0..d.free_loops {
        circles.push(Vec::new());
    }

    let mut grey = Vec::new();
    for node in d.crossings() {
        let over = match node.kind {
            NodeKind::Crossing { over } => over,
            _ => unreachable!(),
        };
        let pairs = smoothing_pairs(over, kind);
        // deterministic orientation: the smoothing arc touching slot 0 first
        let (first, second) = if pairs[0].0 == 0 || pairs[0].1 == 0 {
            (pairs[0], pairs[1])
        } else {
            (pairs[1], pairs[0])
        };
        grey.push(GreySegment {
            crossing: node.id,
            left: circle_of[&node.rotation[first.0]],
            right: circle_of[&node.rotation[second.0]],
        });
    }

    Ok(StateCircles { kind, circles, grey })
}

/// True when every grey segment of the all-A resolution joins distinct circles.
pub fn is_a_adequate(d: &Diagram) -> Result<bool> {
    Ok(resolve_all(d, ResolutionKind::A)?
        .grey
        .iter()
        .all(GreySegment::joins_distinct))
}

/// True when every grey segment of the all-A⁻¹ resolution joins distinct circles.
pub fn is_a_inv_adequate(d: &Diagram) -> Result<bool> {
    Ok(resolve_all(d, ResolutionKind::AInverse)?
        .grey
        .iter()
        .all(GreySegment::joins_distinct))
}

/// Adequate = A-adequate and A⁻¹-adequate.
pub fn is_adequate_link(d: &Diagram) -> Result<bool> {
    Ok(is_a_adequate(d)? && is_a_inv_adequate(d)?)
}

/// A crossing is nugatory when two opposite corner faces coincide; a link
/// diagram is reduced when it has no nugatory crossing.
pub fn is_reduced_link(d: &Diagram) -> Result<bool> {
    require_link(d)?;
    Ok(nugatory_crossings(d).is_empty())
}

/// Crossings whose opposite corner faces coincide. Works for diagrams with
/// vertices as well; callers needing the link-only contract check separately.
pub fn nugatory_crossings(d: &Diagram) -> Vec<NodeId> {
    let face_at = d.face_index();
    d.crossings()
        .filter(|node| {
            let f = |i: usize| face_at[&node.rotation[i]];
            f(0) == f(2) || f(1) == f(3)
        })
        .map(|n| n.id)
        .collect()
}

/// True when over/under passages alternate along every closed strand.
pub fn is_alternating_link(d: &Diagram) -> Result<bool> {
    require_link(d)?;
    Ok(d.strands().iter().all(|s| cyclic_alternates(&s.passages)))
}

pub(crate) fn cyclic_alternates(passages: &[(NodeId, usize, bool)]) -> bool {
    if passages.len() <= 1 {
        return true;
    }
    (0..passages.len()).all(|i| passages[i].2 != passages[(i + 1) % passages.len()].2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::OverPair;
    use crate::fixtures;

    #[test]
    fn unknot_resolves_to_one_circle() {
        let d = Diagram::unknots(1);
        for kind in [ResolutionKind::A, ResolutionKind::AInverse] {
            let s = resolve_all(&d, kind).unwrap();
            assert_eq!(s.circle_count(), 1);
            assert!(s.grey.is_empty());
        }
    }

    #[test]
    fn positive_kink_resolutions() {
        // hand-traced on the one-crossing map: the all-A state splits the
        // kink into two circles, the all-A⁻¹ state keeps one circle
        let d = fixtures::kink1();
        let a = resolve_all(&d, ResolutionKind::A).unwrap();
        assert_eq!(a.circle_count(), 2);
        assert_eq!(a.grey.len(), 1);
        assert!(a.grey[0].joins_distinct());

        let b = resolve_all(&d, ResolutionKind::AInverse).unwrap();
        assert_eq!(b.circle_count(), 1);
        assert!(!b.grey[0].joins_distinct());

        assert!(is_a_adequate(&d).unwrap());
        assert!(!is_a_inv_adequate(&d).unwrap());
        assert!(!is_adequate_link(&d).unwrap());
    }

    #[test]
    fn trefoil_state_sum() {
        let d = fixtures::trefoil3();
        let a = resolve_all(&d, ResolutionKind::A).unwrap();
        let b = resolve_all(&d, ResolutionKind::AInverse).unwrap();
        assert_eq!(a.circle_count() + b.circle_count(), 3 + 2);
        assert_eq!(a.grey.len(), 3);
        assert!(is_adequate_link(&d).unwrap());
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced_link(&fixtures::kink1()).unwrap());
        assert!(is_reduced_link(&fixtures::trefoil3()).unwrap());
        assert!(is_reduced_link(&fixtures::hopf2()).unwrap());
    }

    #[test]
    fn alternation() {
        assert!(is_alternating_link(&fixtures::trefoil3()).unwrap());
        assert!(is_alternating_link(&Diagram::unknots(1)).unwrap());

        let mut d = fixtures::hopf2();
        let id = *d.nodes.keys().next().unwrap();
        if let NodeKind::Crossing { over } = d.nodes[&id].kind {
            d.nodes.get_mut(&id).unwrap().kind = NodeKind::Crossing { over: over.flipped() };
        }
        assert!(!is_alternating_link(&d).unwrap());
    }

    #[test]
    fn vertex_rejected() {
        let d = fixtures::theta();
        assert!(matches!(resolve_all(&d, ResolutionKind::A), Err(Error::NotALink(_))));
        assert!(matches!(is_alternating_link(&d), Err(Error::NotALink(_))));
    }

    #[test]
    fn mirror_swaps_resolutions() {
        let d = fixtures::kink1();
        let m = d.mirror();
        assert_eq!(
            resolve_all(&d, ResolutionKind::A).unwrap().circle_count(),
            resolve_all(&m, ResolutionKind::AInverse).unwrap().circle_count(),
        );
        assert_eq!(is_a_adequate(&d).unwrap(), is_a_inv_adequate(&m).unwrap());
        assert_eq!(is_adequate_link(&d).unwrap(), is_adequate_link(&m).unwrap());
    }

    #[test]
    fn smoothing_pair_table() {
        assert_eq!(smoothing_pairs(OverPair::Axis02, ResolutionKind::A), [(3, 0), (1, 2)]);
        assert_eq!(
            smoothing_pairs(OverPair::Axis02, ResolutionKind::AInverse),
            [(0, 1), (2, 3)]
        );
        assert_eq!(smoothing_pairs(OverPair::Axis13, ResolutionKind::A), [(0, 1), (2, 3)]);
        assert_eq!(
            smoothing_pairs(OverPair::Axis13, ResolutionKind::AInverse),
            [(1, 2), (3, 0)]
        );
    }
}
