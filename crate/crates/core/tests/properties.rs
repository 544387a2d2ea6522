//! Property tests over seeded random diagrams: face partitioning and Euler
//! counts, relabelling invariance, resolution bookkeeping, and the
//! move-then-double adequacy equivalence for one-vertex diagrams.

use std::collections::BTreeSet;

use gordian_core::diagram::{DartId, Diagram, Node, NodeId};
use gordian_core::fixtures;
use gordian_core::moves::{self, Move};
use gordian_core::resolution::{self, ResolutionKind};
use gordian_core::samples;
use gordian_core::spatial;
use gordian_core::tangle;

fn random_corpus() -> Vec<Diagram> {
    let mut out: Vec<Diagram> = fixtures::all().into_iter().map(|(_, d)| d).collect();
    for seed in 0..25u64 {
        out.push(samples::random_alternating_link(seed, 8, false));
        out.push(samples::random_one_vertex(seed, 6, 1 + (seed % 3) as usize));
    }
    out
}

#[test]
fn faces_partition_darts() {
    for d in random_corpus() {
        let faces = d.faces();
        let mut seen: BTreeSet<DartId> = BTreeSet::new();
        for f in &faces {
            for &c in &f.corners {
                assert!(seen.insert(c), "dart side visited twice");
            }
        }
        let all: BTreeSet<DartId> = d.darts().collect();
        assert_eq!(seen, all, "every dart side visited once");
        let degree_sum: usize = faces.iter().map(|f| f.degree()).sum();
        assert_eq!(degree_sum, d.pairing.len(), "face degrees cover both arc sides");
        assert!(d.validate().is_valid());
    }
}

fn relabel(d: &Diagram, node_off: u32, dart_off: u32) -> Diagram {
    let nodes = d
        .nodes
        .values()
        .map(|n| {
            let id = NodeId(n.id.0 + node_off);
            (
                id,
                Node {
                    id,
                    kind: n.kind.clone(),
                    rotation: n.rotation.iter().map(|x| DartId(x.0 + dart_off)).collect(),
                },
            )
        })
        .collect();
    let pairing = d
        .pairing
        .iter()
        .map(|(a, b)| (DartId(a.0 + dart_off), DartId(b.0 + dart_off)))
        .collect();
    Diagram {
        nodes,
        pairing,
        free_loops: d.free_loops,
    }
}

#[test]
fn adams_alternating_is_relabelling_invariant() {
    for (name, d) in fixtures::all() {
        let shifted = relabel(&d, 11, 101);
        assert_eq!(
            spatial::adams_alternating(&d).unwrap(),
            spatial::adams_alternating(&shifted).unwrap(),
            "{name}"
        );
        assert_eq!(
            spatial::adams_reduced(&d).unwrap(),
            spatial::adams_reduced(&shifted).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn grey_segment_count_equals_crossings() {
    for seed in 0..30u64 {
        let d = samples::random_alternating_link(seed, 8, false);
        for kind in [ResolutionKind::A, ResolutionKind::AInverse] {
            let s = resolution::resolve_all(&d, kind).unwrap();
            assert_eq!(s.grey.len(), d.crossing_count());
        }
    }
}

#[test]
fn adequacy_commutes_with_mirror() {
    for seed in 0..30u64 {
        let d = samples::random_alternating_link(seed, 7, false);
        let m = d.mirror();
        assert_eq!(
            resolution::is_a_adequate(&d).unwrap(),
            resolution::is_a_inv_adequate(&m).unwrap()
        );
        assert_eq!(
            resolution::is_adequate_link(&d).unwrap(),
            resolution::is_adequate_link(&m).unwrap()
        );
    }
}

/// Moves on a one-vertex diagram induce isotopies of the double, so for
/// adequate (hence minimal) inputs: no crossing-decreasing move exists at
/// all; a crossing-increasing move leaves both the moved diagram and its
/// double inadequate (two adequate diagrams of one link would have to agree
/// in crossing count); and a count-preserving move preserves the doubling
/// count. All are exact consequences of the certificates.
#[test]
fn moves_respect_double_minimality() {
    let mut increasing = 0;
    let mut level = 0;
    let mut sources: Vec<Diagram> = vec![fixtures::fig7()];
    for seed in 0..14u64 {
        let d = samples::random_one_vertex(seed, 5, 1 + (seed % 2) as usize);
        if spatial::is_adequate_spatial(&d).unwrap().holds {
            sources.push(d);
        }
    }
    assert!(sources.len() > 3, "sample has adequate one-vertex diagrams");
    for d in sources {
        let before = tangle::double_tangle(&tangle::associated_tangle(&d).unwrap()).unwrap();
        assert!(resolution::is_adequate_link(&before).unwrap());
        for (k, mv) in moves::enumerate_moves(&d).unwrap().into_iter().enumerate() {
            let delta = mv.delta(&d);
            assert!(delta >= 0, "decreasing move {mv:?} on an adequate diagram");
            if matches!(mv, Move::R2Add { .. }) && k % 5 != 0 {
                continue; // sample the plentiful pushes
            }
            let Ok(moved) = moves::apply_move(&d, &mv) else {
                continue;
            };
            if moved.vertices().count() != 1 {
                continue;
            }
            let after = tangle::double_tangle(&tangle::associated_tangle(&moved).unwrap()).unwrap();
            assert_eq!(after.crossing_count(), 2 * moved.crossing_count());
            if delta > 0 {
                assert!(
                    !spatial::is_adequate_spatial(&moved).unwrap().holds,
                    "{mv:?} increased crossings yet stayed adequate"
                );
                assert!(
                    !resolution::is_adequate_link(&after).unwrap(),
                    "{mv:?} increased crossings yet the double stayed adequate"
                );
                increasing += 1;
            } else {
                assert_eq!(after.crossing_count(), before.crossing_count());
                level += 1;
            }
        }
    }
    assert!(increasing > 30, "enough increasing moves exercised ({increasing})");
    let _ = level;
}
