//! Built-in diagrams: the standard small links and the spatial-graph
//! examples exercised throughout the test suite and the CLI.
//!
//! Every fixture passes validation; frozen digests guard against accidental
//! edits (see `tests/fixture_digests.rs`).

use std::collections::BTreeMap;

use crate::diagram::{DartId, Diagram, Node, NodeId, OverPair};
use crate::samples::{braid_closure, make_alternating, Builder};

/// Zero-crossing unknot: one free loop.
pub fn unknot0() -> Diagram {
    Diagram::unknots(1)
}

/// Positive kink: one crossing, loop arc between slots 1 and 2.
pub fn kink1() -> Diagram {
    let mut b = Builder::new();
    let [r0, r1, r2, r3] = b.crossing(OverPair::Axis02);
    b.join(r1, r2);
    b.join(r3, r0);
    b.build()
}

/// Standard alternating Hopf link (2 crossings).
pub fn hopf2() -> Diagram {
    braid_closure(2, &[0, 0])
}

/// Standard alternating trefoil (3 crossings).
pub fn trefoil3() -> Diagram {
    braid_closure(2, &[0, 0, 0])
}

/// Figure-eight knot: alternating 4-crossing diagram.
pub fn fig8_4() -> Diagram {
    make_alternating(&braid_closure(3, &[0, 1, 0, 1]))
}

/// Planar theta graph: two trivalent vertices joined by three uncrossed edges.
pub fn theta() -> Diagram {
    let mut b = Builder::new();
    let (_, u) = b.vertex(3, false);
    let (_, w) = b.vertex(3, false);
    b.join(u[0], w[0]);
    b.join(u[1], w[2]);
    b.join(u[2], w[1]);
    b.build()
}

/// Horizontal chain of twist crossings, used by several fixtures.
///
/// Returns the crossings' darts; crossing `i` has rotation `[NE, NW, SW, SE]`
/// and is chained to crossing `i+1` by `NE_i - NW_{i+1}` and `SE_i - SW_{i+1}`.
/// The four loose ends are `(NW_0, SW_0, NE_last, SE_last)`.
fn twist_chain(b: &mut Builder, overs: &[OverPair]) -> (DartId, DartId, DartId, DartId) {
    let mut first = None;
    let mut prev: Option<[DartId; 4]> = None;
    for &over in overs {
        let darts = b.crossing(over);
        if let Some(p) = prev {
            b.join(p[0], darts[1]); // NE - NW
            b.join(p[3], darts[2]); // SE - SW
        } else {
            first = Some(darts);
        }
        prev = Some(darts);
    }
    let f = first.expect("chain is nonempty");
    let l = prev.unwrap();
    (f[1], f[2], l[0], l[3])
}

/// One-vertex diagram whose tangle is a three-crossing twist region; the
/// smoothing joining the wrap-around legs is not reduced (it caps the chain
/// into curls), and an untwist move at the vertex removes a crossing.
pub fn fig4l() -> Diagram {
    let mut b = Builder::new();
    let (_, v) = b.vertex(4, false);
    let (nw, sw, ne, se) = twist_chain(
        &mut b,
        &[OverPair::Axis02, OverPair::Axis02, OverPair::Axis02],
    );
    // v rotation counterclockwise: chain upper-left, top wrap, bottom wrap,
    // chain lower-left
    b.join(v[0], nw);
    b.join(v[1], ne);
    b.join(v[2], se);
    b.join(v[3], sw);
    b.build()
}

/// One-vertex diagram with a three-crossing two-string tangle (the twist
/// signs differ from [`fig4l`]).
pub fn fig5g() -> Diagram {
    let mut b = Builder::new();
    let (_, v) = b.vertex(4, false);
    let (nw, sw, ne, se) = twist_chain(
        &mut b,
        &[OverPair::Axis02, OverPair::Axis13, OverPair::Axis02],
    );
    b.join(v[0], nw);
    b.join(v[1], ne);
    b.join(v[2], se);
    b.join(v[3], sw);
    b.build()
}

/// A diagram of the same spatial graph as [`fig5g`], obtained from it by a
/// twist move at the vertex followed by a strand push; it has two crossings
/// more.
pub fn fig5g_prime() -> Diagram {
    use crate::moves::{apply_move, enumerate_moves, Move};
    let g = fig5g();
    let twist = enumerate_moves(&g)
        .expect("valid fixture")
        .into_iter()
        .find(|m| matches!(m, Move::R5Add { .. }))
        .expect("vertex twist available");
    apply_move(&g, &twist).expect("twist applies")
}

/// Builds an open trefoil string: the standard trefoil with one arc removed.
/// Returns `(over_stub, under_stub)`: the dangling partner darts whose first
/// crossing passage is over resp. under.
fn open_trefoil(b: &mut Builder) -> (DartId, DartId) {
    let mut darts: Vec<[DartId; 4]> = Vec::new();
    for _ in 0..3 {
        darts.push(b.crossing(OverPair::Axis02));
    }
    // rotation [NE, NW, SW, SE]; closure pairs SW_i - NW_{i+1}, SE_i - NE_{i+1}
    for i in 0..3 {
        let j = (i + 1) % 3;
        if !(i == 2) {
            b.join(darts[i][2], darts[j][1]);
        }
        b.join(darts[i][3], darts[j][0]);
    }
    // cut arc {SW_2, NW_0}: entering SW_2 is an over passage, NW_0 under
    (darts[2][2], darts[0][1])
}

/// One-vertex diagram, vertex valence 6: two open trefoil strings and one
/// uncrossed loop edge E. Deleting E leaves a diagram every smoothing of
/// which is reduced and alternating, while some smoothing of the full
/// diagram is not alternating.
pub fn fig7() -> Diagram {
    let mut b = Builder::new();
    let (_, v) = b.vertex(6, false);
    let (a_over, a_under) = open_trefoil(&mut b);
    let (b_over, b_under) = open_trefoil(&mut b);
    b.join(v[0], a_over);
    b.join(v[1], a_under);
    b.join(v[2], v[5]); // the uncrossed edge E
    b.join(v[3], b_over);
    b.join(v[4], b_under);
    b.build()
}

/// The edge id of fig7's uncrossed edge E.
pub fn fig7_uncrossed_edge() -> DartId {
    let d = fig7();
    d.strands()
        .into_iter()
        .find(|s| s.is_edge() && s.is_uncrossed())
        .map(|s| s.id)
        .expect("fig7 has an uncrossed edge")
}

/// Theta-graph with one crossing between two of its edges. The third edge is
/// bounded by the two faces opposite at the crossing, so a circle meeting the
/// diagram in exactly that crossing and one point of the edge exists.
pub fn fig9adams() -> Diagram {
    let mut b = Builder::new();
    let (_, u) = b.vertex(3, true);
    let (_, w) = b.vertex(3, true);
    // z rotation counterclockwise: [c-to-w, b-from-u, c-from-u, b-to-w]
    let [z0, z1, z2, z3] = b.crossing(OverPair::Axis13);
    // u: [a, c, b] counterclockwise; w: [a, c, b]
    b.join(u[0], w[0]); // edge a, uncrossed
    b.join(u[2], z1);
    b.join(z3, w[2]); // edge b through z
    b.join(u[1], z2);
    b.join(z0, w[1]); // edge c through z
    b.build()
}

/// Rigid-vertex spatial graph with two valence-5 vertices, one uncrossed
/// edge and two clasps; reduced and alternating in the rigid-vertex sense,
/// with no uncrossed cycle and no circle through one crossing and one edge.
pub fn fig10() -> Diagram {
    fig10_with(OverPair::Axis13, OverPair::Axis13, OverPair::Axis13, OverPair::Axis13)
}

/// A diagram differing from [`fig10`] by turning over one clasp, which makes
/// two consecutive first crossings along the neighbourhood boundary agree.
pub fn fig11step2() -> Diagram {
    fig10_with(OverPair::Axis02, OverPair::Axis02, OverPair::Axis13, OverPair::Axis13)
}

fn fig10_with(x1o: OverPair, x2o: OverPair, y1o: OverPair, y2o: OverPair) -> Diagram {
    let mut b = Builder::new();
    let (_, u) = b.vertex(5, true);
    let (_, w) = b.vertex(5, true);
    // clasp crossings, rotation [to-east-upper, from-west-upper, from-west-lower, to-east-lower]
    let [x1a, x1b, x1c, x1d] = b.crossing(x1o);
    let [x2a, x2b, x2c, x2d] = b.crossing(x2o);
    let [y1a, y1b, y1c, y1d] = b.crossing(y1o);
    let [y2a, y2b, y2c, y2d] = b.crossing(y2o);

    // u rotation counterclockwise: [e0, e4, e3, e2, e1];
    // w rotation counterclockwise: [e0, e1, e2, e3, e4].
    b.join(u[0], w[0]); // e0 uncrossed
    b.join(u[4], x1b); // e1 upper into clasp 1
    b.join(u[3], x1c); // e2 lower into clasp 1
    b.join(u[2], y1b); // e3 upper into clasp 2
    b.join(u[1], y1c); // e4 lower into clasp 2
    // clasp interiors
    b.join(x1d, x2c); // e1 between the crossings (lower)
    b.join(x1a, x2b); // e2 between the crossings (upper)
    b.join(y1d, y2c);
    b.join(y1a, y2b);
    // clasp exits to w: e1 leaves x2 upper, e2 lower
    b.join(x2a, w[1]); // e1 at w
    b.join(x2d, w[2]); // e2 at w
    b.join(y2a, w[3]); // e3 at w
    b.join(y2d, w[4]); // e4 at w
    b.build()
}

/// Five-crossing theta-curve whose three constituent knots are all trivial
/// yet which no move sequence reduces below five crossings.
///
/// Frozen from an exhaustive enumeration of five-crossing diagrams on two
/// trivalent vertices: up to mirror image this is the only one that deep
/// move search cannot reduce and whose constituents are all unknots (see
/// `tests/theta_derivation.rs`).
pub fn kinoshita5() -> Diagram {
    let json = r#"{"freeLoops":0,"nodes":[
        {"id":0,"kind":"crossing","over":[0,2],"rotation":[0,1,2,3]},
        {"id":1,"kind":"crossing","over":[1,3],"rotation":[4,8,9,10]},
        {"id":2,"kind":"crossing","over":[0,2],"rotation":[5,11,12,6]},
        {"id":3,"kind":"crossing","over":[0,2],"rotation":[7,13,14,15]},
        {"id":4,"kind":"crossing","over":[0,2],"rotation":[16,21,22,23]},
        {"id":5,"kind":"vertex","rigid":false,"rotation":[18,17,24]},
        {"id":6,"kind":"vertex","rigid":false,"rotation":[25,20,19]}],
        "pairing":[[0,4],[1,5],[2,6],[3,7],[8,15],[9,16],[10,17],[11,18],
                   [12,19],[13,20],[14,21],[22,25],[23,24]]}"#;
    crate::codec::parse_diagram(json).expect("frozen fixture parses")
}

/// Fragment for framework tests: a plain edge between two valence-1
/// attachment vertices with a disjoint trefoil beside it.
pub fn orange_fragment() -> Diagram {
    fragment_edge_with(trefoil3())
}

/// Fragment: plain edge plus a disjoint Hopf link.
pub fn red_fragment() -> Diagram {
    fragment_edge_with(hopf2())
}

fn fragment_edge_with(link: Diagram) -> Diagram {
    let mut b = Builder::new();
    let (_, p) = b.vertex(1, false);
    let (_, q) = b.vertex(1, false);
    b.join(p[0], q[0]);
    let base = b.build();
    merge_disjoint(base, link)
}

/// Fragment: an inadequate one-crossing kink beside a plain edge. Used to
/// exercise framework refusals.
pub fn kink_fragment() -> Diagram {
    fragment_edge_with(kink1())
}

fn merge_disjoint(mut base: Diagram, other: Diagram) -> Diagram {
    let (node_off, dart_off) = base.next_ids();
    for n in other.nodes.values() {
        let id = NodeId(n.id.0 + node_off);
        base.nodes.insert(
            id,
            Node {
                id,
                kind: n.kind.clone(),
                rotation: n.rotation.iter().map(|d| DartId(d.0 + dart_off)).collect(),
            },
        );
    }
    for (a, bd) in other.pairing {
        base.pairing
            .insert(DartId(a.0 + dart_off), DartId(bd.0 + dart_off));
    }
    base.free_loops += other.free_loops;
    base
}

/// Complete graph on six vertices drawn cylindrically with three crossings.
/// The three outer vertices are the attachment points.
pub fn k6three() -> (Diagram, [NodeId; 3]) {
    let mut b = Builder::new();
    // inner u1,u2,u3: rotation [w_{i-1}-spoke, w_i-spoke, w_{i+1}-spoke, u_{i+1}-edge, u_{i-1}-edge]
    let (u1, u1d) = b.vertex(5, false);
    let (u2, u2d) = b.vertex(5, false);
    let (u3, u3d) = b.vertex(5, false);
    // outer w1,w2,w3: rotation [w_{i+1}-edge? ...] see below
    let (w1, w1d) = b.vertex(5, false);
    let (w2, w2d) = b.vertex(5, false);
    let (w3, w3d) = b.vertex(5, false);
    let _ = (u1, u2, u3);
    let u = [u1d, u2d, u3d];
    let w = [w1d, w2d, w3d];
    // crossings c_i: (u_i -> w_{i+1}) x (u_{i+1} -> w_i)
    // rotation counterclockwise: [to-u_i, to-w_i, to-w_{i+1}, to-u_{i+1}]
    let c: Vec<[DartId; 4]> = (0..3).map(|_| b.crossing(OverPair::Axis02)).collect();

    // w_i rotation (counterclockwise, starting after the outward direction):
    // [w_{i+1}-edge, u_{i+1}-spoke, u_i-radial, u_{i-1}-spoke, w_{i-1}-edge]
    for i in 0..3 {
        let j = (i + 1) % 3;
        // inner triangle edges u_i - u_j: u slot 3 to next's slot 4
        b.join(u[i][3], u[j][4]);
        // outer triangle edges w_i - w_j
        b.join(w[i][0], w[j][4]);
        // radial spokes u_i - w_i
        b.join(u[i][1], w[i][2]);
        // crossing c_i legs: (u_i -> w_{i+1}) crosses (u_{i+1} -> w_i)
        b.join(c[i][0], u[i][2]); // u_i's counterclockwise spoke
        b.join(c[i][2], w[j][3]); // arrives at w_{i+1} as its u_i spoke
        b.join(c[i][3], u[j][0]); // u_{i+1}'s clockwise spoke
        b.join(c[i][1], w[i][1]); // arrives at w_i as its u_{i+1} spoke
    }
    (b.build(), [w1, w2, w3])
}

/// Planar framework of the composed example: six vertices, seven edges, no
/// crossings.
pub fn fig8_framework() -> Diagram {
    let mut b = Builder::new();
    let (_, a) = b.vertex(3, false); // A: [to B, to v1, to v2]
    let (_, bb) = b.vertex(2, false); // B: [to A, to v2]
    let (_, c) = b.vertex(2, false); // C: [to D, to v1]
    let (_, d) = b.vertex(2, false); // D: [to v2, to C]
    let (_, v1) = b.vertex(2, false); // v1: [to A, to C]
    let (_, v2) = b.vertex(3, false); // v2: [to B, to A, to D]
    b.join(a[0], bb[0]); // E1: A-B
    b.join(c[0], d[1]); // E2: C-D
    b.join(v1[0], a[1]);
    b.join(v1[1], c[1]);
    b.join(v2[0], bb[1]);
    b.join(v2[1], a[2]);
    b.join(v2[2], d[0]);
    b.build()
}

/// The framework composition example: trefoil and Hopf pieces beside two
/// edges, the five-crossing theta-curve replacing one vertex, the
/// three-crossing complete-graph embedding replacing the other.
pub fn fig8_composition() -> (crate::framework::PlanarFramework, Vec<crate::framework::Replacement>) {
    use crate::framework::{Evidence, PlanarFramework, Replacement, Target};
    let p = fig8_framework();
    let strands = p.strands();
    let edge_between = |x: u32, y: u32| {
        strands
            .iter()
            .find(|s| {
                let (a, b) = s.ends.expect("framework edges are open");
                let (u, _) = p.position(a);
                let (w, _) = p.position(b);
                (u.0, w.0) == (x, y) || (u.0, w.0) == (y, x)
            })
            .expect("edge exists")
            .id
    };
    // node ids in build order: A=0, B=1, C=2, D=3, v1=4, v2=5
    let e1 = edge_between(0, 1);
    let e2 = edge_between(2, 3);

    let orange = orange_fragment();
    let orange_marks: Vec<NodeId> = orange.vertices().map(|v| v.id).collect();
    let red = red_fragment();
    let red_marks: Vec<NodeId> = red.vertices().map(|v| v.id).collect();
    let kin = kinoshita5();
    let kin_marks: Vec<NodeId> = kin.vertices().map(|v| v.id).collect();
    let (k6, k6_marks) = k6three();

    let reps = vec![
        Replacement {
            target: Target::Edge(e1),
            fragment: orange,
            attachments: orange_marks,
            evidence: Some(Evidence::Adequate),
        },
        Replacement {
            target: Target::Edge(e2),
            fragment: red,
            attachments: red_marks,
            evidence: Some(Evidence::Adequate),
        },
        Replacement {
            target: Target::Vertex(NodeId(4)),
            fragment: kin,
            attachments: kin_marks,
            evidence: Some(Evidence::Asserted {
                citation: "Kinoshita's theta-curve has minimal crossing number five".into(),
            }),
        },
        Replacement {
            target: Target::Vertex(NodeId(5)),
            fragment: k6,
            attachments: k6_marks.to_vec(),
            evidence: Some(Evidence::Asserted {
                citation: "minimal-crossing spatial embedding of the complete graph on six vertices".into(),
            }),
        },
    ];
    (PlanarFramework::new(p).expect("framework is crossingless"), reps)
}

/// The composed diagram of [`fig8_composition`].
pub fn fig8_composed() -> Diagram {
    let (p, reps) = fig8_composition();
    crate::framework::compose(&p, &reps).expect("composition is valid")
}

/// All fixtures by name, in a stable order.
pub fn all() -> Vec<(&'static str, Diagram)> {
    vec![
        ("unknot0", unknot0()),
        ("kink1", kink1()),
        ("hopf2", hopf2()),
        ("trefoil3", trefoil3()),
        ("fig8-4", fig8_4()),
        ("theta", theta()),
        ("fig4L", fig4l()),
        ("fig5G", fig5g()),
        ("fig5G'", fig5g_prime()),
        ("fig7", fig7()),
        ("fig9adams", fig9adams()),
        ("fig10", fig10()),
        ("fig11step2", fig11step2()),
        ("kinoshita5", kinoshita5()),
        ("k6three", k6three().0),
        ("orange", orange_fragment()),
        ("red", red_fragment()),
        ("fig8-framework", fig8_framework()),
        ("fig8-composed", fig8_composed()),
    ]
}

/// Fixture lookup by name.
pub fn by_name(name: &str) -> Option<Diagram> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
}

/// Names and node/crossing counts, for the CLI listing.
pub fn catalog() -> BTreeMap<String, (usize, usize, u32)> {
    all()
        .into_iter()
        .map(|(name, d)| {
            (
                name.to_string(),
                (d.nodes.len(), d.crossing_count(), d.free_loops),
            )
        })
        .collect()
}
