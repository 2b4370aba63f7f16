//! Bridges relative to `M = {e1, e2}` and their classification.

use std::collections::HashSet;

use crate::flowops::decompose;
use crate::graph::{connected_components, cut_vertices, EdgeId, Graph, Instance, Terminals, Vertex};
use crate::maxflow::{solve_network, ArcNetwork};

/// A bridge before classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MBridge {
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Non-terminal vertices; empty for a trivial bridge.
    pub interior: Vec<Vertex>,
    /// Terminals touched, in the order `s1, t1, s2, t2`.
    pub feet: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BridgeKind {
    /// A single edge between `{s1, t1}` and `{s2, t2}`.
    Trivial,
    /// Feet `{s_j, t_j, r}` where `r` belongs to the other commodity.
    ThreeFeet { commodity: usize, r: Vertex },
    /// Removing `x` separates `{s1, t1}` from `{s2, t2}` inside the bridge;
    /// `side1` holds the edges on the `{s1, t1}` side.
    FourFeetSplit { x: Vertex, side1: Vec<EdgeId>, side2: Vec<EdgeId> },
    /// Two vertex-disjoint paths from `{s1, t1}` to `{s2, t2}`; `q1` starts
    /// at `s1`, `q2` at `t1`.
    FourFeetLinked { q1: Vec<Vertex>, q2: Vec<Vertex> },
    /// Exactly two feet.
    TwoFeet,
    /// At most one foot. Cannot occur in a 2-connected instance.
    Dangling,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    pub edges: Vec<EdgeId>,
    pub interior: Vec<Vertex>,
    pub feet: Vec<Vertex>,
    pub kind: BridgeKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BridgeReport {
    pub bridges: Vec<Bridge>,
}

impl BridgeReport {
    pub fn linked(&self) -> impl Iterator<Item = &Bridge> {
        self.bridges.iter().filter(|b| matches!(b.kind, BridgeKind::FourFeetLinked { .. }))
    }

    /// Short one-line-per-bridge description.
    pub fn summary(&self) -> Vec<String> {
        self.bridges
            .iter()
            .map(|b| {
                let kind = match &b.kind {
                    BridgeKind::Trivial => "trivial".to_string(),
                    BridgeKind::ThreeFeet { r, .. } => format!("three-feet r={r}"),
                    BridgeKind::FourFeetSplit { x, .. } => format!("four-feet split x={x}"),
                    BridgeKind::FourFeetLinked { .. } => "four-feet linked".to_string(),
                    BridgeKind::TwoFeet => "two-feet".to_string(),
                    BridgeKind::Dangling => "dangling".to_string(),
                };
                format!("{kind} edges={} interior={}", b.edges.len(), b.interior.len())
            })
            .collect()
    }
}

/// Trivial bridges (one per terminal-terminal edge other than `e1`, `e2`)
/// followed by one bridge per component of `G - {s1, t1, s2, t2}`.
pub fn m_bridges(inst: &Instance) -> Vec<MBridge> {
    let g = inst.graph();
    let t = inst.terminals();
    let terms: HashSet<Vertex> = t.all().into_iter().collect();
    let mut out = Vec::new();
    for (id, e) in g.edges() {
        if !inst.is_direct(id) && terms.contains(&e.u) && terms.contains(&e.v) {
            out.push(MBridge { edges: vec![id], interior: Vec::new(), feet: feet_in_order(&t, &[e.u, e.v]) });
        }
    }
    for comp in connected_components(g, &terms) {
        let inside: HashSet<Vertex> = comp.iter().copied().collect();
        let mut edges = Vec::new();
        let mut touched = Vec::new();
        for &x in &comp {
            for (y, id) in g.neighbors(x) {
                if inside.contains(&y) {
                    if x < y {
                        edges.push(id);
                    }
                } else {
                    edges.push(id);
                    touched.push(y);
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        out.push(MBridge { edges, interior: comp, feet: feet_in_order(&t, &touched) });
    }
    out
}

fn feet_in_order(t: &Terminals, touched: &[Vertex]) -> Vec<Vertex> {
    t.all().into_iter().filter(|x| touched.contains(x)).collect()
}

pub fn classify_bridges(inst: &Instance) -> BridgeReport {
    let g = inst.graph();
    let t = inst.terminals();
    let bridges = m_bridges(inst)
        .into_iter()
        .map(|b| {
            let kind = classify(g, &t, &b);
            Bridge { edges: b.edges, interior: b.interior, feet: b.feet, kind }
        })
        .collect();
    BridgeReport { bridges }
}

fn classify(g: &Graph, t: &Terminals, b: &MBridge) -> BridgeKind {
    if b.interior.is_empty() {
        return BridgeKind::Trivial;
    }
    match b.feet.len() {
        0 | 1 => BridgeKind::Dangling,
        2 => BridgeKind::TwoFeet,
        3 => {
            let commodity = if b.feet.contains(&t.s1) && b.feet.contains(&t.t1) { 1 } else { 2 };
            let (s, tt) = t.pair(commodity);
            let r = *b.feet.iter().find(|&&x| x != s && x != tt).expect("three feet");
            BridgeKind::ThreeFeet { commodity, r }
        }
        _ => {
            let h = g.edge_subgraph(b.edges.iter().copied(), &[]);
            if let Some((q1, q2)) = disjoint_paths(&h, t) {
                return BridgeKind::FourFeetLinked { q1, q2 };
            }
            split(g, &h, t, b).expect("a four-footed bridge without two disjoint paths has a split vertex")
        }
    }
}

/// Two vertex-disjoint paths from `{s1, t1}` to `{s2, t2}` inside `h`, via
/// a unit vertex-capacity max flow on the split graph.
fn disjoint_paths(h: &Graph, t: &Terminals) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let vs = h.vertices();
    let pos = |x: Vertex| h.position(x).expect("terminal in bridge");
    let vin = |i: usize| Vertex(2 * i as u32);
    let vout = |i: usize| Vertex(2 * i as u32 + 1);
    let mut net = ArcNetwork::new();
    for i in 0..vs.len() {
        net.add_pair(vin(i), vout(i), 1, 0);
    }
    for (_, e) in h.edges() {
        let (a, b) = (pos(e.u), pos(e.v));
        net.add_pair(vout(a), vin(b), 1, 0);
        net.add_pair(vout(b), vin(a), 1, 0);
    }
    let sources = [vin(pos(t.s1)), vin(pos(t.t1))];
    let sinks = [vout(pos(t.s2)), vout(pos(t.t2))];
    let out = solve_network(
        &net,
        &[(sources[0], Some(1)), (sources[1], Some(1))],
        &[(sinks[0], Some(1)), (sinks[1], Some(1))],
    )
    .expect("split network is well formed");
    if out.value < 2 {
        return None;
    }
    let d = decompose(&out.flow, &sources, &sinks).expect("max flow decomposes");
    let mut paths: Vec<Vec<Vertex>> = d
        .entries
        .iter()
        .map(|e| {
            let mut p: Vec<Vertex> = e.path.iter().map(|x| vs[(x.0 / 2) as usize]).collect();
            p.dedup();
            p
        })
        .collect();
    paths.sort_by_key(|p| p[0] != t.s1);
    let q2 = paths.pop().expect("two paths");
    let q1 = paths.pop().expect("two paths");
    Some((q1, q2))
}

fn split(g: &Graph, h: &Graph, t: &Terminals, b: &MBridge) -> Option<BridgeKind> {
    let interior: HashSet<Vertex> = b.interior.iter().copied().collect();
    for x in cut_vertices(h) {
        if !interior.contains(&x) {
            continue;
        }
        let removed: HashSet<Vertex> = [x].into_iter().collect();
        let mut side1: HashSet<Vertex> = HashSet::new();
        let mut ok = true;
        for comp in connected_components(h, &removed) {
            let has1 = comp.contains(&t.s1) || comp.contains(&t.t1);
            let has2 = comp.contains(&t.s2) || comp.contains(&t.t2);
            if has1 && has2 {
                ok = false;
                break;
            }
            if has1 {
                side1.extend(comp);
            }
        }
        if !ok {
            continue;
        }
        let (mut e1, mut e2) = (Vec::new(), Vec::new());
        for &id in &b.edges {
            let e = g.edge(id);
            if side1.contains(&e.u) || side1.contains(&e.v) {
                e1.push(id);
            } else {
                e2.push(id);
            }
        }
        return Some(BridgeKind::FourFeetSplit { x, side1: e1, side2: e2 });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Cap;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    // s1=0 t1=1 s2=2 t2=3
    fn instance(edges: &[(u32, u32, Cap)]) -> Instance {
        let mut g = Graph::new();
        for &(a, b, c) in edges {
            g.add_edge(v(a), v(b), c).unwrap();
        }
        Instance::new(g, Terminals::new(v(0), v(1), v(2), v(3))).unwrap()
    }

    fn kinds(inst: &Instance) -> Vec<BridgeKind> {
        classify_bridges(inst).bridges.into_iter().map(|b| b.kind).collect()
    }

    #[test]
    fn three_feet() {
        let inst = instance(&[(4, 0, 1), (4, 1, 1), (4, 2, 1)]);
        assert_eq!(kinds(&inst), vec![BridgeKind::ThreeFeet { commodity: 1, r: v(2) }]);
        let report = classify_bridges(&inst);
        assert_eq!(report.bridges[0].feet, vec![v(0), v(1), v(2)]);
        assert_eq!(report.bridges[0].edges.len(), 3);
    }

    #[test]
    fn star_splits_at_its_centre() {
        let inst = instance(&[(4, 0, 1), (4, 1, 1), (4, 2, 1), (4, 3, 1)]);
        match &kinds(&inst)[..] {
            [BridgeKind::FourFeetSplit { x, side1, side2 }] => {
                assert_eq!(*x, v(4));
                assert_eq!((side1.len(), side2.len()), (2, 2));
                // the split vertex disconnects the pairs inside the bridge
                let h = inst.graph().edge_subgraph(side1.iter().chain(side2.iter()).copied(), &[]);
                let comps = connected_components(&h, &[*x].into_iter().collect());
                for c in comps {
                    assert!(!(c.contains(&v(0)) && c.contains(&v(2))));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ladder_is_linked() {
        // s1 - 4 - s2 and t1 - 5 - t2 joined by the rung 4-5
        let inst = instance(&[(0, 4, 1), (4, 2, 1), (1, 5, 1), (5, 3, 1), (4, 5, 1)]);
        match &kinds(&inst)[..] {
            [BridgeKind::FourFeetLinked { q1, q2 }] => {
                assert_eq!(q1, &vec![v(0), v(4), v(2)]);
                assert_eq!(q2, &vec![v(1), v(5), v(3)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_two_feet_and_dangling() {
        let inst = instance(&[(0, 2, 1), (0, 1, 3), (4, 0, 1), (4, 1, 1), (5, 3, 1)]);
        assert_eq!(kinds(&inst), vec![BridgeKind::Trivial, BridgeKind::TwoFeet, BridgeKind::Dangling]);
        assert!(m_bridges(&inst).iter().all(|b| !b.edges.contains(&inst.e1())));
    }
}
