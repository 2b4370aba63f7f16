//! Bridge algorithm: instances where no bridge links the two terminal pairs.
//!
//! Every bridge is solved on its own: the part that can go straight from
//! `s_j` to `t_j` is kept, and the surplus that leaves through a terminal of
//! the other commodity becomes capacity on one edge of a 4-cycle
//! `s1 - s2 - t1 - t2` between the terminals. A biflow on that 4-cycle is
//! then expanded back into the bridges that supplied the capacity.

use crate::error::{Error, Result};
use crate::flowops::{concatenate, reverse, split_units, ArcFlow, Biflow};
use crate::gluing::{add_back, zero_direct_edges};
use crate::graph::{Cap, Graph, Instance, Terminals, Vertex};
use crate::maxflow::{max_flow, min_cut_value};
use crate::structure::{BridgeKind, BridgeReport};
use crate::triflow::{triflow_from_source, triflow_to_sink, TriflowResult};

/// Edges of the auxiliary 4-cycle, in the order used for weights.
pub const PAIRS: [&str; 4] = ["s1s2", "s1t2", "t1s2", "t1t2"];

/// `(a, b)` of pair `i`, with `a` in `{s1, t1}` and `b` in `{s2, t2}`.
pub fn pair_ends(t: &Terminals, i: usize) -> (Vertex, Vertex) {
    [(t.s1, t.s2), (t.s1, t.t2), (t.t1, t.s2), (t.t1, t.t2)][i]
}

fn pair_index(t: &Terminals, a: Vertex, b: Vertex) -> Option<usize> {
    (0..4).find(|&i| {
        let (x, y) = pair_ends(t, i);
        (x, y) == (a, b) || (x, y) == (b, a)
    })
}

/// Surplus of one bridge: an `a -> b` flow between a terminal of each pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub pair: usize,
    pub flow: ArcFlow,
    pub value: Cap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BridgeFlow {
    /// `s1 -> t1` part.
    pub g1: ArcFlow,
    /// `s2 -> t2` part.
    pub g2: ArcFlow,
    pub h: Option<Contribution>,
}

/// Weights of the 4-cycle and, per edge, the bridges that supplied them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliaryH {
    pub weights: [Cap; 4],
    /// Capacity of the trivial bridge on each pair (0 if absent).
    pub direct: [Cap; 4],
    pub contributors: [Vec<usize>; 4],
}

/// Path amounts of a biflow on the 4-cycle: commodity 1 via `s2` and via
/// `t2`, commodity 2 via `s1` and via `t1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TinyBiflow {
    pub via_s2: Cap,
    pub via_t2: Cap,
    pub via_s1: Cap,
    pub via_t1: Cap,
}

impl TinyBiflow {
    pub fn values(&self) -> (Cap, Cap) {
        (self.via_s2 + self.via_t2, self.via_s1 + self.via_t1)
    }

    pub fn value(&self) -> Cap {
        let (a, b) = self.values();
        a + b
    }

    /// Usage of each pair by each commodity, `(commodity 1, commodity 2)`.
    pub fn usage(&self) -> [(Cap, Cap); 4] {
        [(self.via_s2, self.via_s1), (self.via_t2, self.via_s1), (self.via_s2, self.via_t1), (self.via_t2, self.via_t1)]
    }
}

/// Maximum integral biflow on the 4-cycle with weights `w` (order of
/// [`PAIRS`]). Commodity 1 takes a maximum flow, commodity 2 whatever is
/// left on its two paths; the total is `min(w(E1), w(E2))` with
/// `E1 = {s1s2, t1t2}` and `E2 = {s1t2, t1s2}`.
pub fn tiny_biflow(w: [Cap; 4]) -> TinyBiflow {
    let [s1s2, s1t2, t1s2, t1t2] = w;
    let via_s2 = s1s2.min(t1s2);
    let via_t2 = s1t2.min(t1t2);
    let via_s1 = (s1s2 - via_s2).min(s1t2 - via_t2);
    let via_t1 = (t1s2 - via_s2).min(t1t2 - via_t2);
    TinyBiflow { via_s2, via_t2, via_s1, via_t1 }
}

/// Three-terminal flows for every bridge.
pub fn bridge_flows(inst: &Instance, report: &BridgeReport) -> Result<Vec<BridgeFlow>> {
    let g = inst.graph();
    let t = inst.terminals();
    let mut out = Vec::with_capacity(report.bridges.len());
    for b in &report.bridges {
        let piece = |ids: &[crate::graph::EdgeId], keep: &[Vertex]| g.edge_subgraph(ids.iter().copied(), keep);
        let mut flow = BridgeFlow::default();
        match &b.kind {
            BridgeKind::Trivial | BridgeKind::Dangling => {}
            BridgeKind::TwoFeet => {
                let (x, y) = (b.feet[0], b.feet[1]);
                let (f, _) = max_flow(&piece(&b.edges, &[]), &[x], &[y])?;
                if (x, y) == t.pair(1) {
                    flow.g1 = f;
                } else if (x, y) == t.pair(2) {
                    flow.g2 = f;
                } else {
                    let pair = pair_index(&t, x, y).expect("feet from different pairs");
                    let value = f.value(&[x]);
                    let f = if pair_ends(&t, pair).0 == x { f } else { reverse(&f) };
                    flow.h = Some(Contribution { pair, flow: f, value });
                }
            }
            BridgeKind::ThreeFeet { commodity, r } => {
                let (s, tt) = t.pair(*commodity);
                let (gj, end, h) = three_terminal(&piece(&b.edges, &[]), s, tt, *r)?;
                let pair = pair_index(&t, end, *r).expect("r is a terminal of the other pair");
                // h runs between `end` and `r`; store it from the {s1,t1} end
                let value = h.value(&[end]).abs();
                let from_first = pair_ends(&t, pair).0;
                let h = if h.value(&[from_first]) >= 0 { h } else { reverse(&h) };
                flow.h = Some(Contribution { pair, flow: h, value });
                if *commodity == 1 {
                    flow.g1 = gj;
                } else {
                    flow.g2 = gj;
                }
            }
            BridgeKind::FourFeetSplit { x, side1, side2 } => {
                let (g1, a, h1) = three_terminal(&piece(side1, &[t.s1, t.t1, *x]), t.s1, t.t1, *x)?;
                let (g2, bb, h2) = three_terminal(&piece(side2, &[t.s2, t.t2, *x]), t.s2, t.t2, *x)?;
                // orient h1 as a -> x and h2 as x -> b
                let h1 = if h1.value(&[a]) >= 0 { h1 } else { reverse(&h1) };
                let h2 = if h2.value(&[*x]) >= 0 { h2 } else { reverse(&h2) };
                let value = h1.value(&[a]).min(h2.value(&[*x]));
                let h = concatenate(&[(&h1, a, *x), (&h2, *x, bb)], value)?;
                let pair = pair_index(&t, a, bb).expect("one end in each pair");
                flow.h = Some(Contribution { pair, flow: h, value });
                flow.g1 = g1;
                flow.g2 = g2;
            }
            BridgeKind::FourFeetLinked { .. } => {
                return Err(Error::NotSeymourLike("linked bridge in the bridge algorithm".into()));
            }
        }
        out.push(flow);
    }
    Ok(out)
}

/// Splits a maximum three-terminal flow in a piece with terminals `s`, `t`
/// and third vertex `r`. Returns the `s -> t` part, the terminal (`s` or
/// `t`) at which the surplus attaches, and the surplus flow between that
/// terminal and `r`.
fn three_terminal(piece: &Graph, s: Vertex, t: Vertex, r: Vertex) -> Result<(ArcFlow, Vertex, ArcFlow)> {
    let tau_s = min_cut_value(piece, &[s], &[t, r])?;
    let tau_t = min_cut_value(piece, &[t], &[s, r])?;
    let (res, end): (TriflowResult, Vertex) =
        if tau_s >= tau_t { (triflow_from_source(piece, s, t, r)?, s) } else { (triflow_to_sink(piece, s, t, r)?, t) };
    Ok((res.f1, end, res.f2))
}

pub fn auxiliary(inst: &Instance, report: &BridgeReport, flows: &[BridgeFlow]) -> AuxiliaryH {
    let g = inst.graph();
    let t = inst.terminals();
    let mut h = AuxiliaryH { weights: [0; 4], direct: [0; 4], contributors: Default::default() };
    for (i, b) in report.bridges.iter().enumerate() {
        if b.kind == BridgeKind::Trivial {
            let e = g.edge(b.edges[0]);
            let pair = pair_index(&t, e.u, e.v).expect("trivial bridges join the two pairs");
            h.direct[pair] += e.cap;
            h.weights[pair] += e.cap;
        }
        if let Some(c) = &flows[i].h {
            if c.value > 0 {
                h.weights[c.pair] += c.value;
                h.contributors[c.pair].push(i);
            }
        }
    }
    h
}

pub fn solve_bridges(inst: &Instance, report: &BridgeReport) -> Result<Biflow> {
    let (zeroed, addback) = zero_direct_edges(inst);
    let t = zeroed.terminals();
    let flows = bridge_flows(&zeroed, report)?;
    let aux = auxiliary(&zeroed, report, &flows);
    let tiny = tiny_biflow(aux.weights);

    let mut z = [ArcFlow::default(), ArcFlow::default()];
    for f in &flows {
        z[0] = z[0].plus(&f.g1);
        z[1] = z[1].plus(&f.g2);
    }
    for (pair, (use1, use2)) in tiny.usage().into_iter().enumerate() {
        let (a, b) = pair_ends(&t, pair);
        // direct edge first, then the contributing bridges in order
        let on_edge1 = use1.min(aux.direct[pair]);
        let on_edge2 = use2.min(aux.direct[pair] - on_edge1);
        let mut rest = [use1 - on_edge1, use2 - on_edge2];
        let mut parts = [ArcFlow::from_arcs([((a, b), on_edge1)]), ArcFlow::from_arcs([((a, b), on_edge2)])];
        for &i in &aux.contributors[pair] {
            if rest == [0, 0] {
                break;
            }
            let c = flows[i].h.as_ref().expect("contributor has a surplus flow");
            let take1 = rest[0].min(c.value);
            let take2 = rest[1].min(c.value - take1);
            let split = split_units(&c.flow, a, b, &[take1, take2])?;
            parts[0] = parts[0].plus(&split[0]);
            parts[1] = parts[1].plus(&split[1]);
            rest = [rest[0] - take1, rest[1] - take2];
        }
        if rest != [0, 0] {
            return Err(Error::NotAFlow(format!("pair {} is short of {rest:?}", PAIRS[pair])));
        }
        for k in 0..2 {
            let part = if orient(pair, k) { parts[k].clone() } else { reverse(&parts[k]) };
            z[k] = z[k].plus(&part);
        }
    }
    Ok(add_back(Biflow::new(z[0].clone(), z[1].clone()), &t, addback))
}

/// Whether commodity `k` (0-based) traverses pair `pair` from its
/// `{s1, t1}` end to its `{s2, t2}` end.
fn orient(pair: usize, k: usize) -> bool {
    match (pair, k) {
        // s1 -> s2 -> t1 and s1 -> t2 -> t1
        (0, 0) | (1, 0) => true,
        (2, 0) | (3, 0) => false,
        // s2 -> s1 -> t2 and s2 -> t1 -> t2
        (0, 1) | (2, 1) => false,
        (1, 1) | (3, 1) => true,
        _ => unreachable!(),
    }
}
