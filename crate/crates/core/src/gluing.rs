//! Gluing algorithm: instances where `{s1, t1}` (and `{s2, t2}`) hang off a
//! central piece `G0` through pieces glued at `{s_j, t_j, u_j}` and
//! `{s_j, t_j, v_j}`.
//!
//! Each piece is solved by a three-terminal flow. If the two pieces of a
//! side agree on which of `s_j`, `t_j` behaves as the source, the surplus
//! of that side becomes extra capacity on `u_jv_j` for the other commodity.
//! Otherwise both sides send their surplus through `G0` as a prescribed
//! biflow between the glue vertices.

use crate::bicut::grouped_bicut;
use crate::error::{Error, Result};
use crate::flowops::{concatenate, decompose, reverse, splice, split_units, ArcFlow, Biflow};
use crate::graph::{Cap, EdgeId, Graph, Instance, Terminals, Vertex};
use crate::maxflow::{max_flow, min_cut_value, solve_network, ArcNetwork};
use crate::planar::solve_planar_any_orientation;
use crate::structure::{case_ii_gadget, Gluing, GluingSide};
use crate::triflow::{triflow_from_source, triflow_to_sink};

/// Cut values of one piece with terminals `s`, `t` and glue vertex `z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PieceCuts {
    /// min `s`-`t` cut
    pub tau: Cap,
    /// min `(s, {t, z})` cut
    pub tau_s: Cap,
    /// min `(t, {s, z})` cut
    pub tau_t: Cap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    /// `source_first` is true when `s_j` dominates in both pieces.
    Consistent {
        source_first: bool,
    },
    Inconsistent,
}

pub fn consistency(first: &PieceCuts, second: &PieceCuts) -> Consistency {
    if first.tau_s >= first.tau_t && second.tau_s >= second.tau_t {
        Consistency::Consistent { source_first: true }
    } else if first.tau_t >= first.tau_s && second.tau_t >= second.tau_s {
        Consistency::Consistent { source_first: false }
    } else {
        Consistency::Inconsistent
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GluingCase {
    /// Side `glued` is consistent; its surplus boosts the other side's `uv` edge.
    Consistent {
        glued: usize,
    },
    BothInconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingQuantities {
    /// Pieces at `u1`, `v1`, `u2`, `v2`.
    pub pieces: [PieceCuts; 4],
    pub case: GluingCase,
    pub theta: Cap,
    pub theta1: Cap,
    pub theta2: Cap,
    pub lambda: Cap,
    pub lambda1: Cap,
    pub lambda2: Cap,
    pub k1: Cap,
    pub k2: Cap,
}

/// Zeroes `c(e1)` and `c(e2)`, returning the amounts to add back.
pub fn zero_direct_edges(inst: &Instance) -> (Instance, (Cap, Cap)) {
    let c1 = inst.graph().edge(inst.e1()).cap;
    let c2 = inst.graph().edge(inst.e2()).cap;
    (inst.with_capacity(inst.e1(), 0).with_capacity(inst.e2(), 0), (c1, c2))
}

/// Saturates the direct edges again.
pub fn add_back(b: Biflow, t: &Terminals, (c1, c2): (Cap, Cap)) -> Biflow {
    let direct = |s: Vertex, tt: Vertex, c: Cap| ArcFlow::from_arcs([((s, tt), c)]);
    Biflow::new(b.f1.plus(&direct(t.s1, t.t1, c1)), b.f2.plus(&direct(t.s2, t.t2, c2)))
}

pub fn solve_gluing(inst: &Instance, gl: &Gluing) -> Result<Biflow> {
    solve_gluing_traced(inst, gl).map(|(b, _)| b)
}

pub fn solve_gluing_traced(inst: &Instance, gl: &Gluing) -> Result<(Biflow, GluingQuantities)> {
    match (&gl.side1, &gl.side2) {
        (Some(a), Some(b)) => solve_two_sided(inst, a, b, &gl.center),
        (Some(a), None) => {
            let gad = case_ii_gadget(inst, 2)?;
            let mut center = gl.center.clone();
            center.push(inst.e2());
            let (b, q) = solve_two_sided(&gad.instance, a, &gad.side(), &center)?;
            Ok((gad.project(&b), q))
        }
        (None, Some(_)) => {
            let swapped = inst.with_terminals(inst.terminals().swap_commodities())?;
            let gl = Gluing { side1: gl.side2.clone(), side2: None, center: gl.center.clone() };
            let (b, q) = solve_gluing_traced(&swapped, &gl)?;
            Ok((b.swapped(), q))
        }
        (None, None) => Err(Error::NotSeymourLike("gluing without a glued side".into())),
    }
}

/// One side: commodity terminals `s`, `t`, glue vertices `u`, `v` and the
/// two piece graphs.
struct Side {
    s: Vertex,
    t: Vertex,
    u: Vertex,
    v: Vertex,
    gu: Graph,
    gv: Graph,
    cu: PieceCuts,
    cv: PieceCuts,
}

impl Side {
    fn new(g: &Graph, (s, t): (Vertex, Vertex), side: &GluingSide) -> Result<Side> {
        let gu = g.edge_subgraph(side.piece_u.iter().copied(), &[s, t, side.u]);
        let gv = g.edge_subgraph(side.piece_v.iter().copied(), &[s, t, side.v]);
        let cu = piece_cuts(&gu, s, t, side.u)?;
        let cv = piece_cuts(&gv, s, t, side.v)?;
        Ok(Side { s, t, u: side.u, v: side.v, gu, gv, cu, cv })
    }

    /// The same side with `s` and `t` interchanged.
    fn flipped(&self) -> Side {
        let swap = |c: PieceCuts| PieceCuts { tau: c.tau, tau_s: c.tau_t, tau_t: c.tau_s };
        Side {
            s: self.t,
            t: self.s,
            u: self.u,
            v: self.v,
            gu: self.gu.clone(),
            gv: self.gv.clone(),
            cu: swap(self.cu),
            cv: swap(self.cv),
        }
    }
}

fn piece_cuts(g: &Graph, s: Vertex, t: Vertex, z: Vertex) -> Result<PieceCuts> {
    Ok(PieceCuts {
        tau: min_cut_value(g, &[s], &[t])?,
        tau_s: min_cut_value(g, &[s], &[t, z])?,
        tau_t: min_cut_value(g, &[t], &[s, z])?,
    })
}

fn solve_two_sided(
    inst: &Instance,
    side1: &GluingSide,
    side2: &GluingSide,
    center: &[EdgeId],
) -> Result<(Biflow, GluingQuantities)> {
    let (zeroed, addback) = zero_direct_edges(inst);
    let g = zeroed.graph();
    let t = zeroed.terminals();
    let one = Side::new(g, t.pair(1), side1)?;
    let two = Side::new(g, t.pair(2), side2)?;
    let g0 = g.edge_subgraph(center.iter().copied(), &[one.u, one.v, two.u, two.v]);
    let mut q = GluingQuantities {
        pieces: [one.cu, one.cv, two.cu, two.cv],
        case: GluingCase::BothInconsistent,
        theta: 0,
        theta1: 0,
        theta2: 0,
        lambda: 0,
        lambda1: 0,
        lambda2: 0,
        k1: 0,
        k2: 0,
    };
    let (f1, f2) = match (consistency(&one.cu, &one.cv), consistency(&two.cu, &two.cv)) {
        (Consistency::Consistent { source_first }, _) => {
            q.case = GluingCase::Consistent { glued: 1 };
            let (z1, z2, theta) = consistent_case(&one, source_first, &two, &g0)?;
            q.theta = theta;
            (z1, z2)
        }
        (_, Consistency::Consistent { source_first }) => {
            q.case = GluingCase::Consistent { glued: 2 };
            let (z2, z1, theta) = consistent_case(&two, source_first, &one, &g0)?;
            q.theta = theta;
            (z1, z2)
        }
        _ => inconsistent_case(&one, &two, &g0, &mut q)?,
    };
    Ok((add_back(Biflow::new(f1, f2), &t, addback), q))
}

/// Returns the glued commodity's `s -> t` flow, the other commodity's
/// `s -> t` flow and `θ`.
fn consistent_case(glued: &Side, source_first: bool, other: &Side, g0: &Graph) -> Result<(ArcFlow, ArcFlow, Cap)> {
    let oriented;
    let side = if source_first {
        glued
    } else {
        oriented = glued.flipped();
        &oriented
    };
    let (a, b, u, v) = (side.s, side.t, side.u, side.v);
    let p1 = triflow_from_source(&side.gu, a, b, u)?;
    let p2 = triflow_from_source(&side.gv, a, b, v)?;
    let mut z1 = p1.f1.plus(&p2.f1);
    let theta = (p1.tau_side - p1.tau).min(p2.tau_side - p2.tau);
    let h12 = concatenate(&[(&reverse(&p1.f2), u, a), (&p2.f2, a, v)], theta)?;

    let mut boosted = g0.clone();
    for h in [&other.gu, &other.gv] {
        for (_, e) in h.edges() {
            boosted.add_edge(e.u, e.v, e.cap)?;
        }
    }
    boosted.add_vertex(other.s);
    boosted.add_vertex(other.t);
    let base = g0.capacity_between(u, v);
    boosted.add_edge(u, v, theta)?;
    let (f, _) = max_flow(&boosted, &[other.s], &[other.t])?;
    let units = (f.net(u, v).abs() - base).max(0);
    let z2 = splice(&f, u, v, &h12, units)?;
    if !source_first {
        z1 = reverse(&z1);
    }
    Ok((z1, z2, theta))
}

fn inconsistent_case(one: &Side, two: &Side, g0: &Graph, q: &mut GluingQuantities) -> Result<(ArcFlow, ArcFlow)> {
    // orient each side so its u-piece is source-heavy and its v-piece sink-heavy
    let flip1 = one.cu.tau_s < one.cu.tau_t;
    let flip2 = two.cu.tau_s < two.cu.tau_t;
    let (one_flipped, two_flipped);
    let one = if flip1 {
        one_flipped = one.flipped();
        &one_flipped
    } else {
        one
    };
    let two = if flip2 {
        two_flipped = two.flipped();
        &two_flipped
    } else {
        two
    };

    let p1 = triflow_from_source(&one.gu, one.s, one.t, one.u)?;
    let p2 = triflow_to_sink(&one.gv, one.s, one.t, one.v)?;
    let p3 = triflow_from_source(&two.gu, two.s, two.t, two.u)?;
    let p4 = triflow_to_sink(&two.gv, two.s, two.t, two.v)?;
    q.theta1 = (p1.tau_side - p1.tau).min(p2.tau_side - p2.tau);
    q.theta2 = (p3.tau_side - p3.tau).min(p4.tau_side - p4.tau);
    q.lambda = grouped_bicut(g0, one.u, one.v, two.u, two.v)?;
    q.lambda1 = min_cut_value(g0, &[one.u], &[one.v])?;
    q.lambda2 = min_cut_value(g0, &[two.u], &[two.v])?;
    q.k1 = q.theta1.min(q.lambda1);
    q.k2 = q.theta2.min(q.lambda2).min(q.lambda - q.k1);
    let (r1, r2) = prescribed_biflow(g0, one.u, one.v, two.u, two.v, q.k1, q.k2)?;
    let l1 = concatenate(&[(&p1.f2, one.s, one.u), (&r1, one.u, one.v), (&p2.f2, one.v, one.t)], q.k1)?;
    let l2 = concatenate(&[(&p3.f2, two.s, two.u), (&r2, two.u, two.v), (&p4.f2, two.v, two.t)], q.k2)?;
    let mut z1 = p1.f1.plus(&p2.f1).plus(&l1);
    let mut z2 = p3.f1.plus(&p4.f1).plus(&l2);
    if flip1 {
        z1 = reverse(&z1);
    }
    if flip2 {
        z2 = reverse(&z2);
    }
    Ok((z1, z2))
}

/// A `(u1 -> v1, u2 -> v2)` biflow of values `(k1, k2)` in `g0`. With four
/// distinct glue vertices this is the planar algorithm; when glue vertices coincide
/// it is a single-commodity flow split by path endpoints.
fn prescribed_biflow(
    g0: &Graph,
    u1: Vertex,
    v1: Vertex,
    u2: Vertex,
    v2: Vertex,
    k1: Cap,
    k2: Cap,
) -> Result<(ArcFlow, ArcFlow)> {
    if k1 == 0 && k2 == 0 {
        return Ok((ArcFlow::default(), ArcFlow::default()));
    }
    let distinct = [u1, v1, u2, v2].iter().enumerate().all(|(i, x)| [u1, v1, u2, v2][i + 1..].iter().all(|y| y != x));
    if distinct {
        let inst = Instance::new(g0.clone(), Terminals::new(u1, v1, u2, v2))?;
        let b = solve_planar_any_orientation(&inst, k1, k2)?;
        return Ok((b.f1, b.f2));
    }
    let net = ArcNetwork::from_graph(g0);
    let shortfall = |got: Cap| Error::ValueInfeasible { requested: k1 + k2, max: got };
    if u1 == u2 && v1 == v2 {
        let out = solve_network(&net, &[(u1, None)], &[(v1, Some(k1 + k2))])?;
        if out.value < k1 + k2 {
            return Err(shortfall(out.value));
        }
        let mut parts = split_units(&out.flow, u1, v1, &[k1, k2])?;
        let r2 = parts.pop().expect("two parts");
        return Ok((parts.pop().expect("two parts"), r2));
    }
    let (sources, sinks) = if u1 == u2 {
        (vec![(u1, None)], vec![(v1, Some(k1)), (v2, Some(k2))])
    } else if v1 == v2 {
        (vec![(u1, Some(k1)), (u2, Some(k2))], vec![(v1, None)])
    } else {
        return Err(Error::NotSeymourLike("glue vertices coincide across roles".into()));
    };
    let out = solve_network(&net, &sources, &sinks)?;
    if out.value < k1 + k2 {
        return Err(shortfall(out.value));
    }
    let srcs: Vec<Vertex> = sources.iter().map(|s| s.0).collect();
    let snks: Vec<Vertex> = sinks.iter().map(|s| s.0).collect();
    let d = decompose(&out.flow, &srcs, &snks)?;
    let (mut r1, mut r2) = (Vec::new(), Vec::new());
    for e in &d.entries {
        let first = if u1 == u2 { e.end() == v1 } else { e.start() == u1 };
        if first {
            r1.push((e.path.clone(), e.mult));
        } else {
            r2.push((e.path.clone(), e.mult));
        }
    }
    Ok((crate::bicut::flow_from_paths(&r1), crate::bicut::flow_from_paths(&r2)))
}
