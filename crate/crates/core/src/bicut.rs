//! Minimum bicuts, biflow feasibility checks and a brute-force oracle.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::flowops::{divergence, ArcFlow, Biflow};
use crate::graph::{Cap, Graph, Instance, Terminals, Vertex};
use crate::maxflow::{max_flow, min_cut_value, Cut};

/// Which terminal grouping realised the minimum bicut.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `({s1, s2}, {t1, t2})`
    SourcesTogether,
    /// `({s1, t2}, {t1, s2})`
    Crossed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicutCertificate {
    pub cut: Cut,
    pub pairing: Pairing,
}

impl BicutCertificate {
    pub fn capacity(&self) -> Cap {
        self.cut.capacity
    }
}

/// The smaller of the two grouped minimum cuts; every bicut contains one of
/// these, so this is the minimum bicut.
pub fn min_bicut(inst: &Instance) -> BicutCertificate {
    min_bicut_of(inst.graph(), &inst.terminals())
}

pub fn min_bicut_of(g: &Graph, t: &Terminals) -> BicutCertificate {
    let (_, a) = max_flow(g, &[t.s1, t.s2], &[t.t1, t.t2]).expect("distinct terminals");
    let (_, b) = max_flow(g, &[t.s1, t.t2], &[t.t1, t.s2]).expect("distinct terminals");
    if a.capacity <= b.capacity {
        BicutCertificate { cut: a, pairing: Pairing::SourcesTogether }
    } else {
        BicutCertificate { cut: b, pairing: Pairing::Crossed }
    }
}

/// Minimum bicut for terminal pairs that may share vertices (`u1 = u2` or
/// `v1 = v2`); only groupings that keep each shared vertex on one side are
/// admissible.
pub fn grouped_bicut(g: &Graph, u1: Vertex, v1: Vertex, u2: Vertex, v2: Vertex) -> Result<Cap> {
    let mut best: Option<Cap> = None;
    for (side, other) in [([u1, u2], [v1, v2]), ([u1, v2], [v1, u2])] {
        if side.iter().any(|x| other.contains(x)) {
            continue;
        }
        let value = min_cut_value(g, &dedup(&side), &dedup(&other))?;
        best = Some(best.map_or(value, |b: Cap| b.min(value)));
    }
    best.ok_or(Error::OverlappingTerminals)
}

fn dedup(vs: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::new();
    for &v in vs {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiflowReport {
    pub feasible: bool,
    pub value: Cap,
    pub values: (Cap, Cap),
    pub violations: Vec<String>,
}

/// Checks joint capacity, conservation away from each commodity's own
/// terminals and the sign of the terminal divergences.
pub fn verify_biflow(inst: &Instance, b: &Biflow) -> BiflowReport {
    let g = inst.graph();
    let t = inst.terminals();
    let mut violations = Vec::new();
    for (name, f) in [("f1", &b.f1), ("f2", &b.f2)] {
        for ((u, v), x) in f.iter() {
            if g.find_edge(u, v).is_none() {
                violations.push(format!("{name} uses non-edge {u}-{v} ({x})"));
            }
            if f.get(v, u) > 0 {
                violations.push(format!("{name} not normalized on {u}-{v}"));
            }
        }
    }
    for (_, e) in g.edges() {
        let load = b.f1.load(e.u, e.v) + b.f2.load(e.u, e.v);
        if load > e.cap {
            violations.push(format!("edge {}-{} carries {load} > {}", e.u, e.v, e.cap));
        }
    }
    for (name, f, s, sink) in [("f1", &b.f1, t.s1, t.t1), ("f2", &b.f2, t.s2, t.t2)] {
        for (v, d) in f.divergences() {
            if v != s && v != sink && d != 0 {
                violations.push(format!("{name} not conserved at {v} ({d})"));
            }
        }
        if divergence(f, s) < 0 || divergence(f, sink) > 0 {
            violations.push(format!("{name} runs backwards"));
        }
    }
    let values = b.values(&t);
    BiflowReport { feasible: violations.is_empty(), value: values.0 + values.1, values, violations }
}

/// True when the biflow is feasible and its value meets the minimum bicut.
pub fn certify_optimal(inst: &Instance, b: &Biflow) -> bool {
    let report = verify_biflow(inst, b);
    report.feasible && report.value == min_bicut(inst).capacity()
}

pub const ORACLE_MAX_VERTICES: usize = 8;
pub const ORACLE_MAX_CAPACITY: Cap = 3;

/// Maximum integral biflow by exhaustive search over packings of simple
/// `s1`-`t1` paths; for each packing the best commodity-2 amount is a
/// single max flow in what remains. Branches are pruned with the bicut of
/// the remaining capacities, and the search stops early once it meets the
/// bicut of the whole instance.
pub fn oracle_max_integral_biflow(inst: &Instance) -> Result<Cap> {
    let g = inst.graph();
    if g.vertex_count() > ORACLE_MAX_VERTICES || g.max_capacity() > ORACLE_MAX_CAPACITY {
        return Err(Error::TooLarge(format!(
            "{} vertices, max capacity {} (limits {ORACLE_MAX_VERTICES}, {ORACLE_MAX_CAPACITY})",
            g.vertex_count(),
            g.max_capacity()
        )));
    }
    let t = inst.terminals();
    let paths = simple_paths(g, t.s1, t.t1);
    let caps: Vec<Cap> = g.edges().map(|(_, e)| e.cap).collect();
    let target = min_bicut(inst).capacity();
    let mut search = Oracle { g, t, paths, target, best: 0 };
    search.run(0, caps, 0);
    Ok(search.best)
}

struct Oracle<'a> {
    g: &'a Graph,
    t: Terminals,
    paths: Vec<Vec<usize>>,
    target: Cap,
    best: Cap,
}

impl Oracle<'_> {
    fn remaining(&self, caps: &[Cap]) -> Graph {
        let mut rest = Graph::new();
        for &v in self.g.vertices() {
            rest.add_vertex(v);
        }
        for (id, e) in self.g.edges() {
            rest.add_edge(e.u, e.v, caps[id.0]).expect("valid edge");
        }
        rest
    }

    /// `routed` units of commodity 1 are already packed into `caps`.
    fn run(&mut self, idx: usize, mut caps: Vec<Cap>, routed: Cap) {
        if self.best == self.target {
            return;
        }
        let rest = self.remaining(&caps);
        if idx == self.paths.len() {
            let second = min_cut_value(&rest, &[self.t.s2], &[self.t.t2]).expect("distinct terminals");
            self.best = self.best.max(routed + second);
            return;
        }
        if routed + min_bicut_of(&rest, &self.t).capacity() <= self.best {
            return;
        }
        let bottleneck = self.paths[idx].iter().map(|&e| caps[e]).min().unwrap_or(0);
        for &e in &self.paths[idx] {
            caps[e] -= bottleneck;
        }
        // most units first so good packings are found early
        for m in (0..=bottleneck).rev() {
            self.run(idx + 1, caps.clone(), routed + m);
            for &e in &self.paths[idx] {
                caps[e] += 1;
            }
        }
    }
}

/// Simple `s`-`t` paths as edge index lists.
fn simple_paths(g: &Graph, s: Vertex, t: Vertex) -> Vec<Vec<usize>> {
    fn walk(
        g: &Graph,
        at: Vertex,
        t: Vertex,
        seen: &mut HashSet<Vertex>,
        edges: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == t {
            out.push(edges.clone());
            return;
        }
        for (w, id) in g.neighbors(at) {
            if g.edge(id).cap == 0 || !seen.insert(w) {
                continue;
            }
            edges.push(id.0);
            walk(g, w, t, seen, edges, out);
            edges.pop();
            seen.remove(&w);
        }
    }
    let mut out = Vec::new();
    let mut seen: HashSet<Vertex> = [s].into_iter().collect();
    walk(g, s, t, &mut seen, &mut Vec::new(), &mut out);
    out
}

/// Greedy baseline: a maximum flow for one commodity, then the other in the
/// residual capacity; the better of the two orders.
pub fn greedy_biflow(inst: &Instance) -> Biflow {
    let t = inst.terminals();
    let g = inst.graph();
    let mut best: Option<(Cap, Biflow)> = None;
    for first in [1, 2] {
        let (a, b) = t.pair(first);
        let (c, d) = t.pair(3 - first);
        let (fa, _) = max_flow(g, &[a], &[b]).expect("distinct terminals");
        let mut rest = Graph::new();
        for &v in g.vertices() {
            rest.add_vertex(v);
        }
        for (_, e) in g.edges() {
            rest.add_edge(e.u, e.v, e.cap - fa.load(e.u, e.v)).expect("load within capacity");
        }
        let (fb, _) = max_flow(&rest, &[c], &[d]).expect("distinct terminals");
        let b = if first == 1 { Biflow::new(fa, fb) } else { Biflow::new(fb, fa) };
        let value = b.value(&t);
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, b));
        }
    }
    best.expect("two candidates").1
}

/// Flow from explicit paths (vertex sequences with multiplicities).
pub fn flow_from_paths(paths: &[(Vec<Vertex>, Cap)]) -> ArcFlow {
    ArcFlow::from_arcs(paths.iter().flat_map(|(p, m)| p.windows(2).map(move |w| ((w[0], w[1]), *m))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    const S1: u32 = 0;
    const T1: u32 = 1;
    const S2: u32 = 2;
    const T2: u32 = 3;

    fn inst(edges: &[(u32, u32, Cap)]) -> Instance {
        let mut g = Graph::new();
        for &(a, b, c) in edges {
            g.add_edge(v(a), v(b), c).unwrap();
        }
        Instance::new(g, Terminals::new(v(S1), v(T1), v(S2), v(T2))).unwrap()
    }

    /// Interleaved 4-cycle s1 s2 t1 t2.
    fn c4(c: Cap) -> Instance {
        inst(&[(S1, S2, c), (S2, T1, c), (T1, T2, c), (T2, S1, c)])
    }

    /// Cycle in the order s1, s2, t2, t1.
    fn cycle(c: Cap) -> Instance {
        inst(&[(S1, S2, c), (S2, T2, c), (T2, T1, c), (T1, S1, c)])
    }

    /// Cycle s1, s2, a, b with t1 pendant at a and t2 pendant at b.
    fn forbidden(c: Cap) -> Instance {
        inst(&[(S1, S2, c), (S2, 4, c), (4, 5, c), (5, S1, c), (T1, 4, c), (T2, 5, c)])
    }

    #[test]
    fn min_bicut_examples() {
        assert_eq!(min_bicut(&c4(1)).capacity(), 2);
        let k4 = inst(&[(S1, T1, 1), (S1, S2, 1), (S1, T2, 1), (T1, S2, 1), (T1, T2, 1), (S2, T2, 1)]);
        assert_eq!(min_bicut(&k4).capacity(), 4);
        assert_eq!(min_bicut(&c4(0)).capacity(), 0);
    }

    #[test]
    fn bicut_separates_both_pairs() {
        for i in [c4(1), cycle(2), forbidden(1)] {
            let cert = min_bicut(&i);
            let t = i.terminals();
            let mut g = Graph::new();
            for (id, e) in i.graph().edges() {
                if !cert.cut.edges.contains(&id) && e.cap > 0 {
                    g.add_edge(e.u, e.v, e.cap).unwrap();
                }
            }
            for x in t.all() {
                g.add_vertex(x);
            }
            let comps = crate::graph::connected_components(&g, &HashSet::new());
            let same = |a: Vertex, b: Vertex| comps.iter().any(|c| c.contains(&a) && c.contains(&b));
            assert!(!same(t.s1, t.t1) && !same(t.s2, t.t2));
        }
    }

    #[test]
    fn verify_examples() {
        let i = cycle(1);
        let zero = Biflow::default();
        assert_eq!(verify_biflow(&i, &zero).value, 0);
        assert!(verify_biflow(&i, &zero).feasible);
        let over = Biflow::new(flow_from_paths(&[(vec![v(S1), v(S2), v(T2), v(T1)], 2)]), ArcFlow::default());
        assert!(!verify_biflow(&i, &over).feasible);
        let f1 = flow_from_paths(&[(vec![v(S1), v(T1)], 1), (vec![v(S1), v(S2), v(T2), v(T1)], 1)]);
        let b = Biflow::new(f1, ArcFlow::default());
        let r = verify_biflow(&i.with_capacity(i.e1(), 1), &b);
        assert!(r.feasible, "{:?}", r.violations);
        assert_eq!(r.value, 2);
    }

    #[test]
    fn certify_examples() {
        let i = cycle(1).with_capacity(cycle(1).e1(), 1);
        let two = Biflow::new(
            flow_from_paths(&[(vec![v(S1), v(T1)], 1), (vec![v(S1), v(S2), v(T2), v(T1)], 1)]),
            ArcFlow::default(),
        );
        assert_eq!(min_bicut(&i).capacity(), 2);
        assert!(certify_optimal(&i, &two));
        let one = Biflow::new(flow_from_paths(&[(vec![v(S1), v(T1)], 1)]), ArcFlow::default());
        assert!(!certify_optimal(&i, &one));
        assert!(certify_optimal(&c4(0), &Biflow::default()));
    }

    #[test]
    fn oracle_examples() {
        // the interleaved 4-cycle has no gap: 2 = min bicut
        assert_eq!(oracle_max_integral_biflow(&c4(1)).unwrap(), 2);
        assert_eq!(oracle_max_integral_biflow(&cycle(1)).unwrap(), 2);
        let single = inst(&[(S1, T1, 2)]);
        assert_eq!(oracle_max_integral_biflow(&single).unwrap(), 2);
        // the 6-vertex obstruction: 1 < 2
        assert_eq!(oracle_max_integral_biflow(&forbidden(1)).unwrap(), 1);
        assert_eq!(min_bicut(&forbidden(1)).capacity(), 2);
        assert_eq!(oracle_max_integral_biflow(&forbidden(2)).unwrap(), 4);
        assert_eq!(oracle_max_integral_biflow(&forbidden(3)).unwrap(), 5);
        assert!(matches!(oracle_max_integral_biflow(&forbidden(4)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn oracle_never_exceeds_bicut() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(4..8u32);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((a, b, rng.gen_range(0..3)));
                    }
                }
            }
            let i = inst(&edges);
            let o = oracle_max_integral_biflow(&i).unwrap();
            assert!(o <= min_bicut(&i).capacity());
            let greedy = greedy_biflow(&i);
            assert!(verify_biflow(&i, &greedy).feasible);
            assert!(greedy.value(&i.terminals()) <= o);
        }
    }
}
