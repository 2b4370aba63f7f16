//! Integral maximum flow and minimum cut on the bidirected view of a graph.
//!
//! An undirected edge of capacity `c` becomes the arc pair `(u,v)`, `(v,u)`
//! with residuals `(c, c)`. Asymmetric pairs (residual capacities, flow
//! capacities used for splitting) go through [`ArcNetwork`]. Flows come out
//! normalized: at most one arc of every pair carries flow.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::flowops::ArcFlow;
use crate::graph::{Cap, EdgeId, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    pub capacity: Cap,
}

impl Cut {
    /// The cut `δ(side)` of `g`.
    pub fn of_side(g: &Graph, side: &[Vertex]) -> Cut {
        let inside: std::collections::HashSet<Vertex> = side.iter().copied().collect();
        let mut edges = Vec::new();
        let mut capacity = 0;
        for (id, e) in g.edges() {
            if inside.contains(&e.u) != inside.contains(&e.v) {
                edges.push(id);
                capacity += e.cap;
            }
        }
        let mut side: Vec<Vertex> = side.to_vec();
        side.sort_by_key(|&v| (g.position(v).unwrap_or(usize::MAX), v));
        Cut { side, edges, capacity }
    }
}

/// Directed capacities on arc pairs. Capacities added for the same
/// (unordered) pair accumulate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcNetwork {
    vertices: Vec<Vertex>,
    known: std::collections::HashSet<Vertex>,
    pairs: BTreeMap<(Vertex, Vertex), (Cap, Cap)>,
}

impl ArcNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut net = ArcNetwork::new();
        for &v in g.vertices() {
            net.add_vertex(v);
        }
        for (_, e) in g.edges() {
            net.add_pair(e.u, e.v, e.cap, e.cap);
        }
        net
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        if self.known.insert(v) {
            self.vertices.push(v);
        }
    }

    /// Adds capacity `cuv` on arc (u,v) and `cvu` on arc (v,u).
    pub fn add_pair(&mut self, u: Vertex, v: Vertex, cuv: Cap, cvu: Cap) {
        assert!(u != v && cuv >= 0 && cvu >= 0, "invalid arc pair");
        self.add_vertex(u);
        self.add_vertex(v);
        let entry =
            if u < v { self.pairs.entry((u, v)).or_insert((0, 0)) } else { self.pairs.entry((v, u)).or_insert((0, 0)) };
        if u < v {
            entry.0 += cuv;
            entry.1 += cvu;
        } else {
            entry.0 += cvu;
            entry.1 += cuv;
        }
    }

    /// Capacity of the arc (u,v).
    pub fn capacity(&self, u: Vertex, v: Vertex) -> Cap {
        if u < v {
            self.pairs.get(&(u, v)).map_or(0, |c| c.0)
        } else {
            self.pairs.get(&(v, u)).map_or(0, |c| c.1)
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Arc pairs `(u, v, c(u,v), c(v,u))` with `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex, Cap, Cap)> + '_ {
        self.pairs.iter().map(|(&(u, v), &(a, b))| (u, v, a, b))
    }

    pub fn total_capacity(&self) -> Cap {
        self.pairs.values().map(|&(a, b)| a + b).sum()
    }

    /// Whether `f` respects these arc capacities.
    pub fn admits(&self, f: &ArcFlow) -> bool {
        f.iter().all(|((u, v), x)| x <= self.capacity(u, v))
    }
}

/// Result of a flow computation on an [`ArcNetwork`].
#[derive(Clone, Debug)]
pub struct NetworkFlow {
    pub flow: ArcFlow,
    pub value: Cap,
    /// Vertices reachable from the sources in the final residual network.
    pub side: Vec<Vertex>,
}

/// A terminal attached to the super source or super sink; `None` is the
/// sentinel "infinite" capacity.
pub(crate) type Attach = (Vertex, Option<Cap>);

struct Dinic {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    res: Vec<Cap>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic { adj: vec![Vec::new(); n], to: Vec::new(), res: Vec::new(), level: vec![0; n], next: vec![0; n] }
    }

    fn add(&mut self, u: usize, v: usize, cuv: Cap, cvu: Cap) -> usize {
        let k = self.to.len();
        self.to.push(v);
        self.res.push(cuv);
        self.adj[u].push(k);
        self.to.push(u);
        self.res.push(cvu);
        self.adj[v].push(k + 1);
        k
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &k in &self.adj[u] {
                let v = self.to[k];
                if self.res[k] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: Cap) -> Cap {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let k = self.adj[u][self.next[u]];
            let v = self.to[k];
            if self.res[k] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, pushed.min(self.res[k]));
                if d > 0 {
                    self.res[k] -= d;
                    self.res[k ^ 1] += d;
                    return d;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    fn run(&mut self, s: usize, t: usize) -> Cap {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let d = self.dfs(s, t, Cap::MAX);
                if d == 0 {
                    break;
                }
                total += d;
            }
        }
        total
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &k in &self.adj[u] {
                let v = self.to[k];
                if self.res[k] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Core routine: max flow from a super source over `sources` to a super
/// sink over `sinks`, with per-terminal attachment capacities.
pub(crate) fn solve_network(net: &ArcNetwork, sources: &[Attach], sinks: &[Attach]) -> Result<NetworkFlow> {
    for (s, _) in sources {
        if sinks.iter().any(|(t, _)| t == s) {
            return Err(Error::OverlappingTerminals);
        }
    }
    let mut verts: Vec<Vertex> = net.vertices.clone();
    let mut index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &(v, _) in sources.iter().chain(sinks) {
        if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(v) {
            slot.insert(verts.len());
            verts.push(v);
        }
    }
    let n = verts.len();
    let (sigma, tau) = (n, n + 1);
    let mut d = Dinic::new(n + 2);
    let mut pair_arcs = Vec::with_capacity(net.pairs.len());
    for (&(u, v), &(a, b)) in &net.pairs {
        let k = d.add(index[&u], index[&v], a, b);
        pair_arcs.push((u, v, a, k));
    }
    let inf = net.total_capacity() + 1;
    for &(s, c) in sources {
        d.add(sigma, index[&s], c.unwrap_or(inf), 0);
    }
    for &(t, c) in sinks {
        d.add(index[&t], tau, c.unwrap_or(inf), 0);
    }
    let value = d.run(sigma, tau);
    let mut raw = Vec::new();
    for (u, v, a, k) in pair_arcs {
        let x = a - d.res[k];
        if x > 0 {
            raw.push(((u, v), x));
        } else if x < 0 {
            raw.push(((v, u), -x));
        }
    }
    let reach = d.reachable(sigma);
    let side = (0..n).filter(|&i| reach[i]).map(|i| verts[i]).collect();
    Ok(NetworkFlow { flow: ArcFlow::from_arcs(raw), value, side })
}

fn unbounded(vs: &[Vertex]) -> Vec<Attach> {
    vs.iter().map(|&v| (v, None)).collect()
}

/// Maximum `(S, T)`-flow together with the canonical minimum cut (the
/// source side is everything reachable in the final residual network).
pub fn max_flow(g: &Graph, sources: &[Vertex], sinks: &[Vertex]) -> Result<(ArcFlow, Cut)> {
    let out = solve_network(&ArcNetwork::from_graph(g), &unbounded(sources), &unbounded(sinks))?;
    let cut = Cut::of_side(g, &out.side);
    debug_assert_eq!(cut.capacity, out.value, "max-flow/min-cut mismatch");
    Ok((out.flow, cut))
}

pub fn max_flow_network(net: &ArcNetwork, sources: &[Vertex], sinks: &[Vertex]) -> Result<NetworkFlow> {
    solve_network(net, &unbounded(sources), &unbounded(sinks))
}

/// Minimum `(S, T)`-cut capacity.
pub fn min_cut_value(g: &Graph, sources: &[Vertex], sinks: &[Vertex]) -> Result<Cap> {
    Ok(solve_network(&ArcNetwork::from_graph(g), &unbounded(sources), &unbounded(sinks))?.value)
}

/// An `s`-`t` flow of value exactly `k`, obtained by capping a pendant arc
/// at the sink.
pub fn flow_of_value(g: &Graph, s: Vertex, t: Vertex, k: Cap) -> Result<ArcFlow> {
    flow_of_value_network(&ArcNetwork::from_graph(g), s, t, k)
}

pub fn flow_of_value_network(net: &ArcNetwork, s: Vertex, t: Vertex, k: Cap) -> Result<ArcFlow> {
    if k < 0 {
        return Err(Error::ValueInfeasible { requested: k, max: 0 });
    }
    let out = solve_network(net, &[(s, None)], &[(t, Some(k))])?;
    if out.value < k {
        let max = max_flow_network(net, &[s], &[t])?.value;
        return Err(Error::ValueInfeasible { requested: k, max });
    }
    Ok(out.flow)
}

/// `c'(a) = c(a) - base(a) + base(ā)` on every arc of `g`.
pub fn residual_capacity(g: &Graph, base: &ArcFlow) -> ArcNetwork {
    let mut net = ArcNetwork::new();
    for &v in g.vertices() {
        net.add_vertex(v);
    }
    for (_, e) in g.edges() {
        let (fwd, bwd) = (base.get(e.u, e.v), base.get(e.v, e.u));
        net.add_pair(e.u, e.v, e.cap - fwd + bwd, e.cap - bwd + fwd);
    }
    net
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flowops::divergence;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn graph(edges: &[(u32, u32, Cap)]) -> Graph {
        let mut g = Graph::new();
        for &(a, b, c) in edges {
            g.add_edge(v(a), v(b), c).unwrap();
        }
        g
    }

    fn k4() -> Graph {
        graph(&[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
    }

    /// Minimum cut by enumerating every vertex subset.
    fn brute_min_cut(g: &Graph, s: &[Vertex], t: &[Vertex]) -> Cap {
        let vs = g.vertices();
        let free: Vec<Vertex> = vs.iter().copied().filter(|x| !s.contains(x) && !t.contains(x)).collect();
        let mut best = Cap::MAX;
        for mask in 0u32..(1 << free.len()) {
            let mut side: Vec<Vertex> = s.to_vec();
            side.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
            best = best.min(Cut::of_side(g, &side).capacity);
        }
        best
    }

    #[test]
    fn path_example() {
        let g = graph(&[(0, 1, 3), (1, 2, 5)]);
        let (f, cut) = max_flow(&g, &[v(0)], &[v(2)]).unwrap();
        assert_eq!(cut.capacity, 3);
        assert_eq!(cut.edges, vec![EdgeId(0)]);
        assert_eq!(divergence(&f, v(0)), 3);
        let f2 = flow_of_value(&g, v(0), v(2), 2).unwrap();
        assert_eq!(divergence(&f2, v(0)), 2);
        assert_eq!(divergence(&f2, v(1)), 0);
        assert!(flow_of_value(&g, v(0), v(2), 0).unwrap().is_zero());
    }

    #[test]
    fn k4_example() {
        let (_, cut) = max_flow(&k4(), &[v(0)], &[v(1)]).unwrap();
        assert_eq!(cut.capacity, 3);
        assert_eq!(flow_of_value(&k4(), v(0), v(1), 4).unwrap_err(), Error::ValueInfeasible { requested: 4, max: 3 });
    }

    #[test]
    fn disconnected_and_overlap() {
        let mut g = graph(&[(0, 1, 2)]);
        g.add_vertex(v(5));
        let (f, cut) = max_flow(&g, &[v(0)], &[v(5)]).unwrap();
        assert!(f.is_zero());
        assert_eq!(cut.capacity, 0);
        assert_eq!(max_flow(&g, &[v(0)], &[v(0)]).unwrap_err(), Error::OverlappingTerminals);
    }

    #[test]
    fn residual_examples() {
        let g = graph(&[(0, 1, 3)]);
        let base = ArcFlow::from_arcs([((v(0), v(1)), 2)]);
        let r = residual_capacity(&g, &base);
        assert_eq!((r.capacity(v(0), v(1)), r.capacity(v(1), v(0))), (1, 5));
        let r = residual_capacity(&g, &ArcFlow::default());
        assert_eq!((r.capacity(v(0), v(1)), r.capacity(v(1), v(0))), (3, 3));
        let g = graph(&[(0, 1, 1)]);
        let r = residual_capacity(&g, &ArcFlow::from_arcs([((v(0), v(1)), 1)]));
        assert_eq!((r.capacity(v(0), v(1)), r.capacity(v(1), v(0))), (0, 2));
    }

    #[test]
    fn matches_cut_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..9u32);
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(v(i));
            }
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(v(a), v(b), rng.gen_range(0..4)).unwrap();
                    }
                }
            }
            let (s, t) = (vec![v(0)], vec![v(n - 1)]);
            let (f, cut) = max_flow(&g, &s, &t).unwrap();
            assert_eq!(cut.capacity, brute_min_cut(&g, &s, &t));
            assert_eq!(divergence(&f, v(0)), cut.capacity);
            for &x in g.vertices() {
                if x != v(0) && x != v(n - 1) {
                    assert_eq!(divergence(&f, x), 0);
                }
            }
            for (_, e) in g.edges() {
                assert!(f.get(e.u, e.v) + f.get(e.v, e.u) <= e.cap);
                assert!(f.get(e.u, e.v) == 0 || f.get(e.v, e.u) == 0);
            }
        }
    }
}
