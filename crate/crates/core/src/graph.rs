//! Capacitated undirected graphs, terminal pairs and basic connectivity.
//!
//! Vertices are opaque `u32` tokens so that subgraphs, gadgets and
//! contracted cores can share identities with the instance they came from.
//! Every graph keeps its own dense ordering (first appearance) which drives
//! all deterministic iteration.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub type Cap = i64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub cap: Cap,
}

impl Edge {
    /// The endpoint opposite to `x` (which must be an endpoint).
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    edges: Vec<Edge>,
    lookup: HashMap<(Vertex, Vertex), EdgeId>,
    adj: Vec<Vec<EdgeId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: Vertex) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.vertices.len();
        self.vertices.push(v);
        self.index.insert(v, i);
        self.adj.push(Vec::new());
        i
    }

    /// Adds an edge, merging with an existing edge between the same pair.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, cap: Cap) -> Result<EdgeId> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if cap < 0 {
            return Err(Error::NegativeCapacity { u, v, cap });
        }
        self.add_vertex(u);
        self.add_vertex(v);
        if let Some(&id) = self.lookup.get(&key(u, v)) {
            self.edges[id.0].cap += cap;
            return Ok(id);
        }
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { u, v, cap });
        self.lookup.insert(key(u, v), id);
        let (iu, iv) = (self.index[&u], self.index[&v]);
        self.adj[iu].push(id);
        self.adj[iv].push(id);
        Ok(id)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index.contains_key(&v)
    }

    /// Dense position of `v` in this graph's vertex order.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.lookup.get(&key(u, v)).copied()
    }

    /// Capacity of the edge between `u` and `v`, 0 if there is none.
    pub fn capacity_between(&self, u: Vertex, v: Vertex) -> Cap {
        self.find_edge(u, v).map_or(0, |id| self.edges[id.0].cap)
    }

    pub fn set_capacity(&mut self, id: EdgeId, cap: Cap) {
        assert!(cap >= 0, "capacity must be nonnegative");
        self.edges[id.0].cap = cap;
    }

    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        match self.index.get(&v) {
            Some(&i) => &self.adj[i],
            None => &[],
        }
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.incident(v).iter().map(move |&id| (self.edges[id.0].other(v), id))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).len()
    }

    pub fn total_capacity(&self) -> Cap {
        self.edges.iter().map(|e| e.cap).sum()
    }

    pub fn max_capacity(&self) -> Cap {
        self.edges.iter().map(|e| e.cap).max().unwrap_or(0)
    }

    /// A vertex id larger than every id in use.
    pub fn fresh_vertex(&self) -> Vertex {
        Vertex(self.vertices.iter().map(|v| v.0 + 1).max().unwrap_or(0))
    }

    /// The subgraph formed by the given edges; `keep` vertices are added first
    /// (in order) even if they end up isolated.
    pub fn edge_subgraph(&self, ids: impl IntoIterator<Item = EdgeId>, keep: &[Vertex]) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            g.add_vertex(v);
        }
        for id in ids {
            let e = self.edges[id.0];
            g.add_edge(e.u, e.v, e.cap).expect("edges of a valid graph");
        }
        g
    }

    /// The subgraph induced by the vertices not in `removed`.
    pub fn without_vertices(&self, removed: &HashSet<Vertex>) -> Graph {
        let mut g = Graph::new();
        for &v in &self.vertices {
            if !removed.contains(&v) {
                g.add_vertex(v);
            }
        }
        for e in &self.edges {
            if !removed.contains(&e.u) && !removed.contains(&e.v) {
                g.add_edge(e.u, e.v, e.cap).expect("edges of a valid graph");
            }
        }
        g
    }
}

/// Builds a graph from an edge list over arbitrary tokens; returns the graph
/// together with the token of every vertex (indexed by `Vertex.0`).
pub fn build_graph<T: Hash + Eq + Clone>(edges: &[(T, T, Cap)]) -> Result<(Graph, Vec<T>)> {
    let mut ids: HashMap<T, Vertex> = HashMap::new();
    let mut tokens = Vec::new();
    let mut g = Graph::new();
    let mut intern = |t: &T, tokens: &mut Vec<T>| {
        *ids.entry(t.clone()).or_insert_with(|| {
            tokens.push(t.clone());
            Vertex(tokens.len() as u32 - 1)
        })
    };
    for (a, b, cap) in edges {
        let u = intern(a, &mut tokens);
        let v = intern(b, &mut tokens);
        g.add_edge(u, v, *cap)?;
    }
    Ok((g, tokens))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Terminals {
    pub s1: Vertex,
    pub t1: Vertex,
    pub s2: Vertex,
    pub t2: Vertex,
}

impl Terminals {
    pub fn new(s1: Vertex, t1: Vertex, s2: Vertex, t2: Vertex) -> Self {
        Terminals { s1, t1, s2, t2 }
    }

    pub fn all(&self) -> [Vertex; 4] {
        [self.s1, self.t1, self.s2, self.t2]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.all().contains(&v)
    }

    pub fn pair(&self, commodity: usize) -> (Vertex, Vertex) {
        match commodity {
            1 => (self.s1, self.t1),
            2 => (self.s2, self.t2),
            _ => panic!("commodity must be 1 or 2"),
        }
    }

    /// Terminals with `s2` and `t2` interchanged.
    pub fn swap_second(&self) -> Self {
        Terminals { s2: self.t2, t2: self.s2, ..*self }
    }

    /// Terminals with the two commodities interchanged.
    pub fn swap_commodities(&self) -> Self {
        Terminals { s1: self.s2, t1: self.t2, s2: self.s1, t2: self.t1 }
    }

    fn distinct(&self) -> bool {
        let a = self.all();
        (0..4).all(|i| (i + 1..4).all(|j| a[i] != a[j]))
    }
}

/// A graph with four terminals in which `e1 = s1t1` and `e2 = s2t2` exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    terminals: Terminals,
    e1: EdgeId,
    e2: EdgeId,
}

impl Instance {
    /// Adds `s1t1` and `s2t2` with capacity 0 where missing.
    pub fn new(mut graph: Graph, terminals: Terminals) -> Result<Instance> {
        if !terminals.distinct() {
            return Err(Error::DuplicateTerminal);
        }
        for v in terminals.all() {
            graph.add_vertex(v);
        }
        let e1 = graph.add_edge(terminals.s1, terminals.t1, 0)?;
        let e2 = graph.add_edge(terminals.s2, terminals.t2, 0)?;
        Ok(Instance { graph, terminals, e1, e2 })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> Terminals {
        self.terminals
    }

    pub fn e1(&self) -> EdgeId {
        self.e1
    }

    pub fn e2(&self) -> EdgeId {
        self.e2
    }

    pub fn direct_edge(&self, commodity: usize) -> EdgeId {
        if commodity == 1 {
            self.e1
        } else {
            self.e2
        }
    }

    pub fn is_direct(&self, id: EdgeId) -> bool {
        id == self.e1 || id == self.e2
    }

    pub fn with_capacity(&self, id: EdgeId, cap: Cap) -> Instance {
        let mut out = self.clone();
        out.graph.set_capacity(id, cap);
        out
    }

    pub fn with_terminals(&self, terminals: Terminals) -> Result<Instance> {
        Instance::new(self.graph.clone(), terminals)
    }

    /// Same graph and capacities with every capacity multiplied by `k`.
    pub fn scaled(&self, k: Cap) -> Instance {
        let mut out = self.clone();
        for i in 0..out.graph.edge_count() {
            let c = out.graph.edges[i].cap;
            out.graph.edges[i].cap = c * k;
        }
        out
    }
}

/// Components of `g` after deleting `excluded`, in order of their first
/// vertex; each component lists its vertices in graph order.
pub fn connected_components(g: &Graph, excluded: &HashSet<Vertex>) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    for start in 0..n {
        let sv = g.vertices[start];
        if comp[start] != usize::MAX || excluded.contains(&sv) {
            continue;
        }
        let c = out.len();
        comp[start] = c;
        let mut stack = vec![start];
        let mut members = vec![start];
        while let Some(i) = stack.pop() {
            let v = g.vertices[i];
            for (w, _) in g.neighbors(v) {
                let j = g.index[&w];
                if comp[j] == usize::MAX && !excluded.contains(&w) {
                    comp[j] = c;
                    stack.push(j);
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|i| g.vertices[i]).collect());
    }
    out
}

/// Iterative lowpoint DFS shared by the articulation and block routines.
struct Lowpoint {
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<usize>,
}

const NONE: usize = usize::MAX;

/// Runs a DFS from every unvisited root, reporting tree/back edges through
/// `on_edge(parent_idx, child_idx, edge, is_tree)` and finished children via
/// `on_finish(parent_idx, child_idx)`.
fn lowpoint_dfs(
    g: &Graph,
    skip: Option<usize>,
    mut on_edge: impl FnMut(usize, usize, EdgeId, bool, &Lowpoint),
    mut on_finish: impl FnMut(usize, usize, &Lowpoint),
    mut on_root: impl FnMut(usize, usize),
) -> Lowpoint {
    let n = g.vertex_count();
    let mut lp = Lowpoint { disc: vec![NONE; n], low: vec![NONE; n], parent: vec![NONE; n] };
    let mut time = 0;
    for root in 0..n {
        if lp.disc[root] != NONE || Some(root) == skip {
            continue;
        }
        let mut root_children = 0;
        lp.disc[root] = time;
        lp.low[root] = time;
        time += 1;
        // (vertex, next incident position, edge used to enter)
        let mut stack: Vec<(usize, usize, Option<EdgeId>)> = vec![(root, 0, None)];
        while let Some(&mut (v, ref mut pos, via)) = stack.last_mut() {
            let inc = &g.adj[v];
            if *pos < inc.len() {
                let id = inc[*pos];
                *pos += 1;
                if Some(id) == via {
                    continue;
                }
                let w = g.index[&g.edges[id.0].other(g.vertices[v])];
                if Some(w) == skip {
                    continue;
                }
                if lp.disc[w] == NONE {
                    lp.disc[w] = time;
                    lp.low[w] = time;
                    time += 1;
                    lp.parent[w] = v;
                    if v == root {
                        root_children += 1;
                    }
                    on_edge(v, w, id, true, &lp);
                    stack.push((w, 0, Some(id)));
                } else if lp.disc[w] < lp.disc[v] {
                    lp.low[v] = lp.low[v].min(lp.disc[w]);
                    on_edge(v, w, id, false, &lp);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    lp.low[p] = lp.low[p].min(lp.low[v]);
                    on_finish(p, v, &lp);
                }
            }
        }
        on_root(root, root_children);
    }
    lp
}

/// DFS tree of the component of `root` in `g - skip`, with lowpoints,
/// preorder and subtree sizes. Unreached vertices have `disc == usize::MAX`.
pub(crate) struct DfsTree {
    pub disc: Vec<usize>,
    pub low: Vec<usize>,
    pub parent: Vec<usize>,
    pub preorder: Vec<usize>,
    pub size: Vec<usize>,
}

impl DfsTree {
    pub fn reached(&self, i: usize) -> bool {
        self.disc[i] != NONE
    }

    /// Vertices of the subtree of `a`, in preorder.
    pub fn subtree(&self, a: usize) -> &[usize] {
        &self.preorder[self.disc[a]..self.disc[a] + self.size[a]]
    }
}

pub(crate) fn dfs_tree(g: &Graph, root: usize, skip: Option<usize>) -> DfsTree {
    let n = g.vertex_count();
    let mut t = DfsTree {
        disc: vec![NONE; n],
        low: vec![NONE; n],
        parent: vec![NONE; n],
        preorder: Vec::new(),
        size: vec![1; n],
    };
    t.disc[root] = 0;
    t.low[root] = 0;
    t.preorder.push(root);
    let mut stack: Vec<(usize, usize, Option<EdgeId>)> = vec![(root, 0, None)];
    while let Some(&mut (v, ref mut pos, via)) = stack.last_mut() {
        if *pos < g.adj[v].len() {
            let id = g.adj[v][*pos];
            *pos += 1;
            if Some(id) == via {
                continue;
            }
            let w = g.index[&g.edges[id.0].other(g.vertices[v])];
            if Some(w) == skip {
                continue;
            }
            if t.disc[w] == NONE {
                t.disc[w] = t.preorder.len();
                t.low[w] = t.disc[w];
                t.parent[w] = v;
                t.preorder.push(w);
                stack.push((w, 0, Some(id)));
            } else {
                t.low[v] = t.low[v].min(t.disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                t.low[p] = t.low[p].min(t.low[v]);
                t.size[p] += t.size[v];
            }
        }
    }
    t
}

fn articulation_indices(g: &Graph, skip: Option<usize>) -> Vec<bool> {
    let n = g.vertex_count();
    let mut is_cut = vec![false; n];
    let mut roots = Vec::new();
    lowpoint_dfs(
        g,
        skip,
        |_, _, _, _, _| {},
        |p, c, lp| {
            if lp.parent[p] != NONE && lp.low[c] >= lp.disc[p] {
                is_cut[p] = true;
            }
        },
        |root, children| roots.push((root, children)),
    );
    for (root, children) in roots {
        is_cut[root] = children >= 2;
    }
    is_cut
}

pub fn cut_vertices(g: &Graph) -> Vec<Vertex> {
    let is_cut = articulation_indices(g, None);
    (0..g.vertex_count()).filter(|&i| is_cut[i]).map(|i| g.vertices[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge sets of the blocks, in DFS completion order.
    pub blocks: Vec<Vec<EdgeId>>,
    pub cut_vertices: Vec<Vertex>,
    /// Block-cut tree edges: (block index, cut vertex).
    pub tree: Vec<(usize, Vertex)>,
}

impl BlockDecomposition {
    pub fn block_of(&self, id: EdgeId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&id))
    }
}

pub fn blocks(g: &Graph) -> BlockDecomposition {
    let edge_stack: std::cell::RefCell<Vec<EdgeId>> = Default::default();
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    lowpoint_dfs(
        g,
        None,
        |_, _, id, _, _| edge_stack.borrow_mut().push(id),
        |p, c, lp| {
            if lp.low[c] >= lp.disc[p] {
                let tree_edge = g.adj[c]
                    .iter()
                    .copied()
                    .find(|&id| g.index[&g.edges[id.0].other(g.vertices[c])] == p && lp.parent[c] == p)
                    .expect("tree edge present");
                let mut block = Vec::new();
                let mut stack = edge_stack.borrow_mut();
                while let Some(id) = stack.pop() {
                    block.push(id);
                    if id == tree_edge {
                        break;
                    }
                }
                block.sort_unstable();
                out.push(block);
            }
        },
        |_, _| {},
    );
    let cuts = cut_vertices(g);
    let mut tree = Vec::new();
    for (bi, b) in out.iter().enumerate() {
        let mut seen = HashSet::new();
        for &id in b {
            let e = g.edge(id);
            for x in [e.u, e.v] {
                if cuts.contains(&x) && seen.insert(x) {
                    tree.push((bi, x));
                }
            }
        }
    }
    tree.sort_by_key(|&(b, x)| (b, g.position(x)));
    BlockDecomposition { blocks: out, cut_vertices: cuts, tree }
}

/// All pairs {u, v} (ordered by graph position) whose removal disconnects
/// the remaining vertices. For each `u`, the partners are the articulation
/// points of `g - u`.
pub fn two_separators(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        if n < 4 {
            break;
        }
        let is_cut = articulation_indices(g, Some(a));
        let mut removed: HashSet<Vertex> = [g.vertices[a]].into_iter().collect();
        let split = connected_components(g, &removed).len() > 1;
        for (&vb, &cut_b) in g.vertices[a + 1..].iter().zip(&is_cut[a + 1..]) {
            let separates = if split {
                // g - a is already disconnected: fall back to a direct check
                removed.insert(vb);
                let k = connected_components(g, &removed).len();
                removed.remove(&vb);
                k > 1
            } else {
                cut_b
            };
            if separates {
                out.push((g.vertices[a], vb));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn brute_two_separators(g: &Graph) -> Vec<(Vertex, Vertex)> {
        let vs = g.vertices();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let ex: HashSet<Vertex> = [vs[i], vs[j]].into_iter().collect();
                if connected_components(g, &ex).len() > 1 {
                    out.push((vs[i], vs[j]));
                }
            }
        }
        out
    }

    #[test]
    fn build_graph_merges_and_rejects() {
        let (g, names) = build_graph(&[("a", "b", 3)]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(names, vec!["a", "b"]);
        let (g, _) = build_graph(&[("a", "b", 2), ("b", "a", 3)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge(EdgeId(0)).cap, 5);
        assert_eq!(build_graph(&[("a", "a", 1)]).unwrap_err(), Error::SelfLoop(v(0)));
        assert!(matches!(build_graph(&[("a", "b", -1)]), Err(Error::NegativeCapacity { .. })));
    }

    #[test]
    fn components_examples() {
        let path = graph(&[(0, 1, 1), (1, 2, 1)]);
        let ex: HashSet<_> = [v(1)].into_iter().collect();
        assert_eq!(connected_components(&path, &ex), vec![vec![v(0)], vec![v(2)]]);
        let tri = graph(&[(0, 1, 1), (1, 2, 1), (2, 0, 1)]);
        assert_eq!(connected_components(&tri, &HashSet::new()), vec![vec![v(0), v(1), v(2)]]);
        // C4 s1 s2 t1 t2 with s1=0, t1=1, s2=2, t2=3
        let c4 = graph(&[(0, 2, 1), (2, 1, 1), (1, 3, 1), (3, 0, 1)]);
        let ex: HashSet<_> = [v(2), v(3)].into_iter().collect();
        assert_eq!(connected_components(&c4, &ex), vec![vec![v(0)], vec![v(1)]]);
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&graph(&[(0, 1, 1), (1, 2, 1)])), vec![v(1)]);
        assert!(cut_vertices(&graph(&[(0, 1, 1), (1, 2, 1), (2, 0, 1)])).is_empty());
        let bowtie = graph(&[(0, 1, 1), (1, 9, 1), (9, 0, 1), (9, 2, 1), (2, 3, 1), (3, 9, 1)]);
        assert_eq!(cut_vertices(&bowtie), vec![v(9)]);
    }

    #[test]
    fn block_examples() {
        let bowtie = graph(&[(0, 1, 1), (1, 9, 1), (9, 0, 1), (9, 2, 1), (2, 3, 1), (3, 9, 1)]);
        let b = blocks(&bowtie);
        assert_eq!(b.blocks.len(), 2);
        assert_eq!(b.tree.len(), 2);
        assert_eq!(blocks(&graph(&[(0, 1, 1), (1, 2, 1), (2, 0, 1)])).blocks.len(), 1);
        let p3 = blocks(&graph(&[(0, 1, 1), (1, 2, 1), (2, 3, 1)]));
        assert_eq!(p3.blocks.len(), 3);
        assert_eq!(p3.blocks.iter().map(Vec::len).sum::<usize>(), 3);
    }

    #[test]
    fn two_separator_examples() {
        let c4 = graph(&[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]);
        assert_eq!(two_separators(&c4), vec![(v(0), v(2)), (v(1), v(3))]);
        let k4 = graph(&[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        assert!(two_separators(&k4).is_empty());
        let theta = graph(&[(0, 2, 1), (2, 1, 1), (0, 3, 1), (3, 1, 1), (0, 4, 1), (4, 1, 1)]);
        assert_eq!(two_separators(&theta), vec![(v(0), v(1))]);
    }

    #[test]
    fn two_separators_match_pair_removal() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..9u32);
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(v(i));
            }
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(v(a), v(b), 1).unwrap();
                    }
                }
            }
            assert_eq!(two_separators(&g), brute_two_separators(&g));
            let bd = blocks(&g);
            assert_eq!(bd.blocks.iter().map(Vec::len).sum::<usize>(), g.edge_count());
        }
    }

    #[test]
    fn augment_adds_zero_edges() {
        let c4 = graph(&[(0, 2, 1), (2, 1, 1), (1, 3, 1), (3, 0, 1)]);
        let inst = Instance::new(c4, Terminals::new(v(0), v(1), v(2), v(3))).unwrap();
        assert_eq!(inst.graph().edge_count(), 6);
        assert_eq!(inst.graph().edge(inst.e1()).cap, 0);
        let g = graph(&[(0, 1, 5)]);
        let inst = Instance::new(g, Terminals::new(v(0), v(1), v(2), v(3))).unwrap();
        assert_eq!(inst.graph().edge(inst.e1()).cap, 5);
        let dup = Instance::new(Graph::new(), Terminals::new(v(0), v(0), v(2), v(3)));
        assert_eq!(dup.unwrap_err(), Error::DuplicateTerminal);
    }
}
