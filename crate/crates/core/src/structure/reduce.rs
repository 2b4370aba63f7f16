//! Preprocessing: drop blocks that carry no direct edge, split when the two
//! direct edges live in different blocks, and contract terminal-free lobes
//! hanging off 2-separators onto a single boosted edge.

use std::collections::HashSet;

use crate::error::Result;
use crate::flowops::{splice, split_units, ArcFlow, Biflow};
use crate::graph::{blocks, dfs_tree, Cap, Graph, Instance, Terminals, Vertex};
use crate::maxflow::max_flow;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Blocks containing neither direct edge were removed.
    BlockDrop { blocks: usize, edges: usize },
    /// `e1` and `e2` lie in different blocks; each commodity is a plain max
    /// flow inside its own block.
    BlockSplit { first: Graph, second: Graph },
    /// The terminal-free side `side` of the separator `{a, b}` was replaced
    /// by the edge `ab`, whose capacity grew from `base_capacity` by the
    /// value of the `a -> b` flow `inner` through the side.
    TwoSepContraction { a: Vertex, b: Vertex, side: Graph, inner: ArcFlow, inner_value: Cap, base_capacity: Cap },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrail {
    pub steps: Vec<Reduction>,
}

impl ReductionTrail {
    pub fn summary(&self) -> String {
        let (mut dropped, mut split, mut contracted) = (0, false, 0);
        for step in &self.steps {
            match step {
                Reduction::BlockDrop { blocks, .. } => dropped += blocks,
                Reduction::BlockSplit { .. } => split = true,
                Reduction::TwoSepContraction { .. } => contracted += 1,
            }
        }
        format!("dropped_blocks={dropped} split={split} contractions={contracted}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    /// A 2-connected instance where every 2-separation separates `e1` from `e2`.
    Core(Instance),
    /// Blocks of `e1` and of `e2` respectively.
    Split { first: Graph, second: Graph },
}

pub fn reduce(inst: &Instance) -> (Reduced, ReductionTrail) {
    let g = inst.graph();
    let t = inst.terminals();
    let dec = blocks(g);
    let b1 = dec.block_of(inst.e1()).expect("every edge lies in a block");
    let b2 = dec.block_of(inst.e2()).expect("every edge lies in a block");
    let mut trail = ReductionTrail::default();
    let kept = if b1 == b2 { 1 } else { 2 };
    if dec.blocks.len() > kept {
        let edges = g.edge_count() - dec.blocks[b1].len() - if b1 == b2 { 0 } else { dec.blocks[b2].len() };
        trail.steps.push(Reduction::BlockDrop { blocks: dec.blocks.len() - kept, edges });
    }
    if b1 != b2 {
        let first = g.edge_subgraph(dec.blocks[b1].iter().copied(), &[t.s1, t.t1]);
        let second = g.edge_subgraph(dec.blocks[b2].iter().copied(), &[t.s2, t.t2]);
        trail.steps.push(Reduction::BlockSplit { first: first.clone(), second: second.clone() });
        return (Reduced::Split { first, second }, trail);
    }
    let mut core = g.edge_subgraph(dec.blocks[b1].iter().copied(), &t.all());
    while let Some(steps) = contract_lobes(&mut core, &t) {
        trail.steps.extend(steps);
    }
    let inst = Instance::new(core, t).expect("terminals stay distinct");
    (Reduced::Core(inst), trail)
}

struct Lobe {
    a: Vertex,
    b: Vertex,
    inner: Vec<Vertex>,
}

/// One pass: find the maximal terminal-free lobes, contract a disjoint
/// selection of them (largest first). `None` when there is nothing to do.
fn contract_lobes(g: &mut Graph, t: &Terminals) -> Option<Vec<Reduction>> {
    let lobes = find_lobes(g, t);
    if lobes.is_empty() {
        return None;
    }
    let mut used_inner: HashSet<Vertex> = HashSet::new();
    let mut used_boundary: HashSet<Vertex> = HashSet::new();
    let mut steps = Vec::new();
    for lobe in lobes {
        if used_inner.contains(&lobe.a)
            || used_inner.contains(&lobe.b)
            || lobe.inner.iter().any(|x| used_inner.contains(x) || used_boundary.contains(x))
        {
            continue;
        }
        used_inner.extend(lobe.inner.iter().copied());
        used_boundary.extend([lobe.a, lobe.b]);
        let inner_set: HashSet<Vertex> = lobe.inner.iter().copied().collect();
        let side_edges: Vec<_> =
            g.edges().filter(|(_, e)| inner_set.contains(&e.u) || inner_set.contains(&e.v)).map(|(id, _)| id).collect();
        let side = g.edge_subgraph(side_edges, &[lobe.a, lobe.b]);
        let (inner, cut) = max_flow(&side, &[lobe.a], &[lobe.b]).expect("boundary vertices are distinct");
        let base_capacity = g.capacity_between(lobe.a, lobe.b);
        let mut next = g.without_vertices(&inner_set);
        next.add_edge(lobe.a, lobe.b, cut.capacity).expect("distinct boundary, nonnegative value");
        *g = next;
        steps.push(Reduction::TwoSepContraction {
            a: lobe.a,
            b: lobe.b,
            side,
            inner,
            inner_value: cut.capacity,
            base_capacity,
        });
    }
    Some(steps)
}

/// For every vertex `a`, DFS `g - a` from a terminal; a child subtree whose
/// lowpoint does not climb above its parent `b` is a component of
/// `g - {a, b}`, and a lobe when it holds no terminal. Returns maximal
/// lobes sorted by size (descending), then by boundary position.
fn find_lobes(g: &Graph, t: &Terminals) -> Vec<Lobe> {
    let n = g.vertex_count();
    let is_term: Vec<bool> = g.vertices().iter().map(|&x| t.contains(x)).collect();
    let mut out: Vec<(usize, usize, usize, Vec<Vertex>)> = Vec::new();
    for a in 0..n {
        let root = (0..n).find(|&i| i != a && is_term[i]).expect("four terminals");
        let tree = dfs_tree(g, root, Some(a));
        // terminals before each preorder position
        let mut prefix = vec![0usize; tree.preorder.len() + 1];
        for (k, &i) in tree.preorder.iter().enumerate() {
            prefix[k + 1] = prefix[k] + is_term[i] as usize;
        }
        let mut candidates: Vec<usize> = Vec::new();
        for &c in tree.preorder.iter().skip(1) {
            let p = tree.parent[c];
            let (lo, hi) = (tree.disc[c], tree.disc[c] + tree.size[c]);
            if tree.low[c] >= tree.disc[p] && prefix[hi] == prefix[lo] {
                candidates.push(c);
            }
        }
        // keep subtrees not nested in an earlier (preorder) candidate
        let mut reach_end = 0;
        for c in candidates {
            if tree.disc[c] < reach_end {
                continue;
            }
            reach_end = tree.disc[c] + tree.size[c];
            let mut inner: Vec<usize> = tree.subtree(c).to_vec();
            inner.sort_unstable();
            let b = tree.parent[c];
            out.push((inner.len(), a.min(b), a.max(b), inner.into_iter().map(|i| g.vertices()[i]).collect()));
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)).then(x.3.cmp(&y.3)));
    out.into_iter().map(|(_, a, b, inner)| Lobe { a: g.vertices()[a], b: g.vertices()[b], inner }).collect()
}

/// Replays the contractions backwards: whatever either commodity sends
/// across a boosted edge beyond its original capacity is rerouted through
/// the contracted side's inner flow.
pub fn splice_back(trail: &ReductionTrail, b: Biflow) -> Result<Biflow> {
    let mut b = b;
    for step in trail.steps.iter().rev() {
        if let Reduction::TwoSepContraction { a, b: bb, inner, inner_value, .. } = step {
            let (a, bb) = (*a, *bb);
            let x1 = b.f1.net(a, bb).abs();
            let x2 = b.f2.net(a, bb).abs();
            let r1 = x1.min(*inner_value);
            let r2 = x2.min(inner_value - r1);
            let parts = split_units(inner, a, bb, &[r1, r2])?;
            let f1 = splice(&b.f1, a, bb, &parts[0], r1)?;
            let f2 = splice(&b.f2, a, bb, &parts[1], r2)?;
            b = Biflow::new(f1, f2);
        }
    }
    Ok(b)
}
