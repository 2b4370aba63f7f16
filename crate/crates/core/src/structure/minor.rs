//! Exhaustive search for the labelled forbidden minor.
//!
//! The forbidden graph is the 4-cycle `s1, s2, a, b` with `t1` pendant at
//! `a` and `t2` pendant at `b`, taken up to interchanging `s1 <-> t1` and
//! `s2 <-> t2`. Adding back `e1` and `e2` gives K4 with both direct edges
//! subdivided. A minor is a family of disjoint connected branch sets, one
//! per vertex of that graph, with the terminals in their own sets and an
//! edge of `G` between every pair of sets that must be adjacent.
//!
//! Every vertex of the terminals' component can be absorbed into a
//! neighbouring branch set without destroying the model, so the search
//! only assigns each non-terminal vertex to one of the six sets.

use crate::error::{Error, Result};
use crate::graph::{connected_components, Instance};

pub const MINOR_MAX_VERTICES: usize = 12;

// Branch set indices.
const XS1: usize = 0;
const XT1: usize = 1;
const XS2: usize = 2;
const XT2: usize = 3;
const XA: usize = 4;
const XB: usize = 5;

pub fn k4star_minor(inst: &Instance) -> Result<bool> {
    let g = inst.graph();
    if g.vertex_count() > MINOR_MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "{} vertices, minor search allows {MINOR_MAX_VERTICES}",
            g.vertex_count()
        )));
    }
    let t = inst.terminals();
    let comps = connected_components(g, &Default::default());
    let Some(comp) = comps.iter().find(|c| c.contains(&t.s1)) else { unreachable!() };
    if !t.all().iter().all(|x| comp.contains(x)) {
        return Ok(false);
    }
    let local = |x| comp.iter().position(|&y| y == x).expect("in component");
    let mut adj = vec![0u32; comp.len()];
    for (_, e) in g.edges() {
        if comp.contains(&e.u) {
            let (a, b) = (local(e.u), local(e.v));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut masks = [0u32; 6];
    for (set, x) in [(XS1, t.s1), (XT1, t.t1), (XS2, t.s2), (XT2, t.t2)] {
        masks[set] |= 1 << local(x);
    }
    let free: Vec<usize> = (0..comp.len()).filter(|&i| !t.contains(comp[i])).collect();
    Ok(assign(&adj, &free, &mut masks))
}

fn assign(adj: &[u32], free: &[usize], masks: &mut [u32; 6]) -> bool {
    let Some((&x, rest)) = free.split_first() else { return is_model(adj, masks) };
    for set in 0..6 {
        masks[set] |= 1 << x;
        let found = assign(adj, rest, masks);
        masks[set] &= !(1 << x);
        if found {
            return true;
        }
    }
    false
}

fn neighbourhood(adj: &[u32], mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= adj[i];
        m &= m - 1;
    }
    out
}

fn connected(adj: &[u32], mask: u32) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let next = reached | (neighbourhood(adj, reached) & mask);
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

fn is_model(adj: &[u32], masks: &[u32; 6]) -> bool {
    if !masks.iter().all(|&m| connected(adj, m)) {
        return false;
    }
    let near: Vec<u32> = masks.iter().map(|&m| neighbourhood(adj, m)).collect();
    let touch = |i: usize, j: usize| near[i] & masks[j] != 0;
    // roles (s1, t1, s2, t2) under the four interchanges
    for (rs1, rt1) in [(XS1, XT1), (XT1, XS1)] {
        for (rs2, rt2) in [(XS2, XT2), (XT2, XS2)] {
            if touch(rt1, XA) && touch(rt2, XB) && touch(rs1, rs2) && touch(rs1, XB) && touch(XA, rs2) && touch(XA, XB)
            {
                return true;
            }
        }
    }
    false
}
