//! Seeded random instances for each structural class.
//!
//! All Seymour classes are built from the same parts: a plane "body" made
//! of a polygon with a random triangulation (some chords dropped), and
//! 3-connected pieces 3-summed onto triangles. A piece with `k` new vertices
//! is `K_{3,k}` on the triangle plus random edges among the new vertices,
//! which is 3-connected and, for `k >= 3`, not planar.
//!
//! Vertices 0..4 are `s1, t1, s2, t2` before any relabelling; capacities
//! are drawn from `1..=capmax` (all zero when `capmax` is 0), so zero
//! capacities only come from augmentation unless a caller adds them.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Cap, Graph, Instance, Terminals, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    /// Plane body with `s1, s2, t2, t1` on the outer cycle.
    Planar,
    /// One commodity glued onto the body at `{u1, v1}`.
    Gluing2,
    /// Both commodities glued at `{u1, v1}` and `{u2, v2}`.
    Gluing3,
    /// Only trivial, three-footed and split bridges.
    Bridges,
    /// Subdivisions of the 6-vertex forbidden graph: not Seymour.
    Forbidden,
}

impl Class {
    pub const ALL: [Class; 5] = [Class::Planar, Class::Gluing2, Class::Gluing3, Class::Bridges, Class::Forbidden];
    pub const SEYMOUR: [Class; 4] = [Class::Planar, Class::Gluing2, Class::Gluing3, Class::Bridges];

    pub fn name(self) -> &'static str {
        match self {
            Class::Planar => "planar",
            Class::Gluing2 => "gluing2",
            Class::Gluing3 => "gluing3",
            Class::Bridges => "bridges",
            Class::Forbidden => "forbidden",
        }
    }

    /// Smallest vertex count the class can produce.
    pub fn min_size(self) -> usize {
        match self {
            Class::Planar | Class::Bridges => 4,
            Class::Gluing2 | Class::Gluing3 | Class::Forbidden => 6,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Class> {
        Class::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

const S1: Vertex = Vertex(0);
const T1: Vertex = Vertex(1);
const S2: Vertex = Vertex(2);
const T2: Vertex = Vertex(3);

struct Builder {
    g: Graph,
    next: u32,
    rng: ChaCha8Rng,
    capmax: Cap,
}

impl Builder {
    fn new(capmax: Cap, seed: u64) -> Builder {
        let mut g = Graph::new();
        for v in [S1, T1, S2, T2] {
            g.add_vertex(v);
        }
        Builder { g, next: 4, rng: ChaCha8Rng::seed_from_u64(seed), capmax }
    }

    fn fresh(&mut self) -> Vertex {
        let v = Vertex(self.next);
        self.next += 1;
        self.g.add_vertex(v);
        v
    }

    fn cap(&mut self) -> Cap {
        if self.capmax <= 0 {
            0
        } else {
            self.rng.gen_range(1..=self.capmax)
        }
    }

    /// Adds `ab` with a random capacity unless it is already present.
    fn edge(&mut self, a: Vertex, b: Vertex) {
        if a != b && self.g.find_edge(a, b).is_none() {
            let c = self.cap();
            self.g.add_edge(a, b, c).expect("distinct endpoints");
        }
    }

    /// Cycle through `poly` with a random triangulation; each chord is kept
    /// with probability `keep`. Returns the triangles that stay faces.
    fn polygon(&mut self, poly: &[Vertex], keep: f64) -> Vec<[Vertex; 3]> {
        let n = poly.len();
        if n == 2 {
            self.edge(poly[0], poly[1]);
            return Vec::new();
        }
        for i in 0..n {
            self.edge(poly[i], poly[(i + 1) % n]);
        }
        let mut triangles = Vec::new();
        let mut stack = vec![(0, n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let apex = self.rng.gen_range(lo + 1..hi);
            triangles.push([lo, apex, hi]);
            stack.push((lo, apex));
            stack.push((apex, hi));
        }
        let on_cycle = |a: usize, b: usize| a.abs_diff(b) == 1 || a.abs_diff(b) == n - 1;
        let mut dropped = Vec::new();
        for &[a, b, c] in &triangles {
            for (x, y) in [(a, b), (b, c), (a, c)] {
                if !on_cycle(x, y) && !dropped.contains(&(x, y)) && self.g.find_edge(poly[x], poly[y]).is_none() {
                    if self.rng.gen_bool(keep) {
                        self.edge(poly[x], poly[y]);
                    } else {
                        dropped.push((x, y));
                    }
                }
            }
        }
        triangles
            .into_iter()
            .filter(|t| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])].iter().all(|e| !dropped.contains(e)))
            .map(|[a, b, c]| [poly[a], poly[b], poly[c]])
            .collect()
    }

    /// 3-sums a `K_{3,k}`-based piece with `k` new vertices onto `tri`.
    fn piece(&mut self, tri: [Vertex; 3], k: usize) {
        let fresh: Vec<Vertex> = (0..k).map(|_| self.fresh()).collect();
        for &x in &fresh {
            for &a in &tri {
                self.edge(x, a);
            }
        }
        for _ in 0..k / 2 {
            let (x, y) = (*fresh.choose(&mut self.rng).expect("k > 0"), *fresh.choose(&mut self.rng).expect("k > 0"));
            self.edge(x, y);
        }
    }

    /// Spreads `budget` new vertices over pieces on distinct triangles
    /// chosen from `must` (each used) and `optional`.
    fn pieces(&mut self, must: &[[Vertex; 3]], optional: &[[Vertex; 3]], budget: usize) {
        let mut tris: Vec<[Vertex; 3]> = optional.to_vec();
        tris.shuffle(&mut self.rng);
        let take = budget.saturating_sub(must.len()).min(tris.len());
        let take = if take == 0 { 0 } else { self.rng.gen_range(1..=take) };
        let mut chosen: Vec<[Vertex; 3]> = must.to_vec();
        chosen.extend(tris.into_iter().take(take));
        if chosen.is_empty() || budget == 0 {
            return;
        }
        let used = chosen.len().min(budget);
        let mut sizes = vec![1; used];
        for _ in used..budget {
            let i = self.rng.gen_range(0..used);
            sizes[i] += 1;
        }
        for (tri, k) in chosen.into_iter().zip(sizes) {
            self.piece(tri, k);
        }
    }

    /// Connected random piece of `k` new vertices, every foot attached.
    fn blob(&mut self, k: usize, feet: &[Vertex]) -> Vec<Vertex> {
        let fresh: Vec<Vertex> = (0..k).map(|_| self.fresh()).collect();
        for i in 1..k {
            let j = self.rng.gen_range(0..i);
            self.edge(fresh[i], fresh[j]);
        }
        for _ in 0..k / 2 {
            let (a, b) = (self.rng.gen_range(0..k), self.rng.gen_range(0..k));
            self.edge(fresh[a], fresh[b]);
        }
        for &f in feet {
            for _ in 0..self.rng.gen_range(1..=2) {
                let x = fresh[self.rng.gen_range(0..k)];
                self.edge(f, x);
            }
        }
        fresh
    }

    fn finish(&mut self, t: Terminals) -> Instance {
        Instance::new(std::mem::replace(&mut self.g, Graph::new()), t).expect("generated terminals are distinct")
    }
}

/// Deterministic instance of `class` with about `n` vertices (at least
/// [`Class::min_size`]).
pub fn generate(class: Class, n: usize, capmax: Cap, seed: u64) -> Instance {
    let n = n.max(class.min_size());
    let mut b = Builder::new(capmax, seed);
    match class {
        Class::Planar => planar(&mut b, n),
        Class::Gluing2 => gluing2(&mut b, n),
        Class::Gluing3 => gluing3(&mut b, n),
        Class::Bridges => bridges(&mut b, n),
        Class::Forbidden => forbidden(&mut b, n),
    }
}

fn planar(b: &mut Builder, n: usize) -> Instance {
    if n == 4 {
        // smallest member: the bare outer cycle
        for (x, y) in [(S1, S2), (S2, T2), (T2, T1), (T1, S1)] {
            b.edge(x, y);
        }
        return b.finish(Terminals::new(S1, T1, S2, T2));
    }
    let budget = n - 4;
    let extra = b.rng.gen_range(budget / 2..=budget);
    let len = 4 + extra;
    let mut slots: Vec<usize> = (0..len).collect();
    slots.shuffle(&mut b.rng);
    let mut marks: Vec<usize> = slots[..4].to_vec();
    marks.sort_unstable();
    let mut cycle: Vec<Option<Vertex>> = vec![None; len];
    for (slot, v) in marks.into_iter().zip([S1, S2, T2, T1]) {
        cycle[slot] = Some(v);
    }
    let cycle: Vec<Vertex> = cycle.into_iter().map(|x| x.unwrap_or_else(|| b.fresh())).collect();
    let faces = b.polygon(&cycle, 0.7);
    b.pieces(&[], &faces, budget - extra);
    let t = Terminals::new(S1, T1, S2, T2);
    let t = if b.rng.gen_bool(0.5) { t.swap_second() } else { t };
    b.finish(t)
}

/// Body polygon for the gluing classes: `fixed` vertices at the given
/// cyclic positions, fresh vertices elsewhere.
fn body(b: &mut Builder, len: usize, fixed: &[(usize, Vertex)]) -> (Vec<Vertex>, Vec<[Vertex; 3]>) {
    let mut cycle: Vec<Option<Vertex>> = vec![None; len];
    for &(i, v) in fixed {
        cycle[i] = Some(v);
    }
    let cycle: Vec<Vertex> = cycle.into_iter().map(|x| x.unwrap_or_else(|| b.fresh())).collect();
    let faces = b.polygon(&cycle, 0.7);
    (cycle, faces)
}

/// `s, t` joined to each other and to `u`, `v`.
fn glue(b: &mut Builder, s: Vertex, t: Vertex, u: Vertex, v: Vertex) {
    for (x, y) in [(s, t), (s, u), (s, v), (t, u), (t, v)] {
        b.edge(x, y);
    }
}

fn sorted_slots(b: &mut Builder, len: usize, k: usize) -> Vec<usize> {
    let mut slots: Vec<usize> = (0..len).collect();
    slots.shuffle(&mut b.rng);
    let mut out = slots[..k].to_vec();
    out.sort_unstable();
    out
}

fn gluing2(b: &mut Builder, n: usize) -> Instance {
    // body cycle holds s2 t2 (adjacent) and u1, v1
    let budget = n - 6;
    let extra = b.rng.gen_range(budget / 2..=budget);
    let len = 4 + extra;
    let (u, v) = (Vertex(4), Vertex(5));
    b.next = 6;
    b.g.add_vertex(u);
    b.g.add_vertex(v);
    let rest = sorted_slots(b, len - 2, 2);
    let (pu, pv) = if b.rng.gen_bool(0.5) { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
    let (_, faces) = body(b, len, &[(0, S2), (1, T2), (pu + 2, u), (pv + 2, v)]);
    glue(b, S1, T1, u, v);
    b.pieces(&[], &[[S1, T1, u], [S1, T1, v]].iter().copied().chain(faces).collect::<Vec<_>>(), budget - extra);
    let t = Terminals::new(S1, T1, S2, T2);
    let t = if b.rng.gen_bool(0.5) { t.swap_commodities() } else { t };
    b.finish(t)
}

fn gluing3(b: &mut Builder, n: usize) -> Instance {
    let budget = n - 6;
    if budget == 0 {
        // H = K2 on u = 4, v = 5
        let (u, v) = (b.fresh(), b.fresh());
        b.edge(u, v);
        glue(b, S1, T1, u, v);
        glue(b, S2, T2, u, v);
        return b.finish(Terminals::new(S1, T1, S2, T2));
    }
    let extra = b.rng.gen_range(0..=budget - 1);
    // cycle of at least three vertices holding v1, u1, u2, v2 clockwise
    let len = (3 + extra).max(3);
    let distinct = if len >= 4 && b.rng.gen_bool(0.6) { 4 } else { 3 };
    let slots = sorted_slots(b, len, distinct);
    let (cycle, faces) = body(b, len, &[]);
    let at = |i: usize| cycle[slots[i]];
    let (v1, u1, u2, v2) = match (distinct, b.rng.gen_bool(0.5)) {
        (4, _) => (at(0), at(1), at(2), at(3)),
        (_, true) => (at(0), at(1), at(1), at(2)),
        (_, false) => (at(0), at(1), at(2), at(0)),
    };
    glue(b, S1, T1, u1, v1);
    glue(b, S2, T2, u2, v2);
    let spent = len - 2;
    let sides = [[S1, T1, u1], [S1, T1, v1], [S2, T2, u2], [S2, T2, v2]];
    let all: Vec<[Vertex; 3]> = sides.iter().copied().chain(faces).collect();
    b.pieces(&[], &all, budget.saturating_sub(spent));
    b.finish(Terminals::new(S1, T1, S2, T2))
}

fn bridges(b: &mut Builder, n: usize) -> Instance {
    let mut budget = n - 4;
    for (x, y) in [(S1, S2), (S1, T2), (T1, S2), (T1, T2)] {
        if b.rng.gen_bool(0.5) {
            b.edge(x, y);
        }
    }
    if b.rng.gen_bool(0.5) {
        b.edge(S1, T1);
    }
    if b.rng.gen_bool(0.5) {
        b.edge(S2, T2);
    }
    let cap = (n / 3).max(1);
    while budget > 0 {
        let k = b.rng.gen_range(1..=budget.min(cap));
        match b.rng.gen_range(0..10) {
            0..=4 => {
                let (s, t, others) = if b.rng.gen_bool(0.5) { (S1, T1, [S2, T2]) } else { (S2, T2, [S1, T1]) };
                let r = *others.choose(&mut b.rng).expect("two choices");
                b.blob(k, &[s, t, r]);
                budget -= k;
            }
            5..=8 if k >= 2 => {
                let k1 = b.rng.gen_range(1..k);
                let first = b.blob(k1, &[S1, T1]);
                let x = first[0];
                let second = b.blob(k - k1, &[S2, T2]);
                b.edge(x, second[0]);
                budget -= k;
            }
            _ => {
                // two feet on a pair or across the pairs
                let feet = [[S1, T1], [S2, T2], [S1, S2], [T1, T2], [S1, T2], [T1, S2]];
                let f = *feet.choose(&mut b.rng).expect("six choices");
                b.blob(k, &f);
                budget -= k;
            }
        }
    }
    b.finish(Terminals::new(S1, T1, S2, T2))
}

fn forbidden(b: &mut Builder, n: usize) -> Instance {
    // cycle s1 s2 a b, t1 pendant at a, t2 pendant at b
    let (a, c) = (b.fresh(), b.fresh());
    let mut edges = vec![(S1, S2), (S2, a), (a, c), (c, S1), (T1, a), (T2, c)];
    for _ in 6..n {
        let i = b.rng.gen_range(0..edges.len());
        let (x, y) = edges.swap_remove(i);
        let mid = b.fresh();
        edges.push((x, mid));
        edges.push((mid, y));
    }
    for (x, y) in edges {
        b.edge(x, y);
    }
    b.finish(Terminals::new(S1, T1, S2, T2))
}

/// Hangs `count` terminal-free attachments on `inst`: 2-separated lobes
/// across existing edges and pendant blocks at single vertices. Neither
/// changes the maximum biflow beyond the capacity a lobe adds to its edge,
/// and both are removed again by the reductions.
pub fn attach_lobes_and_blocks(inst: &Instance, count: usize, capmax: Cap, seed: u64) -> Instance {
    let g = inst.graph();
    let mut b = Builder {
        g: g.clone(),
        next: g.vertices().iter().map(|v| v.0 + 1).max().unwrap_or(0),
        rng: ChaCha8Rng::seed_from_u64(seed),
        capmax,
    };
    let edges: Vec<(Vertex, Vertex)> = g.edges().map(|(_, e)| (e.u, e.v)).collect();
    let vertices: Vec<Vertex> = g.vertices().to_vec();
    for _ in 0..count {
        let k = b.rng.gen_range(1..=4);
        if b.rng.gen_bool(0.6) {
            let (x, y) = *edges.choose(&mut b.rng).expect("instances have e1 and e2");
            b.blob(k, &[x, y]);
        } else {
            let x = *vertices.choose(&mut b.rng).expect("nonempty");
            let fresh = b.blob(k, &[x]);
            // close a cycle so the block is 2-connected
            let last = *fresh.last().expect("k > 0");
            b.edge(x, last);
        }
    }
    b.finish(inst.terminals())
}
