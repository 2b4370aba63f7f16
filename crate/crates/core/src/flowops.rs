//! Arc flows and the operations the constructions are built from:
//! divergence, normalization, the combination rule, path decomposition,
//! uncrossing, reversal, concatenation and splicing.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Cap, Graph, Terminals, Vertex};

/// Nonnegative integral flow on arcs `(u, v)`. Always normalized: for every
/// pair at most one direction is stored, and zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcFlow {
    arcs: BTreeMap<(Vertex, Vertex), Cap>,
}

impl ArcFlow {
    /// Sums the given raw arc values and normalizes the result.
    pub fn from_arcs(raw: impl IntoIterator<Item = ((Vertex, Vertex), Cap)>) -> ArcFlow {
        let mut net: BTreeMap<(Vertex, Vertex), Cap> = BTreeMap::new();
        for ((u, v), x) in raw {
            assert!(x >= 0, "arc flow values are nonnegative");
            if u == v || x == 0 {
                continue;
            }
            if u < v {
                *net.entry((u, v)).or_insert(0) += x;
            } else {
                *net.entry((v, u)).or_insert(0) -= x;
            }
        }
        let arcs = net
            .into_iter()
            .filter(|&(_, x)| x != 0)
            .map(|((u, v), x)| if x > 0 { ((u, v), x) } else { ((v, u), -x) })
            .collect();
        ArcFlow { arcs }
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Cap {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    /// `f(u,v) - f(v,u)`.
    pub fn net(&self, u: Vertex, v: Vertex) -> Cap {
        self.get(u, v) - self.get(v, u)
    }

    /// Usage of the edge `uv` in either direction.
    pub fn load(&self, u: Vertex, v: Vertex) -> Cap {
        self.get(u, v) + self.get(v, u)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Vertex, Vertex), Cap)> + '_ {
        self.arcs.iter().map(|(&a, &x)| (a, x))
    }

    pub fn is_zero(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.arcs.len()
    }

    pub fn divergences(&self) -> BTreeMap<Vertex, Cap> {
        let mut div = BTreeMap::new();
        for (&(u, v), &x) in &self.arcs {
            *div.entry(u).or_insert(0) += x;
            *div.entry(v).or_insert(0) -= x;
        }
        div
    }

    /// Total divergence of a vertex set.
    pub fn value(&self, sources: &[Vertex]) -> Cap {
        sources.iter().map(|&s| divergence(self, s)).sum()
    }

    /// Normalized sum of two flows.
    pub fn plus(&self, other: &ArcFlow) -> ArcFlow {
        ArcFlow::from_arcs(self.iter().chain(other.iter()))
    }

    /// Arc-wise difference; `other` must be arc-wise below `self`.
    pub fn minus(&self, other: &ArcFlow) -> ArcFlow {
        let mut arcs = self.arcs.clone();
        for (a, x) in other.iter() {
            let e = arcs.get_mut(&a).expect("subtracting a flow that is not arc-wise below");
            *e -= x;
            assert!(*e >= 0, "subtracting a flow that is not arc-wise below");
        }
        arcs.retain(|_, x| *x > 0);
        ArcFlow { arcs }
    }

    /// Whether `self(a) <= other(a)` on every arc.
    pub fn is_below(&self, other: &ArcFlow) -> bool {
        self.iter().all(|((u, v), x)| x <= other.get(u, v))
    }

    /// Drops every arc touching `v`.
    pub fn without_vertex(&self, v: Vertex) -> ArcFlow {
        let arcs = self.arcs.iter().filter(|(&(a, b), _)| a != v && b != v).map(|(&k, &x)| (k, x)).collect();
        ArcFlow { arcs }
    }

    /// Renames vertices; arcs that become loops vanish.
    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> ArcFlow {
        ArcFlow::from_arcs(self.iter().map(|((u, v), x)| ((f(u), f(v)), x)))
    }

    /// Whether every arc lies on an edge of `g` with `f(a) <= c`.
    pub fn fits(&self, g: &Graph) -> bool {
        self.iter().all(|((u, v), x)| g.find_edge(u, v).is_some_and(|id| x <= g.edge(id).cap))
    }
}

/// Outflow minus inflow at `v`.
pub fn divergence(f: &ArcFlow, v: Vertex) -> Cap {
    f.iter()
        .map(|((a, b), x)| {
            if a == v {
                x
            } else if b == v {
                -x
            } else {
                0
            }
        })
        .sum()
}

/// Cancels opposite arc values: `min(f(a), f(ā))` is removed from both.
pub fn normalize(raw: &BTreeMap<(Vertex, Vertex), Cap>) -> ArcFlow {
    ArcFlow::from_arcs(raw.iter().map(|(&a, &x)| (a, x)))
}

/// `f(a) = max{0, g(a) + h(a) - g(ā) - h(ā)}` on every arc.
pub fn combine(g: &ArcFlow, h: &ArcFlow) -> ArcFlow {
    let pairs: BTreeSet<(Vertex, Vertex)> =
        g.iter().chain(h.iter()).map(|((u, v), _)| if u < v { (u, v) } else { (v, u) }).collect();
    let mut arcs = BTreeMap::new();
    for (u, v) in pairs {
        let x = g.get(u, v) + h.get(u, v) - g.get(v, u) - h.get(v, u);
        if x > 0 {
            arcs.insert((u, v), x);
        } else if x < 0 {
            arcs.insert((v, u), -x);
        }
    }
    ArcFlow { arcs }
}

/// `f*(a) = f(ā)`.
pub fn reverse(f: &ArcFlow) -> ArcFlow {
    ArcFlow { arcs: f.arcs.iter().map(|(&(u, v), &x)| ((v, u), x)).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathEntry {
    pub path: Vec<Vertex>,
    pub mult: Cap,
}

impl PathEntry {
    pub fn start(&self) -> Vertex {
        self.path[0]
    }

    pub fn end(&self) -> Vertex {
        *self.path.last().expect("nonempty path")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathFlowDecomposition {
    pub entries: Vec<PathEntry>,
}

impl PathFlowDecomposition {
    pub fn total(&self) -> Cap {
        self.entries.iter().map(|e| e.mult).sum()
    }

    /// Re-accumulates the paths into a normalized flow.
    pub fn accumulate(&self) -> ArcFlow {
        accumulate(self.entries.iter())
    }
}

fn accumulate<'a>(entries: impl Iterator<Item = &'a PathEntry>) -> ArcFlow {
    ArcFlow::from_arcs(entries.flat_map(|e| e.path.windows(2).map(move |w| ((w[0], w[1]), e.mult))))
}

/// Peels paths from sources with remaining positive divergence to sinks with
/// remaining deficit. Flow cycles are left behind.
pub fn decompose(f: &ArcFlow, sources: &[Vertex], sinks: &[Vertex]) -> Result<PathFlowDecomposition> {
    if sources.iter().any(|s| sinks.contains(s)) {
        return Err(Error::OverlappingTerminals);
    }
    let div = f.divergences();
    for (&v, &d) in &div {
        let ok = if sources.contains(&v) {
            d >= 0
        } else if sinks.contains(&v) {
            d <= 0
        } else {
            d == 0
        };
        if !ok {
            return Err(Error::NotAFlow(format!("divergence {d} at {v}")));
        }
    }
    let mut rem: HashMap<(Vertex, Vertex), Cap> = f.iter().collect();
    let mut out: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for ((u, v), _) in f.iter() {
        out.entry(u).or_default().push(v);
    }
    let mut excess: HashMap<Vertex, Cap> = div.iter().map(|(&v, &d)| (v, d)).collect();
    let mut entries = Vec::new();
    let mut seen_sources = HashSet::new();
    for &s in sources {
        if !seen_sources.insert(s) {
            continue;
        }
        while excess.get(&s).copied().unwrap_or(0) > 0 {
            let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
            let mut queue = VecDeque::from([s]);
            parent.insert(s, s);
            let mut found = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for &w in out.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                    if rem[&(u, w)] == 0 || parent.contains_key(&w) {
                        continue;
                    }
                    parent.insert(w, u);
                    if sinks.contains(&w) && excess.get(&w).copied().unwrap_or(0) < 0 {
                        found = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
            let t = found.ok_or_else(|| Error::NotAFlow(format!("excess at {s} cannot reach a sink")))?;
            let mut path = vec![t];
            let mut x = t;
            while x != s {
                x = parent[&x];
                path.push(x);
            }
            path.reverse();
            let bottleneck = path.windows(2).map(|w| rem[&(w[0], w[1])]).min().expect("path has an arc");
            let delta = bottleneck.min(excess[&s]).min(-excess[&t]);
            for w in path.windows(2) {
                *rem.get_mut(&(w[0], w[1])).expect("arc on path") -= delta;
            }
            *excess.get_mut(&s).expect("source") -= delta;
            *excess.get_mut(&t).expect("sink") += delta;
            entries.push(PathEntry { path, mult: delta });
        }
    }
    Ok(PathFlowDecomposition { entries })
}

/// A biflow: commodity 1 from `s1` to `t1`, commodity 2 from `s2` to `t2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Biflow {
    pub f1: ArcFlow,
    pub f2: ArcFlow,
}

impl Biflow {
    pub fn new(f1: ArcFlow, f2: ArcFlow) -> Self {
        Biflow { f1, f2 }
    }

    pub fn values(&self, t: &Terminals) -> (Cap, Cap) {
        (divergence(&self.f1, t.s1), divergence(&self.f2, t.s2))
    }

    pub fn value(&self, t: &Terminals) -> Cap {
        let (a, b) = self.values(t);
        a + b
    }

    /// The same biflow with the commodities exchanged.
    pub fn swapped(self) -> Biflow {
        Biflow { f1: self.f2, f2: self.f1 }
    }
}

/// Progress record for one uncrossing step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UncrossStep {
    pub p3_total: Cap,
    pub p4_total: Cap,
    pub total: Cap,
    pub delta: Cap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UncrossTrace {
    pub initial_p3: Cap,
    pub initial_total: Cap,
    pub steps: Vec<UncrossStep>,
}

/// Removes cycles from a walk, keeping the first visit of each vertex and
/// jumping to its last occurrence.
fn shortcut(walk: &[Vertex]) -> Vec<Vertex> {
    let mut last = HashMap::new();
    for (i, &v) in walk.iter().enumerate() {
        last.insert(v, i);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < walk.len() {
        out.push(walk[i]);
        i = last[&walk[i]] + 1;
    }
    out
}

pub fn uncross(d: &PathFlowDecomposition, t: &Terminals) -> Result<Biflow> {
    uncross_traced(d, t).map(|(b, _)| b)
}

/// Splits `s1 -> t2` / `s2 -> t1` path pairs at a shared vertex until only
/// commodity-respecting paths remain.
pub fn uncross_traced(d: &PathFlowDecomposition, t: &Terminals) -> Result<(Biflow, UncrossTrace)> {
    let mut classes: [Vec<PathEntry>; 4] = Default::default();
    for e in &d.entries {
        let class = match (e.start(), e.end()) {
            (a, b) if a == t.s1 && b == t.t1 => 0,
            (a, b) if a == t.s2 && b == t.t2 => 1,
            (a, b) if a == t.s1 && b == t.t2 => 2,
            (a, b) if a == t.s2 && b == t.t1 => 3,
            (a, b) => return Err(Error::NotAFlow(format!("path from {a} to {b} joins no terminal pair"))),
        };
        classes[class].push(e.clone());
    }
    let sum = |c: &Vec<PathEntry>| c.iter().map(|e| e.mult).sum::<Cap>();
    if sum(&classes[2]) != sum(&classes[3]) {
        return Err(Error::NotAFlow("cross path classes are unbalanced".into()));
    }
    let mut trace =
        UncrossTrace { initial_p3: sum(&classes[2]), initial_total: classes.iter().map(sum).sum(), steps: Vec::new() };
    while !classes[2].is_empty() {
        let mut hit = None;
        'search: for (i, p) in classes[2].iter().enumerate() {
            for (j, q) in classes[3].iter().enumerate() {
                let qpos: HashMap<Vertex, usize> = q.path.iter().enumerate().map(|(k, &v)| (v, k)).collect();
                if let Some((ip, &iq)) = p.path.iter().enumerate().find_map(|(k, v)| qpos.get(v).map(|iq| (k, iq))) {
                    hit = Some((i, j, ip, iq));
                    break 'search;
                }
            }
        }
        let (i, j, ip, iq) = hit.ok_or(Error::NotCrossing)?;
        let (p, q) = (&classes[2][i], &classes[3][j]);
        let delta = p.mult.min(q.mult);
        let first: Vec<Vertex> = p.path[..=ip].iter().chain(&q.path[iq + 1..]).copied().collect();
        let second: Vec<Vertex> = q.path[..=iq].iter().chain(&p.path[ip + 1..]).copied().collect();
        classes[0].push(PathEntry { path: shortcut(&first), mult: delta });
        classes[1].push(PathEntry { path: shortcut(&second), mult: delta });
        classes[2][i].mult -= delta;
        classes[3][j].mult -= delta;
        classes[2].retain(|e| e.mult > 0);
        classes[3].retain(|e| e.mult > 0);
        trace.steps.push(UncrossStep {
            p3_total: sum(&classes[2]),
            p4_total: sum(&classes[3]),
            total: classes.iter().map(sum).sum(),
            delta,
        });
    }
    Ok((Biflow::new(accumulate(classes[0].iter()), accumulate(classes[1].iter())), trace))
}

/// The first `k` units of an `s`-`t` flow, peeled in decomposition order.
pub fn truncate(f: &ArcFlow, s: Vertex, t: Vertex, k: Cap) -> Result<ArcFlow> {
    Ok(split_units(f, s, t, &[k])?.pop().expect("one part"))
}

/// Consecutive disjoint subflows of the requested values, taken from one
/// path decomposition of `f`.
pub fn split_units(f: &ArcFlow, s: Vertex, t: Vertex, amounts: &[Cap]) -> Result<Vec<ArcFlow>> {
    let d = decompose(f, &[s], &[t])?;
    let need: Cap = amounts.iter().sum();
    if need > d.total() || amounts.iter().any(|&a| a < 0) {
        return Err(Error::ValueInfeasible { requested: need, max: d.total() });
    }
    let mut entries = d.entries.into_iter();
    let mut carry: Option<PathEntry> = None;
    let mut parts = Vec::with_capacity(amounts.len());
    for &amount in amounts {
        let mut left = amount;
        let mut taken = Vec::new();
        while left > 0 {
            let mut e = carry.take().or_else(|| entries.next()).expect("enough units");
            if e.mult > left {
                carry = Some(PathEntry { path: e.path.clone(), mult: e.mult - left });
                e.mult = left;
            }
            left -= e.mult;
            taken.push(e);
        }
        parts.push(accumulate(taken.iter()));
    }
    Ok(parts)
}

/// Joins flows `a -> x1`, `x1 -> x2`, ... into one flow of value `k` by
/// truncating each piece to `k` units. Pieces must be edge-disjoint.
pub fn concatenate(chain: &[(&ArcFlow, Vertex, Vertex)], k: Cap) -> Result<ArcFlow> {
    let mut out = ArcFlow::default();
    for w in chain.windows(2) {
        assert_eq!(w[0].2, w[1].1, "chain pieces must meet");
    }
    for &(f, a, b) in chain {
        if k == 0 {
            break;
        }
        out = out.plus(&truncate(f, a, b, k)?);
    }
    Ok(out)
}

/// Moves `units` of flow off the arc `(u, v)` onto a `u -> v` subflow of
/// `replacement`. If `f` carries the flow on `(v, u)` instead, the reversed
/// replacement is used.
pub fn splice(f: &ArcFlow, u: Vertex, v: Vertex, replacement: &ArcFlow, units: Cap) -> Result<ArcFlow> {
    if units == 0 {
        return Ok(f.clone());
    }
    let part = truncate(replacement, u, v, units)?;
    let (arc, part) = if f.get(u, v) >= units {
        ((u, v), part)
    } else if f.get(v, u) >= units {
        ((v, u), reverse(&part))
    } else {
        return Err(Error::ValueInfeasible { requested: units, max: f.load(u, v) });
    };
    let removed = ArcFlow { arcs: [(arc, units)].into_iter().collect() };
    Ok(f.minus(&removed).plus(&part))
}
