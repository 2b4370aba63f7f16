//! Deciding which algorithm applies to a reduced instance.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::bridges::{classify_bridges, BridgeKind, BridgeReport};
use crate::error::{Error, Result};
use crate::graph::{connected_components, dfs_tree, EdgeId, Graph, Instance, Terminals, Vertex};

/// One side of a gluing decomposition for commodity `j`: the pieces that
/// attach at `{s_j, t_j, u}` and at `{s_j, t_j, v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSide {
    pub u: Vertex,
    pub v: Vertex,
    pub piece_u: Vec<EdgeId>,
    pub piece_v: Vec<EdgeId>,
    /// Vertices strictly on the terminal side of `{u, v}`, terminals included.
    pub region: Vec<Vertex>,
}

impl GluingSide {
    fn swapped(self) -> GluingSide {
        GluingSide { u: self.v, v: self.u, piece_u: self.piece_v, piece_v: self.piece_u, region: self.region }
    }
}

/// `side1` is glued along `{u1, v1}`, `side2` along `{u2, v2}`; a missing
/// side is the one-sided shape handled through the gadget. `center` holds
/// the remaining edges except `e1` and `e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub side1: Option<GluingSide>,
    pub side2: Option<GluingSide>,
    pub center: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureCase {
    Bridges(BridgeReport),
    Gluing(Gluing),
    /// `swapped` is true when the linked bridge pairs `s1` with `t2`, so the
    /// cyclic order is `s1, t2, s2, t1` rather than `s1, s2, t2, t1`.
    Planar {
        swapped: bool,
    },
}

impl StructureCase {
    pub fn name(&self) -> &'static str {
        match self {
            StructureCase::Bridges(_) => "bridges",
            StructureCase::Gluing(g) if g.side1.is_some() && g.side2.is_some() => "gluing3",
            StructureCase::Gluing(_) => "gluing2",
            StructureCase::Planar { .. } => "planar",
        }
    }
}

pub fn detect_case(inst: &Instance) -> Result<StructureCase> {
    let report = classify_bridges(inst);
    let linked: Vec<_> = report.linked().collect();
    if linked.is_empty() {
        return Ok(StructureCase::Bridges(report));
    }
    if linked.len() > 1 {
        return Err(Error::NotSeymourLike(format!("{} linked four-footed bridges", linked.len())));
    }
    let g = inst.graph();
    let t = inst.terminals();
    let mut same_pairing = false; // an s1s2 or t1t2 edge
    let mut cross_pairing = false; // an s1t2 or t1s2 edge
    for b in &report.bridges {
        match b.kind {
            BridgeKind::FourFeetLinked { .. } => {}
            BridgeKind::Trivial => {
                let e = g.edge(b.edges[0]);
                let ends = [e.u, e.v];
                if ends.contains(&t.s1) == ends.contains(&t.s2) {
                    same_pairing = true;
                } else {
                    cross_pairing = true;
                }
            }
            _ => return Err(Error::NotSeymourLike("a linked bridge coexists with another nontrivial bridge".into())),
        }
    }
    if same_pairing && cross_pairing {
        return Err(Error::NotSeymourLike("terminal edges fit neither pairing of the linked bridge".into()));
    }
    let swapped = if same_pairing || cross_pairing {
        cross_pairing
    } else {
        match &linked[0].kind {
            BridgeKind::FourFeetLinked { q1, .. } => *q1.last().expect("nonempty path") == t.t2,
            _ => unreachable!(),
        }
    };

    let side1 = find_side(g, &t, 1, None);
    let side2 = find_side(g, &t, 2, side1.as_ref());
    if side1.is_none() && side2.is_none() {
        return Ok(StructureCase::Planar { swapped });
    }
    let side2 = match (&side1, side2) {
        (Some(s1), Some(s2)) if s2.u == s1.v || s2.v == s1.u => Some(s2.swapped()),
        (_, s2) => s2,
    };
    let mut in_piece: HashSet<EdgeId> = HashSet::new();
    for side in side1.iter().chain(side2.iter()) {
        in_piece.extend(side.piece_u.iter().chain(side.piece_v.iter()).copied());
    }
    let center = g.edge_ids().filter(|&id| !inst.is_direct(id) && !in_piece.contains(&id)).collect();
    Ok(StructureCase::Gluing(Gluing { side1, side2, center }))
}

/// The lexicographically first pair `{u, v}` of non-terminals separating
/// `{s_j, t_j}` from the other pair such that every component on the
/// `s_j` side touches at most one of `u`, `v`. When `other` is given the
/// new side must not overlap it.
fn find_side(g: &Graph, t: &Terminals, j: usize, other: Option<&GluingSide>) -> Option<GluingSide> {
    let (sj, tj) = t.pair(j);
    let (so, _) = t.pair(3 - j);
    let pos = |x: Vertex| g.position(x).expect("vertex of g");
    let is_term = |i: usize| t.contains(g.vertices()[i]);
    let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..g.vertex_count() {
        if is_term(u) {
            continue;
        }
        let tree = dfs_tree(g, pos(sj), Some(u));
        let mut c = pos(so);
        if !tree.reached(c) {
            continue;
        }
        while tree.parent[c] != usize::MAX {
            let p = tree.parent[c];
            if tree.parent[p] != usize::MAX && !is_term(p) && tree.low[c] >= tree.disc[p] {
                candidates.insert((u.min(p), u.max(p)));
            }
            c = p;
        }
    }
    let blocked: HashSet<Vertex> = other.map(|s| s.region.iter().copied().collect()).unwrap_or_default();
    for (a, b) in candidates {
        let (u, v) = (g.vertices()[a], g.vertices()[b]);
        if blocked.contains(&u) || blocked.contains(&v) {
            continue;
        }
        if let Some(side) = validate(g, sj, tj, u, v) {
            if side.region.iter().any(|x| blocked.contains(x)) {
                continue;
            }
            if let Some(o) = other {
                if side.region.contains(&o.u) || side.region.contains(&o.v) {
                    continue;
                }
            }
            return Some(side);
        }
    }
    None
}

fn validate(g: &Graph, sj: Vertex, tj: Vertex, u: Vertex, v: Vertex) -> Option<GluingSide> {
    let region = reach(g, sj, &[u, v]);
    if !region.contains(&tj) {
        return None;
    }
    let mut removed: HashSet<Vertex> = g.vertices().iter().copied().filter(|x| !region.contains(x)).collect();
    removed.extend([sj, tj]);
    let mut on_u: HashSet<Vertex> = HashSet::new();
    for comp in connected_components(g, &removed) {
        let touches = |w: Vertex| comp.iter().any(|&x| g.find_edge(x, w).is_some());
        match (touches(u), touches(v)) {
            (true, true) => return None,
            (true, false) => on_u.extend(comp),
            // pieces touching neither side are only attached at {s_j, t_j}; file them with v
            _ => {}
        }
    }
    let (mut piece_u, mut piece_v) = (Vec::new(), Vec::new());
    for (id, e) in g.edges() {
        let ends = [e.u, e.v];
        let interior_end = ends.iter().find(|x| region.contains(x) && **x != sj && **x != tj);
        if let Some(x) = interior_end {
            if on_u.contains(x) {
                piece_u.push(id);
            } else {
                piece_v.push(id);
            }
        } else if ends.contains(&u) && (ends.contains(&sj) || ends.contains(&tj)) {
            piece_u.push(id);
        } else if ends.contains(&v) && (ends.contains(&sj) || ends.contains(&tj)) {
            piece_v.push(id);
        }
    }
    let mut region: Vec<Vertex> = region.into_iter().collect();
    region.sort_by_key(|&x| g.position(x));
    Some(GluingSide { u, v, piece_u, piece_v, region })
}

fn reach(g: &Graph, from: Vertex, blocked: &[Vertex]) -> HashSet<Vertex> {
    let mut seen: HashSet<Vertex> = [from].into_iter().collect();
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for (y, _) in g.neighbors(x) {
            if !blocked.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}
