//! The one-sided gluing shape turned two-sided: commodity `j` gets fresh
//! terminals `s'`, `t'` hanging off `s_j`, `t_j` so that the old terminals
//! become the glue vertices of a triangle-sized side.

use super::detect::GluingSide;
use crate::error::Result;
use crate::flowops::Biflow;
use crate::graph::{Cap, Graph, Instance, Terminals, Vertex};

#[derive(Clone, Debug)]
pub struct Gadget {
    pub instance: Instance,
    pub commodity: usize,
    /// `(s', t')`.
    pub primed: (Vertex, Vertex),
    /// `(s_j, t_j)` of the original instance.
    pub original: (Vertex, Vertex),
}

/// New vertices `s'`, `t'` and edges `s't'` (capacity `c(e_j)`), `s's` and
/// `t't` (effectively infinite), `s't` and `t's` (capacity 0); `e_j` drops
/// to capacity 0.
pub fn case_ii_gadget(inst: &Instance, commodity: usize) -> Result<Gadget> {
    let t = inst.terminals();
    let (s, tt) = t.pair(commodity);
    let ej = inst.direct_edge(commodity);
    let cap_ej = inst.graph().edge(ej).cap;
    let infinite: Cap = inst.graph().total_capacity() + 1;
    let mut g: Graph = inst.graph().clone();
    g.set_capacity(ej, 0);
    let sp = g.fresh_vertex();
    let tp = Vertex(sp.0 + 1);
    g.add_edge(sp, tp, cap_ej)?;
    g.add_edge(sp, s, infinite)?;
    g.add_edge(tp, tt, infinite)?;
    g.add_edge(sp, tt, 0)?;
    g.add_edge(tp, s, 0)?;
    let terminals =
        if commodity == 1 { Terminals::new(sp, tp, t.s2, t.t2) } else { Terminals::new(t.s1, t.t1, sp, tp) };
    let instance = Instance::new(g, terminals)?;
    Ok(Gadget { instance, commodity, primed: (sp, tp), original: (s, tt) })
}

impl Gadget {
    /// Maps a biflow of the gadget back onto the original instance by
    /// identifying `s'` with `s_j` and `t'` with `t_j`.
    pub fn project(&self, b: &Biflow) -> Biflow {
        let ((sp, tp), (s, t)) = (self.primed, self.original);
        let map = |x: Vertex| {
            if x == sp {
                s
            } else if x == tp {
                t
            } else {
                x
            }
        };
        Biflow::new(b.f1.map_vertices(map), b.f2.map_vertices(map))
    }

    /// The gadget's own side: pieces `{s's, t's}` at `u = s_j` and
    /// `{s't, t't}` at `v = t_j`.
    pub fn side(&self) -> GluingSide {
        let g = self.instance.graph();
        let ((sp, tp), (s, t)) = (self.primed, self.original);
        let id = |a, b| g.find_edge(a, b).expect("gadget edge");
        GluingSide {
            u: s,
            v: t,
            piece_u: vec![id(sp, s), id(tp, s)],
            piece_v: vec![id(sp, t), id(tp, t)],
            region: vec![sp, tp],
        }
    }
}
