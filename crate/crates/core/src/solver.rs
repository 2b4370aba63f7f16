//! End-to-end solve: reductions, structure detection, dispatch to one of
//! the three algorithms, splice-back and certification.
//!
//! Detection only suggests an algorithm. Each answer is checked for
//! feasibility and compared against the minimum bicut; if the suggested
//! algorithm fails or falls short, the others are tried in the order
//! planar, gluing, bridges, and finally a greedy biflow is returned
//! uncertified.

use crate::bicut::{greedy_biflow, min_bicut, verify_biflow};
use crate::bridges::solve_bridges;
use crate::error::Result;
use crate::flowops::{reverse, Biflow};
use crate::gluing::solve_gluing;
use crate::graph::{Cap, Instance};
use crate::maxflow::max_flow;
use crate::planar::{max_value_targets, solve_planar_any_orientation};
use crate::structure::{classify_bridges, detect_case, reduce, splice_back, Reduced, StructureCase};

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub biflow: Biflow,
    pub value: Cap,
    pub min_bicut: Cap,
    pub certified: bool,
    /// Detected structure of the core (`planar`, `gluing2`, `gluing3`,
    /// `bridges`), `split` for separate blocks, or `unrecognised`.
    pub case: String,
    /// The algorithm whose answer was kept.
    pub algorithm: String,
    pub trail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Algorithm {
    Planar,
    Gluing,
    Bridges,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Planar => "planar",
            Algorithm::Gluing => "gluing",
            Algorithm::Bridges => "bridges",
        }
    }
}

pub fn solve(inst: &Instance) -> SolveResult {
    let t = inst.terminals();
    let bicut = min_bicut(inst).capacity();
    let (reduced, trail) = reduce(inst);
    let (core_biflow, case, algorithm) = match &reduced {
        Reduced::Split { first, second } => {
            let (f1, _) = max_flow(first, &[t.s1], &[t.t1]).expect("distinct terminals");
            let (f2, _) = max_flow(second, &[t.s2], &[t.t2]).expect("distinct terminals");
            (Biflow::new(f1, f2), "split".to_string(), "max-flow".to_string())
        }
        Reduced::Core(core) => solve_core(core),
    };
    let mut biflow = splice_back(&trail, core_biflow).unwrap_or_else(|_| greedy_biflow(inst));
    let mut algorithm = algorithm;
    let mut report = verify_biflow(inst, &biflow);
    if !report.feasible {
        biflow = greedy_biflow(inst);
        algorithm = "greedy".to_string();
        report = verify_biflow(inst, &biflow);
    }
    SolveResult {
        value: report.value,
        min_bicut: bicut,
        certified: report.feasible && report.value == bicut,
        biflow,
        case,
        algorithm,
        trail: trail.summary(),
    }
}

/// Tries the detected algorithm first and the rest in fallback order,
/// keeping the best feasible answer.
fn solve_core(core: &Instance) -> (Biflow, String, String) {
    let bicut = min_bicut(core).capacity();
    let detected = detect_case(core);
    let case = detected.as_ref().map(|c| c.name()).unwrap_or("unrecognised").to_string();
    let first = match &detected {
        Ok(StructureCase::Planar { .. }) | Err(_) => Algorithm::Planar,
        Ok(StructureCase::Gluing(_)) => Algorithm::Gluing,
        Ok(StructureCase::Bridges(_)) => Algorithm::Bridges,
    };
    let mut order = vec![first];
    order.extend([Algorithm::Planar, Algorithm::Gluing, Algorithm::Bridges].into_iter().filter(|&a| a != first));

    let mut best: Option<(Cap, Biflow, &'static str)> = None;
    for algo in order {
        let attempt = match (algo, &detected) {
            (Algorithm::Planar, d) => {
                let swapped = matches!(d, Ok(StructureCase::Planar { swapped: true }));
                run_planar(core, swapped)
            }
            (Algorithm::Gluing, Ok(StructureCase::Gluing(gl))) => solve_gluing(core, gl),
            (Algorithm::Gluing, _) => continue,
            (Algorithm::Bridges, Ok(StructureCase::Bridges(report))) => solve_bridges(core, report),
            (Algorithm::Bridges, _) => solve_bridges(core, &classify_bridges(core)),
        };
        let Ok(b) = attempt else { continue };
        let report = verify_biflow(core, &b);
        if !report.feasible {
            continue;
        }
        if report.value == bicut {
            return (b, case, algo.name().to_string());
        }
        if best.as_ref().is_none_or(|(v, _, _)| report.value > *v) {
            best = Some((report.value, b, algo.name()));
        }
    }
    let greedy = greedy_biflow(core);
    let greedy_value = verify_biflow(core, &greedy).value;
    match best {
        Some((v, b, name)) if v >= greedy_value => (b, case, name.to_string()),
        _ => (greedy, case, "greedy".to_string()),
    }
}

fn run_planar(core: &Instance, swapped: bool) -> Result<Biflow> {
    let (k1, k2) = max_value_targets(core);
    if !swapped {
        return solve_planar_any_orientation(core, k1, k2);
    }
    let flipped = core.with_terminals(core.terminals().swap_second())?;
    let b = solve_planar_any_orientation(&flipped, k1, k2)?;
    Ok(Biflow::new(b.f1, reverse(&b.f2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicut::oracle_max_integral_biflow;
    use crate::graph::{Graph, Terminals, Vertex};

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    // s1=0 t1=1 s2=2 t2=3
    fn instance(edges: &[(u32, u32, Cap)]) -> Instance {
        let mut g = Graph::new();
        for &(a, b, c) in edges {
            g.add_edge(v(a), v(b), c).unwrap();
        }
        for i in 0..4 {
            g.add_vertex(v(i));
        }
        Instance::new(g, Terminals::new(v(0), v(1), v(2), v(3))).unwrap()
    }

    #[test]
    fn outer_cycle() {
        let inst = instance(&[(0, 2, 1), (2, 3, 1), (3, 1, 1), (1, 0, 1)]);
        let r = solve(&inst);
        assert_eq!((r.value, r.min_bicut, r.certified), (2, 2, true));
    }

    #[test]
    fn interleaved_cycle_is_certified_at_two() {
        // one commodity takes both halves of the cycle
        let inst = instance(&[(0, 2, 1), (2, 1, 1), (1, 3, 1), (3, 0, 1)]);
        let r = solve(&inst);
        assert_eq!(oracle_max_integral_biflow(&inst).unwrap(), 2);
        assert_eq!((r.value, r.min_bicut, r.certified), (2, 2, true));
    }

    #[test]
    fn forbidden_graph_is_not_certified() {
        // cycle s1 s2 a b with t1 at a and t2 at b, a=4 b=5
        let inst = instance(&[(0, 2, 1), (2, 4, 1), (4, 5, 1), (5, 0, 1), (1, 4, 1), (3, 5, 1)]);
        let r = solve(&inst);
        assert_eq!(oracle_max_integral_biflow(&inst).unwrap(), 1);
        assert_eq!((r.value, r.min_bicut, r.certified), (1, 2, false));
    }

    #[test]
    fn separate_blocks() {
        // e1's block: triangle s1 4 t1 with s1t1 cap 2; e2's block through cut vertex 4
        let inst = instance(&[(0, 1, 2), (0, 4, 1), (4, 1, 1), (4, 2, 1), (2, 3, 3), (4, 3, 1)]);
        let r = solve(&inst);
        assert_eq!(r.case, "split");
        assert_eq!((r.value, r.certified), (r.min_bicut, true));
        let (tau1, _) = max_flow(inst.graph(), &[v(0)], &[v(1)]).unwrap();
        assert_eq!(r.biflow.values(&inst.terminals()).0, tau1.value(&[v(0)]));
    }

    #[test]
    fn block_split_with_direct_edges_only() {
        // s1t1 cap 2 and s2t2 cap 3 in blocks joined through a cut vertex
        let inst = instance(&[(0, 1, 2), (1, 4, 1), (4, 2, 1), (2, 3, 3)]);
        let r = solve(&inst);
        assert_eq!((r.value, r.min_bicut, r.certified), (5, 5, true));
    }
}
