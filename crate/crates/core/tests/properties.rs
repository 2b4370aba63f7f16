//! Randomised invariants, each checked against a brute-force or
//! independently computed reference.

use std::collections::{BTreeMap, HashSet};

use biflow::bicut::{min_bicut, oracle_max_integral_biflow, verify_biflow};
use biflow::flowops::{combine, decompose, divergence, reverse, splice, uncross_traced};
use biflow::generate::{generate, Class};
use biflow::graph::{blocks, build_graph, connected_components, two_separators};
use biflow::maxflow::max_flow;
use biflow::planar::{max_value_targets, solve_planar_traced};
use biflow::structure::{detect_case, k4star_minor, m_bridges, StructureCase};
use biflow::triflow::{triflow_from_source, triflow_to_sink};
use biflow::{solve, ArcFlow, Cap, Graph, Instance, Terminals, Vertex};
use proptest::prelude::*;

fn v(i: u32) -> Vertex {
    Vertex(i)
}

/// Vertex count plus an optional capacity for every vertex pair.
fn small_graph(max_n: u32, max_cap: Cap) -> impl Strategy<Value = Graph> {
    (4..=max_n).prop_flat_map(move |n| {
        let pairs = (n * (n - 1) / 2) as usize;
        proptest::collection::vec(proptest::option::weighted(0.5, 0..=max_cap), pairs).prop_map(move |caps| {
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(v(i));
            }
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if let Some(c) = caps[k] {
                        g.add_edge(v(a), v(b), c).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn small_instance(max_n: u32, max_cap: Cap) -> impl Strategy<Value = Instance> {
    small_graph(max_n, max_cap).prop_map(|g| Instance::new(g, Terminals::new(v(0), v(1), v(2), v(3))).unwrap())
}

/// Capacity of the cheapest vertex set containing `sources` and avoiding
/// `sinks`, by enumerating every subset.
fn brute_min_cut(g: &Graph, sources: &[Vertex], sinks: &[Vertex]) -> Cap {
    let vs = g.vertices();
    let mut best = Cap::MAX;
    for mask in 0u32..(1 << vs.len()) {
        let inside = |x: Vertex| mask >> g.position(x).unwrap() & 1 == 1;
        if !sources.iter().all(|&s| inside(s)) || sinks.iter().any(|&t| inside(t)) {
            continue;
        }
        let cap = g.edges().filter(|(_, e)| inside(e.u) != inside(e.v)).map(|(_, e)| e.cap).sum();
        best = best.min(cap);
    }
    best
}

fn conserved_except(f: &ArcFlow, g: &Graph, ends: &[Vertex]) -> bool {
    g.vertices().iter().filter(|x| !ends.contains(x)).all(|&x| divergence(f, x) == 0)
}

fn residual(g: &Graph, f: &ArcFlow) -> Graph {
    let mut r = Graph::new();
    for &x in g.vertices() {
        r.add_vertex(x);
    }
    for (_, e) in g.edges() {
        r.add_edge(e.u, e.v, e.cap - f.load(e.u, e.v)).unwrap();
    }
    r
}

fn component_of(parts: &[Vec<Vertex>], x: Vertex) -> usize {
    parts.iter().position(|p| p.contains(&x)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn max_flow_meets_the_brute_force_cut(g in small_graph(8, 5)) {
        let (f, cut) = max_flow(&g, &[v(0)], &[v(1)]).unwrap();
        prop_assert_eq!(f.value(&[v(0)]), cut.capacity);
        prop_assert_eq!(cut.capacity, brute_min_cut(&g, &[v(0)], &[v(1)]));
        prop_assert!(f.fits(&g));
        prop_assert!(conserved_except(&f, &g, &[v(0), v(1)]));
        let side_cap: Cap = g.edges().filter(|(_, e)| cut.side.contains(&e.u) != cut.side.contains(&e.v)).map(|(_, e)| e.cap).sum();
        prop_assert_eq!(side_cap, cut.capacity);
    }

    #[test]
    fn grouped_max_flow_meets_the_brute_force_cut(g in small_graph(8, 4)) {
        let (f, cut) = max_flow(&g, &[v(0), v(2)], &[v(1), v(3)]).unwrap();
        prop_assert_eq!(f.value(&[v(0), v(2)]), cut.capacity);
        prop_assert_eq!(cut.capacity, brute_min_cut(&g, &[v(0), v(2)], &[v(1), v(3)]));
    }

    #[test]
    fn combine_is_additive_and_within_capacity(g in small_graph(8, 5)) {
        let (f1, _) = max_flow(&g, &[v(0)], &[v(1)]).unwrap();
        let (f2, _) = max_flow(&residual(&g, &f1), &[v(2)], &[v(3)]).unwrap();
        let c = combine(&f1, &f2);
        for &x in g.vertices() {
            prop_assert_eq!(divergence(&c, x), divergence(&f1, x) + divergence(&f2, x));
        }
        for ((a, b), x) in c.iter() {
            prop_assert!(x > 0);
            prop_assert_eq!(c.get(b, a), 0);
            prop_assert!(x <= g.capacity_between(a, b));
        }
    }

    #[test]
    fn decompose_stays_below_and_keeps_terminal_divergence(g in small_graph(8, 5)) {
        let (f1, _) = max_flow(&g, &[v(0)], &[v(1)]).unwrap();
        let (f2, _) = max_flow(&residual(&g, &f1), &[v(2)], &[v(3)]).unwrap();
        let f = combine(&f1, &f2);
        let d = decompose(&f, &[v(0), v(2)], &[v(1), v(3)]).unwrap();
        let back = d.accumulate();
        prop_assert!(back.is_below(&f));
        for x in [v(0), v(1), v(2), v(3)] {
            prop_assert_eq!(divergence(&back, x), divergence(&f, x));
        }
        for e in &d.entries {
            let distinct: HashSet<_> = e.path.iter().collect();
            prop_assert_eq!(distinct.len(), e.path.len());
        }
    }

    #[test]
    fn reverse_is_an_involution(g in small_graph(8, 5)) {
        let (f, _) = max_flow(&g, &[v(0)], &[v(1)]).unwrap();
        prop_assert_eq!(reverse(&reverse(&f)), f.clone());
        for &x in g.vertices() {
            prop_assert_eq!(divergence(&reverse(&f), x), -divergence(&f, x));
        }
    }

    #[test]
    fn splice_preserves_value(g in small_graph(8, 5), pick in any::<prop::sample::Index>()) {
        let (f, _) = max_flow(&g, &[v(0)], &[v(1)]).unwrap();
        let arcs: Vec<_> = f.iter().collect();
        prop_assume!(!arcs.is_empty());
        let ((a, b), x) = arcs[pick.index(arcs.len())];
        // detour a -> w -> b through a fresh vertex
        let w = g.fresh_vertex();
        let detour = ArcFlow::from_arcs([((a, w), x), ((w, b), x)]);
        let spliced = splice(&f, a, b, &detour, x).unwrap();
        prop_assert_eq!(spliced.value(&[v(0)]), f.value(&[v(0)]));
        prop_assert_eq!(spliced.get(a, b), 0);
        prop_assert_eq!(divergence(&spliced, w), 0);
        // the reversed orientation routes the detour backwards
        let back = splice(&f, b, a, &reverse(&detour), x).unwrap();
        prop_assert_eq!(back, spliced);
    }

    #[test]
    fn triflow_from_source_splits_the_flow(g in small_graph(8, 5)) {
        let (x, y, z) = (v(0), v(1), v(2));
        let r = triflow_from_source(&g, x, y, z).unwrap();
        let tau = brute_min_cut(&g, &[x], &[y]);
        let tau_x = brute_min_cut(&g, &[x], &[y, z]);
        let tau_y = brute_min_cut(&g, &[x, z], &[y]);
        prop_assert_eq!(r.tau, tau);
        prop_assert_eq!(r.tau_side, tau_x);
        prop_assert_eq!(tau, tau_x.min(tau_y));
        prop_assert_eq!((divergence(&r.f, x), divergence(&r.f, y), divergence(&r.f, z)), (tau_x, -tau, tau - tau_x));
        prop_assert!(conserved_except(&r.f, &g, &[x, y, z]));
        prop_assert!(r.f.fits(&g));
        prop_assert_eq!(r.f1.plus(&r.f2), r.f.clone());
        prop_assert!(r.f1.is_below(&r.f) && r.f2.is_below(&r.f));
        prop_assert_eq!((divergence(&r.f1, x), divergence(&r.f1, y)), (tau, -tau));
        prop_assert!(conserved_except(&r.f1, &g, &[x, y]));
        prop_assert_eq!((divergence(&r.f2, x), divergence(&r.f2, z)), (tau_x - tau, tau - tau_x));
        prop_assert!(conserved_except(&r.f2, &g, &[x, z]));
    }

    #[test]
    fn triflow_to_sink_splits_the_flow(g in small_graph(8, 5)) {
        let (x, y, z) = (v(0), v(1), v(2));
        let r = triflow_to_sink(&g, x, y, z).unwrap();
        let tau = brute_min_cut(&g, &[x], &[y]);
        let tau_y = brute_min_cut(&g, &[x, z], &[y]);
        prop_assert_eq!((r.tau, r.tau_side), (tau, tau_y));
        prop_assert_eq!((divergence(&r.f, x), divergence(&r.f, y), divergence(&r.f, z)), (tau, -tau_y, tau_y - tau));
        prop_assert!(r.f.fits(&g));
        prop_assert_eq!(r.f1.plus(&r.f2), r.f.clone());
        prop_assert_eq!((divergence(&r.f1, x), divergence(&r.f1, y)), (tau, -tau));
        prop_assert!(conserved_except(&r.f1, &g, &[x, y]));
        prop_assert_eq!((divergence(&r.f2, z), divergence(&r.f2, y)), (tau_y - tau, tau - tau_y));
        prop_assert!(conserved_except(&r.f2, &g, &[z, y]));
    }

    #[test]
    fn blocks_partition_the_edges(g in small_graph(9, 2)) {
        let d = blocks(&g);
        let total: usize = d.blocks.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.edge_count());
        let all: HashSet<_> = d.blocks.iter().flatten().collect();
        prop_assert_eq!(all.len(), g.edge_count());
        // a cut vertex is exactly one whose removal adds components
        let base = connected_components(&g, &HashSet::new()).len();
        for &x in g.vertices() {
            let without = connected_components(&g, &[x].into_iter().collect()).len();
            let isolated = g.degree(x) == 0;
            let splits = without > base - usize::from(isolated);
            prop_assert_eq!(d.cut_vertices.contains(&x), splits, "vertex {}", x);
        }
    }

    #[test]
    fn two_separators_match_component_counts(g in small_graph(8, 2)) {
        let found: HashSet<(Vertex, Vertex)> = two_separators(&g).into_iter().map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
        let vs = g.vertices();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let key = if a < b { (a, b) } else { (b, a) };
                let parts = connected_components(&g, &[a, b].into_iter().collect()).len();
                prop_assert_eq!(found.contains(&key), parts >= 2, "pair {:?}", key);
            }
        }
    }

    #[test]
    fn m_bridges_cover_the_edges(inst in small_instance(8, 2)) {
        let g = inst.graph();
        let t = inst.terminals();
        let bridges = m_bridges(&inst);
        let mut seen = HashSet::new();
        for b in &bridges {
            for &id in &b.edges {
                prop_assert!(seen.insert(id), "edge {:?} in two bridges", id);
            }
            let mut feet: Vec<Vertex> = t.all().into_iter()
                .filter(|&x| b.edges.iter().any(|&id| g.edge(id).touches(x)))
                .collect();
            feet.dedup();
            prop_assert_eq!(&b.feet, &feet);
            for &x in &b.interior {
                prop_assert!(!t.contains(x));
            }
        }
        seen.insert(inst.e1());
        seen.insert(inst.e2());
        prop_assert_eq!(seen.len(), g.edge_count());
    }

    #[test]
    fn build_graph_is_deterministic(edges in proptest::collection::vec((0u8..10, 0u8..10, 0..5i64), 0..30)) {
        let edges: Vec<(u8, u8, Cap)> = edges.into_iter().filter(|(a, b, _)| a != b).collect();
        let (g1, names1) = build_graph(&edges).unwrap();
        let (g2, names2) = build_graph(&edges).unwrap();
        prop_assert_eq!(&names1, &names2);
        let dump = |g: &Graph| g.edges().map(|(_, e)| (e.u, e.v, e.cap)).collect::<Vec<_>>();
        prop_assert_eq!(dump(&g1), dump(&g2));
        let mut expected: BTreeMap<(u8, u8), Cap> = BTreeMap::new();
        for &(a, b, c) in &edges {
            *expected.entry((a.min(b), a.max(b))).or_default() += c;
        }
        let index = |x: u8| Vertex(names1.iter().position(|&n| n == x).unwrap() as u32);
        for (&(a, b), &c) in &expected {
            prop_assert_eq!(g1.capacity_between(index(a), index(b)), c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bicut_bounds_the_oracle(inst in small_instance(8, 3)) {
        let t = inst.terminals();
        let cert = min_bicut(&inst);
        let best = oracle_max_integral_biflow(&inst).unwrap();
        prop_assert!(best <= cert.capacity());
        let g = inst.graph();
        let direct = brute_min_cut(g, &[t.s1, t.s2], &[t.t1, t.t2]).min(brute_min_cut(g, &[t.s1, t.t2], &[t.t1, t.s2]));
        prop_assert_eq!(cert.capacity(), direct);
        // the cut edges separate both pairs
        let mut rest = Graph::new();
        for &x in g.vertices() {
            rest.add_vertex(x);
        }
        for (id, e) in g.edges() {
            if !cert.cut.edges.contains(&id) && e.cap > 0 {
                rest.add_edge(e.u, e.v, e.cap).unwrap();
            }
        }
        let parts = connected_components(&rest, &HashSet::new());
        prop_assert_ne!(component_of(&parts, t.s1), component_of(&parts, t.t1));
        prop_assert_ne!(component_of(&parts, t.s2), component_of(&parts, t.t2));
    }

    #[test]
    fn minor_free_instances_are_solved_exactly(inst in small_instance(8, 3)) {
        let r = solve(&inst);
        prop_assert!(verify_biflow(&inst, &r.biflow).feasible);
        prop_assert!(r.value <= r.min_bicut);
        let best = oracle_max_integral_biflow(&inst).unwrap();
        prop_assert!(r.value <= best);
        if !k4star_minor(&inst).unwrap() {
            prop_assert!(r.certified, "case {} algorithm {}", r.case, r.algorithm);
            prop_assert_eq!(r.value, best);
        }
        if r.certified {
            prop_assert_eq!(r.value, best);
        }
    }

    #[test]
    fn uncrossing_keeps_balance_and_terminates(n in 4usize..30, capmax in 1i64..8, seed in any::<u64>()) {
        let inst = generate(Class::Planar, n, capmax, seed);
        let inst = match detect_case(&inst) {
            Ok(StructureCase::Planar { swapped: false }) => inst,
            Ok(StructureCase::Planar { swapped: true }) => inst.with_terminals(inst.terminals().swap_second()).unwrap(),
            _ => return Ok(()),
        };
        let (k1, k2) = max_value_targets(&inst);
        let (b, trace) = solve_planar_traced(&inst, k1, k2).unwrap();
        prop_assert!(verify_biflow(&inst, &b).feasible);
        prop_assert!(trace.steps.len() as Cap <= trace.initial_p3);
        let mut last_p3 = trace.initial_p3;
        for s in &trace.steps {
            prop_assert_eq!(s.p3_total, s.p4_total);
            prop_assert_eq!(s.total, trace.initial_total);
            prop_assert!(s.delta > 0);
            prop_assert_eq!(s.p3_total, last_p3 - s.delta);
            last_p3 = s.p3_total;
        }
        prop_assert_eq!(last_p3, 0);
    }

    #[test]
    fn uncross_rejects_unbalanced_cross_paths(extra in 1i64..4) {
        // two s1 -> t2 units against one s2 -> t1 unit
        let t = Terminals::new(v(0), v(1), v(2), v(3));
        let f = ArcFlow::from_arcs([((v(0), v(4)), 1 + extra), ((v(4), v(3)), 1 + extra), ((v(2), v(4)), 1), ((v(4), v(1)), 1)]);
        let d = decompose(&f, &[v(0), v(2)], &[v(1), v(3)]).unwrap();
        prop_assert!(uncross_traced(&d, &t).is_err());
    }
}
