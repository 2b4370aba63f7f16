//! Line-oriented text format for instances and solutions.
//!
//! ```text
//! # comment
//! terminals s1 t1 s2 t2
//! edge u v 3
//! ```
//!
//! Vertex names are arbitrary whitespace-free tokens. The terminals get ids
//! 0..4 in the order written, other vertices follow in order of first
//! appearance, and repeated edges add up. A solution lists `value`, `bicut`,
//! `certified` and one `path <commodity> <multiplicity> v0 v1 ...` line per
//! path of each commodity.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bicut::flow_from_paths;
use crate::error::{Error, Result};
use crate::flowops::{decompose, Biflow};
use crate::graph::{Cap, Graph, Instance, Terminals, Vertex};
use crate::solver::SolveResult;

/// An instance together with the name of every vertex (indexed by id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedInstance {
    pub instance: Instance,
    pub names: Vec<String>,
}

impl NamedInstance {
    /// Terminals are named `s1 t1 s2 t2`, every other vertex `v<id>`.
    pub fn labelled(instance: Instance) -> NamedInstance {
        let t = instance.terminals();
        let top = instance.graph().vertices().iter().map(|v| v.0 + 1).max().unwrap_or(0);
        let names = (0..top)
            .map(|i| {
                let roles = [(t.s1, "s1"), (t.t1, "t1"), (t.s2, "s2"), (t.t2, "t2")];
                match roles.iter().find(|(v, _)| v.0 == i) {
                    Some((_, r)) => r.to_string(),
                    None => format!("v{i}"),
                }
            })
            .collect();
        NamedInstance { instance, names }
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0 as usize]
    }

    fn lookup(&self) -> HashMap<&str, Vertex> {
        self.names.iter().enumerate().map(|(i, n)| (n.as_str(), Vertex(i as u32))).collect()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Significant lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn parse_instance(text: &str) -> Result<NamedInstance> {
    let mut terminals: Option<(usize, [String; 4])> = None;
    let mut edges: Vec<(usize, String, String, Cap)> = Vec::new();
    for (line, words) in lines(text) {
        match words[0] {
            "terminals" => {
                if terminals.is_some() {
                    return Err(parse_err(line, "second terminals line"));
                }
                let [_, a, b, c, d] = words[..] else {
                    return Err(parse_err(line, "expected `terminals s1 t1 s2 t2`"));
                };
                terminals = Some((line, [a, b, c, d].map(str::to_string)));
            }
            "edge" => {
                let [_, u, v, cap] = words[..] else {
                    return Err(parse_err(line, "expected `edge u v capacity`"));
                };
                let cap: Cap = cap.parse().map_err(|_| parse_err(line, format!("bad capacity `{cap}`")))?;
                edges.push((line, u.to_string(), v.to_string(), cap));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let Some((tline, tnames)) = terminals else {
        return Err(parse_err(0, "missing terminals line"));
    };
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut intern = |name: &str, names: &mut Vec<String>| {
        *ids.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            Vertex(names.len() as u32 - 1)
        })
    };
    let mut g = Graph::new();
    let t = tnames.clone().map(|n| intern(&n, &mut names));
    for &x in &t {
        g.add_vertex(x);
    }
    for (line, u, v, cap) in &edges {
        let (a, b) = (intern(u, &mut names), intern(v, &mut names));
        g.add_edge(a, b, *cap).map_err(|e| parse_err(*line, e.to_string()))?;
    }
    let instance =
        Instance::new(g, Terminals::new(t[0], t[1], t[2], t[3])).map_err(|e| parse_err(tline, e.to_string()))?;
    Ok(NamedInstance { instance, names })
}

/// Terminals line followed by every edge in id order, `e1` and `e2`
/// included.
pub fn emit_instance(n: &NamedInstance) -> String {
    let t = n.instance.terminals();
    let mut out = format!("terminals {} {} {} {}\n", n.name(t.s1), n.name(t.t1), n.name(t.s2), n.name(t.t2));
    for (_, e) in n.instance.graph().edges() {
        writeln!(out, "edge {} {} {}", n.name(e.u), n.name(e.v), e.cap).expect("write to string");
    }
    out
}

pub fn emit_result(n: &NamedInstance, r: &SolveResult) -> String {
    let mut out = String::new();
    writeln!(out, "value {}", r.value).expect("write to string");
    writeln!(out, "bicut {}", r.min_bicut).expect("write to string");
    writeln!(out, "certified {}", if r.certified { "yes" } else { "no" }).expect("write to string");
    out.push_str(&emit_paths(n, &r.biflow));
    out
}

/// `path` lines of both commodities. Flow cycles carry no value and are
/// not listed.
pub fn emit_paths(n: &NamedInstance, b: &Biflow) -> String {
    let t = n.instance.terminals();
    let mut out = String::new();
    for (k, f) in [(1, &b.f1), (2, &b.f2)] {
        let (s, tt) = t.pair(k);
        let d = decompose(f, &[s], &[tt]).expect("solver flows are valid");
        for e in &d.entries {
            let path: Vec<&str> = e.path.iter().map(|&v| n.name(v)).collect();
            writeln!(out, "path {k} {} {}", e.mult, path.join(" ")).expect("write to string");
        }
    }
    out
}

/// Reads the `path` lines of a solution; `value`, `bicut` and `certified`
/// lines are accepted and ignored.
pub fn parse_solution(n: &NamedInstance, text: &str) -> Result<Biflow> {
    let ids = n.lookup();
    let mut paths: [Vec<(Vec<Vertex>, Cap)>; 2] = Default::default();
    for (line, words) in lines(text) {
        match words[0] {
            "value" | "bicut" | "certified" => {}
            "path" => {
                if words.len() < 4 {
                    return Err(parse_err(line, "expected `path <1|2> <multiplicity> v0 v1 ...`"));
                }
                let k: usize = match words[1] {
                    "1" => 0,
                    "2" => 1,
                    other => return Err(parse_err(line, format!("commodity must be 1 or 2, got `{other}`"))),
                };
                let mult: Cap =
                    words[2].parse().map_err(|_| parse_err(line, format!("bad multiplicity `{}`", words[2])))?;
                if mult < 0 {
                    return Err(parse_err(line, "negative multiplicity"));
                }
                let path = words[3..]
                    .iter()
                    .map(|w| ids.get(w).copied().ok_or_else(|| parse_err(line, format!("unknown vertex `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                paths[k].push((path, mult));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    let [p1, p2] = paths;
    Ok(Biflow::new(flow_from_paths(&p1), flow_from_paths(&p2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicut::verify_biflow;
    use crate::solver::solve;

    #[test]
    fn augments_missing_direct_edge() {
        let n = parse_instance("terminals a b c d\nedge a b 3\n").unwrap();
        let g = n.instance.graph();
        assert_eq!(g.edge(n.instance.e1()).cap, 3);
        assert_eq!(g.edge(n.instance.e2()).cap, 0);
        assert_eq!(n.names, ["a", "b", "c", "d"]);
    }

    #[test]
    fn duplicate_edges_merge() {
        let n = parse_instance("terminals a b c d\nedge a c 2\nedge c a 3 # again\n").unwrap();
        assert_eq!(n.instance.graph().capacity_between(Vertex(0), Vertex(2)), 5);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_instance("terminals a b c d\n\nedge a a 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(matches!(parse_instance("edge a b 1\n"), Err(Error::Parse { line: 0, .. })));
        assert!(matches!(parse_instance("terminals a b c d\nnode x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_instance("terminals a b c d\nedge a b x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_instance("terminals a b c c\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn labelled_names_follow_roles() {
        let n = NamedInstance::labelled(crate::generate::generate(crate::generate::Class::Planar, 6, 2, 3));
        let t = n.instance.terminals();
        assert_eq!([n.name(t.s1), n.name(t.t1), n.name(t.s2), n.name(t.t2)], ["s1", "t1", "s2", "t2"]);
        assert_eq!(n.name(Vertex(4)), "v4");
        let again = parse_instance(&emit_instance(&n)).unwrap();
        assert_eq!(emit_instance(&again), emit_instance(&n));
    }

    #[test]
    fn round_trip_is_stable() {
        let text = "# outer cycle with a hub\nedge h s1 1\nterminals s1 t1 s2 t2\nedge s1 s2 2\nedge s2 t2 1\nedge t2 t1 2\nedge h t2 1\n";
        let once = emit_instance(&parse_instance(text).unwrap());
        let twice = emit_instance(&parse_instance(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.starts_with("terminals s1 t1 s2 t2\nedge h s1 1\n"));
    }

    #[test]
    fn solution_round_trip() {
        let n =
            parse_instance("terminals s1 t1 s2 t2\nedge s1 s2 1\nedge s2 t2 1\nedge t2 t1 1\nedge t1 s1 1\n").unwrap();
        let r = solve(&n.instance);
        let text = emit_result(&n, &r);
        assert!(text.starts_with("value 2\nbicut 2\ncertified yes\n"), "{text}");
        let b = parse_solution(&n, &text).unwrap();
        let report = verify_biflow(&n.instance, &b);
        assert!(report.feasible);
        assert_eq!(report.value, 2);
        assert!(matches!(parse_solution(&n, "path 3 1 s1 t1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_solution(&n, "path 1 1 s1 zz\n"), Err(Error::Parse { line: 1, .. })));
    }
}
