//! Three-terminal flows split into two single-pair flows.
//!
//! Variant (i), one source `x` and sinks `y`, `z`: with `τ` the minimum
//! `x`-`y` cut and `τx` the minimum `(x, {y,z})` cut there is an integral
//! flow `f` with divergences `(τx, -τ, τ - τx)` at `(x, y, z)` that splits
//! arc-wise into an `x -> y` flow of value `τ` and an `x -> z` flow of value
//! `τx - τ`. Variant (ii) is the mirror image with sink `y` and sources
//! `x`, `z`.

use crate::error::{Error, Result};
use crate::flowops::{reverse, ArcFlow};
use crate::graph::{Cap, Graph, Vertex};
use crate::maxflow::{max_flow, solve_network, ArcNetwork, Cut};

#[derive(Clone, Debug)]
pub struct TriflowResult {
    pub tau: Cap,
    /// `τx` for variant (i), `τy` for variant (ii).
    pub tau_side: Cap,
    pub f: ArcFlow,
    pub f1: ArcFlow,
    pub f2: ArcFlow,
    pub cut_xy: Cut,
    pub cut_side: Cut,
}

fn check_distinct(x: Vertex, y: Vertex, z: Vertex) -> Result<()> {
    if x == y || y == z || x == z {
        return Err(Error::OverlappingTerminals);
    }
    Ok(())
}

/// Variant (i): `f1` is an `x -> y` flow of value `τ`, `f2` an `x -> z` flow
/// of value `τx - τ`, `f = f1 + f2`.
pub fn triflow_from_source(g: &Graph, x: Vertex, y: Vertex, z: Vertex) -> Result<TriflowResult> {
    check_distinct(x, y, z)?;
    let (_, cut_xy) = max_flow(g, &[x], &[y])?;
    let (_, cut_side) = max_flow(g, &[x], &[y, z])?;
    let (f, f1) = split_from_source(&ArcNetwork::from_graph(g), x, y, z, cut_xy.capacity, cut_side.capacity)?;
    let f2 = f.minus(&f1);
    Ok(TriflowResult { tau: cut_xy.capacity, tau_side: cut_side.capacity, f, f1, f2, cut_xy, cut_side })
}

/// Variant (ii): `f1` is an `x -> y` flow of value `τ`, `f2` a `z -> y` flow
/// of value `τy - τ`, where `τy` is the minimum `({x,z}, y)` cut.
pub fn triflow_to_sink(g: &Graph, x: Vertex, y: Vertex, z: Vertex) -> Result<TriflowResult> {
    check_distinct(x, y, z)?;
    let (_, cut_xy) = max_flow(g, &[x], &[y])?;
    let (_, cut_side) = max_flow(g, &[x, z], &[y])?;
    // Run variant (i) from y towards {x, z} and reverse every arc.
    let (f, f1) = split_from_source(&ArcNetwork::from_graph(g), y, x, z, cut_xy.capacity, cut_side.capacity)?;
    let (f, f1) = (reverse(&f), reverse(&f1));
    let f2 = f.minus(&f1);
    Ok(TriflowResult { tau: cut_xy.capacity, tau_side: cut_side.capacity, f, f1, f2, cut_xy, cut_side })
}

/// Given `τ` (min `x`-`y` cut) and `τx` (min `(x,{y,z})` cut), returns the
/// combined flow `f` and its `x -> y` part `f1`.
fn split_from_source(
    net: &ArcNetwork,
    x: Vertex,
    y: Vertex,
    z: Vertex,
    tau: Cap,
    tau_x: Cap,
) -> Result<(ArcFlow, ArcFlow)> {
    let f = solve_network(net, &[(x, None)], &[(y, Some(tau)), (z, Some(tau_x - tau))])?;
    if f.value != tau_x {
        return Err(Error::NotAFlow(format!("three-terminal flow reached {} instead of {tau_x}", f.value)));
    }
    let f = f.flow;
    let mut within = ArcNetwork::new();
    for &v in net.vertices() {
        within.add_vertex(v);
    }
    for ((u, v), amount) in f.iter() {
        within.add_pair(u, v, amount, 0);
    }
    let f1 = solve_network(&within, &[(x, None)], &[(y, Some(tau))])?;
    if f1.value != tau {
        return Err(Error::NotAFlow(format!("split reached {} instead of {tau}", f1.value)));
    }
    Ok((f, f1.flow))
}
