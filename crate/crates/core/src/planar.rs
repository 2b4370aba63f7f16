//! Planar algorithm: biflows with prescribed values on instances whose terminals
//! sit on the outer face in the order `s1, s2, t2, t1`.
//!
//! Route `k1` units from `s1` to `t1`, then `k2` units from `s2` to `t2` in
//! what is left, combine the two into one flow from `{s1, s2}` to
//! `{t1, t2}`, decompose it into paths and uncross the paths that end at
//! the wrong sink. On such instances every `s1 -> t2` path meets every
//! `s2 -> t1` path, which is exactly what uncrossing needs.

use crate::bicut::min_bicut;
use crate::error::{Error, Result};
use crate::flowops::{combine, decompose, reverse, uncross_traced, Biflow, UncrossTrace};
use crate::graph::{Cap, Instance};
use crate::maxflow::{flow_of_value, flow_of_value_network, min_cut_value, residual_capacity};

/// `(τ1, τ2, τ)`: the two single-commodity min cuts and the min bicut.
pub fn cut_values(inst: &Instance) -> (Cap, Cap, Cap) {
    let g = inst.graph();
    let t = inst.terminals();
    let tau1 = min_cut_value(g, &[t.s1], &[t.t1]).expect("distinct terminals");
    let tau2 = min_cut_value(g, &[t.s2], &[t.t2]).expect("distinct terminals");
    (tau1, tau2, min_bicut(inst).capacity())
}

/// Targets with the largest total, favouring commodity 1.
pub fn max_value_targets(inst: &Instance) -> (Cap, Cap) {
    let (tau1, tau2, tau) = cut_values(inst);
    let k1 = tau1.min(tau);
    (k1, tau2.min(tau - k1))
}

pub fn solve_planar(inst: &Instance, k1: Cap, k2: Cap) -> Result<Biflow> {
    solve_planar_traced(inst, k1, k2).map(|(b, _)| b)
}

pub fn solve_planar_traced(inst: &Instance, k1: Cap, k2: Cap) -> Result<(Biflow, UncrossTrace)> {
    let (tau1, tau2, tau) = cut_values(inst);
    if k1 < 0 || k2 < 0 || k1 > tau1 || k2 > tau2 || k1 + k2 > tau {
        return Err(Error::TargetsInfeasible { k1, k2, tau1, tau2, tau });
    }
    let g = inst.graph();
    let t = inst.terminals();
    let first = flow_of_value(g, t.s1, t.t1, k1)?;
    let second = flow_of_value_network(&residual_capacity(g, &first), t.s2, t.t2, k2)?;
    let f = combine(&first, &second);
    let d = decompose(&f, &[t.s1, t.s2], &[t.t1, t.t2])?;
    let (b, trace) = uncross_traced(&d, &t)?;
    let values = b.values(&t);
    if values != (k1, k2) {
        return Err(Error::NotAFlow(format!("uncrossing produced values {values:?} instead of ({k1}, {k2})")));
    }
    Ok((b, trace))
}

/// [`solve_planar`], retried with `s2` and `t2` interchanged when the paths
/// do not cross under the given labelling.
pub fn solve_planar_any_orientation(inst: &Instance, k1: Cap, k2: Cap) -> Result<Biflow> {
    match solve_planar(inst, k1, k2) {
        Err(Error::NotCrossing) => {
            let flipped = inst.with_terminals(inst.terminals().swap_second())?;
            let b = solve_planar(&flipped, k1, k2)?;
            Ok(Biflow::new(b.f1, reverse(&b.f2)))
        }
        other => other,
    }
}
