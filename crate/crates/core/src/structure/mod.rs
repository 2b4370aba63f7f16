//! Structural analysis: preprocessing reductions, bridge classification,
//! the gluing decomposition, the one-sided gadget and a small-instance
//! forbidden-minor oracle.
//!
//! Detection does not try to prove that an instance is a Seymour graph. It
//! finds the data each algorithm consumes and leaves validity to the final
//! certificate.

mod bridges;
mod detect;
mod gadget;
mod minor;
mod reduce;

pub use bridges::{classify_bridges, m_bridges, Bridge, BridgeKind, BridgeReport, MBridge};
pub use detect::{detect_case, Gluing, GluingSide, StructureCase};
pub use gadget::{case_ii_gadget, Gadget};
pub use minor::{k4star_minor, MINOR_MAX_VERTICES};
pub use reduce::{reduce, splice_back, Reduced, Reduction, ReductionTrail};

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, Terminals};

/// Adds `e1 = s1t1` and `e2 = s2t2` with capacity 0 where missing. Every
/// terminal must already be a vertex of `g`.
pub fn augment(g: Graph, t: Terminals) -> Result<Instance> {
    if let Some(&missing) = t.all().iter().find(|&&v| !g.contains(v)) {
        return Err(Error::UnknownVertex(missing));
    }
    Instance::new(g, t)
}
