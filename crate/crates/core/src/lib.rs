//! SAT modulo monotonic theories.
//!
//! A CDCL solver ([`sat`]) is extended with lazy theory solvers for Boolean
//! monotonic predicates ([`smt`]): graph reachability, bounded shortest
//! paths, connected components, maximum flow, minimum spanning trees
//! ([`graph`]) and EDF uniprocessor schedulability ([`sched`]). The
//! [`frontend`] reads and writes the GNF text format and contains instance
//! generators; [`oracle`] decides small instances by enumeration.

pub mod frontend;
pub mod graph;
pub mod lit;
pub mod oracle;
pub mod sat;
pub mod sched;
pub mod smt;

pub use lit::{LBool, Lit, Var};
