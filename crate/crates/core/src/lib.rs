//! Degree-bounded group Steiner tree algorithms.
//!
//! * [`lp`] and [`rounding`]: the cut LP with degree rows on tree inputs and
//!   its dependent randomized rounding, giving a bicriteria solver for
//!   bounded-degree group Steiner tree and, by searching a uniform bound,
//!   a min-degree solver on trees.
//! * [`treewidth`]: the separator-tree reduction that turns a bounded
//!   treewidth graph into a low-height tree and lifts tree solutions back.
//! * [`ktree`]: reductions from min-degree Steiner k-tree to min-degree
//!   group Steiner tree (random bins and two-point sampling).
//! * [`oracle`]: exponential exact solvers used as ground truth.
//! * [`harness`]: instance generators and seeded experiment suites.
//!
//! The guide in `book/` walks through each piece; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod error;
pub mod harness;
pub mod instance;
pub mod io;
pub mod ktree;
pub mod lp;
pub mod oracle;
pub mod rng;
pub mod rounding;
pub mod treewidth;

pub use error::{Error, Result};
pub use instance::{covers, max_degree, Cost, Edge, EdgeId, Graph, GstInstance, KTreeInstance, NodeId, RootedTree, SubTree};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/lp.md")]
    mod lp {}
    #[doc = include_str!("../../../book/src/rounding.md")]
    mod rounding {}
    #[doc = include_str!("../../../book/src/ktree.md")]
    mod ktree {}
    #[doc = include_str!("../../../book/src/treewidth.md")]
    mod treewidth {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
