//! List-colouring reconfiguration toolkit.
//!
//! The library is organised as a stack:
//!
//! * [`graph`] — simple graphs, list assignments, colourings, block trees;
//! * [`kernel`] — single-step recolouring semantics and the low-level
//!   unfreezing procedures (`push_unfreeze`, `clear_bad_neighbours`,
//!   `fix_leaf`);
//! * [`planner`] — constructive planners that connect two colourings by an
//!   explicit sequence of recolouring steps, with per-lemma step bounds;
//! * [`oracle`] — exhaustive exploration of the reconfiguration graph, used
//!   as independent ground truth for the planners;
//! * [`correspondence`] — covers (correspondence colourings) and a census of
//!   small covers up to isomorphism;
//! * [`io`] — JSON serialisation of instances, plans, and reports.

pub mod correspondence;
pub mod error;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod planner;

pub use error::{Error, Result};
pub use graph::{build_graph, Colour, Colouring, Graph, ListAssignment, Vertex};
