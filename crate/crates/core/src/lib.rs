//! Verification workbench for list-coloring proofs on planar graphs.
//!
//! Three engines share a common graph substrate:
//!
//! * [`cn`] certifies configuration reducibility by extracting a nonzero
//!   coefficient from the capped expansion of the graph polynomial
//!   `∏ (x_i − x_j)`.
//! * [`oracle`] is the brute-force ground truth: exhaustive backtracking
//!   for list colorability, exhaustive or seeded-sampled search over list
//!   assignments for choosability.
//! * [`discharge`] executes the two-round discharging procedure on an
//!   embedded plane graph with exact rational charges and an auditable
//!   transfer ledger.
//!
//! [`graph`] provides the shared simple-graph substrate including 4-cycle
//! enumeration and the distance hypothesis validator; [`plane`] derives
//! faces from rotation systems; [`io`] defines the text file formats and
//! [`catalog`] ships the built-in configurations.

pub mod catalog;
pub mod cn;
pub mod discharge;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod plane;
