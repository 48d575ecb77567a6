//! Linear resolutions of equigenerated monomial ideals in three variables.
//!
//! The crate decides linearity of the resolution combinatorially (dual-graph
//! connectivity plus absence of bad configurations), builds the tree ordering
//! that exhibits linear quotients, and checks every verdict against Betti
//! numbers computed from upper Koszul complexes.

pub mod betti;
pub mod criterion;
pub mod dual_graph;
pub mod error;
pub mod harness;
pub mod homology;
pub mod io;
pub mod monomial;
pub mod quotients;
pub mod render;

pub use betti::{BettiTable, Subject};
pub use criterion::{BadConfigWitness, ResolutionVerdict};
pub use dual_graph::{DisconnectedPair, DualGraph, PresentationVerdict};
pub use error::{Error, Result};
pub use harness::{IdealReport, Mode, SweepReport, ValidationConfig};
pub use homology::{Characteristic, SimplicialComplex};
pub use monomial::{Monomial, MonomialIdeal};
pub use quotients::{QuotientVerdict, TreeOrder};
