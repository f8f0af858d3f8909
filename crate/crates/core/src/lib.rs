//! List homomorphisms to a fixed graph `H` parameterized by vertex cover:
//! invariants of `H`, polynomial kernels, forbidding polynomials over
//! GF(2) and lower bound gadgets.

pub mod colorset;
pub mod error;
pub mod forbid;
pub mod generators;
pub mod gf2;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod kernel;
pub mod reduction;
pub mod solver;

pub use colorset::ColorSet;
pub use error::{Error, Result};
pub use forbid::{Family, ForbidRequest, ForbidResult, Forbidder};
pub use graph::{Graph, HGraph, Instance, VertexCoverCertificate};
pub use invariants::{classify, Classification, Invariants, LowerBoundStructure};
pub use kernel::{KernelMethod, KernelReport, Kernelizer};
pub use reduction::{reduce_sat, Cnf};
