//! Computation with closed subspaces of finite-dimensional complex Hilbert
//! spaces, organized as the logic of experimental propositions.
//!
//! The crate is layered bottom-up:
//!
//! * [`hilbert`]: vectors, projectors and closed subspaces of ℂᵈ with the
//!   lattice operations meet, join and orthocomplement.
//! * [`contexts`]: resolutions of identity, the Boolean block generated by
//!   each one, and the pasting of blocks into a shared structure.
//! * [`semantics`]: bivalent, supervaluational (gappy) and Łukasiewicz
//!   valuations of formulas, plus product/sum-rule checks.
//! * [`ks`]: Kochen-Specker colorability of ray sets.
//! * [`cli`]: the command front end used by the `qlogic` binary.
//!
//! The runnable programs under `examples/` walk through each layer.

pub mod cli;
pub mod contexts;
mod error;
pub mod formula;
pub mod hilbert;
pub mod ks;
pub mod rayfile;
pub mod report;
pub mod semantics;

pub use error::{Error, Result};
pub use hilbert::{Projector, StateVector, Subspace, Tolerance};
