//! Two-fermion composite quasi-bosons on finite Fock spaces.
//!
//! The crate builds quasi-boson ladder operators `A†_α = Σ Φ_α^{μν} a†_μ b†_ν`
//! on an exact fermionic Fock space, constructs the admissible Φ families,
//! and checks numerically when those operators realize independent deformed
//! oscillators with the quadratic structure function
//! `φ(n) = (1 + f/2) n − (f/2) n²`, `f = 2/m`. It also probes the
//! Arik–Coon `q`-oscillator, which cannot be realized this way.
//!
//! * [`fock`]: basis states, sparse vectors, sign-correct ladder operators.
//! * [`quasiboson`]: Φ matrices, `A†`, `A`, `Δ`, chain states.
//! * [`deformation`]: structure functions, recurrences, energies.
//! * [`solver`]: admissible families, rank classification.
//! * [`conditions`]: every verification procedure, as [`VerificationReport`]s.
//! * [`cli`]: the `qboson` command line and its JSON file formats.

pub mod cli;
pub mod conditions;
pub mod deformation;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod quasiboson;
pub mod report;
pub mod sampling;
pub mod solver;

pub use deformation::StructureFunction;
pub use error::{Error, Result};
pub use fock::{FockState, ModeConfig, Species, StateVector};
pub use quasiboson::{ChainIndex, PhiFamily, PhiMatrix};
pub use report::{Check, VerificationReport};
pub use solver::{construct_family, FamilySpec};
