//! Exact canonicalization of single-qubit circuits over `{H, P, T}`.
//!
//! Every circuit is rewritten into a unique normal form
//! `B₁ B₂ … Bₙ W₀` with blocks `Bᵢ ∈ {T, HT, PHT}` and a Clifford tail `W₀`,
//! so circuit equivalence becomes structural equality and the number of
//! blocks is the minimal T-count. All matrices are computed exactly over
//! `Z[e^{iπ/4}, 1/√2]`.

pub mod census;
pub mod cli;
pub mod error;
pub mod group;
pub mod normalizer;
pub mod ring;
pub mod rules;
pub mod stabilizer;
pub mod verify;

pub use error::{Error, Result};
pub use group::{CliffordId, CosetDecomposition, CosetTag, Generator, GroupTable};
pub use normalizer::{evaluate, parse, Block, Circuit, Gate, NormalForm, Normalizer};
pub use ring::{RingElem, StateVec, UMat2};
pub use rules::{Rule, RuleTable};
