//! Finite normal-form games with exact rational payoffs: equilibria,
//! game bijections, isomorphism search and symmetry classification.

pub mod bijection;
pub mod census;
pub mod construct;
pub mod equilibrium;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod isomorphism;
pub mod par;
pub mod perm;
pub mod rational;
pub mod symmetry;

pub use bijection::{GameBijection, Matching};
pub use error::{Error, ParseError, Result};
pub use game::{Game, MixedProfile, PureProfile};
pub use isomorphism::IsoMode;
pub use par::Execution;
pub use perm::Permutation;
pub use rational::Rational;
pub use symmetry::{SymmetryClass, SymmetryConfig, SymmetryGroup, SymmetryReport};
