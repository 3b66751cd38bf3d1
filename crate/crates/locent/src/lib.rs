//! Entanglement of localized quantum states.
//!
//! A library and CLI that computes Meyer-Wallach entanglement and the
//! inverse participation ratio for n-qubit state vectors, samples the
//! localized random-state ensembles those quantities are studied on,
//! evaluates the corresponding closed-form mean-entanglement predictions,
//! and verifies them against Monte Carlo sampling and exact
//! diagonalization of three disordered physical models (a spin system
//! with static disorder, the 1D Anderson chain, and a quantum smallworld
//! network).

pub mod cli;
pub mod ensembles;
pub mod error;
pub mod harness;
mod lapack;
pub mod measures;
pub mod models;
pub mod rng;
pub mod state;
pub mod theory;

pub use error::{Error, Result};
