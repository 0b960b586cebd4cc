//! Numerical workbench for single-particle gauge problems, normal-mode field
//! quantization, Fock-space operator algebra, field states, spontaneous decay
//! and multipole photon emission.
//!
//! Natural units `ħ = e = m = c = k_B = 1` are used throughout the library.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod decay;
pub mod error;
pub mod fieldstates;
pub mod fockspace;
pub mod gaugefields;
pub mod numerics;
pub mod radiation;
pub mod specfun;
pub mod stringmodes;

pub use error::{Error, Result};
